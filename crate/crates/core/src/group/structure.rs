//! Structural oracles computed straight from the multiplication table.
//! These are the ground truth that the distribution-only detectors are
//! validated against.

use super::GroupTable;
use crate::error::{Error, Result};
use crate::num::{factorize, is_prime, split_prime_part};

/// Least subgroup containing `seeds`, as a sorted index list.
pub fn subgroup_closure(g: &GroupTable, seeds: &[usize]) -> Vec<usize> {
    let n = g.order();
    let mut inside = vec![false; n];
    inside[0] = true;
    let mut members = vec![0];
    let gens: Vec<usize> = seeds.iter().copied().filter(|&s| s != 0).collect();
    for &s in &gens {
        if !inside[s] {
            inside[s] = true;
            members.push(s);
        }
    }
    // Right-multiplying by generators reaches every product; finite order
    // makes inverses positive powers.
    let mut head = 0;
    while head < members.len() {
        let x = members[head];
        for &s in &gens {
            let y = g.mul(x, s);
            if !inside[y] {
                inside[y] = true;
                members.push(y);
            }
        }
        head += 1;
    }
    members.sort_unstable();
    members
}

pub fn derived_subgroup(g: &GroupTable) -> Vec<usize> {
    let mut comms: Vec<usize> = Vec::new();
    let mut seen = vec![false; g.order()];
    for a in g.elements() {
        for b in g.elements() {
            let c = g.commutator(a, b);
            if !seen[c] {
                seen[c] = true;
                comms.push(c);
            }
        }
    }
    subgroup_closure(g, &comms)
}

pub fn center(g: &GroupTable) -> Vec<usize> {
    g.elements()
        .filter(|&a| g.elements().all(|b| g.mul(a, b) == g.mul(b, a)))
        .collect()
}

pub fn abelianization_order(g: &GroupTable) -> usize {
    g.order() / derived_subgroup(g).len()
}

pub fn is_abelian_oracle(g: &GroupTable) -> bool {
    g.elements().all(|a| (0..a).all(|b| g.mul(a, b) == g.mul(b, a)))
}

/// Terms `Z_0 = 1 < Z_1 < ...` of the upper central series until it stops
/// growing. `Z_{i+1}` holds the elements whose commutators with everything
/// land in `Z_i`.
pub fn upper_central_series(g: &GroupTable) -> Vec<Vec<usize>> {
    let mut series = vec![vec![0]];
    loop {
        let mut inside = vec![false; g.order()];
        for &z in series.last().unwrap() {
            inside[z] = true;
        }
        let next: Vec<usize> = g
            .elements()
            .filter(|&a| g.elements().all(|b| inside[g.commutator(a, b)]))
            .collect();
        if next.len() == series.last().unwrap().len() {
            return series;
        }
        series.push(next);
    }
}

pub fn is_nilpotent_oracle(g: &GroupTable) -> bool {
    upper_central_series(g).last().unwrap().len() == g.order()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SylowDecomposition {
    pub prime: u64,
    /// `k` in `|G| = p^k * m`.
    pub p_part_exponent: u32,
    pub sylow_elements: Vec<usize>,
    pub complement_elements: Vec<usize>,
}

impl SylowDecomposition {
    pub fn sylow_order(&self) -> usize {
        self.sylow_elements.len()
    }

    pub fn complement_order(&self) -> usize {
        self.complement_elements.len()
    }
}

/// Sylow `p`-subgroup and `p`-complement of a nilpotent group: the elements
/// of `p`-power order and of order coprime to `p`.
pub fn sylow_decomposition(g: &GroupTable, p: u64) -> Result<SylowDecomposition> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let n = g.order() as u64;
    if n % p != 0 {
        return Err(Error::PrimeNotDividing { prime: p, order: g.order() });
    }
    if !is_nilpotent_oracle(g) {
        return Err(Error::NotNilpotent);
    }
    let (k, m) = split_prime_part(n, p);
    let p_power = |o: u64| split_prime_part(o, p).1 == 1;
    let sylow: Vec<usize> = g.elements().filter(|&x| p_power(g.element_order(x))).collect();
    let complement: Vec<usize> = g
        .elements()
        .filter(|&x| g.element_order(x) % p != 0)
        .collect();
    if sylow.len() as u64 != n / m || complement.len() as u64 != m {
        return Err(Error::Verification(format!(
            "Sylow {p}-data has sizes {}/{} for |G| = {n}",
            sylow.len(),
            complement.len()
        )));
    }
    Ok(SylowDecomposition {
        prime: p,
        p_part_exponent: k,
        sylow_elements: sylow,
        complement_elements: complement,
    })
}

/// Invariant factors `d_1 | d_2 | ...` (all > 1) of an abelian group, read
/// off from the counts `|{x : x^(p^j) = 1}|`. Returns `None` for nonabelian
/// groups. The trivial group gives an empty list.
pub fn abelian_invariants_oracle(g: &GroupTable) -> Option<Vec<u64>> {
    if !is_abelian_oracle(g) {
        return None;
    }
    // For each prime: partition of the p-part from the growth of X(p^j).
    let mut prime_parts: Vec<Vec<u64>> = Vec::new();
    for (p, k) in factorize(g.order() as u64) {
        let mut counts = vec![1u64];
        let mut pj = 1u64;
        for _ in 0..k {
            pj *= p;
            let c = g.elements().filter(|&x| pj % g.element_order(x) == 0).count() as u64;
            counts.push(c);
        }
        // r_j = log_p(X(p^j) / X(p^(j-1))) = number of cyclic factors of order >= p^j
        let mut at_least: Vec<u32> = Vec::new();
        for j in 1..counts.len() {
            let mut ratio = counts[j] / counts[j - 1];
            let mut r = 0;
            while ratio > 1 {
                ratio /= p;
                r += 1;
            }
            at_least.push(r);
        }
        let mut factors = Vec::new();
        for j in 0..at_least.len() {
            let next = at_least.get(j + 1).copied().unwrap_or(0);
            for _ in 0..(at_least[j] - next) {
                factors.push(p.pow(j as u32 + 1));
            }
        }
        factors.sort_unstable_by(|a, b| b.cmp(a));
        prime_parts.push(factors);
    }
    Some(invariant_factors_from_prime_powers(&prime_parts))
}

/// Combines per-prime lists of prime-power cyclic orders (each sorted
/// descending) into ascending invariant factors.
pub(crate) fn invariant_factors_from_prime_powers(parts: &[Vec<u64>]) -> Vec<u64> {
    let len = parts.iter().map(Vec::len).max().unwrap_or(0);
    let mut out: Vec<u64> = (0..len)
        .map(|i| parts.iter().filter_map(|v| v.get(i)).product())
        .collect();
    out.reverse();
    out
}
