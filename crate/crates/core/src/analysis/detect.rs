//! Decision procedures that see only a [`DistributionSet`]: which word
//! produced which vector, and the group itself, are never consulted.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::engine::DistributionSet;
use crate::error::{Error, Result};
use crate::group::invariant_factors_from_prime_powers;
use crate::num::{factorize, gcd, lcm, split_prime_part};

fn nonzero_all_equal(v: &[u64], value: u64) -> bool {
    v.iter().all(|&c| c == 0 || c == value)
}

fn support(v: &[u64]) -> usize {
    v.iter().filter(|&&c| c > 0).count()
}

/// Nilpotency from the 1-variable distributions: for every prime `p` with
/// `|G| = p^k m`, some vector must have support size `m` and every nonzero
/// count equal to `p^k`.
pub fn nilpotent_from_1var_distset(d: &DistributionSet) -> Result<bool> {
    if d.arity() != 1 {
        return Err(Error::WrongArity { expected: "arity 1", got: d.arity() });
    }
    d.require_complete()?;
    let order: u64 = d.distributions().first().map_or(1, |v| v.iter().sum());
    Ok(factorize(order).into_iter().all(|(p, _)| {
        let (k, m) = split_prime_part(order, p);
        let pk = p.pow(k);
        d.distributions()
            .iter()
            .any(|v| support(v) as u64 == m && nonzero_all_equal(v, pk))
    }))
}

/// Nilpotency for `n >= 2`: every full-support vector is the uniform one.
pub fn nilpotent_from_nvar_distset(d: &DistributionSet) -> Result<bool> {
    if d.arity() < 2 {
        return Err(Error::WrongArity { expected: "arity >= 2", got: d.arity() });
    }
    d.require_complete()?;
    let uniform = d.uniform_count();
    Ok(d
        .distributions()
        .iter()
        .filter(|v| v.iter().all(|&c| c > 0))
        .all(|v| v.iter().all(|&c| c == uniform)))
}

/// Abelianness for `n >= 2`: every vector is uniform over its support.
pub fn abelian_from_distset(d: &DistributionSet) -> Result<bool> {
    if d.arity() < 2 {
        return Err(Error::WrongArity { expected: "arity >= 2", got: d.arity() });
    }
    d.require_complete()?;
    Ok(d.uniform_on_support().count() == d.len())
}

/// `{|G| - |image|}` over the vectors of a set; for the power maps `x^k` of
/// an abelian group this is its complete isomorphism invariant.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct DeficiencySet(pub BTreeSet<usize>);

pub fn deficiency_set(d: &DistributionSet) -> DeficiencySet {
    let order = d.group_order();
    DeficiencySet(d.distributions().iter().map(|v| order - support(v)).collect())
}

/// Every abelian group of order `n`, each as a list of per-prime cyclic
/// orders (descending prime powers). Built from partitions of the prime
/// exponents.
pub fn abelian_groups_of_order(n: u64) -> Vec<Vec<Vec<u64>>> {
    fn partitions(k: u32, max: u32) -> Vec<Vec<u32>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in (1..=k.min(max)).rev() {
            for mut rest in partitions(k - first, first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    let mut groups: Vec<Vec<Vec<u64>>> = vec![vec![]];
    for (p, k) in factorize(n) {
        let options: Vec<Vec<u64>> = partitions(k, k)
            .into_iter()
            .map(|part| part.into_iter().map(|e| p.pow(e)).collect())
            .collect();
        groups = groups
            .into_iter()
            .flat_map(|g| {
                options.iter().map(move |o| {
                    let mut g = g.clone();
                    g.push(o.clone());
                    g
                })
            })
            .collect();
    }
    groups
}

/// Ascending invariant factors of a group given by per-prime cyclic orders.
pub fn invariant_factors(prime_parts: &[Vec<u64>]) -> Vec<u64> {
    invariant_factors_from_prime_powers(prime_parts)
}

/// Deficiency set of the power maps of `C_{d_1} x ... x C_{d_r}`, using
/// `|X(k)| = prod gcd(k, d_i)` and `|G^k| = |G| / |X(k)|`.
pub fn power_deficiency_set(cyclic_orders: &[u64]) -> DeficiencySet {
    let order: u64 = cyclic_orders.iter().product();
    let exponent = cyclic_orders.iter().copied().fold(1, lcm);
    DeficiencySet(
        (1..=exponent)
            .map(|k| {
                let kernel: u64 = cyclic_orders.iter().map(|&d| gcd(k, d)).product();
                (order - order / kernel) as usize
            })
            .collect(),
    )
}

/// Identifies an abelian group from its distribution set: the unique abelian
/// group of the given order whose power-map deficiency set matches.
pub fn abelian_invariants_from_distset(d: &DistributionSet, order: usize) -> Result<Vec<u64>> {
    d.require_complete()?;
    let target = deficiency_set(d);
    let matches: Vec<Vec<u64>> = abelian_groups_of_order(order as u64)
        .into_iter()
        .filter(|parts| {
            let flat: Vec<u64> = parts.iter().flatten().copied().collect();
            power_deficiency_set(&flat) == target
        })
        .map(|parts| invariant_factors(&parts))
        .collect();
    match matches.len() {
        0 => Err(Error::NoMatch(order)),
        1 => Ok(matches.into_iter().next().unwrap()),
        _ => Err(Error::AmbiguousMatch(order)),
    }
}
