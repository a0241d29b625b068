//! Finite groups as validated multiplication tables.
//!
//! Every group is stored as a dense Cayley table over element indices
//! `0..order`, with the identity always at index 0. All word-map machinery
//! in this crate is table driven, so builtin families, permutation groups
//! and file-ingested tables all end up in this one representation.

mod builtin;
mod structure;

pub use builtin::{builtin_group, parse_cycles, GroupSpecOptions, DEFAULT_SIZE_LIMIT};
pub use structure::{
    abelian_invariants_oracle, abelianization_order, center, derived_subgroup, is_abelian_oracle, is_nilpotent_oracle,
    subgroup_closure, sylow_decomposition, upper_central_series, SylowDecomposition,
};

pub(crate) use structure::invariant_factors_from_prime_powers;

use std::fmt;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::num::lcm;

/// Element index type used inside tables. Group orders are capped well below
/// `u16::MAX`.
pub type Elem = u16;

pub const MAX_ORDER: usize = u16::MAX as usize;

/// Knobs for table validation.
#[derive(Clone, Debug)]
pub struct ValidationOptions {
    /// Groups up to this order get an exhaustive associativity check.
    pub full_assoc_limit: usize,
    /// Number of random triples checked above `full_assoc_limit`.
    pub random_triples: usize,
    pub seed: u64,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        Self {
            full_assoc_limit: 64,
            random_triples: 100_000,
            seed: 0x5eed,
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    mul: Vec<Elem>,
    inv: Vec<Elem>,
    element_orders: Vec<u64>,
    exponent: u64,
    labels: Option<Vec<String>>,
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupTable")
            .field("order", &self.order)
            .field("exponent", &self.exponent)
            .finish_non_exhaustive()
    }
}

impl GroupTable {
    /// Validates a square Cayley table and derives identity, inverses and
    /// element orders. If the identity is not at index 0 it is swapped there.
    pub fn from_cayley(table: &[Vec<usize>]) -> Result<Self> {
        Self::from_cayley_with(table, &ValidationOptions::default())
    }

    pub fn from_cayley_with(table: &[Vec<usize>], opts: &ValidationOptions) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        if n > MAX_ORDER {
            return Err(Error::SizeLimit { order: n, limit: MAX_ORDER });
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAGroup(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::NotAGroup(format!("entry ({i},{j}) = {v} out of range")));
                }
                flat.push(v as Elem);
            }
        }
        Self::from_flat(n, flat, opts)
    }

    /// Same as [`GroupTable::from_cayley`] for a row-major flat table whose
    /// entries are already known to be in range.
    pub(crate) fn from_flat(n: usize, mut flat: Vec<Elem>, opts: &ValidationOptions) -> Result<Self> {
        check_latin(n, &flat)?;

        let identity = (0..n)
            .find(|&e| (0..n).all(|g| flat[e * n + g] as usize == g && flat[g * n + e] as usize == g))
            .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
        if identity != 0 {
            flat = relabel_swap(n, &flat, 0, identity);
        }

        let mut inv = vec![0 as Elem; n];
        for g in 0..n {
            let h = (0..n)
                .find(|&h| flat[g * n + h] == 0)
                .ok_or_else(|| Error::NotAGroup(format!("element {g} has no right inverse")))?;
            if flat[h * n + g] != 0 {
                return Err(Error::NotAGroup(format!("element {g} has no two-sided inverse")));
            }
            inv[g] = h as Elem;
        }

        check_associative(n, &flat, opts)?;

        let mut element_orders = vec![1u64; n];
        for (g, o) in element_orders.iter_mut().enumerate() {
            let mut x = g;
            let mut t = 1;
            while x != 0 {
                x = flat[x * n + g] as usize;
                t += 1;
            }
            *o = t;
        }
        let exponent = element_orders.iter().copied().fold(1, lcm);

        Ok(Self {
            order: n,
            mul: flat,
            inv,
            element_orders,
            exponent,
            labels: None,
        })
    }

    /// Reads the text Cayley format: first line `N`, then `N` rows of `N`
    /// whitespace-separated 0-based indices.
    pub fn parse_cayley_text(text: &str) -> Result<Self> {
        let mut tokens = text.split_whitespace();
        let n: usize = tokens
            .next()
            .ok_or_else(|| Error::NotAGroup("empty Cayley file".into()))?
            .parse()
            .map_err(|_| Error::NotAGroup("first token must be the group order".into()))?;
        if n > MAX_ORDER {
            return Err(Error::SizeLimit { order: n, limit: MAX_ORDER });
        }
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                let tok = tokens
                    .next()
                    .ok_or_else(|| Error::NotAGroup(format!("missing entry ({i},{j})")))?;
                row.push(
                    tok.parse()
                        .map_err(|_| Error::NotAGroup(format!("bad entry `{tok}` at ({i},{j})")))?,
                );
            }
            rows.push(row);
        }
        if tokens.next().is_some() {
            return Err(Error::NotAGroup("trailing data after the table".into()));
        }
        Self::from_cayley(&rows)
    }

    pub fn read_cayley_file(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse_cayley_text(&text)
    }

    pub fn to_cayley_text(&self) -> String {
        let mut out = format!("{}\n", self.order);
        for g in 0..self.order {
            let row: Vec<String> = self.row(g).iter().map(|v| v.to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.order);
        self.labels = Some(labels);
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn element_order(&self, a: usize) -> u64 {
        self.element_orders[a]
    }

    pub fn element_orders(&self) -> &[u64] {
        &self.element_orders
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn mul_table(&self) -> &[Elem] {
        &self.mul
    }

    pub fn inv_table(&self) -> &[Elem] {
        &self.inv
    }

    pub fn row(&self, a: usize) -> &[Elem] {
        &self.mul[a * self.order..(a + 1) * self.order]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// `a^e` for any integer exponent, by square-and-multiply.
    pub fn pow(&self, a: usize, e: i64) -> usize {
        let base = if e < 0 { self.inv(a) } else { a };
        let mut e = e.unsigned_abs() % self.element_orders[a];
        let mut acc = 0;
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    /// Table of `g -> g^e` over all elements.
    pub fn power_map(&self, e: i64) -> Vec<Elem> {
        (0..self.order).map(|g| self.pow(g, e) as Elem).collect()
    }

    /// `a^-1 b^-1 a b`
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    /// Direct product with lexicographic indexing: `(i, j) -> i * |H| + j`.
    pub fn direct_product(&self, other: &GroupTable) -> Result<GroupTable> {
        let (n, m) = (self.order, other.order);
        let nm = n.checked_mul(m).filter(|&o| o <= MAX_ORDER).ok_or(Error::SizeLimit {
            order: n.saturating_mul(m),
            limit: MAX_ORDER,
        })?;
        let mut mul = Vec::with_capacity(nm * nm);
        for i1 in 0..n {
            for j1 in 0..m {
                for i2 in 0..n {
                    let a = self.mul(i1, i2) * m;
                    for j2 in 0..m {
                        mul.push((a + other.mul(j1, j2)) as Elem);
                    }
                }
            }
        }
        let inv = (0..nm)
            .map(|x| (self.inv(x / m) * m + other.inv(x % m)) as Elem)
            .collect();
        let element_orders = (0..nm)
            .map(|x| lcm(self.element_orders[x / m], other.element_orders[x % m]))
            .collect();
        let labels = match (&self.labels, &other.labels) {
            (None, None) => None,
            _ => Some(
                (0..nm)
                    .map(|x| format!("({},{})", self.label(x / m), other.label(x % m)))
                    .collect(),
            ),
        };
        Ok(GroupTable {
            order: nm,
            mul,
            inv,
            element_orders,
            exponent: lcm(self.exponent, other.exponent),
            labels,
        })
    }

    /// The subgroup on `elements` (which must contain the identity and be
    /// closed) as a standalone table. Returns the table and the map from its
    /// indices back to indices of `self`. Elements keep their relative order.
    pub fn induced_subgroup(&self, elements: &[usize]) -> Result<(GroupTable, Vec<usize>)> {
        let mut members: Vec<usize> = elements.to_vec();
        members.sort_unstable();
        members.dedup();
        let mut pos = vec![usize::MAX; self.order];
        for (k, &g) in members.iter().enumerate() {
            pos[g] = k;
        }
        let k = members.len();
        let mut flat = Vec::with_capacity(k * k);
        for &a in &members {
            for &b in &members {
                let p = pos[self.mul(a, b)];
                if p == usize::MAX {
                    return Err(Error::NotAGroup("subset is not closed under multiplication".into()));
                }
                flat.push(p as Elem);
            }
        }
        let opts = ValidationOptions {
            full_assoc_limit: 0,
            random_triples: 0,
            ..Default::default()
        };
        let mut sub = GroupTable::from_flat(k, flat, &opts)?;
        if let Some(l) = &self.labels {
            sub.labels = Some(members.iter().map(|&g| l[g].clone()).collect());
        }
        Ok((sub, members))
    }
}

fn check_latin(n: usize, flat: &[Elem]) -> Result<()> {
    let mut seen = vec![0usize; n];
    for i in 0..n {
        let stamp = i + 1;
        for j in 0..n {
            let v = flat[i * n + j] as usize;
            if seen[v] == stamp {
                return Err(Error::NotAGroup(format!(
                    "row {i} is not a permutation (value {v} repeats)"
                )));
            }
            seen[v] = stamp;
        }
    }
    seen.iter_mut().for_each(|s| *s = 0);
    for j in 0..n {
        let stamp = j + 1;
        for i in 0..n {
            let v = flat[i * n + j] as usize;
            if seen[v] == stamp {
                return Err(Error::NotAGroup(format!(
                    "column {j} is not a permutation (value {v} repeats)"
                )));
            }
            seen[v] = stamp;
        }
    }
    Ok(())
}

fn check_associative(n: usize, flat: &[Elem], opts: &ValidationOptions) -> Result<()> {
    let m = |a: usize, b: usize| flat[a * n + b] as usize;
    let fail = |a, b, c| {
        Err(Error::NotAGroup(format!(
            "associativity fails for ({a}, {b}, {c})"
        )))
    };
    if n <= opts.full_assoc_limit {
        for a in 0..n {
            for b in 0..n {
                let ab = m(a, b);
                for c in 0..n {
                    if m(ab, c) != m(a, m(b, c)) {
                        return fail(a, b, c);
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        for _ in 0..opts.random_triples {
            let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            if m(m(a, b), c) != m(a, m(b, c)) {
                return fail(a, b, c);
            }
        }
    }
    Ok(())
}

/// Relabels a flat table by swapping indices `x` and `y`.
fn relabel_swap(n: usize, flat: &[Elem], x: usize, y: usize) -> Vec<Elem> {
    let sw = |i: usize| if i == x { y } else if i == y { x } else { i };
    let mut out = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            out[i * n + j] = sw(flat[sw(i) * n + sw(j)] as usize) as Elem;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_and_c2() {
        let g = GroupTable::from_cayley(&[vec![0]]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.exponent(), 1);

        let c2 = GroupTable::from_cayley(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(c2.identity(), 0);
        assert_eq!(c2.inv(1), 1);
        assert_eq!(c2.element_orders(), &[1, 2]);
    }

    #[test]
    fn rejects_non_latin() {
        let err = GroupTable::from_cayley(&[vec![0, 1], vec![1, 1]]).unwrap_err();
        assert!(matches!(err, Error::NotAGroup(ref m) if m.contains("row 1")), "{err}");
    }

    #[test]
    fn rejects_out_of_range_and_ragged() {
        assert!(GroupTable::from_cayley(&[vec![0, 2], vec![1, 0]]).is_err());
        assert!(GroupTable::from_cayley(&[vec![0, 1], vec![1]]).is_err());
        assert!(GroupTable::from_cayley(&[]).is_err());
    }

    #[test]
    fn rejects_non_associative_latin_square() {
        // A loop of order 5 with identity 0 that is not a group.
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = GroupTable::from_cayley(&t).unwrap_err();
        assert!(err.to_string().contains("associativity"), "{err}");
    }

    #[test]
    fn moves_identity_to_zero() {
        // C3 written with identity at index 2.
        let t = vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]];
        let g = GroupTable::from_cayley(&t).unwrap();
        assert_eq!(g.mul(0, 1), 1);
        assert_eq!(g.element_orders(), &[1, 3, 3]);
    }

    #[test]
    fn cayley_text_round_trip() {
        let g = builtin_group("S3").unwrap();
        let back = GroupTable::parse_cayley_text(&g.to_cayley_text()).unwrap();
        assert_eq!(back.mul_table(), g.mul_table());
    }

    #[test]
    fn pow_handles_negative_and_large() {
        let c12 = builtin_group("C12").unwrap();
        assert_eq!(c12.pow(1, 12), 0);
        assert_eq!(c12.pow(1, -1), c12.inv(1));
        assert_eq!(c12.pow(5, 1_000_001), c12.pow(5, 1_000_001 % 12));
    }
}
