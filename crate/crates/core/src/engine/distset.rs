use std::collections::BTreeSet;

use serde::Serialize;

use super::fiber::{is_uniform_over_support, support_size};
use crate::error::{Error, Result};

/// The set of fiber-count vectors of all `n`-variable word maps on a group,
/// under one fixed element enumeration (identity at index 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributionSet {
    group_order: usize,
    arity: usize,
    /// Sorted lexicographically, no duplicates.
    distributions: Vec<Vec<u64>>,
    /// `|F_n(G)|` when known.
    map_count: Option<usize>,
    complete: bool,
}

#[derive(Serialize)]
struct DistributionSetJson<'a> {
    group_order: usize,
    arity: usize,
    map_count: Option<usize>,
    complete: bool,
    distributions: &'a [Vec<u64>],
}

impl DistributionSet {
    /// `map_count` is `Some` exactly for complete sets coming from a full
    /// enumeration.
    pub fn from_counts(
        group_order: usize,
        arity: usize,
        vectors: impl IntoIterator<Item = Vec<u64>>,
        map_count: Option<usize>,
    ) -> Self {
        let set: BTreeSet<Vec<u64>> = vectors.into_iter().collect();
        Self {
            group_order,
            arity,
            distributions: set.into_iter().collect(),
            complete: map_count.is_some(),
            map_count,
        }
    }

    /// A complete set whose map count is unknown (e.g. derived from another
    /// set rather than enumerated).
    pub fn derived(group_order: usize, arity: usize, vectors: impl IntoIterator<Item = Vec<u64>>) -> Self {
        let mut d = Self::from_counts(group_order, arity, vectors, None);
        d.complete = true;
        d
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn distributions(&self) -> &[Vec<u64>] {
        &self.distributions
    }

    pub fn len(&self) -> usize {
        self.distributions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.distributions.is_empty()
    }

    pub fn map_count(&self) -> Option<usize> {
        self.map_count
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn require_complete(&self) -> Result<()> {
        if self.complete {
            Ok(())
        } else {
            Err(Error::IncompleteSet)
        }
    }

    /// `|G|^(n-1)`, the count of every fiber of a uniform map.
    pub fn uniform_count(&self) -> u64 {
        if self.arity == 0 {
            return 0;
        }
        (self.group_order as u64).pow(self.arity as u32 - 1)
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.distributions.binary_search_by(|x| x.as_slice().cmp(v)).is_ok()
    }

    /// Vectors whose nonzero entries are all equal.
    pub fn uniform_on_support(&self) -> impl Iterator<Item = &Vec<u64>> {
        self.distributions.iter().filter(|v| is_uniform_over_support(v))
    }

    pub fn point_masses(&self) -> impl Iterator<Item = &Vec<u64>> {
        self.distributions.iter().filter(|v| support_size(v) == 1)
    }

    /// Same vectors under an index permutation: entry `i` moves to `perm[i]`.
    pub fn relabeled(&self, perm: &[usize]) -> Self {
        let moved = self.distributions.iter().map(|v| {
            let mut out = vec![0; v.len()];
            for (i, &c) in v.iter().enumerate() {
                out[perm[i]] = c;
            }
            out
        });
        let mut d = Self::from_counts(self.group_order, self.arity, moved, self.map_count);
        d.complete = self.complete;
        d
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(DistributionSetJson {
            group_order: self.group_order,
            arity: self.arity,
            map_count: self.map_count,
            complete: self.complete,
            distributions: &self.distributions,
        })
        .expect("distribution set serializes")
    }

    /// One vector per line, tab separated.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for v in &self.distributions {
            let cells: Vec<String> = v.iter().map(u64::to_string).collect();
            out.push_str(&cells.join("\t"));
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dedup_and_sort() {
        let d = DistributionSet::from_counts(2, 1, vec![vec![2, 0], vec![1, 1], vec![2, 0]], Some(3));
        assert_eq!(d.distributions(), &[vec![1, 1], vec![2, 0]]);
        assert!(d.contains(&[2, 0]));
        assert_eq!(d.point_masses().count(), 1);
        assert_eq!(d.uniform_count(), 1);
        assert_eq!(d.to_tsv(), "1\t1\n2\t0\n");
    }
}
