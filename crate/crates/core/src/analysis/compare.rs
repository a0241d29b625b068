//! Equality of distribution sets up to an unknown element enumeration.
//!
//! Two sets are equal when one element-index permutation fixing the
//! identity (index 0) carries the vectors of one set exactly onto the
//! vectors of the other. Colour refinement prunes the candidates; a
//! budgeted backtracking search makes the answer exact.

use std::collections::HashMap;

use serde::Serialize;

use crate::engine::DistributionSet;
use crate::error::{Error, Result};

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum Comparison {
    /// `perm[i]` is the index in the second set of element `i` of the first.
    Equal { perm: Vec<usize> },
    Different { reason: String },
    Inconclusive { reason: String },
}

impl Comparison {
    pub fn is_equal(&self) -> bool {
        matches!(self, Comparison::Equal { .. })
    }

    pub fn is_different(&self) -> bool {
        matches!(self, Comparison::Different { .. })
    }
}

fn different(reason: impl Into<String>) -> Result<Comparison> {
    Ok(Comparison::Different { reason: reason.into() })
}

/// Shared colour interner so both sides receive comparable colours.
#[derive(Default)]
struct Interner(HashMap<Vec<u64>, u64>);

impl Interner {
    fn id(&mut self, key: Vec<u64>) -> u64 {
        let next = self.0.len() as u64;
        *self.0.entry(key).or_insert(next)
    }
}

struct Colours {
    columns: Vec<u64>,
    vectors: Vec<u64>,
}

fn histogram(colours: &[u64]) -> Vec<u64> {
    let mut h = colours.to_vec();
    h.sort_unstable();
    h
}

fn distinct(colours: &[u64]) -> usize {
    let mut h = histogram(colours);
    h.dedup();
    h.len()
}

/// One round of refinement on one side: columns by (colour, sorted
/// (vector colour, value) pairs), vectors symmetrically.
fn refine(vs: &[Vec<u64>], c: &Colours, interner: &mut Interner) -> Colours {
    let width = c.columns.len();
    let columns = (0..width)
        .map(|i| {
            let mut pairs: Vec<(u64, u64)> = vs.iter().zip(&c.vectors).map(|(v, &vc)| (vc, v[i])).collect();
            pairs.sort_unstable();
            let mut key = vec![0, c.columns[i]];
            key.extend(pairs.into_iter().flat_map(|(a, b)| [a, b]));
            interner.id(key)
        })
        .collect();
    let vectors = vs
        .iter()
        .zip(&c.vectors)
        .map(|(v, &vc)| {
            let mut pairs: Vec<(u64, u64)> = c.columns.iter().zip(v).map(|(&cc, &x)| (cc, x)).collect();
            pairs.sort_unstable();
            let mut key = vec![1, vc];
            key.extend(pairs.into_iter().flat_map(|(a, b)| [a, b]));
            interner.id(key)
        })
        .collect();
    Colours { columns, vectors }
}

fn initial(vs: &[Vec<u64>], width: usize, interner: &mut Interner) -> Colours {
    let columns = (0..width)
        .map(|i| {
            let mut vals: Vec<u64> = vs.iter().map(|v| v[i]).collect();
            vals.sort_unstable();
            // the identity column is distinguished
            vals.insert(0, u64::from(i == 0));
            vals.insert(0, 2);
            interner.id(vals)
        })
        .collect();
    let vectors = vs
        .iter()
        .map(|v| {
            let mut vals = v.clone();
            vals.sort_unstable();
            vals.insert(0, 3);
            interner.id(vals)
        })
        .collect();
    Colours { columns, vectors }
}

struct Search<'a> {
    a: &'a [Vec<u64>],
    b: &'a [Vec<u64>],
    order: Vec<usize>,
    col_a: &'a [u64],
    col_b: &'a [u64],
    perm: Vec<usize>,
    used: Vec<bool>,
    nodes: u64,
    budget: u64,
}

enum Outcome {
    Found,
    Exhausted,
    OutOfBudget,
}

impl Search<'_> {
    /// `cands[v]` lists the vectors of `b` still consistent with vector `v`
    /// of `a` under the partial assignment.
    fn go(&mut self, depth: usize, cands: &[Vec<u32>]) -> Outcome {
        if depth == self.order.len() {
            return Outcome::Found;
        }
        let i = self.order[depth];
        for j in 0..self.b[0].len() {
            if self.used[j] || self.col_a[i] != self.col_b[j] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Outcome::OutOfBudget;
            }
            let mut next = Vec::with_capacity(cands.len());
            let mut dead = false;
            for (v, cs) in cands.iter().enumerate() {
                let want = self.a[v][i];
                let kept: Vec<u32> = cs.iter().copied().filter(|&w| self.b[w as usize][j] == want).collect();
                if kept.is_empty() {
                    dead = true;
                    break;
                }
                next.push(kept);
            }
            if dead {
                continue;
            }
            self.used[j] = true;
            self.perm[i] = j;
            match self.go(depth + 1, &next) {
                Outcome::Exhausted => {}
                other => return other,
            }
            self.used[j] = false;
        }
        Outcome::Exhausted
    }
}

/// Decides whether two distribution sets agree up to an identity-fixing
/// relabelling of elements.
pub fn compare_distsets(d1: &DistributionSet, d2: &DistributionSet, node_budget: u64) -> Result<Comparison> {
    if d1.arity() != d2.arity() {
        return Err(Error::Incomparable(format!("arities {} and {}", d1.arity(), d2.arity())));
    }
    if d1.group_order() != d2.group_order() {
        return different(format!("group orders {} and {}", d1.group_order(), d2.group_order()));
    }
    if let (Some(m1), Some(m2)) = (d1.map_count(), d2.map_count()) {
        if m1 != m2 {
            return different(format!("word map counts {m1} and {m2}"));
        }
    }
    if d1.len() != d2.len() {
        return different(format!("{} versus {} distinct distributions", d1.len(), d2.len()));
    }
    let sorted = |d: &DistributionSet| {
        let mut all: Vec<Vec<u64>> = d
            .distributions()
            .iter()
            .map(|v| {
                let mut s = v.clone();
                s.sort_unstable();
                s
            })
            .collect();
        all.sort();
        all
    };
    if sorted(d1) != sorted(d2) {
        return different("the multisets of sorted count vectors differ");
    }
    let (a, b) = (d1.distributions(), d2.distributions());
    let width = d1.group_order();
    if a.is_empty() {
        return Ok(Comparison::Equal { perm: (0..width).collect() });
    }

    let mut interner = Interner::default();
    let mut ca = initial(a, width, &mut interner);
    let mut cb = initial(b, width, &mut interner);
    loop {
        if histogram(&ca.columns) != histogram(&cb.columns) || histogram(&ca.vectors) != histogram(&cb.vectors) {
            return different("colour refinement separates the sets");
        }
        let classes = distinct(&ca.columns) + distinct(&ca.vectors);
        let na = refine(a, &ca, &mut interner);
        let nb = refine(b, &cb, &mut interner);
        let grew = distinct(&na.columns) + distinct(&na.vectors) > classes;
        ca = na;
        cb = nb;
        if !grew {
            if histogram(&ca.columns) != histogram(&cb.columns) || histogram(&ca.vectors) != histogram(&cb.vectors) {
                return different("colour refinement separates the sets");
            }
            break;
        }
    }

    // Most constrained columns first.
    let mut class_size: HashMap<u64, usize> = HashMap::new();
    for &c in &ca.columns {
        *class_size.entry(c).or_default() += 1;
    }
    let mut order: Vec<usize> = (0..width).collect();
    order.sort_by_key(|&i| (class_size[&ca.columns[i]], i));

    let cands: Vec<Vec<u32>> = ca
        .vectors
        .iter()
        .map(|&vc| {
            cb.vectors
                .iter()
                .enumerate()
                .filter(|&(_, &wc)| wc == vc)
                .map(|(w, _)| w as u32)
                .collect()
        })
        .collect();

    let mut search = Search {
        a,
        b,
        order,
        col_a: &ca.columns,
        col_b: &cb.columns,
        perm: vec![usize::MAX; width],
        used: vec![false; width],
        nodes: 0,
        budget: node_budget,
    };
    match search.go(0, &cands) {
        Outcome::Found => {
            debug_assert_eq!(search.perm[0], 0);
            Ok(Comparison::Equal { perm: search.perm })
        }
        Outcome::Exhausted => different("no identity-fixing relabelling matches the sets"),
        Outcome::OutOfBudget => Ok(Comparison::Inconclusive {
            reason: format!(
                "backtracking budget of {node_budget} nodes exhausted; colour refinement did not separate the sets"
            ),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{distribution_set, EnumOptions};
    use crate::group::builtin_group;

    fn ds(spec: &str, n: usize) -> DistributionSet {
        distribution_set(&builtin_group(spec).unwrap(), n, &EnumOptions::default()).unwrap()
    }

    #[test]
    fn heis3_matches_elementary_abelian_at_one_variable() {
        let c = compare_distsets(&ds("Heis3", 1), &ds("C3xC3xC3", 1), DEFAULT_NODE_BUDGET).unwrap();
        assert!(c.is_equal(), "{c:?}");
    }

    #[test]
    fn d8_and_q8_differ_at_two_variables() {
        let c = compare_distsets(&ds("D8", 2), &ds("Q8", 2), DEFAULT_NODE_BUDGET).unwrap();
        assert!(c.is_different(), "{c:?}");
    }

    #[test]
    fn relabelled_set_is_equal_and_permutation_is_valid() {
        let d = ds("S3", 2);
        let perm = vec![0, 3, 5, 1, 4, 2];
        let e = d.relabeled(&perm);
        match compare_distsets(&d, &e, DEFAULT_NODE_BUDGET).unwrap() {
            Comparison::Equal { perm: found } => {
                assert_eq!(found[0], 0);
                assert_eq!(d.relabeled(&found), e);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        assert!(compare_distsets(&ds("C2", 1), &ds("C2", 2), 10).is_err());
    }

    #[test]
    fn column_zero_stays_fixed() {
        // Same vectors except which coordinate is the identity.
        let a = DistributionSet::derived(3, 1, vec![vec![3, 0, 0], vec![1, 1, 1]]);
        let b = DistributionSet::derived(3, 1, vec![vec![0, 3, 0], vec![1, 1, 1]]);
        assert!(compare_distsets(&a, &b, 100).unwrap().is_different());
    }
}
