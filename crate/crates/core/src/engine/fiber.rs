use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Elem, GroupTable};
use crate::word::{advance, Letter, Symbol, Word};

pub const DEFAULT_TUPLE_BUDGET: u64 = 100_000_000;

/// Exact fiber sizes `|w^-1(g_i)|` of one word map, indexed like the group
/// (identity at 0).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiberDistribution {
    group_order: usize,
    arity: usize,
    counts: Vec<u64>,
}

#[derive(Serialize)]
struct DistributionJson<'a> {
    group_order: usize,
    arity: usize,
    counts: &'a [u64],
    total: u64,
    surjective: bool,
    uniform: bool,
}

impl FiberDistribution {
    pub fn from_counts(group_order: usize, arity: usize, counts: Vec<u64>) -> Self {
        assert_eq!(counts.len(), group_order);
        Self { group_order, arity, counts }
    }

    /// Tallies a function table `G^n -> G`.
    pub fn from_table(group_order: usize, arity: usize, table: &[Elem]) -> Self {
        let mut counts = vec![0u64; group_order];
        for &v in table {
            counts[v as usize] += 1;
        }
        Self { group_order, arity, counts }
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn into_counts(self) -> Vec<u64> {
        self.counts
    }

    /// `|G|^n`
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn identity_count(&self) -> u64 {
        self.counts[0]
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.group_order).filter(|&i| self.counts[i] > 0).collect()
    }

    pub fn support_size(&self) -> usize {
        support_size(&self.counts)
    }

    pub fn is_surjective(&self) -> bool {
        self.support_size() == self.group_order
    }

    /// Every fiber has size `|G|^(n-1)`.
    pub fn is_uniform(&self) -> bool {
        self.is_surjective() && is_uniform_over_support(&self.counts)
    }

    pub fn is_uniform_over_support(&self) -> bool {
        is_uniform_over_support(&self.counts)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(DistributionJson {
            group_order: self.group_order,
            arity: self.arity,
            counts: &self.counts,
            total: self.total(),
            surjective: self.is_surjective(),
            uniform: self.is_uniform(),
        })
        .expect("distribution serializes")
    }
}

pub(crate) fn support_size(counts: &[u64]) -> usize {
    counts.iter().filter(|&&c| c > 0).count()
}

pub(crate) fn is_uniform_over_support(counts: &[u64]) -> bool {
    let mut nz = counts.iter().filter(|&&c| c > 0);
    match nz.next() {
        None => true,
        Some(&first) => nz.all(|&c| c == first),
    }
}

#[derive(Clone, Debug)]
pub struct FiberOptions {
    /// Maximum number of word evaluations.
    pub tuple_budget: u64,
    /// Split words into blocks over disjoint variable sets and convolve the
    /// block distributions.
    pub convolution: bool,
}

impl Default for FiberOptions {
    fn default() -> Self {
        Self {
            tuple_budget: DEFAULT_TUPLE_BUDGET,
            convolution: true,
        }
    }
}

/// Group-algebra product of two count vectors: `out[a*b] += x[a] * y[b]`.
pub fn convolve(g: &GroupTable, x: &[u64], y: &[u64]) -> Result<Vec<u64>> {
    let mut out = vec![0u64; g.order()];
    for (a, &xa) in x.iter().enumerate() {
        if xa == 0 {
            continue;
        }
        let row = g.row(a);
        for (b, &yb) in y.iter().enumerate() {
            if yb == 0 {
                continue;
            }
            let c = &mut out[row[b] as usize];
            *c = xa
                .checked_mul(yb)
                .and_then(|p| c.checked_add(p))
                .ok_or(Error::CountOverflow)?;
        }
    }
    Ok(out)
}

/// Splits a reduced word into consecutive blocks whose variable sets are
/// pairwise disjoint. The cut after position `i` is allowed iff no variable
/// occurs both at or before `i` and after `i`.
pub fn disjoint_blocks(w: &Word) -> Vec<Word> {
    let letters = w.letters();
    if letters.is_empty() {
        return vec![w.clone()];
    }
    let mut last = vec![0usize; w.arity()];
    for (k, l) in letters.iter().enumerate() {
        if let Symbol::Var(i) = l.symbol {
            last[i] = k;
        }
    }
    let mut blocks = Vec::new();
    let mut start = 0;
    let mut reach = 0;
    for (k, l) in letters.iter().enumerate() {
        if let Symbol::Var(i) = l.symbol {
            reach = reach.max(last[i]);
        }
        if reach <= k {
            blocks.push(Word::new(w.arity(), letters[start..=k].iter().copied()));
            start = k + 1;
        }
    }
    blocks
}

fn pow_checked(base: usize, exp: usize) -> Option<u64> {
    (base as u64).checked_pow(exp as u32)
}

/// Exact fiber counts of `w` regarded as an `n`-variable word map on `G`.
///
/// Only variables that occur in the word are enumerated; each absent
/// variable multiplies every count by `|G|`.
pub fn fiber_distribution(
    w: &Word,
    g: &GroupTable,
    n: usize,
    params: &[usize],
    opts: &FiberOptions,
) -> Result<FiberDistribution> {
    if n < w.arity() {
        return Err(Error::ArityMismatch { hint: n, needed: w.arity() });
    }
    // Validate parameters up front.
    w.compile(g, params)?;

    let blocks = if opts.convolution { disjoint_blocks(w) } else { vec![w.clone()] };
    let required: u128 = blocks
        .iter()
        .map(|b| (g.order() as u128).pow(b.variables_used().len() as u32))
        .sum();
    if required > opts.tuple_budget as u128 {
        return Err(Error::BudgetExceeded { required, budget: opts.tuple_budget });
    }

    let mut counts: Option<Vec<u64>> = None;
    for b in &blocks {
        let bc = enumerate_counts(b, g, params)?;
        counts = Some(match counts {
            None => bc,
            Some(acc) => convolve(g, &acc, &bc)?,
        });
    }
    let mut counts = counts.expect("at least one block");

    let used = w.variables_used().len();
    let factor = pow_checked(g.order(), n - used).ok_or(Error::CountOverflow)?;
    for c in counts.iter_mut() {
        *c = c.checked_mul(factor).ok_or(Error::CountOverflow)?;
    }
    Ok(FiberDistribution::from_counts(g.order(), n, counts))
}

/// Direct enumeration over the variables that occur in `w`, row-major in
/// element indices. Parallel over the first variable.
fn enumerate_counts(w: &Word, g: &GroupTable, params: &[usize]) -> Result<Vec<u64>> {
    let compiled = w.compile(g, params)?;
    let vars = w.variables_used();
    let order = g.order();
    let mut counts = vec![0u64; order];
    if vars.is_empty() {
        counts[compiled.eval(&vec![0; w.arity()])] = 1;
        return Ok(counts);
    }
    let run = |first: usize, counts: &mut Vec<u64>| {
        let mut tuple = vec![0usize; w.arity()];
        tuple[vars[0]] = first;
        let rest = &vars[1..];
        let mut odometer = vec![0usize; rest.len()];
        loop {
            for (k, &v) in rest.iter().enumerate() {
                tuple[v] = odometer[k];
            }
            counts[compiled.eval(&tuple)] += 1;
            if !advance(&mut odometer, order) {
                break;
            }
        }
    };
    let work = (order as u128).pow(vars.len() as u32);
    if work < 1 << 14 {
        for first in 0..order {
            run(first, &mut counts);
        }
        return Ok(counts);
    }
    let merged = (0..order)
        .into_par_iter()
        .fold(
            || vec![0u64; order],
            |mut acc, first| {
                run(first, &mut acc);
                acc
            },
        )
        .reduce(
            || vec![0u64; order],
            |mut a, b| {
                a.iter_mut().zip(&b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(merged)
}

/// `|X(d)|` and `X(d) = {x : x^d = 1}`, read off the element orders.
pub fn solutions_count_xd(g: &GroupTable, d: u64) -> (usize, Vec<usize>) {
    let set: Vec<usize> = g.elements().filter(|&x| d % g.element_order(x) == 0).collect();
    (set.len(), set)
}

/// Letter helper for building power words in tests and analyses.
pub fn power_word(var: usize, arity: usize, k: i64) -> Word {
    Word::new(arity, [Letter::var(var, k)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin_group;
    use crate::word::parse_word;

    fn dist(word: &str, group: &str, n: usize) -> FiberDistribution {
        let g = builtin_group(group).unwrap();
        let w = parse_word(word, None).unwrap();
        fiber_distribution(&w, &g, n, &[], &FiberOptions::default()).unwrap()
    }

    #[test]
    fn q8_projection_is_uniform() {
        let d = dist("x1", "Q8", 2);
        assert_eq!(d.counts(), &[8; 8]);
        assert!(d.is_uniform());
        assert_eq!(d.total(), 64);
    }

    #[test]
    fn q8_commutator_counts() {
        // [x,y] on Q8: the 40 commuting pairs give 1, the other 24 give -1.
        let d = dist("[x,y]", "Q8", 2);
        assert_eq!(d.counts(), &[40, 24, 0, 0, 0, 0, 0, 0]);
        assert!(d.is_uniform_over_support() == false);
    }

    #[test]
    fn q8_square_counts() {
        // x^2 = 1 for x = ±1, x^2 = -1 for the six others; times 8 for y.
        let d = dist("x^2", "Q8", 2);
        assert_eq!(d.counts(), &[16, 48, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn convolution_path_matches_plain_enumeration() {
        let g = builtin_group("A4").unwrap();
        let w = parse_word("x1^2 x2^-1 x1 x3^2 [x4, x5]", None).unwrap();
        assert_eq!(disjoint_blocks(&w).len(), 3);
        let fast = fiber_distribution(&w, &g, 6, &[], &FiberOptions::default()).unwrap();
        let plain = fiber_distribution(
            &w,
            &g,
            6,
            &[],
            &FiberOptions { convolution: false, ..Default::default() },
        )
        .unwrap();
        assert_eq!(fast, plain);
        assert_eq!(fast.total(), 12u64.pow(6));
    }

    #[test]
    fn budget_is_enforced() {
        let g = builtin_group("S4").unwrap();
        let w = parse_word("[x1, x2] x3 x1", None).unwrap();
        let opts = FiberOptions { tuple_budget: 1000, convolution: false };
        match fiber_distribution(&w, &g, 3, &[], &opts) {
            Err(Error::BudgetExceeded { required, .. }) => assert_eq!(required, 24u128.pow(3)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn parameters_and_errors() {
        let q8 = builtin_group("Q8").unwrap();
        let w = parse_word("x1 g0", None).unwrap();
        let d = fiber_distribution(&w, &q8, 1, &[2], &FiberOptions::default()).unwrap();
        assert!(d.is_uniform());
        assert!(matches!(
            fiber_distribution(&w, &q8, 1, &[], &FiberOptions::default()),
            Err(Error::MissingParameter(..))
        ));
        assert!(matches!(
            fiber_distribution(&w, &q8, 0, &[1], &FiberOptions::default()),
            Err(Error::ArityMismatch { .. })
        ));
        let empty = fiber_distribution(&Word::identity(0), &q8, 2, &[], &FiberOptions::default()).unwrap();
        assert_eq!(empty.counts()[0], 64);
    }

    #[test]
    fn xd_examples() {
        let s3 = builtin_group("S3").unwrap();
        assert_eq!(solutions_count_xd(&s3, 1), (1, vec![0]));
        assert_eq!(solutions_count_xd(&s3, 2).0, 4);
        assert_eq!(solutions_count_xd(&builtin_group("C12").unwrap(), 4).0, 4);
    }
}
