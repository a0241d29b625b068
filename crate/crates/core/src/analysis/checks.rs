//! Group-side verification of the uniformity theorem and its corollaries,
//! the Amit–Vishne example, Amit's conjecture and Frobenius' theorem.

use serde::Serialize;

use super::detect::nilpotent_from_nvar_distset;
use super::witness::{build_witness_word, WitnessData};
use crate::engine::{
    fiber_distribution, solutions_count_xd, EnumOptions, FiberDistribution, FiberOptions, WordMapGroup,
};
use crate::error::{Error, Result};
use crate::group::{builtin_group, is_nilpotent_oracle, subgroup_closure, GroupTable};
use crate::num::divisors;
use crate::word::{advance, parse_word, Word};

#[derive(Clone, Debug, Serialize)]
pub struct UniformTheoremCheck {
    pub arity: usize,
    pub oracle_nilpotent: bool,
    /// `None` when `F_n(G)` could not be enumerated.
    pub map_count: Option<usize>,
    pub all_surjective_uniform: Option<bool>,
    pub witness: Option<WitnessData>,
    pub witness_counts: Option<Vec<u64>>,
    /// The distribution-set side was skipped because of the cap.
    pub degraded: bool,
    pub agrees: bool,
}

/// The nilpotent iff every surjective word map is uniform equivalence, on
/// one group. The distribution-set side is used when `F_n(G)` fits under
/// the cap; the witness side always runs.
pub fn check_uniform_theorem(
    g: &GroupTable,
    n: usize,
    enum_opts: &EnumOptions,
    fiber_opts: &FiberOptions,
) -> Result<UniformTheoremCheck> {
    if n < 2 {
        return Err(Error::WrongArity { expected: "arity >= 2", got: n });
    }
    let oracle = is_nilpotent_oracle(g);
    let wmg = WordMapGroup::enumerate(g, n, enum_opts)?;
    let (map_count, all_uniform) = if wmg.is_complete() {
        let d = wmg.distribution_set();
        (Some(wmg.size()), Some(nilpotent_from_nvar_distset(&d)?))
    } else {
        (None, None)
    };
    drop(wmg);
    let witness = build_witness_word(g, fiber_opts)?;
    let agrees = all_uniform.map_or(true, |u| u == oracle) && witness.is_none() == oracle;
    let (witness, witness_counts) = match witness {
        Some(w) => (Some(w.data), Some(w.distribution.into_counts())),
        None => (None, None),
    };
    Ok(UniformTheoremCheck {
        arity: n,
        oracle_nilpotent: oracle,
        map_count,
        all_surjective_uniform: all_uniform,
        witness,
        witness_counts,
        degraded: map_count.is_none(),
        agrees,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GcdCriterion {
    pub gcd: u64,
    pub predicted_surjective: bool,
    pub predicted_uniform: bool,
    /// False when brute force was over budget.
    pub verified: bool,
}

/// On a nilpotent group, a parameterized word is surjective iff it is
/// uniform iff the gcd of its exponent sums and `exp(N)` is 1. The
/// prediction is confirmed by brute force when within budget.
pub fn surjectivity_gcd_criterion(w: &Word, g: &GroupTable, params: &[usize], opts: &FiberOptions) -> Result<GcdCriterion> {
    if !is_nilpotent_oracle(g) {
        return Err(Error::NotNilpotent);
    }
    let gcd = w.gcd_with_exponent(g);
    let predicted = gcd == 1;
    let verified = match fiber_distribution(w, g, w.arity(), params, opts) {
        Ok(d) => {
            if d.is_surjective() != predicted || d.is_uniform() != predicted {
                return Err(Error::Verification(format!(
                    "{w}: gcd {gcd} but surjective = {}, uniform = {}",
                    d.is_surjective(),
                    d.is_uniform()
                )));
            }
            true
        }
        Err(Error::BudgetExceeded { .. }) => false,
        Err(e) => return Err(e),
    };
    Ok(GcdCriterion {
        gcd,
        predicted_surjective: predicted,
        predicted_uniform: predicted,
        verified,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquationCheck {
    pub arity: usize,
    #[serde(serialize_with = "crate::report::serialize_display")]
    pub w: Word,
    #[serde(serialize_with = "crate::report::serialize_display")]
    pub c: Word,
    pub solutions: u64,
    pub expected: u64,
    /// For `w = x1`: every solution has first coordinate the identity.
    pub identity_first: Option<bool>,
    pub holds: bool,
}

/// Counts the solutions of `w(x) = c(x)` for surjective `w` and commutator
/// word `c` on a nilpotent group; there must be exactly `|G|^(n-1)`.
pub fn equation_solution_check(
    g: &GroupTable,
    w: &Word,
    c: &Word,
    params: &[usize],
    opts: &FiberOptions,
) -> Result<EquationCheck> {
    if !is_nilpotent_oracle(g) {
        return Err(Error::NotNilpotent);
    }
    if !c.is_commutator_word() {
        return Err(Error::NotCommutatorWord(c.exponent_profile().0));
    }
    let n = w.arity().max(c.arity()).max(1);
    let w = w.clone().with_arity(n)?;
    let c = c.clone().with_arity(n)?;
    if !fiber_distribution(&w, g, n, params, opts)?.is_surjective() {
        return Err(Error::NotSurjective);
    }
    let required = (g.order() as u128).pow(n as u32);
    if required > opts.tuple_budget as u128 {
        return Err(Error::BudgetExceeded { required, budget: opts.tuple_budget });
    }
    let cw = w.compile(g, params)?;
    let cc = c.compile(g, params)?;
    let mut tuple = vec![0usize; n];
    let mut solutions = 0u64;
    let mut all_identity_first = true;
    loop {
        if cw.eval(&tuple) == cc.eval(&tuple) {
            solutions += 1;
            all_identity_first &= tuple[0] == 0;
        }
        if !advance(&mut tuple, g.order()) {
            break;
        }
    }
    let expected = (g.order() as u64).pow(n as u32 - 1);
    let identity_first = (w == Word::var(0, n)).then_some(all_identity_first);
    Ok(EquationCheck {
        arity: n,
        holds: solutions == expected && identity_first != Some(false),
        w,
        c,
        solutions,
        expected,
        identity_first,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawLemmaCase {
    pub k: u64,
    #[serde(serialize_with = "crate::report::serialize_display")]
    pub c: Word,
    pub product_is_law: bool,
    pub power_is_law: bool,
    pub c_is_law: bool,
}

/// Cases violating `x^k c` is a law iff `x^k` and `c` are, for
/// `k = 1..=exp(G)` and the given commutator words.
pub fn law_lemma_violations(g: &GroupTable, commutators: &[Word]) -> Result<Vec<LawLemmaCase>> {
    let mut bad = Vec::new();
    for c in commutators {
        if !c.is_commutator_word() {
            return Err(Error::NotCommutatorWord(c.exponent_profile().0));
        }
        let n = c.arity().max(1);
        let c = c.clone().with_arity(n)?;
        for k in 1..=g.exponent() {
            let xk = Word::var(0, n).pow(k as i64);
            let case = LawLemmaCase {
                k,
                product_is_law: xk.mul(&c).is_law(g)?,
                power_is_law: xk.is_law(g)?,
                c_is_law: c.is_law(g)?,
                c: c.clone(),
            };
            if case.product_is_law != (case.power_is_law && case.c_is_law) {
                bad.push(case);
            }
        }
    }
    Ok(bad)
}

pub const AMIT_VISHNE_W: &str = "x^2";
pub const AMIT_VISHNE_V: &str = "[x, y x^2 y^2]";

#[derive(Clone, Debug, Serialize)]
pub struct AmitVishneCheck {
    pub counts_w: Vec<u64>,
    pub counts_v: Vec<u64>,
    pub distributions_equal: bool,
    /// Counts are 24 at the identity, 6 at each element of order 3.
    pub expected_shape: bool,
    pub map_count: Option<usize>,
    pub derived_order: Option<usize>,
    pub w_in_derived: Option<bool>,
    pub v_in_derived: Option<bool>,
    /// Set when `F_2(S3)` exceeded the cap and the law-lemma test replaced
    /// the derived-subgroup test.
    pub degraded: bool,
    pub law_lemma_violations: Option<Vec<LawLemmaCase>>,
    pub holds: bool,
}

/// `x^2` and `[x, y x^2 y^2]` have the same distribution on `S3` but are not
/// automorphic: only the second lies in the derived subgroup of `F_2(S3)`.
pub fn amit_vishne_check(enum_opts: &EnumOptions, fiber_opts: &FiberOptions, seed: u64) -> Result<AmitVishneCheck> {
    let s3 = builtin_group("S3")?;
    let w = parse_word(AMIT_VISHNE_W, Some(2))?;
    let v = parse_word(AMIT_VISHNE_V, Some(2))?;
    let dw = fiber_distribution(&w, &s3, 2, &[], fiber_opts)?;
    let dv = fiber_distribution(&v, &s3, 2, &[], fiber_opts)?;
    let equal = dw == dv;
    let expected_shape = s3.elements().all(|x| {
        let want = match s3.element_order(x) {
            1 => 24,
            3 => 6,
            _ => 0,
        };
        dw.counts()[x] == want
    });

    let wmg = WordMapGroup::enumerate(&s3, 2, enum_opts)?;
    let mut check = AmitVishneCheck {
        counts_w: dw.counts().to_vec(),
        counts_v: dv.counts().to_vec(),
        distributions_equal: equal,
        expected_shape,
        map_count: None,
        derived_order: None,
        w_in_derived: None,
        v_in_derived: None,
        degraded: false,
        law_lemma_violations: None,
        holds: false,
    };
    if wmg.is_complete() {
        let derived = wmg.derived_subgroup()?;
        let member = |word: &Word| -> Result<bool> {
            let id = wmg
                .index_of(&wmg.function_of(word)?)
                .ok_or_else(|| Error::Verification(format!("{word} is missing from F_2(S3)")))?;
            Ok(derived.binary_search(&id).is_ok())
        };
        check.map_count = Some(wmg.size());
        check.derived_order = Some(derived.len());
        check.w_in_derived = Some(member(&w)?);
        check.v_in_derived = Some(member(&v)?);
        check.holds = equal && expected_shape && check.w_in_derived == Some(false) && check.v_in_derived == Some(true);
    } else {
        let sample = crate::sample::random_commutator_words(seed, 20, 2, 8);
        let bad = law_lemma_violations(&s3, &sample)?;
        check.degraded = true;
        check.holds = equal && expected_shape && bad.is_empty();
        check.law_lemma_violations = Some(bad);
    }
    Ok(check)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AmitViolation {
    #[serde(serialize_with = "crate::report::serialize_display")]
    pub word: Word,
    pub identity_count: u64,
    pub bound: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AmitSpotCheck {
    pub checked: usize,
    pub skipped_over_budget: usize,
    pub min_identity_count: Option<u64>,
    pub violations: Vec<AmitViolation>,
}

/// Identity fiber of each word is at least `|G|^(n-1)`.
pub fn amit_conjecture_spot(g: &GroupTable, words: &[Word], opts: &FiberOptions) -> Result<AmitSpotCheck> {
    if !is_nilpotent_oracle(g) {
        return Err(Error::NotNilpotent);
    }
    let mut out = AmitSpotCheck {
        checked: 0,
        skipped_over_budget: 0,
        min_identity_count: None,
        violations: Vec::new(),
    };
    for w in words {
        let n = w.arity().max(1);
        let d = match fiber_distribution(w, g, n, &[], opts) {
            Ok(d) => d,
            Err(Error::BudgetExceeded { .. }) => {
                out.skipped_over_budget += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        out.checked += 1;
        let bound = (g.order() as u64).pow(n as u32 - 1);
        let id = d.identity_count();
        out.min_identity_count = Some(out.min_identity_count.map_or(id, |m| m.min(id)));
        if id < bound {
            out.violations.push(AmitViolation { word: w.clone(), identity_count: id, bound });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusEntry {
    pub d: u64,
    pub solutions: usize,
    pub divides: bool,
    /// Only checked when `|X(d)| = d`.
    pub closed: Option<bool>,
    pub normal: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusCheck {
    pub exponent: u64,
    pub entries: Vec<FrobeniusEntry>,
}

impl FrobeniusCheck {
    pub fn holds(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.divides && e.closed != Some(false) && e.normal != Some(false))
    }
}

/// For every `d | exp(G)`: `d` divides `|X(d)|`, and when `|X(d)| = d` the
/// set `X(d)` is a normal subgroup.
pub fn frobenius_check(g: &GroupTable) -> FrobeniusCheck {
    let entries = divisors(g.exponent())
        .into_iter()
        .map(|d| {
            let (count, set) = solutions_count_xd(g, d);
            let exact = count as u64 == d;
            let closed = exact.then(|| subgroup_closure(g, &set) == set);
            let normal = exact.then(|| {
                g.elements().all(|t| {
                    set.iter()
                        .all(|&x| set.binary_search(&g.mul(g.mul(g.inv(t), x), t)).is_ok())
                })
            });
            FrobeniusEntry {
                d,
                solutions: count,
                divides: count as u64 % d == 0,
                closed,
                normal,
            }
        })
        .collect();
    FrobeniusCheck { exponent: g.exponent(), entries }
}

/// Distribution of the commutator word `[x, y]`, used as the group-side
/// abelianness test.
pub fn commutator_distribution(g: &GroupTable, opts: &FiberOptions) -> Result<FiberDistribution> {
    fiber_distribution(&parse_word("[x,y]", None)?, g, 2, &[], opts)
}
