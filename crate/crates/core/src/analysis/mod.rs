//! Decision procedures and verification checks built on the engine.

mod checks;
mod compare;
mod detect;
mod sylow;
mod witness;

pub use checks::{
    amit_conjecture_spot, amit_vishne_check, check_uniform_theorem, commutator_distribution,
    equation_solution_check, frobenius_check, law_lemma_violations, surjectivity_gcd_criterion, AmitSpotCheck,
    AmitViolation, AmitVishneCheck, EquationCheck, FrobeniusCheck, FrobeniusEntry, GcdCriterion, LawLemmaCase,
    UniformTheoremCheck, AMIT_VISHNE_V, AMIT_VISHNE_W,
};
pub use compare::{compare_distsets, Comparison, DEFAULT_NODE_BUDGET};
pub use detect::{
    abelian_from_distset, abelian_groups_of_order, abelian_invariants_from_distset, deficiency_set,
    invariant_factors, nilpotent_from_1var_distset, nilpotent_from_nvar_distset, power_deficiency_set,
    DeficiencySet,
};
pub use sylow::{sylow_extract, sylow_product_check, SylowPrimeCheck, SylowProductCheck};
pub use witness::{build_witness_word, find_qp_witness_pair, Witness, WitnessData};
