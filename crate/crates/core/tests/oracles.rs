//! Detectors that read only distribution sets, checked against the group
//! oracles, plus values frozen from brute force.

use wordmap_core::analysis::*;
use wordmap_core::catalog::builtin_catalog;
use wordmap_core::engine::{
    distribution_set, enumerate_wordmap_group, fiber_distribution, solutions_count_xd, EnumOptions, FiberOptions,
};
use wordmap_core::group::*;
use wordmap_core::{builtin_group, parse_word, Error, GroupTable};

fn g(spec: &str) -> GroupTable {
    builtin_group(spec).unwrap()
}

fn counts(w: &str, spec: &str, n: usize) -> Vec<u64> {
    let w = parse_word(w, None).unwrap();
    fiber_distribution(&w, &g(spec), n, &[], &FiberOptions::default())
        .unwrap()
        .into_counts()
}

#[test]
fn frozen_fiber_counts() {
    assert_eq!(counts("x1", "Q8", 2), vec![8; 8]);
    assert_eq!(counts("[x,y]", "Q8", 2), vec![40, 24, 0, 0, 0, 0, 0, 0]);
    assert_eq!(counts("x^2", "Q8", 2), vec![16, 48, 0, 0, 0, 0, 0, 0]);
    assert_eq!(counts("x^2", "S3", 1), vec![4, 0, 0, 1, 1, 0]);
    assert_eq!(counts("1", "C3", 2), vec![9, 0, 0]);
}

#[test]
fn frozen_function_group_orders() {
    let opts = EnumOptions::default();
    for (spec, n, size) in [("Q8", 2, 32), ("D8", 2, 32), ("C2", 1, 2), ("C6", 2, 36), ("Heis3", 2, 27)] {
        assert_eq!(enumerate_wordmap_group(&g(spec), n, &opts).unwrap().size(), size, "{spec}");
    }
    assert_eq!(distribution_set(&g("Q8"), 2, &opts).unwrap().len(), 4);
    assert_eq!(
        distribution_set(&g("C2"), 1, &opts).unwrap().distributions(),
        &[vec![1, 1], vec![2, 0]]
    );
}

#[test]
fn frozen_structure() {
    let s3 = g("S3");
    assert_eq!(derived_subgroup(&s3).len(), 3);
    assert_eq!(center(&s3), vec![0]);
    assert_eq!(derived_subgroup(&g("Q8")), vec![0, 1]);
    assert_eq!(center(&g("Q8")), vec![0, 1]);
    assert_eq!(abelianization_order(&g("A4")), 3);
    assert_eq!(solutions_count_xd(&s3, 2).0, 4);
    assert_eq!(solutions_count_xd(&g("C12"), 4).0, 4);
    assert_eq!(g("Q8").exponent(), 4);
    assert_eq!(abelian_invariants_oracle(&g("C2xC3")), Some(vec![6]));
    assert!(matches!(sylow_decomposition(&s3, 2), Err(Error::NotNilpotent)));
}

#[test]
fn frozen_laws() {
    assert!(parse_word("x^4", None).unwrap().is_law(&g("Q8")).unwrap());
    assert!(parse_word("[x,y]", None).unwrap().is_law(&g("C6")).unwrap());
    assert!(!parse_word("x^2", None).unwrap().is_law(&g("S3")).unwrap());
    assert!(parse_word("x^3", None).unwrap().is_law(&g("Heis3")).unwrap());
}

#[test]
fn detectors_match_oracles_on_the_catalog() {
    let opts = EnumOptions::default();
    for spec in builtin_catalog() {
        let grp = g(&spec);
        let oracle = is_nilpotent_oracle(&grp);
        let d1 = distribution_set(&grp, 1, &opts).unwrap();
        assert_eq!(nilpotent_from_1var_distset(&d1).unwrap(), oracle, "{spec}");
        match distribution_set(&grp, 2, &opts) {
            Ok(d2) => {
                assert_eq!(nilpotent_from_nvar_distset(&d2).unwrap(), oracle, "{spec}");
                assert_eq!(abelian_from_distset(&d2).unwrap(), is_abelian_oracle(&grp), "{spec}");
            }
            Err(e) => assert!(e.is_budget() && spec == "S4", "{spec}: {e}"),
        }
    }
}

#[test]
fn witnesses_exactly_for_non_nilpotent_groups() {
    for spec in builtin_catalog() {
        let grp = g(&spec);
        let w = build_witness_word(&grp, &FiberOptions::default()).unwrap();
        assert_eq!(w.is_none(), is_nilpotent_oracle(&grp), "{spec}");
        if let Some(w) = w {
            assert!(w.distribution.is_surjective());
            assert!(w.distribution.identity_count() > grp.order() as u64);
        }
    }
}

#[test]
fn deficiency_sets_separate_abelian_groups() {
    for n in 1..=36u64 {
        let groups = abelian_groups_of_order(n);
        let sets: Vec<_> = groups
            .iter()
            .map(|parts| power_deficiency_set(&parts.iter().flatten().copied().collect::<Vec<_>>()))
            .collect();
        for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                assert_ne!(sets[i], sets[j], "order {n}");
            }
        }
    }
}

#[test]
fn deficiency_from_tables_matches_formula() {
    for spec in ["C4", "C2xC2", "C2xC6", "C3xC3xC3", "C8", "C2xC4", "C2xC2xC2"] {
        let grp = g(spec);
        let d = distribution_set(&grp, 1, &EnumOptions::default()).unwrap();
        let inv = abelian_invariants_oracle(&grp).unwrap();
        assert_eq!(deficiency_set(&d), power_deficiency_set(&inv), "{spec}");
        assert_eq!(abelian_invariants_from_distset(&d, grp.order()).unwrap(), inv);
    }
}

#[test]
fn sylow_extraction_matches_direct_computation() {
    let opts = EnumOptions::default();
    for spec in builtin_catalog() {
        let grp = g(&spec);
        if !is_nilpotent_oracle(&grp) {
            continue;
        }
        let d = distribution_set(&grp, 1, &opts).unwrap();
        for p in wordmap_core::num::prime_divisors(grp.order() as u64) {
            let dec = sylow_decomposition(&grp, p).unwrap();
            let (sub, _) = grp.induced_subgroup(&dec.sylow_elements).unwrap();
            let direct = distribution_set(&sub, 1, &opts).unwrap();
            let got = sylow_extract(&d, p).unwrap();
            assert!(compare_distsets(&got, &direct, DEFAULT_NODE_BUDGET).unwrap().is_equal(), "{spec} p={p}");
        }
    }
}

#[test]
fn commutator_fiber_peaks_at_the_identity() {
    for spec in builtin_catalog() {
        let grp = g(&spec);
        if is_abelian_oracle(&grp) {
            continue;
        }
        let c = commutator_distribution(&grp, &FiberOptions::default()).unwrap();
        let counts = c.counts();
        assert!(counts[1..].iter().all(|&x| x < counts[0]), "{spec}");
    }
}

#[test]
fn frobenius_on_the_catalog() {
    for spec in builtin_catalog() {
        assert!(frobenius_check(&g(&spec)).holds(), "{spec}");
    }
}
