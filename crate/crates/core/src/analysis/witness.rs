//! Surjective, non-uniform witness words for non-nilpotent groups.
//!
//! For a group that is not `p`-nilpotent there are `a, b` of equal order
//! `q^k` (`q != p` prime) with `o(ab) = p`, or `o(ab)` in `{2, 4}` when
//! `p = 2`. With `r*p + s*q^k = 1` the word
//! `x1^(s q^k) x2^(s q^k) (x1 x2)^(r p)` maps `(g, 1)` to `g` and sends
//! both `(g, g^-1)` and `(a, b)` to the identity.

use serde::Serialize;

use crate::engine::{fiber_distribution, FiberDistribution, FiberOptions};
use crate::error::{Error, Result};
use crate::group::{is_nilpotent_oracle, GroupTable};
use crate::num::{bezout_min_s, is_prime, prime_divisors, split_prime_part};
use crate::word::{Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessData {
    /// The prime `p` the group fails to be nilpotent at.
    pub p: u64,
    /// `p`, or 4 when `p = 2` and `o(ab) = 4`; used in the Bézout identity.
    pub modulus: u64,
    pub q: u64,
    pub k: u32,
    pub a: usize,
    pub b: usize,
    pub r: i64,
    pub s: i64,
    #[serde(serialize_with = "crate::report::serialize_display")]
    pub word: Word,
}

impl WitnessData {
    pub fn q_power(&self) -> u64 {
        self.q.pow(self.k)
    }
}

fn witness_word(r: i64, s: i64, modulus: u64, qk: u64) -> Word {
    let e = s * qk as i64;
    let head = Word::new(2, [Letter::var(0, e), Letter::var(1, e)]);
    let prod = Word::new(2, [Letter::var(0, 1), Letter::var(1, 1)]);
    head.mul(&prod.pow(r * modulus as i64))
}

/// Exhaustive search for a pair certifying that `G` is not `p`-nilpotent.
/// Order: primes `q` ascending, then `k` ascending, then pairs `(a, b)` in
/// index order. `None` certifies `p`-nilpotency.
pub fn find_qp_witness_pair(g: &GroupTable, p: u64) -> Result<Option<WitnessData>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let order = g.order() as u64;
    if order % p != 0 {
        return Err(Error::PrimeNotDividing { prime: p, order: g.order() });
    }
    for q in prime_divisors(order).into_iter().filter(|&q| q != p) {
        let (max_k, _) = split_prime_part(order, q);
        for k in 1..=max_k {
            let qk = q.pow(k);
            let elems: Vec<usize> = g.elements().filter(|&x| g.element_order(x) == qk).collect();
            for &a in &elems {
                for &b in &elems {
                    let o = g.element_order(g.mul(a, b));
                    let modulus = if o == p {
                        p
                    } else if p == 2 && o == 4 {
                        4
                    } else {
                        continue;
                    };
                    let (r, s) = bezout_min_s(modulus, qk).expect("coprime by construction");
                    return Ok(Some(WitnessData {
                        p,
                        modulus,
                        q,
                        k,
                        a,
                        b,
                        r,
                        s,
                        word: witness_word(r, s, modulus, qk),
                    }));
                }
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug)]
pub struct Witness {
    pub data: WitnessData,
    /// Distribution of the witness word as a 2-variable map.
    pub distribution: FiberDistribution,
}

/// The witness word for the first prime (ascending) at which `G` fails to be
/// `p`-nilpotent, verified surjective with identity fiber at least `|G|+1`.
/// `None` exactly for nilpotent groups; both directions are cross-checked
/// against the central-series oracle.
pub fn build_witness_word(g: &GroupTable, opts: &FiberOptions) -> Result<Option<Witness>> {
    let mut found = None;
    for p in prime_divisors(g.order() as u64) {
        if let Some(data) = find_qp_witness_pair(g, p)? {
            found = Some(data);
            break;
        }
    }
    let nilpotent = is_nilpotent_oracle(g);
    let Some(data) = found else {
        if !nilpotent {
            return Err(Error::Verification(
                "no witness pair found for a non-nilpotent group".into(),
            ));
        }
        return Ok(None);
    };
    if nilpotent {
        return Err(Error::Verification("witness pair found in a nilpotent group".into()));
    }
    let expected = [data.a, data.b];
    if data.word.evaluate(g, &expected, &[])? != 0 {
        return Err(Error::Verification(format!("witness word does not vanish at {expected:?}")));
    }
    let distribution = fiber_distribution(&data.word, g, 2, &[], opts)?;
    if !distribution.is_surjective() || distribution.identity_count() < g.order() as u64 + 1 {
        return Err(Error::Verification(format!(
            "witness word {} has identity fiber {} (surjective: {})",
            data.word,
            distribution.identity_count(),
            distribution.is_surjective()
        )));
    }
    Ok(Some(Witness { data, distribution }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin_group;
    use crate::word::parse_word;

    #[test]
    fn s3_pair_at_three() {
        let s3 = builtin_group("S3").unwrap();
        let w = find_qp_witness_pair(&s3, 3).unwrap().unwrap();
        assert_eq!((w.q, w.k, w.modulus), (2, 1, 3));
        assert_eq!(s3.element_order(w.a), 2);
        assert_eq!(s3.element_order(w.b), 2);
        assert_eq!(s3.element_order(s3.mul(w.a, w.b)), 3);
        assert_eq!((w.r, w.s), (1, -1));
        assert_eq!(w.word, parse_word("x1^-2 x2^-2 (x1 x2)^3", None).unwrap());
    }

    #[test]
    fn q8_has_no_pair() {
        let q8 = builtin_group("Q8").unwrap();
        assert_eq!(find_qp_witness_pair(&q8, 2).unwrap(), None);
        assert!(matches!(find_qp_witness_pair(&q8, 3), Err(Error::PrimeNotDividing { .. })));
    }

    #[test]
    fn a4_pair_at_two() {
        let a4 = builtin_group("A4").unwrap();
        let w = find_qp_witness_pair(&a4, 2).unwrap().unwrap();
        assert_eq!(w.q, 3);
        assert_eq!(a4.element_order(w.a), 3);
        assert!([2, 4].contains(&a4.element_order(a4.mul(w.a, w.b))));
        // V4 is a normal 3-complement.
        assert_eq!(find_qp_witness_pair(&a4, 3).unwrap(), None);
    }

    #[test]
    fn witness_words() {
        let opts = FiberOptions::default();
        let s3 = builtin_group("S3").unwrap();
        let w = build_witness_word(&s3, &opts).unwrap().unwrap();
        assert!(w.distribution.is_surjective());
        assert!(w.distribution.identity_count() >= 7);
        assert_eq!(w.distribution.total(), 36);

        let a4 = builtin_group("A4").unwrap();
        let w = build_witness_word(&a4, &opts).unwrap().unwrap();
        assert!(w.distribution.is_surjective() && !w.distribution.is_uniform());
        assert!(w.distribution.identity_count() >= 13);

        assert!(build_witness_word(&builtin_group("Q8").unwrap(), &opts).unwrap().is_none());
    }
}
