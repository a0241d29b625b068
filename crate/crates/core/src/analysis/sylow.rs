//! Sylow factorization of word-map distributions on nilpotent groups.

use serde::Serialize;

use super::detect::{nilpotent_from_1var_distset, nilpotent_from_nvar_distset};
use crate::engine::{fiber_distribution, DistributionSet, FiberOptions};
use crate::error::{Error, Result};
use crate::group::{is_nilpotent_oracle, sylow_decomposition, GroupTable};
use crate::num::{bezout_min_s, is_prime, split_prime_part};
use crate::word::{advance, Word};

/// The distribution set of the Sylow `p`-subgroup, read off a distribution
/// set of a nilpotent group.
///
/// The Sylow subgroup is located as the support of a vector that is uniform
/// on a support of size `p^k`. Each vector is restricted to it and divided
/// by its common complement factor, so it sums to `|P|^n`.
pub fn sylow_extract(d: &DistributionSet, p: u64) -> Result<DistributionSet> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let order = d.group_order() as u64;
    if order % p != 0 {
        return Err(Error::PrimeNotDividing { prime: p, order: d.group_order() });
    }
    let nilpotent = if d.arity() == 1 {
        nilpotent_from_1var_distset(d)?
    } else {
        nilpotent_from_nvar_distset(d)?
    };
    if !nilpotent {
        return Err(Error::NotNilpotentSet);
    }
    let (k, _) = split_prime_part(order, p);
    let pk = p.pow(k) as usize;
    let support = d
        .uniform_on_support()
        .map(|v| (0..v.len()).filter(|&i| v[i] > 0).collect::<Vec<usize>>())
        .find(|s| s.len() == pk && s[0] == 0)
        .ok_or(Error::NoSylowVector(p))?;

    let full = (pk as u64).pow(d.arity() as u32);
    let mut vectors = Vec::with_capacity(d.len());
    for v in d.distributions() {
        let restricted: Vec<u64> = support.iter().map(|&i| v[i]).collect();
        let total: u64 = restricted.iter().sum();
        if total == 0 || total % full != 0 {
            return Err(Error::Verification(format!(
                "restriction to the Sylow {p}-support sums to {total}, not a multiple of {full}"
            )));
        }
        let factor = total / full;
        if restricted.iter().any(|c| c % factor != 0) {
            return Err(Error::Verification(format!(
                "restricted counts are not divisible by the complement factor {factor}"
            )));
        }
        vectors.push(restricted.into_iter().map(|c| c / factor).collect::<Vec<u64>>());
    }
    Ok(DistributionSet::derived(pk, d.arity(), vectors))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SylowPrimeCheck {
    pub prime: u64,
    pub sylow_order: usize,
    pub complement_order: usize,
    /// `r * |P| + s * |K| = 1`.
    pub r: i64,
    pub s: i64,
    pub factorization_holds: bool,
    pub agrees_on_sylow: bool,
    pub law_on_complement: bool,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SylowProductCheck {
    pub arity: usize,
    pub words: Vec<String>,
    pub primes: Vec<SylowPrimeCheck>,
}

impl SylowProductCheck {
    pub fn holds(&self) -> bool {
        self.primes
            .iter()
            .all(|c| c.factorization_holds && c.agrees_on_sylow && c.law_on_complement)
    }
}

fn agree_everywhere(a: &Word, b: &Word, g: &GroupTable, n: usize) -> Result<bool> {
    let ca = a.compile(g, &[])?;
    let cb = b.compile(g, &[])?;
    let mut tuple = vec![0usize; n];
    loop {
        if ca.eval(&tuple) != cb.eval(&tuple) {
            return Ok(false);
        }
        if !advance(&mut tuple, g.order()) {
            return Ok(true);
        }
    }
}

/// For every prime `p` dividing `|G|` and every word: the fibers of `w` on
/// `G = P x K` factor as `|w^-1(gh)| = |w_P^-1(g)| * |w_K^-1(h)|`, and
/// `w(x_1^(s|K|), ...)` agrees with `w` on `P^n` and is a law on `K`.
pub fn sylow_product_check(g: &GroupTable, n: usize, words: &[Word], opts: &FiberOptions) -> Result<SylowProductCheck> {
    if !is_nilpotent_oracle(g) {
        return Err(Error::NotNilpotent);
    }
    let words: Vec<Word> = words.iter().map(|w| w.clone().with_arity(n)).collect::<Result<_>>()?;
    if let Some(w) = words.iter().find(|w| w.has_constants()) {
        return Err(Error::Verification(format!("{w} has parameters")));
    }
    let mut primes = Vec::new();
    for p in crate::num::prime_divisors(g.order() as u64) {
        let dec = sylow_decomposition(g, p)?;
        let (pt, pmap) = g.induced_subgroup(&dec.sylow_elements)?;
        let (kt, kmap) = g.induced_subgroup(&dec.complement_elements)?;
        let (r, s) = bezout_min_s(pt.order() as u64, kt.order() as u64).expect("Sylow orders are coprime");
        let mut check = SylowPrimeCheck {
            prime: p,
            sylow_order: pt.order(),
            complement_order: kt.order(),
            r,
            s,
            factorization_holds: true,
            agrees_on_sylow: true,
            law_on_complement: true,
            failures: Vec::new(),
        };
        for w in &words {
            let dg = fiber_distribution(w, g, n, &[], opts)?;
            let dp = fiber_distribution(w, &pt, n, &[], opts)?;
            let dk = fiber_distribution(w, &kt, n, &[], opts)?;
            'outer: for (i, &x) in pmap.iter().enumerate() {
                for (j, &y) in kmap.iter().enumerate() {
                    let lhs = dg.counts()[g.mul(x, y)];
                    let rhs = dp.counts()[i] * dk.counts()[j];
                    if lhs != rhs {
                        check.factorization_holds = false;
                        check.failures.push(format!("{w}: fiber at {x}*{y} is {lhs}, product is {rhs}"));
                        break 'outer;
                    }
                }
            }
            let hat = w.substitute_power(s * kt.order() as i64);
            if !agree_everywhere(&hat, w, &pt, n)? {
                check.agrees_on_sylow = false;
                check.failures.push(format!("{hat} differs from {w} on the Sylow {p}-subgroup"));
            }
            if !hat.is_law(&kt)? {
                check.law_on_complement = false;
                check.failures.push(format!("{hat} is not a law on the {p}-complement"));
            }
        }
        primes.push(check);
    }
    Ok(SylowProductCheck {
        arity: n,
        words: words.iter().map(Word::to_string).collect(),
        primes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::compare::{compare_distsets, DEFAULT_NODE_BUDGET};
    use crate::engine::{distribution_set, EnumOptions};
    use crate::group::builtin_group;
    use crate::word::parse_word;

    fn ds(g: &GroupTable, n: usize) -> DistributionSet {
        distribution_set(g, n, &EnumOptions::default()).unwrap()
    }

    #[test]
    fn c6_at_two_is_c2() {
        let got = sylow_extract(&ds(&builtin_group("C6").unwrap(), 1), 2).unwrap();
        let want = ds(&builtin_group("C2").unwrap(), 1);
        assert!(compare_distsets(&got, &want, DEFAULT_NODE_BUDGET).unwrap().is_equal());
    }

    #[test]
    fn p_group_is_its_own_sylow() {
        let d = ds(&builtin_group("Q8").unwrap(), 2);
        let got = sylow_extract(&d, 2).unwrap();
        assert_eq!(got.distributions(), d.distributions());
    }

    #[test]
    fn errors() {
        let d = ds(&builtin_group("C6").unwrap(), 1);
        assert!(matches!(sylow_extract(&d, 5), Err(Error::PrimeNotDividing { .. })));
        assert!(matches!(sylow_extract(&d, 4), Err(Error::NotPrime(4))));
        let s3 = ds(&builtin_group("S3").unwrap(), 1);
        assert_eq!(sylow_extract(&s3, 3), Err(Error::NotNilpotentSet));
    }

    #[test]
    fn product_check_examples() {
        let opts = FiberOptions::default();
        let c6 = builtin_group("C6").unwrap();
        assert!(sylow_product_check(&c6, 1, &[parse_word("x^2", None).unwrap()], &opts).unwrap().holds());
        let c12 = builtin_group("C12").unwrap();
        let w = parse_word("[x,y]x", None).unwrap();
        let c = sylow_product_check(&c12, 2, &[w, parse_word("x", None).unwrap()], &opts).unwrap();
        assert!(c.holds(), "{c:?}");
        let s3 = builtin_group("S3").unwrap();
        assert_eq!(sylow_product_check(&s3, 1, &[], &opts), Err(Error::NotNilpotent));
    }
}
