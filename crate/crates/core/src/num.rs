//! Small integer helpers.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization as ascending `(prime, multiplicity)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut k = 0;
            while n % d == 0 {
                n /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// Splits `n = p^k * m` with `gcd(p, m) = 1`, returning `(k, m)`.
pub fn split_prime_part(n: u64, p: u64) -> (u32, u64) {
    let mut m = n;
    let mut k = 0;
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (k, m)
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    out.sort_unstable();
    out
}

/// Extended Euclid: returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b)`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.abs(), a.signum(), 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// Bézout coefficients `(r, s)` with `r*a + s*b = 1` for coprime `a, b >= 1`,
/// choosing the `s` of least absolute value (ties go to the positive one).
pub fn bezout_min_s(a: u64, b: u64) -> Option<(i64, i64)> {
    if gcd(a, b) != 1 {
        return None;
    }
    let (a, b) = (a as i64, b as i64);
    if a == 1 {
        return Some((1, 0));
    }
    // s*b ≡ 1 (mod a)
    let (_, _, y) = ext_gcd(a, b);
    let s0 = y.rem_euclid(a);
    let s = if s0 <= a - s0 { s0 } else { s0 - a };
    let r = (1 - s * b) / a;
    debug_assert_eq!(r * a + s * b, 1);
    Some((r, s))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bezout_matches_small_cases() {
        // 3r + 2s = 1 with |s| minimal: s = -1, r = 1
        assert_eq!(bezout_min_s(3, 2), Some((1, -1)));
        assert_eq!(bezout_min_s(2, 3), Some((-1, 1)));
        assert_eq!(bezout_min_s(4, 3), Some((1, -1)));
        assert_eq!(bezout_min_s(4, 2), None);
        for a in 1..40u64 {
            for b in 1..40u64 {
                if let Some((r, s)) = bezout_min_s(a, b) {
                    assert_eq!(r * a as i64 + s * b as i64, 1);
                    assert!(2 * s.unsigned_abs() <= a);
                }
            }
        }
    }

    #[test]
    fn factorization() {
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(split_prime_part(24, 2), (3, 3));
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }
}
