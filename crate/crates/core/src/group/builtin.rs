//! Named groups and the group-spec mini-language.
//!
//! ```text
//! C<n>        cyclic of order n
//! D<2n>       dihedral of ORDER 2n (D8 has 8 elements)
//! Q8          quaternion group
//! S<n>, A<n>  symmetric / alternating group, n <= 6
//! Heis<p>     extraspecial group of order p^3 and exponent p, p an odd prime
//! AxB         direct product, lexicographic element indexing
//! cayley:<path>            Cayley table file
//! perm:<cycles;cycles>     group generated by permutations in cycle notation
//! ```

use std::collections::HashMap;

use super::{Elem, GroupTable, ValidationOptions, MAX_ORDER};
use crate::error::{Error, Result};
use crate::num::is_prime;

pub const DEFAULT_SIZE_LIMIT: usize = 10_000;

#[derive(Clone, Debug)]
pub struct GroupSpecOptions {
    pub size_limit: usize,
    pub validation: ValidationOptions,
}

impl Default for GroupSpecOptions {
    fn default() -> Self {
        Self {
            size_limit: DEFAULT_SIZE_LIMIT,
            validation: ValidationOptions::default(),
        }
    }
}

pub fn builtin_group(spec: &str) -> Result<GroupTable> {
    GroupSpecOptions::default().build(spec)
}

impl GroupSpecOptions {
    pub fn build(&self, spec: &str) -> Result<GroupTable> {
        let spec = spec.trim();
        let limit = self.size_limit.min(MAX_ORDER);
        if let Some(path) = spec.strip_prefix("cayley:") {
            let g = GroupTable::read_cayley_file(path)?;
            return self.limited(g, limit);
        }
        if let Some(gens) = spec.strip_prefix("perm:") {
            return permutation_group(gens, limit, &self.validation);
        }
        let factors: Vec<&str> = spec.split('x').collect();
        if factors.iter().any(|f| f.is_empty()) {
            return Err(Error::UnknownSpec(spec.to_string()));
        }
        // Check the product order before materializing anything.
        let mut total: usize = 1;
        for f in &factors {
            total = total.saturating_mul(atom_order(f)?);
        }
        if total > limit {
            return Err(Error::SizeLimit { order: total, limit });
        }
        let mut acc = self.atom(factors[0])?;
        for f in &factors[1..] {
            acc = acc.direct_product(&self.atom(f)?)?;
        }
        Ok(acc)
    }

    fn limited(&self, g: GroupTable, limit: usize) -> Result<GroupTable> {
        if g.order() > limit {
            Err(Error::SizeLimit { order: g.order(), limit })
        } else {
            Ok(g)
        }
    }

    fn atom(&self, atom: &str) -> Result<GroupTable> {
        let unknown = || Error::UnknownSpec(atom.to_string());
        let num = |prefix: &str| -> Option<usize> { atom.strip_prefix(prefix)?.parse().ok() };
        let v = &self.validation;
        if atom == "Q8" {
            return quaternion(v);
        }
        if let Some(p) = num("Heis") {
            return heisenberg(p, v);
        }
        if let Some(n) = num("C") {
            return if n == 0 { Err(unknown()) } else { cyclic(n, v) };
        }
        if let Some(n) = num("D") {
            return if n < 2 || n % 2 == 1 { Err(unknown()) } else { dihedral(n / 2, v) };
        }
        if let Some(n) = num("S") {
            return if (1..=6).contains(&n) { symmetric(n, false, v) } else { Err(unknown()) };
        }
        if let Some(n) = num("A") {
            return if (1..=6).contains(&n) { symmetric(n, true, v) } else { Err(unknown()) };
        }
        Err(unknown())
    }
}

fn atom_order(atom: &str) -> Result<usize> {
    let num = |prefix: &str| -> Option<usize> { atom.strip_prefix(prefix)?.parse().ok() };
    let fact = |n: usize| (1..=n).product::<usize>();
    let order = if atom == "Q8" {
        Some(8)
    } else if let Some(p) = num("Heis") {
        p.checked_pow(3)
    } else if let Some(n) = num("C") {
        Some(n)
    } else if let Some(n) = num("D") {
        Some(n)
    } else if let Some(n) = num("S") {
        (n <= 6).then(|| fact(n))
    } else if let Some(n) = num("A") {
        (n <= 6).then(|| (fact(n) / 2).max(1))
    } else {
        None
    };
    order.ok_or_else(|| Error::UnknownSpec(atom.to_string()))
}

fn from_fn(
    n: usize,
    mul: impl Fn(usize, usize) -> usize,
    labels: Vec<String>,
    v: &ValidationOptions,
) -> Result<GroupTable> {
    let mut flat = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            flat.push(mul(a, b) as Elem);
        }
    }
    Ok(GroupTable::from_flat(n, flat, v)?.with_labels(labels))
}

fn cyclic(n: usize, v: &ValidationOptions) -> Result<GroupTable> {
    let labels = (0..n).map(|i| format!("a^{i}")).collect();
    from_fn(n, |a, b| (a + b) % n, labels, v)
}

/// Elements `r^i s^j` at index `j*n + i`; `s r s = r^-1`.
fn dihedral(n: usize, v: &ValidationOptions) -> Result<GroupTable> {
    let labels = (0..2 * n)
        .map(|x| match x / n {
            0 => format!("r^{}", x % n),
            _ => format!("r^{}s", x % n),
        })
        .collect();
    let mul = |a: usize, b: usize| {
        let (i1, j1) = (a % n, a / n);
        let (i2, j2) = (b % n, b / n);
        // r^i1 s^j1 r^i2 s^j2 = r^(i1 ± i2) s^(j1+j2)
        let i = if j1 == 0 { (i1 + i2) % n } else { (i1 + n - i2) % n };
        ((j1 + j2) % 2) * n + i
    };
    from_fn(2 * n, mul, labels, v)
}

/// Order: 1, -1, i, -i, j, -j, k, -k.
fn quaternion(v: &ValidationOptions) -> Result<GroupTable> {
    // unit u in {1,i,j,k} times sign
    const UNIT: [[(usize, bool); 4]; 4] = [
        [(0, false), (1, false), (2, false), (3, false)],
        [(1, false), (0, true), (3, false), (2, true)],
        [(2, false), (3, true), (0, true), (1, false)],
        [(3, false), (2, false), (1, true), (0, true)],
    ];
    let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let mul = |a: usize, b: usize| {
        let (ua, na) = (a / 2, a % 2 == 1);
        let (ub, nb) = (b / 2, b % 2 == 1);
        let (u, n) = UNIT[ua][ub];
        u * 2 + usize::from(na ^ nb ^ n)
    };
    from_fn(8, mul, labels, v)
}

/// Upper unitriangular 3x3 matrices over Z/p; `(a, b, c)` at index
/// `a*p^2 + b*p + c` for the matrix with `a, b` above the diagonal and `c`
/// in the corner.
fn heisenberg(p: usize, v: &ValidationOptions) -> Result<GroupTable> {
    if p == 2 || !is_prime(p as u64) {
        return Err(Error::UnknownSpec(format!("Heis{p} (needs an odd prime)")));
    }
    let n = p * p * p;
    if n > MAX_ORDER {
        return Err(Error::SizeLimit { order: n, limit: MAX_ORDER });
    }
    let split = |x: usize| (x / (p * p), (x / p) % p, x % p);
    let labels = (0..n)
        .map(|x| {
            let (a, b, c) = split(x);
            format!("[{a},{b},{c}]")
        })
        .collect();
    let mul = |x: usize, y: usize| {
        let (a1, b1, c1) = split(x);
        let (a2, b2, c2) = split(y);
        let a = (a1 + a2) % p;
        let b = (b1 + b2) % p;
        let c = (c1 + c2 + a1 * b2) % p;
        a * p * p + b * p + c
    };
    from_fn(n, mul, labels, v)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn is_even(p: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

/// Composition applies the left factor first: `(p*q)(i) = q(p(i))`.
fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    p.iter().map(|&i| q[i]).collect()
}

fn cycle_label(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cyc = vec![start + 1];
        seen[start] = true;
        let mut i = p[start];
        while i != start {
            seen[i] = true;
            cyc.push(i + 1);
            i = p[i];
        }
        let parts: Vec<String> = cyc.iter().map(|x| x.to_string()).collect();
        out.push_str(&format!("({})", parts.join(",")));
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

fn table_from_perms(perms: Vec<Vec<usize>>, v: &ValidationOptions) -> Result<GroupTable> {
    let index: HashMap<&[usize], usize> =
        perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let n = perms.len();
    let mut flat = Vec::with_capacity(n * n);
    for a in &perms {
        for b in &perms {
            let c = compose(a, b);
            let k = index
                .get(c.as_slice())
                .ok_or_else(|| Error::NotAGroup("permutation set not closed".into()))?;
            flat.push(*k as Elem);
        }
    }
    let labels = perms.iter().map(|p| cycle_label(p)).collect();
    Ok(GroupTable::from_flat(n, flat, v)?.with_labels(labels))
}

/// Lexicographic order of permutations puts the identity first.
fn symmetric(n: usize, alternating: bool, v: &ValidationOptions) -> Result<GroupTable> {
    let perms: Vec<Vec<usize>> = permutations(n)
        .into_iter()
        .filter(|p| !alternating || is_even(p))
        .collect();
    table_from_perms(perms, v)
}

/// Parses `(1,2,3)(4,5)` (commas or spaces inside cycles, 1-based points)
/// into a permutation image vector of the given degree, or the least degree
/// that fits when `degree` is `None`.
pub fn parse_cycles(text: &str, degree: Option<usize>) -> Result<Vec<usize>> {
    let bad = |msg: &str| Error::UnknownSpec(format!("perm `{text}`: {msg}"));
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body_end = rest.find(')').ok_or_else(|| bad("unclosed cycle"))?;
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| bad("expected `(`"))?;
        let body = &body[..body_end - 1];
        let pts = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().ok().filter(|&x| x >= 1).ok_or_else(|| bad("bad point")))
            .collect::<Result<Vec<_>>>()?;
        cycles.push(pts);
        rest = rest[body_end + 1..].trim_start();
    }
    let max = cycles.iter().flatten().copied().max().unwrap_or(0);
    let deg = degree.unwrap_or(max).max(max);
    let mut img: Vec<usize> = (0..deg).collect();
    let mut touched = vec![false; deg];
    for cyc in &cycles {
        for (k, &x) in cyc.iter().enumerate() {
            if std::mem::replace(&mut touched[x - 1], true) {
                return Err(bad("cycles are not disjoint"));
            }
            img[x - 1] = cyc[(k + 1) % cyc.len()] - 1;
        }
    }
    Ok(img)
}

fn permutation_group(gens_text: &str, limit: usize, v: &ValidationOptions) -> Result<GroupTable> {
    let raw: Vec<&str> = gens_text.split(';').map(str::trim).filter(|s| !s.is_empty()).collect();
    let degree = raw
        .iter()
        .map(|g| parse_cycles(g, None).map(|p| p.len()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .unwrap_or(0);
    let gens = raw
        .iter()
        .map(|g| parse_cycles(g, Some(degree)))
        .collect::<Result<Vec<_>>>()?;

    // Breadth-first closure from the identity.
    let identity: Vec<usize> = (0..degree).collect();
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::from([(identity.clone(), 0)]);
    let mut elems = vec![identity];
    let mut head = 0;
    while head < elems.len() {
        for g in &gens {
            let next = compose(&elems[head], g);
            if !seen.contains_key(&next) {
                if elems.len() == limit {
                    return Err(Error::SizeLimit { order: limit + 1, limit });
                }
                seen.insert(next.clone(), elems.len());
                elems.push(next);
            }
        }
        head += 1;
    }
    table_from_perms(elems, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_abelian(g: &GroupTable) -> bool {
        g.elements().all(|a| g.elements().all(|b| g.mul(a, b) == g.mul(b, a)))
    }

    #[test]
    fn q8_defining_properties() {
        let q = builtin_group("Q8").unwrap();
        assert_eq!(q.order(), 8);
        assert_eq!(q.exponent(), 4);
        assert!(!is_abelian(&q));
        // unique involution is -1 at index 1
        let invols: Vec<usize> = q.elements().filter(|&g| q.element_order(g) == 2).collect();
        assert_eq!(invols, vec![1]);
        // i*j = k
        assert_eq!(q.label(q.mul(2, 4)), "k");
    }

    #[test]
    fn c2xc3_is_cyclic_of_order_6() {
        let g = builtin_group("C2xC3").unwrap();
        assert_eq!(g.order(), 6);
        assert!(is_abelian(&g));
        assert_eq!(g.exponent(), 6);
    }

    #[test]
    fn heis3_defining_properties() {
        let h = builtin_group("Heis3").unwrap();
        assert_eq!(h.order(), 27);
        assert_eq!(h.exponent(), 3);
        assert!(!is_abelian(&h));
    }

    #[test]
    fn dihedral_is_named_by_order() {
        let d8 = builtin_group("D8").unwrap();
        assert_eq!(d8.order(), 8);
        assert_eq!(d8.exponent(), 4);
        assert!(!is_abelian(&d8));
        let d12 = builtin_group("D12").unwrap();
        assert_eq!(d12.order(), 12);
        assert_eq!(d12.exponent(), 6);
        assert!(builtin_group("D7").is_err());
    }

    #[test]
    fn symmetric_and_alternating() {
        let s3 = builtin_group("S3").unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.label(0), "()");
        assert_eq!(builtin_group("A4").unwrap().order(), 12);
        assert_eq!(builtin_group("S4").unwrap().exponent(), 12);
        assert_eq!(builtin_group("A5").unwrap().order(), 60);
        assert!(builtin_group("S7").is_err());
    }

    #[test]
    fn permutation_generators() {
        let g = builtin_group("perm:(1,2,3);(1,2)").unwrap();
        assert_eq!(g.order(), 6);
        let a4 = builtin_group("perm:(1 2 3);(1,2)(3,4)").unwrap();
        assert_eq!(a4.order(), 12);
        assert!(builtin_group("perm:(1,2").is_err());
        assert!(builtin_group("perm:(1,2)(2,3)").is_err());
    }

    #[test]
    fn size_limit_and_unknown() {
        let opts = GroupSpecOptions { size_limit: 100, ..Default::default() };
        assert!(matches!(opts.build("S5xC2"), Err(Error::SizeLimit { order: 240, .. })));
        assert!(matches!(builtin_group("Z5"), Err(Error::UnknownSpec(_))));
        assert!(matches!(builtin_group("C2x"), Err(Error::UnknownSpec(_))));
        assert!(builtin_group("Heis2").is_err());
        assert!(builtin_group("Heis9").is_err());
    }

    #[test]
    fn product_indexing_is_lexicographic() {
        let g = builtin_group("C2xC3").unwrap();
        // (1,0)*(0,1) = (1,1) -> index 1*3+1
        assert_eq!(g.mul(3, 1), 4);
    }
}
