//! The group `F_n(G)` of all `n`-variable word maps on `G`, realized as
//! function tables `G^n -> G` under pointwise multiplication.

use hashbrown::{DefaultHashBuilder, HashTable};
use std::hash::BuildHasher;

use super::distset::DistributionSet;
use super::fiber::FiberDistribution;
use crate::error::{Error, Result};
use crate::group::{Elem, GroupTable};
use crate::word::{Letter, Symbol, Word};

pub const DEFAULT_MAP_CAP: usize = 1_000_000;
pub const MAX_TABLE_LEN: u64 = 1_000_000;
/// Total stored table entries (all elements together).
pub const DEFAULT_ENTRY_BUDGET: u64 = 200_000_000;

#[derive(Clone, Debug)]
pub struct EnumOptions {
    /// Maximum number of elements of `F_n(G)`.
    pub cap: usize,
    /// Maximum number of stored table entries, `elements * |G|^n`.
    pub entry_budget: u64,
}

impl Default for EnumOptions {
    fn default() -> Self {
        Self {
            cap: DEFAULT_MAP_CAP,
            entry_budget: DEFAULT_ENTRY_BUDGET,
        }
    }
}

impl EnumOptions {
    pub fn with_cap(cap: usize) -> Self {
        Self { cap, ..Default::default() }
    }
}

const NO_PARENT: u32 = u32::MAX;

pub struct WordMapGroup<'g> {
    group: &'g GroupTable,
    arity: usize,
    len: usize,
    data: Vec<Elem>,
    index: HashTable<u32>,
    hasher: DefaultHashBuilder,
    /// Breadth-first tree: parent element and the generator letter applied.
    parent: Vec<(u32, Letter)>,
    complete: bool,
    cap: usize,
}

impl<'g> WordMapGroup<'g> {
    /// Breadth-first closure from the constant-identity map, right-multiplying
    /// by `x_1, x_1^-1, ..., x_n, x_n^-1` in that order. If the cap is hit the
    /// result is returned marked incomplete.
    pub fn enumerate(g: &'g GroupTable, n: usize, opts: &EnumOptions) -> Result<Self> {
        let len = (g.order() as u64)
            .checked_pow(n as u32)
            .filter(|&l| l <= MAX_TABLE_LEN)
            .ok_or(Error::BudgetExceeded {
                required: (g.order() as u128).saturating_pow(n as u32),
                budget: MAX_TABLE_LEN,
            })? as usize;
        let cap = opts
            .cap
            .min((opts.entry_budget / len as u64) as usize)
            .min(NO_PARENT as usize);
        let mut wmg = WordMapGroup {
            group: g,
            arity: n,
            len,
            data: Vec::new(),
            index: HashTable::new(),
            hasher: DefaultHashBuilder::default(),
            parent: Vec::new(),
            complete: false,
            cap,
        };
        wmg.insert(vec![0; len], (NO_PARENT, Letter::var(0, 0)));

        let projections: Vec<Vec<Elem>> = (0..n).map(|i| wmg.projection(i)).collect();
        let mut gens: Vec<(Letter, Vec<Elem>)> = Vec::new();
        for (i, p) in projections.into_iter().enumerate() {
            let inv = p.iter().map(|&v| g.inv(v as usize) as Elem).collect();
            gens.push((Letter::var(i, 1), p));
            gens.push((Letter::var(i, -1), inv));
        }

        let mut head = 0;
        let mut buf = vec![0 as Elem; len];
        while head < wmg.size() {
            for (letter, gen) in &gens {
                let f = wmg.table(head);
                for t in 0..len {
                    buf[t] = g.mul(f[t] as usize, gen[t] as usize) as Elem;
                }
                if wmg.lookup(&buf).is_none() {
                    if wmg.size() >= cap {
                        return Ok(wmg);
                    }
                    wmg.insert(buf.clone(), (head as u32, *letter));
                }
            }
            head += 1;
        }
        wmg.complete = true;
        Ok(wmg)
    }

    fn insert(&mut self, table: Vec<Elem>, parent: (u32, Letter)) -> usize {
        let id = self.parent.len();
        let h = self.hasher.hash_one(&table[..]);
        self.data.extend_from_slice(&table);
        self.parent.push(parent);
        let (data, len, hasher) = (&self.data, self.len, &self.hasher);
        self.index.insert_unique(h, id as u32, |&k| {
            hasher.hash_one(&data[k as usize * len..(k as usize + 1) * len])
        });
        id
    }

    fn lookup(&self, table: &[Elem]) -> Option<usize> {
        let h = self.hasher.hash_one(table);
        let len = self.len;
        self.index
            .find(h, |&k| &self.data[k as usize * len..(k as usize + 1) * len] == table)
            .map(|&k| k as usize)
    }

    /// Table of the projection `x_{i+1}` in row-major tuple order.
    pub fn projection(&self, i: usize) -> Vec<Elem> {
        let n = self.group.order();
        let stride = n.pow((self.arity - 1 - i) as u32);
        (0..self.len).map(|t| ((t / stride) % n) as Elem).collect()
    }

    pub fn group(&self) -> &'g GroupTable {
        self.group
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// `|G|^n`
    pub fn table_len(&self) -> usize {
        self.len
    }

    /// Number of elements found.
    pub fn size(&self) -> usize {
        self.parent.len()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn table(&self, id: usize) -> &[Elem] {
        &self.data[id * self.len..(id + 1) * self.len]
    }

    pub fn index_of(&self, table: &[Elem]) -> Option<usize> {
        if table.len() != self.len {
            return None;
        }
        self.lookup(table)
    }

    pub fn contains(&self, table: &[Elem]) -> bool {
        self.index_of(table).is_some()
    }

    /// Indices of the projections `x_1..x_n`.
    pub fn generator_indices(&self) -> Vec<usize> {
        (0..self.arity)
            .map(|i| self.lookup(&self.projection(i)).expect("projections are stored"))
            .collect()
    }

    /// A shortest word in the generators representing element `id`.
    pub fn representative(&self, id: usize) -> Word {
        let mut letters = Vec::new();
        let mut cur = id;
        while self.parent[cur].0 != NO_PARENT {
            let (p, l) = self.parent[cur];
            letters.push(l);
            cur = p as usize;
        }
        letters.reverse();
        Word::new(self.arity, letters)
    }

    /// Function table of a parameter-free word, built by pointwise products
    /// of projection tables.
    pub fn function_of(&self, w: &Word) -> Result<Vec<Elem>> {
        if w.arity() > self.arity {
            return Err(Error::ArityMismatch { hint: self.arity, needed: w.arity() });
        }
        if w.has_constants() {
            return Err(Error::MissingParameter(0, 0));
        }
        let g = self.group;
        let mut acc = vec![0 as Elem; self.len];
        for l in w.letters() {
            let Symbol::Var(i) = l.symbol else { unreachable!() };
            let proj = self.projection(i);
            let power = g.power_map(l.exp);
            for (a, &x) in acc.iter_mut().zip(&proj) {
                *a = g.mul(*a as usize, power[x as usize] as usize) as Elem;
            }
        }
        Ok(acc)
    }

    pub fn product(&self, a: usize, b: usize) -> usize {
        let g = self.group;
        let buf: Vec<Elem> = self
            .table(a)
            .iter()
            .zip(self.table(b))
            .map(|(&x, &y)| g.mul(x as usize, y as usize) as Elem)
            .collect();
        self.lookup(&buf).expect("F_n(G) is closed")
    }

    pub fn inverse(&self, a: usize) -> usize {
        let g = self.group;
        let buf: Vec<Elem> = self.table(a).iter().map(|&x| g.inv(x as usize) as Elem).collect();
        self.lookup(&buf).expect("F_n(G) is closed")
    }

    pub fn distribution(&self, id: usize) -> FiberDistribution {
        FiberDistribution::from_table(self.group.order(), self.arity, self.table(id))
    }

    pub fn distribution_set(&self) -> DistributionSet {
        DistributionSet::from_counts(
            self.group.order(),
            self.arity,
            (0..self.size()).map(|id| self.distribution(id).into_counts()),
            self.complete.then_some(self.size()),
        )
    }

    fn require_complete(&self) -> Result<()> {
        if self.complete {
            Ok(())
        } else {
            Err(Error::CapExceeded { cap: self.cap })
        }
    }

    /// Subgroup generated by `seeds`, as a membership bitmap plus list.
    fn closure(&self, seeds: &[usize]) -> (Vec<bool>, Vec<usize>) {
        let mut inside = vec![false; self.size()];
        inside[0] = true;
        let mut members = vec![0];
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            for &s in seeds {
                let y = self.product(x, s);
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                }
            }
            head += 1;
        }
        (inside, members)
    }

    /// Derived subgroup: normal closure of the commutators of generator
    /// pairs. Returns sorted element indices.
    pub fn derived_subgroup(&self) -> Result<Vec<usize>> {
        self.require_complete()?;
        let gens = self.generator_indices();
        let mut seeds = Vec::new();
        for (k, &a) in gens.iter().enumerate() {
            for &b in &gens[k + 1..] {
                let c = self.product(
                    self.product(self.inverse(a), self.inverse(b)),
                    self.product(a, b),
                );
                seeds.push(c);
            }
        }
        let (mut inside, mut members) = self.closure(&seeds);
        loop {
            let mut added = false;
            for k in 0..seeds.len() {
                for &t in &gens {
                    let conj = self.product(self.product(self.inverse(t), seeds[k]), t);
                    if !inside[conj] {
                        seeds.push(conj);
                        (inside, members) = self.closure(&seeds);
                        added = true;
                    }
                }
            }
            if !added {
                break;
            }
        }
        members.sort_unstable();
        Ok(members)
    }
}

/// Fully enumerated `F_n(G)`; a capped enumeration is an error.
pub fn enumerate_wordmap_group<'g>(g: &'g GroupTable, n: usize, opts: &EnumOptions) -> Result<WordMapGroup<'g>> {
    let wmg = WordMapGroup::enumerate(g, n, opts)?;
    wmg.require_complete()?;
    Ok(wmg)
}

/// Deduplicated fiber-count vectors of every element of `F_n(G)`.
pub fn distribution_set(g: &GroupTable, n: usize, opts: &EnumOptions) -> Result<DistributionSet> {
    Ok(enumerate_wordmap_group(g, n, opts)?.distribution_set())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin_group;
    use crate::word::parse_word;

    #[test]
    fn small_orders() {
        let q8 = builtin_group("Q8").unwrap();
        assert_eq!(enumerate_wordmap_group(&q8, 2, &EnumOptions::default()).unwrap().size(), 32);
        let d8 = builtin_group("D8").unwrap();
        assert_eq!(enumerate_wordmap_group(&d8, 2, &EnumOptions::default()).unwrap().size(), 32);
        let c2 = builtin_group("C2").unwrap();
        assert_eq!(enumerate_wordmap_group(&c2, 1, &EnumOptions::default()).unwrap().size(), 2);
    }

    #[test]
    fn representatives_reproduce_tables() {
        let q8 = builtin_group("Q8").unwrap();
        let wmg = enumerate_wordmap_group(&q8, 2, &EnumOptions::default()).unwrap();
        for id in 0..wmg.size() {
            let w = wmg.representative(id);
            assert_eq!(wmg.function_of(&w).unwrap(), wmg.table(id));
        }
        assert_eq!(wmg.representative(0), Word::identity(2));
    }

    #[test]
    fn cap_marks_partial() {
        let s3 = builtin_group("S3").unwrap();
        let wmg = WordMapGroup::enumerate(&s3, 2, &EnumOptions::with_cap(5)).unwrap();
        assert!(!wmg.is_complete());
        assert_eq!(wmg.size(), 5);
        assert!(!wmg.distribution_set().is_complete());
        assert!(matches!(
            enumerate_wordmap_group(&s3, 2, &EnumOptions::with_cap(5)),
            Err(Error::CapExceeded { cap: 5 })
        ));
        assert!(matches!(wmg.derived_subgroup(), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn derived_subgroup_of_abelian_is_trivial() {
        let c6 = builtin_group("C6").unwrap();
        let wmg = enumerate_wordmap_group(&c6, 2, &EnumOptions::default()).unwrap();
        assert_eq!(wmg.derived_subgroup().unwrap(), vec![0]);
    }

    #[test]
    fn s3_derived_membership() {
        let s3 = builtin_group("S3").unwrap();
        let wmg = enumerate_wordmap_group(&s3, 2, &EnumOptions::default()).unwrap();
        let derived = wmg.derived_subgroup().unwrap();
        let v = wmg.function_of(&parse_word("[x, y x^2 y^2]", None).unwrap()).unwrap();
        let sq = wmg.function_of(&parse_word("x^2", Some(2)).unwrap()).unwrap();
        let v_id = wmg.index_of(&v).unwrap();
        let sq_id = wmg.index_of(&sq).unwrap();
        assert!(derived.binary_search(&v_id).is_ok());
        assert!(derived.binary_search(&sq_id).is_err());
    }

    #[test]
    fn table_too_large() {
        let s6 = builtin_group("S6").unwrap();
        assert!(matches!(
            WordMapGroup::enumerate(&s6, 3, &EnumOptions::default()),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
