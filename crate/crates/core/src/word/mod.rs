//! Free-group words, optionally carrying group-element parameters.
//!
//! A [`Word`] is kept freely reduced at all times. Variables are 0-based
//! internally and print as `x1, x2, ...`; constants `g0, g1, ...` are slots
//! in a parameter tuple bound at evaluation time.

mod eval;
mod parse;

pub use eval::CompiledWord;
pub use parse::parse_word;

use std::fmt;

use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::num::gcd;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    /// 0-based variable index.
    Var(usize),
    /// Parameter slot.
    Const(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub symbol: Symbol,
    pub exp: i64,
}

impl Letter {
    pub fn var(i: usize, exp: i64) -> Self {
        Letter { symbol: Symbol::Var(i), exp }
    }

    pub fn constant(slot: usize, exp: i64) -> Self {
        Letter { symbol: Symbol::Const(slot), exp }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    arity: usize,
    letters: Vec<Letter>,
}

/// Per-variable exponent sums.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExponentProfile(pub Vec<i64>);

impl ExponentProfile {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// gcd of `modulus` and the absolute exponent sums.
    pub fn gcd_with(&self, modulus: u64) -> u64 {
        self.0.iter().fold(modulus, |acc, &e| gcd(acc, e.unsigned_abs()))
    }
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if l.exp == 0 {
        return;
    }
    match out.last_mut() {
        Some(top) if top.symbol == l.symbol => {
            top.exp += l.exp;
            if top.exp == 0 {
                out.pop();
            }
        }
        _ => out.push(l),
    }
}

impl Word {
    /// Builds and freely reduces a word. The arity is raised to cover every
    /// variable that occurs.
    pub fn new(arity: usize, letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out = Vec::new();
        let mut arity = arity;
        for l in letters {
            if let Symbol::Var(i) = l.symbol {
                arity = arity.max(i + 1);
            }
            push_reduced(&mut out, l);
        }
        Word { arity, letters: out }
    }

    pub fn identity(arity: usize) -> Self {
        Word { arity, letters: Vec::new() }
    }

    /// The projection `x_{i+1}` in `arity` variables.
    pub fn var(i: usize, arity: usize) -> Self {
        Word::new(arity, [Letter::var(i, 1)])
    }

    pub fn constant(slot: usize) -> Self {
        Word::new(0, [Letter::constant(slot, 1)])
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Sets the arity; fails if a variable beyond it occurs.
    pub fn with_arity(mut self, n: usize) -> Result<Self> {
        let needed = self.max_var().map_or(0, |i| i + 1);
        if n < needed {
            return Err(Error::ArityMismatch { hint: n, needed });
        }
        self.arity = n;
        Ok(self)
    }

    fn max_var(&self) -> Option<usize> {
        self.letters
            .iter()
            .filter_map(|l| match l.symbol {
                Symbol::Var(i) => Some(i),
                Symbol::Const(_) => None,
            })
            .max()
    }

    /// Number of parameter slots referenced (highest slot + 1).
    pub fn param_count(&self) -> usize {
        self.letters
            .iter()
            .filter_map(|l| match l.symbol {
                Symbol::Const(s) => Some(s + 1),
                Symbol::Var(_) => None,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn has_constants(&self) -> bool {
        self.param_count() > 0
    }

    /// Sorted distinct variables that occur.
    pub fn variables_used(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .letters
            .iter()
            .filter_map(|l| match l.symbol {
                Symbol::Var(i) => Some(i),
                Symbol::Const(_) => None,
            })
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Word length: total absolute exponent over variable letters.
    pub fn length(&self) -> u64 {
        self.letters
            .iter()
            .filter(|l| matches!(l.symbol, Symbol::Var(_)))
            .map(|l| l.exp.unsigned_abs())
            .sum()
    }

    pub fn mul(&self, other: &Word) -> Word {
        Word::new(
            self.arity.max(other.arity),
            self.letters.iter().chain(&other.letters).copied(),
        )
    }

    pub fn inverse(&self) -> Word {
        Word {
            arity: self.arity,
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter { symbol: l.symbol, exp: -l.exp })
                .collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity(self.arity);
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `[a, b] = a^-1 b^-1 a b`
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.inverse().mul(&b.inverse()).mul(a).mul(b)
    }

    pub fn exponent_profile(&self) -> ExponentProfile {
        let mut sums = vec![0i64; self.arity];
        for l in &self.letters {
            if let Symbol::Var(i) = l.symbol {
                sums[i] += l.exp;
            }
        }
        ExponentProfile(sums)
    }

    /// Membership in the derived subgroup of the free group: every exponent
    /// sum vanishes.
    pub fn is_commutator_word(&self) -> bool {
        self.exponent_profile().is_zero()
    }

    /// gcd of the absolute exponent sums together with `exp(G)`.
    pub fn gcd_with_exponent(&self, g: &GroupTable) -> u64 {
        self.exponent_profile().gcd_with(g.exponent())
    }

    /// Replaces every variable `x_i` by `x_i^k`; constants are untouched.
    pub fn substitute_power(&self, k: i64) -> Word {
        Word::new(
            self.arity,
            self.letters.iter().map(|l| match l.symbol {
                Symbol::Var(_) => Letter { symbol: l.symbol, exp: l.exp * k },
                Symbol::Const(_) => *l,
            }),
        )
    }

    pub fn compile<'g>(&self, g: &'g GroupTable, params: &[usize]) -> Result<CompiledWord<'g>> {
        CompiledWord::new(self, g, params)
    }

    /// Value of the word map at one assignment.
    pub fn evaluate(&self, g: &GroupTable, assignment: &[usize], params: &[usize]) -> Result<usize> {
        if assignment.len() != self.arity {
            return Err(Error::BadAssignment {
                expected: self.arity,
                got: assignment.len(),
            });
        }
        if let Some(&bad) = assignment.iter().find(|&&a| a >= g.order()) {
            return Err(Error::ElementOutOfRange(bad));
        }
        if self.param_count() > params.len() {
            return Err(Error::MissingParameter(self.param_count() - 1, params.len()));
        }
        let mut acc = g.identity();
        for l in &self.letters {
            let base = match l.symbol {
                Symbol::Var(i) => assignment[i],
                Symbol::Const(s) => params[s],
            };
            acc = g.mul(acc, g.pow(base, l.exp));
        }
        Ok(acc)
    }

    /// True iff the word map is constantly the identity on `G^arity`.
    /// Words with parameters are rejected.
    pub fn is_law(&self, g: &GroupTable) -> Result<bool> {
        if self.has_constants() {
            return Err(Error::MissingParameter(0, 0));
        }
        let compiled = self.compile(g, &[])?;
        let vars = self.variables_used();
        let mut tuple = vec![0usize; self.arity];
        let mut odometer = vec![0usize; vars.len()];
        loop {
            for (k, &v) in vars.iter().enumerate() {
                tuple[v] = odometer[k];
            }
            if compiled.eval(&tuple) != 0 {
                return Ok(false);
            }
            if !advance(&mut odometer, g.order()) {
                return Ok(true);
            }
        }
    }
}

/// Row-major increment; returns false after the last tuple.
pub(crate) fn advance(odometer: &mut [usize], base: usize) -> bool {
    for d in odometer.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            match l.symbol {
                Symbol::Var(i) => write!(f, "x{}", i + 1)?,
                Symbol::Const(s) => write!(f, "g{s}")?,
            }
            if l.exp != 1 {
                write!(f, "^{}", l.exp)?;
            }
        }
        Ok(())
    }
}
