//! Recursive-descent parser for the word grammar:
//!
//! ```text
//! word  := term+
//! term  := atom ('^' int)?
//! atom  := var | const | '1' | '(' word ')' | '[' word ',' word ']'
//! var   := 'x' digits | 'x' | 'y' | 'z'
//! const := 'g' digits
//! int   := '-'? digits
//! ```
//!
//! Juxtaposition is product; whitespace is optional between terms.

use super::{Letter, Word};
use crate::error::{Error, Result};

const MAX_EXPONENT: i64 = 1_000_000;

/// Parses and freely reduces a word. The arity is the largest variable index
/// seen (before reduction), or `arity_hint` if that is larger.
pub fn parse_word(text: &str, arity_hint: Option<usize>) -> Result<Word> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, max_var: 0 };
    p.skip_ws();
    let w = p.word()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected character"));
    }
    let needed = p.max_var;
    match arity_hint {
        Some(hint) if hint < needed => Err(Error::ArityMismatch { hint, needed }),
        Some(hint) => w.with_arity(hint),
        None => w.with_arity(needed),
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    max_var: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        let found = match self.src.get(self.pos) {
            Some(&c) => format!("`{}`", c as char),
            None => "end of input".to_string(),
        };
        Error::Syntax {
            pos: self.pos,
            msg: format!("{msg} (found {found})"),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(b'x' | b'y' | b'z' | b'g' | b'1' | b'(' | b'['))
    }

    fn word(&mut self) -> Result<Word> {
        if !self.starts_atom() {
            return Err(self.error("expected a term"));
        }
        let mut acc = Word::identity(0);
        while self.starts_atom() {
            let t = self.term()?;
            acc = acc.mul(&t);
            self.skip_ws();
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Word> {
        let atom = self.atom()?;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.int()?;
            Ok(atom.pow(e))
        } else {
            Ok(atom)
        }
    }

    fn int(&mut self) -> Result<i64> {
        let start = self.pos;
        let neg = self.peek() == Some(b'-');
        if neg {
            self.pos += 1;
        }
        let digits = self.digits().ok_or_else(|| self.error("expected an integer exponent"))?;
        let v: i64 = digits
            .parse()
            .ok()
            .filter(|v| *v <= MAX_EXPONENT)
            .ok_or(Error::Syntax {
                pos: start,
                msg: format!("exponent exceeds {MAX_EXPONENT} in absolute value"),
            })?;
        Ok(if neg { -v } else { v })
    }

    fn var_index(&mut self, start: usize) -> Result<usize> {
        let i: usize = match self.digits() {
            None => 1,
            Some(d) => d.parse().ok().filter(|&i| i >= 1 && i <= 1_000).ok_or(Error::Syntax {
                pos: start,
                msg: "variable index must be between 1 and 1000".into(),
            })?,
        };
        Ok(i)
    }

    fn atom(&mut self) -> Result<Word> {
        let start = self.pos;
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                let i = self.var_index(start)?;
                self.max_var = self.max_var.max(i);
                Ok(Word::var(i - 1, i))
            }
            Some(c @ (b'y' | b'z')) => {
                self.pos += 1;
                let i = if c == b'y' { 2 } else { 3 };
                self.max_var = self.max_var.max(i);
                Ok(Word::var(i - 1, i))
            }
            Some(b'g') => {
                self.pos += 1;
                let slot: usize = self
                    .digits()
                    .and_then(|d| d.parse().ok())
                    .ok_or_else(|| self.error("expected parameter index after `g`"))?;
                Ok(Word::new(0, [Letter::constant(slot, 1)]))
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(Word::identity(0))
            }
            Some(b'(') => {
                self.pos += 1;
                self.skip_ws();
                let w = self.word()?;
                self.expect(b')')?;
                Ok(w)
            }
            Some(b'[') => {
                self.pos += 1;
                self.skip_ws();
                let a = self.word()?;
                self.expect(b',')?;
                self.skip_ws();
                let b = self.word()?;
                self.expect(b']')?;
                Ok(Word::commutator(&a, &b))
            }
            _ => Err(self.error("expected a variable, constant, `(` or `[`")),
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Symbol;

    fn letters(w: &Word) -> Vec<(usize, i64)> {
        w.letters()
            .iter()
            .map(|l| match l.symbol {
                Symbol::Var(i) => (i + 1, l.exp),
                Symbol::Const(_) => unreachable!(),
            })
            .collect()
    }

    #[test]
    fn free_reduction_to_empty() {
        let w = parse_word("x1 x1^-1", None).unwrap();
        assert!(w.is_empty());
        assert_eq!(w.arity(), 1);
    }

    #[test]
    fn amit_vishne_bracket_expands() {
        // [x, y x^2 y^2] = x^-1 (y x^2 y^2)^-1 x (y x^2 y^2)
        //               = x^-1 y^-2 x^-2 y^-1 x y x^2 y^2
        let w = parse_word("[x, y x^2 y^2]", None).unwrap();
        assert_eq!(w.arity(), 2);
        assert_eq!(
            letters(&w),
            vec![(1, -1), (2, -2), (1, -2), (2, -1), (1, 1), (2, 1), (1, 2), (2, 2)]
        );
        assert!(w.is_commutator_word());
        // juxtaposition without whitespace
        assert_eq!(parse_word("[x,yx^2y^2]", None).unwrap(), w);
    }

    #[test]
    fn witness_word_profile() {
        let w = parse_word("x1^-2 x2^-2 (x1 x2)^3", None).unwrap();
        assert_eq!(w.arity(), 2);
        assert_eq!(w.exponent_profile().0, vec![1, 1]);
        assert_eq!(w.length(), 10);
    }

    #[test]
    fn aliases_and_hints() {
        let w = parse_word("x y z", None).unwrap();
        assert_eq!(letters(&w), vec![(1, 1), (2, 1), (3, 1)]);
        assert_eq!(parse_word("x2", Some(4)).unwrap().arity(), 4);
        assert_eq!(
            parse_word("x3", Some(2)),
            Err(Error::ArityMismatch { hint: 2, needed: 3 })
        );
        assert_eq!(parse_word("x12", None).unwrap().arity(), 12);
    }

    #[test]
    fn constants() {
        let w = parse_word("x1 g0 [x1, x2]", None).unwrap();
        assert_eq!(w.param_count(), 1);
        assert_eq!(w.arity(), 2);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        for (src, pos) in [("x^", 2), ("[x, y", 5), ("x + y", 2), ("", 0), ("(x", 2), ("x^99999999", 2)] {
            match parse_word(src, None) {
                Err(Error::Syntax { pos: p, .. }) => assert_eq!(p, pos, "{src}"),
                other => panic!("{src}: {other:?}"),
            }
        }
    }

    #[test]
    fn display_round_trips() {
        for src in ["[x, y x^2 y^2]", "x1^-2 x2^-2 (x1 x2)^3", "g0 x3^7 g1^-1", "1"] {
            let w = parse_word(src, None).unwrap();
            let back = parse_word(&w.to_string(), Some(w.arity())).unwrap();
            assert_eq!(back, w, "{src}");
        }
    }
}
