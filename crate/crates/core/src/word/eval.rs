use super::{Symbol, Word};
use crate::error::{Error, Result};
use crate::group::{Elem, GroupTable};

enum Step {
    /// Multiply by `power[assignment[var]]`.
    Var { var: usize, power: Vec<Elem> },
    /// Multiply by a fixed element (a folded run of constant letters).
    Fixed(usize),
}

/// A word bound to one group and parameter tuple, with each letter turned
/// into a lookup table so evaluation is a chain of table reads.
pub struct CompiledWord<'g> {
    order: usize,
    mul: &'g [Elem],
    steps: Vec<Step>,
}

impl<'g> CompiledWord<'g> {
    pub fn new(w: &Word, g: &'g GroupTable, params: &[usize]) -> Result<Self> {
        if w.param_count() > params.len() {
            return Err(Error::MissingParameter(w.param_count() - 1, params.len()));
        }
        if let Some(&bad) = params.iter().find(|&&p| p >= g.order()) {
            return Err(Error::ElementOutOfRange(bad));
        }
        let mut steps: Vec<Step> = Vec::new();
        for l in w.letters() {
            match l.symbol {
                Symbol::Var(var) => steps.push(Step::Var { var, power: g.power_map(l.exp) }),
                Symbol::Const(s) => {
                    let v = g.pow(params[s], l.exp);
                    match steps.last_mut() {
                        Some(Step::Fixed(prev)) => *prev = g.mul(*prev, v),
                        _ => steps.push(Step::Fixed(v)),
                    }
                }
            }
        }
        Ok(Self {
            order: g.order(),
            mul: g.mul_table(),
            steps,
        })
    }

    /// Evaluates at a full assignment (indexed by variable). No bounds
    /// checking beyond slice indexing.
    #[inline]
    pub fn eval(&self, assignment: &[usize]) -> usize {
        let n = self.order;
        let mut acc = 0usize;
        for step in &self.steps {
            let v = match step {
                Step::Var { var, power } => power[assignment[*var]] as usize,
                Step::Fixed(v) => *v,
            };
            acc = self.mul[acc * n + v] as usize;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use crate::group::builtin_group;
    use crate::word::parse_word;

    #[test]
    fn compiled_matches_direct_evaluation() {
        let g = builtin_group("S4").unwrap();
        let w = parse_word("g0 x1^-2 g1 g0^2 [x2, x1 x3] x3^5", None).unwrap();
        let params = [5, 17];
        let c = w.compile(&g, &params).unwrap();
        for a in (0..24).step_by(5) {
            for b in (0..24).step_by(7) {
                for d in (0..24).step_by(3) {
                    let t = [a, b, d];
                    assert_eq!(c.eval(&t), w.evaluate(&g, &t, &params).unwrap());
                }
            }
        }
    }
}
