use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("unknown group spec `{0}`")]
    UnknownSpec(String),

    #[error("group of order {order} exceeds the size limit {limit}")]
    SizeLimit { order: usize, limit: usize },

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("arity hint {hint} is smaller than the largest variable index {needed}")]
    ArityMismatch { hint: usize, needed: usize },

    #[error("word references parameter g{0} but only {1} parameters were supplied")]
    MissingParameter(usize, usize),

    #[error("assignment has {got} entries, word map needs {expected}")]
    BadAssignment { expected: usize, got: usize },

    #[error("element index {0} out of range")]
    ElementOutOfRange(usize),

    #[error("computation needs {required} tuple evaluations, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },

    #[error("fiber counts overflow 64-bit integers")]
    CountOverflow,

    #[error("word map group enumeration exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },

    #[error("group is not nilpotent")]
    NotNilpotent,

    #[error("prime {prime} does not divide the group order {order}")]
    PrimeNotDividing { prime: u64, order: usize },

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("distribution set is incomplete (capped enumeration)")]
    IncompleteSet,

    #[error("expected a distribution set with {expected}, got arity {got}")]
    WrongArity { expected: &'static str, got: usize },

    #[error("no abelian group of order {0} matches the deficiency set")]
    NoMatch(usize),

    #[error("several abelian groups of order {0} match the deficiency set")]
    AmbiguousMatch(usize),

    #[error("word map is not surjective")]
    NotSurjective,

    #[error("word is not a commutator word (exponent sums {0:?})")]
    NotCommutatorWord(Vec<i64>),

    #[error("distribution set does not come from a nilpotent group")]
    NotNilpotentSet,

    #[error("no uniform vector supported on a Sylow {0}-subgroup")]
    NoSylowVector(u64),

    #[error("distribution sets are not comparable: {0}")]
    Incomparable(String),

    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),

    #[error("internal verification failure: {0}")]
    Verification(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// True for errors caused by a resource cap rather than bad input.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::BudgetExceeded { .. } | Error::CapExceeded { .. } | Error::SizeLimit { .. } | Error::CountOverflow
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
