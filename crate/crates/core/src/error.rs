use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("label (w={w}, r={r}) is outside the admissible set")]
    OutsideSet { w: usize, r: usize },

    #[error("matrix is singular (condition estimate {condition:e})")]
    Singular { condition: f64 },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("C-spectrum hits -N0 (distance {distance:e})")]
    SpectrumHitsNegativeIntegers { distance: f64 },

    #[error("series did not terminate by N={cap}")]
    NoTermination { cap: usize },

    #[error("series terminated at degree {found}, expected {expected}")]
    WrongDegree { expected: usize, found: usize },

    #[error("not divisible by (1-t): remainder {remainder:e}")]
    NotDivisible { remainder: f64 },

    #[error("degenerate eigenvalue collision: mu_{r} and mu_{other} differ by {gap:e}")]
    EigenvalueCollision { r: usize, other: usize, gap: f64 },

    #[error("residual too large: {residual:e} > {bound:e}")]
    ResidualTooLarge { residual: f64, bound: f64 },

    #[error("weight undefined for m<0")]
    NegativeM,

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("degenerate recursion coefficient: {0}")]
    DegenerateCoefficient(String),

    #[error("negative transition probability {value:e} at w={w}")]
    NegativeProbability { w: usize, value: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
