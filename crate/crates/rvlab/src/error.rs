//! Error type shared by all modules.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, RvError>;

/// Everything that can go wrong across the laboratory.
#[derive(Debug, thiserror::Error)]
pub enum RvError {
    /// A scaling action was applied to an element kind it does not act on.
    #[error("incompatible scaling variant: {0}")]
    IncompatibleVariant(String),
    /// Scale factors must lie in (0, ∞).
    #[error("scale factor must be positive and finite, got {0}")]
    NonpositiveScale(f64),
    /// A modulus was evaluated on an element kind it is not defined for.
    #[error("unsupported modulus/element combination: {0}")]
    UnsupportedKind(String),
    /// Structurally invalid arguments (dimensions, ranges, parameters).
    #[error("bad parameters: {0}")]
    BadParameters(String),
    /// The semicone membership oracle contradicted monotonicity along orbits.
    #[error("semicone membership oracle is not monotone along orbits: {0}")]
    NonMonotoneOracle(String),
    /// Radial intervals must satisfy 0 < s < t.
    #[error("invalid radial interval ({0}, {1}]")]
    InvalidInterval(f64, f64),
    /// Every atom mapped to zero target modulus: the pushforward vanishes.
    #[error("pushforward produced the zero measure")]
    TrivialPushforward,
    /// The map does not intertwine the source and target scaling actions.
    #[error("map is not a morphism of scaled spaces: {0}")]
    NonMorphism(String),
    /// The new functional vanished on every atom.
    #[error("change of modulus produced the zero measure")]
    TrivialResult,
    /// Marginal parts disagree in dimension or count.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    /// Polar coordinates need a strictly positive radius.
    #[error("zero modulus: cannot form polar coordinates")]
    ZeroModulus,
    /// Polar coordinates need a finite radius.
    #[error("non-finite modulus: cannot form polar coordinates")]
    InfiniteModulus,
    /// Too few observations for the requested estimate.
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    /// Too few threshold exceedances for a stable spectral estimate.
    #[error("insufficient exceedances: got {got}, need at least {need}")]
    InsufficientExceedances { got: usize, need: usize },
    /// A moment diagnostic exceeded its guardrail (warning-grade).
    #[error("moment diagnostic failed: {0}")]
    MomentDiagnosticFailed(String),
    /// The norming-constant rule cannot be evaluated for this generator.
    #[error("bad norming rule: {0}")]
    BadNormingRule(String),
    /// A set functional required an interior or area the polytope lacks.
    #[error("degenerate polytope: {0}")]
    DegeneratePolytope(String),
    /// Configuration file errors (parse or validation).
    #[error("config error: {0}")]
    Config(String),
    /// Underlying I/O failure.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl RvError {
    /// True for failures of a statistical precondition (CLI exit code 3)
    /// rather than structural misuse (exit code 2).
    pub fn is_statistical(&self) -> bool {
        matches!(
            self,
            RvError::InsufficientData(_)
                | RvError::InsufficientExceedances { .. }
                | RvError::MomentDiagnosticFailed(_)
        )
    }
}
