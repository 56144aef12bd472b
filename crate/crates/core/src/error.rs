use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("sign undecided within the precision cap of {cap} bits")]
    PrecisionCapExceeded { cap: u32 },
    #[error("lattice is not contained in the ambient lattice")]
    NotASublattice,
    #[error("requested {requested} minima but the lattice has rank {rank}")]
    RankExceeded { requested: usize, rank: usize },
    #[error("lattice has rank zero")]
    ZeroRank,
    #[error("lattice does not span the affine directions of the polytope")]
    LatticeSpanMismatch,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("bad index vector: {0}")]
    BadIndexVector(String),
    #[error("character not representable with radical scalars: {0}")]
    CharacterNotRepresentable(String),
    #[error("lattice is not saturated")]
    NotSaturated,
    #[error("polytopes differ: {0}")]
    PolytopeMismatch(String),
    #[error("inhomogeneous support: {0}")]
    InhomogeneousSupport(String),
    #[error("dominant-vertex hypothesis fails at symbol {symbol}: {witness}")]
    HypothesisNotSatisfied { symbol: String, witness: String },
    #[error("points are affinely dependent")]
    DegenerateSimplex,
    #[error("polytope volume is irrational (squared volume {squared})")]
    IrrationalVolume { squared: String },
    #[error("infeasible parameters: {0}")]
    InfeasibleParameters(String),
    #[error("no prime in range [{lo}, {hi}]")]
    NoPrimeInRange { lo: String, hi: String },
    #[error("successive minima not proved for every index")]
    MinimaNotProved,
    #[error("identity violated: {0}")]
    AssertionViolated(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Stable machine-readable reason tag.
    pub fn reason(&self) -> &'static str {
        match self {
            Error::PrecisionCapExceeded { .. } => "precision-cap-exceeded",
            Error::NotASublattice => "not-a-sublattice",
            Error::RankExceeded { .. } => "rank-exceeded",
            Error::ZeroRank => "zero-rank",
            Error::LatticeSpanMismatch => "lattice-span-mismatch",
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::BadIndexVector(_) => "bad-index-vector",
            Error::CharacterNotRepresentable(_) => "character-not-representable",
            Error::NotSaturated => "not-saturated",
            Error::PolytopeMismatch(_) => "polytope-mismatch",
            Error::InhomogeneousSupport(_) => "inhomogeneous-support",
            Error::HypothesisNotSatisfied { .. } => "hypothesis-not-satisfied",
            Error::DegenerateSimplex => "degenerate-simplex",
            Error::IrrationalVolume { .. } => "irrational-volume",
            Error::InfeasibleParameters(_) => "infeasible-parameters",
            Error::NoPrimeInRange { .. } => "no-prime-in-range",
            Error::MinimaNotProved => "minima-not-proved",
            Error::AssertionViolated(_) => "assertion-violated",
            Error::Parse(_) => "parse-error",
            Error::InvalidInput(_) => "input-invalid",
        }
    }
}
