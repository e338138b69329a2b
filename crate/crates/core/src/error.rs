//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("D must be a positive squarefree integer, got {0}")]
    InvalidDiscriminantBase(i64),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("prime {p} is not split in Q(sqrt(-{d}))")]
    NotSplit { p: u64, d: u64 },

    #[error("vector is isotropic under the hermitian form")]
    IsotropicVector,

    #[error("vector has negative hermitian norm; rank-one forms must be positive definite")]
    NegativeVector,

    #[error("degenerate lattice: trace Gram matrix is singular")]
    SingularGram,

    #[error("basis does not span a full-rank Z-module")]
    NotFullRank,

    #[error("Z-span is not stable under multiplication by omega")]
    NotOkStable,

    #[error("shift vector does not lie in the K-line of the rank-one sublattice")]
    ShiftNotInLine,

    #[error("shift vector is not in the trace-dual of the lattice")]
    ShiftNotInDual,

    #[error("eta product has non-integral leading exponent: sum d*e = {0}, not divisible by 24")]
    FractionalEtaExponent(i64),

    #[error("eta product has negative leading exponent {0}; not a power series")]
    NegativeEtaExponent(i64),

    #[error("eta product of odd total exponent has half-integral weight; unsupported")]
    HalfIntegralWeight,

    #[error("q-expansion has only {0} terms; at least {1} required")]
    InsufficientTruncation(usize, usize),

    #[error("q-expansions have mismatched (weight, level, character)")]
    TagMismatch,

    #[error("operation requires weight_k = 0, got {0}")]
    NonzeroWeightK(u32),

    #[error("parameter must be positive: {0}")]
    NonPositiveParameter(&'static str),

    #[error("arithmetic weight must be at least 2, got {0}")]
    WeightTooSmall(i64),

    #[error("weights {k} and {kprime} are not congruent mod (p-1)p^{m}")]
    NotCongruentWeights { k: u64, kprime: u64, m: u32 },

    #[error("element is not a unit mod p^prec")]
    NotAUnit,

    #[error("denominator is divisible by p; rational has no image mod p^prec")]
    DenominatorNotUnit,

    #[error("matrix power iteration failed to stabilize within {0} steps")]
    ProjectorNoConvergence(usize),

    #[error("level data requires r >= 1, got {0}")]
    LevelTooSmall(u32),

    #[error("2-adic square roots are not supported; use an odd split prime")]
    EvenPrimeSqrt,

    #[error("-{0} is not a square mod {1}; is the prime split?")]
    NoSquareRoot(u64, u64),

    #[error("modulus p^s = {0}^{1} does not fit in 64 bits")]
    ModulusTooLarge(u64, u32),

    #[error("class tower violates the pushforward compatibility at rung r = {0}")]
    IncompatibleTower(u32),

    #[error("tower level r = {r} out of range 1..={rmax}")]
    LevelOutOfRange { r: u32, rmax: u32 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("second pairing argument is not in the image of the declared nearly-ordinary idempotent")]
    NotNearlyOrdinary,

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("internal invariant violated: {0}")]
    Internal(&'static str),
}
