use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("root iteration did not converge (residual {residual:e} after {iterations} sweeps)")]
    NonConvergence { residual: f64, iterations: usize },
    #[error("ill-conditioned computation: {0}")]
    IllConditioned(String),
    #[error("polynomial is not divisible (remainder {remainder:e}, allowed {allowed:e})")]
    NotDivisible { remainder: f64, allowed: f64 },
    #[error("constant term of the characteristic polynomial vanishes")]
    DegenerateConstantTerm,
    #[error("last recurrence coefficient vanished at step {0}")]
    CoefficientVanished(usize),
    #[error("matrix at step {0} is singular")]
    SingularStep(usize),
    #[error("limit matrix has no unique simple eigenvalue of maximal modulus")]
    NoSpectralGap,
    #[error("characteristic polynomial is not maxmod-generic")]
    NotMaxmodGeneric,
    #[error("last symbol coefficient vanishes at this parameter")]
    DegenerateLeading,
    #[error("discriminant vanishes identically")]
    IdenticallyZero,
    #[error("denominator has a multiple pole near {0}")]
    MultiplePole(String),
    #[error("coefficients are not real")]
    NotRealCoefficients,
    #[error("point {0} lies outside the support")]
    OutsideSupport(f64),
    #[error("Q2 vanishes on the support")]
    Q2VanishesOnSupport,
    #[error("linear coefficient b of Q2 is zero")]
    DegenerateB,
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
