use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid modulus {0}: must be at least 1")]
    InvalidModulus(i64),

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: i64, right: i64 },

    #[error("{0} and {1} are not coprime")]
    NotCoprime(i64, i64),

    #[error("determinant {det} is not a unit mod {modulus}")]
    NonUnitDeterminant { det: i64, modulus: i64 },

    #[error("matrix {0} is not in the required symplectic group")]
    NotSymplectic(String),

    #[error("N = {n} has the wrong shape: expected {expected}")]
    WrongShape { n: i64, expected: &'static str },

    #[error("N = {0} has the wrong parity for this construction")]
    WrongParity(i64),

    #[error("no splitting exists for N = {0}: Tp_N is not a semidirect product of Sp_N and Γ_N when 4 divides N")]
    NoSplitting(i64),

    #[error("size bound exceeded: {what} = {value} > {bound}")]
    SizeBound {
        what: &'static str,
        value: i64,
        bound: i64,
    },

    #[error("images do not define a center-preserving automorphism: {0}")]
    InvalidAutomorphism(String),

    #[error("no intertwiner within tolerance {tol:e} (residual {residual:e})")]
    InconsistentAutomorphism { tol: f64, residual: f64 },

    #[error("no linear lift found for N = {0}")]
    LiftNotFound(i64),

    #[error("construction check failed: {0}")]
    Construction(String),
}
