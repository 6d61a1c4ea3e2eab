//! Shared error type.

use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    #[error("zero constant")]
    ZeroConstant,
    #[error("zero polynomial in factor list")]
    ZeroPolynomial,
    #[error("constant polynomial in factor list")]
    ConstantFactor,
    #[error("fractional exponent where an honest rational function is required")]
    FractionalExponent,
    #[error("element is identically 1")]
    IdenticallyOne,
    #[error("evaluation at a zero or pole")]
    Pole,
    #[error("reducible polynomial for an algebraic place: {0}")]
    ReduciblePlace(String),
    #[error("infinity has no residue-field embedding via a root; use-infinity-chart")]
    InfinityEmbedding,
    #[error("Li_1 has a pole at z = 1")]
    LiPole,
    #[error("{0} is singular here")]
    Singular(String),
    #[error("mismatched twists: {0} vs {1}")]
    TwistMismatch(u32, u32),
    #[error("quadrature did not converge: {0}")]
    QuadratureFailure(String),
    #[error("degree equals weight; nothing to differentiate")]
    TopDegree,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid manifest: {0}")]
    Manifest(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
