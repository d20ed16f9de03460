use thiserror::Error;

use crate::parse::ParseError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("polynomial is constant")]
    ConstantPolynomial,
    #[error("both polynomials are zero")]
    ZeroPolynomial,
    #[error("root finder did not converge for degree {degree} after {iterations} iterations (ill-conditioned input)")]
    NonConvergence { degree: usize, iterations: usize },
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("map is constant")]
    ConstantMap,
    #[error("Möbius transform is degenerate (ad - bc = 0)")]
    DegenerateMobius,
    #[error("fixed point {location} is not simple (multiplier {multiplier})")]
    NonSimpleFixedPoint {
        location: String,
        multiplier: String,
    },
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}
