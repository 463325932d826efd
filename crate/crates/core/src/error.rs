use thiserror::Error;

use crate::expr::ExprError;
use crate::space::CausalClass;

/// Errors raised by the geometric operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite component in input vector")]
    NonFinite,
    #[error("vector is not timelike")]
    NotTimelike,
    #[error("timelike vectors lie in different timelike cones")]
    DifferentCones,
    #[error("motion scaling q must be positive, got {0}")]
    NonPositiveScaling(f64),

    #[error(transparent)]
    Expr(#[from] ExprError),

    #[error("curve is not regular at s = {s}: first derivative vanishes")]
    Irregular { s: f64 },
    #[error(
        "mixed causal character: {first_class} at s = {first_s}, {second_class} at s = {second_s}"
    )]
    MixedCausality {
        first_s: f64,
        first_class: CausalClass,
        second_s: f64,
        second_class: CausalClass,
    },
    #[error("curve is not parameterized by arc length at s = {s} (<a',a'> = {speed2})")]
    NotArcLength { s: f64, speed2: f64 },
    #[error("curve is not admissible at s = {s}: isotropic osculating plane")]
    NotAdmissible { s: f64 },
    #[error("curvature vanishes at s = {s}")]
    ZeroCurvature { s: f64 },
    #[error("no Frenet system for {0} curves")]
    UnsupportedClass(CausalClass),
    #[error("curve is not lightlike (found {0})")]
    NotLightlike(CausalClass),
    #[error("lightlike curve lies in no plane x + y = c or x - y = c (residuals {plus}, {minus})")]
    NoSuchPlane { plus: f64, minus: f64 },

    #[error("degenerate metric at ({u1}, {u2}): top-view Jacobian {jacobian}")]
    DegenerateMetric { u1: f64, u2: f64, jacobian: f64 },
    #[error("graph is singular at ({y}, {z}): u_z vanishes")]
    SingularGraph { y: f64, z: f64 },
    #[error("acceleration decomposition residual {0} exceeds tolerance")]
    DecompositionResidual(f64),

    #[error("radicand c1 + K0 u^2 is not positive at u = {u}")]
    EmptyDomain { u: f64 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("integration step must be positive, got {0}")]
    InvalidStep(f64),
    #[error("need at least 2 samples, got {0}")]
    TooFewSamples(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
