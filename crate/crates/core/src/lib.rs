//! Differential geometry of pseudo-isotropic 3-space.
//!
//! The ambient space is `R^3` with the degenerate scalar product
//! `<u, v> = u1 v1 - u2 v2`, falling back to `u3 v3` when both top views
//! vanish. Curves and surfaces are described by closed-form expressions and
//! differentiated exactly with truncated Taylor jets.

// `!(x > 0.0)` deliberately rejects NaN along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod curve;
pub mod error;
pub mod expr;
pub mod motion;
pub mod ode;
pub mod random;
pub mod revolution;
pub mod space;
pub mod surface;
pub mod verify;

pub use curve::{
    classify_curve, curvature, frenet_frame, invariants, lightlike_plane,
    reconstruct_from_invariants, torsion, CurveInvariants, CurveJet, CurvePoint, FrenetFrame,
};
pub use error::{Error, Result};
pub use expr::{parse, Ast, ExprError};
pub use motion::PiMotion;
pub use revolution::{
    make_revolution, solve_profile, verify_family, FamilyReport, ParamGrid, Profile, ProfileFamily,
    ProfileKind,
};
pub use space::{causal_class, pi_dot, pseudo_angle, CausalClass, Vec3};
pub use surface::{
    acceleration_decomposition, fundamental_forms, gauss_curvature, mean_curvature,
    FundamentalForms, SurfaceJet,
};
