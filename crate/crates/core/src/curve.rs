//! Spacelike and timelike curves: causal character, admissibility,
//! curvature, torsion, Frenet frames and their derivative systems.
//!
//! Curves are validated against unit speed, never reparameterized.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{eval_jet1, parse, Ast, ExprError, Node, UnaryOp};
use crate::motion::PiMotion;
use crate::ode::rk4;
use crate::space::{causal_class_rel, det2_top, det3, CausalClass, Vec3};

/// Tolerance on `|<a',a'>| = 1` used by the pointwise operations.
pub const ARC_LENGTH_TOL: f64 = 1e-8;
/// `|det(top a', top a'')|` at or below this marks an isotropic osculating plane.
pub const ADMISSIBLE_TOL: f64 = 1e-12;
/// Curvature at or below this counts as zero.
pub const ZERO_CURVATURE_TOL: f64 = 1e-12;
/// Relative tolerance for deciding that a tangent is lightlike.
pub const LIGHTLIKE_REL_TOL: f64 = 1e-12;

/// Position and first three derivatives at one parameter value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub pos: Vec3,
    pub d1: Vec3,
    pub d2: Vec3,
    pub d3: Vec3,
}

type CurveFn = dyn Fn(f64) -> Result<CurvePoint> + Send + Sync;

/// Evaluator `s -> (a, a', a'', a''')` on a closed parameter interval.
#[derive(Clone)]
pub struct CurveJet {
    eval: Arc<CurveFn>,
    range: (f64, f64),
}

impl fmt::Debug for CurveJet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CurveJet")
            .field("range", &self.range)
            .finish_non_exhaustive()
    }
}

fn check_range(range: (f64, f64)) -> Result<()> {
    if !(range.0.is_finite() && range.1.is_finite() && range.0 < range.1) {
        return Err(Error::InvalidParams(format!(
            "parameter range [{}, {}] is empty",
            range.0, range.1
        )));
    }
    Ok(())
}

impl CurveJet {
    pub fn from_fn<F>(f: F, range: (f64, f64)) -> Result<Self>
    where
        F: Fn(f64) -> Result<CurvePoint> + Send + Sync + 'static,
    {
        check_range(range)?;
        Ok(Self {
            eval: Arc::new(f),
            range,
        })
    }

    /// Component expressions, each in (at most) one variable.
    pub fn from_exprs(x: Ast, y: Ast, z: Ast, range: (f64, f64)) -> Result<Self> {
        for a in [&x, &y, &z] {
            if a.vars.len() > 1 {
                return Err(ExprError::VariableCount {
                    found: a.vars.len(),
                    max: 1,
                }
                .into());
            }
        }
        Self::from_fn(
            move |s| {
                let jx = eval_jet1(&x, s, 3)?;
                let jy = eval_jet1(&y, s, 3)?;
                let jz = eval_jet1(&z, s, 3)?;
                Ok(CurvePoint {
                    pos: Vec3::new(jx.value, jy.value, jz.value),
                    d1: Vec3::new(jx.d1, jy.d1, jz.d1),
                    d2: Vec3::new(jx.d2, jy.d2, jz.d2),
                    d3: Vec3::new(jx.d3, jy.d3, jz.d3),
                })
            },
            range,
        )
    }

    /// Parses three component expressions in the variable `var`.
    pub fn parse(x: &str, y: &str, z: &str, var: &str, range: (f64, f64)) -> Result<Self> {
        let p = |t: &str| parse(t, &[var]);
        Self::from_exprs(p(x)?, p(y)?, p(z)?, range)
    }

    pub fn range(&self) -> (f64, f64) {
        self.range
    }

    pub fn eval(&self, s: f64) -> Result<CurvePoint> {
        (self.eval)(s)
    }

    /// The image of this curve under a motion, same parameter.
    pub fn transformed(&self, m: PiMotion) -> CurveJet {
        let inner = self.clone();
        CurveJet {
            eval: Arc::new(move |s| {
                let p = inner.eval(s)?;
                Ok(CurvePoint {
                    pos: m.apply(p.pos),
                    d1: m.apply_linear(p.d1),
                    d2: m.apply_linear(p.d2),
                    d3: m.apply_linear(p.d3),
                })
            }),
            range: self.range,
        }
    }

    /// `n` equally spaced parameters covering the closed range.
    pub fn sample_params(&self, n: usize) -> Result<Vec<f64>> {
        grid(self.range, n)
    }
}

pub(crate) fn grid(range: (f64, f64), n: usize) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::TooFewSamples(n));
    }
    let (a, b) = range;
    Ok((0..n)
        .map(|i| {
            if i + 1 == n {
                b
            } else {
                a + (b - a) * i as f64 / (n - 1) as f64
            }
        })
        .collect())
}

/// `T`, `N` and the fixed binormal `B = (0, 0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrenetFrame {
    pub t: Vec3,
    pub n: Vec3,
    pub b: Vec3,
}

/// Right-hand side of a Frenet system: `(T', N', B')`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrameDerivative {
    pub dt: Vec3,
    pub dn: Vec3,
    pub db: Vec3,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveInvariants {
    pub class: CausalClass,
    /// Nonnegative curvature from the square-root form.
    pub kappa: f64,
    /// `det(top a', top a'')`; equals `+-kappa` for unit-speed curves.
    pub signed_det: f64,
    /// `None` where the curvature vanishes.
    pub tau: Option<f64>,
}

fn tangent_class(d1: Vec3, s: f64) -> Result<CausalClass> {
    if d1.euclid_norm() <= 1e-14 {
        return Err(Error::Irregular { s });
    }
    Ok(causal_class_rel(d1, LIGHTLIKE_REL_TOL))
}

/// Causal character shared by all tangents on an `n`-point grid.
pub fn classify_curve(c: &CurveJet, n_samples: usize) -> Result<CausalClass> {
    let mut first: Option<(f64, CausalClass)> = None;
    for s in c.sample_params(n_samples)? {
        let class = tangent_class(c.eval(s)?.d1, s)?;
        match first {
            None => first = Some((s, class)),
            Some((s0, c0)) if c0 != class => {
                return Err(Error::MixedCausality {
                    first_s: s0,
                    first_class: c0,
                    second_s: s,
                    second_class: class,
                })
            }
            _ => {}
        }
    }
    Ok(first.expect("at least two samples").1)
}

/// Whether `|x'^2 - y'^2| = 1` within `tol` at every sample.
pub fn is_arclength(c: &CurveJet, n_samples: usize, tol: f64) -> Result<bool> {
    classify_curve(c, n_samples)?;
    for s in c.sample_params(n_samples)? {
        let d1 = c.eval(s)?.d1;
        if ((d1.x * d1.x - d1.y * d1.y).abs() - 1.0).abs() > tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether the osculating plane is non-isotropic at every sample, i.e. the
/// top views of `a'` and `a''` are independent.
pub fn is_admissible(c: &CurveJet, n_samples: usize) -> Result<bool> {
    for s in c.sample_params(n_samples)? {
        let p = c.eval(s)?;
        tangent_class(p.d1, s)?;
        if det2_top(p.d1, p.d2).abs() <= ADMISSIBLE_TOL {
            return Ok(false);
        }
    }
    Ok(true)
}

struct Local {
    point: CurvePoint,
    class: CausalClass,
    kappa: f64,
    signed_det: f64,
}

fn local(c: &CurveJet, s: f64) -> Result<Local> {
    let point = c.eval(s)?;
    let d1 = point.d1;
    tangent_class(d1, s)?;
    let speed2 = d1.x * d1.x - d1.y * d1.y;
    if (speed2.abs() - 1.0).abs() > ARC_LENGTH_TOL {
        return Err(Error::NotArcLength { s, speed2 });
    }
    let (class, k2) = if speed2 > 0.0 {
        // a'' is timelike for a spacelike unit tangent
        (
            CausalClass::Spacelike,
            point.d2.y * point.d2.y - point.d2.x * point.d2.x,
        )
    } else {
        (
            CausalClass::Timelike,
            point.d2.x * point.d2.x - point.d2.y * point.d2.y,
        )
    };
    Ok(Local {
        point,
        class,
        kappa: k2.max(0.0).sqrt(),
        signed_det: det2_top(point.d1, point.d2),
    })
}

/// Curvature of a unit-speed curve at `s`.
pub fn curvature(c: &CurveJet, s: f64) -> Result<f64> {
    let l = local(c, s)?;
    if l.signed_det.abs() <= ADMISSIBLE_TOL {
        return Err(Error::NotAdmissible { s });
    }
    Ok(l.kappa)
}

/// `tau = det(a', a'', a''') / kappa^2`.
pub fn torsion(c: &CurveJet, s: f64) -> Result<f64> {
    let l = local(c, s)?;
    if l.kappa <= ZERO_CURVATURE_TOL {
        return Err(Error::ZeroCurvature { s });
    }
    Ok(det3(l.point.d1, l.point.d2, l.point.d3) / (l.kappa * l.kappa))
}

pub fn invariants(c: &CurveJet, s: f64) -> Result<CurveInvariants> {
    let l = local(c, s)?;
    let tau = (l.kappa > ZERO_CURVATURE_TOL)
        .then(|| det3(l.point.d1, l.point.d2, l.point.d3) / (l.kappa * l.kappa));
    Ok(CurveInvariants {
        class: l.class,
        kappa: l.kappa,
        signed_det: l.signed_det,
        tau,
    })
}

pub fn frenet_frame(c: &CurveJet, s: f64) -> Result<FrenetFrame> {
    let l = local(c, s)?;
    if l.kappa <= ZERO_CURVATURE_TOL {
        return Err(Error::ZeroCurvature { s });
    }
    Ok(FrenetFrame {
        t: l.point.d1,
        n: (1.0 / l.kappa) * l.point.d2,
        b: Vec3::E3,
    })
}

/// Frenet derivative system: `T' = kN`, `N' = kT + e tB`, `B' = 0`, where
/// `e = sgn det(T, N, B)` is the turning sense of the top view.
///
/// Since `B` is fixed, `tau = det(a', a'', a''') / k^2` changes sign with
/// that sense. A spacelike curve turning positively, such as
/// `(sinh s, cosh s, z)`, has `N' = kT + tB`; a timelike one turning
/// negatively, such as `(cosh s, sinh s, z)`, has `N' = kT - tB`.
pub fn frenet_rhs(
    class: CausalClass,
    kappa: f64,
    tau: f64,
    f: &FrenetFrame,
) -> Result<FrameDerivative> {
    if !matches!(class, CausalClass::Spacelike | CausalClass::Timelike) {
        return Err(Error::UnsupportedClass(class));
    }
    let sense = if det2_top(f.t, f.n) < 0.0 { -1.0 } else { 1.0 };
    Ok(FrameDerivative {
        dt: kappa * f.n,
        dn: kappa * f.t + (sense * tau) * f.b,
        db: Vec3::ZERO,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReconstructedSample {
    pub s: f64,
    pub point: Vec3,
    pub frame: FrenetFrame,
}

fn pack(p: Vec3, f: &FrenetFrame) -> [f64; 9] {
    [p.x, p.y, p.z, f.t.x, f.t.y, f.t.z, f.n.x, f.n.y, f.n.z]
}

fn unpack(y: &[f64; 9], b: Vec3) -> (Vec3, FrenetFrame) {
    (
        Vec3::new(y[0], y[1], y[2]),
        FrenetFrame {
            t: Vec3::new(y[3], y[4], y[5]),
            n: Vec3::new(y[6], y[7], y[8]),
            b,
        },
    )
}

/// Integrates `a' = T` together with the Frenet system for the given
/// curvature and torsion functions, by RK4 with fixed `step`.
pub fn reconstruct_from_invariants<K, T>(
    class: CausalClass,
    kappa_fn: K,
    tau_fn: T,
    init: (Vec3, FrenetFrame),
    range: (f64, f64),
    step: f64,
) -> Result<Vec<ReconstructedSample>>
where
    K: Fn(f64) -> Result<f64>,
    T: Fn(f64) -> Result<f64>,
{
    if !matches!(class, CausalClass::Spacelike | CausalClass::Timelike) {
        return Err(Error::UnsupportedClass(class));
    }
    let b = init.1.b;
    let rhs = |s: f64, y: &[f64; 9]| -> Result<[f64; 9]> {
        let kappa = kappa_fn(s)?;
        if kappa.abs() <= ZERO_CURVATURE_TOL {
            return Err(Error::ZeroCurvature { s });
        }
        let (_, frame) = unpack(y, b);
        let d = frenet_rhs(class, kappa, tau_fn(s)?, &frame)?;
        Ok(pack(
            frame.t,
            &FrenetFrame {
                t: d.dt,
                n: d.dn,
                b,
            },
        ))
    };
    let sol = rk4(rhs, range.0, pack(init.0, &init.1), range.1, step)?;
    Ok(sol
        .into_iter()
        .map(|(s, y)| {
            let (point, frame) = unpack(&y, b);
            ReconstructedSample { s, point, frame }
        })
        .collect())
}

/// The plane `x + sign*y = c0` containing a lightlike curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LightlikePlane {
    pub sign: i8,
    pub c0: f64,
    /// Largest deviation of `x + sign*y` from `c0` over the samples.
    pub residual: f64,
}

pub fn lightlike_plane(c: &CurveJet, n_samples: usize, tol: f64) -> Result<LightlikePlane> {
    let class = classify_curve(c, n_samples)?;
    if class != CausalClass::Lightlike {
        return Err(Error::NotLightlike(class));
    }
    let mut plus = (f64::INFINITY, f64::NEG_INFINITY);
    let mut minus = plus;
    for s in c.sample_params(n_samples)? {
        let p = c.eval(s)?.pos;
        let (a, b) = (p.x + p.y, p.x - p.y);
        plus = (plus.0.min(a), plus.1.max(a));
        minus = (minus.0.min(b), minus.1.max(b));
    }
    let spread = |r: (f64, f64)| 0.5 * (r.1 - r.0);
    let (rp, rm) = (spread(plus), spread(minus));
    let (sign, r, range) = if rp <= rm {
        (1, rp, plus)
    } else {
        (-1, rm, minus)
    };
    if r > tol {
        return Err(Error::NoSuchPlane {
            plus: rp,
            minus: rm,
        });
    }
    Ok(LightlikePlane {
        sign,
        c0: 0.5 * (range.0 + range.1),
        residual: r,
    })
}

/// `(cosh s, sinh s, z(s))`, a unit-speed timelike curve for every `z`.
pub fn hyperbolic_cylindrical(z: Ast, range: (f64, f64)) -> Result<CurveJet> {
    let var = z.vars.first().cloned().unwrap_or_else(|| "s".to_string());
    let x = Ast::new(Node::var(0).apply(UnaryOp::Cosh), &[&var]);
    let y = Ast::new(Node::var(0).apply(UnaryOp::Sinh), &[&var]);
    CurveJet::from_exprs(x, y, z, range)
}

/// Hyperbolic cylindrical curve with `z = tau0 s + c1 e^s - c2 e^-s + c3`,
/// which has constant torsion `tau0`.
pub fn constant_torsion_cylindrical(
    tau0: f64,
    c1: f64,
    c2: f64,
    c3: f64,
    range: (f64, f64),
) -> Result<CurveJet> {
    let s = || Node::var(0);
    let z = Node::constant(tau0)
        .mul(s())
        .add(Node::constant(c1).mul(s().apply(UnaryOp::Exp)))
        .sub(Node::constant(c2).mul(s().neg().apply(UnaryOp::Exp)))
        .add(Node::constant(c3));
    hyperbolic_cylindrical(Ast::new(z, &["s"]), range)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(x: &str, y: &str, z: &str) -> CurveJet {
        CurveJet::parse(x, y, z, "s", (-1.0, 1.0)).unwrap()
    }

    fn close(a: Vec3, b: Vec3) -> bool {
        a.max_abs_diff(&b) < 1e-12
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify_curve(&curve("cosh(s)", "sinh(s)", "s"), 16),
            Ok(CausalClass::Timelike)
        );
        assert_eq!(
            classify_curve(&curve("sinh(s)", "cosh(s)", "0"), 16),
            Ok(CausalClass::Spacelike)
        );
        assert_eq!(
            classify_curve(&curve("s", "s", "s^3"), 16),
            Ok(CausalClass::Lightlike)
        );
        // a' = (0, 0, 1) at s = 0
        assert_eq!(
            classify_curve(&curve("s^2", "s^2", "s"), 3),
            Err(Error::MixedCausality {
                first_s: -1.0,
                first_class: CausalClass::Lightlike,
                second_s: 0.0,
                second_class: CausalClass::Isotropic,
            })
        );
        assert_eq!(
            classify_curve(&curve("s^2", "s^2", "0"), 3),
            Err(Error::Irregular { s: 0.0 })
        );
        // a' = (2s, 1, 0) is timelike for |s| < 1/2
        assert!(matches!(
            classify_curve(&curve("s^2", "s", "0"), 16),
            Err(Error::MixedCausality { .. })
        ));
        assert_eq!(
            classify_curve(&curve("s", "s", "s"), 1),
            Err(Error::TooFewSamples(1))
        );
    }

    #[test]
    fn arclength_examples() {
        assert_eq!(
            is_arclength(&curve("cosh(s)", "sinh(s)", "sin(3*s)"), 32, 1e-12),
            Ok(true)
        );
        assert_eq!(is_arclength(&curve("2*s", "0", "0"), 32, 1e-12), Ok(false));
        assert_eq!(
            is_arclength(&curve("sinh(s)", "cosh(s)", "s^2"), 32, 1e-12),
            Ok(true)
        );
    }

    #[test]
    fn admissibility_examples() {
        assert_eq!(
            is_admissible(&curve("cosh(s)", "sinh(s)", "0"), 32),
            Ok(true)
        );
        assert_eq!(is_admissible(&curve("s", "0", "s^2"), 32), Ok(false));
        assert_eq!(is_admissible(&curve("s", "s", "s^3"), 32), Ok(false));
    }

    #[test]
    fn curvature_examples() {
        let c = curve("cosh(s)", "sinh(s)", "exp(s)");
        for s in [-0.9, 0.0, 0.4] {
            assert!((curvature(&c, s).unwrap() - 1.0).abs() < 1e-12);
        }
        assert!((curvature(&curve("sinh(s)", "cosh(s)", "0"), 0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(matches!(
            curvature(&curve("cosh(2*s)", "sinh(2*s)", "0"), 0.3),
            Err(Error::NotArcLength { .. })
        ));
        assert!(matches!(
            curvature(&curve("s", "0", "s^2"), 0.3),
            Err(Error::NotAdmissible { .. })
        ));
    }

    #[test]
    fn signed_determinant_matches_curvature_up_to_sign() {
        let spacelike = invariants(&curve("sinh(s)", "cosh(s)", "0"), 0.2).unwrap();
        assert!((spacelike.signed_det - 1.0).abs() < 1e-12);
        let timelike = invariants(&curve("cosh(s)", "sinh(s)", "0"), 0.2).unwrap();
        assert!((timelike.signed_det + 1.0).abs() < 1e-12);
        assert_eq!(timelike.class, CausalClass::Timelike);
    }

    #[test]
    fn torsion_examples() {
        let c = constant_torsion_cylindrical(3.0, 0.2, -0.4, 1.0, (-3.0, 3.0)).unwrap();
        for s in [-2.5, 0.0, 1.7] {
            assert!((torsion(&c, s).unwrap() - 3.0).abs() < 1e-12);
        }
        // z = s^2: tau = z' - z''' = 2s
        let c = hyperbolic_cylindrical(parse("s^2", &["s"]).unwrap(), (-1.0, 1.0)).unwrap();
        assert!((torsion(&c, 0.7).unwrap() - 1.4).abs() < 1e-12);
        assert!(
            torsion(&curve("sinh(s)", "cosh(s)", "0"), 0.5)
                .unwrap()
                .abs()
                < 1e-15
        );
        let flat = constant_torsion_cylindrical(0.0, 0.0, 0.0, 0.0, (-1.0, 1.0)).unwrap();
        assert_eq!(flat.eval(0.3).unwrap().pos.z, 0.0);
        assert_eq!(torsion(&flat, 0.3), Ok(0.0));
    }

    #[test]
    fn zero_curvature_is_reported() {
        let line = curve("s", "0", "s^2");
        assert_eq!(torsion(&line, 0.5), Err(Error::ZeroCurvature { s: 0.5 }));
        assert_eq!(
            frenet_frame(&line, 0.5),
            Err(Error::ZeroCurvature { s: 0.5 })
        );
        assert!(invariants(&line, 0.5).unwrap().tau.is_none());
    }

    #[test]
    fn frames_at_origin() {
        let f = frenet_frame(&curve("cosh(s)", "sinh(s)", "s"), 0.0).unwrap();
        assert!(close(f.t, Vec3::new(0.0, 1.0, 1.0)));
        assert!(close(f.n, Vec3::new(1.0, 0.0, 0.0)));
        assert_eq!(f.b, Vec3::E3);
        let f = frenet_frame(&curve("sinh(s)", "cosh(s)", "0"), 0.0).unwrap();
        assert!(close(f.t, Vec3::new(1.0, 0.0, 0.0)));
        assert!(close(f.n, Vec3::new(0.0, 1.0, 0.0)));
    }

    #[test]
    fn frenet_systems() {
        let x = Vec3::new(1.0, 0.0, 0.0);
        let y = Vec3::new(0.0, 1.0, 0.0);
        let space = FrenetFrame {
            t: x,
            n: y,
            b: Vec3::E3,
        };
        let d = frenet_rhs(CausalClass::Spacelike, 1.0, 0.0, &space).unwrap();
        assert_eq!((d.dt, d.dn, d.db), (y, x, Vec3::ZERO));
        let d = frenet_rhs(CausalClass::Spacelike, 1.0, 1.0, &space).unwrap();
        assert_eq!(d.dn, x + Vec3::E3);

        // (cosh s, sinh s, s) at 0: T = (0, 1, 1), N = (1, 0, 0)
        let time = FrenetFrame {
            t: Vec3::new(0.0, 1.0, 1.0),
            n: x,
            b: Vec3::E3,
        };
        let d = frenet_rhs(CausalClass::Timelike, 1.0, 1.0, &time).unwrap();
        assert_eq!((d.dt, d.dn, d.db), (time.n, time.t - time.b, Vec3::ZERO));
        assert_eq!(
            frenet_rhs(CausalClass::Lightlike, 1.0, 1.0, &time),
            Err(Error::UnsupportedClass(CausalClass::Lightlike))
        );
    }

    #[test]
    fn torsion_sign_follows_turning_sense() {
        // mirror images x -> -x turn the other way
        for (x, y, cls) in [
            ("sinh(s)", "cosh(s)", CausalClass::Spacelike),
            ("-sinh(s)", "cosh(s)", CausalClass::Spacelike),
            ("cosh(s)", "sinh(s)", CausalClass::Timelike),
            ("-cosh(s)", "sinh(s)", CausalClass::Timelike),
        ] {
            let c = curve(x, y, "s^3/6 + sin(s)");
            let (s, h) = (0.4, 1e-5);
            let fd = (1.0 / (2.0 * h))
                * (frenet_frame(&c, s + h).unwrap().n - frenet_frame(&c, s - h).unwrap().n);
            let inv = invariants(&c, s).unwrap();
            let rhs = frenet_rhs(
                cls,
                inv.kappa,
                inv.tau.unwrap(),
                &frenet_frame(&c, s).unwrap(),
            );
            assert!(fd.max_abs_diff(&rhs.unwrap().dn) < 1e-6, "{x}, {y}");
        }
    }

    #[test]
    fn spacelike_normal_derivative_has_plus_kappa_t() {
        // (sinh s, cosh s, s^3/6): N' must equal kT + tB, not -kT + tB
        let c = curve("sinh(s)", "cosh(s)", "s^3/6");
        let s = 0.4;
        let h = 1e-5;
        let n_plus = frenet_frame(&c, s + h).unwrap().n;
        let n_minus = frenet_frame(&c, s - h).unwrap().n;
        let fd = (1.0 / (2.0 * h)) * (n_plus - n_minus);
        let inv = invariants(&c, s).unwrap();
        let f = frenet_frame(&c, s).unwrap();
        let rhs = frenet_rhs(CausalClass::Spacelike, inv.kappa, inv.tau.unwrap(), &f).unwrap();
        assert!(fd.max_abs_diff(&rhs.dn) < 1e-6);
        let printed = -inv.kappa * f.t + inv.tau.unwrap() * f.b;
        assert!(fd.max_abs_diff(&printed) > 1.0);
    }

    #[test]
    fn reconstruction_examples() {
        // timelike, k = 1, t = 1 -> (cosh s, sinh s, s + 2)
        let target = curve("cosh(s)", "sinh(s)", "s + 2");
        let p0 = target.eval(0.0).unwrap().pos;
        let f0 = frenet_frame(&target, 0.0).unwrap();
        let out = reconstruct_from_invariants(
            CausalClass::Timelike,
            |_| Ok(1.0),
            |_| Ok(1.0),
            (p0, f0),
            (0.0, 1.0),
            1e-3,
        )
        .unwrap();
        let worst = out
            .iter()
            .map(|r| r.point.max_abs_diff(&target.eval(r.s).unwrap().pos))
            .fold(0.0, f64::max);
        assert!(worst < 1e-10, "{worst}");

        // spacelike, t = 0 stays in the plane z = const
        let f0 = FrenetFrame {
            t: Vec3::new(1.0, 0.0, 0.0),
            n: Vec3::new(0.0, 1.0, 0.0),
            b: Vec3::E3,
        };
        let out = reconstruct_from_invariants(
            CausalClass::Spacelike,
            |_| Ok(1.0),
            |_| Ok(0.0),
            (Vec3::new(0.0, 1.0, 0.0), f0),
            (0.0, 1.0),
            1e-3,
        )
        .unwrap();
        let last = out.last().unwrap();
        assert_eq!(last.point.z, 0.0);
        assert!((last.point.x - 1f64.sinh()).abs() < 1e-11);
        assert!((last.point.y - 1f64.cosh()).abs() < 1e-11);

        assert_eq!(
            reconstruct_from_invariants(
                CausalClass::Spacelike,
                |_| Ok(1.0),
                |_| Ok(0.0),
                (Vec3::ZERO, f0),
                (0.0, 1.0),
                0.0
            )
            .unwrap_err(),
            Error::InvalidStep(0.0)
        );
        assert!(matches!(
            reconstruct_from_invariants(
                CausalClass::Spacelike,
                |s| Ok(0.5 - s),
                |_| Ok(0.0),
                (Vec3::ZERO, f0),
                (0.0, 1.0),
                0.25
            ),
            Err(Error::ZeroCurvature { .. })
        ));
    }

    #[test]
    fn lightlike_plane_examples() {
        let p = lightlike_plane(&curve("s", "s", "s^3"), 32, 1e-10).unwrap();
        assert_eq!((p.sign, p.c0), (-1, 0.0));
        let p = lightlike_plane(&curve("s + 1", "-s", "exp(s)"), 32, 1e-10).unwrap();
        assert_eq!(p.sign, 1);
        assert!((p.c0 - 1.0).abs() < 1e-15);
        assert_eq!(
            lightlike_plane(&curve("cosh(s)", "sinh(s)", "0"), 32, 1e-10),
            Err(Error::NotLightlike(CausalClass::Timelike))
        );
    }

    #[test]
    fn motion_keeps_invariants() {
        let c = curve("sinh(s)", "cosh(s)", "sin(s)");
        let m = PiMotion {
            theta: 0.8,
            a: 1.0,
            b: -2.0,
            c: 3.0,
            d: 0.5,
            e: -1.5,
        };
        let t = c.transformed(m);
        let (a, b) = (invariants(&c, 0.3).unwrap(), invariants(&t, 0.3).unwrap());
        assert!((a.kappa - b.kappa).abs() < 1e-12);
        assert!((a.tau.unwrap() - b.tau.unwrap()).abs() < 1e-12);
    }
}
