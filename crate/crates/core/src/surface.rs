//! Timelike admissible surfaces: first and second fundamental forms,
//! Gaussian and mean curvature, graph specializations and the splitting of
//! a surface curve's acceleration into geodesic and normal parts.
//!
//! `h_ij` is oriented by the parameter order `(u1, u2)`. Swapping the
//! parameters flips the sign of `H` but not of `K`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::curve::ARC_LENGTH_TOL;
use crate::error::{Error, Result};
use crate::expr::{eval_jet1, eval_jet2, parse, Ast, ExprError, Jet2};
use crate::motion::PiMotion;
use crate::space::{det2_top, det3, Vec3};

/// Top-view Jacobians at or below this are treated as lightlike tangent planes.
pub const DEGENERACY_TOL: f64 = 1e-12;
/// `|u_z|` at or below this makes a yz-graph singular.
pub const SINGULAR_GRAPH_TOL: f64 = 1e-12;
/// Allowed residual of `r'' = kg sigma + kn xi`, relative to `max(1, |r''|)`.
pub const DECOMPOSITION_TOL: f64 = 1e-8;

/// Position with first and second partial derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurfacePoint {
    pub r: Vec3,
    pub ru: Vec3,
    pub rv: Vec3,
    pub ruu: Vec3,
    pub ruv: Vec3,
    pub rvv: Vec3,
}

impl SurfacePoint {
    fn from_jets(x: Jet2, y: Jet2, z: Jet2) -> Self {
        let v = |f: fn(&Jet2) -> f64| Vec3::new(f(&x), f(&y), f(&z));
        Self {
            r: v(|j| j.value),
            ru: v(|j| j.du),
            rv: v(|j| j.dv),
            ruu: v(|j| j.duu),
            ruv: v(|j| j.duv),
            rvv: v(|j| j.dvv),
        }
    }

    /// `det(top r_u1, top r_u2)`.
    pub fn jacobian(&self) -> f64 {
        det2_top(self.ru, self.rv)
    }
}

/// Parameter rectangle `[u0, u1] x [v0, v1]`.
pub type Domain = ((f64, f64), (f64, f64));

type SurfaceFn = dyn Fn(f64, f64) -> Result<SurfacePoint> + Send + Sync;

#[derive(Clone)]
pub struct SurfaceJet {
    eval: Arc<SurfaceFn>,
    domain: Domain,
}

impl fmt::Debug for SurfaceJet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SurfaceJet")
            .field("domain", &self.domain)
            .finish_non_exhaustive()
    }
}

/// Parameter order of a yz-graph `x = u(y, z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum YzOrder {
    /// Parameters `(y, z)`; top-view Jacobian `-u_z`.
    YZ,
    /// Parameters `(z, y)`; top-view Jacobian `u_z`.
    ZY,
}

impl YzOrder {
    /// The order whose top-view Jacobian is positive for the given sign of `u_z`.
    pub fn positive_for(u_z: f64) -> YzOrder {
        if u_z > 0.0 {
            YzOrder::ZY
        } else {
            YzOrder::YZ
        }
    }
}

impl SurfaceJet {
    pub fn from_fn<F>(f: F, domain: Domain) -> Self
    where
        F: Fn(f64, f64) -> Result<SurfacePoint> + Send + Sync + 'static,
    {
        Self {
            eval: Arc::new(f),
            domain,
        }
    }

    /// Component expressions in (at most) two variables.
    pub fn from_exprs(x: Ast, y: Ast, z: Ast, domain: Domain) -> Result<Self> {
        for a in [&x, &y, &z] {
            if a.vars.len() > 2 {
                return Err(ExprError::VariableCount {
                    found: a.vars.len(),
                    max: 2,
                }
                .into());
            }
        }
        Ok(Self::from_fn(
            move |u, v| {
                Ok(SurfacePoint::from_jets(
                    eval_jet2(&x, u, v)?,
                    eval_jet2(&y, u, v)?,
                    eval_jet2(&z, u, v)?,
                ))
            },
            domain,
        ))
    }

    pub fn parse(x: &str, y: &str, z: &str, vars: [&str; 2], domain: Domain) -> Result<Self> {
        let p = |t: &str| parse(t, &vars);
        Self::from_exprs(p(x)?, p(y)?, p(z)?, domain)
    }

    /// The graph `(x, y, u(x, y))`, parameters `(x, y)`.
    pub fn graph_xy(u: Ast, domain: Domain) -> Self {
        Self::from_fn(
            move |x, y| {
                let j = eval_jet2(&u, x, y)?;
                Ok(SurfacePoint::from_jets(Jet2::var_u(x), Jet2::var_v(y), j))
            },
            domain,
        )
    }

    /// The graph `(u(y, z), y, z)` with the chosen parameter order. `u`'s
    /// first variable is y, its second z.
    pub fn graph_yz(u: Ast, order: YzOrder, domain: Domain) -> Self {
        Self::from_fn(
            move |p1, p2| {
                let pt = match order {
                    YzOrder::YZ => {
                        let j = eval_jet2(&u, p1, p2)?;
                        SurfacePoint::from_jets(j, Jet2::var_u(p1), Jet2::var_v(p2))
                    }
                    YzOrder::ZY => {
                        let j = eval_jet2(&u, p2, p1)?;
                        let swapped = Jet2 {
                            value: j.value,
                            du: j.dv,
                            dv: j.du,
                            duu: j.dvv,
                            duv: j.duv,
                            dvv: j.duu,
                        };
                        SurfacePoint::from_jets(swapped, Jet2::var_v(p2), Jet2::var_u(p1))
                    }
                };
                Ok(pt)
            },
            domain,
        )
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn eval(&self, u1: f64, u2: f64) -> Result<SurfacePoint> {
        (self.eval)(u1, u2)
    }

    /// The image under a motion, same parameters.
    pub fn transformed(&self, m: PiMotion) -> SurfaceJet {
        let inner = self.clone();
        SurfaceJet {
            eval: Arc::new(move |u, v| {
                let p = inner.eval(u, v)?;
                Ok(SurfacePoint {
                    r: m.apply(p.r),
                    ru: m.apply_linear(p.ru),
                    rv: m.apply_linear(p.rv),
                    ruu: m.apply_linear(p.ruu),
                    ruv: m.apply_linear(p.ruv),
                    rvv: m.apply_linear(p.rvv),
                })
            }),
            domain: self.domain,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FundamentalForms {
    pub g11: f64,
    pub g12: f64,
    pub g22: f64,
    pub h11: f64,
    pub h12: f64,
    pub h22: f64,
    pub det_g: f64,
    /// Top-view Jacobian `x_u1 y_u2 - x_u2 y_u1`; `det_g = -jacobian^2`.
    pub jacobian: f64,
}

impl FundamentalForms {
    pub fn gauss(&self) -> f64 {
        (self.h11 * self.h22 - self.h12 * self.h12) / self.det_g
    }

    pub fn mean(&self) -> f64 {
        (self.g11 * self.h22 - 2.0 * self.g12 * self.h12 + self.g22 * self.h11) / (2.0 * self.det_g)
    }
}

fn forms_at(pt: &SurfacePoint, at: (f64, f64)) -> Result<FundamentalForms> {
    let jacobian = pt.jacobian();
    let degenerate = Error::DegenerateMetric {
        u1: at.0,
        u2: at.1,
        jacobian,
    };
    if jacobian.abs() <= DEGENERACY_TOL || !jacobian.is_finite() {
        return Err(degenerate);
    }
    let (g11, g12, g22) = (pt.ru.dot(&pt.ru), pt.ru.dot(&pt.rv), pt.rv.dot(&pt.rv));
    let det_g = g11 * g22 - g12 * g12;
    if !(det_g < 0.0) {
        return Err(degenerate);
    }
    let root = det_g.abs().sqrt();
    let h = |r: Vec3| det3(pt.ru, pt.rv, r) / root;
    Ok(FundamentalForms {
        g11,
        g12,
        g22,
        h11: h(pt.ruu),
        h12: h(pt.ruv),
        h22: h(pt.rvv),
        det_g,
        jacobian,
    })
}

pub fn fundamental_forms(sj: &SurfaceJet, p: (f64, f64)) -> Result<FundamentalForms> {
    forms_at(&sj.eval(p.0, p.1)?, p)
}

/// `K = det(h) / det(g)`.
pub fn gauss_curvature(sj: &SurfaceJet, p: (f64, f64)) -> Result<f64> {
    Ok(fundamental_forms(sj, p)?.gauss())
}

/// `H = (g11 h22 - 2 g12 h12 + g22 h11) / (2 det g)`.
pub fn mean_curvature(sj: &SurfaceJet, p: (f64, f64)) -> Result<f64> {
    Ok(fundamental_forms(sj, p)?.mean())
}

/// `(K, H)` of the graph `z = u(x, y)`: `K = -u_xx u_yy + u_xy^2`,
/// `H = (u_xx - u_yy) / 2`.
pub fn graph_xy_curvatures(u: &Ast, p: (f64, f64)) -> Result<(f64, f64)> {
    let j = eval_jet2(u, p.0, p.1)?;
    Ok((-j.duu * j.dvv + j.duv * j.duv, 0.5 * (j.duu - j.dvv)))
}

/// `(K, H)` of the graph `x = u(y, z)` in the positively oriented
/// parameterization.
pub fn graph_yz_curvatures(u: &Ast, p: (f64, f64)) -> Result<(f64, f64)> {
    let j = eval_jet2(u, p.0, p.1)?;
    let (uy, uz, uyy, uyz, uzz) = (j.du, j.dv, j.duu, j.duv, j.dvv);
    if uz.abs() <= SINGULAR_GRAPH_TOL {
        return Err(Error::SingularGraph { y: p.0, z: p.1 });
    }
    let k = -(uyy * uzz - uyz * uyz) / uz.powi(4);
    let h = (uz * uz * uyy - 2.0 * uy * uz * uyz + (uy * uy - 1.0) * uzz) / (2.0 * uz.powi(3));
    Ok((k, h))
}

/// Laplacian of the flat metric `dx^2 - dy^2`: `u_xx - u_yy`.
pub fn laplacian_graph(u: &Ast, p: (f64, f64)) -> Result<f64> {
    let j = eval_jet2(u, p.0, p.1)?;
    Ok(j.duu - j.dvv)
}

/// `s -> ([u1, u1', u1''], [u2, u2', u2''])`.
type CurveFn = dyn Fn(f64) -> Result<([f64; 3], [f64; 3])> + Send + Sync;

/// A curve `s -> (u1(s), u2(s))` in the parameter domain, with two
/// derivatives per component.
#[derive(Clone)]
pub struct ParamCurve {
    eval: Arc<CurveFn>,
}

impl fmt::Debug for ParamCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("ParamCurve")
    }
}

impl ParamCurve {
    pub fn from_fn<F>(f: F) -> Self
    where
        F: Fn(f64) -> Result<([f64; 3], [f64; 3])> + Send + Sync + 'static,
    {
        Self { eval: Arc::new(f) }
    }

    pub fn from_exprs(u1: Ast, u2: Ast) -> Self {
        Self::from_fn(move |s| {
            let a = eval_jet1(&u1, s, 2)?;
            let b = eval_jet1(&u2, s, 2)?;
            Ok(([a.value, a.d1, a.d2], [b.value, b.d1, b.d2]))
        })
    }

    pub fn eval(&self, s: f64) -> Result<([f64; 3], [f64; 3])> {
        (self.eval)(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AccelerationDecomposition {
    pub kappa_g: f64,
    pub kappa_n: f64,
    /// Side tangential vector, Lorentz-orthogonal to the tangent.
    pub sigma: Vec3,
    pub residual: f64,
}

/// Splits `r''` of the unit-speed surface curve `r(u1(s), u2(s))` as
/// `kappa_g sigma + kappa_n xi` with `xi = (0, 0, 1)`.
///
/// `kappa_n` is `sum h_ij u_i' u_j'` for positively oriented charts (positive
/// top-view Jacobian) and its negative otherwise, so that it is always the
/// `xi` coefficient of `r''`.
pub fn acceleration_decomposition(
    sj: &SurfaceJet,
    pc: &ParamCurve,
    s: f64,
) -> Result<AccelerationDecomposition> {
    let ([u1, a, a2], [u2, b, b2]) = pc.eval(s)?;
    let pt = sj.eval(u1, u2)?;
    let f = forms_at(&pt, (u1, u2))?;

    let r1 = a * pt.ru + b * pt.rv;
    let speed2 = r1.dot(&r1);
    if (speed2.abs() - 1.0).abs() > ARC_LENGTH_TOL {
        return Err(Error::NotArcLength { s, speed2 });
    }
    let r2 = (a * a) * pt.ruu + (2.0 * a * b) * pt.ruv + (b * b) * pt.rvv + a2 * pt.ru + b2 * pt.rv;

    let root = f.det_g.abs().sqrt();
    let sigma = (-1.0 / root) * ((f.g12 * a + f.g22 * b) * pt.ru - (f.g11 * a + f.g12 * b) * pt.rv);
    let sum = f.h11 * a * a + 2.0 * f.h12 * a * b + f.h22 * b * b;
    let kappa_n = sum * f.jacobian.signum();
    let kappa_g = r2.dot(&sigma) / sigma.dot(&sigma);

    let residual = (r2 - kappa_g * sigma - kappa_n * Vec3::E3).euclid_norm();
    if residual > DECOMPOSITION_TOL * r2.euclid_norm().max(1.0) {
        return Err(Error::DecompositionResidual(residual));
    }
    Ok(AccelerationDecomposition {
        kappa_g,
        kappa_n,
        sigma,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    const D: Domain = ((-2.0, 2.0), (-2.0, 2.0));

    fn revolution(f: &str) -> SurfaceJet {
        SurfaceJet::parse(
            "u*cosh(v)",
            "u*sinh(v)",
            f,
            ["u", "v"],
            ((1.0, 2.0), (-1.0, 1.0)),
        )
        .unwrap()
    }

    fn xy(text: &str) -> Ast {
        parse(text, &["x", "y"]).unwrap()
    }

    #[test]
    fn revolution_forms_match_hand_expansion() {
        // f = u^3: f' = 3u^2, f'' = 6u
        let (u, v) = (1.3, 0.4);
        let ff = fundamental_forms(&revolution("u^3"), (u, v)).unwrap();
        let close = |a: f64, b: f64| (a - b).abs() < 1e-12;
        assert!(close(ff.g11, 1.0) && close(ff.g12, 0.0) && close(ff.g22, -u * u));
        assert!(close(ff.det_g, -u * u));
        assert!(close(ff.h11, 6.0 * u) && close(ff.h12, 0.0) && close(ff.h22, -u * 3.0 * u * u));
    }

    #[test]
    fn graph_metric_is_constant() {
        let g = SurfaceJet::graph_xy(xy("sin(x)*y^2"), D);
        let ff = fundamental_forms(&g, (0.3, -0.8)).unwrap();
        assert_eq!((ff.g11, ff.g12, ff.g22, ff.det_g), (1.0, 0.0, -1.0, -1.0));
    }

    #[test]
    fn lightlike_plane_is_degenerate() {
        let p = SurfaceJet::parse("u", "u", "v", ["u", "v"], D).unwrap();
        assert!(matches!(
            fundamental_forms(&p, (0.1, 0.2)),
            Err(Error::DegenerateMetric { .. })
        ));
    }

    #[test]
    fn curvature_examples() {
        let sphere = SurfaceJet::graph_xy(xy("x^2 - y^2"), D);
        let saddle = SurfaceJet::graph_xy(xy("x*y"), D);
        for p in [(0.0, 0.0), (0.5, -1.5), (1.2, 0.3)] {
            assert!((gauss_curvature(&sphere, p).unwrap() - 4.0).abs() < 1e-12);
            assert!((mean_curvature(&sphere, p).unwrap() - 2.0).abs() < 1e-12);
            assert!((gauss_curvature(&saddle, p).unwrap() - 1.0).abs() < 1e-12);
            assert!(mean_curvature(&saddle, p).unwrap().abs() < 1e-12);
        }
        assert!(gauss_curvature(&revolution("u"), (1.5, 0.3)).unwrap().abs() < 1e-12);
        assert!(
            (mean_curvature(&revolution("ln(u) + u^2"), (1.5, 0.3)).unwrap() - 2.0).abs() < 1e-12
        );
    }

    #[test]
    fn graph_closed_forms() {
        assert_eq!(
            graph_xy_curvatures(&xy("(x^2 - y^2)/2"), (0.3, 0.1)).unwrap(),
            (1.0, 1.0)
        );
        assert_eq!(
            graph_xy_curvatures(&xy("2*x - 3*y + 1"), (0.3, 0.1)).unwrap(),
            (0.0, 0.0)
        );
        assert_eq!(
            graph_xy_curvatures(&xy("x*y"), (0.3, 0.1)).unwrap(),
            (1.0, 0.0)
        );
        let yz = |t: &str| parse(t, &["y", "z"]).unwrap();
        assert_eq!(
            graph_yz_curvatures(&yz("z"), (0.3, 0.1)).unwrap(),
            (0.0, 0.0)
        );
        assert_eq!(
            graph_yz_curvatures(&yz("y + z"), (0.3, 0.1)).unwrap(),
            (0.0, 0.0)
        );
        assert_eq!(
            graph_yz_curvatures(&yz("y*z"), (1.0, 1.0)).unwrap(),
            (1.0, -1.0)
        );
        assert_eq!(
            graph_yz_curvatures(&yz("y^2"), (1.0, 1.0)),
            Err(Error::SingularGraph { y: 1.0, z: 1.0 })
        );
    }

    #[test]
    fn yz_graph_matches_general_formulas_when_positively_oriented() {
        let yz = |t: &str| parse(t, &["y", "z"]).unwrap();
        for (text, sign) in [
            ("0.5*y^2 + 2*z + y*z^2", 1.0),
            ("sin(y) - 3*z + 0.1*z^3", -1.0),
        ] {
            let u = yz(text);
            let order = YzOrder::positive_for(sign);
            let sj = SurfaceJet::graph_yz(u.clone(), order, D);
            let (y, z) = (0.4, -0.2);
            let p = match order {
                YzOrder::YZ => (y, z),
                YzOrder::ZY => (z, y),
            };
            let ff = fundamental_forms(&sj, p).unwrap();
            assert!(ff.jacobian > 0.0);
            let (k, h) = graph_yz_curvatures(&u, (y, z)).unwrap();
            assert!((ff.gauss() - k).abs() < 1e-12);
            assert!((ff.mean() - h).abs() < 1e-12);
            // the other order flips H only
            let other = match order {
                YzOrder::YZ => YzOrder::ZY,
                YzOrder::ZY => YzOrder::YZ,
            };
            let ff2 = fundamental_forms(&SurfaceJet::graph_yz(u, other, D), (p.1, p.0)).unwrap();
            assert!((ff2.gauss() - k).abs() < 1e-12);
            assert!((ff2.mean() + h).abs() < 1e-12);
        }
    }

    #[test]
    fn laplacian_examples() {
        assert_eq!(laplacian_graph(&xy("(x^2 - y^2)/2"), (0.2, 0.7)), Ok(2.0));
        assert_eq!(laplacian_graph(&xy("x*y"), (0.2, 0.7)), Ok(0.0));
        let u = xy("exp(x)*cos(y) + x^3*y");
        let (_, h) = graph_xy_curvatures(&u, (0.2, 0.7)).unwrap();
        assert_eq!(laplacian_graph(&u, (0.2, 0.7)).unwrap(), 2.0 * h);
    }

    #[test]
    fn decomposition_along_a_parallel() {
        // u = u0, v = s/u0 on the flat revolution f(u) = u
        let u0 = 1.5;
        let sj = revolution("u");
        let pc = ParamCurve::from_fn(move |s| Ok(([u0, 0.0, 0.0], [s / u0, 1.0 / u0, 0.0])));
        let d = acceleration_decomposition(&sj, &pc, 0.3).unwrap();
        assert!((d.kappa_n + 1.0 / u0).abs() < 1e-12);
        assert!((d.kappa_g - 1.0 / u0).abs() < 1e-12);
        assert!(d.residual < 1e-12);
    }

    #[test]
    fn decomposition_along_a_meridian() {
        // top r_u has unit length, so u = s is unit speed for any profile
        let sj = revolution("u^2/2");
        let pc = ParamCurve::from_exprs(parse("s", &["s"]).unwrap(), parse("0.2", &["s"]).unwrap());
        let d = acceleration_decomposition(&sj, &pc, 1.4).unwrap();
        assert!(d.kappa_g.abs() < 1e-12);
        // kappa_n = h11 = f'' = 1
        assert!((d.kappa_n - 1.0).abs() < 1e-12);
    }

    #[test]
    fn decomposition_rejects_non_unit_speed() {
        let sj = revolution("u");
        let pc = ParamCurve::from_fn(|s| Ok(([1.0 + 0.1 * s, 0.2, 0.0], [0.0, 0.0, 0.0])));
        assert!(matches!(
            acceleration_decomposition(&sj, &pc, 0.1),
            Err(Error::NotArcLength { .. })
        ));
    }

    #[test]
    fn motions_preserve_curvatures() {
        let sj = revolution("u^3 - ln(u)");
        let m = PiMotion {
            theta: -0.6,
            a: 2.0,
            b: 1.0,
            c: -3.0,
            d: 0.7,
            e: 1.1,
        };
        let moved = sj.transformed(m);
        let (a, b) = (
            fundamental_forms(&sj, (1.2, 0.5)).unwrap(),
            fundamental_forms(&moved, (1.2, 0.5)).unwrap(),
        );
        assert!((a.gauss() - b.gauss()).abs() < 1e-10);
        assert!((a.mean() - b.mean()).abs() < 1e-10);
    }
}
