//! Surfaces of revolution under hyperbolic rotation about the z-axis, their
//! reduced curvature formulas and the closed-form constant-curvature
//! profiles, with ODE and grid-sweep cross-checks.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{eval_jet1, parse, Ast, Jet1, Node, UnaryOp};
use crate::ode::rk4;
use crate::space::Vec3;
use crate::surface::{fundamental_forms, SurfaceJet, SurfacePoint};

/// Default tolerance of [`verify_family`].
pub const VERIFY_TOL: f64 = 1e-8;
/// Perturbation `eps u^3` applied to parabolic spheres as a negative control.
pub const NEGATIVE_CONTROL_EPS: f64 = 1e-3;
/// The perturbed profile must violate `H^2 = K` by more than this.
pub const NEGATIVE_CONTROL_FLOOR: f64 = 1e-8;

/// Which isotropic plane the profile lies in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProfileKind {
    /// `(u, 0, f(u))` swept to `(u cosh v, u sinh v, f(u))`.
    Spacelike,
    /// `(0, u, f(u))` swept to `(u sinh v, u cosh v, f(u))`.
    Timelike,
}

/// A profile curve `f(u)` on a range with `u > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    pub f: Ast,
    pub u_range: (f64, f64),
    pub kind: ProfileKind,
}

fn check_u_range(r: (f64, f64)) -> Result<()> {
    if !(r.0 > 0.0 && r.0 < r.1 && r.1.is_finite()) {
        return Err(Error::InvalidParams(format!(
            "profile range [{}, {}] must satisfy 0 < u0 < u1",
            r.0, r.1
        )));
    }
    Ok(())
}

impl Profile {
    pub fn new(f: Ast, u_range: (f64, f64), kind: ProfileKind) -> Result<Self> {
        check_u_range(u_range)?;
        if f.vars.len() > 1 {
            return Err(crate::expr::ExprError::VariableCount {
                found: f.vars.len(),
                max: 1,
            }
            .into());
        }
        Ok(Self { f, u_range, kind })
    }

    /// Parses `f` in the variable `u`.
    pub fn parse(text: &str, u_range: (f64, f64), kind: ProfileKind) -> Result<Self> {
        Self::new(parse(text, &["u"])?, u_range, kind)
    }

    pub fn jet(&self, u: f64, order: usize) -> Result<Jet1> {
        if !(u > 0.0) {
            return Err(Error::InvalidParams(format!(
                "profile evaluated at u = {u} <= 0"
            )));
        }
        Ok(eval_jet1(&self.f, u, order)?)
    }
}

/// Sweeps the profile by hyperbolic rotations, `v` the rotation angle.
pub fn make_revolution(p: &Profile, v_range: (f64, f64)) -> SurfaceJet {
    let prof = p.clone();
    SurfaceJet::from_fn(
        move |u, v| {
            let f = prof.jet(u, 2)?;
            let (sh, ch) = (v.sinh(), v.cosh());
            let (a, b) = match prof.kind {
                ProfileKind::Spacelike => (ch, sh),
                ProfileKind::Timelike => (sh, ch),
            };
            // columns (a, b) and their v-derivatives (b, a)
            Ok(SurfacePoint {
                r: Vec3::new(u * a, u * b, f.value),
                ru: Vec3::new(a, b, f.d1),
                rv: Vec3::new(u * b, u * a, 0.0),
                ruu: Vec3::new(0.0, 0.0, f.d2),
                ruv: Vec3::new(b, a, 0.0),
                rvv: Vec3::new(u * a, u * b, 0.0),
            })
        },
        (p.u_range, v_range),
    )
}

/// `K = f' f'' / u`.
pub fn rev_gauss(p: &Profile, u: f64) -> Result<f64> {
    let f = p.jet(u, 2)?;
    Ok(f.d1 * f.d2 / u)
}

/// `H = (f'/u + f'') / 2`.
pub fn rev_mean(p: &Profile, u: f64) -> Result<f64> {
    let f = p.jet(u, 2)?;
    Ok(0.5 * (f.d1 / u + f.d2))
}

/// `H^2 - K = (f'/u - f'')^2 / 4`, which vanishes exactly on parabolic spheres.
pub fn euler_gap(p: &Profile, u: f64) -> Result<f64> {
    let f = p.jet(u, 2)?;
    let d = f.d1 / u - f.d2;
    Ok(0.25 * d * d)
}

/// Sign of `f'` for constant-K profiles, `f' = +-sqrt(c1 + K0 u^2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Branch {
    #[default]
    Ascending,
    Descending,
}

/// Closed-form families of profiles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum ProfileFamily {
    /// Constant nonzero Gaussian curvature `k0`.
    ConstantK {
        k0: f64,
        c1: f64,
        c2: f64,
        branch: Branch,
    },
    /// Constant mean curvature `h0`.
    ConstantH { h0: f64, c1: f64, c2: f64 },
    /// `K = 0`: the line `c1 u + c2`.
    Flat { c1: f64, c2: f64 },
    /// `H = 0`: `c1 ln u + c2`.
    Minimal { c1: f64, c2: f64 },
    /// `H^2 = K`: `c1 u^2 / 2 + c2`.
    ParabolicSphere { c1: f64, c2: f64 },
}

impl ProfileFamily {
    pub fn constant_k(k0: f64, c1: f64, c2: f64) -> Self {
        ProfileFamily::ConstantK {
            k0,
            c1,
            c2,
            branch: Branch::Ascending,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ProfileFamily::ConstantK { .. } => "constant_k",
            ProfileFamily::ConstantH { .. } => "constant_h",
            ProfileFamily::Flat { .. } => "flat",
            ProfileFamily::Minimal { .. } => "minimal",
            ProfileFamily::ParabolicSphere { .. } => "parabolic_sphere",
        }
    }

    pub fn params(&self) -> Vec<(&'static str, f64)> {
        match *self {
            ProfileFamily::ConstantK { k0, c1, c2, branch } => vec![
                ("k0", k0),
                ("c1", c1),
                ("c2", c2),
                (
                    "sign",
                    if branch == Branch::Ascending {
                        1.0
                    } else {
                        -1.0
                    },
                ),
            ],
            ProfileFamily::ConstantH { h0, c1, c2 } => vec![("h0", h0), ("c1", c1), ("c2", c2)],
            ProfileFamily::Flat { c1, c2 }
            | ProfileFamily::Minimal { c1, c2 }
            | ProfileFamily::ParabolicSphere { c1, c2 } => vec![("c1", c1), ("c2", c2)],
        }
    }

    /// Target `(K, H)` values, where the family fixes them.
    pub fn targets(&self) -> (Option<f64>, Option<f64>) {
        match *self {
            ProfileFamily::ConstantK { k0, .. } => (Some(k0), None),
            ProfileFamily::ConstantH { h0, .. } => (None, Some(h0)),
            ProfileFamily::Flat { .. } => (Some(0.0), None),
            ProfileFamily::Minimal { .. } => (None, Some(0.0)),
            ProfileFamily::ParabolicSphere { c1, .. } => (Some(c1 * c1), Some(c1)),
        }
    }

    /// Negative `K0` uses the arcsine antiderivative.
    pub fn is_extension(&self) -> bool {
        matches!(self, ProfileFamily::ConstantK { k0, .. } if *k0 < 0.0)
    }
}

impl fmt::Display for ProfileFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.name())?;
        for (i, (k, v)) in self.params().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k}={v}")?;
        }
        f.write_str(")")
    }
}

fn radicand(k0: f64, c1: f64, u: f64) -> f64 {
    c1 + k0 * u * u
}

fn check_radicand(k0: f64, c1: f64, u_range: (f64, f64)) -> Result<()> {
    let (a, b) = u_range;
    for u in [a, 0.5 * (a + b), b] {
        if !(radicand(k0, c1, u) > 0.0) {
            return Err(Error::EmptyDomain { u });
        }
    }
    Ok(())
}

fn c(x: f64) -> Node {
    Node::constant(x)
}

fn u() -> Node {
    Node::var(0)
}

/// The closed-form profile of a family on `u_range`, as a spacelike profile.
///
/// For constant `K0` the profile is the antiderivative of
/// `f' = sqrt(c1 + K0 u^2)`; with `psi = sqrt(c1 + K0 u^2)` this is
/// `u psi / 2 + c1 / (2 sqrt K0) ln|2 K0 u + 2 sqrt(K0) psi| + c2` for
/// `K0 > 0` and `u psi / 2 + c1 / (2 sqrt(-K0)) asin(sqrt(-K0) u / sqrt c1) + c2`
/// for `K0 < 0`.
pub fn solve_profile(fam: &ProfileFamily, u_range: (f64, f64)) -> Result<Profile> {
    check_u_range(u_range)?;
    let f = match *fam {
        ProfileFamily::ConstantK { k0, c1, c2, branch } => {
            if k0 == 0.0 || !k0.is_finite() {
                return Err(Error::InvalidParams("ConstantK requires K0 != 0".into()));
            }
            if k0 < 0.0 && !(c1 > 0.0) {
                return Err(Error::InvalidParams("K0 < 0 requires c1 > 0".into()));
            }
            check_radicand(k0, c1, u_range)?;
            let psi = || c(c1).add(c(k0).mul(u().powf(2.0))).apply(UnaryOp::Sqrt);
            let half_u_psi = c(0.5).mul(u()).mul(psi());
            let tail = if k0 > 0.0 {
                let r = k0.sqrt();
                let arg = c(2.0 * k0).mul(u()).add(c(2.0 * r).mul(psi()));
                c(c1 / (2.0 * r)).mul(arg.apply(UnaryOp::Abs).apply(UnaryOp::Ln))
            } else {
                let r = (-k0).sqrt();
                let arg = c(r / c1.sqrt()).mul(u());
                c(c1 / (2.0 * r)).mul(arg.apply(UnaryOp::Asin))
            };
            let antiderivative = half_u_psi.add(tail);
            match branch {
                Branch::Ascending => antiderivative.add(c(c2)),
                Branch::Descending => c(c2).sub(antiderivative),
            }
        }
        ProfileFamily::ConstantH { h0, c1, c2 } => c(0.5 * h0)
            .mul(u().powf(2.0))
            .add(c(c1).mul(u().apply(UnaryOp::Ln)))
            .add(c(c2)),
        ProfileFamily::Flat { c1, c2 } => c(c1).mul(u()).add(c(c2)),
        ProfileFamily::Minimal { c1, c2 } => c(c1).mul(u().apply(UnaryOp::Ln)).add(c(c2)),
        ProfileFamily::ParabolicSphere { c1, c2 } => c(0.5 * c1).mul(u().powf(2.0)).add(c(c2)),
    };
    Profile::new(Ast::new(f, &["u"]), u_range, ProfileKind::Spacelike)
}

/// Integrates the defining ODE of a family by RK4, starting from the closed
/// form's value (and slope) at the left end of `u_range`. Returns `(u, f)`.
///
/// Constant K: `f' = +-sqrt(c1 + K0 u^2)`. Constant H: `f'' = 2 H0 - f'/u`.
/// Flat: `f'' = 0`. Minimal: `f'' = -f'/u`. Parabolic sphere: `f'' = f'/u`.
pub fn profile_ode_oracle(
    fam: &ProfileFamily,
    u_range: (f64, f64),
    step: f64,
) -> Result<Vec<(f64, f64)>> {
    if !(step > 0.0) {
        return Err(Error::InvalidStep(step));
    }
    let closed = solve_profile(fam, u_range)?;
    let (u0, u1) = u_range;
    let start = closed.jet(u0, 1)?;
    let strip = |sol: Vec<(f64, [f64; 2])>| sol.into_iter().map(|(u, y)| (u, y[0])).collect();
    match *fam {
        ProfileFamily::ConstantK { k0, c1, branch, .. } => {
            let sign = if branch == Branch::Ascending {
                1.0
            } else {
                -1.0
            };
            let sol = rk4(
                |u, _: &[f64; 1]| {
                    let r = radicand(k0, c1, u);
                    if !(r > 0.0) {
                        return Err(Error::EmptyDomain { u });
                    }
                    Ok([sign * r.sqrt()])
                },
                u0,
                [start.value],
                u1,
                step,
            )?;
            Ok(sol.into_iter().map(|(u, y)| (u, y[0])).collect())
        }
        ProfileFamily::ConstantH { h0, .. } => Ok(strip(rk4(
            |u, y| Ok([y[1], 2.0 * h0 - y[1] / u]),
            u0,
            [start.value, start.d1],
            u1,
            step,
        )?)),
        ProfileFamily::Flat { .. } => Ok(strip(rk4(
            |_, y| Ok([y[1], 0.0]),
            u0,
            [start.value, start.d1],
            u1,
            step,
        )?)),
        ProfileFamily::Minimal { .. } => Ok(strip(rk4(
            |u, y| Ok([y[1], -y[1] / u]),
            u0,
            [start.value, start.d1],
            u1,
            step,
        )?)),
        ProfileFamily::ParabolicSphere { .. } => Ok(strip(rk4(
            |u, y| Ok([y[1], y[1] / u]),
            u0,
            [start.value, start.d1],
            u1,
            step,
        )?)),
    }
}

/// A rectangular sampling grid over `(u, v)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamGrid {
    pub u_range: (f64, f64),
    pub v_range: (f64, f64),
    pub nu: usize,
    pub nv: usize,
}

impl ParamGrid {
    pub fn new(u_range: (f64, f64), v_range: (f64, f64), nu: usize, nv: usize) -> Self {
        Self {
            u_range,
            v_range,
            nu,
            nv,
        }
    }

    /// Row-major points, `v` varying fastest.
    pub fn points(&self) -> Result<Vec<(f64, f64)>> {
        let us = crate::curve::grid(self.u_range, self.nu)?;
        let vs = crate::curve::grid(self.v_range, self.nv)?;
        Ok(us
            .iter()
            .flat_map(|&u| vs.iter().map(move |&v| (u, v)))
            .collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Stats {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
}

impl Stats {
    pub fn of(values: &[f64]) -> Option<Stats> {
        if values.is_empty() {
            return None;
        }
        let (mut min, mut max, mut sum) = (f64::INFINITY, f64::NEG_INFINITY, 0.0);
        for &x in values {
            min = min.min(x);
            max = max.max(x);
            sum += x;
        }
        Some(Stats {
            min,
            max,
            mean: sum / values.len() as f64,
        })
    }

    pub fn max_abs(&self) -> f64 {
        self.min.abs().max(self.max.abs())
    }
}

/// Gaussian and mean curvature of `sj` at every grid point, through the
/// general fundamental-form formulas. Entries are `(u, v, K, H)`.
pub fn curvature_field(sj: &SurfaceJet, grid: &ParamGrid) -> Result<Vec<[f64; 4]>> {
    grid.points()?
        .into_iter()
        .map(|(u, v)| {
            let f = fundamental_forms(sj, (u, v))?;
            Ok([u, v, f.gauss(), f.mean()])
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub family: ProfileFamily,
    pub grid: ParamGrid,
    pub k_stats: Option<Stats>,
    pub h_stats: Option<Stats>,
    pub max_abs_k_minus_k0: Option<f64>,
    pub max_abs_h_minus_h0: Option<f64>,
    pub max_abs_h2_minus_k: Option<f64>,
    /// `max |H^2 - K|` of the perturbed parabolic sphere.
    pub negative_control: Option<f64>,
    /// Set for the negative-K0 arcsine branch.
    pub extension: bool,
    pub tolerance: f64,
    pub pass: bool,
    pub error: Option<String>,
}

fn max_abs<I: IntoIterator<Item = f64>>(it: I) -> f64 {
    it.into_iter().fold(0.0, |m, x| {
        if x.abs() > m || x.is_nan() {
            x.abs()
        } else {
            m
        }
    })
}

/// Builds the family's surface, sweeps the grid through the general formulas
/// and measures the deviation from the family's defining property.
pub fn verify_family(fam: &ProfileFamily, grid: &ParamGrid, tol: f64) -> FamilyReport {
    let mut report = FamilyReport {
        family: *fam,
        grid: *grid,
        k_stats: None,
        h_stats: None,
        max_abs_k_minus_k0: None,
        max_abs_h_minus_h0: None,
        max_abs_h2_minus_k: None,
        negative_control: None,
        extension: fam.is_extension(),
        tolerance: tol,
        pass: false,
        error: None,
    };
    let sweep = |fam_profile: &Profile| -> Result<Vec<[f64; 4]>> {
        curvature_field(&make_revolution(fam_profile, grid.v_range), grid)
    };
    let field = match solve_profile(fam, grid.u_range).and_then(|p| sweep(&p)) {
        Ok(f) => f,
        Err(e) => {
            report.error = Some(e.to_string());
            return report;
        }
    };
    let ks: Vec<f64> = field.iter().map(|r| r[2]).collect();
    let hs: Vec<f64> = field.iter().map(|r| r[3]).collect();
    report.k_stats = Stats::of(&ks);
    report.h_stats = Stats::of(&hs);

    let (k_target, h_target) = fam.targets();
    let mut pass = true;
    if let Some(k0) = k_target {
        let m = max_abs(ks.iter().map(|k| k - k0));
        pass &= m < tol;
        report.max_abs_k_minus_k0 = Some(m);
    }
    if let Some(h0) = h_target {
        let m = max_abs(hs.iter().map(|h| h - h0));
        pass &= m < tol;
        report.max_abs_h_minus_h0 = Some(m);
    }
    if let ProfileFamily::ParabolicSphere { .. } = fam {
        let m = max_abs(field.iter().map(|r| r[3] * r[3] - r[2]));
        pass &= m < tol;
        report.max_abs_h2_minus_k = Some(m);

        let perturbed = solve_profile(fam, grid.u_range).and_then(|p| {
            let f =
                p.f.root
                    .add(Node::constant(NEGATIVE_CONTROL_EPS).mul(u().powf(3.0)));
            let q = Profile::new(Ast::new(f, &["u"]), p.u_range, p.kind)?;
            sweep(&q)
        });
        match perturbed {
            Ok(field) => {
                let m = max_abs(field.iter().map(|r| r[3] * r[3] - r[2]));
                pass &= m > NEGATIVE_CONTROL_FLOOR;
                report.negative_control = Some(m);
            }
            Err(e) => {
                report.error = Some(format!("negative control: {e}"));
                pass = false;
            }
        }
    }
    report.pass = pass;
    report
}
