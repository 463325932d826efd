//! Reference checks. Each check measures one geometric claim on closed-form
//! or seeded random data and compares every measurement against a bound.
//!
//! Deviations are absolute below magnitude 1 and relative above it:
//! `|a - b| / max(1, |b|)`.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::curve::{
    constant_torsion_cylindrical, frenet_frame, frenet_rhs, grid, hyperbolic_cylindrical,
    invariants, lightlike_plane, reconstruct_from_invariants, CurveJet, FrenetFrame,
};
use crate::error::{Error, Result};
use crate::expr::{eval_jet1, eval_jet2, Ast, Jet2};
use crate::random;
use crate::revolution::{
    curvature_field, make_revolution, profile_ode_oracle, rev_gauss, rev_mean, solve_profile,
    verify_family, Branch, ParamGrid, Profile, ProfileFamily, ProfileKind, VERIFY_TOL,
};
use crate::space::{CausalClass, Vec3};
use crate::surface::{
    fundamental_forms, graph_xy_curvatures, graph_yz_curvatures, laplacian_graph, SurfaceJet,
    YzOrder,
};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// Step of the central finite differences.
pub const FD_STEP: f64 = 1e-5;

/// `|a - b| / max(1, |b|)`.
pub fn deviation(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

fn vec_deviation(a: Vec3, b: Vec3) -> f64 {
    a.max_abs_diff(&b) / b.euclid_norm().max(1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    /// `measured < tolerance`; replaced by a tolerance override.
    Below,
    /// `measured > tolerance`; never overridden.
    Above,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Measure {
    pub label: String,
    pub measured: f64,
    pub tolerance: f64,
    pub bound: Bound,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub id: usize,
    pub name: &'static str,
    pub reference: &'static str,
    pub measures: Vec<Measure>,
    pub error: Option<String>,
    pub pass: bool,
    pub seconds: f64,
}

impl CheckReport {
    /// The measurement furthest from its bound, as `measured / tolerance`
    /// for upper bounds.
    pub fn worst(&self) -> Option<&Measure> {
        let key = |m: &Measure| match (m.pass, m.bound) {
            (false, _) => f64::INFINITY,
            (true, Bound::Below) => m.measured / m.tolerance,
            (true, Bound::Above) => m.tolerance / m.measured,
        };
        self.measures.iter().max_by(|a, b| {
            key(a)
                .partial_cmp(&key(b))
                .unwrap_or(std::cmp::Ordering::Equal)
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Replaces every upper-bound tolerance.
    pub tol: Option<f64>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            tol: None,
        }
    }
}

pub struct Ctx {
    rng: ChaCha8Rng,
    tol: Option<f64>,
    measures: Vec<Measure>,
}

impl Ctx {
    fn below(&mut self, label: impl Into<String>, measured: f64, tolerance: f64) {
        let tolerance = self.tol.unwrap_or(tolerance);
        self.measures.push(Measure {
            label: label.into(),
            measured,
            tolerance,
            bound: Bound::Below,
            pass: measured < tolerance,
        });
    }

    fn above(&mut self, label: impl Into<String>, measured: f64, tolerance: f64) {
        self.measures.push(Measure {
            label: label.into(),
            measured,
            tolerance,
            bound: Bound::Above,
            pass: measured > tolerance,
        });
    }
}

pub struct Check {
    pub id: usize,
    pub name: &'static str,
    pub reference: &'static str,
    run: fn(&mut Ctx) -> Result<()>,
}

impl std::fmt::Debug for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Check")
            .field("id", &self.id)
            .field("name", &self.name)
            .finish()
    }
}

/// All checks in a fixed order.
pub fn checks() -> &'static [Check] {
    &CHECKS
}

pub fn find_check(name: &str) -> Option<&'static Check> {
    CHECKS.iter().find(|c| c.name == name)
}

pub fn run_check(check: &Check, opts: &SuiteOptions) -> CheckReport {
    let mut ctx = Ctx {
        rng: ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(check.id as u64)),
        tol: opts.tol,
        measures: Vec::new(),
    };
    let start = Instant::now();
    let outcome = (check.run)(&mut ctx);
    let seconds = start.elapsed().as_secs_f64();
    let error = outcome.err().map(|e| e.to_string());
    let pass = error.is_none() && !ctx.measures.is_empty() && ctx.measures.iter().all(|m| m.pass);
    CheckReport {
        id: check.id,
        name: check.name,
        reference: check.reference,
        measures: ctx.measures,
        error,
        pass,
        seconds,
    }
}

pub fn run_suite(opts: &SuiteOptions) -> Vec<CheckReport> {
    CHECKS.iter().map(|c| run_check(c, opts)).collect()
}

static CHECKS: [Check; 14] = [
    Check {
        id: 1,
        name: "constant_torsion_curve",
        reference: "(cosh s, sinh s, t0 s + c1 e^s - c2 e^-s + c3) has curvature 1 and torsion t0",
        run: constant_torsion_curve,
    },
    Check {
        id: 2,
        name: "torsion_law",
        reference: "torsion of (cosh s, sinh s, z(s)) is z' - z'''",
        run: torsion_law,
    },
    Check {
        id: 3,
        name: "frenet_systems",
        reference: "frame derivatives follow the spacelike and timelike Frenet systems",
        run: frenet_systems,
    },
    Check {
        id: 4,
        name: "lightlike_plane",
        reference: "every lightlike curve lies in a plane x + y = c or x - y = c",
        run: lightlike_planes,
    },
    Check {
        id: 5,
        name: "metric_determinant",
        reference: "det g = -(x_u y_v - x_v y_u)^2",
        run: metric_determinant,
    },
    Check {
        id: 6,
        name: "graph_formulas",
        reference: "xy- and yz-graph curvature formulas agree with the general ones",
        run: graph_formulas,
    },
    Check {
        id: 7,
        name: "revolution_reduction",
        reference: "K = f'f''/u and H = (f'/u + f'')/2 on surfaces of revolution",
        run: revolution_reduction,
    },
    Check {
        id: 8,
        name: "revolution_examples",
        reference: "f = u is flat; f = ln u + u^2 has H = 2",
        run: revolution_examples,
    },
    Check {
        id: 9,
        name: "constant_gaussian_curvature",
        reference: "profiles with f' = sqrt(c1 + K0 u^2) have K = K0",
        run: constant_gaussian_curvature,
    },
    Check {
        id: 10,
        name: "constant_mean_curvature",
        reference: "f = H0 u^2/2 + c1 ln u + c2 has H = H0; c1 ln u + c2 is minimal",
        run: constant_mean_curvature,
    },
    Check {
        id: 11,
        name: "parabolic_sphere",
        reference: "f = c1 u^2/2 + c2 has H^2 = K; c1 = 2 gives H = 2, K = 4",
        run: parabolic_sphere,
    },
    Check {
        id: 12,
        name: "motion_invariance",
        reference: "K, H, curvature and torsion are invariant under motions",
        run: motion_invariance,
    },
    Check {
        id: 13,
        name: "profile_ode",
        reference: "closed-form profiles solve f' = sqrt(c1 + K0 u^2) and f'' + f'/u = 2 H0",
        run: profile_ode,
    },
    Check {
        id: 14,
        name: "jet_vs_finite_difference",
        reference: "jet derivatives match central finite differences",
        run: jet_vs_finite_difference,
    },
];

fn constant_torsion_curve(ctx: &mut Ctx) -> Result<()> {
    let (mut dk, mut dt) = (0.0f64, 0.0f64);
    for _ in 0..5 {
        let cs: [f64; 3] = std::array::from_fn(|_| ctx.rng.random_range(-1.0..=1.0));
        let c = constant_torsion_cylindrical(3.0, cs[0], cs[1], cs[2], (-1.0, 1.0))?;
        for s in c.sample_params(1000)? {
            let inv = invariants(&c, s)?;
            dk = dk.max((inv.kappa - 1.0).abs());
            dt = dt.max(deviation(inv.tau.ok_or(Error::ZeroCurvature { s })?, 3.0));
        }
    }
    ctx.below("max |kappa - 1|", dk, 1e-9);
    ctx.below("max |tau - 3|", dt, 1e-9);
    Ok(())
}

fn torsion_law(ctx: &mut Ctx) -> Result<()> {
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let z = Ast::new(random::bounded_expr(&mut ctx.rng, 1, 4), &["s"]);
        let c = hyperbolic_cylindrical(z.clone(), (-1.0, 1.0))?;
        for s in c.sample_params(50)? {
            let tau = invariants(&c, s)?.tau.ok_or(Error::ZeroCurvature { s })?;
            let j = eval_jet1(&z, s, 3)?;
            worst = worst.max(deviation(tau, j.d1 - j.d3));
        }
    }
    ctx.below("max |tau - (z' - z''')|", worst, 1e-9);
    Ok(())
}

fn frame_fd(c: &CurveJet, s: f64, h: f64) -> Result<FrenetFrame> {
    let (p, m) = (frenet_frame(c, s + h)?, frenet_frame(c, s - h)?);
    let d = |a: Vec3, b: Vec3| (1.0 / (2.0 * h)) * (a - b);
    Ok(FrenetFrame {
        t: d(p.t, m.t),
        n: d(p.n, m.n),
        b: d(p.b, m.b),
    })
}

fn frenet_systems(ctx: &mut Ctx) -> Result<()> {
    let (mut fd_worst, mut rec_worst) = (0.0f64, 0.0f64);
    for class in [CausalClass::Spacelike, CausalClass::Timelike] {
        for _ in 0..20 {
            let c = random::unit_speed_curve(&mut ctx.rng, class)?;
            let (a, b) = c.range();
            for s in grid((a + FD_STEP, b - FD_STEP), 20)? {
                let inv = invariants(&c, s)?;
                let tau = inv.tau.ok_or(Error::ZeroCurvature { s })?;
                let rhs = frenet_rhs(inv.class, inv.kappa, tau, &frenet_frame(&c, s)?)?;
                let fd = frame_fd(&c, s, FD_STEP)?;
                fd_worst = fd_worst
                    .max(vec_deviation(fd.t, rhs.dt))
                    .max(vec_deviation(fd.n, rhs.dn))
                    .max(vec_deviation(fd.b, rhs.db));
            }

            let kappa = |s: f64| invariants(&c, s).map(|i| i.kappa);
            let tau = |s: f64| invariants(&c, s)?.tau.ok_or(Error::ZeroCurvature { s });
            let init = (c.eval(a)?.pos, frenet_frame(&c, a)?);
            for sample in reconstruct_from_invariants(class, kappa, tau, init, (a, b), 1e-3)? {
                rec_worst = rec_worst.max(sample.point.max_abs_diff(&c.eval(sample.s)?.pos));
            }
        }
    }
    ctx.below(
        "max finite-difference frame derivative vs system",
        fd_worst,
        1e-5,
    );
    ctx.below("max reconstruction error at step 1e-3", rec_worst, 1e-6);
    Ok(())
}

fn lightlike_planes(ctx: &mut Ctx) -> Result<()> {
    let (mut residual, mut offset, mut wrong_sign) = (0.0f64, 0.0f64, 0usize);
    for _ in 0..20 {
        let (c, sign, c0) = random::lightlike_curve(&mut ctx.rng)?;
        let plane = lightlike_plane(&c, 200, 1e-10)?;
        residual = residual.max(plane.residual);
        offset = offset.max((plane.c0 - c0).abs());
        wrong_sign += usize::from(plane.sign != sign);
    }
    ctx.below("max |x + sign y - c0|", residual, 1e-10);
    ctx.below("max |c0 - constructed c|", offset, 1e-10);
    ctx.below("planes with the wrong sign", wrong_sign as f64, 0.5);
    Ok(())
}

fn surface_points(sj: &SurfaceJet, n: usize) -> Result<Vec<(f64, f64)>> {
    let (ur, vr) = sj.domain();
    ParamGrid::new(ur, vr, n, n).points()
}

fn metric_determinant(ctx: &mut Ctx) -> Result<()> {
    let (mut worst, mut skipped, mut total) = (0.0f64, 0usize, 0usize);
    for _ in 0..20 {
        let sj = random::surface(&mut ctx.rng)?;
        for p in surface_points(&sj, 10)? {
            total += 1;
            match fundamental_forms(&sj, p) {
                Ok(f) => {
                    let j2 = f.jacobian * f.jacobian;
                    worst = worst.max((f.det_g + j2).abs() / j2.max(1.0));
                }
                Err(Error::DegenerateMetric { .. }) => skipped += 1,
                Err(e) => return Err(e),
            }
        }
    }
    ctx.below("max |det g + J^2|", worst, 1e-9);
    ctx.below(
        "fraction of degenerate points skipped",
        skipped as f64 / total as f64,
        0.1,
    );
    Ok(())
}

fn graph_formulas(ctx: &mut Ctx) -> Result<()> {
    let d = random::SURFACE_DOMAIN;
    let (mut xy, mut lap, mut yz) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..20 {
        let u = random::graph_xy(&mut ctx.rng);
        let sj = SurfaceJet::graph_xy(u.clone(), d);
        for p in surface_points(&sj, 10)? {
            let (k, h) = graph_xy_curvatures(&u, p)?;
            let f = fundamental_forms(&sj, p)?;
            xy = xy.max(deviation(k, f.gauss())).max(deviation(h, f.mean()));
            lap = lap.max((2.0 * h - laplacian_graph(&u, p)?).abs());
        }
    }
    for _ in 0..20 {
        let (u, order) = random::graph_yz(&mut ctx.rng);
        let sj = SurfaceJet::graph_yz(u.clone(), order, d);
        for (y, z) in surface_points(&sj, 10)? {
            let (k, h) = graph_yz_curvatures(&u, (y, z))?;
            let params = match order {
                YzOrder::YZ => (y, z),
                YzOrder::ZY => (z, y),
            };
            let f = fundamental_forms(&sj, params)?;
            yz = yz.max(deviation(k, f.gauss())).max(deviation(h, f.mean()));
        }
    }
    ctx.below("xy-graphs: max deviation of (K, H)", xy, 1e-9);
    ctx.below("xy-graphs: max |2H - laplacian|", lap, 1e-12);
    ctx.below("yz-graphs: max deviation of (K, H)", yz, 1e-9);
    Ok(())
}

const REV_U: (f64, f64) = (1.0, 2.0);
const REV_V: (f64, f64) = (-1.0, 1.0);

fn revolution_reduction(ctx: &mut Ctx) -> Result<()> {
    let grid = ParamGrid::new(REV_U, REV_V, 50, 50);
    let (mut dk, mut dh) = (0.0f64, 0.0f64);
    for i in 0..10 {
        let kind = if i % 2 == 0 {
            ProfileKind::Spacelike
        } else {
            ProfileKind::Timelike
        };
        let p = Profile::new(random::profile_expr(&mut ctx.rng), REV_U, kind)?;
        for [u, _, k, h] in curvature_field(&make_revolution(&p, REV_V), &grid)? {
            dk = dk.max(deviation(k, rev_gauss(&p, u)?));
            dh = dh.max(deviation(h, rev_mean(&p, u)?));
        }
    }
    ctx.below("max |K - f'f''/u|", dk, 1e-9);
    ctx.below("max |H - (f'/u + f'')/2|", dh, 1e-9);
    Ok(())
}

fn field_max(p: &Profile, grid: &ParamGrid, f: impl Fn(f64, f64) -> f64) -> Result<f64> {
    Ok(curvature_field(&make_revolution(p, grid.v_range), grid)?
        .iter()
        .map(|r| f(r[2], r[3]))
        .fold(0.0, f64::max))
}

fn revolution_examples(ctx: &mut Ctx) -> Result<()> {
    let flat = Profile::parse("u", REV_U, ProfileKind::Spacelike)?;
    let m = field_max(&flat, &ParamGrid::new(REV_U, (0.0, 1.0), 50, 50), |k, _| {
        k.abs()
    })?;
    ctx.below("f = u: max |K|", m, 1e-9);
    let cmc = Profile::parse("ln(u) + u^2", REV_U, ProfileKind::Spacelike)?;
    let m = field_max(&cmc, &ParamGrid::new(REV_U, REV_V, 50, 50), |_, h| {
        (h - 2.0).abs()
    })?;
    ctx.below("f = ln u + u^2: max |H - 2|", m, 1e-9);
    Ok(())
}

fn family_error(r: &crate::revolution::FamilyReport) -> Result<()> {
    match &r.error {
        Some(e) => Err(Error::InvalidParams(format!("{}: {e}", r.family))),
        None => Ok(()),
    }
}

fn constant_gaussian_curvature(ctx: &mut Ctx) -> Result<()> {
    let cases = [
        (1.0, 0.0, REV_U),
        (1.0, 1.0, REV_U),
        (2.0, -1.0, REV_U),
        (-1.0, 4.0, (1.0, 1.9)),
    ];
    for (k0, c1, range) in cases {
        let fam = ProfileFamily::constant_k(k0, c1, 0.0);
        let r = verify_family(&fam, &ParamGrid::new(range, REV_V, 50, 50), VERIFY_TOL);
        family_error(&r)?;
        let tag = if fam.is_extension() {
            " (arcsine branch)"
        } else {
            ""
        };
        ctx.below(
            format!("K0={k0}, c1={c1}{tag}: max |K - K0|"),
            r.max_abs_k_minus_k0.unwrap_or(f64::NAN),
            1e-8,
        );

        let p = solve_profile(&fam, range)?;
        let f = |u: f64| eval_jet1(&p.f, u, 0).map(|j| j.value);
        let mut worst = 0.0f64;
        for u in grid((range.0 + FD_STEP, range.1 - FD_STEP), 200)? {
            let fd = (f(u + FD_STEP)? - f(u - FD_STEP)?) / (2.0 * FD_STEP);
            worst = worst.max((fd - (c1 + k0 * u * u).sqrt()).abs());
        }
        ctx.below(
            format!("K0={k0}, c1={c1}{tag}: max |f'_fd - sqrt(c1 + K0 u^2)|"),
            worst,
            1e-8,
        );
    }
    Ok(())
}

fn constant_mean_curvature(ctx: &mut Ctx) -> Result<()> {
    let grid = ParamGrid::new(REV_U, REV_V, 50, 50);
    for (h0, c1) in [(2.0, 1.0), (0.0, 1.0), (-1.0, 2.0)] {
        let r = verify_family(
            &ProfileFamily::ConstantH { h0, c1, c2: 0.0 },
            &grid,
            VERIFY_TOL,
        );
        family_error(&r)?;
        ctx.below(
            format!("H0={h0}, c1={c1}: max |H - H0|"),
            r.max_abs_h_minus_h0.unwrap_or(f64::NAN),
            1e-8,
        );
    }
    for (c1, c2) in [(1.0, 0.0), (-2.5, 1.0)] {
        let r = verify_family(&ProfileFamily::Minimal { c1, c2 }, &grid, 1e-9);
        family_error(&r)?;
        ctx.below(
            format!("minimal c1={c1}, c2={c2}: max |H|"),
            r.max_abs_h_minus_h0.unwrap_or(f64::NAN),
            1e-9,
        );
    }
    Ok(())
}

fn parabolic_sphere(ctx: &mut Ctx) -> Result<()> {
    let grid = ParamGrid::new(REV_U, REV_V, 50, 50);
    let r = verify_family(
        &ProfileFamily::ParabolicSphere { c1: 2.0, c2: 0.0 },
        &grid,
        1e-10,
    );
    family_error(&r)?;
    let get = |x: Option<f64>| x.unwrap_or(f64::NAN);
    ctx.below("max |H - 2|", get(r.max_abs_h_minus_h0), 1e-9);
    ctx.below("max |K - 4|", get(r.max_abs_k_minus_k0), 1e-9);
    ctx.below("max |H^2 - K|", get(r.max_abs_h2_minus_k), 1e-10);
    ctx.above(
        "perturbed f + 1e-3 u^3: max |H^2 - K|",
        get(r.negative_control),
        crate::revolution::NEGATIVE_CONTROL_FLOOR,
    );
    Ok(())
}

fn motion_invariance(ctx: &mut Ctx) -> Result<()> {
    let (mut surf, mut curve) = (0.0f64, 0.0f64);
    for i in 0..20 {
        let m = random::motion(&mut ctx.rng);
        let sj = random::surface(&mut ctx.rng)?;
        let moved = sj.transformed(m);
        for p in surface_points(&sj, 5)? {
            let f = match fundamental_forms(&sj, p) {
                Ok(f) => f,
                Err(Error::DegenerateMetric { .. }) => continue,
                Err(e) => return Err(e),
            };
            let g = fundamental_forms(&moved, p)?;
            surf = surf
                .max(deviation(g.gauss(), f.gauss()))
                .max(deviation(g.mean(), f.mean()));
        }

        let class = if i % 2 == 0 {
            CausalClass::Spacelike
        } else {
            CausalClass::Timelike
        };
        let c = random::unit_speed_curve(&mut ctx.rng, class)?;
        let moved = c.transformed(m);
        for s in c.sample_params(25)? {
            let (a, b) = (invariants(&c, s)?, invariants(&moved, s)?);
            curve = curve.max(deviation(b.kappa, a.kappa));
            if let (Some(ta), Some(tb)) = (a.tau, b.tau) {
                curve = curve.max(deviation(tb, ta));
            }
        }
    }
    ctx.below("surfaces: max change of (K, H)", surf, 1e-8);
    ctx.below("curves: max change of (kappa, tau)", curve, 1e-8);
    Ok(())
}

fn profile_ode(ctx: &mut Ctx) -> Result<()> {
    let descending = ProfileFamily::ConstantK {
        k0: 1.0,
        c1: 1.0,
        c2: 0.5,
        branch: Branch::Descending,
    };
    let families = [
        ProfileFamily::constant_k(1.0, 0.0, 0.0),
        ProfileFamily::constant_k(1.0, 1.0, 0.0),
        ProfileFamily::constant_k(2.0, -1.0, 0.0),
        descending,
        ProfileFamily::ConstantH {
            h0: 2.0,
            c1: 1.0,
            c2: 0.0,
        },
        ProfileFamily::ConstantH {
            h0: 0.0,
            c1: 1.0,
            c2: 0.0,
        },
        ProfileFamily::ConstantH {
            h0: -1.0,
            c1: 2.0,
            c2: 0.0,
        },
        ProfileFamily::Flat { c1: 0.7, c2: -1.0 },
        ProfileFamily::Minimal { c1: 1.0, c2: 0.0 },
        ProfileFamily::ParabolicSphere { c1: 2.0, c2: 0.0 },
    ];
    let (mut k_worst, mut h_worst) = (0.0f64, 0.0f64);
    for fam in families {
        let closed = solve_profile(&fam, REV_U)?;
        let mut worst = 0.0f64;
        for (u, f) in profile_ode_oracle(&fam, REV_U, 1e-3)? {
            worst = worst.max((f - eval_jet1(&closed.f, u, 0)?.value).abs());
        }
        match fam {
            ProfileFamily::ConstantK { .. } => k_worst = k_worst.max(worst),
            _ => h_worst = h_worst.max(worst),
        }
    }
    ctx.below("constant K: max |f_rk4 - f|", k_worst, 1e-9);
    ctx.below("second-order profiles: max |f_rk4 - f|", h_worst, 1e-9);
    Ok(())
}

fn jet_vs_finite_difference(ctx: &mut Ctx) -> Result<()> {
    let h = FD_STEP;
    let fd = |f: &dyn Fn(f64) -> Result<f64>, x: f64| -> Result<f64> {
        Ok((f(x + h)? - f(x - h)?) / (2.0 * h))
    };
    let (mut first, mut second) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let ast = Ast::new(random::bounded_expr(&mut ctx.rng, 1, 4), &["s"]);
        let value = |s: f64| Ok(eval_jet1(&ast, s, 0)?.value);
        let slope = |s: f64| Ok(eval_jet1(&ast, s, 1)?.d1);
        for _ in 0..10 {
            let s = ctx.rng.random_range(-1.9..=1.9);
            let j = eval_jet1(&ast, s, 3)?;
            first = first.max(deviation(fd(&value, s)?, j.d1));
            second = second.max(deviation(fd(&slope, s)?, j.d2));
        }
    }
    for _ in 0..100 {
        let ast = Ast::new(random::bounded_expr(&mut ctx.rng, 2, 4), &["u", "v"]);
        for _ in 0..10 {
            let (u, v) = (
                ctx.rng.random_range(-1.9..=1.9),
                ctx.rng.random_range(-1.9..=1.9),
            );
            let j = eval_jet2(&ast, u, v)?;
            let ast = &ast;
            let along_u = |g: fn(&Jet2) -> f64| move |x: f64| Ok(g(&eval_jet2(ast, x, v)?));
            let along_v = |g: fn(&Jet2) -> f64| move |y: f64| Ok(g(&eval_jet2(ast, u, y)?));
            first = first
                .max(deviation(fd(&along_u(|j| j.value), u)?, j.du))
                .max(deviation(fd(&along_v(|j| j.value), v)?, j.dv));
            second = second
                .max(deviation(fd(&along_u(|j| j.du), u)?, j.duu))
                .max(deviation(fd(&along_v(|j| j.du), v)?, j.duv))
                .max(deviation(fd(&along_u(|j| j.dv), u)?, j.duv))
                .max(deviation(fd(&along_v(|j| j.dv), v)?, j.dvv));
        }
    }
    ctx.below("first derivatives: max relative deviation", first, 1e-6);
    ctx.below("second derivatives: max relative deviation", second, 1e-4);
    Ok(())
}
