//! Seeded generators of random test objects: bounded expressions, unit-speed
//! and lightlike curves, admissible surfaces, graphs and motions.
//!
//! Every generator is a pure function of the RNG state, so a fixed seed
//! reproduces the same objects.

use rand::Rng;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::curve::CurveJet;
use crate::error::Result;
use crate::expr::{Ast, Node, UnaryOp};
use crate::motion::PiMotion;
use crate::space::CausalClass;
use crate::surface::{Domain, SurfaceJet, YzOrder};

/// Bound on the variables fed to [`bounded_expr`].
pub const VAR_BOUND: f64 = 2.0;

fn c(x: f64) -> Node {
    Node::constant(x)
}

fn sym<R: Rng + ?Sized>(rng: &mut R, r: f64) -> f64 {
    rng.random_range(-r..=r)
}

/// A magnitude in `[lo, hi]` with a random sign.
fn signed<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    let m = rng.random_range(lo..=hi);
    if rng.random_bool(0.5) {
        m
    } else {
        -m
    }
}

/// A random expression in `nvars` variables, analytic on the box
/// `|x_i| <= VAR_BOUND` and bounded there by about 3.
///
/// Every node keeps that bound: leaves are `c0 + c1 x_i` with `|c| <= 1/2`,
/// and each operator is scaled or shifted so that arguments of `ln`, `sqrt`,
/// division and non-integer powers stay at least 1 and `asin` sees at most
/// 0.9 in magnitude.
pub fn bounded_expr<R: Rng + ?Sized>(rng: &mut R, nvars: usize, depth: usize) -> Node {
    if depth == 0 || rng.random_bool(0.15) {
        let leaf = c(sym(rng, 0.5));
        return if nvars == 0 {
            leaf
        } else {
            let i = rng.random_range(0..nvars);
            leaf.add(c(sym(rng, 0.5)).mul(Node::var(i)))
        };
    }
    let sub = |rng: &mut R| bounded_expr(rng, nvars, depth - 1);
    let a = sub(rng);
    let shift = |x: Node, f: UnaryOp| c(2.0).add(x.apply(f));
    match rng.random_range(0..16) {
        0 => a.apply(UnaryOp::Sin),
        1 => a.apply(UnaryOp::Cos),
        2 => a.apply(UnaryOp::Tanh),
        3 => c(0.5).mul(a.add(sub(rng))),
        4 => c(0.5).mul(a.sub(sub(rng))),
        5 => c(0.3).mul(a.mul(sub(rng))),
        6 => a.div(shift(sub(rng), UnaryOp::Sin)),
        7 => shift(a, UnaryOp::Cos).apply(UnaryOp::Ln),
        8 => shift(a, UnaryOp::Sin).apply(UnaryOp::Sqrt),
        9 => c(0.3).mul(a).apply(UnaryOp::Exp),
        10 => c(0.3).mul(a).apply(UnaryOp::Sinh),
        11 => c(0.3).mul(a).apply(UnaryOp::Cosh),
        12 => c(0.3).mul(a.powf(2.0)),
        13 => c(0.1).mul(a.powf(3.0)),
        14 => c(0.9).mul(a.apply(UnaryOp::Tanh)).apply(UnaryOp::Asin),
        _ => match rng.random_range(0..3) {
            0 => a.neg(),
            1 => c(1.5).add(a.apply(UnaryOp::Sin)).apply(UnaryOp::Abs),
            _ => {
                let p = [-1.5, -0.5, 0.5][rng.random_range(0..3)];
                shift(a, UnaryOp::Cos).powf(p)
            }
        },
    }
}

/// A random motion with `|theta| <= 1` and the other parameters in `[-2, 2]`.
pub fn motion<R: Rng + ?Sized>(rng: &mut R) -> PiMotion {
    PiMotion {
        theta: sym(rng, 1.0),
        a: sym(rng, 2.0),
        b: sym(rng, 2.0),
        c: sym(rng, 2.0),
        d: sym(rng, 2.0),
        e: sym(rng, 2.0),
    }
}

/// Parameter range of [`unit_speed_curve`].
pub const CURVE_RANGE: (f64, f64) = (1.0, 2.0);

/// A unit-speed admissible curve of the given class on [`CURVE_RANGE`],
/// moved by a random motion.
///
/// The top view has hyperbolic slope angle `phi(s)`: the tangent is
/// `(sinh phi, cosh phi)` for timelike and `(cosh phi, sinh phi)` for
/// spacelike curves, so the curvature is `|phi'|`. Two closed-form
/// families are used: `phi = k ln s + phi0` (curvature `|k| / s`) and
/// `phi = a s + b` (constant curvature `|a|`). The height is a random
/// bounded expression.
pub fn unit_speed_curve<R: Rng + ?Sized>(rng: &mut R, class: CausalClass) -> Result<CurveJet> {
    assert!(
        matches!(class, CausalClass::Spacelike | CausalClass::Timelike),
        "unit-speed curves are spacelike or timelike"
    );
    let s = Node::var;
    let (sh, ch) = if rng.random_bool(0.5) {
        let k = if rng.random_bool(0.5) {
            signed(rng, 0.3, 0.7)
        } else {
            signed(rng, 1.3, 2.0)
        };
        let phi0 = sym(rng, 0.5);
        let (e, f) = (phi0.exp(), (-phi0).exp());
        // int s^k = s^(k+1)/(k+1), int s^-k = s^(1-k)/(1-k)
        let p = || c(e / (k + 1.0)).mul(s(0).powf(k + 1.0));
        let q = || c(f / (1.0 - k)).mul(s(0).powf(1.0 - k));
        (c(0.5).mul(p().sub(q())), c(0.5).mul(p().add(q())))
    } else {
        let a = signed(rng, 0.5, 1.5);
        let b = sym(rng, 0.5);
        let arg = || c(a).mul(s(0)).add(c(b));
        (
            c(1.0 / a).mul(arg().apply(UnaryOp::Cosh)),
            c(1.0 / a).mul(arg().apply(UnaryOp::Sinh)),
        )
    };
    let (x, y) = match class {
        CausalClass::Timelike => (sh, ch),
        _ => (ch, sh),
    };
    let z = bounded_expr(rng, 1, 3);
    let m = motion(rng);
    let vars = ["s"];
    Ok(CurveJet::from_exprs(
        Ast::new(x, &vars),
        Ast::new(y, &vars),
        Ast::new(z, &vars),
        CURVE_RANGE,
    )?
    .transformed(m))
}

/// Random lightlike curve `(g(t), sign' g(t) + c, z(t))` on `[-1, 1]` with
/// `g` strictly monotone. Returns the curve, the sign `s` of its plane
/// `x + s y = c0`, and `c0`.
pub fn lightlike_curve<R: Rng + ?Sized>(rng: &mut R) -> Result<(CurveJet, i8, f64)> {
    let t = || Node::var(0);
    let a = rng.random_range(0.5..2.0);
    let b = sym(rng, 0.45 * a);
    // g' >= a - |b| > 0 on [-1, 1] in every template
    let g = match rng.random_range(0..4) {
        0 => c(a).mul(t()).add(c(b).mul(t().apply(UnaryOp::Tanh))),
        1 => c(a).mul(t()).add(c(b).mul(t().apply(UnaryOp::Sin))),
        2 => c(a).mul(t().apply(UnaryOp::Exp)).add(c(b.abs()).mul(t())),
        _ => c(a).mul(t().powf(3.0)).add(c(b.abs() + 0.1).mul(t())),
    };
    let g = if rng.random_bool(0.5) { g } else { g.neg() };
    let c0 = sym(rng, 2.0);
    let plane_sign: i8 = if rng.random_bool(0.5) { 1 } else { -1 };
    // x + sign*y = c0  <=>  y = sign*(c0 - x)
    let y = if plane_sign == 1 {
        c(c0).sub(g.clone())
    } else {
        g.clone().sub(c(c0))
    };
    let z = bounded_expr(rng, 1, 3);
    let vars = ["t"];
    let curve = CurveJet::from_exprs(
        Ast::new(g, &vars),
        Ast::new(y, &vars),
        Ast::new(z, &vars),
        (-1.0, 1.0),
    )?;
    Ok((curve, plane_sign, c0))
}

/// Domain of the random surfaces and graphs.
pub const SURFACE_DOMAIN: Domain = ((-1.0, 1.0), (-1.0, 1.0));

/// A random surface whose top view is a perturbed invertible linear map,
/// `x = a u + b v + eps B1`, `y = c u + d v + eps B2`, `z = B3`.
/// Admissibility is likely but not guaranteed at every point.
pub fn surface<R: Rng + ?Sized>(rng: &mut R) -> Result<SurfaceJet> {
    let (u, v) = (|| Node::var(0), || Node::var(1));
    let lin = |rng: &mut R, diag: bool| {
        let (p, q) = if diag {
            (signed(rng, 1.0, 2.0), sym(rng, 0.3))
        } else {
            (sym(rng, 0.3), signed(rng, 1.0, 2.0))
        };
        c(p).mul(u()).add(c(q).mul(v()))
    };
    let x = lin(rng, true).add(c(0.1).mul(bounded_expr(rng, 2, 3)));
    let y = lin(rng, false).add(c(0.1).mul(bounded_expr(rng, 2, 3)));
    let z = bounded_expr(rng, 2, 3);
    let vars = ["u", "v"];
    SurfaceJet::from_exprs(
        Ast::new(x, &vars),
        Ast::new(y, &vars),
        Ast::new(z, &vars),
        SURFACE_DOMAIN,
    )
}

/// A random height function `u(x, y)`.
pub fn graph_xy<R: Rng + ?Sized>(rng: &mut R) -> Ast {
    Ast::new(bounded_expr(rng, 2, 3), &["x", "y"])
}

/// A random `x = u(y, z)` with `|u_z| >= |a| / 2 > 0`:
/// `u = a z + F(y) + b sin(z + G(y))`, `|b| < |a| / 2`. Returns the function
/// and the positively oriented parameter order.
pub fn graph_yz<R: Rng + ?Sized>(rng: &mut R) -> (Ast, YzOrder) {
    let a = signed(rng, 0.5, 2.0);
    let b = sym(rng, 0.49 * a.abs());
    // F, G depend on y only; the variable index 0 is y
    let f = bounded_expr(rng, 1, 3);
    let g = bounded_expr(rng, 1, 2);
    let z = Node::var(1);
    let u = c(a)
        .mul(z.clone())
        .add(f)
        .add(c(b).mul(z.add(g).apply(UnaryOp::Sin)));
    (Ast::new(u, &["y", "z"]), YzOrder::positive_for(a))
}

/// A random profile `f(u)` for `u` in `[1, 2]`.
pub fn profile_expr<R: Rng + ?Sized>(rng: &mut R) -> Ast {
    Ast::new(bounded_expr(rng, 1, 3), &["u"])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{classify_curve, is_admissible, is_arclength, lightlike_plane};
    use crate::expr::eval_jet1;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn bounded_expressions_evaluate_on_the_box() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let ast = Ast::new(bounded_expr(&mut rng, 1, 4), &["s"]);
            for i in 0..=20 {
                let s = -VAR_BOUND + 0.2 * i as f64;
                let j = eval_jet1(&ast, s, 3).unwrap_or_else(|e| panic!("{ast} at {s}: {e}"));
                assert!(j.value.abs() < 5.0, "{ast} at {s}: {}", j.value);
            }
        }
    }

    #[test]
    fn curves_have_the_requested_class() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for class in [CausalClass::Spacelike, CausalClass::Timelike] {
            for _ in 0..20 {
                let cj = unit_speed_curve(&mut rng, class).unwrap();
                assert_eq!(classify_curve(&cj, 50), Ok(class));
                assert_eq!(is_arclength(&cj, 50, 1e-10), Ok(true));
                assert_eq!(is_admissible(&cj, 50), Ok(true));
            }
        }
    }

    #[test]
    fn lightlike_curves_lie_in_their_plane() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let (cj, sign, c0) = lightlike_curve(&mut rng).unwrap();
            let plane = lightlike_plane(&cj, 50, 1e-10).unwrap();
            assert_eq!(plane.sign, sign);
            assert!((plane.c0 - c0).abs() < 1e-12);
        }
    }
}
