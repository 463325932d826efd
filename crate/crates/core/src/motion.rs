//! The six-parameter group of pseudo-isotropic motions.
//!
//! Motions are stored in diagonal coordinates, where the top-view metric is
//! `dx^2 - dy^2`: a hyperbolic rotation by `theta` about the z-axis, a
//! translation `(a, b, c)` and a shear `z += d x + e y`. In null coordinates
//! `X = x + y`, `Y = x - y` the rotation is the scaling `X -> qX`,
//! `Y -> Y/q` with `q = e^theta`; see [`PiMotion::from_null`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::Vec3;

/// `p' = (a + p.x cosh t + p.y sinh t, b + p.x sinh t + p.y cosh t, c + d p.x + e p.y + p.z)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PiMotion {
    pub theta: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
}

impl Default for PiMotion {
    fn default() -> Self {
        Self::IDENTITY
    }
}

fn boost(theta: f64, x: f64, y: f64) -> (f64, f64) {
    let (sh, ch) = (theta.sinh(), theta.cosh());
    (x * ch + y * sh, x * sh + y * ch)
}

impl PiMotion {
    pub const IDENTITY: PiMotion = PiMotion {
        theta: 0.0,
        a: 0.0,
        b: 0.0,
        c: 0.0,
        d: 0.0,
        e: 0.0,
    };

    pub fn rotation(theta: f64) -> Self {
        Self {
            theta,
            ..Self::IDENTITY
        }
    }

    pub fn translation(a: f64, b: f64, c: f64) -> Self {
        Self {
            a,
            b,
            c,
            ..Self::IDENTITY
        }
    }

    /// Builds the motion written in null coordinates `(X, Y, z)`:
    /// `X' = a + qX`, `Y' = b + Y/q`, `z' = c + dX + eY + z`, `q > 0`.
    pub fn from_null(a: f64, b: f64, c: f64, d: f64, e: f64, q: f64) -> Result<Self> {
        if !(q > 0.0) || !q.is_finite() {
            return Err(Error::NonPositiveScaling(q));
        }
        Ok(Self {
            theta: q.ln(),
            a: 0.5 * (a + b),
            b: 0.5 * (a - b),
            c,
            d: d + e,
            e: d - e,
        })
    }

    pub fn apply(&self, p: Vec3) -> Vec3 {
        let (x, y) = boost(self.theta, p.x, p.y);
        Vec3::new(
            self.a + x,
            self.b + y,
            self.c + self.d * p.x + self.e * p.y + p.z,
        )
    }

    /// Action on difference vectors (the translation part dropped).
    pub fn apply_linear(&self, v: Vec3) -> Vec3 {
        let (x, y) = boost(self.theta, v.x, v.y);
        Vec3::new(x, y, self.d * v.x + self.e * v.y + v.z)
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &PiMotion) -> PiMotion {
        let (ta, tb) = boost(self.theta, inner.a, inner.b);
        let (d, e) = boost(inner.theta, self.d, self.e);
        PiMotion {
            theta: self.theta + inner.theta,
            a: self.a + ta,
            b: self.b + tb,
            c: self.c + inner.c + self.d * inner.a + self.e * inner.b,
            d: d + inner.d,
            e: e + inner.e,
        }
    }

    pub fn inverse(&self) -> PiMotion {
        let (ta, tb) = boost(-self.theta, self.a, self.b);
        let (d, e) = boost(-self.theta, self.d, self.e);
        PiMotion {
            theta: -self.theta,
            a: -ta,
            b: -tb,
            c: -self.c + d * self.a + e * self.b,
            d: -d,
            e: -e,
        }
    }
}

pub fn apply_motion(m: &PiMotion, p: Vec3) -> Vec3 {
    m.apply(p)
}

pub fn compose_motion(outer: &PiMotion, inner: &PiMotion) -> PiMotion {
    outer.compose(inner)
}

pub fn invert_motion(m: &PiMotion) -> PiMotion {
    m.inverse()
}

/// `(x, y, z) -> (x + y, x - y, z)`; the metric becomes `dX dY`.
pub fn to_null(p: Vec3) -> Vec3 {
    Vec3::new(p.x + p.y, p.x - p.y, p.z)
}

pub fn from_null(p: Vec3) -> Vec3 {
    Vec3::new(0.5 * (p.x + p.y), 0.5 * (p.x - p.y), p.z)
}
