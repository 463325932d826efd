//! Vectors of the affine model with the indefinite pseudo-isotropic scalar
//! product, the top-view projection and causal classification.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slack allowed on the `cosh` argument of [`pseudo_angle`] below 1.
pub const COSH_CLAMP_TOL: f64 = 1e-12;

/// Point or vector `(x, y, z)` of the affine model.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3::new(0.0, 0.0, 0.0);
    /// The isotropic direction; also the surface normal and curve binormal.
    pub const E3: Vec3 = Vec3::new(0.0, 0.0, 1.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    /// Like [`Vec3::new`] but rejects NaN and infinite components.
    pub fn try_new(x: f64, y: f64, z: f64) -> Result<Self> {
        let v = Self::new(x, y, z);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite)
        }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    /// Pseudo-isotropic scalar product. Unchecked variant of [`pi_dot`].
    pub fn dot(&self, other: &Vec3) -> f64 {
        if self.x == 0.0 && self.y == 0.0 && other.x == 0.0 && other.y == 0.0 {
            self.z * other.z
        } else {
            self.x * other.x - self.y * other.y
        }
    }

    /// `<u, u>`; the sign decides the causal character.
    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn top_view(&self) -> Vec3 {
        Vec3::new(self.x, self.y, 0.0)
    }

    /// True when the top view vanishes but the vector does not.
    pub fn is_isotropic(&self) -> bool {
        self.x == 0.0 && self.y == 0.0 && self.z != 0.0
    }

    pub fn causal_class(&self) -> CausalClass {
        causal_class(*self)
    }

    /// Euclidean length, used only for residual bookkeeping.
    pub fn euclid_norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn max_abs_diff(&self, other: &Vec3) -> f64 {
        (self.x - other.x)
            .abs()
            .max((self.y - other.y).abs())
            .max((self.z - other.z).abs())
    }
}

impl fmt::Display for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl AddAssign for Vec3 {
    fn add_assign(&mut self, rhs: Vec3) {
        *self = *self + rhs;
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<Vec3> for f64 {
    type Output = Vec3;
    fn mul(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self * rhs.x, self * rhs.y, self * rhs.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, rhs: f64) -> Vec3 {
        rhs * self
    }
}

/// Causal character of a vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CausalClass {
    Spacelike,
    Timelike,
    Lightlike,
    Isotropic,
}

impl fmt::Display for CausalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CausalClass::Spacelike => "spacelike",
            CausalClass::Timelike => "timelike",
            CausalClass::Lightlike => "lightlike",
            CausalClass::Isotropic => "isotropic",
        };
        f.write_str(s)
    }
}

/// Scalar product with a finiteness check on both arguments.
///
/// Returns `u.z * v.z` when both top views vanish and `u.x v.x - u.y v.y`
/// otherwise.
pub fn pi_dot(u: Vec3, v: Vec3) -> Result<f64> {
    if !u.is_finite() || !v.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(u.dot(&v))
}

pub fn top_view(u: Vec3) -> Vec3 {
    u.top_view()
}

/// The zero vector counts as spacelike.
pub fn causal_class(u: Vec3) -> CausalClass {
    causal_class_rel(u, 0.0)
}

/// Causal class where `|<u,u>| <= rel_tol * (x^2 + y^2)` counts as lightlike.
pub fn causal_class_rel(u: Vec3, rel_tol: f64) -> CausalClass {
    if u == Vec3::ZERO {
        return CausalClass::Spacelike;
    }
    if u.x == 0.0 && u.y == 0.0 {
        return CausalClass::Isotropic;
    }
    let q = u.x * u.x - u.y * u.y;
    let scale = u.x * u.x + u.y * u.y;
    if q.abs() <= rel_tol * scale {
        CausalClass::Lightlike
    } else if q > 0.0 {
        CausalClass::Spacelike
    } else {
        CausalClass::Timelike
    }
}

fn require_timelike(u: Vec3) -> Result<()> {
    if !u.is_finite() {
        return Err(Error::NonFinite);
    }
    if causal_class(u) != CausalClass::Timelike {
        return Err(Error::NotTimelike);
    }
    Ok(())
}

/// Whether `v` lies in the timelike cone containing `u`.
pub fn same_timelike_cone(u: Vec3, v: Vec3) -> Result<bool> {
    require_timelike(u)?;
    require_timelike(v)?;
    Ok(u.dot(&v) < 0.0)
}

/// Lorentzian angle `phi >= 0` between the top views of two timelike vectors
/// of the same cone: `<u,v> = -sqrt(-<u,u>) sqrt(-<v,v>) cosh(phi)`.
pub fn pseudo_angle(u: Vec3, v: Vec3) -> Result<f64> {
    if !same_timelike_cone(u, v)? {
        return Err(Error::DifferentCones);
    }
    let c = -u.dot(&v) / ((-u.norm_sq()).sqrt() * (-v.norm_sq()).sqrt());
    // reverse Cauchy-Schwarz gives c >= 1 up to rounding
    let c = if (1.0 - COSH_CLAMP_TOL..1.0).contains(&c) {
        1.0
    } else {
        c
    };
    Ok(c.acosh())
}

/// 3x3 determinant with rows `a`, `b`, `c`.
pub fn det3(a: Vec3, b: Vec3, c: Vec3) -> f64 {
    a.x * (b.y * c.z - b.z * c.y) - a.y * (b.x * c.z - b.z * c.x) + a.z * (b.x * c.y - b.y * c.x)
}

/// Determinant of the top views, `a.x b.y - a.y b.x`.
pub fn det2_top(a: Vec3, b: Vec3) -> f64 {
    a.x * b.y - a.y * b.x
}
