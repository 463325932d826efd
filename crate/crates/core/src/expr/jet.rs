//! Truncated Taylor arithmetic. Both jet types store true derivatives, not
//! Taylor coefficients.

use serde::{Deserialize, Serialize};

/// Value and first three derivatives of a function of one variable.
///
/// `order` bounds which derivatives are tracked; higher slots stay zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Jet1 {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
    #[serde(skip)]
    pub(crate) order: u8,
}

/// Value, gradient and Hessian of a function of two variables.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Jet2 {
    pub value: f64,
    pub du: f64,
    pub dv: f64,
    pub duu: f64,
    pub duv: f64,
    pub dvv: f64,
}

/// Operations shared by the jet types, enough to evaluate an expression tree.
pub trait Jet: Copy {
    fn constant_like(&self, c: f64) -> Self;
    fn value(&self) -> f64;
    /// Highest derivative order carried.
    fn order(&self) -> usize;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn scale(&self, k: f64) -> Self;
    /// `f(self)` given `f` and its first three derivatives at `self.value()`.
    fn chain(&self, f: [f64; 4]) -> Self;
    fn is_finite(&self) -> bool;
}

impl Jet1 {
    pub fn constant(c: f64, order: usize) -> Self {
        Self {
            value: c,
            d1: 0.0,
            d2: 0.0,
            d3: 0.0,
            order: order.min(3) as u8,
        }
    }

    pub fn variable(s: f64, order: usize) -> Self {
        let mut j = Self::constant(s, order);
        if order >= 1 {
            j.d1 = 1.0;
        }
        j
    }

    /// Builds a jet from known derivatives (truncated to `order`).
    pub fn from_derivs(d: [f64; 4], order: usize) -> Self {
        let order = order.min(3);
        let keep = |k: usize| if k <= order { d[k] } else { 0.0 };
        Self {
            value: d[0],
            d1: keep(1),
            d2: keep(2),
            d3: keep(3),
            order: order as u8,
        }
    }

    pub fn derivs(&self) -> [f64; 4] {
        [self.value, self.d1, self.d2, self.d3]
    }

    fn truncated(mut self) -> Self {
        if self.order < 3 {
            self.d3 = 0.0;
        }
        if self.order < 2 {
            self.d2 = 0.0;
        }
        if self.order < 1 {
            self.d1 = 0.0;
        }
        self
    }
}

impl Jet for Jet1 {
    fn constant_like(&self, c: f64) -> Self {
        Jet1::constant(c, self.order as usize)
    }

    fn value(&self) -> f64 {
        self.value
    }

    fn order(&self) -> usize {
        self.order as usize
    }

    fn add(&self, o: &Self) -> Self {
        Self {
            value: self.value + o.value,
            d1: self.d1 + o.d1,
            d2: self.d2 + o.d2,
            d3: self.d3 + o.d3,
            order: self.order.max(o.order),
        }
    }

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-1.0))
    }

    fn mul(&self, o: &Self) -> Self {
        let (a, b) = (self, o);
        Self {
            value: a.value * b.value,
            d1: a.d1 * b.value + a.value * b.d1,
            d2: a.d2 * b.value + 2.0 * a.d1 * b.d1 + a.value * b.d2,
            d3: a.d3 * b.value + 3.0 * (a.d2 * b.d1 + a.d1 * b.d2) + a.value * b.d3,
            order: a.order.max(b.order),
        }
        .truncated()
    }

    fn scale(&self, k: f64) -> Self {
        Self {
            value: k * self.value,
            d1: k * self.d1,
            d2: k * self.d2,
            d3: k * self.d3,
            order: self.order,
        }
    }

    // Faa di Bruno up to third order.
    fn chain(&self, f: [f64; 4]) -> Self {
        let (g1, g2, g3) = (self.d1, self.d2, self.d3);
        Self {
            value: f[0],
            d1: f[1] * g1,
            d2: f[2] * g1 * g1 + f[1] * g2,
            d3: f[3] * g1 * g1 * g1 + 3.0 * f[2] * g1 * g2 + f[1] * g3,
            order: self.order,
        }
        .truncated()
    }

    fn is_finite(&self) -> bool {
        self.value.is_finite() && self.d1.is_finite() && self.d2.is_finite() && self.d3.is_finite()
    }
}

impl Jet2 {
    pub fn constant(c: f64) -> Self {
        Self {
            value: c,
            ..Self::default()
        }
    }

    pub fn var_u(u: f64) -> Self {
        Self {
            value: u,
            du: 1.0,
            ..Self::default()
        }
    }

    pub fn var_v(v: f64) -> Self {
        Self {
            value: v,
            dv: 1.0,
            ..Self::default()
        }
    }
}

impl Jet for Jet2 {
    fn constant_like(&self, c: f64) -> Self {
        Jet2::constant(c)
    }

    fn value(&self) -> f64 {
        self.value
    }

    fn order(&self) -> usize {
        2
    }

    fn add(&self, o: &Self) -> Self {
        Self {
            value: self.value + o.value,
            du: self.du + o.du,
            dv: self.dv + o.dv,
            duu: self.duu + o.duu,
            duv: self.duv + o.duv,
            dvv: self.dvv + o.dvv,
        }
    }

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-1.0))
    }

    fn mul(&self, o: &Self) -> Self {
        let (a, b) = (self, o);
        Self {
            value: a.value * b.value,
            du: a.du * b.value + a.value * b.du,
            dv: a.dv * b.value + a.value * b.dv,
            duu: a.duu * b.value + 2.0 * a.du * b.du + a.value * b.duu,
            duv: a.duv * b.value + a.du * b.dv + a.dv * b.du + a.value * b.duv,
            dvv: a.dvv * b.value + 2.0 * a.dv * b.dv + a.value * b.dvv,
        }
    }

    fn scale(&self, k: f64) -> Self {
        Self {
            value: k * self.value,
            du: k * self.du,
            dv: k * self.dv,
            duu: k * self.duu,
            duv: k * self.duv,
            dvv: k * self.dvv,
        }
    }

    fn chain(&self, f: [f64; 4]) -> Self {
        Self {
            value: f[0],
            du: f[1] * self.du,
            dv: f[1] * self.dv,
            duu: f[2] * self.du * self.du + f[1] * self.duu,
            duv: f[2] * self.du * self.dv + f[1] * self.duv,
            dvv: f[2] * self.dv * self.dv + f[1] * self.dvv,
        }
    }

    fn is_finite(&self) -> bool {
        [self.value, self.du, self.dv, self.duu, self.duv, self.dvv]
            .iter()
            .all(|x| x.is_finite())
    }
}
