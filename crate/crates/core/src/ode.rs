//! Classical fixed-step fourth-order Runge-Kutta.

use crate::error::{Error, Result};

/// Integrates `y' = rhs(t, y)` from `t0` to `t1` in equal steps no longer
/// than `step`. Returns every node including both endpoints.
///
/// The right-hand side may fail; the first error aborts the integration.
pub fn rk4<const N: usize, F>(
    mut rhs: F,
    t0: f64,
    y0: [f64; N],
    t1: f64,
    step: f64,
) -> Result<Vec<(f64, [f64; N])>>
where
    F: FnMut(f64, &[f64; N]) -> Result<[f64; N]>,
{
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::InvalidStep(step));
    }
    let span = t1 - t0;
    let n = ((span.abs() / step).ceil() as usize).max(1);
    let h = span / n as f64;

    let axpy = |y: &[f64; N], k: &[f64; N], a: f64| -> [f64; N] {
        let mut out = *y;
        for (o, ki) in out.iter_mut().zip(k) {
            *o += a * ki;
        }
        out
    };

    let mut out = Vec::with_capacity(n + 1);
    let mut y = y0;
    out.push((t0, y));
    for i in 0..n {
        let t = t0 + i as f64 * h;
        let k1 = rhs(t, &y)?;
        let k2 = rhs(t + 0.5 * h, &axpy(&y, &k1, 0.5 * h))?;
        let k3 = rhs(t + 0.5 * h, &axpy(&y, &k2, 0.5 * h))?;
        let k4 = rhs(t + h, &axpy(&y, &k3, h))?;
        for j in 0..N {
            y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        }
        let t_next = if i + 1 == n {
            t1
        } else {
            t0 + (i + 1) as f64 * h
        };
        out.push((t_next, y));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_growth() {
        let sol = rk4(|_, y: &[f64; 1]| Ok([y[0]]), 0.0, [1.0], 1.0, 1e-3).unwrap();
        let (t, y) = *sol.last().unwrap();
        assert_eq!(t, 1.0);
        assert!((y[0] - 1f64.exp()).abs() < 1e-12);
        assert_eq!(sol.len(), 1001);
    }

    #[test]
    fn harmonic_oscillator_fourth_order() {
        // halving the step should cut the error by ~16
        let err = |h: f64| {
            let sol = rk4(|_, y: &[f64; 2]| Ok([y[1], -y[0]]), 0.0, [0.0, 1.0], 2.0, h).unwrap();
            (sol.last().unwrap().1[0] - 2f64.sin()).abs()
        };
        let ratio = err(0.1) / err(0.05);
        assert!(ratio > 14.0 && ratio < 18.0, "ratio {ratio}");
    }

    #[test]
    fn backwards_and_bad_steps() {
        let sol = rk4(|_, _: &[f64; 1]| Ok([1.0]), 1.0, [0.0], 0.0, 0.1).unwrap();
        assert!((sol.last().unwrap().1[0] + 1.0).abs() < 1e-14);
        assert_eq!(
            rk4(|_, _: &[f64; 1]| Ok([1.0]), 0.0, [0.0], 1.0, 0.0).unwrap_err(),
            Error::InvalidStep(0.0)
        );
        assert!(rk4(|_, _: &[f64; 1]| Ok([1.0]), 0.0, [0.0], 1.0, -1.0).is_err());
    }
}
