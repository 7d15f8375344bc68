//! Special functions needed by the closed-form optimizers: the principal
//! branch of the Lambert W function and real positive roots of quartics.

use crate::error::{Error, Result};
use nalgebra::Matrix4;
use std::f64::consts::E;

/// Principal branch W0 of the Lambert W function, solving w * exp(w) = x.
///
/// Valid for x >= -1/e. Uses Halley iteration (cubic convergence) from a
/// branch-point series guess near -1/e and ln(1 + x) elsewhere; very large
/// arguments are solved in log form to avoid overflow.
pub fn lambert_w0(x: f64) -> Result<f64> {
    let branch = -1.0 / E;
    if !(x >= branch) {
        return Err(Error::LambertDomain(x));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == branch {
        return Ok(-1.0);
    }

    // Log-form Newton for big x: solve w + ln w = ln x. Well conditioned and
    // free of exp() overflow.
    if x > 1e10 {
        let lx = x.ln();
        let mut w = lx - lx.ln();
        for _ in 0..50 {
            let g = w + w.ln() - lx;
            let step = g / (1.0 + 1.0 / w);
            w -= step;
            if step.abs() <= 1e-15 * w.abs() {
                break;
            }
        }
        return Ok(w);
    }

    let mut w = if x < 0.0 {
        // Series about the branch point.
        let p = (2.0 * (E * x + 1.0)).sqrt();
        -1.0 + p - p * p / 3.0 + 11.0 * p * p * p / 72.0
    } else {
        x.ln_1p()
    };

    for _ in 0..100 {
        let ew = w.exp();
        let f = w * ew - x;
        if f.abs() <= 4.0 * f64::EPSILON * x.abs() {
            break;
        }
        // Halley step; the correction term is singular at w = -1, guard it.
        let wp1 = w + 1.0;
        if wp1.abs() < 1e-12 {
            break;
        }
        let denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        let step = f / denom;
        w -= step;
        if step.abs() <= f64::EPSILON * w.abs().max(1.0) {
            break;
        }
    }
    Ok(w.max(-1.0))
}

/// Coefficients a4 x^4 + a3 x^3 + a2 x^2 + a1 x + a0 with a4 != 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuarticCoeffs {
    pub a4: f64,
    pub a3: f64,
    pub a2: f64,
    pub a1: f64,
    pub a0: f64,
}

impl QuarticCoeffs {
    pub fn new(a4: f64, a3: f64, a2: f64, a1: f64, a0: f64) -> Result<Self> {
        let all_finite = [a4, a3, a2, a1, a0].iter().all(|c| c.is_finite());
        if a4 == 0.0 || !all_finite {
            return Err(Error::BadQuartic);
        }
        Ok(Self { a4, a3, a2, a1, a0 })
    }

    pub fn eval(&self, x: f64) -> f64 {
        (((self.a4 * x + self.a3) * x + self.a2) * x + self.a1) * x + self.a0
    }

    fn eval_deriv(&self, x: f64) -> f64 {
        ((4.0 * self.a4 * x + 3.0 * self.a3) * x + 2.0 * self.a2) * x + self.a1
    }

    /// All four roots (complex in general) via companion-matrix eigenvalues
    /// of the monic normalization.
    fn complex_roots(&self) -> [nalgebra::Complex<f64>; 4] {
        let b0 = self.a0 / self.a4;
        let b1 = self.a1 / self.a4;
        let b2 = self.a2 / self.a4;
        let b3 = self.a3 / self.a4;
        #[rustfmt::skip]
        let companion = Matrix4::new(
            0.0, 0.0, 0.0, -b0,
            1.0, 0.0, 0.0, -b1,
            0.0, 1.0, 0.0, -b2,
            0.0, 0.0, 1.0, -b3,
        );
        let eig = companion.complex_eigenvalues();
        [eig[0], eig[1], eig[2], eig[3]]
    }
}

/// Real positive roots of `q`, Newton-polished and sorted ascending.
/// Eigenvalues with |Im| <= tol_imag count as real; multiplicities are kept.
pub fn real_positive_roots(q: &QuarticCoeffs, tol_imag: f64) -> Vec<f64> {
    let mut out: Vec<f64> = q
        .complex_roots()
        .iter()
        .filter(|z| z.im.abs() <= tol_imag)
        .map(|z| polish(q, z.re))
        .filter(|r| *r > 0.0 && r.is_finite())
        .collect();
    out.sort_by(|a, b| a.total_cmp(b));
    out
}

/// [`real_positive_roots`] with tol_imag = 1e-8 * (1 + max eigenvalue
/// magnitude), which separates genuinely complex pairs from Schur noise.
pub fn real_positive_roots_auto(q: &QuarticCoeffs) -> Vec<f64> {
    let max_mag = q
        .complex_roots()
        .iter()
        .map(|z| z.norm())
        .fold(0.0_f64, f64::max);
    real_positive_roots(q, 1e-8 * (1.0 + max_mag))
}

fn polish(q: &QuarticCoeffs, mut x: f64) -> f64 {
    for _ in 0..8 {
        let f = q.eval(x);
        let fp = q.eval_deriv(x);
        if fp == 0.0 {
            break;
        }
        let step = f / fp;
        x -= step;
        if step.abs() <= f64::EPSILON * x.abs().max(1.0) {
            break;
        }
    }
    x
}
