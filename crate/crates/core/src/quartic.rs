//! Roots of complex polynomials of degree at most four.
//!
//! Aberth-Ehrlich simultaneous iteration followed by Newton polishing. Exact
//! zero low-order coefficients are deflated first so that roots at the origin
//! come out exactly.

use crate::error::{Error, Result};
use crate::qstate::{C64, ZERO};

/// `c[0] + c[1] w + c[2] w^2 + c[3] w^3 + c[4] w^4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolyDeg4 {
    pub c: [C64; 5],
}

pub const DEFAULT_SCALE_TOL: f64 = 1e-12;
const RESIDUAL_TOL: f64 = 1e-9;
const MAX_ITERS: usize = 2000;

impl PolyDeg4 {
    pub fn new(c: [C64; 5]) -> Self {
        Self { c }
    }

    pub fn eval(&self, w: C64) -> C64 {
        horner(&self.c, w)
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Degree after dropping leading coefficients below `scale_tol * max|c|`.
    pub fn effective_degree(&self, scale_tol: f64) -> Option<usize> {
        let m = self.max_abs();
        if m.is_nan() || m <= 0.0 {
            return None;
        }
        (0..5).rev().find(|&k| self.c[k].norm() >= scale_tol * m)
    }

    /// True when `w` satisfies `|p(w)| <= 1e-9 max|c| max(1,|w|)^4`.
    pub fn residual_ok(&self, w: C64) -> bool {
        let bound = RESIDUAL_TOL * self.max_abs() * w.norm().max(1.0).powi(4);
        self.eval(w).norm() <= bound
    }

    /// All roots with multiplicity; the count equals the effective degree.
    pub fn roots(&self, scale_tol: f64) -> Result<Vec<C64>> {
        if self
            .c
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        let n = self
            .effective_degree(scale_tol)
            .ok_or(Error::ZeroPolynomial)?;
        let mut coeffs: Vec<C64> = self.c[..=n].to_vec();

        let mut out = Vec::with_capacity(n);
        while coeffs.len() > 1 && coeffs[0] == ZERO {
            out.push(ZERO);
            coeffs.remove(0);
        }
        let mut rest = match coeffs.len() - 1 {
            0 => Vec::new(),
            1 => vec![-coeffs[0] / coeffs[1]],
            2 => quadratic(coeffs[0], coeffs[1], coeffs[2]),
            _ => aberth(&coeffs).ok_or(Error::DidNotConverge)?,
        };
        for z in rest.iter_mut() {
            *z = polish(&coeffs, *z);
        }
        out.extend(rest);

        if out.iter().any(|w| !self.residual_ok(*w)) {
            return Err(Error::DidNotConverge);
        }
        Ok(out)
    }
}

fn horner(c: &[C64], w: C64) -> C64 {
    c.iter().rev().fold(ZERO, |acc, &a| acc * w + a)
}

fn horner_with_derivative(c: &[C64], w: C64) -> (C64, C64) {
    let mut p = ZERO;
    let mut dp = ZERO;
    for &a in c.iter().rev() {
        dp = dp * w + p;
        p = p * w + a;
    }
    (p, dp)
}

fn quadratic(c0: C64, c1: C64, c2: C64) -> Vec<C64> {
    // Cancellation-free form: q = -(b + sign * sqrt(disc)) / 2.
    let disc = (c1 * c1 - 4.0 * c2 * c0).sqrt();
    let s = if (c1.conj() * disc).re >= 0.0 {
        disc
    } else {
        -disc
    };
    let q = -0.5 * (c1 + s);
    if q == ZERO {
        return vec![ZERO, ZERO];
    }
    vec![q / c2, c0 / q]
}

fn aberth(c: &[C64]) -> Option<Vec<C64>> {
    let n = c.len() - 1;
    let lead = c[n];
    let a: Vec<C64> = c.iter().map(|z| z / lead).collect();
    // Fujiwara-style radius estimate for the starting circle.
    let r = (0..n)
        .map(|k| a[k].norm().powf(1.0 / (n - k) as f64))
        .fold(0.0, f64::max)
        .max(1e-3);
    let mut z: Vec<C64> = (0..n)
        .map(|k| C64::from_polar(r, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..MAX_ITERS {
        let mut done = true;
        for k in 0..n {
            let (p, dp) = horner_with_derivative(&a, z[k]);
            if p == ZERO {
                continue;
            }
            let ratio = p / dp;
            let s: C64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| {
                    let d = z[k] - z[j];
                    if d == ZERO {
                        ZERO
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let step = ratio / (C64::new(1.0, 0.0) - ratio * s);
            if !(step.re.is_finite() && step.im.is_finite()) {
                continue;
            }
            z[k] -= step;
            if step.norm() > 1e-15 * z[k].norm().max(1.0) {
                done = false;
            }
        }
        if done {
            return Some(z);
        }
    }
    // Slow convergence at clustered roots still usually meets the residual test.
    Some(z)
}

fn polish(c: &[C64], mut w: C64) -> C64 {
    let mut best = horner(c, w).norm();
    for _ in 0..4 {
        let (p, dp) = horner_with_derivative(c, w);
        if dp == ZERO {
            break;
        }
        let cand = w - p / dp;
        let r = horner(c, cand).norm();
        if r.is_nan() || r >= best {
            break;
        }
        best = r;
        w = cand;
    }
    w
}
