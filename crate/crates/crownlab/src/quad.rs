//! Quadrature backends: Gauss-Legendre panels and tanh-sinh (double
//! exponential), both with node-doubling error control.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    GaussLegendre,
    TanhSinh,
}

/// An integration context: rule plus absolute-error target.
///
/// Every `integrate*` call verifies convergence by node-doubling and
/// reports the doubling residual as the error estimate.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub rule: Rule,
    pub target_abs_err: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: Complex64,
    pub abs_err: f64,
    pub evals: usize,
}

impl Default for Quadrature {
    fn default() -> Self {
        Quadrature { rule: Rule::TanhSinh, target_abs_err: 1e-10 }
    }
}

impl Quadrature {
    pub fn new(rule: Rule, target_abs_err: f64) -> Self {
        assert!(target_abs_err > 0.0, "error target must be positive");
        Quadrature { rule, target_abs_err }
    }

    /// Integrate a complex-valued function over the finite interval [a, b].
    pub fn integrate<F: Fn(f64) -> Complex64>(&self, f: F, a: f64, b: f64) -> Result<QuadResult> {
        match self.rule {
            Rule::GaussLegendre => gl_adaptive(&f, a, b, self.target_abs_err),
            Rule::TanhSinh => tanh_sinh(&f, a, b, self.target_abs_err),
        }
    }

    /// Integrate a real-valued function over [a, b].
    pub fn integrate_real<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> Result<(f64, f64)> {
        let r = self.integrate(|x| Complex64::new(f(x), 0.0), a, b)?;
        Ok((r.value.re, r.abs_err))
    }
}

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on the
/// Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre(n, x);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Value and derivative of the Legendre polynomial P_n.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Fixed-order Gauss-Legendre on [a, b] split into `panels` equal panels.
pub fn gl_panels<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64, panels: usize, order: usize) -> Complex64 {
    let (nodes, weights) = gauss_legendre(order);
    let mut sum = Complex64::new(0.0, 0.0);
    let h = (b - a) / panels as f64;
    for p in 0..panels {
        let lo = a + p as f64 * h;
        let c = lo + 0.5 * h;
        let d = 0.5 * h;
        for (x, w) in nodes.iter().zip(&weights) {
            sum += f(c + d * x) * *w * d;
        }
    }
    sum
}

/// Panel-doubling Gauss-Legendre with convergence check.
fn gl_adaptive<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64, target: f64) -> Result<QuadResult> {
    let order = 16;
    let mut panels = 1;
    let mut prev = gl_panels(f, a, b, panels, order);
    let mut evals = panels * order;
    for _ in 0..16 {
        panels *= 2;
        let cur = gl_panels(f, a, b, panels, order);
        evals += panels * order;
        let err = (cur - prev).norm();
        if err <= target {
            return Ok(QuadResult { value: cur, abs_err: err, evals });
        }
        prev = cur;
    }
    Err(Error::QuadratureNotConverged { residual: (gl_panels(f, a, b, panels * 2, order) - prev).norm(), target })
}

/// Tanh-sinh rule on [a, b] with level doubling.
///
/// Nodes cluster double-exponentially at the endpoints, so integrands with
/// endpoint singularities in derivatives (e.g. t^{-t} near 0) converge fast.
fn tanh_sinh<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64, target: f64) -> Result<QuadResult> {
    let d = 0.5 * (b - a);
    let half_pi = 0.5 * std::f64::consts::PI;
    let t_max = 3.8_f64;

    let eval = |t: f64| -> Complex64 {
        let s = half_pi * t.sinh();
        // distance to the nearer endpoint, 1 -/+ tanh(s), in the
        // cancellation-free form 2 / (e^{2|s|} + 1)
        let delta = 2.0 / ((2.0 * s.abs()).exp() + 1.0);
        let w = half_pi * t.cosh() / s.cosh().powi(2);
        let p = if s >= 0.0 { b - d * delta } else { a + d * delta };
        if p <= a.min(b) || p >= a.max(b) {
            return Complex64::new(0.0, 0.0);
        }
        f(p) * w
    };

    let mut h = 1.0_f64;
    let mut sum = eval(0.0);
    let mut k = 1;
    while (k as f64) * h <= t_max {
        let t = k as f64 * h;
        sum += eval(t) + eval(-t);
        k += 1;
    }
    let mut prev = sum * h * d;
    let mut evals = 2 * k;

    for _level in 0..14 {
        h *= 0.5;
        // add the new midpoints t = (2j+1) h
        let mut j = 0;
        while (2 * j + 1) as f64 * h <= t_max {
            let t = (2 * j + 1) as f64 * h;
            sum += eval(t) + eval(-t);
            j += 1;
        }
        evals += 2 * j;
        let cur = sum * h * d;
        let err = (cur - prev).norm();
        if err <= target && _level > 0 {
            return Ok(QuadResult { value: cur, abs_err: err, evals });
        }
        prev = cur;
    }
    Err(Error::QuadratureNotConverged { residual: f64::NAN, target })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_nodes_integrate_polynomials_exactly() {
        let (nodes, weights) = gauss_legendre(8);
        assert!((weights.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        // degree-15 monomial is integrated exactly by 8-point GL
        let int: f64 = nodes.iter().zip(&weights).map(|(x, w)| w * x.powi(14)).sum();
        assert!((int - 2.0 / 15.0).abs() < 1e-14);
    }

    #[test]
    fn tanh_sinh_handles_endpoint_singularity() {
        // int_0^1 1/sqrt(x) dx = 2
        let q = Quadrature::new(Rule::TanhSinh, 1e-10);
        let (v, _) = q.integrate_real(|x| 1.0 / x.sqrt(), 0.0, 1.0).unwrap();
        assert!((v - 2.0).abs() < 1e-9);
    }

    #[test]
    fn rules_agree_on_oscillatory_integrand() {
        let f = |x: f64| Complex64::new(0.0, 3.0 * x).exp();
        let exact = (Complex64::new(0.0, 6.0).exp() - Complex64::new(1.0, 0.0)) / Complex64::new(0.0, 3.0);
        let gl = Quadrature::new(Rule::GaussLegendre, 1e-12).integrate(f, 0.0, 2.0).unwrap();
        let ts = Quadrature::new(Rule::TanhSinh, 1e-12).integrate(f, 0.0, 2.0).unwrap();
        assert!((gl.value - exact).norm() < 1e-11);
        assert!((ts.value - exact).norm() < 1e-10);
    }

    #[test]
    fn nonconvergent_target_reports_error() {
        // the target is unreachably small for this rough integrand
        let q = Quadrature::new(Rule::GaussLegendre, 1e-308);
        let r = q.integrate(|x| Complex64::new(x.abs().sqrt().sin(), 0.0), 0.0, 10.0);
        assert!(matches!(r, Err(Error::QuadratureNotConverged { .. })));
    }
}
