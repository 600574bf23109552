//! Numerical Hardy space H^2(C_+): reproducing-kernel spans, the affine and
//! SL2 actions, modular flow with its strip continuation, the conjugation J,
//! boundary maps, temperedness fits and the L^2(R_+) Fourier bridge.
//!
//! Conventions. K_w(z) = i/(z - conj w) with <K_z, F> = F(z), conjugate
//! linear in the first argument. The affine action is
//! U(b, a) K_w = a^{1/2} K_{a w - b}. Imaginary-time flow transports kernel
//! points by w -> e^z w and boundary (Cauchy) densities by rotating the
//! kernel argument, x -> e^z x; the two rules form one consistent calculus
//! in which the boundary map sends K_{iy} to e^{-i pi/4} K_y.

use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::crown::{mobius, CAffine, CMat2};
use crate::error::{Error, Result};
use crate::quad::Quadrature;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Fixed evaluation grid in C_+ used for J-fixedness and KMS comparisons.
pub fn standard_grid() -> Vec<Complex64> {
    let mut grid = Vec::with_capacity(32);
    for j in 0..8 {
        for k in 0..4 {
            grid.push(c64(-2.1 + 0.6 * j as f64, 0.35 + 0.45 * k as f64));
        }
    }
    grid
}

/// A finite combination of reproducing kernels sum_j c_j K_{w_j}, w_j in C_+.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelSpan {
    terms: Vec<(Complex64, Complex64)>,
}

impl KernelSpan {
    pub fn new(terms: Vec<(Complex64, Complex64)>) -> Result<Self> {
        for &(_, w) in &terms {
            if w.im.is_nan() || w.im <= 0.0 {
                return Err(Error::LeftDomain);
            }
        }
        Ok(KernelSpan { terms })
    }

    pub fn empty() -> Self {
        KernelSpan { terms: Vec::new() }
    }

    pub fn kernel_at(w: Complex64) -> Result<Self> {
        Self::new(vec![(c64(1.0, 0.0), w)])
    }

    pub fn terms(&self) -> &[(Complex64, Complex64)] {
        &self.terms
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        KernelSpan { terms: self.terms.iter().map(|&(a, w)| (c * a, w)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        KernelSpan { terms }
    }

    /// Pointwise evaluation; the reproducing property reads <K_z, F> = F(z).
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        self.terms.iter().map(|&(c, w)| c * I / (z - w.conj())).sum()
    }
}

/// Sesquilinear form via the closed kernel formula, conjugate linear in the
/// first argument.
pub fn kernel_inner(u: &KernelSpan, v: &KernelSpan) -> Complex64 {
    let mut acc = c64(0.0, 0.0);
    for &(cu, zu) in &u.terms {
        for &(cv, zv) in &v.terms {
            acc += cu.conj() * cv * I / (zu - zv.conj());
        }
    }
    acc
}

pub fn norm_sq(v: &KernelSpan) -> f64 {
    kernel_inner(v, v).re
}

/// U(b, a) K_w = a^{1/2} K_{a w - b} for a real point (b, a), a > 0.
pub fn act_affine(g: CAffine, v: &KernelSpan) -> Result<KernelSpan> {
    if !g.is_real() {
        return Err(Error::InvalidGroupElement("affine action needs b real, a > 0".into()));
    }
    let (b, a) = (g.b.re, g.a.re);
    let root = a.sqrt();
    let terms = self_map(v, |(c, w)| (c * root, a * w - b));
    KernelSpan::new(terms)
}

fn self_map(
    v: &KernelSpan,
    f: impl Fn((Complex64, Complex64)) -> (Complex64, Complex64),
) -> Vec<(Complex64, Complex64)> {
    v.terms.iter().map(|&t| f(t)).collect()
}

/// The SL2(R) action on kernel spans.
///
/// With g^{-1} = [[a, b], [c, d]], the function-level action
/// (Pi(g) f)(z) = (cz + d)^{-1} f((az + b)/(cz + d)) transports kernels by
/// Pi(g) K_w = (a - c conj w)^{-1} K_{g.w}.
pub fn act_sl2(g: &CMat2, v: &KernelSpan) -> Result<KernelSpan> {
    if !g.is_real() {
        return Err(Error::InvalidGroupElement("the unitary SL2 action needs real entries".into()));
    }
    let ginv = g.inv();
    let (a, cm) = (ginv.m[0][0], ginv.m[1][0]);
    let mut terms = Vec::with_capacity(v.terms.len());
    for &(c, w) in &v.terms {
        let den = a - cm * w.conj();
        if den.norm() < 1e-14 {
            return Err(Error::PoleHit);
        }
        let moved = mobius(g, w)?;
        if moved.im.is_nan() || moved.im <= 0.0 {
            return Err(Error::LeftDomain);
        }
        terms.push((c / den, moved));
    }
    KernelSpan::new(terms)
}

/// Modular flow continued to complex time: (c, w) -> (c e^{z/2}, e^z w).
///
/// For real z this is the dilation action U(0, e^z); for imaginary z it is
/// the strip continuation of the orbit map. Fails with `LeftDomain` when a
/// rotated point would leave the open upper half-plane.
pub fn modular_flow(z_param: Complex64, v: &KernelSpan) -> Result<KernelSpan> {
    let factor = (z_param / 2.0).exp();
    let rot = z_param.exp();
    let mut terms = Vec::with_capacity(v.terms.len());
    for &(c, w) in &v.terms {
        let moved = rot * w;
        if moved.im.is_nan() || moved.im <= 0.0 {
            return Err(Error::LeftDomain);
        }
        terms.push((c * factor, moved));
    }
    KernelSpan::new(terms)
}

/// The conjugation (J F)(z) = conj(F(-conj z)); on kernels
/// J(c K_w) = conj(c) K_{-conj w}.
pub fn conjugation_j(v: &KernelSpan) -> KernelSpan {
    KernelSpan { terms: self_map(v, |(c, w)| (c.conj(), -w.conj())) }
}

/// J-fixedness on the standard grid, relative tolerance 1e-12.
pub fn is_j_fixed(v: &KernelSpan) -> bool {
    let jv = conjugation_j(v);
    let mut scale: f64 = 0.0;
    let mut dev: f64 = 0.0;
    for z in standard_grid() {
        let a = v.evaluate(z);
        let b = jv.evaluate(z);
        scale = scale.max(a.norm());
        dev = dev.max((a - b).norm());
    }
    dev <= 1e-12 * scale.max(1.0)
}

/// A finite combination of boundary kernels sum_j c_j K_{x_j}, x_j real.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryKernelSpan {
    terms: Vec<(Complex64, f64)>,
}

impl BoundaryKernelSpan {
    pub fn terms(&self) -> &[(Complex64, f64)] {
        &self.terms
    }

    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        self.terms.iter().map(|&(c, x)| c * I / (z - x)).sum()
    }
}

/// Boundary-value map: the strip continuation of a J-fixed span supported on
/// the positive imaginary axis, evaluated at the lower edge. Sends each term
/// (c, i y) to (c e^{-i pi/4}, y).
pub fn beta_plus(v: &KernelSpan) -> Result<BoundaryKernelSpan> {
    if !is_j_fixed(v) {
        return Err(Error::NotJFixed);
    }
    let phase = c64(0.0, -std::f64::consts::FRAC_PI_4).exp();
    let mut terms = Vec::with_capacity(v.terms.len());
    for &(c, w) in &v.terms {
        if w.re.abs() > 1e-12 * w.norm() {
            return Err(Error::NotJFixed);
        }
        terms.push((c * phase, w.im));
    }
    Ok(BoundaryKernelSpan { terms })
}

/// Pairing of a kernel span against a boundary span, conjugate linear in
/// the first argument: <u, B> = sum_j conj(c_j) B(z_j).
pub fn pair_boundary(u: &KernelSpan, b: &BoundaryKernelSpan) -> Complex64 {
    u.terms.iter().map(|&(c, z)| c.conj() * b.evaluate(z)).sum()
}

/// First- plus second-order kernel combination: sum c_j K_{w_j} + sum d_k D_{v_k}
/// with D_w(z) = i/(z - conj w)^2; these arise as derivatives of kernel
/// orbits along group directions.
#[derive(Debug, Clone)]
pub struct DerivedSpan {
    pub first: Vec<(Complex64, Complex64)>,
    pub second: Vec<(Complex64, Complex64)>,
}

/// Boundary version of [`DerivedSpan`], with real points.
#[derive(Debug, Clone)]
pub struct DerivedBoundary {
    pub first: Vec<(Complex64, f64)>,
    pub second: Vec<(Complex64, f64)>,
}

impl DerivedBoundary {
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        let f: Complex64 = self.first.iter().map(|&(c, x)| c * I / (z - x)).sum();
        let s: Complex64 = self.second.iter().map(|&(c, x)| c * I / ((z - x) * (z - x))).sum();
        f + s
    }
}

/// Derived action of the affine algebra element alpha x + beta h on a kernel
/// span, from the closed-form derivative of the term map:
/// dU(alpha x + beta h) K_w = (beta/2) K_w + conj(beta w - alpha) D_w.
pub fn du_affine(alpha: f64, beta: f64, v: &KernelSpan) -> DerivedSpan {
    let mut first = Vec::new();
    let mut second = Vec::new();
    for &(c, w) in &v.terms {
        if beta != 0.0 {
            first.push((c * 0.5 * beta, w));
        }
        second.push((c * (beta * w - alpha).conj(), w));
    }
    DerivedSpan { first, second }
}

/// Derived action on boundary spans with complex direction coefficients,
/// dU(alpha x + beta h) K_x = (beta/2) K_x + (beta x - alpha) D_x.
pub fn du_affine_boundary(alpha: Complex64, beta: Complex64, b: &BoundaryKernelSpan) -> DerivedBoundary {
    let mut first = Vec::new();
    let mut second = Vec::new();
    for &(c, x) in &b.terms {
        if beta.norm() != 0.0 {
            first.push((c * 0.5 * beta, x));
        }
        second.push((c * (beta * x - alpha), x));
    }
    DerivedBoundary { first, second }
}

/// Boundary-value map on derived spans supported on i R_+. K-terms map as in
/// [`beta_plus`]; derivative terms pick up the extra quarter rotation,
/// (c, i y) -> (c i e^{-i pi/4}, y).
pub fn beta_plus_derived(d: &DerivedSpan) -> Result<DerivedBoundary> {
    let phase = c64(0.0, -std::f64::consts::FRAC_PI_4).exp();
    let on_axis = |w: Complex64| -> Result<f64> {
        if w.re.abs() > 1e-12 * w.norm() || w.im.is_nan() || w.im <= 0.0 {
            return Err(Error::NotJFixed);
        }
        Ok(w.im)
    };
    let mut first = Vec::new();
    for &(c, w) in &d.first {
        first.push((c * phase, on_axis(w)?));
    }
    let mut second = Vec::new();
    for &(c, w) in &d.second {
        second.push((c * phase * I, on_axis(w)?));
    }
    Ok(DerivedBoundary { first, second })
}

/// Report of the boundary-map equivariance check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ZetaReport {
    pub direction: String,
    pub max_pairing_deviation: f64,
    pub panel_size: usize,
}

/// Check that the boundary map intertwines the derived action with its
/// quarter-rotated twist: pairings of beta(dU(x) v) against a panel are
/// compared with pairings of dU(zeta'(x)) beta(v), where zeta' rotates the
/// grade-(+1) component by +i (the inverse quarter rotation; the flow
/// convention used here reverses the sign of imaginary time, which swaps
/// the two boundary maps and hence inverts the twist).
pub fn zeta_equivariance_check(
    alpha: f64,
    beta: f64,
    v: &KernelSpan,
    panel: &[KernelSpan],
) -> Result<ZetaReport> {
    let lhs = beta_plus_derived(&du_affine(alpha, beta, v))?;
    let bv = beta_plus(v)?;
    // inverse quarter rotation on aff: x-component times +i, h-component fixed
    let rhs = du_affine_boundary(I * alpha, c64(beta, 0.0), &bv);
    let mut dev: f64 = 0.0;
    for u in panel {
        let l: Complex64 = u.terms.iter().map(|&(c, z)| c.conj() * lhs.evaluate(z)).sum();
        let r: Complex64 = u.terms.iter().map(|&(c, z)| c.conj() * rhs.evaluate(z)).sum();
        dev = dev.max((l - r).norm());
    }
    Ok(ZetaReport {
        direction: format!("{alpha}*x+{beta}*h"),
        max_pairing_deviation: dev,
        panel_size: panel.len(),
    })
}

/// Fitted constants of the strip growth bound
/// ||U^v(it)||^2 <= C (pi/2 - |t|)^{-N}.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GrowthFit {
    pub c: f64,
    pub n: f64,
    pub residual: f64,
    pub t_samples: Vec<f64>,
}

/// Least-squares fit of log ||U^v(it)||^2 against -N log(pi/2 - |t|) + log C.
pub fn growth_fit(v: &KernelSpan, t_grid: &[f64]) -> Result<GrowthFit> {
    if t_grid.len() < 3 {
        return Err(Error::FlowUndefined);
    }
    let mut xs = Vec::with_capacity(t_grid.len());
    let mut ys = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        if t.abs() >= std::f64::consts::FRAC_PI_2 {
            return Err(Error::FlowUndefined);
        }
        let flowed = modular_flow(c64(0.0, t), v)?;
        let n2 = norm_sq(&flowed);
        if n2.is_nan() || n2 <= 0.0 {
            return Err(Error::FlowUndefined);
        }
        xs.push(-(std::f64::consts::FRAC_PI_2 - t.abs()).ln());
        ys.push(n2.ln());
    }
    let n = xs.len() as f64;
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| x * y).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let intercept = (sy - slope * sx) / n;
    let residual = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - (slope * x + intercept)).abs())
        .fold(0.0, f64::max);
    Ok(GrowthFit { c: intercept.exp(), n: slope, residual, t_samples: t_grid.to_vec() })
}

/// Polynomial (Neville) extrapolation of f(h) to h = 0 along a geometric
/// ladder h0, h0/r, ..., used to evaluate boundary limits. Pairings with
/// kernels near the boundary converge slowly, so six halving steps are
/// needed to hold 1e-6 across a generic panel.
pub fn richardson_limit<F: Fn(f64) -> Complex64>(f: F, h0: f64, ratio: f64, steps: usize) -> Complex64 {
    assert!(steps >= 2 && ratio > 1.0);
    let hs: Vec<f64> = (0..steps).map(|k| h0 / ratio.powi(k as i32)).collect();
    let mut table: Vec<Complex64> = hs.iter().map(|&h| f(h)).collect();
    for level in 1..steps {
        for j in (level..steps).rev() {
            let num = table[j] * hs[j - level] - table[j - 1] * hs[j];
            table[j] = num / (hs[j - level] - hs[j]);
        }
    }
    table[steps - 1]
}

/// A smeared boundary vector phase * integral psi(x) K_x dx with a real
/// density on a compact interval; an honest element of H^2(C_+).
#[derive(Clone)]
pub struct CauchyVector {
    pub phase: Complex64,
    pub support: (f64, f64),
    density: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    quad: Quadrature,
}

impl std::fmt::Debug for CauchyVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CauchyVector")
            .field("phase", &self.phase)
            .field("support", &self.support)
            .finish()
    }
}

impl CauchyVector {
    pub fn new(
        phase: Complex64,
        support: (f64, f64),
        density: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
        quad: Quadrature,
    ) -> Result<Self> {
        if !support.0.is_finite() || !support.1.is_finite() || support.0 >= support.1 {
            return Err(Error::ConfigInvalid("support interval must be bounded and nonempty".into()));
        }
        if (phase.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::ConfigInvalid("phase must be unimodular".into()));
        }
        Ok(CauchyVector { phase, support, density, quad })
    }

    pub fn density_at(&self, x: f64) -> f64 {
        if x < self.support.0 || x > self.support.1 {
            0.0
        } else {
            (self.density)(x)
        }
    }

    /// Pointwise evaluation in the open upper half-plane.
    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        let d = self.density.clone();
        let r = self.quad.integrate(move |x| d(x) * I / (z - x), self.support.0, self.support.1)?;
        Ok(self.phase * r.value)
    }

    /// Strip continuation of the orbit map at complex time tau: the kernel
    /// argument rotates, giving
    /// phase e^{tau/2} integral psi(x) i/(z - e^tau x) dx.
    pub fn evaluate_strip(&self, z: Complex64, tau: Complex64) -> Result<Complex64> {
        let rot = tau.exp();
        // refuse evaluation when a transported pole collides with z
        let (lo, hi) = self.support;
        for k in 0..=32 {
            let x = lo + (hi - lo) * k as f64 / 32.0;
            if (z - rot * x).norm() < 1e-9 {
                return Err(Error::PoleHit);
            }
        }
        let d = self.density.clone();
        let r = self.quad.integrate(move |x| d(x) * I / (z - rot * x), lo, hi)?;
        Ok(self.phase * (tau / 2.0).exp() * r.value)
    }

    /// (J xi)(z) = conj(xi(-conj z)).
    pub fn j_evaluate(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.evaluate(-z.conj())?.conj())
    }

    /// Squared Hardy norm. For a real density the principal-value part of
    /// the boundary pairing cancels, leaving pi * integral psi^2.
    pub fn norm_sq(&self) -> Result<f64> {
        let d = self.density.clone();
        let (v, _) = self.quad.integrate_real(move |x| d(x) * d(x), self.support.0, self.support.1)?;
        Ok(std::f64::consts::PI * v)
    }

    /// Real part of the inner product with another vector of the same phase.
    pub fn real_inner(&self, other: &CauchyVector) -> Result<f64> {
        if (self.phase - other.phase).norm() > 1e-12 {
            return Err(Error::ConfigInvalid("real Gram requires a common phase".into()));
        }
        let lo = self.support.0.max(other.support.0);
        let hi = self.support.1.min(other.support.1);
        if lo >= hi {
            return Ok(0.0);
        }
        let (da, db) = (self.density.clone(), other.density.clone());
        let (v, _) = self.quad.integrate_real(move |x| da(x) * db(x), lo, hi)?;
        Ok(std::f64::consts::PI * v)
    }

    /// The real affine action: U(b, a) maps the density psi to
    /// a^{-1/2} psi((x + b)/a) on the transported support.
    pub fn act_affine(&self, g: CAffine) -> Result<CauchyVector> {
        if !g.is_real() {
            return Err(Error::InvalidGroupElement("affine action needs b real, a > 0".into()));
        }
        let (b, a) = (g.b.re, g.a.re);
        let d = self.density.clone();
        let scale = a.powf(-0.5);
        let support = (a * self.support.0 - b, a * self.support.1 - b);
        CauchyVector::new(
            self.phase,
            support,
            Arc::new(move |x: f64| scale * d((x + b) / a)),
            self.quad,
        )
    }

    /// Multiply by a unimodular scalar (rotating the phase).
    pub fn rotated(&self, c: Complex64) -> Result<CauchyVector> {
        CauchyVector::new(self.phase * c, self.support, self.density.clone(), self.quad)
    }
}

/// Outcome of the strip/KMS comparison for a smeared boundary vector.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KmsReport {
    /// +1 when the continuation runs to +i pi, -1 when only -i pi is
    /// reachable (support on the negative half-line).
    pub endpoint: i8,
    pub max_deviation: f64,
    pub grid_size: usize,
}

/// Compare the strip endpoint of the orbit continuation with J xi on a grid.
///
/// The continuation direction is dictated by the sign of the transported
/// support: positive supports continue to +i pi, negative supports only to
/// -i pi. A support touching or crossing 0 has no valid continuation.
/// At either endpoint the continued value is phase * (+-i) * integral
/// psi(x) i/(z + x) dx, compared against (J xi)(z).
pub fn kms_check(xi: &CauchyVector, grid: &[Complex64]) -> Result<KmsReport> {
    let (lo, hi) = xi.support;
    let endpoint: i8 = if lo > 0.0 {
        1
    } else if hi < 0.0 {
        -1
    } else {
        return Err(Error::ContinuationLeftDomain);
    };
    let sign = f64::from(endpoint);
    let mut dev: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for &z in grid {
        let d = xi.density.clone();
        let r = xi.quad.integrate(move |x| d(x) * I / (z + x), lo, hi)?;
        let continued = xi.phase * c64(0.0, sign) * r.value;
        let reflected = xi.j_evaluate(z)?;
        dev = dev.max((continued - reflected).norm());
        scale = scale.max(reflected.norm());
    }
    Ok(KmsReport { endpoint, max_deviation: dev / scale.max(1e-300), grid_size: grid.len() })
}

/// Fourier-Laplace transform integral f(p) e^{izp} dp over [lo, hi].
pub fn fourier_laplace(
    f: &(dyn Fn(f64) -> f64 + Sync),
    lo: f64,
    hi: f64,
    z: Complex64,
    quad: &Quadrature,
) -> Result<Complex64> {
    let r = quad.integrate(|p| f(p) * (I * z * p).exp(), lo, hi)?;
    Ok(r.value)
}

/// ||K_z||^2 via the L^2(R_+) picture: integral_0^inf e^{-2 Im z p} dp,
/// truncated where the tail drops below the quadrature target.
pub fn kernel_norm_sq_via_l2(z: Complex64, quad: &Quadrature) -> Result<f64> {
    let rate = 2.0 * z.im;
    if rate <= 0.0 {
        return Err(Error::LeftDomain);
    }
    let cutoff = (40.0 / rate).min(1e6);
    let (v, _) = quad.integrate_real(|p| (-rate * p).exp(), 0.0, cutoff)?;
    Ok(v)
}
