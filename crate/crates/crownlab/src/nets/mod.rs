//! Finite-rank nets of real subspaces over the affine group: smeared
//! boundary vectors, cyclicity (totality) probes, wedge/KMS probes and the
//! wedge-intersection membership predicate.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::crown::{affine_inv, CAffine};
use crate::error::{Error, Result};
use crate::hardy::{kernel_inner, kms_check, CauchyVector, KernelSpan};
use crate::quad::{gauss_legendre, Quadrature};

const FRAC_PI_4: f64 = std::f64::consts::FRAC_PI_4;

/// A bounded coordinate box in the group, (b_lo, b_hi) x (a_lo, a_hi).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionBox {
    pub b_lo: f64,
    pub b_hi: f64,
    pub a_lo: f64,
    pub a_hi: f64,
}

impl RegionBox {
    pub fn new(b_lo: f64, b_hi: f64, a_lo: f64, a_hi: f64) -> Result<Self> {
        let shape_ok = b_lo < b_hi && 0.0 < a_lo && a_lo < a_hi;
        if !shape_ok {
            return Err(Error::ConfigInvalid("region box must be nonempty with a_lo > 0".into()));
        }
        Ok(RegionBox { b_lo, b_hi, a_lo, a_hi })
    }

    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<f64> = s
            .split(',')
            .map(|t| t.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::ConfigInvalid(format!("bad region `{s}`")))?;
        if parts.len() != 4 {
            return Err(Error::ConfigInvalid("region needs b_lo,b_hi,a_lo,a_hi".into()));
        }
        RegionBox::new(parts[0], parts[1], parts[2], parts[3])
    }

    pub fn contains(&self, b: f64, a: f64) -> bool {
        self.b_lo < b && b < self.b_hi && self.a_lo < a && a < self.a_hi
    }

    /// The image g0 . box under left translation (b, a) -> (b0 + a0 b, a0 a).
    pub fn left_translated(&self, g0: CAffine) -> Result<RegionBox> {
        if !g0.is_real() {
            return Err(Error::NotRealPoint);
        }
        let (b0, a0) = (g0.b.re, g0.a.re);
        RegionBox::new(b0 + a0 * self.b_lo, b0 + a0 * self.b_hi, a0 * self.a_lo, a0 * self.a_hi)
    }
}

/// An open subset of the group: a bounded box or a wedge orientation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum OpenRegion {
    Box(RegionBox),
    Wedge { sign: i8 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TestFunctionKind {
    GaussianTruncated,
    Bump,
}

/// A real-valued smooth test function, compactly supported on a box,
/// in product form phi(b, a) = f((b - b_c)/b_w) f((a - a_c)/a_w).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestFunction {
    pub kind: TestFunctionKind,
    pub b_center: f64,
    pub b_halfwidth: f64,
    pub a_center: f64,
    pub a_halfwidth: f64,
}

impl TestFunction {
    pub fn bump(support: RegionBox) -> Self {
        TestFunction {
            kind: TestFunctionKind::Bump,
            b_center: 0.5 * (support.b_lo + support.b_hi),
            b_halfwidth: 0.5 * (support.b_hi - support.b_lo),
            a_center: 0.5 * (support.a_lo + support.a_hi),
            a_halfwidth: 0.5 * (support.a_hi - support.a_lo),
        }
    }

    pub fn gaussian(support: RegionBox) -> Self {
        TestFunction { kind: TestFunctionKind::GaussianTruncated, ..Self::bump(support) }
    }

    pub fn support(&self) -> RegionBox {
        RegionBox {
            b_lo: self.b_center - self.b_halfwidth,
            b_hi: self.b_center + self.b_halfwidth,
            a_lo: self.a_center - self.a_halfwidth,
            a_hi: self.a_center + self.a_halfwidth,
        }
    }

    fn profile(&self, u: f64) -> f64 {
        if u.abs() >= 1.0 {
            return 0.0;
        }
        match self.kind {
            TestFunctionKind::Bump => (-1.0 / (1.0 - u * u)).exp(),
            // truncated at three sigma by the support box
            TestFunctionKind::GaussianTruncated => (-(3.0 * u) * (3.0 * u) / 2.0).exp(),
        }
    }

    pub fn evaluate(&self, b: f64, a: f64) -> f64 {
        self.profile((b - self.b_center) / self.b_halfwidth)
            * self.profile((a - self.a_center) / self.a_halfwidth)
    }

    /// Pullback under left translation: phi'(g) = phi(g0^{-1} g).
    pub fn left_translated(&self, g0: CAffine) -> Result<TestFunction> {
        if !g0.is_real() {
            return Err(Error::NotRealPoint);
        }
        let (b0, a0) = (g0.b.re, g0.a.re);
        Ok(TestFunction {
            kind: self.kind,
            b_center: b0 + a0 * self.b_center,
            b_halfwidth: a0 * self.b_halfwidth,
            a_center: a0 * self.a_center,
            a_halfwidth: a0 * self.a_halfwidth,
        })
    }

    /// Mass under the left Haar measure db da / a^2.
    pub fn haar_mass(&self) -> f64 {
        let (bn, bw) = gauss_legendre(32);
        let (an, aw) = gauss_legendre(32);
        let mut total = 0.0;
        for (tb, wb) in bn.iter().zip(&bw) {
            let b = self.b_center + self.b_halfwidth * tb;
            for (ta, wa) in an.iter().zip(&aw) {
                let a = self.a_center + self.a_halfwidth * ta;
                total += wb * wa * self.evaluate(b, a) / (a * a);
            }
        }
        total * self.b_halfwidth * self.a_halfwidth
    }
}

/// A smeared vector together with its boundary density sampled on a
/// Gauss-Legendre grid (for fast transform sums).
#[derive(Debug, Clone)]
pub struct NetElement {
    pub vector: CauchyVector,
    pub y: f64,
    pub density: SampledDensity,
}

/// Density samples rho(x_k) with quadrature weights over a compact support.
#[derive(Debug, Clone)]
pub struct SampledDensity {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub values: Vec<f64>,
}

impl SampledDensity {
    fn from_fn(support: (f64, f64), n: usize, f: &dyn Fn(f64) -> f64) -> Self {
        let (gn, gw) = gauss_legendre(n);
        let c = 0.5 * (support.0 + support.1);
        let d = 0.5 * (support.1 - support.0);
        let nodes: Vec<f64> = gn.iter().map(|t| c + d * t).collect();
        let weights: Vec<f64> = gw.iter().map(|w| w * d).collect();
        let values: Vec<f64> = nodes.iter().map(|&x| f(x)).collect();
        SampledDensity { nodes, weights, values }
    }

    /// Fourier coefficient integral rho(x) e^{-i x p} dx; reliable only for
    /// p small against the node spacing (sweeps use the panelized
    /// transform in `rs_probe` instead).
    pub fn fourier(&self, p: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for ((&x, &w), &v) in self.nodes.iter().zip(&self.weights).zip(&self.values) {
            acc += Complex64::new(0.0, -x * p).exp() * (w * v);
        }
        acc
    }
}

/// Smear a boundary kernel e^{-i pi/4} K_y by a test function: the b-integral
/// collapses to a Cauchy density and the a-integral is quadrature over the
/// left Haar measure db da / a^2, giving
/// rho(x) = integral phi(a y - x, a) a^{-3/2} da.
pub fn smear(phi: &TestFunction, y: f64, quad: Quadrature) -> Result<NetElement> {
    if y <= 0.0 {
        return Err(Error::ConfigInvalid("boundary kernel parameter y must be positive".into()));
    }
    let s = phi.support();
    if s.a_lo <= 0.0 {
        return Err(Error::ConfigInvalid("test function support must satisfy a > 0".into()));
    }
    let support = (s.a_lo * y - s.b_hi, s.a_hi * y - s.b_lo);
    let phi_owned = *phi;
    let (an, aw) = gauss_legendre(64);
    let (an2, aw2) = gauss_legendre(128);
    // the b-support clips the a-integral to an x-dependent active window
    let rho_with = move |x: f64, nodes: &[f64], weights: &[f64]| -> f64 {
        let lo = s.a_lo.max((x + s.b_lo) / y);
        let hi = s.a_hi.min((x + s.b_hi) / y);
        if lo >= hi {
            return 0.0;
        }
        let c = 0.5 * (lo + hi);
        let d = 0.5 * (hi - lo);
        let mut acc = 0.0;
        for (t, w) in nodes.iter().zip(weights) {
            let a = c + d * t;
            acc += w * d * phi_owned.evaluate(a * y - x, a) * a.powf(-1.5);
        }
        acc
    };
    // node-doubling check of the inner Haar quadrature at a few points
    let mut worst = 0.0_f64;
    let mut scale = 0.0_f64;
    for k in 0..8 {
        let x = support.0 + (support.1 - support.0) * (k as f64 + 0.5) / 8.0;
        let r1 = rho_with(x, &an, &aw);
        let r2 = rho_with(x, &an2, &aw2);
        worst = worst.max((r1 - r2).abs());
        scale = scale.max(r2.abs());
    }
    if worst > 1e-8 * (1.0 + scale) {
        return Err(Error::QuadratureNotConverged { residual: worst, target: 1e-8 * (1.0 + scale) });
    }
    let density_fn = move |x: f64| rho_with(x, &an2, &aw2);
    let density = SampledDensity::from_fn(support, 128, &density_fn);
    let phase = Complex64::new(0.0, -FRAC_PI_4).exp();
    let vector = CauchyVector::new(phase, support, Arc::new(density_fn), quad)?;
    Ok(NetElement { vector, y, density })
}

/// Probe report: Gram diagnostics, deficits per panel vector and rank, KMS
/// deviations and named verdicts.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NetProbeReport {
    pub gram_rank: usize,
    pub smallest_singular_value: f64,
    pub ranks: Vec<usize>,
    /// Deficit of each panel vector against the complex linear span, per
    /// rank prefix; this is the totality (cyclicity) measure.
    pub deficits: Vec<Vec<f64>>,
    /// Deficit against the span with real coefficients only. Generic
    /// vectors keep a positive distance here: the subspace is separating,
    /// so density only holds after adjoining i-multiples.
    pub real_span_deficits: Vec<Vec<f64>>,
    pub kms_max_deviation: Option<f64>,
    pub verdicts: BTreeMap<String, bool>,
}

/// Shared momentum grid: uniform panels with fixed Gauss-Legendre offsets,
/// sized so each panel carries at most a few radians of phase for the
/// largest support coordinate.
struct MomentumGrid {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    panel_len: f64,
    panels: usize,
    order: usize,
    offsets: Vec<f64>,
}

impl MomentumGrid {
    fn new(pmax: f64, x_max: f64) -> Self {
        let order = 16usize;
        // 16-point panels integrate up to ~9 radians of phase exactly
        let panels = ((pmax * x_max / 9.0).ceil() as usize).clamp(32, 8000);
        let (gn, gw) = gauss_legendre(order);
        let h = pmax / panels as f64;
        let offsets: Vec<f64> = gn.iter().map(|t| 0.5 * h * (1.0 + t)).collect();
        let mut nodes = Vec::with_capacity(panels * order);
        let mut weights = Vec::with_capacity(panels * order);
        for p in 0..panels {
            let lo = p as f64 * h;
            for (off, w) in offsets.iter().zip(&gw) {
                nodes.push(lo + off);
                weights.push(w * 0.5 * h);
            }
        }
        MomentumGrid { nodes, weights, panel_len: h, panels, order, offsets }
    }

    /// Transform sum_m a_m e^{-i x_m p} on every grid node, factorizing the
    /// phase into a per-panel carrier times fixed in-panel offsets.
    fn transform(&self, xs: &[f64], amps: &[f64]) -> Vec<Complex64> {
        let m = xs.len();
        let mut carrier: Vec<Complex64> = vec![Complex64::new(1.0, 0.0); m];
        let step: Vec<Complex64> =
            xs.iter().map(|&x| Complex64::new(0.0, -x * self.panel_len).exp()).collect();
        // psi[k][m] = e^{-i x_m off_k}
        let psi: Vec<Vec<Complex64>> = self
            .offsets
            .iter()
            .map(|&off| xs.iter().map(|&x| Complex64::new(0.0, -x * off).exp()).collect())
            .collect();
        let mut out = Vec::with_capacity(self.panels * self.order);
        let mut scaled: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); m];
        for _panel in 0..self.panels {
            for i in 0..m {
                scaled[i] = carrier[i] * amps[i];
            }
            for psi_k in &psi {
                let mut acc = Complex64::new(0.0, 0.0);
                for (s, p) in scaled.iter().zip(psi_k) {
                    acc += s * p;
                }
                out.push(acc);
            }
            for (c, s) in carrier.iter_mut().zip(&step) {
                *c *= s;
            }
        }
        out
    }
}

/// Resample a density on enough Gauss-Legendre panels to keep the
/// transform accurate up to the momentum cutoff.
fn oscillation_samples(vector: &CauchyVector, pmax: f64) -> (Vec<f64>, Vec<f64>) {
    let (lo, hi) = vector.support;
    let width = hi - lo;
    let per_panel = 16usize;
    let panels = ((width * pmax / 9.0).ceil() as usize).clamp(16, 512);
    let (gn, gw) = gauss_legendre(per_panel);
    let h = width / panels as f64;
    let mut xs = Vec::with_capacity(panels * per_panel);
    let mut amps = Vec::with_capacity(panels * per_panel);
    for p in 0..panels {
        let start = lo + p as f64 * h;
        let c = start + 0.5 * h;
        let d = 0.5 * h;
        for (t, w) in gn.iter().zip(&gw) {
            let x = c + d * t;
            xs.push(x);
            amps.push(w * d * vector.density_at(x));
        }
    }
    (xs, amps)
}

/// Cyclicity probe: build net elements (phi_j, y_k), compute the Gram in the
/// L^2(R_+) transform picture, and report projection deficits of each panel
/// vector for growing rank prefixes.
pub fn rs_probe(
    phis: &[TestFunction],
    ys: &[f64],
    panel: &[KernelSpan],
    ranks: &[usize],
    quad: Quadrature,
) -> Result<NetProbeReport> {
    let mut elements = Vec::new();
    for &y in ys {
        for phi in phis {
            elements.push(smear(phi, y, quad)?);
        }
    }
    let n = elements.len();
    let mut report = NetProbeReport {
        gram_rank: 0,
        smallest_singular_value: 0.0,
        ranks: ranks.to_vec(),
        deficits: Vec::new(),
        real_span_deficits: Vec::new(),
        kms_max_deviation: None,
        verdicts: BTreeMap::new(),
    };
    if n == 0 {
        // empty span: nothing projects, every deficit is 1
        report.deficits = vec![vec![1.0; ranks.len()]; panel.len()];
        report.real_span_deficits = report.deficits.clone();
        report.verdicts.insert("monotone_in_rank".into(), true);
        return Ok(report);
    }

    // momentum-side transforms; x_max sets the oscillation scale
    let x_max = elements
        .iter()
        .map(|e| e.vector.support.0.abs().max(e.vector.support.1.abs()))
        .fold(1.0, f64::max);
    let pmax = 450.0;
    let grid = MomentumGrid::new(pmax, x_max);
    let hats: Vec<Vec<Complex64>> = elements
        .iter()
        .map(|e| {
            let (xs, amps) = oscillation_samples(&e.vector, pmax);
            grid.transform(&xs, &amps)
        })
        .collect();

    // complex Gram <u_j, u_k> (the common phase cancels)
    let mut gram = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for j in 0..n {
        for k in j..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for (i, &w) in grid.weights.iter().enumerate() {
                acc += hats[j][i].conj() * hats[k][i] * w;
            }
            gram[j][k] = acc;
            gram[k][j] = acc.conj();
        }
    }

    // panel pairings <u_j, w> on the same grid; for w = sum c_l K_{z_l} the
    // transform side is sum c_l e^{-i conj(z_l) p}
    let phase = Complex64::new(0.0, -FRAC_PI_4).exp();
    let mut pairings = vec![vec![Complex64::new(0.0, 0.0); n]; panel.len()];
    for (pi, w) in panel.iter().enumerate() {
        let what: Vec<Complex64> = grid
            .nodes
            .iter()
            .map(|&p| {
                w.terms()
                    .iter()
                    .map(|&(c, z)| c * (Complex64::new(0.0, -p) * z.conj()).exp())
                    .sum()
            })
            .collect();
        for j in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for (i, &wt) in grid.weights.iter().enumerate() {
                acc += hats[j][i].conj() * what[i] * wt;
            }
            pairings[pi][j] = phase.conj() * acc;
        }
    }

    // spectral data of the full Gram for the report
    let (eigs, _) = hermitian_eigen(&gram);
    let lam_max = eigs.iter().cloned().fold(0.0, f64::max);
    let floor = lam_max * 1e-13;
    report.gram_rank = eigs.iter().filter(|&&l| l > floor).count();
    report.smallest_singular_value = eigs.iter().cloned().fold(f64::INFINITY, f64::min).max(0.0);

    for (pi, w) in panel.iter().enumerate() {
        let wn = kernel_inner(w, w).re;
        let mut by_rank = Vec::with_capacity(ranks.len());
        let mut by_rank_real = Vec::with_capacity(ranks.len());
        for &r in ranks {
            let r = r.min(n);
            let sub: Vec<Vec<Complex64>> =
                (0..r).map(|j| (0..r).map(|k| gram[j][k]).collect()).collect();
            let b: Vec<Complex64> = (0..r).map(|j| pairings[pi][j]).collect();
            let t = hermitian_pseudo_solve(&sub, &b);
            let proj: f64 = b.iter().zip(&t).map(|(bj, tj)| (bj.conj() * tj).re).sum();
            by_rank.push(((wn - proj).max(0.0) / wn).sqrt());
            // real span: real Gram Re G, real rhs Re b
            let breal: Vec<f64> = b.iter().map(|z| z.re).collect();
            let sub_real: Vec<Vec<f64>> =
                (0..r).map(|j| (0..r).map(|k| gram[j][k].re).collect()).collect();
            let treal = symmetric_pseudo_solve(&sub_real, &breal);
            let proj_real: f64 = breal.iter().zip(&treal).map(|(bj, tj)| bj * tj).sum();
            by_rank_real.push(((wn - proj_real).max(0.0) / wn).sqrt());
        }
        report.deficits.push(by_rank);
        report.real_span_deficits.push(by_rank_real);
    }

    let monotone = report.deficits.iter().all(|row| {
        row.windows(2).all(|p| p[1] <= p[0] * 1.05 + 1e-12)
    });
    report.verdicts.insert("monotone_in_rank".into(), monotone);
    Ok(report)
}

fn hermitian_eigen(g: &[Vec<Complex64>]) -> (Vec<f64>, nalgebra::DMatrix<f64>) {
    // real embedding [[Re, -Im], [Im, Re]] of the Hermitian matrix
    let n = g.len();
    let mut m = nalgebra::DMatrix::<f64>::zeros(2 * n, 2 * n);
    for j in 0..n {
        for k in 0..n {
            m[(j, k)] = g[j][k].re;
            m[(j, n + k)] = -g[j][k].im;
            m[(n + j, k)] = g[j][k].im;
            m[(n + j, n + k)] = g[j][k].re;
        }
    }
    let se = nalgebra::SymmetricEigen::new(m);
    // eigenvalues come doubled; take every other one after sorting
    let mut all: Vec<f64> = se.eigenvalues.iter().cloned().collect();
    all.sort_by(f64::total_cmp);
    let dedup: Vec<f64> = all.iter().step_by(2).cloned().collect();
    (dedup, se.eigenvectors)
}

fn hermitian_pseudo_solve(g: &[Vec<Complex64>], b: &[Complex64]) -> Vec<Complex64> {
    let n = g.len();
    let mut m = nalgebra::DMatrix::<f64>::zeros(2 * n, 2 * n);
    for j in 0..n {
        for k in 0..n {
            m[(j, k)] = g[j][k].re;
            m[(j, n + k)] = -g[j][k].im;
            m[(n + j, k)] = g[j][k].im;
            m[(n + j, n + k)] = g[j][k].re;
        }
    }
    let mut rhs = nalgebra::DVector::<f64>::zeros(2 * n);
    for j in 0..n {
        rhs[j] = b[j].re;
        rhs[n + j] = b[j].im;
    }
    let x = pseudo_solve(m, rhs);
    (0..n).map(|j| Complex64::new(x[j], x[n + j])).collect()
}

fn symmetric_pseudo_solve(g: &[Vec<f64>], b: &[f64]) -> Vec<f64> {
    let n = g.len();
    let m = nalgebra::DMatrix::<f64>::from_fn(n, n, |j, k| g[j][k]);
    let rhs = nalgebra::DVector::<f64>::from_column_slice(b);
    pseudo_solve(m, rhs).as_slice().to_vec()
}

fn pseudo_solve(m: nalgebra::DMatrix<f64>, b: nalgebra::DVector<f64>) -> nalgebra::DVector<f64> {
    let se = nalgebra::SymmetricEigen::new(m);
    let lam_max = se.eigenvalues.iter().cloned().fold(0.0, f64::max);
    let floor = lam_max * 1e-13;
    let proj = se.eigenvectors.transpose() * b;
    let scaled = nalgebra::DVector::from_fn(proj.len(), |i, _| {
        if se.eigenvalues[i] > floor {
            proj[i] / se.eigenvalues[i]
        } else {
            0.0
        }
    });
    &se.eigenvectors * scaled
}

/// Wedge/KMS probe: every element must pass the strip-endpoint comparison.
/// Exactly one wedge orientation passes; the other reaches the opposite
/// endpoint with an order-one phase mismatch.
pub fn bw_probe(
    wedge_sign: i8,
    elements: &[NetElement],
    grid: &[Complex64],
    kms_tol: f64,
) -> Result<NetProbeReport> {
    assert!(wedge_sign == 1 || wedge_sign == -1);
    let mut max_dev: f64 = 0.0;
    for e in elements {
        let rep = kms_check(&e.vector, grid)?;
        max_dev = max_dev.max(rep.max_deviation);
    }
    let mut verdicts = BTreeMap::new();
    verdicts.insert("pass".into(), max_dev < kms_tol);
    Ok(NetProbeReport {
        gram_rank: elements.len(),
        smallest_singular_value: 0.0,
        ranks: vec![],
        deficits: vec![],
        real_span_deficits: vec![],
        kms_max_deviation: Some(max_dev),
        verdicts,
    })
}

/// Membership in the wedge-intersection net: sample group elements g with
/// region inside g.W and require U(g)^{-1} v to pass the KMS test for each.
pub fn regnet_membership(
    v: &CauchyVector,
    region: &OpenRegion,
    wedge_sign: i8,
    g_samples: usize,
    seed: u64,
    kms_tol: f64,
    grid: &[Complex64],
) -> Result<bool> {
    assert!(wedge_sign == 1 || wedge_sign == -1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // cosets g with region inside g.W = { sign(b - b0) = sign }: the offset
    // b0 must clear the region's b-extent on the matching side
    let samples: Vec<CAffine> = match region {
        OpenRegion::Box(bx) => {
            let mut out = Vec::with_capacity(g_samples);
            for k in 0..g_samples {
                // boundary-biased offsets approaching the coset frontier
                let delta = 0.01 * 1.6_f64.powi((k % 12) as i32) * rng.gen_range(0.5..1.5);
                let b0 = match wedge_sign {
                    -1 => bx.b_hi + delta,
                    _ => bx.b_lo - delta,
                };
                let a0 = rng.gen_range(-1.2..1.2_f64).exp();
                out.push(CAffine::real(b0, a0)?);
            }
            out
        }
        OpenRegion::Wedge { sign } => {
            if *sign != wedge_sign {
                return Err(Error::NoCosetSamples);
            }
            let mut out = Vec::with_capacity(g_samples);
            for k in 0..g_samples {
                let delta = 0.01 * 1.6_f64.powi((k % 12) as i32) * rng.gen_range(0.5..1.5);
                let b0 = -f64::from(wedge_sign) * delta;
                let a0 = rng.gen_range(-1.2..1.2_f64).exp();
                out.push(CAffine::real(b0, a0)?);
            }
            out
        }
    };
    if samples.is_empty() {
        return Err(Error::NoCosetSamples);
    }
    for g in samples {
        let moved = v.act_affine(affine_inv(g))?;
        match kms_check(&moved, grid) {
            Ok(rep) => {
                if rep.endpoint != 1 || rep.max_deviation >= kms_tol {
                    return Ok(false);
                }
            }
            Err(Error::ContinuationLeftDomain) => return Ok(false),
            Err(e) => return Err(e),
        }
    }
    Ok(true)
}

/// The tuned element family for the cyclicity probe: one full-box bump and a
/// geometric ladder of boundary parameters.
pub fn default_rs_family(region: RegionBox, count: usize) -> (Vec<TestFunction>, Vec<f64>) {
    let phi = TestFunction::bump(region);
    (vec![phi], geometric_ladder(0.15, 12.0, count))
}

/// count points from lo to hi in geometric progression.
pub fn geometric_ladder(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    assert!(count >= 2 && lo > 0.0 && hi > lo);
    (0..count)
        .map(|k| lo * (hi / lo).powf(k as f64 / (count - 1) as f64))
        .collect()
}
