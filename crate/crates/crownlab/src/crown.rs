//! Crown domains in Aff(C) and SL2(C): membership predicates, group
//! actions, the embedding into SL2, and sampled verification of the
//! holomorphic-extension axiom for the modular orbit.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of Aff(C) = C x| C^*: z -> b + a z.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CAffine {
    pub b: Complex64,
    pub a: Complex64,
}

impl CAffine {
    pub fn new(b: Complex64, a: Complex64) -> Result<Self> {
        if a.norm() == 0.0 {
            return Err(Error::InvalidGroupElement("dilation part must be nonzero".into()));
        }
        Ok(CAffine { b, a })
    }

    pub fn identity() -> Self {
        CAffine { b: Complex64::new(0.0, 0.0), a: Complex64::new(1.0, 0.0) }
    }

    pub fn real(b: f64, a: f64) -> Result<Self> {
        if a <= 0.0 {
            return Err(Error::InvalidGroupElement("real points need a > 0".into()));
        }
        Ok(CAffine { b: Complex64::new(b, 0.0), a: Complex64::new(a, 0.0) })
    }

    pub fn is_real(&self) -> bool {
        self.b.im == 0.0 && self.a.im == 0.0 && self.a.re > 0.0
    }
}

/// Semidirect product law (b, a)(b', a') = (b + a b', a a').
pub fn affine_mul(g1: CAffine, g2: CAffine) -> CAffine {
    CAffine { b: g1.b + g1.a * g2.b, a: g1.a * g2.a }
}

pub fn affine_inv(g: CAffine) -> CAffine {
    CAffine { b: -g.b / g.a, a: 1.0 / g.a }
}

/// The antiholomorphic involution (b, a) -> (-conj b, conj a).
pub fn tau_bar_aff(g: CAffine) -> CAffine {
    CAffine { b: -g.b.conj(), a: g.a.conj() }
}

/// A 2x2 complex matrix with unit determinant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CMat2 {
    /// Row-major entries [[a, b], [c, d]].
    pub m: [[Complex64; 2]; 2],
}

impl CMat2 {
    pub fn new(m: [[Complex64; 2]; 2]) -> Result<Self> {
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        if (det - Complex64::new(1.0, 0.0)).norm() > 1e-12 {
            return Err(Error::InvalidGroupElement(format!("determinant {det} is not 1")));
        }
        Ok(CMat2 { m })
    }

    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        CMat2 { m: [[one, zero], [zero, one]] }
    }

    pub fn det(&self) -> Complex64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn mul(&self, other: &CMat2) -> CMat2 {
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, entry) in row.iter_mut().enumerate() {
                for k in 0..2 {
                    *entry += self.m[r][k] * other.m[k][c];
                }
            }
        }
        CMat2 { m: out }
    }

    pub fn inv(&self) -> CMat2 {
        // unit determinant: the inverse is the adjugate
        CMat2 {
            m: [
                [self.m[1][1], -self.m[0][1]],
                [-self.m[1][0], self.m[0][0]],
            ],
        }
    }

    pub fn is_real(&self) -> bool {
        self.m.iter().flatten().all(|z| z.im == 0.0)
    }

    /// exp(w h) = diag(e^{w/2}, e^{-w/2}) for h = (1/2) diag(1, -1).
    pub fn exp_h(w: Complex64) -> CMat2 {
        let zero = Complex64::new(0.0, 0.0);
        CMat2 { m: [[(w / 2.0).exp(), zero], [zero, (-w / 2.0).exp()]] }
    }
}

/// Crown-domain tags for the affine and SL2 pictures.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "domain", content = "r")]
pub enum DomainTag {
    Xi1,
    Xi2,
    XiPlus(f64),
    XiMinus(f64),
    XiSl2c,
}

impl DomainTag {
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        match t.as_str() {
            "xi1" => return Ok(DomainTag::Xi1),
            "xi2" => return Ok(DomainTag::Xi2),
            "xisl2c" | "xi_sl2c" => return Ok(DomainTag::XiSl2c),
            _ => {}
        }
        if let Some(rest) = t.strip_prefix("xiplus:").or_else(|| t.strip_prefix("xi+:")) {
            let r: f64 = rest.parse().map_err(|_| Error::ConfigInvalid(format!("bad radius in {s}")))?;
            if r <= 0.0 {
                return Err(Error::ConfigInvalid("radius must be positive".into()));
            }
            return Ok(DomainTag::XiPlus(r));
        }
        if let Some(rest) = t.strip_prefix("ximinus:").or_else(|| t.strip_prefix("xi-:")) {
            let r: f64 = rest.parse().map_err(|_| Error::ConfigInvalid(format!("bad radius in {s}")))?;
            if r <= 0.0 {
                return Err(Error::ConfigInvalid("radius must be positive".into()));
            }
            return Ok(DomainTag::XiMinus(r));
        }
        Err(Error::ConfigInvalid(format!("unknown domain `{s}`")))
    }

    pub fn label(&self) -> String {
        match self {
            DomainTag::Xi1 => "xi1".into(),
            DomainTag::Xi2 => "xi2".into(),
            DomainTag::XiPlus(r) => format!("xiplus:{r}"),
            DomainTag::XiMinus(r) => format!("ximinus:{r}"),
            DomainTag::XiSl2c => "xisl2c".into(),
        }
    }
}

/// Membership of an affine point in one of the affine crown domains.
/// All domains are open; the inequalities are strict with no slack.
pub fn in_domain_affine(tag: DomainTag, g: CAffine) -> Result<bool> {
    match tag {
        DomainTag::Xi1 => Ok(g.a.re > 0.0),
        DomainTag::Xi2 => Ok(g.b.im.abs() < g.a.re),
        DomainTag::XiPlus(r) => Ok(g.b.im / r + g.a.re > 0.0),
        DomainTag::XiMinus(r) => Ok(-g.b.im / r + g.a.re > 0.0),
        DomainTag::XiSl2c => Err(Error::GroupMismatch),
    }
}

/// Membership of an SL2(C) point: g.i in C_+ and g.(-i) in C_-.
pub fn in_domain_sl2(tag: DomainTag, g: &CMat2) -> Result<bool> {
    match tag {
        DomainTag::XiSl2c => {
            let i = Complex64::new(0.0, 1.0);
            let up = mobius(g, i)?;
            let down = mobius(g, -i)?;
            Ok(up.im > 0.0 && down.im < 0.0)
        }
        _ => Err(Error::GroupMismatch),
    }
}

/// Moebius action (a z + b) / (c z + d) of the matrix itself.
pub fn mobius(g: &CMat2, z: Complex64) -> Result<Complex64> {
    let den = g.m[1][0] * z + g.m[1][1];
    if den.norm() < 1e-14 {
        return Err(Error::PoleHit);
    }
    Ok((g.m[0][0] * z + g.m[0][1]) / den)
}

/// The embedding of Aff(C) with Re a > 0 into SL2(C),
/// (b, a) -> [[a^{1/2}, -b a^{-1/2}], [0, a^{-1/2}]] with the principal
/// square root.
///
/// As a Moebius transformation the image acts by z -> a z - b, while its
/// inverse acts by z -> (z + b) / a.
pub fn iota(g: CAffine) -> Result<CMat2> {
    if g.a.im == 0.0 && g.a.re <= 0.0 {
        return Err(Error::BranchCut);
    }
    let root = g.a.sqrt(); // principal branch, cut on (-inf, 0]
    let zero = Complex64::new(0.0, 0.0);
    Ok(CMat2 { m: [[root, -g.b / root], [zero, 1.0 / root]] })
}

/// Report of a sampled holomorphic-extension sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Cr2Report {
    pub domain: String,
    pub samples: usize,
    pub failures: usize,
    pub worst_margin: f64,
    pub seed: u64,
}

/// Sweep the domain's tau-bar-fixed points p and check that
/// exp(i t h).p stays inside the domain for every grid point t in
/// (-pi/2, pi/2). Reports the failure count and the worst margin.
pub fn cr2_sweep(tag: DomainTag, samples: usize, t_grid: &[f64], seed: u64) -> Result<Cr2Report> {
    assert!(t_grid.iter().all(|t| t.abs() < std::f64::consts::FRAC_PI_2));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0usize;
    let mut worst = f64::INFINITY;

    for _ in 0..samples {
        match tag {
            DomainTag::Xi2 => {
                // fixed points (i c, a) with |c| < a
                let a = rng.gen_range(0.05..4.0);
                let c = rng.gen_range(-1.0..1.0) * a * 0.999;
                for &t in t_grid {
                    let p = affine_mul(
                        CAffine { b: Complex64::new(0.0, 0.0), a: Complex64::new(0.0, t).exp() },
                        CAffine { b: Complex64::new(0.0, c), a: Complex64::new(a, 0.0) },
                    );
                    let margin = p.a.re - p.b.im.abs();
                    worst = worst.min(margin);
                    if !in_domain_affine(tag, p)? {
                        failures += 1;
                    }
                }
            }
            DomainTag::Xi1 => {
                // W_1^c = i R x R_+
                let a = rng.gen_range(0.05..4.0);
                let c = rng.gen_range(-4.0..4.0);
                for &t in t_grid {
                    let p = affine_mul(
                        CAffine { b: Complex64::new(0.0, 0.0), a: Complex64::new(0.0, t).exp() },
                        CAffine { b: Complex64::new(0.0, c), a: Complex64::new(a, 0.0) },
                    );
                    let margin = p.a.re;
                    worst = worst.min(margin);
                    if !in_domain_affine(tag, p)? {
                        failures += 1;
                    }
                }
            }
            DomainTag::XiPlus(r) | DomainTag::XiMinus(r) => {
                let sign = if matches!(tag, DomainTag::XiPlus(_)) { 1.0 } else { -1.0 };
                // fixed points (i c, a) with sign * c / r + a > 0
                let a = rng.gen_range(0.05..4.0);
                let c = sign * rng.gen_range(-0.999..4.0) * r * a;
                for &t in t_grid {
                    let p = affine_mul(
                        CAffine { b: Complex64::new(0.0, 0.0), a: Complex64::new(0.0, t).exp() },
                        CAffine { b: Complex64::new(0.0, c), a: Complex64::new(a, 0.0) },
                    );
                    let margin = sign * p.b.im / r + p.a.re;
                    worst = worst.min(margin);
                    if !in_domain_affine(tag, p)? {
                        failures += 1;
                    }
                }
            }
            DomainTag::XiSl2c => {
                // fixed points through iota of (i c, a), |c| < a e^{-|s|},
                // shifted along exp(s h)
                let a = rng.gen_range(0.1..2.0);
                let s: f64 = rng.gen_range(-1.0..1.0);
                let c = rng.gen_range(-1.0..1.0) * a * (-s.abs()).exp() * 0.999;
                let base = iota(CAffine { b: Complex64::new(0.0, c), a: Complex64::new(a, 0.0) })?
                    .mul(&CMat2::exp_h(Complex64::new(s, 0.0)));
                let i = Complex64::new(0.0, 1.0);
                for &t in t_grid {
                    let p = CMat2::exp_h(Complex64::new(0.0, t)).mul(&base);
                    let up = mobius(&p, i)?;
                    let down = mobius(&p, -i)?;
                    let margin = up.im.min(-down.im);
                    worst = worst.min(margin);
                    if !in_domain_sl2(tag, &p)? {
                        failures += 1;
                    }
                }
            }
        }
    }
    Ok(Cr2Report { domain: tag.label(), samples, failures, worst_margin: worst, seed })
}

/// Wedge membership in the real group Aff(R)_e.
///
/// Factoring g = exp(t h) exp(s x) gives b = a s, so g lies in the open
/// wedge of orientation `omega_sign` exactly when sign(b) = omega_sign;
/// the boundary b = 0 is excluded.
pub fn wedge_membership_aff(g: CAffine, omega_sign: i8) -> Result<bool> {
    if !g.is_real() {
        return Err(Error::NotRealPoint);
    }
    assert!(omega_sign == 1 || omega_sign == -1, "omega_sign must be +-1");
    let b = g.b.re;
    Ok(b != 0.0 && b.signum() == f64::from(omega_sign))
}
