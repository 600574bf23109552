//! Named verification suites behind `verify-all`: each check compares a
//! measured quantity against its pinned threshold and lands in a
//! [`SuiteReport`].

use std::sync::Arc;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::RunConfig;
use crate::crown::{
    cr2_sweep, in_domain_affine, in_domain_sl2, iota, CAffine, DomainTag,
};
use crate::error::Result;
use crate::hardy::{
    act_affine, beta_plus, growth_fit, kernel_inner, kernel_norm_sq_via_l2, kms_check,
    modular_flow, norm_sq, pair_boundary, richardson_limit, standard_grid,
    zeta_equivariance_check, CauchyVector, KernelSpan,
};
use crate::lie::{catalog, classify_euler_split_oscillator, LieElement};
use crate::nets::{
    bw_probe, default_rs_family, geometric_ladder, rs_probe, smear, RegionBox, TestFunction,
};
use crate::quad::{Quadrature, Rule};
use crate::report::SuiteReport;
use crate::schober::{
    hardy_norm_bound, nontempered_demo, schober_g, verify_envelope_bound, verify_strip_bound,
};

/// Grid endpoint deliberately short of the strip boundary pi/2, where
/// the flow leaves its domain.
#[allow(clippy::approx_constant)]
const T_EDGE: f64 = 1.5707;

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Grading algebra: cubic identity, projector partition and bracket grading
/// for every catalog Euler element; then the sampled hyperplane
/// classification in the split oscillator.
pub fn euler_suite(cfg: &RunConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("euler", cfg.seed);
    let tol = cfg.tolerances.algebraic;

    for name in ["aff", "sl2", "split_oscillator", "sl3"] {
        let t0 = Instant::now();
        let cat = catalog(name)?;
        let h = cat.element("h").expect("catalog carries h");
        let ad = cat.algebra.ad(h);
        let cubic = ((&ad * &ad * &ad) - &ad).amax();
        report.push(&format!("cubic_identity.{name}"), "euler.ad_cubed", cubic, tol, t0);

        let t0 = Instant::now();
        let s = cat.algebra.euler_structure(h)?;
        let n = cat.algebra.dim();
        let id = nalgebra::DMatrix::<f64>::identity(n, n);
        let partition = (&s.p_minus + &s.p_zero + &s.p_plus - &id).amax();
        report.push(&format!("projector_partition.{name}"), "euler.grading", partition, tol, t0);

        // bracket grading on projector images of basis vectors
        let t0 = Instant::now();
        let projs = [(-1i32, &s.p_minus), (0, &s.p_zero), (1, &s.p_plus)];
        let mut worst: f64 = 0.0;
        for j in 0..n {
            let ej = nalgebra::DVector::from_fn(n, |r, _| if r == j { 1.0 } else { 0.0 });
            for k in 0..n {
                let ek = nalgebra::DVector::from_fn(n, |r, _| if r == k { 1.0 } else { 0.0 });
                for (lu, pu) in projs {
                    for (lv, pv) in projs {
                        let a = LieElement((pu * &ej).as_slice().to_vec());
                        let b = LieElement((pv * &ek).as_slice().to_vec());
                        let br = cat.algebra.bracket(&a, &b)?;
                        let brv = nalgebra::DVector::from_column_slice(br.coords());
                        let sum = lu + lv;
                        let res = if (-1..=1).contains(&sum) {
                            let p = projs.iter().find(|(l, _)| *l == sum).unwrap().1;
                            (p * &brv - &brv).amax()
                        } else {
                            brv.amax()
                        };
                        worst = worst.max(res);
                    }
                }
            }
        }
        report.push(&format!("bracket_grading.{name}"), "euler.grade_additivity", worst, tol, t0);
    }

    // sampled classification agreement in the split oscillator
    let t0 = Instant::now();
    let cat = catalog("split_oscillator")?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut disagreements = 0usize;
    for trial in 0..cfg.samples.euler_classify {
        let mut coords: Vec<f64> = (0..4).map(|_| rng.gen_range(-2.0..2.0)).collect();
        if trial % 2 == 0 {
            coords[3] = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        }
        let x = LieElement(coords);
        if classify_euler_split_oscillator(&cat.algebra, &x)? != cat.algebra.is_euler(&x) {
            disagreements += 1;
        }
    }
    report.push("hyperplane_classification", "euler.split_oscillator_set", disagreements as f64, 0.5, t0);
    Ok(report)
}

/// Domain identities and the orbit-extension sweeps.
pub fn crown_suite(cfg: &RunConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("crown", cfg.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xC0FFEE);

    let t0 = Instant::now();
    let mut bad_intersection = 0usize;
    let mut bad_preimage = 0usize;
    for _ in 0..cfg.samples.crown_membership {
        let g = CAffine {
            b: c64(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)),
            a: c64(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)),
        };
        if g.a.norm() < 1e-6 {
            continue;
        }
        let x2 = in_domain_affine(DomainTag::Xi2, g)?;
        let xp = in_domain_affine(DomainTag::XiPlus(1.0), g)?;
        let xm = in_domain_affine(DomainTag::XiMinus(1.0), g)?;
        if x2 != (xp && xm) {
            bad_intersection += 1;
        }
        // the preimage identity is sampled over the larger domain
        let g1 = CAffine { b: g.b, a: c64(rng.gen_range(0.05..3.0), g.a.im) };
        let lhs = in_domain_affine(DomainTag::Xi2, g1)?;
        let rhs = in_domain_sl2(DomainTag::XiSl2c, &iota(g1)?)?;
        if lhs != rhs {
            bad_preimage += 1;
        }
    }
    report.push("xi2_intersection", "crown.xi2_eq_xiplus_cap_ximinus", bad_intersection as f64, 0.5, t0);
    let t1 = Instant::now();
    report.push("xi2_preimage", "crown.xi2_eq_iota_preimage", bad_preimage as f64, 0.5, t1);

    let grid: Vec<f64> = (0..cfg.samples.cr2_grid)
        .map(|k| -1.55 + 3.1 * k as f64 / (cfg.samples.cr2_grid.max(2) - 1) as f64)
        .collect();
    for tag in [DomainTag::Xi2, DomainTag::Xi1] {
        let t0 = Instant::now();
        let rep = cr2_sweep(tag, cfg.samples.cr2_points, &grid, cfg.seed)?;
        report.push(
            &format!("orbit_extension.{}", rep.domain),
            "crown.strip_orbit_stays_inside",
            rep.failures as f64,
            0.5,
            t0,
        );
    }
    Ok(report)
}

/// Hardy closed forms: kernel norms along both routes, the flow-norm law
/// and the growth exponent.
pub fn hardy_suite(cfg: &RunConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("hardy", cfg.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x4A2D);
    let quad = Quadrature::new(Rule::TanhSinh, cfg.tolerances.quadrature);

    let t0 = Instant::now();
    let mut worst_analytic: f64 = 0.0;
    let mut worst_l2: f64 = 0.0;
    for _ in 0..cfg.samples.hardy_norms {
        let z = c64(rng.gen_range(-3.0..3.0), rng.gen_range(0.1..4.0));
        let k = KernelSpan::kernel_at(z)?;
        let want = 1.0 / (2.0 * z.im);
        worst_analytic = worst_analytic.max((norm_sq(&k) - want).abs());
        worst_l2 = worst_l2.max((kernel_norm_sq_via_l2(z, &quad)? - want).abs());
    }
    report.push("kernel_norm.analytic", "hardy.norm_half_im", worst_analytic, cfg.tolerances.algebraic, t0);
    let t1 = Instant::now();
    report.push("kernel_norm.l2_route", "hardy.norm_half_im", worst_l2, 1e-6, t1);

    let t0 = Instant::now();
    let mut worst_flow: f64 = 0.0;
    for y in [0.5, 1.0, 2.0] {
        let k = KernelSpan::kernel_at(c64(0.0, y))?;
        for j in 0..61 {
            let t = -1.5 + 3.0 * j as f64 / 60.0;
            let flowed = modular_flow(c64(0.0, t), &k)?;
            let want = 1.0 / (2.0 * y * t.cos());
            worst_flow = worst_flow.max((norm_sq(&flowed) - want).abs());
        }
    }
    report.push("flow_norm_law", "hardy.flow_norm_cosine", worst_flow, 1e-10, t0);

    let t0 = Instant::now();
    let grid: Vec<f64> = (0..64).map(|k| 1.2 + (T_EDGE - 1.2) * k as f64 / 63.0).collect();
    let mut worst_n: f64 = 0.0;
    for y in [0.5, 1.0, 2.0] {
        let fit = growth_fit(&KernelSpan::kernel_at(c64(0.0, y))?, &grid)?;
        worst_n = worst_n.max((fit.n - 1.0).abs());
    }
    report.push("growth_exponent", "hardy.tempered_exponent_one", worst_n, 0.05, t0);
    Ok(report)
}

/// Boundary map: extrapolated pairings against the closed form, and the
/// twisted derived-action equivariance.
pub fn boundary_suite(cfg: &RunConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("boundary", cfg.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xBE7A);

    let t0 = Instant::now();
    let panel: Vec<KernelSpan> = (0..16)
        .map(|_| {
            KernelSpan::new(vec![(
                c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                c64(rng.gen_range(-2.0..2.0), rng.gen_range(0.2..3.0)),
            )])
            .unwrap()
        })
        .collect();
    let mut worst: f64 = 0.0;
    for y in [0.5, 1.0, 2.0] {
        let v = KernelSpan::kernel_at(c64(0.0, y))?;
        let b = beta_plus(&v)?;
        for u in &panel {
            let closed = pair_boundary(u, &b);
            let lim = richardson_limit(
                |s| {
                    let flowed = modular_flow(
                        c64(0.0, -(std::f64::consts::FRAC_PI_2 - s)),
                        &v,
                    )
                    .expect("inside the strip");
                    kernel_inner(u, &flowed)
                },
                0.05,
                2.0,
                6,
            );
            worst = worst.max((closed - lim).norm());
        }
    }
    report.push("boundary_pairing_limit", "beta.extrapolated_pairings", worst, 1e-6, t0);

    let t0 = Instant::now();
    let v = KernelSpan::new(vec![(c64(1.0, 0.0), c64(0.0, 1.0)), (c64(0.5, 0.0), c64(0.0, 2.2))])?;
    let mut worst_zeta: f64 = 0.0;
    for (alpha, beta) in [(1.0, 0.0), (0.0, 1.0)] {
        let rep = zeta_equivariance_check(alpha, beta, &v, &panel)?;
        worst_zeta = worst_zeta.max(rep.max_pairing_deviation);
    }
    report.push("twisted_equivariance", "beta.quarter_rotation_intertwiner", worst_zeta, 1e-6, t0);
    Ok(report)
}

/// Strip-endpoint (KMS) identity for randomized smeared vectors, and the
/// wedge-orientation discrimination.
pub fn kms_bw_suite(cfg: &RunConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("kms_bw", cfg.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x1335);
    let grid = standard_grid();
    let quad = Quadrature::new(Rule::GaussLegendre, 1e-11);
    let phase = c64(0.0, -std::f64::consts::FRAC_PI_4).exp();

    let t0 = Instant::now();
    let mut worst: f64 = 0.0;
    for _ in 0..cfg.samples.kms_vectors {
        let center = rng.gen_range(0.6..3.0);
        let width = rng.gen_range(0.1..0.4);
        let halfspan = rng.gen_range(0.3..0.5_f64).min(center * 0.9);
        let amp = rng.gen_range(0.5..2.0);
        let xi = CauchyVector::new(
            phase,
            (center - halfspan, center + halfspan),
            Arc::new(move |x: f64| {
                let u: f64 = (x - center) / halfspan;
                if u.abs() >= 1.0 {
                    0.0
                } else {
                    amp * (-(u / (width / halfspan)).powi(2)).exp() * (-1.0 / (1.0 - u * u)).exp()
                }
            }),
            quad,
        )?;
        let rep = kms_check(&xi, &grid)?;
        worst = worst.max(rep.max_deviation);
    }
    report.push("strip_endpoint_identity", "kms.phase_quarter", worst, 1e-8, t0);

    let t0 = Instant::now();
    let mut devs = [0.0_f64; 2];
    for (i, sign) in [-1i8, 1].iter().enumerate() {
        let bx = match sign {
            -1 => RegionBox::new(-2.0, -1.0, 0.8, 1.25)?,
            _ => RegionBox::new(1.0, 2.0, 0.8, 1.25)?,
        };
        let phi = TestFunction::bump(bx);
        let elements: Vec<_> = [0.1, 0.2, 0.4]
            .iter()
            .map(|&y| smear(&phi, y, quad))
            .collect::<Result<_>>()?;
        let rep = bw_probe(*sign, &elements, &grid, cfg.tolerances.kms)?;
        devs[i] = rep.kms_max_deviation.unwrap_or(f64::NAN);
    }
    report.push("wedge_orientation.pass_side", "bw.kms_on_wedge", devs[0], cfg.tolerances.kms, t0);
    let t1 = Instant::now();
    let ratio = devs[1] / devs[0].max(1e-14);
    report.push_bool("wedge_orientation.discrimination", "bw.opposite_side_fails", ratio > 1e3, t1);
    Ok(report)
}

/// Cyclicity probe: deficits of the base kernel fall under the threshold by
/// the configured rank and shrink monotonically in rank and region size.
pub fn rs_suite(cfg: &RunConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("rs", cfg.seed);
    let quad = Quadrature::new(Rule::GaussLegendre, 1e-10);
    let panel = vec![KernelSpan::kernel_at(c64(0.0, 1.0))?];

    let t0 = Instant::now();
    let region = RegionBox::new(-0.1, 0.1, 0.9, 1.1)?;
    let (phis, ys) = default_rs_family(region, cfg.samples.rs_rank);
    let ranks = [8, 16, 32, cfg.samples.rs_rank];
    let rep = rs_probe(&phis, &ys, &panel, &ranks, quad)?;
    let final_deficit = *rep.deficits[0].last().unwrap();
    report.push("deficit_at_max_rank", "rs.totality_surrogate", final_deficit, cfg.tolerances.deficit, t0);

    let t1 = Instant::now();
    let monotone = rep.deficits[0].windows(2).all(|p| p[1] <= p[0] * 1.05 + 1e-12);
    report.push_bool("deficit_monotone_in_rank", "rs.rank_monotonicity", monotone, t1);

    // region growth: extend the family of a smaller region by the larger
    // region's bump at the same ladder
    let t2 = Instant::now();
    let small = RegionBox::new(-0.05, 0.05, 0.95, 1.05)?;
    let ys32 = geometric_ladder(0.15, 12.0, 32);
    let small_rep = rs_probe(&[TestFunction::bump(small)], &ys32, &panel, &[32], quad)?;
    let mixed = [TestFunction::bump(small), TestFunction::bump(region)];
    let mixed_rep = rs_probe(&mixed, &ys32, &panel, &[64], quad)?;
    let grown_ok = mixed_rep.deficits[0][0] <= small_rep.deficits[0][0] * 1.05 + 1e-12;
    report.push_bool("deficit_monotone_in_region", "rs.isotony_surrogate", grown_ok, t2);
    Ok(report)
}

/// Bounds and growth checks for the t^{-t} integral function.
pub fn schober_suite(cfg: &RunConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("schober", cfg.seed);

    let t0 = Instant::now();
    let strip = verify_strip_bound(cfg.samples.strip_bound, 0.1, cfg.seed, 1e-8)?;
    report.push("strip_bound", "schober.reciprocal_distance_bound", strip.violations as f64, 0.5, t0);

    let t0 = Instant::now();
    let envelope = verify_envelope_bound(cfg.samples.envelope_bound, cfg.seed ^ 1, 1e-8)?;
    report.push("envelope_bound", "schober.axis_envelope", envelope.violations as f64, 0.5, t0);

    let t0 = Instant::now();
    let mut prev = f64::INFINITY;
    let mut monotone = true;
    for k in 0..60 {
        let y = -1.5 + 7.5 * k as f64 / 59.0;
        let g = schober_g(y, 1e-9)?.value_c().re;
        if g >= prev {
            monotone = false;
        }
        prev = g;
    }
    report.push_bool("axis_monotone_decreasing", "schober.g_decreasing", monotone, t0);

    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5CB0);
    let y_grid: Vec<f64> = (0..10).map(|k| 0.05 + 0.35 * k as f64).collect();
    let mut bound_failures = 0usize;
    for _ in 0..cfg.samples.hardy_bound_pairs {
        // dilations kept in a band where the transported window stays
        // inside the admissible half-plane of the integrand
        let b = c64(rng.gen_range(-1.5..1.5), rng.gen_range(-0.8..0.8));
        let a = c64(rng.gen_range(0.8..2.0), rng.gen_range(-0.4..0.4));
        let rep = hardy_norm_bound(b, a, &y_grid, 1e-6)?;
        if !rep.pass {
            bound_failures += 1;
        }
    }
    report.push("transport_norm_bound", "schober.trace_sup_bound", bound_failures as f64, 0.5, t0);

    let t0 = Instant::now();
    let grid: Vec<f64> = (0..=40).map(|k| 0.25 * k as f64).collect();
    let demo = nontempered_demo(&[1.0, 10.0, 100.0], &grid)?;
    report.push_bool("superexponential_growth", "schober.outgrows_exponentials", demo.all_pass, t0);
    Ok(report)
}

/// The full suite behind `verify-all`.
pub fn verify_all(cfg: &RunConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("verify-all", cfg.seed);
    for suite in [
        euler_suite(cfg)?,
        crown_suite(cfg)?,
        hardy_suite(cfg)?,
        boundary_suite(cfg)?,
        kms_bw_suite(cfg)?,
        rs_suite(cfg)?,
        schober_suite(cfg)?,
    ] {
        report.merge(suite);
    }
    Ok(report)
}

/// Iota coherence report used by the `crown iota-check` subcommand.
pub fn iota_check(samples: usize, seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("iota", seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t0 = Instant::now();
    let mut worst_det: f64 = 0.0;
    let mut worst_action: f64 = 0.0;
    for _ in 0..samples {
        let g = CAffine {
            b: c64(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)),
            a: c64(rng.gen_range(0.05..3.0), rng.gen_range(-3.0..3.0)),
        };
        let m = iota(g)?;
        worst_det = worst_det.max((m.det() - c64(1.0, 0.0)).norm());
        let z = c64(rng.gen_range(-2.0..2.0), rng.gen_range(0.1..2.0));
        let fwd = crate::crown::mobius(&m, z)?;
        worst_action = worst_action.max((fwd - (g.a * z - g.b)).norm() / (1.0 + fwd.norm()));
    }
    report.push("determinant_one", "iota.unimodular", worst_det, 1e-12, t0);
    let t1 = Instant::now();
    report.push("moebius_action", "iota.affine_action", worst_action, 1e-9, t1);

    // function-level agreement of the two unitary actions
    let t2 = Instant::now();
    let mut worst_u: f64 = 0.0;
    for _ in 0..(samples / 10).max(10) {
        let g = CAffine::real(rng.gen_range(-2.0..2.0), rng.gen_range(0.2..4.0))?;
        let v = KernelSpan::kernel_at(c64(rng.gen_range(-1.0..1.0), rng.gen_range(0.3..2.0)))?;
        let via_sl2 = crate::hardy::act_sl2(&iota(g)?, &v)?;
        let direct = act_affine(g, &v)?;
        let z = c64(0.25, 1.1);
        worst_u = worst_u.max((via_sl2.evaluate(z) - direct.evaluate(z)).norm());
    }
    report.push("intertwines_unitaries", "iota.pi_compose_iota", worst_u, 1e-10, t2);
    Ok(report)
}
