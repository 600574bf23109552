//! `crownlab` command-line driver: seeded, reproducible verification sweeps
//! with JSON reports and CSV plot data.

use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use crownlab::complexnum::{format_complex, parse_complex};
use crownlab::config::RunConfig;
use crownlab::crown::{cr2_sweep, in_domain_affine, in_domain_sl2, iota, CAffine, DomainTag};
use crownlab::hardy::{growth_fit, kms_check, standard_grid, CauchyVector, KernelSpan};
use crownlab::lie::{catalog, classify_euler_split_oscillator, LieAlgebra, LieElement};
use crownlab::nets::{
    bw_probe, default_rs_family, regnet_membership, rs_probe, smear, OpenRegion, RegionBox,
    TestFunction,
};
use crownlab::quad::{Quadrature, Rule};
use crownlab::report::{write_atomic, SuiteReport};
use crownlab::schober::{
    hardy_norm_bound, nontempered_demo, schober_f, verify_envelope_bound, verify_strip_bound,
};
use crownlab::suites;

/// Default grid endpoint deliberately short of the strip boundary pi/2.
#[allow(clippy::approx_constant)]
const T_EDGE: f64 = 1.5707;

#[derive(Parser)]
#[command(name = "crownlab", version, about = "Euler-element algebra, crown domains, Hardy-space modular analysis and nets of real subspaces")]
struct Cli {
    /// TOML configuration file (defaults apply when omitted)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Random seed (overrides config; CROWNLAB_SEED overrides both)
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Euler-element operations on catalog or user algebras
    Euler {
        #[command(subcommand)]
        sub: EulerCmd,
    },
    /// Crown-domain membership and sweeps
    Crown {
        #[command(subcommand)]
        sub: CrownCmd,
    },
    /// Hardy-space diagnostics
    Hardy {
        #[command(subcommand)]
        sub: HardyCmd,
    },
    /// Net probes
    Net {
        #[command(subcommand)]
        sub: NetCmd,
    },
    /// Entire-function bounds and growth checks
    Schober {
        #[command(subcommand)]
        sub: SchoberCmd,
    },
    /// Run every verification suite and write the aggregate report
    VerifyAll {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct AlgebraArg {
    /// Catalog name (aff, sl2, heis, split_oscillator, sl3)
    #[arg(long, conflicts_with = "json")]
    algebra: Option<String>,
    /// JSON file with {"dim", "names", "c"}
    #[arg(long)]
    json: Option<PathBuf>,
}

impl AlgebraArg {
    fn load(&self) -> anyhow::Result<LieAlgebra> {
        if let Some(name) = &self.algebra {
            return Ok(catalog(name)?.algebra);
        }
        if let Some(path) = &self.json {
            let text = std::fs::read_to_string(path).context("reading algebra file")?;
            return Ok(LieAlgebra::from_json_str(&text)?);
        }
        bail!("provide --algebra NAME or --json FILE");
    }
}

#[derive(Subcommand)]
enum EulerCmd {
    /// Test whether an element is an Euler element
    Check {
        #[command(flatten)]
        algebra: AlgebraArg,
        /// Comma-separated coordinates in the algebra basis
        #[arg(long, allow_hyphen_values = true)]
        element: String,
    },
    /// Split-oscillator hyperplane classification
    Classify {
        /// Coordinates (z, q, p, h)
        #[arg(long, allow_hyphen_values = true)]
        element: String,
    },
    /// Grading dimensions and involution data of an Euler element
    Grading {
        #[command(flatten)]
        algebra: AlgebraArg,
        /// Element coordinates; defaults to the catalog element `h`
        #[arg(long, allow_hyphen_values = true)]
        element: Option<String>,
    },
}

#[derive(Subcommand)]
enum CrownCmd {
    /// Point membership in a crown domain
    Membership {
        /// Domain tag: xi1, xi2, xiplus:R, ximinus:R, xisl2c
        #[arg(long)]
        domain: String,
        /// Translation part, e.g. "0+0.5i"
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        /// Dilation part, e.g. "1+0i"
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
    /// Sampled orbit-extension sweep over the fixed-point set
    Cr2Sweep {
        #[arg(long)]
        domain: String,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 101)]
        grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Embedding coherence checks
    IotaCheck {
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum HardyCmd {
    /// Fit the strip growth exponent of an axis kernel
    GrowthFit {
        #[arg(long, default_value_t = 1.0)]
        y: f64,
        #[arg(long, default_value_t = 1.2, allow_hyphen_values = true)]
        tmin: f64,
        /// Upper grid endpoint, strictly inside the strip
        #[arg(long, default_value_t = T_EDGE)]
        tmax: f64,
        #[arg(long, default_value_t = 64)]
        points: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// CSV dump of (t, norm^2) pairs
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Strip-endpoint comparison for a smeared boundary vector
    Kms {
        /// Support interval lo,hi
        #[arg(long, default_value = "0.5,2.0", allow_hyphen_values = true)]
        support: String,
        /// Density profile: gaussian or bump
        #[arg(long, default_value = "gaussian")]
        density: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Boundary pairings of an axis kernel: extrapolation vs closed form
    BetaPlus {
        #[arg(long, default_value_t = 1.0)]
        y: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Twisted equivariance of the boundary map
    ZetaEquivariance {
        /// Direction in the affine algebra: x or h
        #[arg(long, default_value = "x")]
        direction: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum NetCmd {
    /// Cyclicity probe over a region box
    Rs {
        /// Region b_lo,b_hi,a_lo,a_hi
        #[arg(long, default_value = "-0.1,0.1,0.9,1.1", allow_hyphen_values = true)]
        region: String,
        /// Rank prefixes, comma separated
        #[arg(long, default_value = "8,16,32,64")]
        ranks: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Wedge/KMS probe for one orientation
    Bw {
        #[arg(long, allow_hyphen_values = true, default_value_t = -1)]
        wedge: i8,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Wedge-intersection membership of a smeared vector
    Regnet {
        #[arg(long, default_value = "-2,-1,0.8,1.25", allow_hyphen_values = true)]
        region: String,
        #[arg(long, default_value_t = 64)]
        samples: usize,
        #[arg(long, allow_hyphen_values = true, default_value_t = -1)]
        wedge: i8,
    },
}

#[derive(Subcommand)]
enum SchoberCmd {
    /// Run the bound suites
    Verify {
        /// all, strip, envelope, hardy-norm or growth
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// CSV dump of (x, y, |F|, bound) samples from the strip sweep
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

fn parse_coords(s: &str) -> anyhow::Result<LieElement> {
    let coords: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .context("element coordinates must be comma-separated reals")?;
    Ok(LieElement(coords))
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("json"));
}

fn emit_report(report: &SuiteReport, out: Option<&PathBuf>) -> anyhow::Result<bool> {
    for check in &report.checks {
        println!(
            "[{}] {:<40} measured {:>12.5e}  threshold {:>9.3e}",
            check.status, check.name, check.measured, check.threshold
        );
    }
    println!("verdict: {}", report.verdict);
    if let Some(path) = out {
        report.write_atomic(path)?;
        println!("report written to {}", path.display());
    }
    Ok(report.pass())
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => {}
        Ok(false) => std::process::exit(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(2);
        }
    }
}

fn load_config(cli: &Cli) -> anyhow::Result<RunConfig> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    Ok(cfg.with_env_seed()?)
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let cfg = load_config(&cli)?;
    match &cli.command {
        Command::Euler { sub } => run_euler(sub),
        Command::Crown { sub } => run_crown(sub, &cfg),
        Command::Hardy { sub } => run_hardy(sub),
        Command::Net { sub } => run_net(sub, &cfg),
        Command::Schober { sub } => run_schober(sub, &cfg),
        Command::VerifyAll { out } => {
            let report = suites::verify_all(&cfg)?;
            emit_report(&report, out.as_ref())
        }
    }
}

fn run_euler(cmd: &EulerCmd) -> anyhow::Result<bool> {
    match cmd {
        EulerCmd::Check { algebra, element } => {
            let alg = algebra.load()?;
            let x = parse_coords(element)?;
            let is = alg.is_euler(&x);
            print_json(&serde_json::json!({ "is_euler": is }));
            Ok(true)
        }
        EulerCmd::Classify { element } => {
            let cat = catalog("split_oscillator")?;
            let x = parse_coords(element)?;
            let on_hyperplane = classify_euler_split_oscillator(&cat.algebra, &x)?;
            print_json(&serde_json::json!({
                "is_euler": on_hyperplane,
                "agrees_with_generic_test": on_hyperplane == cat.algebra.is_euler(&x),
            }));
            Ok(true)
        }
        EulerCmd::Grading { algebra, element } => {
            let alg = algebra.load()?;
            let x = match element {
                Some(e) => parse_coords(e)?,
                None => {
                    let name = algebra.algebra.as_deref().unwrap_or("aff");
                    catalog(name)?
                        .element("h")
                        .context("catalog algebra has no distinguished h")?
                        .clone()
                }
            };
            let s = alg.euler_structure(&x)?;
            let (dm, d0, dp) = s.grading_dims();
            let ad = alg.ad(&x);
            let cubic = ((&ad * &ad * &ad) - &ad).amax();
            print_json(&serde_json::json!({
                "dim_minus": dm,
                "dim_zero": d0,
                "dim_plus": dp,
                "spectrum": s.spectrum,
                "cubic_residual": cubic,
            }));
            Ok(true)
        }
    }
}

fn run_crown(cmd: &CrownCmd, cfg: &RunConfig) -> anyhow::Result<bool> {
    match cmd {
        CrownCmd::Membership { domain, b, a } => {
            let tag = DomainTag::parse(domain)?;
            let b = parse_complex(b)?;
            let a = parse_complex(a)?;
            let g = CAffine::new(b, a)?;
            let inside = match tag {
                DomainTag::XiSl2c => in_domain_sl2(tag, &iota(g)?)?,
                _ => in_domain_affine(tag, g)?,
            };
            print_json(&serde_json::json!({
                "domain": tag.label(),
                "b": format_complex(b),
                "a": format_complex(a),
                "in_domain": inside,
            }));
            Ok(true)
        }
        CrownCmd::Cr2Sweep { domain, samples, grid, out } => {
            let tag = DomainTag::parse(domain)?;
            let grid_n = (*grid).max(2);
            let t_grid: Vec<f64> =
                (0..grid_n).map(|k| -1.55 + 3.1 * k as f64 / (grid_n - 1) as f64).collect();
            let rep = cr2_sweep(tag, *samples, &t_grid, cfg.seed)?;
            let json = serde_json::to_value(&rep)?;
            print_json(&json);
            if let Some(path) = out {
                write_atomic(path, serde_json::to_string_pretty(&json)?.as_bytes())?;
            }
            Ok(rep.failures == 0)
        }
        CrownCmd::IotaCheck { samples, out } => {
            let report = suites::iota_check(*samples, cfg.seed)?;
            emit_report(&report, out.as_ref())
        }
    }
}

fn run_hardy(cmd: &HardyCmd) -> anyhow::Result<bool> {
    match cmd {
        HardyCmd::GrowthFit { y, tmin, tmax, points, out, csv } => {
            let points_n = (*points).max(2);
            let grid: Vec<f64> =
                (0..points_n).map(|k| tmin + (tmax - tmin) * k as f64 / (points_n - 1) as f64).collect();
            let span = KernelSpan::kernel_at(Complex64::new(0.0, *y))?;
            let fit = growth_fit(&span, &grid)?;
            if let Some(path) = csv {
                let mut text = String::from("t,norm_sq\n");
                for &t in &grid {
                    let n2 = crownlab::hardy::norm_sq(&crownlab::hardy::modular_flow(
                        Complex64::new(0.0, t),
                        &span,
                    )?);
                    text.push_str(&format!("{t},{n2}\n"));
                }
                write_atomic(path, text.as_bytes())?;
            }
            let json = serde_json::to_value(&fit)?;
            print_json(&json);
            if let Some(path) = out {
                write_atomic(path, serde_json::to_string_pretty(&json)?.as_bytes())?;
            }
            Ok(true)
        }
        HardyCmd::Kms { support, density, out } => {
            let parts: Vec<f64> = support
                .split(',')
                .map(|t| t.trim().parse::<f64>())
                .collect::<Result<_, _>>()
                .context("support must be lo,hi")?;
            if parts.len() != 2 {
                bail!("support must be lo,hi");
            }
            let (lo, hi) = (parts[0], parts[1]);
            let center = 0.5 * (lo + hi);
            let half = 0.5 * (hi - lo);
            let gaussian = matches!(density.as_str(), "gaussian");
            if !gaussian && density != "bump" {
                bail!("density must be gaussian or bump");
            }
            let phase = Complex64::new(0.0, -std::f64::consts::FRAC_PI_4).exp();
            let xi = CauchyVector::new(
                phase,
                (lo, hi),
                std::sync::Arc::new(move |x: f64| {
                    let u = (x - center) / half;
                    if u.abs() >= 1.0 {
                        0.0
                    } else if gaussian {
                        (-(3.0 * u) * (3.0 * u) / 2.0).exp()
                    } else {
                        (-1.0 / (1.0 - u * u)).exp()
                    }
                }),
                Quadrature::new(Rule::GaussLegendre, 1e-11),
            )?;
            let rep = kms_check(&xi, &standard_grid())?;
            let json = serde_json::to_value(&rep)?;
            print_json(&json);
            if let Some(path) = out {
                write_atomic(path, serde_json::to_string_pretty(&json)?.as_bytes())?;
            }
            Ok(rep.endpoint == 1 && rep.max_deviation < 1e-8)
        }
        HardyCmd::BetaPlus { y, out } => {
            let span = KernelSpan::kernel_at(Complex64::new(0.0, *y))?;
            let boundary = crownlab::hardy::beta_plus(&span)?;
            let panel = KernelSpan::kernel_at(Complex64::new(0.4, 1.3))?;
            let closed = crownlab::hardy::pair_boundary(&panel, &boundary);
            let lim = crownlab::hardy::richardson_limit(
                |s| {
                    let flowed = crownlab::hardy::modular_flow(
                        Complex64::new(0.0, -(std::f64::consts::FRAC_PI_2 - s)),
                        &span,
                    )
                    .expect("inside the strip");
                    crownlab::hardy::kernel_inner(&panel, &flowed)
                },
                0.05,
                2.0,
                6,
            );
            let err = (closed - lim).norm();
            let json = serde_json::json!({
                "y": y,
                "boundary_point": boundary.terms()[0].1,
                "pairing_closed": { "re": closed.re, "im": closed.im },
                "pairing_extrapolated": { "re": lim.re, "im": lim.im },
                "extrapolation_error": err,
            });
            print_json(&json);
            if let Some(path) = out {
                write_atomic(path, serde_json::to_string_pretty(&json)?.as_bytes())?;
            }
            Ok(err < 1e-6)
        }
        HardyCmd::ZetaEquivariance { direction, out } => {
            let (alpha, beta) = match direction.as_str() {
                "x" => (1.0, 0.0),
                "h" => (0.0, 1.0),
                _ => bail!("direction must be x or h"),
            };
            let v = KernelSpan::new(vec![
                (Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)),
                (Complex64::new(0.5, 0.0), Complex64::new(0.0, 2.2)),
            ])?;
            let panel: Vec<KernelSpan> = (0..6)
                .map(|k| {
                    KernelSpan::kernel_at(Complex64::new(-1.0 + 0.4 * k as f64, 0.8 + 0.2 * k as f64))
                        .expect("upper half-plane point")
                })
                .collect();
            let rep = crownlab::hardy::zeta_equivariance_check(alpha, beta, &v, &panel)?;
            let json = serde_json::to_value(&rep)?;
            print_json(&json);
            if let Some(path) = out {
                write_atomic(path, serde_json::to_string_pretty(&json)?.as_bytes())?;
            }
            Ok(rep.max_pairing_deviation < 1e-6)
        }
    }
}

fn run_net(cmd: &NetCmd, cfg: &RunConfig) -> anyhow::Result<bool> {
    let quad = Quadrature::new(Rule::GaussLegendre, 1e-10);
    match cmd {
        NetCmd::Rs { region, ranks, out } => {
            let bx = RegionBox::parse(region)?;
            let ranks: Vec<usize> = ranks
                .split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .context("ranks must be comma-separated integers")?;
            let max_rank = ranks.iter().copied().max().unwrap_or(8);
            let (phis, ys) = default_rs_family(bx, max_rank);
            let panel = vec![KernelSpan::kernel_at(Complex64::new(0.0, 1.0))?];
            let rep = rs_probe(&phis, &ys, &panel, &ranks, quad)?;
            let json = serde_json::to_value(&rep)?;
            print_json(&json);
            if let Some(path) = out {
                write_atomic(path, serde_json::to_string_pretty(&json)?.as_bytes())?;
            }
            Ok(*rep.deficits[0].last().unwrap() < cfg.tolerances.deficit)
        }
        NetCmd::Bw { wedge, out } => {
            let bx = match wedge {
                -1 => RegionBox::new(-2.0, -1.0, 0.8, 1.25)?,
                _ => RegionBox::new(1.0, 2.0, 0.8, 1.25)?,
            };
            let phi = TestFunction::bump(bx);
            let elements: Vec<_> = [0.1, 0.2, 0.4]
                .iter()
                .map(|&y| smear(&phi, y, quad))
                .collect::<crownlab::Result<_>>()?;
            let rep = bw_probe(*wedge, &elements, &standard_grid(), cfg.tolerances.kms)?;
            let json = serde_json::to_value(&rep)?;
            print_json(&json);
            if let Some(path) = out {
                write_atomic(path, serde_json::to_string_pretty(&json)?.as_bytes())?;
            }
            Ok(*rep.verdicts.get("pass").unwrap_or(&false))
        }
        NetCmd::Regnet { region, samples, wedge } => {
            let bx = RegionBox::parse(region)?;
            let phi = TestFunction::bump(bx);
            let e = smear(&phi, 0.2, quad)?;
            let ok = regnet_membership(
                &e.vector,
                &OpenRegion::Box(bx),
                *wedge,
                *samples,
                cfg.seed,
                cfg.tolerances.kms,
                &standard_grid(),
            )?;
            print_json(&serde_json::json!({ "member": ok }));
            Ok(ok)
        }
    }
}

fn run_schober(cmd: &SchoberCmd, cfg: &RunConfig) -> anyhow::Result<bool> {
    match cmd {
        SchoberCmd::Verify { suite, out, csv } => {
            let mut report = SuiteReport::new("schober", cfg.seed);
            let t0 = Instant::now();
            match suite.as_str() {
                "all" => {
                    report = suites::schober_suite(cfg)?;
                }
                "strip" => {
                    let rep = verify_strip_bound(cfg.samples.strip_bound, 0.1, cfg.seed, 1e-8)?;
                    report.push("strip_bound", "schober.reciprocal_distance_bound", rep.violations as f64, 0.5, t0);
                }
                "envelope" => {
                    let rep = verify_envelope_bound(cfg.samples.envelope_bound, cfg.seed ^ 1, 1e-8)?;
                    report.push("envelope_bound", "schober.axis_envelope", rep.violations as f64, 0.5, t0);
                }
                "hardy-norm" => {
                    let y_grid: Vec<f64> = (0..10).map(|k| 0.05 + 0.35 * k as f64).collect();
                    let rep = hardy_norm_bound(
                        Complex64::new(0.0, 0.0),
                        Complex64::new(1.0, 0.0),
                        &y_grid,
                        1e-6,
                    )?;
                    report.push_bool("transport_norm_bound", "schober.trace_sup_bound", rep.pass, t0);
                }
                "growth" => {
                    let grid: Vec<f64> = (0..=40).map(|k| 0.25 * k as f64).collect();
                    let rep = nontempered_demo(&[1.0, 10.0, 100.0], &grid)?;
                    report.push_bool("superexponential_growth", "schober.outgrows_exponentials", rep.all_pass, t0);
                }
                other => bail!("unknown suite `{other}`"),
            }
            if let Some(path) = csv {
                let mut text = String::from("x,y,abs_f,bound\n");
                for k in 0..200 {
                    let x = 1.7 + 0.15 * k as f64;
                    let y = 0.5;
                    let f = schober_f(Complex64::new(x, y), 1e-8)?;
                    let bound = 1.0 / (x - std::f64::consts::FRAC_PI_2);
                    text.push_str(&format!("{x},{y},{},{bound}\n", f.value_c().norm()));
                }
                write_atomic(path, text.as_bytes())?;
            }
            emit_report(&report, out.as_ref())
        }
    }
}
