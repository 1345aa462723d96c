//! Command-line front end: density profiles, simulation, cross-method
//! verification, and coordinate-chain inspection.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 numeric
//! or domain error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hitdisk::annulus::ellipse_to_annulus;
use hitdisk::density::{density_profile, hitting_density, KernelMethod};
use hitdisk::elliptic::ellipse_to_elliptic;
use hitdisk::geometry::{forward_linear, CartesianPoint, ProblemSpec, TWO_PI};
use hitdisk::kernels::{
    annulus_kernel, elliptic_kernel, elliptic_kernel_mispaired, poisson_superposition_kernel,
    SeriesControl,
};
use hitdisk::montecarlo::{empirical_profile, simulate_exits, BoundaryMode, SimConfig};
use hitdisk::output::{profile_to_csv, profile_to_json};
use hitdisk::DensityProfile;

#[derive(Parser)]
#[command(
    name = "hitdisk",
    about = "Exit-point distribution of a correlated planar Brownian motion on a disk",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute an analytic exit-angle density profile.
    Density(DensityArgs),
    /// Simulate exits by Euler stepping and emit the empirical profile.
    Simulate(SimulateArgs),
    /// Run the cross-method verification suite and emit a JSON report.
    Verify(VerifyArgs),
    /// Print the coordinate chain (x,y) -> (w,z) -> (r,theta) -> (eta,phi).
    Transform(TransformArgs),
}

#[derive(Args)]
struct ProblemArgs {
    /// Correlation coefficient, strictly inside (-1, 1).
    #[arg(long)]
    rho: f64,
    /// Disk radius.
    #[arg(long = "R", default_value_t = 1.0)]
    radius: f64,
}

#[derive(Args)]
struct OutputArgs {
    /// Output file; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Copy, Clone, ValueEnum)]
enum MethodArg {
    Annulus,
    Elliptic,
    Superposition,
}

impl From<MethodArg> for KernelMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Annulus => KernelMethod::Annulus,
            MethodArg::Elliptic => KernelMethod::Elliptic,
            MethodArg::Superposition => KernelMethod::Superposition,
        }
    }
}

fn parse_point(s: &str) -> Result<CartesianPoint, String> {
    let (x, y) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `x,y`, got `{s}`"))?;
    let x: f64 = x.trim().parse().map_err(|e| format!("x: {e}"))?;
    let y: f64 = y.trim().parse().map_err(|e| format!("y: {e}"))?;
    Ok(CartesianPoint::new(x, y))
}

#[derive(Args)]
struct SeriesArgs {
    /// Series truncation cap.
    #[arg(long, default_value_t = 20_000)]
    max_terms: usize,
    /// Series tail tolerance.
    #[arg(long, default_value_t = 1e-13)]
    tol: f64,
}

impl SeriesArgs {
    fn control(&self) -> Result<SeriesControl, hitdisk::Error> {
        SeriesControl::new(self.max_terms, self.tol)
    }
}

#[derive(Args)]
struct DensityArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    /// Start point `x,y`, strictly inside the disk.
    #[arg(long, value_parser = parse_point, default_value = "0,0")]
    start: CartesianPoint,
    #[arg(long, value_enum, default_value_t = MethodArg::Annulus)]
    method: MethodArg,
    /// Number of grid angles.
    #[arg(long, default_value_t = 1024)]
    grid: usize,
    /// Emit density per unit arc length (p(alpha)/R) instead of per radian.
    #[arg(long)]
    arc_length: bool,
    #[command(flatten)]
    series: SeriesArgs,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    #[arg(long, value_parser = parse_point, default_value = "0,0")]
    start: CartesianPoint,
    #[arg(long, default_value_t = 100_000)]
    paths: usize,
    #[arg(long, default_value_t = 1e-4)]
    dt: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 72)]
    bins: usize,
    #[arg(long, value_enum, default_value_t = BoundaryModeArg::Interpolate)]
    boundary_mode: BoundaryModeArg,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Copy, Clone, ValueEnum)]
enum BoundaryModeArg {
    Interpolate,
    RejectOvershoot,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 0.5)]
    rho: f64,
    #[arg(long = "R", default_value_t = 1.0)]
    radius: f64,
    #[arg(long, value_parser = parse_point, default_value = "0.2,0.1")]
    start: CartesianPoint,
    /// Monte Carlo paths for the TV check.
    #[arg(long, default_value_t = 200_000)]
    paths: usize,
    #[arg(long, default_value_t = 1e-4)]
    dt: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Injected fault: evaluate the elliptic kernel with mis-paired
    /// hyperbolic factors; the equivalence check is expected to fail.
    #[arg(long)]
    corrupt_thm3_display: bool,
    /// Write the JSON report here in addition to stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct TransformArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    /// Point `x,y` inside the disk.
    #[arg(long, value_parser = parse_point)]
    point: CartesianPoint,
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("HITDISK_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
    }
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Density(args) => cmd_density(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Transform(args) => cmd_transform(args),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &hitdisk::Error) -> u8 {
    use hitdisk::Error::*;
    match err {
        // parameter-level problems are usage errors
        DegenerateCorrelation(_) | NonPositiveRadius(_) | InvalidParameter { .. } => 2,
        // numeric / domain failures
        _ => 3,
    }
}

fn emit(profile: &DensityProfile, out: &OutputArgs) -> std::io::Result<()> {
    let text = match out.format {
        Format::Csv => profile_to_csv(profile),
        Format::Json => profile_to_json(profile),
    };
    match &out.output {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn cmd_density(args: DensityArgs) -> Result<ExitCode, hitdisk::Error> {
    let spec = ProblemSpec::new(args.problem.rho, args.problem.radius)?;
    let ctl = args.series.control()?;
    let mut profile = density_profile(args.start, &spec, args.method.into(), &ctl, args.grid)?;
    if args.arc_length {
        for v in &mut profile.values {
            *v /= spec.radius();
        }
    }
    emit(&profile, &args.out).expect("write failed");
    Ok(ExitCode::SUCCESS)
}

fn cmd_simulate(args: SimulateArgs) -> Result<ExitCode, hitdisk::Error> {
    let spec = ProblemSpec::new(args.problem.rho, args.problem.radius)?;
    let mode = match args.boundary_mode {
        BoundaryModeArg::Interpolate => BoundaryMode::Interpolate,
        BoundaryModeArg::RejectOvershoot => BoundaryMode::RejectOvershoot,
    };
    let cfg = SimConfig::new(args.paths, args.dt, args.seed, mode)?;
    let samples = simulate_exits(args.start, &spec, &cfg)?;
    let profile = empirical_profile(&samples, args.bins, &spec, args.start)?;
    emit(&profile, &args.out).expect("write failed");
    Ok(ExitCode::SUCCESS)
}

fn cmd_transform(args: TransformArgs) -> Result<ExitCode, hitdisk::Error> {
    let spec = ProblemSpec::new(args.problem.rho, args.problem.radius)?;
    let p = args.point;
    if p.norm() > spec.radius() {
        return Err(hitdisk::Error::OutsideDisk {
            x: p.x,
            y: p.y,
            radius: spec.radius(),
        });
    }
    let g = spec.geometry();
    let e = forward_linear(p, &spec);
    println!("(x, y)      = ({}, {})", p.x, p.y);
    println!("(w, z)      = ({}, {})", e.w, e.z);
    let c = ellipse_to_annulus(e, &g)?;
    println!("(r, theta)  = ({}, {})", c.r, c.theta);
    if g.is_circular() {
        println!("(eta, phi)  = undefined at rho = 0 (the ellipse is a circle)");
        return Ok(ExitCode::SUCCESS);
    }
    let on_focal = c.r <= g.q * (1.0 + 1e-12);
    let ec = ellipse_to_elliptic(e, &g)?;
    println!("(eta, phi)  = ({}, {})", ec.eta, ec.phi);
    if on_focal {
        let other = TWO_PI - c.theta;
        println!(
            "note: point lies on the focal segment; (r, theta) = ({}, {}) is the same point",
            c.r, other
        );
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct Check {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn check(name: &'static str, pass: bool, detail: String) -> Check {
    println!("{} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
    Check { name, pass, detail }
}

/// Minimal deterministic uniform source for sampled verification points.
struct Mix(u64);

impl Mix {
    fn next(&mut self) -> f64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        ((z ^ (z >> 31)) >> 11) as f64 * (1.0 / 9007199254740992.0)
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, hitdisk::Error> {
    let spec = ProblemSpec::new(args.rho, args.radius)?;
    let g = spec.geometry();
    let ctl = SeriesControl::new(20_000, 1e-13)?;
    let mut checks: Vec<Check> = Vec::new();

    // round trips through both charts
    {
        let mut mix = Mix(12345);
        let mut worst = 0.0f64;
        let mut sampled = 0;
        while sampled < 10_000 {
            let w = (2.0 * mix.next() - 1.0) * g.a;
            let z = (2.0 * mix.next() - 1.0) * g.b;
            if (w / g.a).powi(2) + (z / g.b).powi(2) >= 0.9999 {
                continue;
            }
            sampled += 1;
            let p = hitdisk::geometry::EllipsePoint::new(w, z);
            let c = ellipse_to_annulus(p, &g)?;
            let back = hitdisk::annulus::annulus_to_ellipse(c, &g)?;
            worst = worst.max(((back.w - w).abs()).max((back.z - z).abs()) / g.a);
            if !g.is_circular() {
                let ec = ellipse_to_elliptic(p, &g)?;
                let back = hitdisk::elliptic::elliptic_to_ellipse(ec, &g)?;
                worst = worst.max(((back.w - w).abs()).max((back.z - z).abs()) / g.a);
            }
        }
        checks.push(check(
            "round-trips",
            worst < 1e-10,
            format!("max relative error {worst:.3e} over 10000 points (tol 1e-10)"),
        ));
    }

    // Fourier-series kernel vs elliptic-series kernel on the r = q e^eta bridge
    if !g.is_circular() {
        let mut worst = 0.0f64;
        for i in 1..20 {
            for j in 0..20 {
                for l in 0..20 {
                    let eta = g.eta_hat * i as f64 / 20.0;
                    let phi = TWO_PI * j as f64 / 20.0;
                    let tau = TWO_PI * l as f64 / 20.0 + 0.05;
                    let r = g.q * eta.exp();
                    let ka = annulus_kernel(r, phi, tau, &g, &ctl)?;
                    let ke = if args.corrupt_thm3_display {
                        elliptic_kernel_mispaired(eta, phi, tau, &g, &ctl)?
                    } else {
                        elliptic_kernel(eta, phi, tau, &g, &ctl)?
                    };
                    worst = worst.max((ka - ke).abs());
                }
            }
        }
        checks.push(check(
            "kernel-equivalence",
            worst < 1e-10,
            format!("max |annulus - elliptic| = {worst:.3e} on 20^3 grid (tol 1e-10)"),
        ));

        let mut worst = 0.0f64;
        for i in 0..10 {
            for j in 0..10 {
                for l in 0..10 {
                    let r = g.q + (0.95 - g.q) * (i as f64 + 0.5) / 10.0;
                    let theta = TWO_PI * j as f64 / 10.0;
                    let tau = TWO_PI * l as f64 / 10.0 + 0.05;
                    let ks = poisson_superposition_kernel(r, theta, tau, &g, &ctl)?;
                    let ka = annulus_kernel(r, theta, tau, &g, &ctl)?;
                    worst = worst.max((ks - ka).abs());
                }
            }
        }
        checks.push(check(
            "poisson-superposition",
            worst < 1e-8,
            format!("max |superposition - annulus| = {worst:.3e} (tol 1e-8)"),
        ));

        // parity on the inner circle
        let mut worst_even = 0.0f64;
        let mut worst_odd = 0.0f64;
        for i in 0..16 {
            let theta = TWO_PI * i as f64 / 16.0;
            let tau = 1.3;
            let a = annulus_kernel(g.q, theta, tau, &g, &ctl)?;
            let b = annulus_kernel(g.q, -theta, tau, &g, &ctl)?;
            worst_even = worst_even.max((a - b).abs());
            let h = 1e-5;
            let dp = (annulus_kernel(g.q + h, theta, tau, &g, &ctl)?
                - annulus_kernel(g.q - h, theta, tau, &g, &ctl)?)
                / (2.0 * h);
            let dm = (annulus_kernel(g.q + h, -theta, tau, &g, &ctl)?
                - annulus_kernel(g.q - h, -theta, tau, &g, &ctl)?)
                / (2.0 * h);
            worst_odd = worst_odd.max((dp + dm).abs());
        }
        checks.push(check(
            "inner-circle-parity",
            worst_even < 1e-10 && worst_odd < 1e-6,
            format!("evenness {worst_even:.3e} (tol 1e-10), derivative oddness {worst_odd:.3e} (tol 1e-6)"),
        ));
    }

    // normalization and pairwise method agreement on profiles
    {
        let methods = [
            KernelMethod::Annulus,
            KernelMethod::Elliptic,
            KernelMethod::Superposition,
        ];
        let mut worst_resid = 0.0f64;
        let mut worst_diff = 0.0f64;
        let mut profiles: Vec<DensityProfile> = Vec::new();
        for &m in &methods {
            let prof = density_profile(args.start, &spec, m, &ctl, 1024)?;
            worst_resid = worst_resid.max(prof.meta.normalization_residual.abs());
            profiles.push(prof);
        }
        for a in 0..profiles.len() {
            for b in a + 1..profiles.len() {
                let sup = profiles[a]
                    .values
                    .iter()
                    .zip(&profiles[b].values)
                    .map(|(x, y)| (x - y).abs())
                    .fold(0.0f64, f64::max);
                worst_diff = worst_diff.max(sup);
            }
        }
        checks.push(check(
            "normalization",
            worst_resid < 5e-6,
            format!("max |integral - 1| = {worst_resid:.3e} (tol 5e-6)"),
        ));
        checks.push(check(
            "method-agreement",
            worst_diff < 1e-7,
            format!("max pairwise sup-norm difference {worst_diff:.3e} (tol 1e-7)"),
        ));
    }

    // Monte Carlo total variation
    {
        let cfg = SimConfig::new(args.paths, args.dt, args.seed, BoundaryMode::Interpolate)?;
        let samples = simulate_exits(args.start, &spec, &cfg)?;
        let emp = empirical_profile(&samples, 72, &spec, args.start)?;
        let h = TWO_PI / 72.0;
        let tv: f64 = emp
            .alphas
            .iter()
            .zip(&emp.values)
            .map(|(&a, &v)| {
                hitting_density(args.start, a, &spec, KernelMethod::Annulus, &ctl)
                    .map(|p| (v - p).abs() * h)
            })
            .sum::<Result<f64, _>>()?
            * 0.5;
        checks.push(check(
            "montecarlo-tv",
            tv < 0.02,
            format!(
                "TV(empirical, analytic) = {tv:.4} over 72 bins, {} paths, dt {} (tol 0.02)",
                args.paths, args.dt
            ),
        ));
    }

    let report = serde_json::to_string_pretty(&checks).expect("report serialization");
    if let Some(path) = &args.output {
        std::fs::write(path, &report).expect("write failed");
    }
    let failed: Vec<&str> = checks.iter().filter(|c| !c.pass).map(|c| c.name).collect();
    if failed.is_empty() {
        println!("all {} checks passed", checks.len());
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("failed checks: {}", failed.join(", "));
        Ok(ExitCode::from(1))
    }
}
