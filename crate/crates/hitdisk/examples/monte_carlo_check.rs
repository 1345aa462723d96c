//! Cross-check the analytic exit density against a direct Euler simulation
//! of the correlated Brownian paths.
//!
//! ```sh
//! cargo run --release --example monte_carlo_check
//! ```

use hitdisk::density::hitting_density;
use hitdisk::montecarlo::{empirical_profile, simulate_exits};
use hitdisk::{BoundaryMode, CartesianPoint, KernelMethod, ProblemSpec, SeriesControl, SimConfig};
use std::f64::consts::PI;

fn main() {
    let spec = ProblemSpec::new(0.5, 1.0).unwrap();
    let start = CartesianPoint::new(0.4, -0.2);
    let cfg = SimConfig::new(100_000, 1e-4, 42, BoundaryMode::Interpolate).unwrap();

    let t0 = std::time::Instant::now();
    let samples = simulate_exits(start, &spec, &cfg).unwrap();
    println!(
        "{} paths simulated in {:.2} s (dt = {})",
        samples.len(),
        t0.elapsed().as_secs_f64(),
        cfg.dt
    );

    let mean_exit_time = samples.iter().map(|s| s.t_exit).sum::<f64>() / samples.len() as f64;
    println!("mean exit time = {mean_exit_time:.4}");

    let bins = 72;
    let emp = empirical_profile(&samples, bins, &spec, start).unwrap();
    let ctl = SeriesControl::default();
    let h = 2.0 * PI / bins as f64;
    let tv: f64 = 0.5
        * emp
            .alphas
            .iter()
            .zip(&emp.values)
            .map(|(&a, &v)| {
                let d = hitting_density(start, a, &spec, KernelMethod::Annulus, &ctl).unwrap();
                (v - d).abs() * h
            })
            .sum::<f64>();
    println!("total variation between histogram ({bins} bins) and analytic density = {tv:.4}");
}
