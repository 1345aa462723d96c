//! Compute the exit-angle density for a correlated Brownian motion started
//! off-center, and show where the mass concentrates.
//!
//! ```sh
//! cargo run --release --example density_profile
//! ```

use hitdisk::density::density_profile;
use hitdisk::{CartesianPoint, KernelMethod, ProblemSpec, SeriesControl};

fn main() {
    let spec = ProblemSpec::new(0.7, 1.0).unwrap();
    let start = CartesianPoint::new(0.3, -0.2);
    let ctl = SeriesControl::default();
    let profile = density_profile(start, &spec, KernelMethod::Annulus, &ctl, 360).unwrap();

    println!(
        "rho = {}, start = ({}, {}), integral = {:.9}",
        spec.rho(),
        start.x,
        start.y,
        profile.integral()
    );

    let (peak_idx, peak) = profile
        .values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .unwrap();
    println!(
        "peak density {:.6} at alpha = {:.4} rad",
        peak, profile.alphas[peak_idx]
    );

    // coarse sparkline of the profile over [0, 2pi)
    let max = *peak;
    let bars: String = profile
        .values
        .iter()
        .step_by(6)
        .map(|v| {
            const LEVELS: [char; 8] = [' ', '.', ':', '-', '=', '+', '*', '#'];
            LEVELS[((v / max) * 7.0).round() as usize]
        })
        .collect();
    println!("profile: |{bars}|");
}
