//! The same boundary kernel computed three ways: the Fourier series on the
//! annulus, the hyperbolic series in elliptic coordinates, and the
//! superposition of shifted classical Poisson kernels. All three must agree.
//!
//! ```sh
//! cargo run --release --example kernel_equivalence
//! ```

use hitdisk::kernels::{annulus_kernel, elliptic_kernel, poisson_superposition_kernel};
use hitdisk::{ProblemSpec, SeriesControl};
use std::f64::consts::PI;

fn main() {
    let g = ProblemSpec::new(0.6, 1.0).unwrap().geometry();
    let ctl = SeriesControl::default();

    let mut worst_elliptic = 0.0f64;
    let mut worst_superposition = 0.0f64;
    for i in 1..15 {
        // sweep the radial coordinate through the annulus via r = q e^eta
        let eta = g.eta_hat * i as f64 / 15.0;
        let r = g.q * eta.exp();
        for j in 0..24 {
            let theta = 2.0 * PI * j as f64 / 24.0;
            for k in 0..24 {
                let tau = 2.0 * PI * (k as f64 + 0.5) / 24.0;
                let fourier = annulus_kernel(r, theta, tau, &g, &ctl).unwrap();
                let hyperbolic = elliptic_kernel(eta, theta, tau, &g, &ctl).unwrap();
                let shifted = poisson_superposition_kernel(r, theta, tau, &g, &ctl).unwrap();
                worst_elliptic = worst_elliptic.max((fourier - hyperbolic).abs());
                worst_superposition = worst_superposition.max((fourier - shifted).abs());
            }
        }
    }

    println!("max |fourier - hyperbolic|     = {worst_elliptic:.3e}");
    println!("max |fourier - superposition|  = {worst_superposition:.3e}");

    // a single sample of all three for a concrete look
    let (r, theta, tau) = (0.8, 1.0, 2.5);
    let eta = (r / g.q).ln();
    println!(
        "at (r, theta, tau) = ({r}, {theta}, {tau}): {:.12} / {:.12} / {:.12}",
        annulus_kernel(r, theta, tau, &g, &ctl).unwrap(),
        elliptic_kernel(eta, theta, tau, &g, &ctl).unwrap(),
        poisson_superposition_kernel(r, theta, tau, &g, &ctl).unwrap(),
    );
}
