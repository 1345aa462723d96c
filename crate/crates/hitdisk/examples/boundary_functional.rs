//! Expected value of boundary data at the exit point: the probabilistic
//! solution of the Dirichlet problem for the correlated generator.
//!
//! Solves u(start) = E[h(exit angle)] for h(alpha) = cos(alpha) and a square
//! wave, by quadrature of h against the exit density.
//!
//! ```sh
//! cargo run --release --example boundary_functional
//! ```

use hitdisk::density::boundary_functional;
use hitdisk::{CartesianPoint, ProblemSpec, SeriesControl};
use std::f64::consts::PI;

fn main() {
    let spec = ProblemSpec::new(0.6, 1.0).unwrap();
    let ctl = SeriesControl::default();
    let n = 2048;

    let cosine: Vec<f64> = (0..n)
        .map(|i| (2.0 * PI * i as f64 / n as f64).cos())
        .collect();
    let square: Vec<f64> = (0..n).map(|i| if i < n / 2 { 1.0 } else { 0.0 }).collect();
    let ones = vec![1.0; n];

    for &(x, y) in &[(0.0, 0.0), (0.5, 0.0), (-0.2, 0.3)] {
        let start = CartesianPoint::new(x, y);
        let u_cos = boundary_functional(start, &spec, &cosine, &ctl).unwrap();
        let u_sq = boundary_functional(start, &spec, &square, &ctl).unwrap();
        let u_one = boundary_functional(start, &spec, &ones, &ctl).unwrap();
        println!(
            "start ({x:+.2}, {y:+.2}):  E[cos] = {u_cos:+.6}   P(upper half) = {u_sq:.6}   E[1] = {u_one:.9}"
        );
    }
    println!("(E[1] returning 1 is the normalization of the exit law)");
}
