//! Walk a point through the full coordinate chain used by the solver:
//! disk -> decorrelated ellipse -> annulus -> elliptic coordinates.
//!
//! ```sh
//! cargo run --release --example transform_chain
//! ```

use hitdisk::annulus::{annulus_to_ellipse, ellipse_to_annulus};
use hitdisk::elliptic::{ellipse_to_elliptic, elliptic_to_ellipse};
use hitdisk::geometry::{forward_linear, inverse_linear};
use hitdisk::{CartesianPoint, ProblemSpec};

fn main() {
    let spec = ProblemSpec::new(0.6, 1.0).unwrap();
    let g = spec.geometry();
    println!(
        "rho = {}: ellipse semiaxes a = {:.6}, b = {:.6}, inner radius q = {:.6}",
        spec.rho(),
        g.a,
        g.b,
        g.q
    );

    let p = CartesianPoint::new(0.4, -0.1);
    let e = forward_linear(p, &spec);
    let ann = ellipse_to_annulus(e, &g).unwrap();
    let ell = ellipse_to_elliptic(e, &g).unwrap();

    println!("(x, y)     = ({:+.6}, {:+.6})", p.x, p.y);
    println!("(w, z)     = ({:+.6}, {:+.6})", e.w, e.z);
    println!("(r, theta) = ({:.6}, {:+.6})", ann.r, ann.theta);
    println!("(eta, phi) = ({:.6}, {:+.6})", ell.eta, ell.phi);

    // the two radial coordinates are tied by r = q e^eta
    println!(
        "bridge check: q e^eta = {:.12} vs r = {:.12}",
        g.q * ell.eta.exp(),
        ann.r
    );

    // round trip back to the disk
    let back = inverse_linear(annulus_to_ellipse(ann, &g).unwrap(), &spec);
    println!("back via annulus:  ({:+.12}, {:+.12})", back.x, back.y);
    let back = inverse_linear(elliptic_to_ellipse(ell, &g).unwrap(), &spec);
    println!("back via elliptic: ({:+.12}, {:+.12})", back.x, back.y);
}
