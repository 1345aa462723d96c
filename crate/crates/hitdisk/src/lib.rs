//! Exit-point distribution of a correlated planar Brownian motion on a disk.
//!
//! A planar Brownian motion whose components have instantaneous correlation
//! `rho` is started inside the disk of radius `R` centered at the origin.
//! This crate computes the probability density of the angle at which the
//! motion first hits the circle, by three independent analytic routes and a
//! direct Monte Carlo simulation:
//!
//! 1. a linear change of variables turns the correlated generator into the
//!    ordinary Laplacian and the disk into an ellipse ([`geometry`]);
//! 2. the ellipse is mapped onto a circular annulus ([`annulus`]) or charted
//!    in elliptic coordinates ([`elliptic`]);
//! 3. the resulting Dirichlet problems are solved by separation of variables,
//!    giving Fourier-type series kernels that can also be resummed into a
//!    superposition of classical Poisson kernels ([`kernels`]);
//! 4. [`density`] composes the pieces into a density over the original exit
//!    angle, and [`montecarlo`] provides the simulation oracle.
//!
//! Every runnable example under `examples/` exercises one capability; the
//! `hitdisk` binary exposes the same operations on the command line.

pub mod annulus;
pub mod density;
pub mod elliptic;
mod error;
pub mod geometry;
pub mod kernels;
pub mod montecarlo;
pub mod output;

pub use annulus::AnnulusCoord;
pub use density::{DensityProfile, KernelMethod, MethodTag, ProfileMeta};
pub use elliptic::EllipticCoord;
pub use error::Error;
pub use geometry::{CartesianPoint, EllipseGeometry, EllipsePoint, ProblemSpec};
pub use kernels::SeriesControl;
pub use montecarlo::{BoundaryMode, ExitSample, SimConfig};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
