//! Exit-angle density on the original circle.
//!
//! The chain is: map the start point into the ellipse frame, chart it on the
//! annulus (or in elliptic coordinates), evaluate a kernel against the image
//! `τ(α)` of the exit angle, and pull back with the boundary Jacobian
//! `dτ/dα`. At ρ = 0 the process is a standard Brownian motion and the
//! density is the classical Poisson kernel directly in the original frame.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::annulus::ellipse_to_annulus;
use crate::elliptic::ellipse_to_elliptic;
use crate::geometry::{
    boundary_angle_to_tau, boundary_jacobian, forward_linear, CartesianPoint, ProblemSpec, TWO_PI,
};
use crate::kernels::{
    annulus_kernel, classical_poisson, elliptic_kernel, elliptic_kernel_mispaired,
    poisson_superposition_kernel, SeriesControl, NEAR_BOUNDARY_RADIUS,
};
use crate::{Error, Result};

/// Analytic route used to evaluate the kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelMethod {
    Annulus,
    Elliptic,
    Superposition,
    /// Test hook: mis-paired hyperbolic factors, known to be inconsistent.
    #[serde(rename = "corrupt-thm3-display")]
    CorruptThm3Display,
}

impl KernelMethod {
    pub fn tag(&self) -> MethodTag {
        match self {
            KernelMethod::Annulus => MethodTag::Annulus,
            KernelMethod::Elliptic | KernelMethod::CorruptThm3Display => MethodTag::Elliptic,
            KernelMethod::Superposition => MethodTag::Superposition,
        }
    }
}

/// Provenance tag carried in profile metadata.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodTag {
    Annulus,
    Elliptic,
    Superposition,
    MonteCarlo,
}

impl std::fmt::Display for MethodTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            MethodTag::Annulus => "annulus",
            MethodTag::Elliptic => "elliptic",
            MethodTag::Superposition => "superposition",
            MethodTag::MonteCarlo => "montecarlo",
        };
        f.write_str(s)
    }
}

/// Metadata attached to every density profile.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileMeta {
    pub method: MethodTag,
    pub rho: f64,
    pub radius: f64,
    pub start: CartesianPoint,
    pub max_terms: usize,
    pub tail_tol: f64,
    /// Trapezoid integral over the grid minus one; recorded, never used to
    /// renormalize.
    pub normalization_residual: f64,
    /// Set when the start maps close enough to the boundary that the series
    /// converge slowly and the term cap may bind.
    pub near_boundary: bool,
}

/// A density over exit angles on a uniform grid of `[0, 2π)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityProfile {
    pub alphas: Vec<f64>,
    pub values: Vec<f64>,
    pub meta: ProfileMeta,
}

impl DensityProfile {
    /// Trapezoid integral over the full period (the grid is uniform and the
    /// density periodic, so this is the rectangle sum).
    pub fn integral(&self) -> f64 {
        let h = TWO_PI / self.values.len() as f64;
        self.values.iter().sum::<f64>() * h
    }

    /// Total variation distance to another profile on the same grid.
    pub fn total_variation(&self, other: &DensityProfile) -> Result<f64> {
        if self.values.len() != other.values.len() {
            return Err(Error::invalid("profile", "grids differ in length"));
        }
        let h = TWO_PI / self.values.len() as f64;
        Ok(0.5
            * self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| (a - b).abs() * h)
                .sum::<f64>())
    }
}

fn check_start(start: CartesianPoint, spec: &ProblemSpec) -> Result<()> {
    if start.norm() >= spec.radius() {
        return Err(Error::OutsideDisk {
            x: start.x,
            y: start.y,
            radius: spec.radius(),
        });
    }
    Ok(())
}

/// Density (per radian) of the exit angle `alpha`, evaluated by the chosen
/// analytic route. Small negative truncation residue is not clamped here;
/// [`density_profile`] clamps on output.
pub fn hitting_density(
    start: CartesianPoint,
    alpha: f64,
    spec: &ProblemSpec,
    method: KernelMethod,
    ctl: &SeriesControl,
) -> Result<f64> {
    check_start(start, spec)?;
    if spec.rho() == 0.0 {
        // standard Brownian motion: classical Poisson kernel, Jacobian 1
        return classical_poisson(start.norm(), start.y.atan2(start.x), spec.radius(), alpha);
    }
    let g = spec.geometry();
    let p = forward_linear(start, spec);
    let tau = boundary_angle_to_tau(alpha, spec);
    let jac = boundary_jacobian(alpha, spec);
    let kernel = match method {
        KernelMethod::Annulus => {
            let c = ellipse_to_annulus(p, &g)?;
            annulus_kernel(c.r, c.theta, tau, &g, ctl)?
        }
        KernelMethod::Superposition => {
            let c = ellipse_to_annulus(p, &g)?;
            poisson_superposition_kernel(c.r, c.theta, tau, &g, ctl)?
        }
        KernelMethod::Elliptic => {
            let c = ellipse_to_elliptic(p, &g)?;
            elliptic_kernel(c.eta, c.phi, tau, &g, ctl)?
        }
        KernelMethod::CorruptThm3Display => {
            let c = ellipse_to_elliptic(p, &g)?;
            elliptic_kernel_mispaired(c.eta, c.phi, tau, &g, ctl)?
        }
    };
    Ok(kernel * jac)
}

/// Evaluate the density on a uniform grid of `n_grid` angles.
pub fn density_profile(
    start: CartesianPoint,
    spec: &ProblemSpec,
    method: KernelMethod,
    ctl: &SeriesControl,
    n_grid: usize,
) -> Result<DensityProfile> {
    if n_grid < 16 {
        return Err(Error::invalid("n_grid", "must be at least 16"));
    }
    check_start(start, spec)?;
    let alphas: Vec<f64> = (0..n_grid)
        .map(|i| TWO_PI * i as f64 / n_grid as f64)
        .collect();
    let raw: Result<Vec<f64>> = alphas
        .par_iter()
        .map(|&a| hitting_density(start, a, spec, method, ctl))
        .collect();
    let values: Vec<f64> = raw?.into_iter().map(|v| v.max(0.0)).collect();
    let h = TWO_PI / n_grid as f64;
    let residual = values.iter().sum::<f64>() * h - 1.0;
    let near_boundary = if spec.rho() == 0.0 {
        start.norm() / spec.radius() >= NEAR_BOUNDARY_RADIUS
    } else {
        let g = spec.geometry();
        ellipse_to_annulus(forward_linear(start, spec), &g)
            .map(|c| c.r >= NEAR_BOUNDARY_RADIUS)
            .unwrap_or(true)
    };
    Ok(DensityProfile {
        alphas,
        values,
        meta: ProfileMeta {
            method: method.tag(),
            rho: spec.rho(),
            radius: spec.radius(),
            start,
            max_terms: ctl.max_terms,
            tail_tol: ctl.tail_tol,
            normalization_residual: residual,
            near_boundary,
        },
    })
}

/// Expected boundary value `E[h(exit point)]` for boundary data sampled on a
/// uniform `τ`-grid, by quadrature against the kernel. `h ≡ 1` returns 1.
///
/// The samples are taken at the *original-frame* angles `α_i = 2πi/n`, so the
/// quadrature runs against the pulled-back density.
pub fn boundary_functional(
    start: CartesianPoint,
    spec: &ProblemSpec,
    h_samples: &[f64],
    ctl: &SeriesControl,
) -> Result<f64> {
    if h_samples.len() < 64 {
        return Err(Error::invalid("h_samples", "need at least 64 grid samples"));
    }
    check_start(start, spec)?;
    let n = h_samples.len();
    let h = TWO_PI / n as f64;
    let total: Result<f64> = h_samples
        .par_iter()
        .enumerate()
        .map(|(i, &hv)| {
            hitting_density(start, i as f64 * h, spec, KernelMethod::Annulus, ctl)
                .map(|d| hv * d * h)
        })
        .sum();
    total
}
