//! Series representations of the hitting kernel.
//!
//! Three interchangeable forms of the same harmonic-measure density, each a
//! function of an interior point and a boundary parameter `τ`:
//!
//! * [`annulus_kernel`] — the Fourier series on the annulus chart,
//!   `1/2π + (1/π) Σ rᵏ [ (1+(q/r)^{2k})/(1+q^{2k}) cos kθ cos kτ
//!                      + (1-(q/r)^{2k})/(1-q^{2k}) sin kθ sin kτ ]`;
//! * [`elliptic_kernel`] — the same solution in elliptic coordinates,
//!   `1/2π + (1/π) Σ [ cosh kη/cosh kη̂ cos kφ cos kτ
//!                   + sinh kη/sinh kη̂ sin kφ sin kτ ]`;
//! * [`poisson_superposition_kernel`] — the resummation of the annulus
//!   series into a leading classical Poisson kernel plus a geometric family
//!   of shifted Poisson-type terms with starting points inside radius `q`.
//!
//! The three agree wherever all are defined; the equality of the first two
//! under `r = q e^η` is an algebraic identity of the coefficients.

use serde::{Deserialize, Serialize};

use crate::geometry::EllipseGeometry;
use crate::{Error, Result};

const INV_TWO_PI: f64 = 1.0 / (2.0 * std::f64::consts::PI);
const INV_PI: f64 = 1.0 / std::f64::consts::PI;

/// Truncation policy for the infinite series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesControl {
    /// Hard cap on the number of terms.
    pub max_terms: usize,
    /// Stop once the term magnitude bound drops below this (and at least
    /// eight terms have been summed).
    pub tail_tol: f64,
}

impl SeriesControl {
    pub fn new(max_terms: usize, tail_tol: f64) -> Result<Self> {
        if max_terms == 0 {
            return Err(Error::invalid("max_terms", "must be at least 1"));
        }
        if tail_tol.is_nan() || tail_tol < 0.0 {
            return Err(Error::invalid("tail_tol", "must be nonnegative"));
        }
        Ok(Self {
            max_terms,
            tail_tol,
        })
    }
}

impl Default for SeriesControl {
    fn default() -> Self {
        // r = 0.999 needs ~30k terms to push the geometric tail below tol
        Self {
            max_terms: 40_000,
            tail_tol: 1e-13,
        }
    }
}

const MIN_TERMS: usize = 8;

/// Interior radius beyond which series convergence slows enough to warrant a
/// metadata warning downstream.
pub const NEAR_BOUNDARY_RADIUS: f64 = 0.999;

/// Fourier kernel on the annulus chart.
///
/// Defined for `0 < r < 1`; the intended domain is `q ≤ r`, but evaluation
/// stays meaningful (and convergent) down to `r > q²`, which the parity
/// checks at `r = q` rely on for central differences.
pub fn annulus_kernel(
    r: f64,
    theta: f64,
    tau: f64,
    g: &EllipseGeometry,
    ctl: &SeriesControl,
) -> Result<f64> {
    if r.is_nan() || r <= 0.0 || r >= 1.0 {
        return Err(Error::RadiusNotInterior(r));
    }
    if r <= g.q * g.q {
        // series diverges at and below r = q^2
        return Err(Error::OutsideAnnulus { r, q: g.q });
    }
    let q2 = g.q * g.q;
    let qr2 = (g.q / r) * (g.q / r);
    let mut rk = 1.0;
    let mut q2k = 1.0;
    let mut qr2k = 1.0;
    let mut sum = 0.0;
    for k in 1..=ctl.max_terms {
        rk *= r;
        q2k *= q2;
        qr2k *= qr2;
        let coef_cos = (1.0 + qr2k) / (1.0 + q2k);
        let coef_sin = (1.0 - qr2k) / (1.0 - q2k);
        let kf = k as f64;
        let (s_t, c_t) = (kf * theta).sin_cos();
        let (s_u, c_u) = (kf * tau).sin_cos();
        sum += rk * (coef_cos * c_t * c_u + coef_sin * s_t * s_u);
        let bound = 2.0 * rk * coef_cos.abs().max(coef_sin.abs());
        if k >= MIN_TERMS && bound < ctl.tail_tol {
            break;
        }
    }
    Ok(INV_TWO_PI + INV_PI * sum)
}

/// Separation-of-variables kernel in elliptic coordinates, built from the
/// boundary Fourier coefficients `A_k ∝ 1/cosh kη̂`, `D_k ∝ 1/sinh kη̂`.
pub fn elliptic_kernel(
    eta: f64,
    phi: f64,
    tau: f64,
    g: &EllipseGeometry,
    ctl: &SeriesControl,
) -> Result<f64> {
    if g.is_circular() {
        return Err(Error::DegenerateElliptic);
    }
    if !(0.0..g.eta_hat).contains(&eta) {
        return Err(Error::EtaOutOfRange {
            eta,
            eta_hat: g.eta_hat,
        });
    }
    // cosh kη / cosh kη̂ = x^k (1+u^k)/(1+v^k) with x = e^{η-η̂}, u = e^{-2η},
    // v = e^{-2η̂}; everything stays in (0, 1] so no overflow for large k.
    let x = (eta - g.eta_hat).exp();
    let u = (-2.0 * eta).exp();
    let v = (-2.0 * g.eta_hat).exp();
    let mut xk = 1.0;
    let mut uk = 1.0;
    let mut vk = 1.0;
    let mut sum = 0.0;
    for k in 1..=ctl.max_terms {
        xk *= x;
        uk *= u;
        vk *= v;
        let cosh_ratio = xk * (1.0 + uk) / (1.0 + vk);
        let sinh_ratio = xk * (1.0 - uk) / (1.0 - vk);
        let kf = k as f64;
        let (s_p, c_p) = (kf * phi).sin_cos();
        let (s_u, c_u) = (kf * tau).sin_cos();
        sum += cosh_ratio * c_p * c_u + sinh_ratio * s_p * s_u;
        let bound = 2.0 * cosh_ratio.max(sinh_ratio);
        if k >= MIN_TERMS && bound < ctl.tail_tol {
            break;
        }
    }
    Ok(INV_TWO_PI + INV_PI * sum)
}

/// Injected-fault variant of [`elliptic_kernel`]: no factor `k` in the
/// hyperbolic arguments, and the sinh/cosh ratios paired with the opposite
/// trig factors. A plausible transcription slip that is inconsistent with
/// the boundary Fourier coefficients and fails the `r = q e^η` equivalence;
/// it exists only so the verification suite can demonstrate that failure.
pub fn elliptic_kernel_mispaired(
    eta: f64,
    phi: f64,
    tau: f64,
    g: &EllipseGeometry,
    ctl: &SeriesControl,
) -> Result<f64> {
    if g.is_circular() {
        return Err(Error::DegenerateElliptic);
    }
    if !(0.0..g.eta_hat).contains(&eta) {
        return Err(Error::EtaOutOfRange {
            eta,
            eta_hat: g.eta_hat,
        });
    }
    let sinh_ratio = eta.sinh() / g.eta_hat.sinh();
    let cosh_ratio = eta.cosh() / g.eta_hat.cosh();
    // Terms do not decay in k; the cap alone truncates.
    let cap = ctl.max_terms.min(256);
    let mut sum = 0.0;
    for k in 1..=cap {
        let kf = k as f64;
        let (s_p, c_p) = (kf * phi).sin_cos();
        let (s_u, c_u) = (kf * tau).sin_cos();
        sum += sinh_ratio * c_p * c_u + cosh_ratio * s_p * s_u;
    }
    Ok(INV_TWO_PI + INV_PI * sum)
}

/// Classical Poisson kernel of the disk of radius `r_out`, as a density in
/// the boundary angle `τ`.
pub fn classical_poisson(r: f64, theta: f64, r_out: f64, tau: f64) -> Result<f64> {
    if r.is_nan() || r < 0.0 || r >= r_out {
        return Err(Error::RadiusNotInterior(r));
    }
    let num = r_out * r_out - r * r;
    let den = r_out * r_out - 2.0 * r * r_out * (theta - tau).cos() + r * r;
    Ok(INV_TWO_PI * num / den)
}

fn poisson_ratio(num_a: f64, num_b: f64, rr: f64, cos_d: f64) -> f64 {
    // (num_a - num_b) / (num_a - 2 rr cos_d + num_b) with rr = product of radii
    (num_a - num_b) / (num_a - 2.0 * rr * cos_d + num_b)
}

/// The annulus kernel resummed into classical Poisson kernels: a leading
/// Poisson kernel at radius `r` plus, for each `j ≥ 0`, four Poisson-type
/// ratios with effective radii `q^{2(2j+1)}` and `q^{4(j+1)}`. The family
/// decays geometrically (ratio ~ `q⁴`) as the shifted starting points fall
/// toward the center.
pub fn poisson_superposition_kernel(
    r: f64,
    theta: f64,
    tau: f64,
    g: &EllipseGeometry,
    ctl: &SeriesControl,
) -> Result<f64> {
    if r.is_nan() || r <= 0.0 || r >= 1.0 || r < g.q {
        return Err(Error::OutsideAnnulus { r, q: g.q });
    }
    let cos_m = (theta - tau).cos();
    let lead = poisson_ratio(1.0, r * r, r, cos_m);
    if g.is_circular() {
        return Ok(INV_TWO_PI * lead);
    }
    let cos_p = (theta + tau).cos();
    let q = g.q;
    let q4 = q.powi(4);
    let mut s = q * q; // q^{2(2j+1)}
    let mut t = q4; // q^{4(j+1)}
    debug_assert!(
        r > q * q,
        "interior form of the j = 0 term requires r > q^2"
    );
    let mut sum = 0.0;
    for j in 0..ctl.max_terms {
        // Poisson kernels centered at the shifted starting points s and t.
        let t1 = poisson_ratio(r * r, s * s, r * s, cos_p);
        let t2 = poisson_ratio(1.0, (r * s) * (r * s), r * s, cos_p);
        let t3 = poisson_ratio(r * r, t * t, r * t, cos_m);
        let t4 = poisson_ratio(1.0, (r * t) * (r * t), r * t, cos_m);
        let bracket = t1 - t2 - t3 + t4;
        sum += bracket;
        // |t1 - t2| and |t4 - t3| are each O(s/r), O(t/r); s, t shrink by q^4.
        let bound = 8.0 * (s / r) / (1.0 - q4);
        if j >= 2 && bound < ctl.tail_tol {
            break;
        }
        s *= q4;
        t *= q4;
    }
    Ok(INV_TWO_PI * (lead + sum))
}
