//! Elliptic coordinates `(η, φ)` on the ellipse and the bridge `r = q e^η`
//! to the annulus chart.
//!
//! ```text
//! w = c cosh η cos φ,   z = c sinh η sin φ,   c = √(a² - b²).
//! ```
//!
//! The boundary is `η = η̂ = -log q`, the focal segment is `η = 0`. The whole
//! chart degenerates at ρ = 0 (`c = 0`), which is rejected; callers route the
//! circular case through polar coordinates instead.

use crate::annulus::AnnulusCoord;
use crate::geometry::{normalize_angle, EllipseGeometry, EllipsePoint};
use crate::{Error, Result};

/// Elliptic coordinates of a point of the closed ellipse.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticCoord {
    pub eta: f64,
    pub phi: f64,
}

impl EllipticCoord {
    pub fn new(eta: f64, phi: f64) -> Self {
        Self {
            eta,
            phi: normalize_angle(phi),
        }
    }
}

pub fn elliptic_to_ellipse(c: EllipticCoord, g: &EllipseGeometry) -> Result<EllipsePoint> {
    if g.is_circular() {
        return Err(Error::DegenerateElliptic);
    }
    if c.eta < 0.0 {
        return Err(Error::EtaOutOfRange {
            eta: c.eta,
            eta_hat: g.eta_hat,
        });
    }
    let (sin_p, cos_p) = c.phi.sin_cos();
    Ok(EllipsePoint::new(
        g.c * c.eta.cosh() * cos_p,
        g.c * c.eta.sinh() * sin_p,
    ))
}

/// Inverse chart: `sinh²η` from the non-negative root of the quartic in
/// `sinh η`, then `φ` from the signs of `(w, z)`. On the focal segment
/// (`η = 0`) the canonical representative `φ ∈ [0, π]` is returned.
pub fn ellipse_to_elliptic(p: EllipsePoint, g: &EllipseGeometry) -> Result<EllipticCoord> {
    if g.is_circular() {
        return Err(Error::DegenerateElliptic);
    }
    if !g.contains(p, 1e-12) {
        return Err(Error::OutsideEllipse { w: p.w, z: p.z });
    }
    let sinh2 = crate::geometry::confocal_sinh_sq(p, g);
    let sinh_eta = sinh2.sqrt();
    let eta = sinh_eta.asinh();
    let cosh_eta = (1.0 + sinh2).sqrt();

    let cos_p = (p.w / (g.c * cosh_eta)).clamp(-1.0, 1.0);
    let on_focal = sinh_eta * g.c <= 1e-15 * g.a;
    let phi = if on_focal {
        cos_p.acos()
    } else {
        normalize_angle((p.z / (g.c * sinh_eta)).atan2(cos_p))
    };
    Ok(EllipticCoord {
        eta: if on_focal { 0.0 } else { eta },
        phi,
    })
}

/// The identity tying the two charts together: `r = q e^η`, `θ = φ`.
pub fn annulus_elliptic_bridge(c: AnnulusCoord, g: &EllipseGeometry) -> Result<EllipticCoord> {
    if g.is_circular() {
        return Err(Error::DegenerateElliptic);
    }
    if c.r < g.q - 1e-12 {
        return Err(Error::OutsideAnnulus { r: c.r, q: g.q });
    }
    Ok(EllipticCoord {
        eta: (c.r.max(g.q) / g.q).ln(),
        phi: c.theta,
    })
}

/// Inverse of the bridge: `(η, φ) → (q e^η, φ)`.
pub fn elliptic_annulus_bridge(c: EllipticCoord, g: &EllipseGeometry) -> Result<AnnulusCoord> {
    if g.is_circular() {
        return Err(Error::DegenerateElliptic);
    }
    Ok(AnnulusCoord {
        r: g.q * c.eta.exp(),
        theta: c.phi,
    })
}
