//! Map between the solid ellipse and the circular annulus `[q, 1]`.
//!
//! Forward direction:
//!
//! ```text
//! w = (A r + B/r) cos θ,   z = (A r - B/r) sin θ,   q ≤ r ≤ 1,
//! ```
//!
//! with `A = (a+b)/2`, `B = (a-b)/2` and `q = √((a-b)/(a+b))`. The circle
//! `r = 1` is the ellipse boundary; `r = q` collapses onto the focal segment
//! `z = 0`, `|w| ≤ c`, so `(q, θ)` and `(q, -θ)` land on the same point.
//!
//! The inverse goes through the auxiliary quantity `m = A²r² + B²/r²`, which
//! solves a quadratic in terms of `w² ± z²`; the radial coordinate requires
//! the positive-sign root of `A²r⁴ - m r² + B² = 0` (the negative root would
//! force `r ≤ q`).

use crate::geometry::{normalize_angle, EllipseGeometry, EllipsePoint};
use crate::{Error, Result};

/// Coordinates on the annulus image of the ellipse.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnulusCoord {
    pub r: f64,
    pub theta: f64,
}

impl AnnulusCoord {
    pub fn new(r: f64, theta: f64) -> Self {
        Self {
            r,
            theta: normalize_angle(theta),
        }
    }
}

/// Auxiliary root of the inversion: `m = A²r² + B²/r²`.
#[derive(Debug, Clone, Copy)]
pub struct InversionIntermediate {
    pub m: f64,
}

/// Quadratic-root intermediate for a point of the ellipse. Exposed for the
/// defining-quadratic consistency check.
pub fn inversion_intermediate(p: EllipsePoint, g: &EllipseGeometry) -> InversionIntermediate {
    let s = p.w * p.w + p.z * p.z;
    let c2 = g.c * g.c;
    // (s - c2)^2 + 4 c2 z^2 equals the discriminant s^2 - 2 c2 (w^2 - z^2) + c2^2
    // but never cancels.
    let disc = (s - c2) * (s - c2) + 4.0 * c2 * p.z * p.z;
    InversionIntermediate {
        m: 0.5 * (s + disc.sqrt()),
    }
}

/// Forward map, annulus to ellipse.
pub fn annulus_to_ellipse(c: AnnulusCoord, g: &EllipseGeometry) -> Result<EllipsePoint> {
    if g.is_circular() {
        // rho = 0: B = 0 and the map is plain polar coordinates.
        if !(0.0..=1.0 + 1e-12).contains(&c.r) {
            return Err(Error::OutsideAnnulus { r: c.r, q: 0.0 });
        }
        let (sin_t, cos_t) = c.theta.sin_cos();
        return Ok(EllipsePoint::new(
            g.a_cap * c.r * cos_t,
            g.a_cap * c.r * sin_t,
        ));
    }
    if c.r < g.q - 1e-12 || c.r > 1.0 + 1e-12 {
        return Err(Error::OutsideAnnulus { r: c.r, q: g.q });
    }
    let (sin_t, cos_t) = c.theta.sin_cos();
    let outer = g.a_cap * c.r + g.b_cap / c.r;
    let inner = g.a_cap * c.r - g.b_cap / c.r;
    Ok(EllipsePoint::new(outer * cos_t, inner * sin_t))
}

/// Closed-form inversion of the annulus map.
///
/// Points on the focal segment are returned with `r = q` and the canonical
/// representative `θ ∈ [0, π]` of the two collided preimages.
pub fn ellipse_to_annulus(p: EllipsePoint, g: &EllipseGeometry) -> Result<AnnulusCoord> {
    if !g.contains(p, 1e-12) {
        return Err(Error::OutsideEllipse { w: p.w, z: p.z });
    }
    if g.is_circular() {
        return Ok(AnnulusCoord::new(p.w.hypot(p.z) / g.a_cap, p.z.atan2(p.w)));
    }
    // With r = q e^η the level curves are c cosh η cos θ, c sinh η sin θ, so
    // the inversion reduces to recovering sinh²η from (w, z).
    let sh2 = crate::geometry::confocal_sinh_sq(p, g);
    let sh = sh2.sqrt();
    let ch = (1.0 + sh2).sqrt();
    // A r + B/r = c cosh η and A r - B/r = c sinh η.
    let r = (g.q * (ch + sh)).min(1.0);
    let cos_t = (p.w / (g.c * ch)).clamp(-1.0, 1.0);
    let on_focal = g.c * sh <= 1e-15 * g.a;
    if on_focal {
        // collided preimage: canonical representative θ ∈ [0, π]
        return Ok(AnnulusCoord {
            r: g.q,
            theta: cos_t.acos(),
        });
    }
    let sin_t = p.z / (g.c * sh);
    Ok(AnnulusCoord {
        r,
        theta: normalize_angle(sin_t.atan2(cos_t)),
    })
}
