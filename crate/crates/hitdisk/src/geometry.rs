//! Linear change of variables removing the correlation from the generator.
//!
//! The map sends the disk of radius `R` onto a canonical ellipse whose
//! semiaxes depend only on the correlation coefficient, and turns the
//! operator `∂²/∂x² + 2ρ ∂²/∂x∂y + ∂²/∂y²` into the plain Laplacian.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// Wrap an angle into `[0, 2π)`.
pub fn normalize_angle(angle: f64) -> f64 {
    let a = angle.rem_euclid(TWO_PI);
    if a >= TWO_PI {
        0.0
    } else {
        a
    }
}

/// Problem definition: correlation of the Brownian components and disk radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProblemSpec {
    rho: f64,
    radius: f64,
}

impl ProblemSpec {
    /// `|rho| >= 1 - 1e-12` and non-positive radii are rejected as degenerate.
    pub fn new(rho: f64, radius: f64) -> Result<Self> {
        if !rho.is_finite() || rho.abs() >= 1.0 - 1e-12 {
            return Err(Error::DegenerateCorrelation(rho));
        }
        if !radius.is_finite() || radius <= 0.0 {
            return Err(Error::NonPositiveRadius(radius));
        }
        Ok(Self { rho, radius })
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Sign convention of the transform matrix; `sgn(0) := +1` so that the
    /// uncorrelated case degenerates to a pure rotation rather than a
    /// contraction by `1/√2`.
    pub fn sign(&self) -> f64 {
        if self.rho >= 0.0 {
            1.0
        } else {
            -1.0
        }
    }

    pub fn geometry(&self) -> EllipseGeometry {
        EllipseGeometry::from_spec(self)
    }
}

/// Constants of the canonical ellipse image of the disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseGeometry {
    /// Major semiaxis `a = R/√(1-|ρ|)`.
    pub a: f64,
    /// Minor semiaxis `b = R/√(1+|ρ|)`.
    pub b: f64,
    /// Focal half-distance `c = √(a²-b²)`.
    pub c: f64,
    /// Inner annulus radius `q = √((a-b)/(a+b))`.
    pub q: f64,
    /// Elliptic coordinate of the boundary, `η̂ = -log q` (infinite at ρ=0).
    pub eta_hat: f64,
    /// `(a+b)/2`.
    pub a_cap: f64,
    /// `(a-b)/2`.
    pub b_cap: f64,
}

impl EllipseGeometry {
    pub fn from_spec(spec: &ProblemSpec) -> Self {
        let ar = spec.rho.abs();
        let a = spec.radius / (1.0 - ar).sqrt();
        let b = spec.radius / (1.0 + ar).sqrt();
        let c = (a * a - b * b).max(0.0).sqrt();
        let q = ((a - b) / (a + b)).max(0.0).sqrt();
        Self {
            a,
            b,
            c,
            q,
            eta_hat: -q.ln(),
            a_cap: 0.5 * (a + b),
            b_cap: 0.5 * (a - b),
        }
    }

    /// True for ρ = 0, where the ellipse is a circle and both the annulus map
    /// and the elliptic chart degenerate.
    pub fn is_circular(&self) -> bool {
        self.q == 0.0
    }

    /// Whether `(w, z)` lies in the closed ellipse, within `tol` on the
    /// implicit equation.
    pub fn contains(&self, p: EllipsePoint, tol: f64) -> bool {
        let v = (p.w / self.a).powi(2) + (p.z / self.b).powi(2);
        v <= 1.0 + tol
    }
}

/// A point in the original frame where the Brownian motion lives.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CartesianPoint {
    pub x: f64,
    pub y: f64,
}

impl CartesianPoint {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }
}

/// A point in the transformed frame (the ellipse domain).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipsePoint {
    pub w: f64,
    pub z: f64,
}

impl EllipsePoint {
    pub fn new(w: f64, z: f64) -> Self {
        Self { w, z }
    }
}

/// `sinh²η` of the confocal coordinate of `p`: the non-negative root of
/// `c² t² - (s - c²) t - z² = 0` with `s = w² + z²`. Inside the focal circle
/// (`s < c²`) the textbook root formula cancels catastrophically, so the
/// conjugate form is used there.
pub(crate) fn confocal_sinh_sq(p: EllipsePoint, g: &EllipseGeometry) -> f64 {
    let c2 = g.c * g.c;
    let s = p.w * p.w + p.z * p.z;
    let d = s - c2;
    let disc = (d * d + 4.0 * c2 * p.z * p.z).sqrt();
    if d >= 0.0 {
        0.5 * (d + disc) / c2
    } else {
        2.0 * p.z * p.z / (disc - d)
    }
}

/// Row-major entries of the 2x2 transform matrix.
fn matrix(spec: &ProblemSpec) -> [f64; 4] {
    let s = spec.sign();
    let ar = spec.rho().abs();
    let d1 = (2.0 * (1.0 - ar)).sqrt();
    let d2 = (2.0 * (1.0 + ar)).sqrt();
    [1.0 / d1, -s / d1, s / d2, 1.0 / d2]
}

/// Decorrelating linear map; sends the circle of radius `R` onto the
/// canonical ellipse with semiaxes `a`, `b`.
pub fn forward_linear(p: CartesianPoint, spec: &ProblemSpec) -> EllipsePoint {
    let [m00, m01, m10, m11] = matrix(spec);
    EllipsePoint::new(m00 * p.x + m01 * p.y, m10 * p.x + m11 * p.y)
}

/// Exact inverse of [`forward_linear`].
pub fn inverse_linear(p: EllipsePoint, spec: &ProblemSpec) -> CartesianPoint {
    let [m00, m01, m10, m11] = matrix(spec);
    // det = 1/sqrt(1 - rho^2)
    let det = m00 * m11 - m01 * m10;
    CartesianPoint::new(
        (m11 * p.w - m01 * p.z) / det,
        (-m10 * p.w + m00 * p.z) / det,
    )
}

/// Image of the boundary angle under the transform: the circle point at
/// angle `alpha` maps to the ellipse boundary point of parameter
/// `τ = atan2(z/b, w/a) ∈ [0, 2π)`.
pub fn boundary_angle_to_tau(alpha: f64, spec: &ProblemSpec) -> f64 {
    let g = spec.geometry();
    let r = spec.radius();
    let p = forward_linear(CartesianPoint::new(r * alpha.cos(), r * alpha.sin()), spec);
    normalize_angle((p.z / g.b).atan2(p.w / g.a))
}

/// Derivative `dτ/dα` of the boundary correspondence; strictly positive.
pub fn boundary_jacobian(alpha: f64, spec: &ProblemSpec) -> f64 {
    let g = spec.geometry();
    let r = spec.radius();
    let [m00, m01, m10, m11] = matrix(spec);
    let (sin_a, cos_a) = alpha.sin_cos();
    let (x, y) = (r * cos_a, r * sin_a);
    let (xp, yp) = (-r * sin_a, r * cos_a);
    let wh = (m00 * x + m01 * y) / g.a;
    let zh = (m10 * x + m11 * y) / g.b;
    let whp = (m00 * xp + m01 * yp) / g.a;
    let zhp = (m10 * xp + m11 * yp) / g.b;
    // tau = atan2(zh, wh) with wh^2 + zh^2 = 1 on the boundary.
    wh * zhp - zh * whp
}
