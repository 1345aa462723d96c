use thiserror::Error;

/// Errors produced by domain validation across the crate.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("correlation coefficient must lie strictly inside (-1, 1), got {0}")]
    DegenerateCorrelation(f64),
    #[error("disk radius must be positive, got {0}")]
    NonPositiveRadius(f64),
    #[error("start point ({x}, {y}) must lie strictly inside the disk of radius {radius}")]
    OutsideDisk { x: f64, y: f64, radius: f64 },
    #[error("point ({w}, {z}) lies outside the closed ellipse")]
    OutsideEllipse { w: f64, z: f64 },
    #[error("radial coordinate {r} outside the annulus [{q}, 1]")]
    OutsideAnnulus { r: f64, q: f64 },
    #[error("radial coordinate {0} is not inside the unit circle")]
    RadiusNotInterior(f64),
    #[error("elliptic coordinate eta={eta} outside [0, {eta_hat})")]
    EtaOutOfRange { eta: f64, eta_hat: f64 },
    #[error("elliptic coordinates are degenerate at rho = 0 (the ellipse is a circle)")]
    DegenerateElliptic,
    #[error("invalid {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("no exit samples to bin")]
    EmptySamples,
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
