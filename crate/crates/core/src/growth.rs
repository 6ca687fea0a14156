//! Growth bounds for `‖p(z)‖` far from the origin.
//!
//! For `‖z‖` past a threshold, `½‖aₙ‖‖z‖ⁿ ≤ ‖p(z)‖ ≤ ³⁄₂‖aₙ‖‖z‖ⁿ`. Past the
//! larger enclosure radius, `‖p(z)‖ ≥ ‖p(0)‖`, so the global minimum of
//! `‖p‖` sits inside a known square around the origin.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::Complex;
use crate::evt::SquareRegion;
use crate::polynomial::Polynomial;

/// Relative slack for the sandwich comparisons.
pub const BOUND_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GrowthError {
    #[error("growth bounds do not apply to a constant polynomial")]
    NotApplicableToConstant,
    #[error("‖z‖ = {norm} is below the threshold radius {threshold}")]
    BelowThreshold { norm: f64, threshold: f64 },
    #[error("bound violated: {lower} ≤ {value} ≤ {upper} fails")]
    BoundViolated { lower: f64, value: f64, upper: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthCertificate {
    /// Both bounds hold for `‖z‖` at least this.
    pub threshold_radius: f64,
    /// Outside this radius `‖p(z)‖ ≥ ‖p(0)‖`.
    pub enclosure_radius: f64,
    /// `‖aₙ‖`.
    pub lead_norm: f64,
    /// `max ‖aᵢ‖` for `i < n`.
    pub sub_max: f64,
    pub deg: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub lower: f64,
    pub value: f64,
    pub upper: f64,
}

impl BoundCheck {
    pub fn holds(&self) -> bool {
        let slack = BOUND_SLACK * self.upper.abs().max(self.value);
        self.lower <= self.value + slack && self.value <= self.upper + slack
    }
}

/// Radii from `K = ‖aₙ‖/2`: the threshold is `max(1, 2·A·n/‖aₙ‖)`, which
/// covers the `n` sub-leading terms, and the enclosure radius also clears
/// `2‖a₀‖/‖aₙ‖`.
pub fn growth_certificate(p: &Polynomial) -> Result<GrowthCertificate, GrowthError> {
    let t = p.truncate();
    let deg = match t.degree() {
        Ok(n) if n >= 1 => n,
        _ => return Err(GrowthError::NotApplicableToConstant),
    };
    let coeffs = t.coeffs();
    let lead_norm = coeffs[deg].norm();
    let sub_max = coeffs[..deg].iter().map(Complex::norm).fold(0.0, f64::max);
    let threshold_radius = (2.0 * sub_max * deg as f64 / lead_norm).max(1.0);
    let enclosure_radius = (2.0 * coeffs[0].norm() / lead_norm).max(threshold_radius);
    Ok(GrowthCertificate { threshold_radius, enclosure_radius, lead_norm, sub_max, deg })
}

/// Evaluates both sides of the sandwich at `z`.
pub fn check_bounds(
    p: &Polynomial,
    z: Complex,
    cert: &GrowthCertificate,
) -> Result<BoundCheck, GrowthError> {
    let norm = z.norm();
    if norm < cert.threshold_radius {
        return Err(GrowthError::BelowThreshold { norm, threshold: cert.threshold_radius });
    }
    let scale = cert.lead_norm * norm.powi(cert.deg as i32);
    let check = BoundCheck { lower: 0.5 * scale, value: p.eval(z).norm(), upper: 1.5 * scale };
    if check.holds() {
        Ok(check)
    } else {
        Err(GrowthError::BoundViolated { lower: check.lower, value: check.value, upper: check.upper })
    }
}

/// Origin-centred square of half-side equal to the enclosure radius.
pub fn minimum_enclosing_square(p: &Polynomial) -> Result<SquareRegion, GrowthError> {
    let cert = growth_certificate(p)?;
    Ok(SquareRegion::centered(cert.enclosure_radius).expect("enclosure radius is at least 1"))
}
