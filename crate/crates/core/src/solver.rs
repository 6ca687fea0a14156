//! Root finding: enclose the global minimum of `‖p‖`, seed from a certified
//! minimum inside the enclosure, then descend to a root. Deflation extends
//! this to all roots.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::Complex;
use crate::descent::{descend, DescentError};
use crate::evt::{certified_min, grid_min, CertifiedMinimum, EvtError};
use crate::growth::{growth_certificate, minimum_enclosing_square, GrowthCertificate};
use crate::polynomial::{Polynomial, PolynomialError};

pub use crate::descent::RootResult;

/// Evaluation budget for the seed search.
pub const SEED_BUDGET: u64 = 200_000;
/// Resolution of the coarse grid that fixes the seed target.
pub const SEED_GRID: usize = 8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("no root exists for nonzero constant")]
    NoRootExists,
    #[error("degenerate zero polynomial: all points are roots")]
    DegenerateZeroPolynomial,
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
    #[error(transparent)]
    Descent(#[from] DescentError),
    #[error(transparent)]
    Evt(#[from] EvtError),
    #[error(transparent)]
    Polynomial(#[from] PolynomialError),
}

/// All roots with the certificates used to seed the first one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub roots: Vec<RootResult>,
    /// Max coefficient-wise distance between `aₙ·Π(z − rᵢ)` and `p`.
    pub reconstruction_error: f64,
    pub enclosure: GrowthCertificate,
    pub seed: CertifiedMinimum,
}

/// A single root together with the certificates behind its seed.
#[derive(Debug, Clone, PartialEq)]
pub struct SeededRoot {
    pub result: RootResult,
    pub enclosure: GrowthCertificate,
    pub seed: CertifiedMinimum,
}

fn checked(p: &Polynomial, tol: f64) -> Result<Polynomial, SolveError> {
    if !(tol > 0.0) {
        return Err(SolveError::InvalidTolerance(tol));
    }
    let t = p.truncate();
    match t.len() {
        0 => Err(SolveError::DegenerateZeroPolynomial),
        1 => Err(SolveError::NoRootExists),
        _ => Ok(t),
    }
}

/// Runs the full pipeline and keeps the intermediate certificates.
pub fn find_root_seeded(p: &Polynomial, tol: f64, max_iter: usize) -> Result<SeededRoot, SolveError> {
    let t = checked(p, tol)?;
    let enclosure = growth_certificate(&t).expect("checked non-constant");
    let square = minimum_enclosing_square(&t).expect("checked non-constant");
    let coarse = grid_min(&t, &square, SEED_GRID)?;
    let epsilon = tol.max(coarse.value / 10.0);
    let seed = certified_min(&t, &square, epsilon, SEED_BUDGET)?;
    let start = if coarse.value < seed.value { coarse.argmin } else { seed.argmin };
    let result = descend(&t, start, tol, max_iter)?;
    Ok(SeededRoot { result, enclosure, seed })
}

/// One root of a non-constant polynomial.
///
/// Returns `converged = false` with the best point found when `max_iter`
/// runs out or floating point stops the descent above `tol`.
pub fn find_root(p: &Polynomial, tol: f64, max_iter: usize) -> Result<RootResult, SolveError> {
    find_root_seeded(p, tol, max_iter).map(|s| s.result)
}

/// Every root, counted with multiplicity, by repeated root finding and
/// deflation. Each root is polished against the original polynomial.
pub fn find_all_roots(p: &Polynomial, tol: f64, max_iter: usize) -> Result<SolveReport, SolveError> {
    let original = checked(p, tol)?;
    let first = find_root_seeded(&original, tol, max_iter)?;
    let enclosure = first.enclosure;
    let seed = first.seed;

    let mut roots = Vec::with_capacity(enclosure.deg);
    let mut current = original.clone();
    let mut estimate = Some(first.result);
    while current.len() >= 2 {
        let found = match estimate.take() {
            Some(r) => r,
            None => find_root(&current, tol, max_iter)?,
        };
        let polished = descend(&original, found.root, tol, max_iter)?;
        let (quotient, _) = current.deflate(found.root)?;
        current = quotient;
        roots.push(polished);
    }

    let lead = original.leading_coeff()?;
    let zs: Vec<Complex> = roots.iter().map(|r| r.root).collect();
    let reconstruction_error = reconstruction_error(&original, lead, &zs);
    Ok(SolveReport { roots, reconstruction_error, enclosure, seed })
}

fn reconstruction_error(p: &Polynomial, lead: Complex, roots: &[Complex]) -> f64 {
    let rebuilt = Polynomial::from_roots(lead, roots);
    rebuilt
        .coeffs()
        .iter()
        .zip(p.coeffs())
        .map(|(a, b)| (*a - *b).norm())
        .fold(0.0, f64::max)
}
