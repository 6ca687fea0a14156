//! Norm-decreasing steps at non-roots, and their iteration toward a root.
//!
//! At a point `z₀` with `p(z₀) ≠ 0`, shift and scale so the polynomial reads
//! `q(z) = 1 + a_k z^k + z^{k+1} t(z)` with `a_k` the lowest nonzero
//! coefficient past the constant. Choosing `z_s = (−s/a_k)^{1/k}` with
//! `s < ‖a_k‖^{k+1} / (M^k (n+1)^k)` gives `‖q(z_s)‖ ≤ 1 − s(1 − r)` with
//! `r = ‖z_s‖·‖t(z_s)‖/‖a_k‖ < 1`, so `‖p(z₀ + z_s)‖ < ‖p(z₀)‖`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{format_real, Complex};
use crate::polynomial::Polynomial;

/// Smallest step parameter tried before a step is declared stalled.
pub const MIN_STEP_PARAMETER: f64 = 1e-300;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DescentError {
    #[error("descent does not apply to a constant polynomial")]
    NotApplicableToConstant,
    #[error("p(z0) = 0: already at a root")]
    AlreadyAtRoot,
    #[error("no decrease found down to step parameter {s:e}")]
    StepStalled { s: f64 },
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
}

/// `p = a₀ + a_k z^k + z^{k+1}·tail(z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LowestExponentSplit {
    pub k: usize,
    pub ak: Complex,
    pub tail: Polynomial,
}

/// One accepted descent step and the quantities that justify it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DescentStep {
    pub k: usize,
    /// Lowest nonzero non-constant coefficient of the shifted, scaled
    /// polynomial.
    pub ak: Complex,
    /// Largest coefficient norm of the shifted, scaled polynomial.
    pub max_coeff: f64,
    /// Step parameter actually used.
    pub s: f64,
    /// Offset from the start point, `(−s/a_k)^{1/k}`.
    pub zs: Complex,
    /// `z₀ + z_s`.
    pub point: Complex,
    pub before: f64,
    pub after: f64,
    /// `‖z_s‖·‖tail(z_s)‖/‖a_k‖` at the accepted step.
    pub ratio: f64,
    /// How many times `s` was halved after the initial choice.
    pub halvings: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub iter: usize,
    pub re: f64,
    pub im: f64,
    pub residual: f64,
    pub s: f64,
    pub k: usize,
}

pub const TRACE_CSV_HEADER: &str = "iter,re,im,residual,s,k";

impl TraceRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.iter,
            format_real(self.re),
            format_real(self.im),
            format_real(self.residual),
            format_real(self.s),
            self.k
        )
    }
}

/// Renders a trace with the `iter,re,im,residual,s,k` header.
pub fn trace_csv(trace: &[TraceRecord]) -> String {
    let mut out = String::from(TRACE_CSV_HEADER);
    out.push('\n');
    for rec in trace {
        out.push_str(&rec.csv_row());
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootResult {
    pub root: Complex,
    /// `‖p(root)‖`.
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
    /// The last step could not decrease the residual in floating point.
    pub stalled: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceRecord>>,
}

fn non_constant(p: &Polynomial) -> Result<Polynomial, DescentError> {
    let t = p.truncate();
    if t.len() < 2 {
        return Err(DescentError::NotApplicableToConstant);
    }
    Ok(t)
}

pub fn split_lowest_exponent(p: &Polynomial) -> Result<LowestExponentSplit, DescentError> {
    let t = non_constant(p)?;
    let coeffs = t.coeffs();
    let k = (1..coeffs.len())
        .find(|&i| !coeffs[i].is_zero())
        .expect("truncated non-constant polynomial has a nonzero leading coefficient");
    Ok(LowestExponentSplit {
        k,
        ak: coeffs[k],
        tail: Polynomial::new(coeffs[k + 1..].to_vec()),
    })
}

/// Smallest `i ≥ 1` with `aᵢ ≠ 0`.
pub fn lowest_nonzero_exponent(p: &Polynomial) -> Result<usize, DescentError> {
    split_lowest_exponent(p).map(|s| s.k)
}

/// `min(½, ½·‖a_k‖^{k+1} / (M^k (n+1)^k))` for a polynomial with unit
/// constant term, `M` the largest coefficient norm and `n` the degree.
pub fn step_parameter(p: &Polynomial) -> Result<f64, DescentError> {
    let t = non_constant(p)?;
    let split = split_lowest_exponent(&t)?;
    let m = t.max_coeff_norm(false).map_err(|_| DescentError::NotApplicableToConstant)?;
    let n = t.len() - 1;
    Ok(step_bound(split.ak.norm(), m, n, split.k))
}

// ‖a_k‖·(‖a_k‖/(M(n+1)))^k, arranged so moderate inputs cannot overflow.
// Since ‖a_k‖ ≤ M, s/‖a_k‖ ≤ ½(n+1)^{-k} < 1, which keeps ‖z_s‖ < 1.
fn step_bound(ak_norm: f64, m: f64, n: usize, k: usize) -> f64 {
    let ratio = ak_norm / (m * (n + 1) as f64);
    let bound = ak_norm * ratio.powi(k as i32);
    (0.5 * bound).min(0.5)
}

/// One step from `z0` to a point of strictly smaller `‖p‖`.
///
/// Starts from half the theoretical bound on `s` and halves it whenever
/// rounding prevents a strict decrease.
pub fn descent_step(p: &Polynomial, z0: Complex) -> Result<DescentStep, DescentError> {
    let t = non_constant(p)?;
    let value = t.eval(z0);
    if value.is_zero() {
        return Err(DescentError::AlreadyAtRoot);
    }
    let before = value.norm();
    // Shifting keeps the leading coefficient, so `q` stays non-constant.
    let q = t
        .shift(z0)
        .scale_to_unit_constant()
        .map_err(|_| DescentError::AlreadyAtRoot)?;
    let LowestExponentSplit { k, ak, tail } = split_lowest_exponent(&q)?;
    let max_coeff = q.max_coeff_norm(false).map_err(|_| DescentError::NotApplicableToConstant)?;
    let mut s = step_bound(ak.norm(), max_coeff, q.len() - 1, k);
    let mut halvings = 0;

    while s >= MIN_STEP_PARAMETER {
        let zs = (Complex::real(-s) / ak)
            .nth_root(k as u32)
            .expect("k is at least 1");
        let point = z0 + zs;
        if point == z0 {
            break;
        }
        let after = t.eval(point).norm();
        if after < before {
            let ratio = zs.norm() * tail.eval(zs).norm() / ak.norm();
            return Ok(DescentStep {
                k,
                ak,
                max_coeff,
                s,
                zs,
                point,
                before,
                after,
                ratio,
                halvings,
            });
        }
        s *= 0.5;
        halvings += 1;
    }
    Err(DescentError::StepStalled { s })
}

/// Repeats [`descent_step`] until `‖p(z)‖ ≤ tol`, `max_iter` steps have been
/// taken, or a step stalls. The returned trace starts with the initial point
/// (`s = 0`, `k = 0`) and its residuals strictly decrease.
pub fn descend(
    p: &Polynomial,
    z0: Complex,
    tol: f64,
    max_iter: usize,
) -> Result<RootResult, DescentError> {
    if !(tol > 0.0) {
        return Err(DescentError::InvalidTolerance(tol));
    }
    let t = non_constant(p)?;
    let mut z = z0;
    let mut residual = t.eval(z).norm();
    let mut trace = vec![TraceRecord { iter: 0, re: z.re, im: z.im, residual, s: 0.0, k: 0 }];
    let mut iterations = 0;
    let mut stalled = false;

    while residual > tol && iterations < max_iter {
        match descent_step(&t, z) {
            Ok(step) => {
                iterations += 1;
                z = step.point;
                residual = step.after;
                trace.push(TraceRecord {
                    iter: iterations,
                    re: z.re,
                    im: z.im,
                    residual,
                    s: step.s,
                    k: step.k,
                });
            }
            Err(DescentError::StepStalled { .. }) => {
                stalled = true;
                break;
            }
            Err(DescentError::AlreadyAtRoot) => break,
            Err(e) => return Err(e),
        }
    }

    Ok(RootResult {
        root: z,
        residual,
        iterations,
        converged: residual <= tol,
        stalled,
        trace: Some(trace),
    })
}
