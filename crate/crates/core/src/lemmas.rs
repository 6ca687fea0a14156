//! Randomized replays of the norm, root, growth, enclosure, grid-minimum and
//! descent lemmas on one polynomial.

use rand::Rng;
use serde::Serialize;

use crate::complex::Complex;
use crate::descent::descent_step;
use crate::evt::{grid_min, SquareRegion};
use crate::growth::{check_bounds, growth_certificate, minimum_enclosing_square, GrowthError};
use crate::polynomial::Polynomial;

/// Grid resolution used when replaying the grid-minimum certificate.
const CHECK_GRID: usize = 32;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaReport {
    pub lemma: &'static str,
    pub checked: usize,
    pub failures: usize,
    pub passed: bool,
}

impl LemmaReport {
    fn new(lemma: &'static str, checked: usize, failures: usize) -> Self {
        LemmaReport { lemma, checked, failures, passed: failures == 0 }
    }
}

fn random_complex<R: Rng>(rng: &mut R, scale: f64) -> Complex {
    Complex::new(rng.random_range(-scale..=scale), rng.random_range(-scale..=scale))
}

/// A point with norm drawn uniformly from `[lo, hi]` at a uniform angle.
fn random_annulus<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> Complex {
    let radius = rng.random_range(lo..=hi);
    let angle = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
    Complex::new(radius * angle.cos(), radius * angle.sin())
}

fn random_in<R: Rng>(rng: &mut R, region: &SquareRegion) -> Complex {
    let lo = region.corner();
    let hi = region.upper();
    Complex::new(rng.random_range(lo.re..=hi.re), rng.random_range(lo.im..=hi.im))
}

/// Multiplicativity and both triangle inequalities on pairs mixing the
/// coefficients of `p` with random points.
pub fn norm_laws<R: Rng>(p: &Polynomial, rng: &mut R, samples: usize) -> LemmaReport {
    let pool: Vec<Complex> = p.coeffs().to_vec();
    let mut failures = 0;
    for k in 0..samples {
        let x = if pool.is_empty() { random_complex(rng, 10.0) } else { pool[k % pool.len()] };
        let y = random_complex(rng, 10.0);
        let (nx, ny) = (x.norm(), y.norm());
        let mult = ((x * y).norm() - nx * ny).abs() <= 1e-12 * (1.0 + nx * ny);
        let tri = (x + y).norm() <= nx + ny + 1e-12 * (1.0 + nx + ny);
        let rev = (x - y).norm() >= nx - ny - 1e-12 * (1.0 + nx + ny);
        if !(mult && tri && rev) {
            failures += 1;
        }
    }
    LemmaReport::new("norm_laws", samples, failures)
}

/// `pow(nth_root(z, n), n) = z` for nonzero coefficients and random points.
pub fn de_moivre<R: Rng>(p: &Polynomial, rng: &mut R, samples: usize) -> LemmaReport {
    let pool: Vec<Complex> = p.coeffs().iter().copied().filter(|c| !c.is_zero()).collect();
    let mut failures = 0;
    for k in 0..samples {
        let z = if k < pool.len() { pool[k] } else { random_complex(rng, 10.0) };
        let n = rng.random_range(1..=16u32);
        let back = z.nth_root(n).expect("n >= 1").pow(n);
        if (back - z).norm() > 1e-10 * z.norm().max(f64::MIN_POSITIVE) {
            failures += 1;
        }
    }
    LemmaReport::new("de_moivre", samples, failures)
}

/// The ½/³⁄₂ sandwich for `‖z‖` between the threshold and ten times it.
pub fn growth_sandwich<R: Rng>(p: &Polynomial, rng: &mut R, samples: usize) -> Result<LemmaReport, GrowthError> {
    let cert = growth_certificate(p)?;
    let mut failures = 0;
    for _ in 0..samples {
        let z = random_annulus(rng, cert.threshold_radius, 10.0 * cert.threshold_radius);
        match check_bounds(p, z, &cert) {
            Ok(_) | Err(GrowthError::BelowThreshold { .. }) => {}
            Err(_) => failures += 1,
        }
    }
    Ok(LemmaReport::new("growth_sandwich", samples, failures))
}

/// `‖p(z)‖ ≥ ‖p(0)‖` outside the enclosure radius.
pub fn enclosure<R: Rng>(p: &Polynomial, rng: &mut R, samples: usize) -> Result<LemmaReport, GrowthError> {
    let cert = growth_certificate(p)?;
    let at_origin = p.eval(Complex::ZERO).norm();
    let mut failures = 0;
    for _ in 0..samples {
        let z = random_annulus(rng, cert.enclosure_radius, 10.0 * cert.enclosure_radius);
        if p.eval(z).norm() < at_origin - 1e-9 * (1.0 + at_origin) {
            failures += 1;
        }
    }
    Ok(LemmaReport::new("enclosure", samples, failures))
}

/// Grid minimum over the enclosing square is within its gap of every
/// sampled value.
pub fn grid_certificate<R: Rng>(p: &Polynomial, rng: &mut R, samples: usize) -> Result<LemmaReport, GrowthError> {
    let square = minimum_enclosing_square(p)?;
    let m = grid_min(p, &square, CHECK_GRID).expect("grid resolution is positive");
    let mut failures = 0;
    for _ in 0..samples {
        let z = random_in(rng, &square);
        if m.value > p.eval(z).norm() + m.gap + 1e-9 {
            failures += 1;
        }
    }
    Ok(LemmaReport::new("grid_certificate", samples, failures))
}

/// Strict decrease of a descent step at random non-roots in the enclosure.
pub fn descent_decrease<R: Rng>(p: &Polynomial, rng: &mut R, samples: usize) -> Result<LemmaReport, GrowthError> {
    let square = minimum_enclosing_square(p)?;
    let mut checked = 0;
    let mut failures = 0;
    for _ in 0..samples {
        let z = random_in(rng, &square);
        if p.eval(z).norm() <= 1e-6 {
            continue;
        }
        checked += 1;
        match descent_step(p, z) {
            Ok(step) if step.after < step.before => {}
            _ => failures += 1,
        }
    }
    Ok(LemmaReport::new("descent_decrease", checked, failures))
}

/// Every suite in turn, `samples` draws each.
pub fn replay_all<R: Rng>(p: &Polynomial, rng: &mut R, samples: usize) -> Result<Vec<LemmaReport>, GrowthError> {
    Ok(vec![
        norm_laws(p, rng, samples),
        de_moivre(p, rng, samples),
        growth_sandwich(p, rng, samples)?,
        enclosure(p, rng, samples)?,
        grid_certificate(p, rng, samples)?,
        descent_decrease(p, rng, samples)?,
    ])
}
