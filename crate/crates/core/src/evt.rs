//! Certified minimization of `‖p(z)‖` over a square.
//!
//! Every result carries a gap: the true minimum over the region lies in
//! `[value − gap, value]`. Gaps come from Lipschitz bounds (tightened for
//! polynomials by a local Taylor bound per cell), so they remain valid
//! whatever the grid resolution or however early a search stops.

use std::f64::consts::FRAC_1_SQRT_2;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::Complex;
use crate::polynomial::Polynomial;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvtError {
    #[error("square side must be positive and finite, got {0}")]
    InvalidSide(f64),
    #[error("square corner must be finite")]
    InvalidCorner,
    #[error("epsilon must be positive, got {0}")]
    InvalidEpsilon(f64),
    #[error("grid resolution must be at least 1")]
    EmptyGrid,
}

/// Closed axis-aligned square `[x₀, x₀+s] × [y₀, y₀+s]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawRegion")]
pub struct SquareRegion {
    corner: Complex,
    side: f64,
}

#[derive(Deserialize)]
struct RawRegion {
    corner: Complex,
    side: f64,
}

impl TryFrom<RawRegion> for SquareRegion {
    type Error = EvtError;
    fn try_from(raw: RawRegion) -> Result<Self, Self::Error> {
        SquareRegion::new(raw.corner, raw.side)
    }
}

impl SquareRegion {
    pub fn new(corner: Complex, side: f64) -> Result<Self, EvtError> {
        if !corner.is_finite() {
            return Err(EvtError::InvalidCorner);
        }
        if !(side > 0.0 && side.is_finite()) {
            return Err(EvtError::InvalidSide(side));
        }
        Ok(SquareRegion { corner, side })
    }

    /// Square of half-side `half` centred on the origin.
    pub fn centered(half: f64) -> Result<Self, EvtError> {
        SquareRegion::new(Complex::new(-half, -half), 2.0 * half)
    }

    pub fn corner(&self) -> Complex {
        self.corner
    }

    pub fn side(&self) -> f64 {
        self.side
    }

    pub fn upper(&self) -> Complex {
        Complex::new(self.corner.re + self.side, self.corner.im + self.side)
    }

    pub fn center(&self) -> Complex {
        let h = 0.5 * self.side;
        Complex::new(self.corner.re + h, self.corner.im + h)
    }

    pub fn contains(&self, z: Complex) -> bool {
        let hi = self.upper();
        self.corner.re <= z.re && z.re <= hi.re && self.corner.im <= z.im && z.im <= hi.im
    }

    pub fn corners(&self) -> [Complex; 4] {
        let lo = self.corner;
        let hi = self.upper();
        [lo, Complex::new(hi.re, lo.im), Complex::new(lo.re, hi.im), hi]
    }

    /// Half the diagonal: the farthest any point sits from the centre.
    pub fn half_diagonal(&self) -> f64 {
        FRAC_1_SQRT_2 * self.side
    }

    /// Largest `‖z‖` over the square, attained at a corner.
    pub fn max_norm(&self) -> f64 {
        self.corners().iter().map(Complex::norm).fold(0.0, f64::max)
    }

    /// The four half-size subsquares, row-major from the lower-left.
    pub fn quadrants(&self) -> [SquareRegion; 4] {
        let h = 0.5 * self.side;
        let mid = Complex::new(self.corner.re + h, self.corner.im + h);
        let sub = |re, im| SquareRegion { corner: Complex::new(re, im), side: h };
        [
            sub(self.corner.re, self.corner.im),
            sub(mid.re, self.corner.im),
            sub(self.corner.re, mid.im),
            sub(mid.re, mid.im),
        ]
    }

    /// Point `(i, j)` of the uniform `(n+1) × (n+1)` grid. Coordinates are
    /// computed as `x₀ + (s·i)/n`, so grids with `n` and `2n` share their
    /// common points bit for bit.
    fn grid_point(&self, i: usize, j: usize, n: usize) -> Complex {
        let hi = self.upper();
        let re = (self.corner.re + self.side * i as f64 / n as f64).min(hi.re);
        let im = (self.corner.im + self.side * j as f64 / n as f64).min(hi.im);
        Complex::new(re, im)
    }
}

/// A real-valued function on the plane with a known Lipschitz constant on
/// any square.
pub trait Objective: Sync {
    fn value(&self, z: Complex) -> f64;

    /// `L` with `|f(u) − f(v)| ≤ L·‖u − v‖` for `u`, `v` in `region`.
    fn lipschitz(&self, region: &SquareRegion) -> f64;

    /// A global lower bound on the function, if one is known.
    fn floor(&self) -> f64 {
        f64::NEG_INFINITY
    }

    /// Lower bound on the function over `cell`, given its value at the
    /// cell centre. The default is the Lipschitz cone bound.
    fn cell_lower_bound(&self, cell: &SquareRegion, center_value: f64) -> f64 {
        center_value - self.lipschitz(cell) * cell.half_diagonal()
    }
}

/// `z ↦ ‖p(z)‖`, with per-square Lipschitz constants from the derivative.
#[derive(Debug, Clone)]
pub struct PolynomialNorm {
    poly: Polynomial,
    /// `i·‖aᵢ‖` for `i ≥ 1`.
    slope_weights: Vec<f64>,
}

impl PolynomialNorm {
    pub fn new(p: &Polynomial) -> Self {
        let poly = p.truncate();
        let slope_weights = poly.derivative().coeffs().iter().map(Complex::norm).collect();
        PolynomialNorm { poly, slope_weights }
    }
}

impl Objective for PolynomialNorm {
    fn value(&self, z: Complex) -> f64 {
        self.poly.eval(z).norm()
    }

    fn lipschitz(&self, region: &SquareRegion) -> f64 {
        let r = region.max_norm();
        self.slope_weights.iter().rev().fold(0.0, |acc, &w| acc * r + w)
    }

    fn floor(&self) -> f64 {
        0.0
    }

    /// The larger of the Lipschitz bound and a second-order Taylor bound.
    ///
    /// With `p(c + w) = b₀ + b₁w + Σ_{j≥2} b_j w^j`, the real part of
    /// `b₀ + b₁w` along the direction of `b₀` is affine in `w`, so its
    /// minimum over the cell sits at a corner; the remainder is bounded by
    /// `Σ_{j≥2} ‖b_j‖ h^j` with `h` the half diagonal. Unlike the cone bound
    /// this stays tight on cells whose minimum lies on an edge.
    fn cell_lower_bound(&self, cell: &SquareRegion, center_value: f64) -> f64 {
        let cone = center_value - self.lipschitz(cell) * cell.half_diagonal();
        let taylor = self.poly.shift(cell.center());
        let b = taylor.coeffs();
        if b.len() < 2 {
            return cone;
        }
        let h = cell.half_diagonal();
        let half_side = 0.5 * cell.side();
        let b0_norm = b[0].norm();
        let linear_drop = if b0_norm > 0.0 {
            let u = b[0].conj().scale(1.0 / b0_norm) * b[1];
            (u.re.abs() + u.im.abs()) * half_side
        } else {
            b[1].norm() * h
        };
        let remainder = b[2..].iter().rev().fold(0.0, |acc, c| (acc + c.norm()) * h) * h;
        cone.max(b0_norm - linear_drop - remainder)
    }
}

/// An arbitrary function paired with a caller-supplied Lipschitz constant
/// valid on every region it is searched over.
pub struct LipschitzFn<F> {
    f: F,
    lipschitz: f64,
    floor: f64,
}

impl<F: Fn(Complex) -> f64 + Sync> LipschitzFn<F> {
    pub fn new(f: F, lipschitz: f64) -> Self {
        LipschitzFn { f, lipschitz, floor: f64::NEG_INFINITY }
    }

    pub fn with_floor(mut self, floor: f64) -> Self {
        self.floor = floor;
        self
    }
}

impl<F: Fn(Complex) -> f64 + Sync> Objective for LipschitzFn<F> {
    fn value(&self, z: Complex) -> f64 {
        (self.f)(z)
    }

    fn lipschitz(&self, _region: &SquareRegion) -> f64 {
        self.lipschitz
    }

    fn floor(&self) -> f64 {
        self.floor
    }
}

/// A near-minimizer with a proven optimality gap.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CertifiedMinimum {
    pub argmin: Complex,
    pub value: f64,
    pub gap: f64,
    pub evaluations: u64,
    /// Set when the evaluation budget ran out before the requested gap.
    pub budget_exhausted: bool,
}

impl CertifiedMinimum {
    pub fn lower_bound(&self) -> f64 {
        self.value - self.gap
    }
}

/// `Σ_{i≥1} i·‖aᵢ‖·R^{i−1}` with `R` the largest corner norm of the region.
pub fn lipschitz_bound(p: &Polynomial, region: &SquareRegion) -> f64 {
    PolynomialNorm::new(p).lipschitz(region)
}

/// Minimum of `‖p‖` over the `(n+1)²` grid points of `region`.
pub fn grid_min(p: &Polynomial, region: &SquareRegion, n: usize) -> Result<CertifiedMinimum, EvtError> {
    grid_min_with(&PolynomialNorm::new(p), region, n)
}

/// Grid search for any [`Objective`]. Ties go to the smallest row-major
/// index (rows run along the imaginary axis).
pub fn grid_min_with<O: Objective>(
    objective: &O,
    region: &SquareRegion,
    n: usize,
) -> Result<CertifiedMinimum, EvtError> {
    if n == 0 {
        return Err(EvtError::EmptyGrid);
    }
    let width = n + 1;
    let (value, index) = (0..width)
        .into_par_iter()
        .map(|j| {
            (0..width)
                .map(|i| (objective.value(region.grid_point(i, j, n)), j * width + i))
                .fold((f64::INFINITY, usize::MAX), pick_min)
        })
        .reduce(|| (f64::INFINITY, usize::MAX), pick_min);
    let argmin = region.grid_point(index % width, index / width, n);
    let spacing = region.side() / n as f64;
    let gap = objective.lipschitz(region) * FRAC_1_SQRT_2 * spacing;
    Ok(CertifiedMinimum {
        argmin,
        value,
        gap,
        evaluations: (width * width) as u64,
        budget_exhausted: false,
    })
}

fn pick_min(a: (f64, usize), b: (f64, usize)) -> (f64, usize) {
    if b.0 < a.0 || (b.0 == a.0 && b.1 < a.1) {
        b
    } else {
        a
    }
}

#[derive(Debug, Clone, Copy)]
struct Cell {
    region: SquareRegion,
    lower: f64,
}

/// Branch-and-bound minimization of `‖p‖` until the gap is at most
/// `epsilon` or `budget` function evaluations have been spent.
pub fn certified_min(
    p: &Polynomial,
    region: &SquareRegion,
    epsilon: f64,
    budget: u64,
) -> Result<CertifiedMinimum, EvtError> {
    certified_min_with(&PolynomialNorm::new(p), region, epsilon, budget)
}

/// Branch-and-bound over subsquares.
///
/// Each cell is bounded below by [`Objective::cell_lower_bound`], at least
/// as tight as `f(centre) − L_cell·half_diagonal`. Cells
/// whose bound exceeds the incumbent are discarded; cells whose bound is
/// more than `epsilon` below it are split into quadrants, one wave at a
/// time. Centre evaluations within a wave run in parallel, and the
/// incumbent is updated in a fixed order, so results match a sequential run.
pub fn certified_min_with<O: Objective>(
    objective: &O,
    region: &SquareRegion,
    epsilon: f64,
    budget: u64,
) -> Result<CertifiedMinimum, EvtError> {
    if !(epsilon > 0.0) {
        return Err(EvtError::InvalidEpsilon(epsilon));
    }
    let floor = objective.floor();
    let bound =
        |cell: &SquareRegion, value: f64| objective.cell_lower_bound(cell, value).max(floor);

    let center = region.center();
    let first = objective.value(center);
    let mut best = (first, center);
    let mut evaluations = 1u64;
    let mut cells = vec![Cell { region: *region, lower: bound(region, first) }];
    let mut exhausted = false;

    loop {
        cells.retain(|c| c.lower <= best.0);
        let lowest = cells.iter().map(|c| c.lower).fold(best.0, f64::min);
        let gap = (best.0 - lowest).max(0.0);
        if gap <= epsilon || exhausted {
            return Ok(CertifiedMinimum {
                argmin: best.1,
                value: best.0,
                gap,
                evaluations,
                budget_exhausted: exhausted,
            });
        }

        let threshold = best.0 - epsilon;
        let (mut split, keep): (Vec<Cell>, Vec<Cell>) =
            cells.into_iter().partition(|c| c.lower < threshold);
        split.sort_by(|a, b| a.lower.total_cmp(&b.lower));
        let affordable = (budget.saturating_sub(evaluations) / 4) as usize;
        if affordable < split.len() {
            exhausted = true;
        }
        let deferred = split.split_off(affordable.min(split.len()));

        let children: Vec<SquareRegion> = split.iter().flat_map(|c| c.region.quadrants()).collect();
        let values: Vec<f64> = children.par_iter().map(|q| objective.value(q.center())).collect();
        evaluations += children.len() as u64;

        cells = keep;
        cells.extend(deferred);
        for (child, value) in children.iter().zip(values) {
            if value < best.0 {
                best = (value, child.center());
            }
            cells.push(Cell { region: *child, lower: bound(child, value) });
        }
    }
}
