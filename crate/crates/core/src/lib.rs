//! Complex polynomial root finding by certified minimization of `‖p(z)‖`
//! and norm-decreasing descent.
//!
//! The pipeline: [`growth`] bounds trap the global minimum of `‖p‖` in a
//! square around the origin, [`evt`] finds a certified near-minimizer in that
//! square, and [`descent`] steps from there to a root, each step strictly
//! decreasing `‖p‖`. [`solver`] ties these together and adds deflation for
//! all roots.

pub mod cli;
pub mod complex;
pub mod descent;
pub mod evt;
pub mod growth;
pub mod lemmas;
pub mod polynomial;
pub mod solver;

pub use complex::{Complex, ComplexError, Polar};
pub use descent::{
    descend, descent_step, lowest_nonzero_exponent, split_lowest_exponent, step_parameter,
    DescentError, DescentStep, LowestExponentSplit, RootResult, TraceRecord,
};
pub use evt::{
    certified_min, certified_min_with, grid_min, grid_min_with, lipschitz_bound, CertifiedMinimum,
    EvtError, LipschitzFn, Objective, PolynomialNorm, SquareRegion,
};
pub use growth::{
    check_bounds, growth_certificate, minimum_enclosing_square, BoundCheck, GrowthCertificate,
    GrowthError,
};
pub use polynomial::{Polynomial, PolynomialError};
pub use solver::{find_all_roots, find_root, find_root_seeded, SeededRoot, SolveError, SolveReport};
