//! Complex polynomials stored as coefficient lists, constant term first.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{Complex, ComplexError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolynomialError {
    #[error("degenerate zero polynomial: every point is a root")]
    DegenerateZeroPolynomial,
    #[error("constant term is zero, so 0 is already a root")]
    ZeroConstantTerm,
    #[error("cannot deflate a constant polynomial")]
    CannotDeflateConstant,
    #[error("empty polynomial")]
    EmptyPolynomial,
    #[error("parse error at token {position}: {source}")]
    Parse {
        position: usize,
        #[source]
        source: ComplexError,
    },
    #[error("invalid JSON polynomial: {0}")]
    Json(String),
}

/// `a₀ + a₁z + … + aₙzⁿ`, held as `[a₀, a₁, …, aₙ]`.
///
/// The list may carry trailing zeros; [`Polynomial::truncate`] removes them.
/// Values are never mutated after construction.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Polynomial {
    coeffs: Vec<Complex>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Complex>) -> Self {
        Polynomial { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| Complex::real(c)).collect())
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Horner evaluation; the empty polynomial is identically 0.
    pub fn eval(&self, z: Complex) -> Complex {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::ZERO, |acc, &a| acc * z + a)
    }

    /// Position of the last nonzero coefficient.
    pub fn degree(&self) -> Result<usize, PolynomialError> {
        self.coeffs
            .iter()
            .rposition(|c| !c.is_zero())
            .ok_or(PolynomialError::DegenerateZeroPolynomial)
    }

    /// Drops the maximal trailing run of exactly-zero coefficients.
    pub fn truncate(&self) -> Polynomial {
        self.truncate_with_epsilon(0.0)
    }

    /// Like [`truncate`](Self::truncate) but also treats trailing
    /// coefficients of norm at most `epsilon` as zero. Intended for computed
    /// polynomials where rounding leaves dust in the top coefficients.
    pub fn truncate_with_epsilon(&self, epsilon: f64) -> Polynomial {
        let keep = self
            .coeffs
            .iter()
            .rposition(|c| !c.is_zero() && c.norm() > epsilon)
            .map_or(0, |k| k + 1);
        Polynomial::new(self.coeffs[..keep].to_vec())
    }

    pub fn is_constant(&self) -> bool {
        self.truncate().len() <= 1
    }

    /// Last nonzero coefficient.
    pub fn leading_coeff(&self) -> Result<Complex, PolynomialError> {
        self.degree().map(|n| self.coeffs[n])
    }

    /// `p(z)/a₀`, whose constant term is exactly 1.
    pub fn scale_to_unit_constant(&self) -> Result<Polynomial, PolynomialError> {
        let a0 = match self.coeffs.first() {
            None => return Err(PolynomialError::DegenerateZeroPolynomial),
            Some(a0) if a0.is_zero() => return Err(PolynomialError::ZeroConstantTerm),
            Some(&a0) => a0,
        };
        let mut coeffs: Vec<Complex> = self.coeffs.iter().map(|&a| a / a0).collect();
        coeffs[0] = Complex::ONE;
        Ok(Polynomial::new(coeffs))
    }

    /// Taylor shift `q(z) = p(z + z0)` by repeated synthetic division. The
    /// leading coefficient is carried through untouched.
    pub fn shift(&self, z0: Complex) -> Polynomial {
        let mut b = self.coeffs.clone();
        if z0.is_zero() || b.len() < 2 {
            return Polynomial::new(b);
        }
        let n = b.len() - 1;
        for i in 0..n {
            for j in (i..n).rev() {
                let carry = z0 * b[j + 1];
                b[j] += carry;
            }
        }
        Polynomial::new(b)
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &a)| a.scale(i as f64))
                .collect(),
        )
    }

    /// Largest coefficient norm of the truncated polynomial, optionally
    /// leaving out the leading coefficient.
    pub fn max_coeff_norm(&self, exclude_leading: bool) -> Result<f64, PolynomialError> {
        let n = self.degree()?;
        let selected = if exclude_leading { &self.coeffs[..n] } else { &self.coeffs[..=n] };
        if selected.is_empty() {
            return Err(PolynomialError::DegenerateZeroPolynomial);
        }
        Ok(selected.iter().map(Complex::norm).fold(0.0, f64::max))
    }

    /// Synthetic division by `(z − r)`: returns `(q, rem)` with
    /// `p(z) = (z − r)·q(z) + rem`.
    pub fn deflate(&self, r: Complex) -> Result<(Polynomial, Complex), PolynomialError> {
        let n = self.degree()?;
        if n == 0 {
            return Err(PolynomialError::CannotDeflateConstant);
        }
        let a = &self.coeffs[..=n];
        let mut q = vec![Complex::ZERO; n];
        q[n - 1] = a[n];
        for i in (1..n).rev() {
            q[i - 1] = a[i] + r * q[i];
        }
        let rem = a[0] + r * q[0];
        Ok((Polynomial::new(q), rem))
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_empty() || other.is_empty() {
            return Polynomial::default();
        }
        let mut out = vec![Complex::ZERO; self.len() + other.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    /// `lead·Π(z − rᵢ)`.
    pub fn from_roots(lead: Complex, roots: &[Complex]) -> Polynomial {
        roots.iter().fold(Polynomial::new(vec![lead]), |acc, &r| {
            acc.mul(&Polynomial::new(vec![-r, Complex::ONE]))
        })
    }

    /// Parses either whitespace-separated complex literals (`1 1i 3`) or a
    /// JSON array of `[re, im]` pairs, constant term first.
    pub fn parse(text: &str) -> Result<Polynomial, PolynomialError> {
        let trimmed = text.trim();
        if trimmed.starts_with('[') {
            let pairs: Vec<[f64; 2]> = serde_json::from_str(trimmed)
                .map_err(|e| PolynomialError::Json(e.to_string()))?;
            if pairs.is_empty() {
                return Err(PolynomialError::EmptyPolynomial);
            }
            return Ok(Polynomial::new(
                pairs.into_iter().map(|[re, im]| Complex::new(re, im)).collect(),
            ));
        }
        let coeffs = trimmed
            .split_whitespace()
            .enumerate()
            .map(|(k, tok)| {
                tok.parse::<Complex>()
                    .map_err(|source| PolynomialError::Parse { position: k + 1, source })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if coeffs.is_empty() {
            return Err(PolynomialError::EmptyPolynomial);
        }
        Ok(Polynomial::new(coeffs))
    }
}

impl FromStr for Polynomial {
    type Err = PolynomialError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Polynomial::parse(s)
    }
}

/// Space-separated canonical literals; reads back exactly through
/// [`Polynomial::parse`].
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl From<Vec<Complex>> for Polynomial {
    fn from(coeffs: Vec<Complex>) -> Self {
        Polynomial::new(coeffs)
    }
}
