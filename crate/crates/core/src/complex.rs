//! Double-precision complex numbers: arithmetic, the Euclidean norm, polar
//! form, integer powers and principal nth roots.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("root index must be at least 1")]
    ZeroRootIndex,
    #[error("malformed complex literal `{0}`")]
    Malformed(String),
    #[error("non-finite complex literal `{0}`")]
    NonFinite(String),
}

/// A point `re + im·i` of the complex plane.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Complex {
    pub re: f64,
    pub im: f64,
}

/// Polar decomposition `radius·(cos angle + i sin angle)` with the angle in
/// `(−π, π]`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Polar {
    pub radius: f64,
    pub angle: f64,
}

impl Complex {
    pub const ZERO: Complex = Complex { re: 0.0, im: 0.0 };
    pub const ONE: Complex = Complex { re: 1.0, im: 0.0 };
    pub const I: Complex = Complex { re: 0.0, im: 1.0 };

    pub const fn new(re: f64, im: f64) -> Self {
        Complex { re, im }
    }

    pub const fn real(re: f64) -> Self {
        Complex { re, im: 0.0 }
    }

    pub fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn conj(&self) -> Self {
        Complex::new(self.re, -self.im)
    }

    /// Euclidean magnitude `√(re² + im²)`, computed without intermediate
    /// overflow.
    pub fn norm(&self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn scale(&self, k: f64) -> Self {
        Complex::new(self.re * k, self.im * k)
    }

    /// Principal polar form. The angle of the origin is taken to be 0, and a
    /// negative-zero imaginary part on the negative real axis still maps to
    /// `π` rather than `−π`.
    pub fn polar(&self) -> Polar {
        if self.is_zero() {
            return Polar { radius: 0.0, angle: 0.0 };
        }
        let mut angle = self.im.atan2(self.re);
        if angle <= -PI {
            angle = PI;
        }
        Polar { radius: self.norm(), angle }
    }

    pub fn from_polar(p: Polar) -> Self {
        let (sin, cos) = p.angle.sin_cos();
        Complex::new(p.radius * cos, p.radius * sin)
    }

    /// `self^n` by binary exponentiation; `pow(z, 0) = 1` for every z.
    pub fn pow(&self, n: u32) -> Self {
        let mut result = Complex::ONE;
        let mut base = *self;
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result *= base;
            }
            e >>= 1;
            if e > 0 {
                base *= base;
            }
        }
        result
    }

    /// Principal nth root `radius^(1/n)·exp(i·angle/n)` (de Moivre).
    pub fn nth_root(&self, n: u32) -> Result<Self, ComplexError> {
        if n == 0 {
            return Err(ComplexError::ZeroRootIndex);
        }
        if n == 1 {
            return Ok(*self);
        }
        let Polar { radius, angle } = self.polar();
        let r = match n {
            2 => radius.sqrt(),
            3 => radius.cbrt(),
            _ => radius.powf(1.0 / n as f64),
        };
        Ok(Complex::from_polar(Polar { radius: r, angle: angle / n as f64 }))
    }

    pub fn recip(&self) -> Self {
        Complex::ONE / *self
    }
}

impl Add for Complex {
    type Output = Complex;
    fn add(self, rhs: Complex) -> Complex {
        Complex::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for Complex {
    type Output = Complex;
    fn sub(self, rhs: Complex) -> Complex {
        Complex::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for Complex {
    type Output = Complex;
    fn mul(self, rhs: Complex) -> Complex {
        Complex::new(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )
    }
}

impl Mul<f64> for Complex {
    type Output = Complex;
    fn mul(self, rhs: f64) -> Complex {
        self.scale(rhs)
    }
}

impl Div for Complex {
    type Output = Complex;
    /// Smith's algorithm, avoiding overflow in the denominator.
    fn div(self, rhs: Complex) -> Complex {
        if rhs.re.abs() >= rhs.im.abs() {
            let ratio = rhs.im / rhs.re;
            let denom = rhs.re + rhs.im * ratio;
            Complex::new(
                (self.re + self.im * ratio) / denom,
                (self.im - self.re * ratio) / denom,
            )
        } else {
            let ratio = rhs.re / rhs.im;
            let denom = rhs.re * ratio + rhs.im;
            Complex::new(
                (self.re * ratio + self.im) / denom,
                (self.im * ratio - self.re) / denom,
            )
        }
    }
}

impl Div<f64> for Complex {
    type Output = Complex;
    fn div(self, rhs: f64) -> Complex {
        Complex::new(self.re / rhs, self.im / rhs)
    }
}

impl Neg for Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex::new(-self.re, -self.im)
    }
}

impl AddAssign for Complex {
    fn add_assign(&mut self, rhs: Complex) {
        *self = *self + rhs;
    }
}

impl SubAssign for Complex {
    fn sub_assign(&mut self, rhs: Complex) {
        *self = *self - rhs;
    }
}

impl MulAssign for Complex {
    fn mul_assign(&mut self, rhs: Complex) {
        *self = *self * rhs;
    }
}

impl From<f64> for Complex {
    fn from(re: f64) -> Self {
        Complex::real(re)
    }
}

impl From<(f64, f64)> for Complex {
    fn from((re, im): (f64, f64)) -> Self {
        Complex::new(re, im)
    }
}

/// Shortest decimal text that reads back to the same double, switching to
/// exponent form for very large or small magnitudes (`1e300`, `2.5e-7`).
pub fn format_real(x: f64) -> String {
    let s = format!("{x:?}");
    match s.strip_suffix(".0") {
        Some(whole) => whole.to_string(),
        None => s,
    }
}

/// Canonical literal `a+bi` / `a-bi`, so `parse(format(z)) == z` bit for
/// bit.
impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.im.is_sign_negative() { '-' } else { '+' };
        write!(f, "{}{}{}i", format_real(self.re), sign, format_real(self.im.abs()))
    }
}

/// Accepts `a`, `bi`, `a+bi`, `a-bi`, with `i` alone standing for `1i`.
/// Reals may use exponent notation (`1e-3`, `2.5E+4i`).
impl FromStr for Complex {
    type Err = ComplexError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let text = s.trim();
        let malformed = || ComplexError::Malformed(s.to_string());
        if text.is_empty() {
            return Err(malformed());
        }
        let z = match text.strip_suffix(['i', 'j']) {
            None => Complex::real(parse_real(text).ok_or_else(malformed)?),
            Some(body) => {
                // Split at the last sign that is not a leading sign and not
                // part of an exponent.
                let bytes = body.as_bytes();
                let split = (1..bytes.len()).rev().find(|&k| {
                    (bytes[k] == b'+' || bytes[k] == b'-')
                        && !matches!(bytes[k - 1], b'e' | b'E')
                });
                match split {
                    Some(k) => {
                        let re = parse_real(&body[..k]).ok_or_else(malformed)?;
                        let im = parse_imag(&body[k..]).ok_or_else(malformed)?;
                        Complex::new(re, im)
                    }
                    None => Complex::new(0.0, parse_imag(body).ok_or_else(malformed)?),
                }
            }
        };
        if !z.is_finite() {
            return Err(ComplexError::NonFinite(s.to_string()));
        }
        Ok(z)
    }
}

fn parse_real(text: &str) -> Option<f64> {
    // f64::from_str accepts "inf" and "nan"; literals must be decimal.
    if !text.bytes().all(|b| b.is_ascii_digit() || b"+-.eE".contains(&b)) {
        return None;
    }
    text.parse().ok()
}

fn parse_imag(coeff: &str) -> Option<f64> {
    match coeff {
        "" | "+" => Some(1.0),
        "-" => Some(-1.0),
        _ => parse_real(coeff),
    }
}

/// Serialized as a two-element `[re, im]` array.
impl Serialize for Complex {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        [self.re, self.im].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Complex {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(deserializer)?;
        Ok(Complex::new(re, im))
    }
}
