use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::QuadraticSurd;
use crate::error::{Error, Result};

/// Finite complex number in hardware floating point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexPair {
    re: f64,
    im: f64,
}

impl ComplexPair {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if re.is_finite() && im.is_finite() {
            Ok(ComplexPair { re, im })
        } else {
            Err(Error::NonFinite)
        }
    }

    pub fn real(re: f64) -> Result<Self> {
        Self::new(re, 0.0)
    }

    pub fn re(&self) -> f64 {
        self.re
    }

    pub fn im(&self) -> f64 {
        self.im
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        Self::new(z.re, z.im)
    }

    /// Distance to `other` in the complex plane.
    pub fn dist(&self, other: &ComplexPair) -> f64 {
        (self.to_complex() - other.to_complex()).norm()
    }
}

impl fmt::Display for ComplexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im < 0.0 {
            write!(f, "{}-{}i", self.re, -self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

/// Accepts an exact surd expression (`1+sqrt(3)`, `1/2`) or a complex literal
/// in `num-complex` syntax (`2-0.5i`).
impl FromStr for ComplexPair {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        if let Ok(s) = text.parse::<QuadraticSurd>() {
            return Self::real(s.to_f64());
        }
        let z: Complex64 = text
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("not a complex number: `{text}`")))?;
        Self::from_complex(z)
    }
}
