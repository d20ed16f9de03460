//! Points of the Riemann sphere.

use std::fmt;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

/// Moduli above this are treated as the point at infinity while iterating.
pub const INFINITY_THRESHOLD: f64 = 1e12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SpherePoint {
    Finite(Complex64),
    Infinity,
}

impl SpherePoint {
    pub fn finite(re: f64, im: f64) -> Self {
        SpherePoint::Finite(Complex64::new(re, im))
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, SpherePoint::Infinity)
    }

    pub fn as_finite(&self) -> Option<Complex64> {
        match self {
            SpherePoint::Finite(z) => Some(*z),
            SpherePoint::Infinity => None,
        }
    }

    /// Replaces finite points beyond [`INFINITY_THRESHOLD`] with infinity.
    /// Only orbit code calls this; algebra never promotes.
    pub fn promote(self) -> Self {
        match self {
            SpherePoint::Finite(z)
                if z.norm() > INFINITY_THRESHOLD || !z.re.is_finite() || !z.im.is_finite() =>
            {
                SpherePoint::Infinity
            }
            p => p,
        }
    }

    /// Chordal distance on the unit sphere, in `[0, 2]`.
    pub fn chordal_distance(&self, other: &SpherePoint) -> f64 {
        match (self, other) {
            (SpherePoint::Infinity, SpherePoint::Infinity) => 0.0,
            (SpherePoint::Finite(z), SpherePoint::Infinity)
            | (SpherePoint::Infinity, SpherePoint::Finite(z)) => 2.0 / (1.0 + z.norm_sqr()).sqrt(),
            (SpherePoint::Finite(a), SpherePoint::Finite(b)) => {
                2.0 * (a - b).norm() / ((1.0 + a.norm_sqr()).sqrt() * (1.0 + b.norm_sqr()).sqrt())
            }
        }
    }
}

impl From<Complex64> for SpherePoint {
    fn from(z: Complex64) -> Self {
        SpherePoint::Finite(z)
    }
}

impl fmt::Display for SpherePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpherePoint::Finite(z) => write!(f, "{z}"),
            SpherePoint::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for SpherePoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            SpherePoint::Finite(z) => [z.re, z.im].serialize(s),
            SpherePoint::Infinity => s.serialize_str("inf"),
        }
    }
}
