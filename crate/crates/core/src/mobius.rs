//! Möbius transformations `z -> (a z + b) / (c z + d)`.

use num_complex::Complex64;
use serde::Serialize;

use crate::sphere::SpherePoint;
use crate::Error;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MobiusTransform {
    #[serde(with = "crate::report::complex")]
    a: Complex64,
    #[serde(with = "crate::report::complex")]
    b: Complex64,
    #[serde(with = "crate::report::complex")]
    c: Complex64,
    #[serde(with = "crate::report::complex")]
    d: Complex64,
}

impl MobiusTransform {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self, Error> {
        let det = a * d - b * c;
        if det.norm() == 0.0 || !det.re.is_finite() || !det.im.is_finite() {
            return Err(Error::DegenerateMobius);
        }
        Ok(Self { a, b, c, d })
    }

    pub fn identity() -> Self {
        Self {
            a: ONE,
            b: ZERO,
            c: ZERO,
            d: ONE,
        }
    }

    /// `z -> a z + b`.
    pub fn affine(a: Complex64, b: Complex64) -> Result<Self, Error> {
        Self::new(a, b, ZERO, ONE)
    }

    /// `z -> mu z`.
    pub fn rotation(mu: Complex64) -> Result<Self, Error> {
        Self::affine(mu, ZERO)
    }

    /// `z -> 1 / z`.
    pub fn inversion() -> Self {
        Self {
            a: ZERO,
            b: ONE,
            c: ONE,
            d: ZERO,
        }
    }

    pub fn coefficients(&self) -> (Complex64, Complex64, Complex64, Complex64) {
        (self.a, self.b, self.c, self.d)
    }

    pub fn determinant(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    pub fn is_affine(&self) -> bool {
        self.c == ZERO
    }

    pub fn inverse(&self) -> Self {
        Self {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }

    pub fn apply(&self, z: SpherePoint) -> SpherePoint {
        match z {
            SpherePoint::Infinity => {
                if self.c == ZERO {
                    SpherePoint::Infinity
                } else {
                    SpherePoint::Finite(self.a / self.c)
                }
            }
            SpherePoint::Finite(z) => {
                let den = self.c * z + self.d;
                if den == ZERO {
                    SpherePoint::Infinity
                } else {
                    SpherePoint::Finite((self.a * z + self.b) / den)
                }
            }
        }
    }

    /// Applies to a finite point known not to be the pole.
    pub fn apply_finite(&self, z: Complex64) -> Complex64 {
        (self.a * z + self.b) / (self.c * z + self.d)
    }

    /// Equality up to the common scalar of the coefficient matrix.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let m = [self.a, self.b, self.c, self.d];
        let n = [other.a, other.b, other.c, other.d];
        let scale = m
            .iter()
            .chain(n.iter())
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        // 2x2 minors of the stacked matrices vanish iff the rows are proportional
        (0..4).all(|i| (0..4).all(|j| (m[i] * n[j] - m[j] * n[i]).norm() <= tol * scale * scale))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn degenerate_is_rejected() {
        assert_eq!(
            MobiusTransform::new(c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(4.0, 0.0)),
            Err(Error::DegenerateMobius)
        );
    }

    #[test]
    fn inverse_and_compose() {
        let m = MobiusTransform::new(c(1.0, 2.0), c(0.5, 0.0), c(-1.0, 1.0), c(3.0, 0.0)).unwrap();
        let id = m.compose(&m.inverse());
        assert!(id.approx_eq(&MobiusTransform::identity(), 1e-14));
        let z = SpherePoint::finite(0.3, -0.7);
        let back = m.inverse().apply(m.apply(z));
        assert!(back.chordal_distance(&z) < 1e-14);
    }

    #[test]
    fn infinity_handling() {
        let inv = MobiusTransform::inversion();
        assert_eq!(
            inv.apply(SpherePoint::Infinity),
            SpherePoint::finite(0.0, 0.0)
        );
        assert_eq!(
            inv.apply(SpherePoint::finite(0.0, 0.0)),
            SpherePoint::Infinity
        );
        let aff = MobiusTransform::affine(c(2.0, 0.0), c(1.0, 0.0)).unwrap();
        assert_eq!(aff.apply(SpherePoint::Infinity), SpherePoint::Infinity);
    }
}
