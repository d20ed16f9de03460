//! Rational maps on the Riemann sphere.

use std::fmt;

use num_complex::Complex64;

use crate::mobius::MobiusTransform;
use crate::poly::{gcd_numeric, Polynomial};
use crate::roots::RootList;
use crate::sphere::SpherePoint;
use crate::Error;

/// Root-matching tolerance used when cancelling common factors.
pub const REDUCE_GCD_TOL: f64 = 1e-6;

/// Relative size below which a computed leading coefficient is treated as a
/// cancellation remainder and dropped.
pub const CANCELLATION_TOL: f64 = 1e-11;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A quotient `num / den` of coprime polynomials with monic denominator.
#[derive(Clone, PartialEq)]
pub struct RationalMap {
    num: Polynomial,
    den: Polynomial,
}

/// Roots and poles of a rational map, including the behaviour at infinity.
#[derive(Clone, Debug, PartialEq)]
pub struct RootsAndPoles {
    pub roots: RootList,
    pub poles: RootList,
    /// Order of the zero at infinity (`deg den - deg num` when positive).
    pub root_at_infinity: usize,
    /// Order of the pole at infinity (`deg num - deg den` when positive).
    pub pole_at_infinity: usize,
}

impl RationalMap {
    /// Cancels common factors (found by [`gcd_numeric`]) and normalizes the
    /// denominator to be monic.
    pub fn reduce(num: Polynomial, den: Polynomial) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self {
                num,
                den: Polynomial::one(),
            });
        }
        let g = gcd_numeric(&num, &den, REDUCE_GCD_TOL)?;
        if g.is_constant() {
            return Self::from_coprime(num, den);
        }
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        Self::from_coprime(num, den)
    }

    /// Builds a map from polynomials already known to be coprime; only the
    /// scalar normalization is applied.
    pub fn from_coprime(num: Polynomial, den: Polynomial) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let lead = den.leading();
        Ok(Self {
            num: num.scale(lead.inv()),
            den: den.monic(),
        })
    }

    pub fn polynomial(p: Polynomial) -> Self {
        Self {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn identity() -> Self {
        Self::polynomial(Polynomial::z())
    }

    /// `scale * prod (z - a)^k / prod (z - b)^l`.
    pub fn from_roots(
        scale: Complex64,
        roots: &[(Complex64, usize)],
        poles: &[(Complex64, usize)],
    ) -> Self {
        Self {
            num: Polynomial::from_roots(roots.iter().copied()).scale(scale),
            den: Polynomial::from_roots(poles.iter().copied()),
        }
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    /// `max(deg num, deg den)`; 0 for constants.
    pub fn degree(&self) -> usize {
        if self.num.is_constant() && self.den.is_constant() {
            return 0;
        }
        self.num.degree().max(self.den.degree())
    }

    pub fn is_constant(&self) -> bool {
        self.degree() == 0
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Drops leading coefficients that are cancellation remainders (relative
    /// size at most `rel_tol`) and renormalizes.
    pub fn clean(&self, rel_tol: f64) -> Self {
        let num = self.num.trim_relative(rel_tol);
        let den = self.den.trim_relative(rel_tol);
        Self::from_coprime(num, den).expect("monic denominator survives trimming")
    }

    /// Raw quotient at a finite point. Returns non-finite values at poles.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.num.eval(z) / self.den.eval(z)
    }

    /// Evaluation on the sphere. Poles map to infinity; infinity is handled
    /// by comparing degrees.
    pub fn eval_sphere(&self, z: SpherePoint) -> SpherePoint {
        match z {
            SpherePoint::Finite(z) => {
                let d = self.den.eval(z);
                if d == ZERO {
                    return SpherePoint::Infinity;
                }
                let w = self.num.eval(z) / d;
                if w.re.is_finite() && w.im.is_finite() {
                    SpherePoint::Finite(w)
                } else {
                    SpherePoint::Infinity
                }
            }
            SpherePoint::Infinity => {
                let (dn, dd) = (self.num.degree(), self.den.degree());
                if self.num.is_zero() {
                    SpherePoint::Finite(ZERO)
                } else if dn > dd {
                    SpherePoint::Infinity
                } else if dn < dd {
                    SpherePoint::Finite(ZERO)
                } else {
                    SpherePoint::Finite(self.num.leading() / self.den.leading())
                }
            }
        }
    }

    /// Derivative at a finite non-pole point by the quotient rule.
    pub fn derivative_at(&self, z: Complex64) -> Complex64 {
        let (n, dn) = self.num.eval_with_derivative(z);
        let (d, dd) = self.den.eval_with_derivative(z);
        (dn * d - n * dd) / (d * d)
    }

    /// The reduced derivative.
    ///
    /// With `den = prod (z - b_j)^{l_j}`, squarefree part `D0` and
    /// `B = sum_j l_j prod_{i != j} (z - b_i)`, the derivative is
    /// `(num' D0 - num B) / (den D0)`, which is already in lowest terms.
    pub fn derivative(&self) -> Result<Self, Error> {
        if self.den.is_constant() {
            return Self::from_coprime(self.num.derivative(), self.den.clone());
        }
        let poles = self.den.roots_default()?;
        let (d0, b) = log_derivative_parts(&poles);
        let num = &(&self.num.derivative() * &d0) - &(&self.num * &b);
        let den = &self.den * &d0;
        Self::from_coprime(num.trim_relative(CANCELLATION_TOL), den)
    }

    pub fn roots_and_poles(&self) -> Result<RootsAndPoles, Error> {
        if self.is_constant() {
            return Err(Error::ConstantMap);
        }
        let roots = if self.num.is_constant() {
            RootList::default()
        } else {
            self.num.roots_default()?
        };
        let poles = if self.den.is_constant() {
            RootList::default()
        } else {
            self.den.roots_default()?
        };
        let (dn, dd) = (self.num.degree(), self.den.degree());
        Ok(RootsAndPoles {
            roots,
            poles,
            root_at_infinity: dd.saturating_sub(dn),
            pole_at_infinity: dn.saturating_sub(dd),
        })
    }

    /// `phi^{-1} ∘ self ∘ phi`.
    ///
    /// Computed on the polynomial level: with `D = degree`, the composition
    /// `self ∘ phi` is `N1 / D1` where `N1 = sum n_k (az+b)^k (cz+d)^(D-k)`,
    /// and the outer inverse is applied to that pair. Both steps preserve
    /// coprimality, so no GCD is needed.
    pub fn conjugate_by_mobius(&self, phi: &MobiusTransform) -> Self {
        let (a, b, c, d) = phi.coefficients();
        let deg = self.degree();
        let top = Polynomial::new(vec![a, b]);
        let bottom = Polynomial::new(vec![c, d]);
        let top_pows: Vec<Polynomial> = (0..=deg as u32).map(|k| top.pow(k)).collect();
        let bottom_pows: Vec<Polynomial> = (0..=deg as u32).map(|k| bottom.pow(k)).collect();
        let homogenize = |p: &Polynomial| {
            (0..=deg).fold(Polynomial::zero(), |acc, k| {
                let coeff = p.coeff(k);
                if coeff == ZERO {
                    return acc;
                }
                let term = (&top_pows[k] * &bottom_pows[deg - k]).scale(coeff);
                &acc + &term
            })
        };
        let n1 = homogenize(&self.num);
        let d1 = homogenize(&self.den);
        // phi^{-1}(w) = (d w - b) / (-c w + a)
        let num = &n1.scale(d) - &d1.scale(b);
        let den = &d1.scale(a) - &n1.scale(c);
        Self::from_coprime(
            num.trim_relative(CANCELLATION_TOL),
            den.trim_relative(CANCELLATION_TOL),
        )
        .expect("conjugate of a nonzero map has a nonzero denominator")
    }

    /// `lambda * self(a z + b)`.
    pub fn scale_source(&self, a: Complex64, b: Complex64, lambda: Complex64) -> Self {
        Self::from_coprime(
            self.num.compose_affine(a, b).scale(lambda),
            self.den.compose_affine(a, b),
        )
        .expect("affine substitution keeps the denominator nonzero")
    }

    /// Coefficient-wise comparison of `num1 den2 - num2 den1` against
    /// `tol` times the largest coefficient among the four polynomials.
    pub fn maps_equal(&self, other: &Self, tol: f64) -> bool {
        let cross = &(&self.num * &other.den) - &(&other.num * &self.den);
        let scale = [&self.num, &self.den, &other.num, &other.den]
            .iter()
            .map(|p| p.max_abs_coeff())
            .fold(0.0, f64::max);
        cross.coeffs().iter().all(|c| c.norm() <= tol * scale)
    }
}

/// For poles `b_j` with multiplicities `l_j`, returns the squarefree product
/// `prod (z - b_j)` and `sum_j l_j prod_{i != j} (z - b_i)`.
pub(crate) fn log_derivative_parts(list: &RootList) -> (Polynomial, Polynomial) {
    let entries = list.entries();
    let squarefree = Polynomial::from_roots(entries.iter().map(|r| (r.value, 1)));
    let weighted = entries
        .iter()
        .enumerate()
        .fold(Polynomial::zero(), |acc, (j, r)| {
            let others = Polynomial::from_roots(
                entries
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != j)
                    .map(|(_, s)| (s.value, 1)),
            );
            &acc + &others.scale(Complex64::new(r.multiplicity as f64, 0.0))
        });
    (squarefree, weighted)
}

impl fmt::Debug for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalMap({})", crate::parse::format_map(self))
    }
}

impl fmt::Display for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parse::format_map(self))
    }
}

impl From<Polynomial> for RationalMap {
    fn from(p: Polynomial) -> Self {
        Self::polynomial(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn p(coeffs: &[f64]) -> Polynomial {
        Polynomial::from_real(coeffs)
    }

    #[test]
    fn reduce_examples() {
        let r = RationalMap::reduce(p(&[1.0, 0.0, -1.0]), p(&[1.0, -1.0])).unwrap();
        assert!(r.maps_equal(&RationalMap::polynomial(p(&[1.0, 1.0])), 1e-10));
        assert!(r.is_polynomial());

        let num = Polynomial::from_roots([(c(1.0, 0.0), 2), (c(-2.0, 0.0), 1)]);
        let r = RationalMap::reduce(num, p(&[1.0, -1.0])).unwrap();
        let expected = Polynomial::from_roots([(c(1.0, 0.0), 1), (c(-2.0, 0.0), 1)]);
        assert!(r.maps_equal(&expected.into(), 1e-9));
        assert_eq!(r.degree(), 2);

        let r = RationalMap::reduce(p(&[1.0, 0.0, 1.0]), p(&[1.0, 0.0, 2.0])).unwrap();
        assert_eq!(r.num(), &p(&[1.0, 0.0, 1.0]));
        assert_eq!(r.den(), &p(&[1.0, 0.0, 2.0]));
    }

    #[test]
    fn reduce_rejects_zero_denominator() {
        assert_eq!(
            RationalMap::reduce(p(&[1.0]), Polynomial::zero()),
            Err(Error::ZeroDenominator)
        );
    }

    #[test]
    fn eval_sphere_examples() {
        let n = RationalMap::reduce(p(&[1.0, 0.0, 1.0]), p(&[2.0, 0.0])).unwrap();
        assert_eq!(
            n.eval_sphere(SpherePoint::finite(1.0, 0.0)),
            SpherePoint::finite(1.0, 0.0)
        );
        assert_eq!(n.eval_sphere(SpherePoint::Infinity), SpherePoint::Infinity);
        let m = RationalMap::reduce(p(&[2.0, 0.0]), p(&[1.0, 0.0, 1.0])).unwrap();
        assert_eq!(
            m.eval_sphere(SpherePoint::finite(0.0, 1.0)),
            SpherePoint::Infinity
        );
        assert_eq!(
            m.eval_sphere(SpherePoint::Infinity),
            SpherePoint::finite(0.0, 0.0)
        );
    }

    #[test]
    fn derivative_examples() {
        let sq = RationalMap::polynomial(p(&[1.0, 0.0, 0.0]));
        assert!(sq
            .derivative()
            .unwrap()
            .maps_equal(&p(&[2.0, 0.0]).into(), 1e-14));

        let inv = RationalMap::reduce(p(&[1.0]), p(&[1.0, 0.0])).unwrap();
        let expected = RationalMap::reduce(p(&[-1.0]), p(&[1.0, 0.0, 0.0])).unwrap();
        assert!(inv.derivative().unwrap().maps_equal(&expected, 1e-14));

        let f = RationalMap::reduce(
            p(&[1.0, 0.0, 0.0, 0.0, 0.0, -1.0]),
            p(&[1.0, 0.0, 0.0, 0.0]),
        )
        .unwrap();
        let expected = RationalMap::reduce(
            p(&[2.0, 0.0, 0.0, 0.0, 0.0, 3.0]),
            p(&[1.0, 0.0, 0.0, 0.0, 0.0]),
        )
        .unwrap();
        let df = f.derivative().unwrap();
        assert!(df.maps_equal(&expected, 1e-12), "{df}");
    }

    #[test]
    fn degree_examples() {
        let a = RationalMap::reduce(p(&[1.0, 0.0, 0.0]), p(&[2.0, -1.0])).unwrap();
        assert_eq!(a.degree(), 2);
        let b = RationalMap::reduce(p(&[1.0, 0.0, 1.0]), p(&[2.0, 0.0])).unwrap();
        assert_eq!(b.degree(), 2);
        assert_eq!(RationalMap::polynomial(p(&[3.0])).degree(), 0);
    }

    #[test]
    fn roots_and_poles_examples() {
        let den = &Polynomial::from_roots([(c(1.0, 0.0), 2)]) * &p(&[1.0, 2.0, 3.0]);
        let r = RationalMap::reduce(Polynomial::monomial(c(1.0, 0.0), 4), den).unwrap();
        let rp = r.roots_and_poles().unwrap();
        assert_eq!(rp.roots.entries().len(), 1);
        assert_eq!(rp.roots.entries()[0].multiplicity, 4);
        assert_eq!(rp.poles.total_multiplicity(), 4);
        assert_eq!(rp.poles.nearest(c(1.0, 0.0)).unwrap().0.multiplicity, 2);
        assert_eq!((rp.root_at_infinity, rp.pole_at_infinity), (0, 0));

        let q = RationalMap::polynomial(p(&[1.0, -1.0, 0.0]));
        let rp = q.roots_and_poles().unwrap();
        assert_eq!(rp.roots.len(), 2);
        assert!(rp.poles.is_empty());
        assert_eq!(rp.pole_at_infinity, 2);

        let s = RationalMap::reduce(
            p(&[1.0]),
            Polynomial::from_roots([(c(0.0, 0.0), 2), (c(1.0, 0.0), 1)]),
        )
        .unwrap();
        let rp = s.roots_and_poles().unwrap();
        assert_eq!(rp.poles.nearest(c(0.0, 0.0)).unwrap().0.multiplicity, 2);
        assert_eq!(rp.poles.nearest(c(1.0, 0.0)).unwrap().0.multiplicity, 1);
        assert_eq!(rp.root_at_infinity, 3);
    }

    #[test]
    fn conjugation_examples() {
        let sq = RationalMap::polynomial(p(&[1.0, 0.0, 0.0]));
        let conj = sq.conjugate_by_mobius(&MobiusTransform::inversion());
        assert!(conj.maps_equal(&sq, 1e-14));

        // 2z/(z^2+1) conjugated by 1/z is (z^2+1)/(2z)
        let n11 = RationalMap::reduce(p(&[2.0, 0.0]), p(&[1.0, 0.0, 1.0])).unwrap();
        let target = RationalMap::reduce(p(&[1.0, 0.0, 1.0]), p(&[2.0, 0.0])).unwrap();
        let conj = n11.conjugate_by_mobius(&MobiusTransform::inversion());
        assert!(conj.maps_equal(&target, 1e-14));

        let any = RationalMap::reduce(p(&[1.0, 2.0, 3.0]), p(&[1.0, -0.5])).unwrap();
        assert!(any
            .conjugate_by_mobius(&MobiusTransform::identity())
            .maps_equal(&any, 1e-15));
    }

    #[test]
    fn maps_equal_examples() {
        let a = RationalMap::reduce(p(&[1.0, 0.0, 1.0]), p(&[2.0, 0.0])).unwrap();
        let b = RationalMap::reduce(p(&[2.0, 0.0, 2.0]), p(&[4.0, 0.0])).unwrap();
        assert!(a.maps_equal(&b, 1e-12));
        let sq = RationalMap::polynomial(p(&[1.0, 0.0, 0.0]));
        let near = RationalMap::polynomial(p(&[1.0, 0.0, 1e-15]));
        assert!(sq.maps_equal(&near, 1e-9));
        let cube = RationalMap::polynomial(p(&[1.0, 0.0, 0.0, 0.0]));
        assert!(!sq.maps_equal(&cube, 1e-9));
    }
}
