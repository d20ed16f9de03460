//! Affine rescaling of the source function and Möbius normal forms of
//! Newton maps.

use num_complex::Complex64;
use serde::Serialize;

use crate::mobius::MobiusTransform;
use crate::newton::{fixed_points, FixedPointClass};
use crate::rational::RationalMap;
use crate::sphere::SpherePoint;
use crate::Error;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// `S(z) = lambda * R(a z + b)`.
///
/// Newton's method commutes with this change of variables:
/// `T ∘ N_S ∘ T^{-1} = N_R` for `T(z) = a z + b`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AffineScaling {
    #[serde(with = "crate::report::complex")]
    a: Complex64,
    #[serde(with = "crate::report::complex")]
    b: Complex64,
    #[serde(with = "crate::report::complex")]
    lambda: Complex64,
}

impl AffineScaling {
    pub fn new(a: Complex64, b: Complex64, lambda: Complex64) -> Result<Self, Error> {
        if a.norm() == 0.0 || lambda.norm() == 0.0 {
            return Err(Error::InvalidArgument(
                "scaling needs a != 0 and lambda != 0".into(),
            ));
        }
        Ok(Self { a, b, lambda })
    }

    pub fn identity() -> Self {
        Self {
            a: ONE,
            b: ZERO,
            lambda: ONE,
        }
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    pub fn lambda(&self) -> Complex64 {
        self.lambda
    }

    /// `T(z) = a z + b`.
    pub fn transform(&self) -> MobiusTransform {
        MobiusTransform::affine(self.a, self.b).expect("a is nonzero")
    }
}

pub fn scale_source(r: &RationalMap, t: &AffineScaling) -> RationalMap {
    r.scale_source(t.a, t.b, t.lambda)
}

/// Conjugates `N` so that `z1` moves to 0 and `z2` to infinity, returning
/// `φ ∘ N ∘ φ^{-1}` together with `φ`.
///
/// `φ(z) = (z - z1) / (z - z2)`, degenerating to `z - z1` when `z2 = ∞` and
/// to `1 / (z - z2)` when `z1 = ∞`.
pub fn normalize_two_fixed(
    n: &RationalMap,
    z1: SpherePoint,
    z2: SpherePoint,
) -> Result<(RationalMap, MobiusTransform), Error> {
    if z1.chordal_distance(&z2) < 1e-12 {
        return Err(Error::InvalidArgument("the two points must differ".into()));
    }
    for z in [z1, z2] {
        if n.eval_sphere(z).chordal_distance(&z) > 1e-6 {
            return Err(Error::InvalidArgument(format!("{z} is not a fixed point")));
        }
    }
    let phi = match (z1, z2) {
        (SpherePoint::Finite(a), SpherePoint::Finite(b)) => MobiusTransform::new(ONE, -a, ONE, -b)?,
        (SpherePoint::Finite(a), SpherePoint::Infinity) => MobiusTransform::affine(ONE, -a)?,
        (SpherePoint::Infinity, SpherePoint::Finite(b)) => {
            MobiusTransform::new(ZERO, ONE, ONE, -b)?
        }
        (SpherePoint::Infinity, SpherePoint::Infinity) => unreachable!("distinct points"),
    };
    Ok((n.conjugate_by_mobius(&phi.inverse()), phi))
}

/// Moves the unique repelling fixed point `z0` of `N` to infinity,
/// returning `ψ ∘ N ∘ ψ^{-1}` and `ψ`. `ψ` is `1 / (z - z0)` followed by the
/// affine map that centers the other fixed points at 0 with radius 1.
pub fn to_polynomial_newton(n: &RationalMap) -> Result<(RationalMap, MobiusTransform), Error> {
    let fps = fixed_points(n)?;
    let repelling: Vec<SpherePoint> = fps
        .iter()
        .filter(|f| f.klass == FixedPointClass::Repelling)
        .map(|f| f.location)
        .collect();
    let z0 = match repelling.as_slice() {
        [SpherePoint::Infinity] => return Ok((n.clone(), MobiusTransform::identity())),
        [SpherePoint::Finite(z0)] => *z0,
        other => {
            return Err(Error::NotApplicable(format!(
                "expected exactly one repelling fixed point, found {}",
                other.len()
            )))
        }
    };
    // 1/(z - z0) crowds points far from z0 together; recentering and
    // rescaling the images keeps them apart without changing the form
    let flip = MobiusTransform::new(ZERO, ONE, ONE, -z0)?;
    let images: Vec<Complex64> = fps
        .iter()
        .filter_map(|f| match f.location {
            SpherePoint::Finite(z) if z != z0 => Some(flip.apply_finite(z)),
            _ => None,
        })
        .collect();
    let center = images.iter().sum::<Complex64>() / images.len().max(1) as f64;
    let radius = images
        .iter()
        .map(|w| (w - center).norm())
        .fold(0.0, f64::max);
    let scale = if radius > 0.0 && radius.is_finite() {
        radius
    } else {
        1.0
    };
    let psi = MobiusTransform::affine(ONE / scale, -center / scale)?.compose(&flip);
    Ok((n.conjugate_by_mobius(&psi.inverse()), psi))
}

/// `T^{-1} ∘ φ ∘ T` for each `φ`.
pub fn transport_symmetry(phis: &[MobiusTransform], t: &MobiusTransform) -> Vec<MobiusTransform> {
    let t_inv = t.inverse();
    phis.iter()
        .map(|phi| t_inv.compose(&phi.compose(t)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newton::{characterize, newton_map};
    use crate::parse::parse_rational_map;
    use std::f64::consts::TAU;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn map(s: &str) -> RationalMap {
        parse_rational_map(s).unwrap()
    }

    #[test]
    fn scaling_examples() {
        // c / (z - z0)^k with T(z) = z + z0 and lambda = 1/c gives 1/z^k
        let (cst, z0, k) = (c(2.0, -1.0), c(0.5, 0.25), 3);
        let r = RationalMap::from_roots(cst, &[], &[(z0, k)]);
        let t = AffineScaling::new(ONE, z0, cst.inv()).unwrap();
        let s = scale_source(&r, &t);
        assert!(s.maps_equal(&map("1/z^3"), 1e-12), "{s}");
        let ns = newton_map(&s).unwrap();
        assert!(ns.maps_equal(&map("(4/3)z"), 1e-12));
        let back = ns.conjugate_by_mobius(&t.transform().inverse());
        assert!(back.maps_equal(&newton_map(&r).unwrap(), 1e-10));

        let r = map("(z^3-2)/(z+1)");
        assert!(scale_source(&r, &AffineScaling::identity()).maps_equal(&r, 1e-15));
        assert!(AffineScaling::new(ZERO, ONE, ONE).is_err());
    }

    #[test]
    fn two_fixed_points() {
        let n = map("(z^2+1)/(2z)");
        let (m, phi) = normalize_two_fixed(
            &n,
            SpherePoint::finite(1.0, 0.0),
            SpherePoint::finite(-1.0, 0.0),
        )
        .unwrap();
        assert_eq!(m.degree(), 2);
        assert!(m.maps_equal(&map("z^2"), 1e-12), "{m}");
        assert_eq!(
            phi.apply(SpherePoint::finite(-1.0, 0.0)),
            SpherePoint::Infinity
        );

        let sq = map("z^2");
        let (same, _) =
            normalize_two_fixed(&sq, SpherePoint::finite(0.0, 0.0), SpherePoint::Infinity).unwrap();
        assert!(same.maps_equal(&sq, 1e-15));
        assert!(normalize_two_fixed(&sq, SpherePoint::Infinity, SpherePoint::Infinity).is_err());
        assert!(
            normalize_two_fixed(&sq, SpherePoint::finite(2.0, 0.0), SpherePoint::Infinity).is_err()
        );
    }

    #[test]
    fn polynomial_normal_form() {
        // N_{p/z^2} with p monic, p(0) != 0 and deg p <= 3: 0 is the only repelling point.
        let n = newton_map(&map("(z^3-3z+1)/z^2")).unwrap();
        let (m, psi) = to_polynomial_newton(&n).unwrap();
        assert!(!psi.is_affine());
        let rep = characterize(&m).unwrap();
        assert!(rep.is_newton, "{rep:?}");
        assert!(rep.reconstructed.unwrap().is_polynomial());

        let q = newton_map(&map("z^3-1")).unwrap();
        let (same, t) = to_polynomial_newton(&q).unwrap();
        assert!(same.maps_equal(&q, 0.0));
        assert_eq!(t, MobiusTransform::identity());

        let two = newton_map(&map("1/((z-1)(z+1))")).unwrap();
        assert!(to_polynomial_newton(&two).is_err());
    }

    #[test]
    fn symmetry_transport() {
        let t = MobiusTransform::affine(c(1.3, 0.2), ZERO).unwrap();
        let rots: Vec<MobiusTransform> = (0..5)
            .map(|k| {
                MobiusTransform::rotation(Complex64::from_polar(1.0, TAU * k as f64 / 5.0)).unwrap()
            })
            .collect();
        let moved = transport_symmetry(&rots, &t);
        for (a, b) in rots.iter().zip(&moved) {
            assert!(a.approx_eq(b, 1e-14));
        }
        assert!(transport_symmetry(&[MobiusTransform::identity()], &t)[0]
            .approx_eq(&MobiusTransform::identity(), 1e-15));

        // Under a translation by 1 an order-3 rotation about 0 becomes a
        // rotation about T^{-1}(0) = -1.
        let mu = Complex64::from_polar(1.0, TAU / 3.0);
        let shift = MobiusTransform::affine(ONE, ONE).unwrap();
        let r = transport_symmetry(&[MobiusTransform::rotation(mu).unwrap()], &shift)[0];
        assert!((r.apply_finite(c(-1.0, 0.0)) - c(-1.0, 0.0)).norm() < 1e-15);
        let expected = MobiusTransform::affine(mu, mu - ONE).unwrap();
        assert!(r.approx_eq(&expected, 1e-14));
    }
}
