use num_complex::Complex64;
use serde::Serialize;

use crate::classifier::complex_pair_map;
use crate::poly::Polynomial;
use crate::rational::RationalMap;
use crate::Error;

/// Three families of Newton maps with a single attracting fixed point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family")]
pub enum Family {
    /// Newton map of `1 / (z^m (z-1)^n)`.
    N0 { m: usize, n: usize },
    /// Newton map of `1 / (z^n + 1)`.
    N1 { n: usize },
    /// Newton map of `1 / (z (z^n + 1))`.
    N2 { n: usize },
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn check(family: Family) -> Result<(), Error> {
    let ok = match family {
        Family::N0 { m, n } => m >= 1 && n >= 1,
        Family::N1 { n } | Family::N2 { n } => n >= 2,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "parameters out of range for {family:?}"
        )))
    }
}

/// Closed forms:
/// `N0 = z((m+n+1)z - (m+1)) / ((m+n)z - m)`,
/// `N1 = ((n+1)z^n + 1) / (n z^(n-1))`,
/// `N2 = z((n+2)z^n + 2) / ((n+1)z^n + 1)`.
pub fn family_map(family: Family) -> Result<RationalMap, Error> {
    check(family)?;
    let z = Polynomial::z();
    let (num, den) = match family {
        Family::N0 { m, n } => {
            let (m, n) = (m as f64, n as f64);
            (
                &z * &Polynomial::from_real(&[m + n + 1.0, -(m + 1.0)]),
                Polynomial::from_real(&[m + n, -m]),
            )
        }
        Family::N1 { n } => (
            &Polynomial::monomial(real(n as f64 + 1.0), n) + &Polynomial::one(),
            Polynomial::monomial(real(n as f64), n - 1),
        ),
        Family::N2 { n } => (
            &z * &(&Polynomial::monomial(real(n as f64 + 2.0), n)
                + &Polynomial::constant(real(2.0))),
            &Polynomial::monomial(real(n as f64 + 1.0), n) + &Polynomial::one(),
        ),
    };
    RationalMap::from_coprime(num, den)
}

/// The function whose Newton map the family member is.
pub fn family_source(family: Family) -> Result<RationalMap, Error> {
    check(family)?;
    let one = Polynomial::one();
    let zn_plus_1 = |n| &Polynomial::monomial(real(1.0), n) + &Polynomial::one();
    let den = match family {
        Family::N0 { m, n } => Polynomial::from_roots([(real(0.0), m), (real(1.0), n)]),
        Family::N1 { n } => zn_plus_1(n),
        Family::N2 { n } => &Polynomial::z() * &zn_plus_1(n),
    };
    RationalMap::from_coprime(one, den)
}

/// The five polynomial Newton maps `F1`..`F5` with an exceptional
/// superattracting fixed point at 0 that are not generic.
pub fn f_map(i: usize) -> Result<RationalMap, Error> {
    let over = |c: &[f64], d: f64| {
        RationalMap::polynomial(Polynomial::from_real(
            &c.iter().map(|x| x / d).collect::<Vec<_>>(),
        ))
    };
    match i {
        1 => Ok(over(&[1.0, 1.0, 1.0, 9.0, 0.0], 12.0)),
        2 => Ok(over(&[1.0, 1.0, 1.0, 1.0, 16.0, 0.0], 20.0)),
        3 => Ok(complex_pair_map(1.0)),
        4 => Ok(complex_pair_map(-1.0)),
        5 => Ok(over(&[1.0, 2.0, 3.0, 24.0, 0.0], 30.0)),
        _ => Err(Error::InvalidArgument(format!(
            "F{i} does not exist; use 1..=5"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newton::newton_map;
    use crate::parse::parse_rational_map;

    #[test]
    fn closed_forms() {
        let n1 = family_map(Family::N1 { n: 3 }).unwrap();
        assert!(n1.maps_equal(&parse_rational_map("(4z^3+1)/(3z^2)").unwrap(), 1e-15));
        let n2 = family_map(Family::N2 { n: 3 }).unwrap();
        assert!(n2.maps_equal(&parse_rational_map("z(5z^3+2)/(4z^3+1)").unwrap(), 1e-15));
        let n0 = family_map(Family::N0 { m: 1, n: 1 }).unwrap();
        assert!(n0.maps_equal(&parse_rational_map("z(3z-2)/(2z-1)").unwrap(), 1e-15));
        assert!(family_map(Family::N1 { n: 1 }).is_err());
        assert!(family_map(Family::N0 { m: 0, n: 1 }).is_err());
    }

    #[test]
    fn closed_forms_are_newton_maps_of_their_sources() {
        let mut fams = vec![];
        for m in 1..=3 {
            for n in 1..=3 {
                fams.push(Family::N0 { m, n });
            }
        }
        for n in 2..=6 {
            fams.push(Family::N1 { n });
            fams.push(Family::N2 { n });
        }
        for f in fams {
            let closed = family_map(f).unwrap();
            let computed = newton_map(&family_source(f).unwrap()).unwrap();
            assert!(
                closed.maps_equal(&computed, 1e-10),
                "{f:?}: {closed} vs {computed}"
            );
        }
    }

    #[test]
    fn f_maps() {
        for i in 1..=5 {
            let f = f_map(i).unwrap();
            assert!(f.is_polynomial());
            assert_eq!(f.num().coeff(0), Complex64::new(0.0, 0.0));
        }
        assert!(f_map(0).is_err() && f_map(6).is_err());
        // F4 is the complex conjugate of F3.
        let (f3, f4) = (f_map(3).unwrap(), f_map(4).unwrap());
        for (a, b) in f3.num().coeffs().iter().zip(f4.num().coeffs()) {
            assert!((a.conj() - b).norm() < 1e-15);
        }
    }
}
