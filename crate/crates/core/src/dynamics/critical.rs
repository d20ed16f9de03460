use num_complex::Complex64;
use serde::Serialize;

use crate::newton::fixed_points;
use crate::poly::Polynomial;
use crate::rational::{RationalMap, CANCELLATION_TOL};
use crate::roots::RootList;
use crate::sphere::SpherePoint;
use crate::Error;

use super::orbit::{Attractors, OrbitResult};

/// Critical points on the sphere: the roots of `num' den - num den'`
/// (which include multiple poles), plus the ramification at infinity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriticalPoints {
    pub finite: RootList,
    /// Multiplicity of infinity as a critical point (0 if not critical).
    pub at_infinity: usize,
}

impl CriticalPoints {
    /// Count with multiplicity; `2 deg - 2` for a map of degree `deg`.
    pub fn total(&self) -> usize {
        self.finite.total_multiplicity() + self.at_infinity
    }
}

pub fn critical_points(n: &RationalMap) -> Result<CriticalPoints, Error> {
    let deg = n.degree();
    if deg < 2 {
        return Err(Error::NotApplicable(
            "critical points need degree at least two".into(),
        ));
    }
    let w = &(&n.num().derivative() * n.den()) - &(n.num() * &n.den().derivative());
    let w = w.trim_relative(CANCELLATION_TOL);
    let finite = if w.is_constant() {
        RootList::default()
    } else {
        w.roots_default()?
    };
    Ok(CriticalPoints {
        finite,
        at_infinity: 2 * deg - 2 - w.degree(),
    })
}

/// Radius of a disk around 0 contained in the immediate basin of the
/// superattracting-or-attracting fixed point 0 of the polynomial `p`.
///
/// With `L` the sum of coefficient moduli and `q = |p'(0)|`, the radius is
/// `(1 - q) / (L - q)` when `L >= 1`, and its `(d-1)`-th root otherwise.
pub fn internal_disk_radius(p: &Polynomial) -> Result<f64, Error> {
    let d = p.degree();
    if d < 2 {
        return Err(Error::InvalidArgument("degree must be at least two".into()));
    }
    if p.coeff(0).norm() > 1e-12 * p.max_abs_coeff() {
        return Err(Error::InvalidArgument("p(0) must vanish".into()));
    }
    let q = p.coeff(1).norm();
    if q >= 1.0 {
        return Err(Error::InvalidArgument("|p'(0)| must be below 1".into()));
    }
    let length = p.length();
    let base = (1.0 - q) / (length - q);
    Ok(if length >= 1.0 {
        base
    } else {
        base.powf(1.0 / (d - 1) as f64)
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CriticalEntry {
    #[serde(with = "crate::report::complex")]
    pub c: Complex64,
    pub multiplicity: usize,
    /// `N(c)`.
    pub value: SpherePoint,
    /// `|N(c)|`, infinite at poles.
    pub modulus: f64,
    pub orbit: OrbitResult,
    pub inside_internal_disk: Option<bool>,
    /// First `k >= 1` with `|N^k(c)| < r`.
    pub steps_to_disk: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriticalReport {
    pub internal_disk_radius: Option<f64>,
    pub at_infinity: usize,
    pub entries: Vec<CriticalEntry>,
}

/// Critical values and orbits of all finite critical points. When
/// `disk_poly` is given, also checks entry into its internal disk, searching
/// up to `cap` iterates.
pub fn critical_report(
    n: &RationalMap,
    disk_poly: Option<&Polynomial>,
    cap: usize,
) -> Result<CriticalReport, Error> {
    let crit = critical_points(n)?;
    let radius = disk_poly.map(internal_disk_radius).transpose()?;
    let attractors = Attractors::new(&fixed_points(n)?);
    let entries = crit
        .finite
        .iter()
        .map(|root| {
            let c = root.value;
            let value = n.eval_sphere(SpherePoint::Finite(c));
            let modulus = value.as_finite().map_or(f64::INFINITY, |v| v.norm());
            let steps_to_disk = radius.and_then(|r| {
                let mut z = value;
                for k in 1..=cap {
                    match z {
                        SpherePoint::Finite(w) if w.norm() < r => return Some(k),
                        SpherePoint::Finite(_) => z = n.eval_sphere(z).promote(),
                        SpherePoint::Infinity => return None,
                    }
                }
                None
            });
            CriticalEntry {
                c,
                multiplicity: root.multiplicity,
                value,
                modulus,
                orbit: attractors.run(n, SpherePoint::Finite(c), cap),
                inside_internal_disk: radius.map(|r| modulus < r),
                steps_to_disk,
            }
        })
        .collect();
    Ok(CriticalReport {
        internal_disk_radius: radius,
        at_infinity: crit.at_infinity,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_polynomial, parse_rational_map};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn critical_point_examples() {
        let n1 = parse_rational_map("(3z^2+1)/(2z)").unwrap();
        let cp = critical_points(&n1).unwrap();
        assert_eq!(cp.total(), 2);
        let s = 1.0 / 3f64.sqrt();
        assert!(cp.finite.nearest(c(s, 0.0)).unwrap().1 < 1e-14);
        assert!(cp.finite.nearest(c(-s, 0.0)).unwrap().1 < 1e-14);

        // N2 with n = 3: z^3 = -0.1 ± 0.3i
        let n2 = parse_rational_map("z(5z^3+2)/(4z^3+1)").unwrap();
        let cp = critical_points(&n2).unwrap();
        assert_eq!(cp.total(), 6);
        for r in cp.finite.iter() {
            let cube = r.value.powu(3);
            let d = (cube - c(-0.1, 0.3))
                .norm()
                .min((cube - c(-0.1, -0.3)).norm());
            assert!(d < 1e-12, "{}", r.value);
        }

        // z(z^5+4)/(2z^5+3): z^5 = 6 and z^5 = 1.
        let nf = parse_rational_map("z(z^5+4)/(2z^5+3)").unwrap();
        let cp = critical_points(&nf).unwrap();
        assert_eq!(cp.finite.total_multiplicity(), 10);
        assert_eq!(cp.total(), 10);
        for r in cp.finite.iter() {
            let p = r.value.powu(5);
            assert!((p - c(6.0, 0.0)).norm().min((p - c(1.0, 0.0)).norm()) < 1e-11);
        }
    }

    #[test]
    fn disk_radius_examples() {
        let f1 = parse_polynomial("z(z^3+z^2+z+9)/12").unwrap();
        assert!((internal_disk_radius(&f1).unwrap() - 1.0).abs() < 1e-15);
        let small = parse_polynomial("z/2 + z^2/4").unwrap();
        assert!((internal_disk_radius(&small).unwrap() - 2.0).abs() < 1e-15);
        assert!(internal_disk_radius(&parse_polynomial("z^2+1").unwrap()).is_err());
        assert!(internal_disk_radius(&parse_polynomial("2z+z^2").unwrap()).is_err());
    }
}
