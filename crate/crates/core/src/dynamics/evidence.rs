use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use crate::mobius::MobiusTransform;
use crate::newton::{fixed_points, MULTIPLIER_BAND};
use crate::rational::RationalMap;
use crate::sphere::SpherePoint;
use crate::Error;

use super::critical::critical_points;
use super::orbit::{Attractors, Fate, OrbitResult};

/// Coefficient tolerance for `N(μz)/μ = N(z)`.
pub const SYMMETRY_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Evidence {
    /// Every critical orbit reached the attracting fixed point.
    Complete,
    /// Critical points whose orbits did not.
    Inconclusive { undecided: Vec<SpherePoint> },
}

impl Evidence {
    pub fn is_complete(&self) -> bool {
        matches!(self, Evidence::Complete)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitEntry {
    pub critical_point: SpherePoint,
    pub multiplicity: usize,
    pub orbit: OrbitResult,
}

#[derive(Clone, Debug, Serialize)]
pub struct DisconnectionReport {
    pub attractor: SpherePoint,
    #[serde(with = "crate::report::complex")]
    pub multiplier: Complex64,
    pub multiplier_nonzero: bool,
    pub critical_orbits: Vec<OrbitEntry>,
    pub evidence: Evidence,
}

impl DisconnectionReport {
    /// Nonzero multiplier and every critical orbit captured.
    pub fn holds(&self) -> bool {
        self.multiplier_nonzero && self.evidence.is_complete()
    }
}

/// Numerical evidence that all critical points of `n` lie in the basin of
/// its unique attracting fixed point. Not a proof: orbits are followed for
/// at most `cap` steps in double precision.
pub fn disconnection_evidence(n: &RationalMap, cap: usize) -> Result<DisconnectionReport, Error> {
    let table = fixed_points(n)?;
    let attracting: Vec<usize> = (0..table.len())
        .filter(|&i| table[i].klass.is_attracting())
        .collect();
    let &[k] = attracting.as_slice() else {
        return Err(Error::NotApplicable(format!(
            "expected exactly one attracting fixed point, found {}",
            attracting.len()
        )));
    };
    let fp = &table[k];
    let crit = critical_points(n)?;
    let mut points: Vec<(SpherePoint, usize)> = crit
        .finite
        .iter()
        .map(|r| (SpherePoint::Finite(r.value), r.multiplicity))
        .collect();
    if crit.at_infinity > 0 {
        points.push((SpherePoint::Infinity, crit.at_infinity));
    }
    let attractors = Attractors::new(&table);
    let critical_orbits: Vec<OrbitEntry> = points
        .into_iter()
        .map(|(p, multiplicity)| OrbitEntry {
            critical_point: p,
            multiplicity,
            orbit: attractors.run(n, p, cap),
        })
        .collect();
    let undecided: Vec<SpherePoint> = critical_orbits
        .iter()
        .filter(|e| !matches!(e.orbit.fate, Fate::Converged { fp_index, .. } if fp_index == k))
        .map(|e| e.critical_point)
        .collect();
    Ok(DisconnectionReport {
        attractor: fp.location,
        multiplier: fp.multiplier,
        multiplier_nonzero: fp.multiplier.norm() > MULTIPLIER_BAND,
        critical_orbits,
        evidence: if undecided.is_empty() {
            Evidence::Complete
        } else {
            Evidence::Inconclusive { undecided }
        },
    })
}

/// Whether `z -> μz` commutes with `n` for `μ = exp(2πi / order)`.
pub fn symmetry_check(n: &RationalMap, order: usize) -> bool {
    if order == 0 {
        return false;
    }
    let mu = Complex64::from_polar(1.0, TAU / order as f64);
    let rot = MobiusTransform::rotation(mu).expect("|mu| = 1");
    n.conjugate_by_mobius(&rot).maps_equal(n, SYMMETRY_TOL)
}

/// Signs of `N'(x)` sampled at evenly spaced points of `[a, b]`.
#[derive(Clone, Debug, Serialize)]
pub struct SignProfile {
    pub xs: Vec<f64>,
    /// Real part of `N'(x)`.
    pub values: Vec<f64>,
    /// Midpoints of consecutive samples where the sign flips.
    pub sign_changes: Vec<f64>,
}

impl SignProfile {
    /// The common sign of all samples strictly inside `(lo, hi)`, if any.
    pub fn sign_on(&self, lo: f64, hi: f64) -> Option<f64> {
        let mut sign = None;
        for (x, v) in self.xs.iter().zip(&self.values) {
            if *x <= lo || *x >= hi {
                continue;
            }
            let s = v.signum();
            if *v == 0.0 || sign.is_some_and(|t| t != s) {
                return None;
            }
            sign = Some(s);
        }
        sign
    }
}

pub fn real_sign_profile(n: &RationalMap, a: f64, b: f64, samples: usize) -> SignProfile {
    let samples = samples.max(2);
    let xs: Vec<f64> = (0..samples)
        .map(|k| a + (b - a) * k as f64 / (samples - 1) as f64)
        .collect();
    let values: Vec<f64> = xs
        .iter()
        .map(|&x| n.derivative_at(Complex64::new(x, 0.0)).re)
        .collect();
    let sign_changes = xs
        .windows(2)
        .zip(values.windows(2))
        .filter(|(_, v)| v[0].signum() != v[1].signum())
        .map(|(x, _)| 0.5 * (x[0] + x[1]))
        .collect();
    SignProfile {
        xs,
        values,
        sign_changes,
    }
}
