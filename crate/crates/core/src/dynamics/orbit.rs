use num_complex::Complex64;
use serde::Serialize;

use crate::newton::FixedPointRecord;
use crate::rational::RationalMap;
use crate::sphere::SpherePoint;

/// Distance to an attracting fixed point at which an orbit counts as
/// converged.
pub const CONVERGENCE_TOL: f64 = 1e-9;
pub const DEFAULT_CAP: usize = 1000;
/// Iteration cap used by the property suites.
pub const PROPERTY_CAP: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "fate", rename_all = "snake_case")]
pub enum Fate {
    Converged {
        target: SpherePoint,
        fp_index: usize,
    },
    /// Reached infinity while infinity is a non-attracting fixed point.
    Escaped,
    Undecided,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OrbitResult {
    #[serde(flatten)]
    pub fate: Fate,
    pub iterations: usize,
    pub final_point: SpherePoint,
}

impl OrbitResult {
    pub fn converged_to(&self) -> Option<usize> {
        match self.fate {
            Fate::Converged { fp_index, .. } => Some(fp_index),
            _ => None,
        }
    }
}

/// The attracting fixed points of a map, preprocessed for fast orbit
/// classification. Indices refer to the fixed-point table it was built from.
#[derive(Clone, Debug)]
pub struct Attractors {
    finite: Vec<(usize, Complex64)>,
    infinity: Option<usize>,
    infinity_fixed: bool,
}

impl Attractors {
    pub fn new(table: &[FixedPointRecord]) -> Self {
        let mut finite = Vec::new();
        let mut infinity = None;
        let mut infinity_fixed = false;
        for (i, fp) in table.iter().enumerate() {
            match fp.location {
                SpherePoint::Infinity => {
                    infinity_fixed = true;
                    if fp.klass.is_attracting() {
                        infinity = Some(i);
                    }
                }
                SpherePoint::Finite(z) if fp.klass.is_attracting() => finite.push((i, z)),
                SpherePoint::Finite(_) => {}
            }
        }
        Self {
            finite,
            infinity,
            infinity_fixed,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.finite.is_empty() && self.infinity.is_none()
    }

    fn classify(&self, z: SpherePoint) -> Option<Fate> {
        match z {
            SpherePoint::Infinity => match self.infinity {
                Some(i) => Some(Fate::Converged {
                    target: SpherePoint::Infinity,
                    fp_index: i,
                }),
                None if self.infinity_fixed => Some(Fate::Escaped),
                None => None,
            },
            SpherePoint::Finite(w) => self
                .finite
                .iter()
                .find(|(_, t)| (w - t).norm() < CONVERGENCE_TOL)
                .map(|&(i, t)| Fate::Converged {
                    target: SpherePoint::Finite(t),
                    fp_index: i,
                }),
        }
    }

    /// Iterates `n` from `z0` until the orbit settles or `cap` steps pass.
    pub fn run(&self, n: &RationalMap, z0: SpherePoint, cap: usize) -> OrbitResult {
        let mut z = z0.promote();
        for it in 0..=cap {
            if let Some(fate) = self.classify(z) {
                return OrbitResult {
                    fate,
                    iterations: it,
                    final_point: z,
                };
            }
            if it == cap {
                break;
            }
            z = n.eval_sphere(z).promote();
        }
        OrbitResult {
            fate: Fate::Undecided,
            iterations: cap,
            final_point: z,
        }
    }
}

/// Orbit of `z0` classified against the attracting entries of `targets`;
/// `fp_index` indexes `targets`.
pub fn iterate_orbit(
    n: &RationalMap,
    z0: SpherePoint,
    targets: &[FixedPointRecord],
    cap: usize,
) -> OrbitResult {
    Attractors::new(targets).run(n, z0, cap)
}
