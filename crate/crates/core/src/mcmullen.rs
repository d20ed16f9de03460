//! Newton maps of `f(z) = z^m - λ / z^n`.

use num_complex::Complex64;
use serde::Serialize;

use crate::dynamics::{symmetry_check, Attractors, OrbitResult};
use crate::mobius::MobiusTransform;
use crate::newton::fixed_points;
use crate::poly::Polynomial;
use crate::rational::RationalMap;
use crate::sphere::SpherePoint;
use crate::Error;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Distance to a root of unity at which a free critical orbit is accepted.
const ROOT_OF_UNITY_TOL: f64 = 1e-8;

/// Points sampled on the positive real axis by [`basin_evidence_mcmullen`].
pub const AXIS_SAMPLES: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct McMullenParams {
    m: usize,
    n: usize,
    #[serde(with = "crate::report::complex")]
    lambda: Complex64,
}

impl McMullenParams {
    pub fn new(m: usize, n: usize, lambda: Complex64) -> Result<Self, Error> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidArgument("m and n must be at least 1".into()));
        }
        if lambda.norm() == 0.0 || !lambda.re.is_finite() || !lambda.im.is_finite() {
            return Err(Error::InvalidArgument(
                "lambda must be finite and nonzero".into(),
            ));
        }
        Ok(Self { m, n, lambda })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda(&self) -> Complex64 {
        self.lambda
    }
}

/// `(z^(m+n) - λ) / z^n`.
pub fn mcmullen_map(p: &McMullenParams) -> RationalMap {
    let num = &Polynomial::monomial(ONE, p.m + p.n) - &Polynomial::constant(p.lambda);
    RationalMap::from_coprime(num, Polynomial::monomial(ONE, p.n)).expect("nonzero denominator")
}

fn closed_form(m: usize, n: usize, lambda: Complex64) -> RationalMap {
    let k = m + n;
    let (mf, nf) = (m as f64, n as f64);
    let inner = &Polynomial::monomial(Complex64::new(mf - 1.0, 0.0), k)
        + &Polynomial::constant(lambda * (nf + 1.0));
    let num = &Polynomial::z() * &inner;
    let den =
        &Polynomial::monomial(Complex64::new(mf, 0.0), k) + &Polynomial::constant(lambda * nf);
    RationalMap::from_coprime(num, den).expect("nonzero denominator")
}

/// `z((m-1) z^(m+n) + n + 1) / (m z^(m+n) + n)`, the Newton map at `λ = 1`.
///
/// # Panics
/// If `m` or `n` is zero.
pub fn newton_mcmullen(m: usize, n: usize) -> RationalMap {
    assert!(m >= 1 && n >= 1, "m and n must be at least 1");
    closed_form(m, n, ONE)
}

/// The Newton map at the given `λ`, without normalizing.
pub fn newton_mcmullen_lambda(p: &McMullenParams) -> RationalMap {
    closed_form(p.m, p.n, p.lambda)
}

/// `T(z) = λ^(1/(m+n)) z` (principal branch). `T^{-1} ∘ N_λ ∘ T` is the
/// map at `λ = 1`, which is returned alongside `T`.
pub fn normalize_lambda(p: &McMullenParams) -> (RationalMap, MobiusTransform) {
    let t = p.lambda.powf(1.0 / (p.m + p.n) as f64);
    let transform = MobiusTransform::rotation(t).expect("t is nonzero");
    (newton_mcmullen(p.m, p.n), transform)
}

/// `N'(z) = (z^k - 1)(m(m-1) z^k - n(n+1)) / (m z^k + n)^2`, `k = m + n`.
pub fn derivative_factored(m: usize, n: usize, z: Complex64) -> Complex64 {
    let zk = z.powu((m + n) as u32);
    let (mf, nf) = (m as f64, n as f64);
    let den = mf * zk + nf;
    (zk - 1.0) * (mf * (mf - 1.0) * zk - nf * (nf + 1.0)) / (den * den)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FreeCritical {
    /// The positive real solution.
    pub c: f64,
    #[serde(with = "crate::report::complex_vec")]
    pub all: Vec<Complex64>,
}

/// Critical points of the Newton map that are not roots of `f`: the
/// solutions of `z^(m+n) = n(n+1) / (m(m-1))`. `None` when `m = n + 1`,
/// where they coincide with the roots of unity.
pub fn free_critical(m: usize, n: usize) -> Result<Option<FreeCritical>, Error> {
    if m < 2 || n < 1 {
        return Err(Error::NotApplicable(
            "free critical points need m >= 2 and n >= 1".into(),
        ));
    }
    if m == n + 1 {
        return Ok(None);
    }
    let k = m + n;
    let c = ((n * (n + 1)) as f64 / (m * (m - 1)) as f64).powf(1.0 / k as f64);
    let all = (0..k)
        .map(|j| Complex64::from_polar(c, std::f64::consts::TAU * j as f64 / k as f64))
        .collect();
    Ok(Some(FreeCritical { c, all }))
}

/// `N(c) = c (1 + (m - n - 1) / (mn))` for the positive free critical point.
pub fn nf_at_free_critical(m: usize, n: usize) -> Result<f64, Error> {
    if m < 2 || n < 1 {
        return Err(Error::NotApplicable("needs m >= 2".into()));
    }
    let k = m + n;
    let c = ((n * (n + 1)) as f64 / (m * (m - 1)) as f64).powf(1.0 / k as f64);
    let (mf, nf) = (m as f64, n as f64);
    Ok(c * (1.0 + (mf - nf - 1.0) / (mf * nf)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Case {
    /// `m > n + 1`: the free critical point lies in `(0, 1)`.
    I,
    /// `m = n + 1`: no free critical points.
    II,
    /// `m < n + 1`: the free critical point lies beyond 1.
    III,
}

pub fn case_of(m: usize, n: usize) -> Result<Case, Error> {
    if m < 2 || n < 1 {
        return Err(Error::NotApplicable(
            "m = 1 is conjugate to a polynomial Newton map".into(),
        ));
    }
    Ok(match m.cmp(&(n + 1)) {
        std::cmp::Ordering::Greater => Case::I,
        std::cmp::Ordering::Equal => Case::II,
        std::cmp::Ordering::Less => Case::III,
    })
}

/// Largest `k <= 2(m+n)` such that rotation by `exp(2πi/k)` commutes with
/// the Newton map.
pub fn symmetry_group_order(m: usize, n: usize) -> Result<usize, Error> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgument("m and n must be at least 1".into()));
    }
    if m + n == 2 {
        return Err(Error::NotApplicable(
            "m = n = 1: the Julia set is a line".into(),
        ));
    }
    let nf = newton_mcmullen(m, n);
    Ok((1..=2 * (m + n))
        .rev()
        .find(|&k| symmetry_check(&nf, k))
        .unwrap_or(1))
}

#[derive(Clone, Debug, Serialize)]
pub struct FreeOrbit {
    #[serde(with = "crate::report::complex")]
    pub c: Complex64,
    pub orbit: OrbitResult,
    /// The orbit converged to an `(m+n)`-th root of unity.
    pub to_root_of_unity: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct McMullenEvidence {
    pub m: usize,
    pub n: usize,
    pub case: Option<Case>,
    pub free_orbits: Vec<FreeOrbit>,
    /// Right end of the sampled interval `(0, c)`, or `(0, 1)` without a
    /// positive free critical point.
    pub axis_end: f64,
    pub axis_samples: usize,
    pub axis_to_one: usize,
}

impl McMullenEvidence {
    pub fn complete(&self) -> bool {
        self.free_orbits.iter().all(|o| o.to_root_of_unity) && self.axis_to_one == self.axis_samples
    }
}

/// Follows every free critical orbit and samples `(0, c)` on the real
/// axis, checking convergence to roots of unity and to 1 respectively.
pub fn basin_evidence_mcmullen(m: usize, n: usize, cap: usize) -> Result<McMullenEvidence, Error> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgument("m and n must be at least 1".into()));
    }
    let nf = newton_mcmullen(m, n);
    let k = (m + n) as u32;
    let attractors = Attractors::new(&fixed_points(&nf)?);
    let at_root_of_unity = |r: &OrbitResult| {
        matches!(r.fate, crate::dynamics::Fate::Converged { target: SpherePoint::Finite(t), .. }
            if (t.powu(k) - ONE).norm() < ROOT_OF_UNITY_TOL)
    };
    let free = if m >= 2 { free_critical(m, n)? } else { None };
    let free_orbits = free
        .as_ref()
        .map(|f| f.all.clone())
        .unwrap_or_default()
        .into_iter()
        .map(|c| {
            let orbit = attractors.run(&nf, SpherePoint::Finite(c), cap);
            FreeOrbit {
                c,
                to_root_of_unity: at_root_of_unity(&orbit),
                orbit,
            }
        })
        .collect();
    let axis_end = free.map_or(1.0, |f| f.c);
    let axis_to_one = (1..=AXIS_SAMPLES)
        .filter(|&j| {
            let x = axis_end * j as f64 / (AXIS_SAMPLES + 1) as f64;
            let r = attractors.run(&nf, SpherePoint::finite(x, 0.0), cap);
            matches!(r.fate, crate::dynamics::Fate::Converged { target: SpherePoint::Finite(t), .. }
                if (t - ONE).norm() < ROOT_OF_UNITY_TOL)
        })
        .count();
    Ok(McMullenEvidence {
        m,
        n,
        case: case_of(m, n).ok(),
        free_orbits,
        axis_end,
        axis_samples: AXIS_SAMPLES,
        axis_to_one,
    })
}

/// `m + n + 1`, except `m + n` when `m = 1` (the numerator then has
/// degree 1 and the denominator degree `n + 1`).
pub fn expected_degree_mcmullen(m: usize, n: usize) -> usize {
    if m == 1 {
        m + n
    } else {
        m + n + 1
    }
}
