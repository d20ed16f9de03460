//! Newton maps, their fixed points, multipliers and residue indices.

use num_complex::Complex64;
use serde::Serialize;

use crate::poly::Polynomial;
use crate::rational::{RationalMap, CANCELLATION_TOL};
use crate::roots::RootList;
use crate::sphere::SpherePoint;
use crate::Error;

/// Width of the band around `|λ| = 1` classified as indifferent, and the
/// modulus below which a multiplier counts as zero.
pub const MULTIPLIER_BAND: f64 = 1e-9;

/// Acceptance threshold for matching a multiplier to `r/s`.
pub const FRACTION_TOL: f64 = 1e-6;

/// Tolerance for comparing a reconstructed Newton map with the input.
pub const RECONSTRUCTION_TOL: f64 = 1e-6;

/// Relative size below which shifted coefficients count as vanishing in the
/// full-ramification test.
pub const RAMIFICATION_TOL: f64 = 1e-8;

/// Largest multiplicity [`characterize`] will read off a multiplier. Not
/// tied to the degree of `N`: `z^5 / (z - 1)^5` has a Newton map of degree 2.
pub const MAX_MULTIPLICITY: u32 = 64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FixedPointClass {
    Superattracting,
    Attracting,
    Indifferent,
    Repelling,
}

impl FixedPointClass {
    pub fn of(multiplier: Complex64) -> Self {
        let r = multiplier.norm();
        if r <= MULTIPLIER_BAND {
            Self::Superattracting
        } else if r < 1.0 - MULTIPLIER_BAND {
            Self::Attracting
        } else if r <= 1.0 + MULTIPLIER_BAND {
            Self::Indifferent
        } else {
            Self::Repelling
        }
    }

    pub fn is_attracting(&self) -> bool {
        matches!(self, Self::Superattracting | Self::Attracting)
    }
}

/// What a fixed point corresponds to for the underlying function, as implied
/// by its multiplier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Origin {
    Root { multiplicity: u32 },
    Pole { multiplicity: u32 },
    Infinity,
    Plain,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FixedPointRecord {
    pub location: SpherePoint,
    #[serde(with = "crate::report::complex")]
    pub multiplier: Complex64,
    pub klass: FixedPointClass,
    /// `1 / (1 - λ)`; absent for multiple fixed points.
    #[serde(with = "crate::report::complex_opt")]
    pub residue_index: Option<Complex64>,
    pub origin: Origin,
    /// Multiplicity as a root of `N(z) - z`.
    pub multiplicity: usize,
}

impl FixedPointRecord {
    fn new(location: SpherePoint, multiplier: Complex64, multiplicity: usize) -> Self {
        let simple = multiplicity == 1 && (multiplier - ONE).norm() > MULTIPLIER_BAND;
        let origin = match location {
            SpherePoint::Infinity => Origin::Infinity,
            SpherePoint::Finite(_) => match match_fraction(multiplier, u32::MAX) {
                Some((r, s)) if r < s => Origin::Root { multiplicity: s },
                Some((_, s)) => Origin::Pole { multiplicity: s },
                None => Origin::Plain,
            },
        };
        Self {
            location,
            multiplier,
            klass: FixedPointClass::of(multiplier),
            residue_index: simple.then(|| (ONE - multiplier).inv()),
            origin,
            multiplicity,
        }
    }

    pub fn is_simple(&self) -> bool {
        self.residue_index.is_some()
    }
}

/// Nearest `r/s` with `|r - s| = 1`, `r >= 0`, `1 <= s <= max_s`, accepted
/// when within [`FRACTION_TOL`].
///
/// Only real multipliers in `[0, 2]` can match, and the nearest fraction
/// with `s` above `1 / FRACTION_TOL` cannot be told apart from 1, so the
/// search is bounded regardless of `max_s`.
pub fn match_fraction(multiplier: Complex64, max_s: u32) -> Option<(u32, u32)> {
    if multiplier.im.abs() >= FRACTION_TOL {
        return None;
    }
    let x = multiplier.re;
    // r/s = 1 ± 1/s, so s = 1 / |x - 1|.
    let gap = (x - 1.0).abs();
    if gap < FRACTION_TOL {
        return None;
    }
    let s_est = (1.0 / gap).round().max(1.0);
    let mut best: Option<(u32, u32, f64)> = None;
    for s in [s_est - 1.0, s_est, s_est + 1.0] {
        if s < 1.0 || s > max_s as f64 {
            continue;
        }
        for r in [s - 1.0, s + 1.0] {
            let err = (multiplier - Complex64::new(r / s, 0.0)).norm();
            if best.is_none_or(|b| err < b.2) {
                best = Some((r as u32, s as u32, err));
            }
        }
    }
    best.filter(|b| b.2 < FRACTION_TOL).map(|b| (b.0, b.1))
}

/// `N_R = z - R / R'`, reduced.
///
/// With distinct roots `α_i` (multiplicity `k_i`) and poles `β_j`
/// (multiplicity `l_j`), `R'/R = A / (P0 Q0)` where `P0 = ∏(z - α_i)`,
/// `Q0 = ∏(z - β_j)`, and `N_R = (z A - P0 Q0) / A`. This quotient is
/// coprime, since `A` vanishes at no root or pole of `R`.
pub fn newton_map(r: &RationalMap) -> Result<RationalMap, Error> {
    let rp = r.roots_and_poles()?;
    Ok(newton_from_roots(&rp.roots, &rp.poles))
}

/// The Newton map of `∏(z - α)^k / ∏(z - β)^l`.
pub fn newton_from_roots(roots: &RootList, poles: &RootList) -> RationalMap {
    let (p0, a1) = crate::rational::log_derivative_parts(roots);
    let (q0, b1) = crate::rational::log_derivative_parts(poles);
    let a = &(&a1 * &q0) - &(&b1 * &p0);
    let p0q0 = &p0 * &q0;
    let num = &(&Polynomial::z() * &a) - &p0q0;
    RationalMap::from_coprime(
        num.trim_relative(CANCELLATION_TOL),
        a.trim_relative(CANCELLATION_TOL),
    )
    .expect("A is nonzero for a nonconstant function")
}

/// `m + n - 1` when `d = e + 1`, otherwise `m + n`, for `m` distinct roots,
/// `n` distinct poles, `d = deg num`, `e = deg den`.
pub fn expected_degree(r: &RationalMap) -> Result<usize, Error> {
    let rp = r.roots_and_poles()?;
    let (m, n) = (rp.roots.len(), rp.poles.len());
    let (d, e) = (r.num().degree(), r.den().degree());
    Ok(if d == e + 1 { m + n - 1 } else { m + n })
}

/// All fixed points of `N` on the sphere.
///
/// Finite fixed points are the roots of `z den - num`; infinity is fixed
/// exactly when `deg num > deg den`, with multiplier read off in the `1/z`
/// chart as `den[z^(D-1)] / num[z^D]`.
pub fn fixed_points(n: &RationalMap) -> Result<Vec<FixedPointRecord>, Error> {
    let deg = n.degree();
    if deg < 1 {
        return Err(Error::ConstantMap);
    }
    let f = (&(&Polynomial::z() * n.den()) - n.num()).trim_relative(CANCELLATION_TOL);
    if f.is_zero() {
        return Err(Error::NotApplicable(
            "the identity map fixes every point".into(),
        ));
    }
    let mut out = Vec::new();
    if !f.is_constant() {
        for root in f.roots_default()?.iter() {
            let lambda = if root.multiplicity > 1 {
                ONE
            } else {
                n.derivative_at(root.value)
            };
            out.push(FixedPointRecord::new(
                SpherePoint::Finite(root.value),
                lambda,
                root.multiplicity,
            ));
        }
    }
    let at_infinity = deg + 1 - f.degree();
    if at_infinity > 0 {
        let lambda = if at_infinity > 1 {
            ONE
        } else {
            n.den().coeff(deg - 1) / n.num().coeff(deg)
        };
        out.push(FixedPointRecord::new(
            SpherePoint::Infinity,
            lambda,
            at_infinity,
        ));
    }
    Ok(out)
}

/// Sum of the residue indices `1 / (1 - λ)` over all fixed points.
pub fn residue_sum(n: &RationalMap) -> Result<Complex64, Error> {
    if n.degree() < 2 {
        return Err(Error::NotApplicable(
            "residue sum needs degree at least two".into(),
        ));
    }
    let mut total = ZERO;
    for fp in fixed_points(n)? {
        match fp.residue_index {
            Some(idx) => total += idx,
            None => {
                return Err(Error::NonSimpleFixedPoint {
                    location: fp.location.to_string(),
                    multiplier: fp.multiplier.to_string(),
                })
            }
        }
    }
    Ok(total)
}

/// How one fixed point fared in [`characterize`].
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Witness {
    Matched { r: u32, s: u32 },
    Exempt,
    Failed { reason: String },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessEntry {
    pub location: SpherePoint,
    #[serde(with = "crate::report::complex")]
    pub multiplier: Complex64,
    pub witness: Witness,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CharacterizationReport {
    pub is_newton: bool,
    pub witnesses: Vec<WitnessEntry>,
    /// `∏(z - a)^s / ∏(z - b)^s` over matched finite fixed points.
    pub reconstructed: Option<RationalMap>,
    pub reason: Option<String>,
}

/// Decides whether `N` is the Newton map of some rational function.
///
/// Every fixed point must be simple and all but one multiplier must be a
/// fraction `r/s` with `|r - s| = 1` and `s ≤` [`MAX_MULTIPLICITY`]. Finite
/// points with `r < s` become roots of multiplicity `s`, those with `r > s`
/// poles. The candidate is accepted only if its Newton map reproduces `N`.
pub fn characterize(n: &RationalMap) -> Result<CharacterizationReport, Error> {
    let deg = n.degree();
    if deg < 2 {
        return Err(Error::NotApplicable(
            "characterization needs degree at least two".into(),
        ));
    }
    let fps = fixed_points(n)?;
    let mut witnesses = Vec::with_capacity(fps.len());
    let mut unmatched = Vec::new();
    let mut reason = None;
    for (idx, fp) in fps.iter().enumerate() {
        let witness = if !fp.is_simple() {
            reason.get_or_insert_with(|| format!("fixed point {} is not simple", fp.location));
            Witness::Failed {
                reason: "not simple".into(),
            }
        } else if let Some((r, s)) = match_fraction(fp.multiplier, MAX_MULTIPLICITY) {
            Witness::Matched { r, s }
        } else {
            unmatched.push(idx);
            Witness::Failed {
                reason: "multiplier is not of the form r/s with |r-s|=1".into(),
            }
        };
        witnesses.push(WitnessEntry {
            location: fp.location,
            multiplier: fp.multiplier,
            witness,
        });
    }
    if reason.is_some() {
        return Ok(CharacterizationReport {
            is_newton: false,
            witnesses,
            reconstructed: None,
            reason,
        });
    }
    if unmatched.len() > 1 {
        return Ok(CharacterizationReport {
            is_newton: false,
            witnesses,
            reconstructed: None,
            reason: Some(format!(
                "{} multipliers are not of the form r/s",
                unmatched.len()
            )),
        });
    }
    if let Some(&idx) = unmatched.first() {
        witnesses[idx].witness = Witness::Exempt;
    }

    let (mut roots, mut poles) = (Vec::new(), Vec::new());
    for w in &witnesses {
        if let (SpherePoint::Finite(z), Witness::Matched { r, s }) = (w.location, &w.witness) {
            let entry = crate::roots::Root {
                value: z,
                multiplicity: *s as usize,
            };
            if r < s {
                roots.push(entry);
            } else {
                poles.push(entry);
            }
        }
    }
    if roots.is_empty() && poles.is_empty() {
        return Ok(CharacterizationReport {
            is_newton: false,
            witnesses,
            reconstructed: None,
            reason: Some("no finite fixed point carries a root or pole".into()),
        });
    }
    let (roots, poles) = (RootList::new(roots), RootList::new(poles));
    let candidate = RationalMap::from_coprime(
        Polynomial::from_roots(roots.pairs()),
        Polynomial::from_roots(poles.pairs()),
    )?;
    let rebuilt = newton_from_roots(&roots, &poles);
    if !rebuilt.maps_equal(n, RECONSTRUCTION_TOL) {
        return Ok(CharacterizationReport {
            is_newton: false,
            witnesses,
            reconstructed: Some(candidate),
            reason: Some("Newton map of the reconstruction differs from the input".into()),
        });
    }
    Ok(CharacterizationReport {
        is_newton: true,
        witnesses,
        reconstructed: Some(candidate),
        reason: None,
    })
}

/// Fixed points whose full preimage is the point itself.
///
/// A finite fixed point `w` qualifies when `num - w den` has degree `D` and
/// all its Taylor coefficients at `w` below `t^D` vanish (relative
/// [`RAMIFICATION_TOL`]). Infinity qualifies when `N` is a polynomial.
pub fn exceptional_points(n: &RationalMap) -> Result<Vec<SpherePoint>, Error> {
    let deg = n.degree();
    if deg < 2 {
        return Err(Error::NotApplicable(
            "exceptional points need degree at least two".into(),
        ));
    }
    let mut out = Vec::new();
    for fp in fixed_points(n)? {
        let exceptional = match fp.location {
            SpherePoint::Infinity => n.den().is_constant(),
            SpherePoint::Finite(w) => {
                let h = n.num() - &n.den().scale(w);
                let h = h.trim_relative(CANCELLATION_TOL);
                if h.degree() != deg {
                    false
                } else {
                    let shifted = h.taylor_shift(w);
                    let scale = shifted.max_abs_coeff();
                    (0..deg).all(|k| shifted.coeff(k).norm() <= RAMIFICATION_TOL * scale)
                }
            }
        };
        if exceptional && out.len() < 2 {
            out.push(fp.location);
        }
    }
    Ok(out)
}

/// `(attracting, repelling)` counts; superattracting points count as
/// attracting, indifferent points as neither.
pub fn count_attracting(n: &RationalMap) -> Result<(usize, usize), Error> {
    let fps = fixed_points(n)?;
    let attracting = fps.iter().filter(|f| f.klass.is_attracting()).count();
    let repelling = fps
        .iter()
        .filter(|f| f.klass == FixedPointClass::Repelling)
        .count();
    Ok((attracting, repelling))
}
