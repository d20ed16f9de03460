//! Dense polynomials with complex coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::roots::{self, RootList};
use crate::Error;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A polynomial over the complex numbers.
///
/// Coefficients are stored highest degree first. Leading zeros are trimmed on
/// construction, so the zero polynomial is the empty coefficient vector and
/// has degree 0.
#[derive(Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    /// Builds a polynomial from coefficients ordered highest degree first.
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        let mut coeffs = coeffs;
        // -0.0 + 0.0 == +0.0, so signed zeros collapse to one representation.
        for c in &mut coeffs {
            *c = Complex64::new(c.re + 0.0, c.im + 0.0);
        }
        let lead = coeffs
            .iter()
            .position(|c| *c != ZERO)
            .unwrap_or(coeffs.len());
        coeffs.drain(..lead);
        Self { coeffs }
    }

    /// Builds a polynomial from real coefficients, highest degree first.
    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(ONE)
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    /// The identity polynomial `z`.
    pub fn z() -> Self {
        Self::new(vec![ONE, ZERO])
    }

    /// `c * z^k`.
    pub fn monomial(c: Complex64, k: usize) -> Self {
        let mut coeffs = vec![ZERO; k + 1];
        coeffs[0] = c;
        Self::new(coeffs)
    }

    /// `z - r`.
    pub fn linear_factor(r: Complex64) -> Self {
        Self::new(vec![ONE, -r])
    }

    /// Monic polynomial with the given roots and multiplicities.
    pub fn from_roots<I>(roots: I) -> Self
    where
        I: IntoIterator<Item = (Complex64, usize)>,
    {
        let mut p = Self::one();
        for (r, k) in roots {
            let factor = Self::linear_factor(r);
            for _ in 0..k {
                p = &p * &factor;
            }
        }
        p
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn leading(&self) -> Complex64 {
        self.coeffs.first().copied().unwrap_or(ZERO)
    }

    /// Coefficient of `z^k`.
    pub fn coeff(&self, k: usize) -> Complex64 {
        if k > self.degree() || self.is_zero() {
            return ZERO;
        }
        self.coeffs[self.degree() - k]
    }

    /// Largest coefficient modulus.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().fold(ZERO, |acc, &c| acc * z + c)
    }

    /// Value and first derivative in one Horner pass.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = ZERO;
        let mut dp = ZERO;
        for &c in &self.coeffs {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    /// `sum |c_k| |z|^k`, the scale used for rounding-error bounds.
    pub(crate) fn eval_abs(&self, z: f64) -> f64 {
        self.coeffs.iter().fold(0.0, |acc, c| acc * z + c.norm())
    }

    pub fn derivative(&self) -> Self {
        let d = self.degree();
        if self.is_constant() {
            return Self::zero();
        }
        Self::new(
            self.coeffs[..d]
                .iter()
                .enumerate()
                .map(|(i, &c)| c * (d - i) as f64)
                .collect(),
        )
    }

    /// k-th derivative.
    pub fn nth_derivative(&self, k: usize) -> Self {
        (0..k).fold(self.clone(), |p, _| p.derivative())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// Divides through by the leading coefficient. The zero polynomial is
    /// returned unchanged.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lead = self.leading();
        let mut coeffs: Vec<_> = self.coeffs.iter().map(|&c| c / lead).collect();
        coeffs[0] = ONE;
        Self::new(coeffs)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Sum of the moduli of all coefficients.
    pub fn length(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }

    /// `p(a z + b)`.
    pub fn compose_affine(&self, a: Complex64, b: Complex64) -> Self {
        let inner = Self::new(vec![a, b]);
        self.coeffs.iter().fold(Self::zero(), |acc, &c| {
            &(&acc * &inner) + &Self::constant(c)
        })
    }

    /// Coefficients of `t -> p(w + t)`.
    pub fn taylor_shift(&self, w: Complex64) -> Self {
        self.compose_affine(ONE, w)
    }

    /// `w^n p(1/w)` for `n >= degree`.
    pub fn reversed(&self, n: usize) -> Self {
        assert!(
            n >= self.degree(),
            "reversal degree below polynomial degree"
        );
        let mut asc: Vec<Complex64> = (0..=n).map(|k| self.coeff(k)).collect();
        // asc[k] = coefficient of z^k; as highest-first this is w^n p(1/w)
        asc.truncate(n + 1);
        Self::new(asc)
    }

    /// Long division, returning `(quotient, remainder)`.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.degree() < divisor.degree() || self.is_zero() {
            return (Self::zero(), self.clone());
        }
        let dd = divisor.degree();
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let qlen = self.coeffs.len() - dd;
        let mut quot = Vec::with_capacity(qlen);
        for i in 0..qlen {
            let q = rem[i] / lead;
            quot.push(q);
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= q * d;
            }
        }
        (Self::new(quot), Self::new(rem[qlen..].to_vec()))
    }

    /// Drops leading coefficients whose modulus is at most `rel_tol` times the
    /// largest coefficient modulus. Used after computations where the leading
    /// term cancels up to rounding.
    pub fn trim_relative(&self, rel_tol: f64) -> Self {
        let scale = self.max_abs_coeff();
        let lead = self
            .coeffs
            .iter()
            .position(|c| c.norm() > rel_tol * scale)
            .unwrap_or(self.coeffs.len());
        Self::new(self.coeffs[lead..].to_vec())
    }

    /// All roots with multiplicities. See [`roots::find_roots`].
    pub fn roots(&self, tol: f64) -> Result<RootList, Error> {
        roots::find_roots(self, tol)
    }

    /// Roots with the default tolerance of `1e-12`.
    pub fn roots_default(&self) -> Result<RootList, Error> {
        self.roots(roots::DEFAULT_TOL)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", crate::parse::format_polynomial(self))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parse::format_polynomial(self))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![ZERO; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[n - self.coeffs.len() + i] += c;
        }
        for (i, &c) in rhs.coeffs.iter().enumerate() {
            out[n - rhs.coeffs.len() + i] += c;
        }
        Polynomial::new(out)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|&c| -c).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;

            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Monic approximate GCD by mutual root matching.
///
/// A root `r` of `p` and a root `s` of `q` are matched when
/// `|r - s| <= tol * (1 + |r|)`; each matched pair contributes
/// `(z - (r + s) / 2)^min(mult_p, mult_q)`. Returns `1` when nothing matches.
pub fn gcd_numeric(p: &Polynomial, q: &Polynomial, tol: f64) -> Result<Polynomial, Error> {
    match (p.is_zero(), q.is_zero()) {
        (true, true) => return Err(Error::ZeroPolynomial),
        (true, false) => return Ok(q.monic()),
        (false, true) => return Ok(p.monic()),
        _ => {}
    }
    if p.is_constant() || q.is_constant() {
        return Ok(Polynomial::one());
    }
    let rp = p.roots_default()?;
    let rq = q.roots_default()?;
    let mut used = vec![false; rq.len()];
    let mut common = Vec::new();
    for a in rp.iter() {
        let best = rq
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, b)| (j, (a.value - b.value).norm()))
            .min_by(|x, y| x.1.total_cmp(&y.1));
        if let Some((j, dist)) = best {
            if dist <= tol * (1.0 + a.value.norm()) {
                used[j] = true;
                let b = rq.entries()[j];
                common.push((
                    (a.value + b.value) * 0.5,
                    a.multiplicity.min(b.multiplicity),
                ));
            }
        }
    }
    Ok(Polynomial::from_roots(common))
}
