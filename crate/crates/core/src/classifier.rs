//! Polynomial Newton maps `N_{z^d / p}` for which the origin is exceptional.
//!
//! For monic `p = ∏ (z - α_i)^{m_i}` of degree `d` with `p(0) != 0`,
//! `N_{z^d/p}` is a polynomial exactly when
//! `g(z) = d ∏(z - α_i) - z Σ m_i ∏_{j != i}(z - α_j)` is a nonzero
//! constant `C`. Since `g · P1 = d p - z p'` with `P1 = ∏(z - α_i)^{m_i - 1}`,
//! this reads `(k - d) c_k = -C P1_k` coefficient-wise, so
//!
//! ```text
//! p(z) = z^d + C Σ_{k<d} P1_k / (d - k) z^k.
//! ```
//!
//! Pinning the first multiple root at 1 (the scaling gauge), the remaining
//! unknowns are `C` and the other multiple roots, constrained by `p(α_i) = 0`
//! at every multiple root. For `d <= 5` there are at most two multiple
//! roots, so this reduces to one linear equation for `C`, or to a single
//! univariate polynomial in the second multiple root `a` after eliminating
//! `C`.

use num_complex::Complex64;
use serde::Serialize;

use crate::poly::Polynomial;
use crate::rational::RationalMap;
use crate::roots::RootList;
use crate::Error;

/// Non-constant coefficients of `g` below this (relative to `max(1, |g|)`)
/// count as zero.
pub const G_CONSTANT_TOL: f64 = 1e-8;

/// Tolerance for matching enumerated maps against the embedded rows.
pub const TABLE_TOL: f64 = 1e-9;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Multiplicities of the distinct roots of `p`, sorted descending.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityPattern {
    parts: Vec<usize>,
}

impl MultiplicityPattern {
    pub fn new(mut parts: Vec<usize>) -> Result<Self, Error> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::InvalidArgument(
                "pattern parts must be positive".into(),
            ));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn degree(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn is_generic(&self) -> bool {
        self.parts.iter().all(|&m| m == 1)
    }

    /// Multiplicities greater than one, in order.
    pub fn multiple_parts(&self) -> Vec<usize> {
        self.parts.iter().copied().filter(|&m| m > 1).collect()
    }

    /// All partitions of `d`, most parts first.
    pub fn all(d: usize) -> Vec<Self> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if rest == 0 {
                out.push(cur.clone());
                return;
            }
            for m in (1..=rest.min(max)).rev() {
                cur.push(m);
                rec(rest - m, m, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(d, d, &mut Vec::new(), &mut out);
        out.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        out.into_iter().map(|parts| Self { parts }).collect()
    }

    pub fn label(&self) -> String {
        self.parts
            .iter()
            .map(|m| m.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationResult {
    pub d: usize,
    pub pattern: MultiplicityPattern,
    /// Free multiple roots besides the one pinned at 1.
    #[serde(with = "crate::report::complex_vec")]
    pub params: Vec<Complex64>,
    /// The constant value of `g`.
    #[serde(with = "crate::report::complex")]
    pub g_constant: Complex64,
    pub solved_roots: RootList,
    pub p: Polynomial,
    pub newton: RationalMap,
    pub row_id: String,
}

/// `d ∏(z - α_i) - z Σ m_i ∏_{j != i}(z - α_j)`.
pub fn g_polynomial(d: usize, roots: &[(Complex64, usize)]) -> Result<Polynomial, Error> {
    if roots.iter().map(|r| r.1).sum::<usize>() != d {
        return Err(Error::InvalidArgument(
            "multiplicities must sum to d".into(),
        ));
    }
    for (i, (a, m)) in roots.iter().enumerate() {
        if *m == 0 || a.norm() == 0.0 {
            return Err(Error::InvalidArgument(
                "roots must be nonzero with positive multiplicity".into(),
            ));
        }
        if roots[..i].iter().any(|(b, _)| b == a) {
            return Err(Error::InvalidArgument(format!("repeated root {a}")));
        }
    }
    let list = RootList::new(
        roots
            .iter()
            .map(|&(value, multiplicity)| crate::roots::Root {
                value,
                multiplicity,
            })
            .collect(),
    );
    let (squarefree, weighted) = crate::rational::log_derivative_parts(&list);
    Ok(&squarefree.scale(Complex64::new(d as f64, 0.0)) - &(&Polynomial::z() * &weighted))
}

/// Whether `g` built from the roots of `p` is a nonzero constant.
pub fn is_exceptional_family(p: &Polynomial) -> Result<bool, Error> {
    if p.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let p = p.monic();
    if p.coeff(0).norm() == 0.0 {
        return Err(Error::InvalidArgument("p(0) must be nonzero".into()));
    }
    let roots: Vec<(Complex64, usize)> = p.roots_default()?.pairs().collect();
    let g = g_polynomial(p.degree(), &roots)?;
    Ok(g_is_nonzero_constant(&g))
}

fn g_is_nonzero_constant(g: &Polynomial) -> bool {
    let c0 = g.coeff(0);
    let scale = c0.norm().max(1.0);
    c0.norm() > G_CONSTANT_TOL
        && (1..=g.degree()).all(|k| g.coeff(k).norm() < G_CONSTANT_TOL * scale)
}

/// `(z^{d+1} + (d - 1) z) / d`, the Newton map of `z^d / (z^d - 1)`.
pub fn generic_newton(d: usize) -> RationalMap {
    let mut coeffs = vec![ZERO; d + 2];
    coeffs[0] = Complex64::new(1.0 / d as f64, 0.0);
    coeffs[d] += Complex64::new((d as f64 - 1.0) / d as f64, 0.0);
    RationalMap::polynomial(Polynomial::new(coeffs))
}

/// Polynomial in `z` whose coefficients are polynomials in a parameter `a`;
/// index `k` holds the coefficient of `z^k`.
type Bivariate = Vec<Polynomial>;

fn bivariate_mul(x: &Bivariate, y: &Bivariate) -> Bivariate {
    let mut out = vec![Polynomial::zero(); x.len() + y.len() - 1];
    for (i, xi) in x.iter().enumerate() {
        for (j, yj) in y.iter().enumerate() {
            out[i + j] = &out[i + j] + &(xi * yj);
        }
    }
    out
}

/// `(z - root)^e` with `root` either the constant 1 or the parameter `a`.
fn power_of_linear(e: usize, parametric: bool) -> Bivariate {
    let mut out: Bivariate = vec![Polynomial::one()];
    let factor: Bivariate = if parametric {
        vec![Polynomial::monomial(-ONE, 1), Polynomial::one()]
    } else {
        vec![Polynomial::constant(-ONE), Polynomial::one()]
    };
    for _ in 0..e {
        out = bivariate_mul(&out, &factor);
    }
    out
}

/// `H(z; a) = Σ_k P1_k(a) / (d - k) z^k`, so that `p = z^d + C H`.
fn h_bivariate(d: usize, multiple: &[usize]) -> Bivariate {
    let mut p1: Bivariate = vec![Polynomial::one()];
    for (i, &m) in multiple.iter().enumerate() {
        p1 = bivariate_mul(&p1, &power_of_linear(m - 1, i > 0));
    }
    p1.iter()
        .enumerate()
        .map(|(k, c)| c.scale(Complex64::new(1.0 / (d - k) as f64, 0.0)))
        .collect()
}

/// `Σ_k H_k(a) x^k` as a polynomial in `a`, where `x` is `1` or `a` itself.
fn h_at(h: &Bivariate, at_parameter: bool) -> Polynomial {
    h.iter()
        .enumerate()
        .fold(Polynomial::zero(), |acc, (k, c)| {
            let term = if at_parameter {
                c * &Polynomial::monomial(ONE, k)
            } else {
                c.clone()
            };
            &acc + &term
        })
}

fn eval_h(h: &Bivariate, a: Complex64) -> Polynomial {
    let asc: Vec<Complex64> = h.iter().map(|c| c.eval(a)).collect();
    Polynomial::new(asc.into_iter().rev().collect())
}

/// Solutions for one multiplicity pattern: `(params, C, p, P1)`.
fn solve_pattern(
    d: usize,
    pattern: &MultiplicityPattern,
) -> Result<Vec<(Vec<Complex64>, Complex64, Polynomial)>, Error> {
    let multiple = pattern.multiple_parts();
    let h = h_bivariate(d, &multiple);
    let candidates: Vec<Vec<Complex64>> = match multiple.len() {
        0 | 1 => vec![vec![]],
        2 => {
            // a^d H(1; a) - H(a; a) = 0
            let e = &(&Polynomial::monomial(ONE, d) * &h_at(&h, false)) - &h_at(&h, true);
            let e = e.trim_relative(1e-13);
            if e.is_constant() {
                vec![]
            } else {
                e.roots_default()?
                    .iter()
                    .map(|r| r.value)
                    .filter(|a| a.norm() > 1e-6 && (a - ONE).norm() > 1e-6)
                    .map(|a| vec![a])
                    .collect()
            }
        }
        _ => {
            return Err(Error::NotApplicable(format!(
                "patterns with {} multiple roots are outside the solver's range",
                multiple.len()
            )))
        }
    };
    let mut out = Vec::new();
    for params in candidates {
        let a = params.first().copied().unwrap_or(ZERO);
        let h_z = eval_h(&h, a);
        let h1 = h_z.eval(ONE);
        if h1.norm() < 1e-12 {
            continue;
        }
        let c = -h1.inv();
        let p = &Polynomial::monomial(ONE, d) + &h_z.scale(c);
        out.push((params, c, p));
    }
    Ok(out)
}

/// All `p` of degree `d` (in the gauge above) with `N_{z^d/p}` polynomial.
pub fn enumerate(d: usize) -> Result<Vec<ClassificationResult>, Error> {
    if !(3..=5).contains(&d) {
        return Err(Error::InvalidArgument(format!("degree {d} outside 3..=5")));
    }
    let mut results: Vec<ClassificationResult> = Vec::new();
    for pattern in MultiplicityPattern::all(d) {
        let mut rows = Vec::new();
        for (params, c, p) in solve_pattern(d, &pattern)? {
            let roots = p.roots_default()?;
            let mut mults: Vec<usize> = roots.iter().map(|r| r.multiplicity).collect();
            mults.sort_unstable_by(|a, b| b.cmp(a));
            if mults != pattern.parts() || roots.iter().any(|r| r.value.norm() < 1e-8) {
                continue;
            }
            let g = g_polynomial(d, &roots.pairs().collect::<Vec<_>>())?;
            if !g_is_nonzero_constant(&g) {
                continue;
            }
            // N = z - z S / C with S = p / P1 the squarefree part.
            let a = params.first().copied().unwrap_or(ZERO);
            let p1 = {
                let h = h_bivariate(d, &pattern.multiple_parts());
                let asc: Vec<Complex64> = h
                    .iter()
                    .enumerate()
                    .map(|(k, hk)| hk.eval(a) * (d - k) as f64)
                    .collect();
                Polynomial::new(asc.into_iter().rev().collect())
            };
            let (s, _) = p.div_rem(&p1);
            let newton = &Polynomial::z() - &(&Polynomial::z() * &s).scale(c.inv());
            let newton = RationalMap::polynomial(newton.trim_relative(1e-13));
            if rows
                .iter()
                .any(|r: &ClassificationResult| r.newton.maps_equal(&newton, 1e-9))
            {
                continue;
            }
            rows.push(ClassificationResult {
                d,
                pattern: pattern.clone(),
                params,
                g_constant: c,
                solved_roots: roots,
                p,
                newton,
                row_id: String::new(),
            });
        }
        rows.sort_by(|x, y| {
            let key =
                |r: &ClassificationResult| r.params.first().map_or((0.0, 0.0), |a| (-a.im, a.re));
            key(x)
                .partial_cmp(&key(y))
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        let multi = rows.len() > 1;
        for (i, mut row) in rows.into_iter().enumerate() {
            row.row_id = if multi {
                format!("d{d}:{}#{}", pattern.label(), i + 1)
            } else {
                format!("d{d}:{}", pattern.label())
            };
            results.push(row);
        }
    }
    Ok(results)
}

/// A reference map with a stable identifier.
#[derive(Clone, Debug)]
pub struct GoldenRow {
    pub id: &'static str,
    pub newton: RationalMap,
}

fn poly_over(coeffs: &[f64], denom: f64) -> RationalMap {
    RationalMap::polynomial(Polynomial::from_real(
        &coeffs.iter().map(|c| c / denom).collect::<Vec<_>>(),
    ))
}

/// The pair of maps with complex coefficients; `sign = 1` gives the one
/// with prefactor `z / (10(√5 - 7i))`, `sign = -1` its conjugate.
pub fn complex_pair_map(sign: f64) -> RationalMap {
    let s5 = 5f64.sqrt();
    let c = |re: f64, im: f64| Complex64::new(re, sign * im);
    let pre = (c(s5, -7.0) * 10.0).inv();
    let inner = [
        c(0.0, -9.0),
        c(3.0 * s5, -3.0),
        c(-s5, -2.0),
        c(8.0 * s5, -56.0),
    ];
    let mut coeffs: Vec<Complex64> = inner.iter().map(|&x| x * pre).collect();
    coeffs.push(ZERO);
    RationalMap::polynomial(Polynomial::new(coeffs))
}

/// Reference maps for `d = 3, 4, 5`, in enumeration order.
pub fn golden_rows(d: usize) -> Vec<GoldenRow> {
    let row = |id, newton| GoldenRow { id, newton };
    match d {
        3 => vec![
            row("d3:generic", poly_over(&[1.0, 0.0, 0.0, 2.0, 0.0], 3.0)),
            row("d3:2,1", poly_over(&[1.0, 1.0, 4.0, 0.0], 6.0)),
            row("d3:3", poly_over(&[1.0, 2.0, 0.0], 3.0)),
        ],
        4 => vec![
            row(
                "d4:generic",
                poly_over(&[1.0, 0.0, 0.0, 0.0, 3.0, 0.0], 4.0),
            ),
            row("d4:2,1,1", poly_over(&[1.0, 1.0, 1.0, 9.0, 0.0], 12.0)),
            row("d4:2,2", poly_over(&[1.0, 0.0, 3.0, 0.0], 4.0)),
            row("d4:3,1", poly_over(&[1.0, 2.0, 9.0, 0.0], 12.0)),
            row("d4:4", poly_over(&[1.0, 3.0, 0.0], 4.0)),
        ],
        5 => vec![
            row(
                "d5:generic",
                poly_over(&[1.0, 0.0, 0.0, 0.0, 0.0, 4.0, 0.0], 5.0),
            ),
            row(
                "d5:2,1,1,1",
                poly_over(&[1.0, 1.0, 1.0, 1.0, 16.0, 0.0], 20.0),
            ),
            row("d5:2,2,1#1", complex_pair_map(1.0)),
            row("d5:2,2,1#2", complex_pair_map(-1.0)),
            row("d5:3,1,1", poly_over(&[1.0, 2.0, 3.0, 24.0, 0.0], 30.0)),
            row("d5:3,2", poly_over(&[2.0, 1.0, 12.0, 0.0], 15.0)),
            row("d5:4,1", poly_over(&[1.0, 3.0, 16.0, 0.0], 20.0)),
            row("d5:5", poly_over(&[1.0, 4.0, 0.0], 5.0)),
        ],
        _ => vec![],
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub row_id: String,
    pub pattern: Vec<usize>,
    #[serde(with = "crate::report::complex_vec")]
    pub params: Vec<Complex64>,
    /// Coefficients of the (polynomial) Newton map, highest degree first.
    pub newton_coeffs: Polynomial,
    pub matched: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableReport {
    pub d: usize,
    pub rows: Vec<TableRow>,
    pub expected_rows: usize,
    pub unmatched_reference: Vec<String>,
    pub all_matched: bool,
}

/// Compares [`enumerate`] against the reference rows; each computed row
/// must match a distinct reference map within [`TABLE_TOL`].
pub fn verify_table(d: usize) -> Result<TableReport, Error> {
    let computed = enumerate(d)?;
    let golden = golden_rows(d);
    let mut used = vec![false; golden.len()];
    let rows: Vec<TableRow> = computed
        .iter()
        .map(|r| {
            let hit = golden
                .iter()
                .enumerate()
                .find(|(i, g)| !used[*i] && g.newton.maps_equal(&r.newton, TABLE_TOL));
            let matched = hit.map(|(i, g)| {
                used[i] = true;
                g.id.to_string()
            });
            TableRow {
                row_id: r.row_id.clone(),
                pattern: r.pattern.parts().to_vec(),
                params: r.params.clone(),
                newton_coeffs: r.newton.num().clone(),
                matched,
            }
        })
        .collect();
    let unmatched_reference: Vec<String> = golden
        .iter()
        .zip(&used)
        .filter(|(_, u)| !**u)
        .map(|(g, _)| g.id.to_string())
        .collect();
    let all_matched = rows.len() == golden.len() && rows.iter().all(|r| r.matched.is_some());
    Ok(TableReport {
        d,
        rows,
        expected_rows: golden.len(),
        unmatched_reference,
        all_matched,
    })
}
