#![allow(dead_code)]

use num_complex::Complex64;
use proptest::prelude::*;

use newton_core::mobius::MobiusTransform;
use newton_core::poly::Polynomial;
use newton_core::rational::RationalMap;

pub const MIN_SEPARATION: f64 = 0.3;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// A point of the disk of radius `r`.
pub fn point(r: f64) -> impl Strategy<Value = Complex64> {
    (0.0..1.0f64, 0.0..std::f64::consts::TAU)
        .prop_map(move |(t, a)| Complex64::from_polar(r * t.sqrt(), a))
}

pub fn unit_scale() -> impl Strategy<Value = Complex64> {
    (0.5..2.0f64, 0.0..std::f64::consts::TAU).prop_map(|(r, a)| Complex64::from_polar(r, a))
}

/// Greedily keeps points at least [`MIN_SEPARATION`] apart.
pub fn separate<T: Copy>(items: Vec<(Complex64, T)>) -> Vec<(Complex64, T)> {
    let mut kept: Vec<(Complex64, T)> = Vec::new();
    for it in items {
        if kept.iter().all(|k| (k.0 - it.0).norm() >= MIN_SEPARATION) {
            kept.push(it);
        }
    }
    kept
}

/// Well-separated roots and poles with multiplicities at most 3.
#[derive(Clone, Debug)]
pub struct Function {
    pub scale: Complex64,
    pub roots: Vec<(Complex64, usize)>,
    pub poles: Vec<(Complex64, usize)>,
}

impl Function {
    pub fn map(&self) -> RationalMap {
        RationalMap::from_roots(self.scale, &self.roots, &self.poles)
    }

    pub fn num_degree(&self) -> usize {
        self.roots.iter().map(|r| r.1).sum()
    }

    pub fn den_degree(&self) -> usize {
        self.poles.iter().map(|p| p.1).sum()
    }

    pub fn newton_degree(&self) -> usize {
        let (m, n) = (self.roots.len(), self.poles.len());
        if self.num_degree() == self.den_degree() + 1 {
            m + n - 1
        } else {
            m + n
        }
    }
}

/// Functions whose Newton map has degree in `2..=8`.
pub fn function() -> impl Strategy<Value = Function> {
    (
        unit_scale(),
        prop::collection::vec((point(1.5), 1..=3usize, any::<bool>()), 2..=8),
    )
        .prop_filter_map(
            "needs a root and a Newton degree of 2..=8",
            |(scale, pts)| {
                let pts = separate(
                    pts.into_iter()
                        .map(|(z, k, is_root)| (z, (k, is_root)))
                        .collect(),
                );
                let roots: Vec<_> = pts
                    .iter()
                    .filter(|p| p.1 .1)
                    .map(|p| (p.0, p.1 .0))
                    .collect();
                let poles: Vec<_> = pts
                    .iter()
                    .filter(|p| !p.1 .1)
                    .map(|p| (p.0, p.1 .0))
                    .collect();
                let f = Function {
                    scale,
                    roots,
                    poles,
                };
                (!f.roots.is_empty() && (2..=8).contains(&f.newton_degree())).then_some(f)
            },
        )
}

/// Polynomials with separated roots, no poles.
pub fn polynomial_function() -> impl Strategy<Value = Function> {
    (
        unit_scale(),
        prop::collection::vec((point(1.5), 1..=3usize), 2..=6),
    )
        .prop_filter_map("needs two distinct roots", |(scale, pts)| {
            let roots = separate(pts);
            (roots.len() >= 2).then_some(Function {
                scale,
                roots,
                poles: Vec::new(),
            })
        })
}

/// Dense polynomial with coefficients in the unit box and nonzero lead.
pub fn dense_polynomial(max_degree: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 2..=max_degree + 1).prop_filter_map(
        "leading coefficient bounded away from 0",
        |cs| {
            (c(cs[0].0, cs[0].1).norm() > 0.2)
                .then(|| Polynomial::new(cs.into_iter().map(|(re, im)| c(re, im)).collect()))
        },
    )
}

/// A Möbius transform with entries in the unit box and `|ad - bc| >= 0.3`.
/// Möbius maps whose matrix has condition number at most 4; conjugation
/// error grows like its D-th power.
pub fn mobius() -> impl Strategy<Value = MobiusTransform> {
    prop::array::uniform4((-1.0..1.0f64, -1.0..1.0f64)).prop_filter_map("well conditioned", |e| {
        let [a, b, cc, d] = e.map(|(re, im)| c(re, im));
        let det = (a * d - b * cc).norm();
        let frob = a.norm_sqr() + b.norm_sqr() + cc.norm_sqr() + d.norm_sqr();
        // singular values squared are (F ± sqrt(F^2 - 4 det^2)) / 2
        let disc = (frob * frob - 4.0 * det * det).max(0.0).sqrt();
        let kappa = ((frob + disc) / (frob - disc)).sqrt();
        (det >= 0.3 && kappa <= 4.0).then(|| MobiusTransform::new(a, b, cc, d).unwrap())
    })
}

pub fn rel_close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + b.norm())
}
