//! Simultaneous root finding with multiplicity clustering.
//!
//! Roots are approximated with the Aberth–Ehrlich iteration, grouped into
//! clusters of numerically coincident approximations, and each cluster is
//! replaced by a single polished root carrying the cluster size as its
//! multiplicity.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use crate::poly::Polynomial;
use crate::Error;

pub const DEFAULT_TOL: f64 = 1e-12;
pub const MAX_ITERATIONS: usize = 500;

/// Fixed clustering radius, relative to `1 + |root|`.
pub const CLUSTER_RADIUS: f64 = 1e-6;

/// Relative uncertainty assumed for coefficients that come out of earlier
/// floating-point work. A k-fold root of such a polynomial splits into k
/// approximations spread over roughly the k-th root of this.
pub const COEFF_NOISE: f64 = 1e-12;

/// A group accepted through the noise test must be this much tighter than
/// its distance to the nearest other approximation. A triple root far from
/// the origin in a high-degree polynomial can legitimately split by a few
/// percent of the gap to its neighbours.
pub const SEPARATION_RATIO: f64 = 1e-1;

/// Largest spread, relative to `1 + |centroid|`, the noise test accepts.
pub const MAX_NOISE_SPREAD: f64 = 1e-2;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Root {
    #[serde(with = "crate::report::complex")]
    pub value: Complex64,
    pub multiplicity: usize,
}

/// Distinct roots of a polynomial with their multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
#[serde(transparent)]
pub struct RootList {
    entries: Vec<Root>,
}

impl RootList {
    pub fn new(entries: Vec<Root>) -> Self {
        Self { entries }
    }

    pub fn entries(&self) -> &[Root] {
        &self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Root> {
        self.entries.iter()
    }

    /// Number of distinct roots.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sum of multiplicities.
    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(|r| r.multiplicity).sum()
    }

    /// The root closest to `z` together with its distance.
    pub fn nearest(&self, z: Complex64) -> Option<(Root, f64)> {
        self.entries
            .iter()
            .map(|r| (*r, (r.value - z).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
    }

    /// Iterator of `(value, multiplicity)` pairs.
    pub fn pairs(&self) -> impl Iterator<Item = (Complex64, usize)> + '_ {
        self.entries.iter().map(|r| (r.value, r.multiplicity))
    }
}

impl<'a> IntoIterator for &'a RootList {
    type Item = &'a Root;
    type IntoIter = std::slice::Iter<'a, Root>;

    fn into_iter(self) -> Self::IntoIter {
        self.entries.iter()
    }
}

/// All roots of a nonconstant polynomial, counted with multiplicity.
///
/// Exact zero roots (trailing zero coefficients) are split off first. The
/// remaining factor is solved with Aberth–Ehrlich iteration from a circle of
/// radius `1 + max |c_i / c_lead|`; an approximation is frozen once its
/// correction falls below `tol * (1 + |z|)` or its residual reaches the
/// rounding level.
pub fn find_roots(p: &Polynomial, tol: f64) -> Result<RootList, Error> {
    if p.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let coeffs = p.coeffs();
    let zeros = coeffs.iter().rev().take_while(|c| c.norm() == 0.0).count();
    let reduced = Polynomial::new(coeffs[..coeffs.len() - zeros].to_vec()).monic();

    let mut entries = Vec::new();
    if zeros > 0 {
        entries.push(Root {
            value: Complex64::new(0.0, 0.0),
            multiplicity: zeros,
        });
    }
    match reduced.degree() {
        0 => {}
        1 => entries.push(Root {
            value: -reduced.coeff(0),
            multiplicity: 1,
        }),
        _ => {
            let approx = aberth(&reduced, tol)?;
            entries.extend(cluster(&reduced, &approx));
        }
    }
    Ok(RootList::new(entries))
}

fn rounding_bound(p: &Polynomial, z: Complex64) -> f64 {
    let n = p.degree() as f64;
    4.0 * (n + 1.0) * f64::EPSILON * p.eval_abs(z.norm())
}

fn aberth(p: &Polynomial, tol: f64) -> Result<Vec<Complex64>, Error> {
    let n = p.degree();
    let radius = 1.0 + p.coeffs()[1..].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, TAU * k as f64 / n as f64 + 0.4))
        .collect();
    let mut done = vec![false; n];

    for _ in 0..MAX_ITERATIONS {
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (value, slope) = p.eval_with_derivative(z[i]);
            if value.norm() <= rounding_bound(p, z[i]) {
                done[i] = true;
                continue;
            }
            let mut repulsion = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let diff = z[i] - z[j];
                    if diff.norm() > 0.0 {
                        repulsion += diff.inv();
                    }
                }
            }
            let step = if slope.norm() == 0.0 {
                // stationary point: nudge off it
                Complex64::new(1e-3, 1e-3) * (1.0 + z[i].norm())
            } else {
                let ratio = value / slope;
                ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion)
            };
            if !step.re.is_finite() || !step.im.is_finite() {
                let bump = Complex64::new(1e-3, 1e-3) * (1.0 + z[i].norm());
                z[i] += bump;
                continue;
            }
            z[i] -= step;
            if step.norm() <= tol * (1.0 + z[i].norm()) {
                done[i] = true;
            }
        }
        if done.iter().all(|&d| d) {
            return Ok(z);
        }
    }
    Err(Error::NonConvergence {
        degree: n,
        iterations: MAX_ITERATIONS,
    })
}

/// Groups approximations whose inclusion disks overlap (or that lie within
/// [`CLUSTER_RADIUS`]) and returns one polished root per group.
fn cluster(p: &Polynomial, z: &[Complex64]) -> Vec<Root> {
    let n = z.len();
    let radii: Vec<f64> = (0..n)
        .map(|i| {
            let denom: f64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).norm())
                .product();
            let residual = p.eval(z[i]).norm() + rounding_bound(p, z[i]);
            if denom == 0.0 {
                f64::INFINITY
            } else {
                n as f64 * residual / denom
            }
        })
        .collect();

    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        let mut k = i;
        while parent[k] != r {
            let next = parent[k];
            parent[k] = r;
            k = next;
        }
        r
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let d = (z[i] - z[j]).norm();
            let fixed = CLUSTER_RADIUS * (1.0 + z[i].norm().max(z[j].norm()));
            let cap = MAX_NOISE_SPREAD * (1.0 + z[i].norm().max(z[j].norm()));
            if (d <= radii[i] + radii[j] && d <= cap) || d <= fixed {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }

    // k-fold roots perturbed by coefficient noise: the k nearest
    // approximations to z[i], if their spread matches what noise of size
    // COEFF_NOISE produces and they are isolated from everything else.
    let mut derivs = vec![p.clone()];
    for _ in 0..n {
        let next = derivs.last().expect("nonempty").derivative();
        derivs.push(next);
    }
    for i in 0..n {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| (z[a] - z[i]).norm().total_cmp(&(z[b] - z[i]).norm()));
        for k in (2..=n).rev() {
            let members = &order[..k];
            let centroid = members.iter().map(|&j| z[j]).sum::<Complex64>() / k as f64;
            let spread = members
                .iter()
                .map(|&j| (z[j] - centroid).norm())
                .fold(0.0, f64::max);
            let outside = order
                .get(k)
                .map_or(f64::INFINITY, |&j| (z[j] - centroid).norm());
            if spread > SEPARATION_RATIO * outside
                || spread > MAX_NOISE_SPREAD * (1.0 + centroid.norm())
            {
                continue;
            }
            let factorial: f64 = (1..=k).map(|x| x as f64).product();
            let lead = derivs[k].eval(centroid).norm() / factorial;
            let noise = COEFF_NOISE * p.eval_abs(centroid.norm());
            let expected = (noise / lead).powf(1.0 / k as f64);
            if spread <= 4.0 * expected {
                for &j in &members[1..] {
                    let (a, b) = (find(&mut parent, members[0]), find(&mut parent, j));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
                break;
            }
        }
    }

    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut index_of = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if index_of[r] == usize::MAX {
            index_of[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[index_of[r]].push(i);
    }

    groups
        .into_iter()
        .map(|members| {
            let k = members.len();
            let centroid = members.iter().map(|&i| z[i]).sum::<Complex64>() / k as f64;
            let spread = members
                .iter()
                .map(|&i| (z[i] - centroid).norm())
                .fold(0.0, f64::max);
            Root {
                value: polish(p, centroid, k, spread),
                multiplicity: k,
            }
        })
        .collect()
}

/// Newton iteration on the (k-1)-th derivative, which has a simple root at
/// a k-fold root of `p`. Steps that leave the cluster are rejected.
fn polish(p: &Polynomial, start: Complex64, k: usize, spread: f64) -> Complex64 {
    let d0 = p.nth_derivative(k - 1);
    let d1 = d0.derivative();
    let reach = 4.0 * spread + CLUSTER_RADIUS * (1.0 + start.norm());
    let mut z = start;
    let mut best = d0.eval(z).norm();
    for _ in 0..8 {
        let slope = d1.eval(z);
        if slope.norm() == 0.0 {
            break;
        }
        let next = z - d0.eval(z) / slope;
        let value = d0.eval(next).norm();
        if (next - start).norm() > reach
            || value.partial_cmp(&best) != Some(std::cmp::Ordering::Less)
        {
            break;
        }
        best = value;
        z = next;
        if best == 0.0 {
            break;
        }
    }
    z
}
