mod common;

use common::{function, mobius, point, polynomial_function, unit_scale};
use num_complex::Complex64;
use proptest::prelude::*;

use newton_core::conjugacy::{normalize_two_fixed, to_polynomial_newton, AffineScaling};
use newton_core::newton::{characterize, fixed_points, newton_map};
use newton_core::poly::Polynomial;
use newton_core::rational::RationalMap;
use newton_core::sphere::SpherePoint;

/// Relative condition number of evaluating `p` at `z` from its coefficients.
fn condition(p: &Polynomial, z: Complex64) -> f64 {
    let mut t = 0.0;
    for k in (0..=p.degree()).rev() {
        t = t * z.norm() + p.coeff(k).norm();
    }
    t / p.eval(z).norm()
}

fn sorted_multipliers(n: &RationalMap) -> Vec<(f64, f64)> {
    let mut v: Vec<(f64, f64)> = fixed_points(n)
        .unwrap()
        .iter()
        .map(|f| (f.multiplier.re, f.multiplier.im))
        .collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // scaling pushes roots outward; past total degree 10, repeated poles
    // of the expanded source are only recoverable to about 1e-7
    #[test]
    fn newton_commutes_with_affine_scaling(
        f in function().prop_filter("source degree <= 10", |f| f.num_degree() + f.den_degree() <= 10),
        a in unit_scale(),
        b in point(1.0),
        lambda in unit_scale(),
        zs in prop::collection::vec(point(2.0), 50),
    ) {
        let t = AffineScaling::new(a, b, lambda).unwrap();
        let s = newton_core::conjugacy::scale_source(&f.map(), &t);
        let ns = newton_map(&s).unwrap();
        let nr = newton_map(&f.map()).unwrap();
        let tt = t.transform();
        for z in zs {
            // T(N_S(T^-1 z)) = N_R(z)
            let pre = tt.inverse().apply_finite(z);
            if ns.den().eval(pre).norm() < 1e-6 * ns.den().max_abs_coeff()
                || nr.den().eval(z).norm() < 1e-6 * nr.den().max_abs_coeff()
            {
                continue;
            }
            let lhs = tt.apply_finite(ns.eval(pre));
            let rhs = nr.eval(z);
            // high-multiplicity poles make monomial evaluation ill-conditioned
            let kappa = [condition(ns.num(), pre), condition(ns.den(), pre), condition(nr.num(), z), condition(nr.den(), z)]
                .into_iter()
                .fold(1.0, f64::max);
            let tol = (1e-11 * kappa).max(1e-8);
            prop_assert!((lhs - rhs).norm() < tol * (1.0 + rhs.norm()), "{} vs {} (condition {:e})", lhs, rhs, kappa);
        }
    }

    // Möbius conjugation loses about a digit per degree in the monomial
    // basis, so stay within the range where 1e-7 is meaningful
    #[test]
    fn two_point_normalization_keeps_multipliers(
        f in function().prop_filter("degree <= 6", |f| f.newton_degree() <= 6),
        pick in (0usize..64, 0usize..64),
    ) {
        let n = newton_map(&f.map()).unwrap();
        let fps = fixed_points(&n).unwrap();
        let (i, j) = (pick.0 % fps.len(), pick.1 % fps.len());
        // close pairs force a distorting transform, whose error grows like
        // its condition number to the power deg N
        prop_assume!(i != j && fps[i].location.chordal_distance(&fps[j].location) >= 0.8);
        let (m, phi) = normalize_two_fixed(&n, fps[i].location, fps[j].location).unwrap();
        prop_assert_eq!(m.degree(), n.degree());
        let got = fixed_points(&m).unwrap();
        let at0 = got.iter().find(|g| g.location.chordal_distance(&SpherePoint::Finite(0.0.into())) < 1e-6).unwrap();
        prop_assert!((at0.multiplier - fps[i].multiplier).norm() < 1e-7);
        prop_assert!(phi.apply(fps[j].location).is_infinity());
        let (a, b) = (sorted_multipliers(&n), sorted_multipliers(&m));
        prop_assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x.0 - y.0).abs() < 1e-7 && (x.1 - y.1).abs() < 1e-7, "{:?} vs {:?}", a, b);
        }
    }

    #[test]
    fn polynomial_form_has_no_finite_poles(f in polynomial_function(), psi in mobius()) {
        let n = newton_map(&f.map()).unwrap();
        prop_assume!(n.degree() >= 2);
        let moved = n.conjugate_by_mobius(&psi);
        prop_assume!(moved.degree() <= 6);
        let (back, _) = to_polynomial_newton(&moved).unwrap();
        let rep = characterize(&back).unwrap();
        prop_assert!(rep.is_newton, "{:?}", rep.reason);
        prop_assert!(rep.reconstructed.unwrap().den().is_constant());
    }
}
