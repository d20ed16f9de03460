use newton_core::classifier::{
    enumerate, is_exceptional_family, verify_table, MultiplicityPattern,
};
use newton_core::newton::{
    characterize, count_attracting, exceptional_points, fixed_points, newton_map,
};
use newton_core::parse::parse_rational_map;
use newton_core::poly::Polynomial;
use newton_core::rational::RationalMap;
use newton_core::sphere::SpherePoint;
use newton_core::verify::equal_up_to_scalar;

const ORIGIN: SpherePoint = SpherePoint::Finite(num_complex::Complex64::new(0.0, 0.0));

#[test]
fn row_counts() {
    for (d, rows) in [(3, 3), (4, 5), (5, 8)] {
        assert_eq!(enumerate(d).unwrap().len(), rows, "d = {d}");
        let table = verify_table(d).unwrap();
        assert!(
            table.all_matched,
            "d = {d}: {:?}",
            table.unmatched_reference
        );
        assert_eq!(table.expected_rows, rows);
    }
}

#[test]
fn every_result_is_an_exceptional_polynomial_newton_map() {
    for d in 3..=5 {
        for res in enumerate(d).unwrap() {
            let n = &res.newton;
            let id = &res.row_id;
            assert!(n.is_polynomial(), "{id}");
            let fps = fixed_points(n).unwrap();
            let zero = fps
                .iter()
                .find(|f| f.location.chordal_distance(&ORIGIN) < 1e-9)
                .expect("0 fixed");
            assert!(zero.klass.is_attracting(), "{id}");
            let inf = fps
                .iter()
                .find(|f| f.location.is_infinity())
                .expect("inf fixed");
            assert!(inf.multiplier.norm() < 1e-9, "{id}");
            // 0 is exceptional for the conjugate by 1/z, i.e. inf here and
            // 0 in the original z^d/p picture; both are attracting
            assert_eq!(count_attracting(n).unwrap().0, 2, "{id}");
            assert!(
                exceptional_points(n)
                    .unwrap()
                    .contains(&SpherePoint::Infinity),
                "{id}"
            );
            assert!(is_exceptional_family(&res.p).unwrap(), "{id}");
        }
    }
}

#[test]
fn results_characterize_back_to_z_d_over_p() {
    for d in 3..=5 {
        for res in enumerate(d).unwrap() {
            let rep = characterize(&res.newton).unwrap();
            assert!(rep.is_newton, "{}: {:?}", res.row_id, rep.reason);
            let zd = Polynomial::monomial(1.0.into(), d);
            let want = RationalMap::reduce(zd, res.p.clone()).unwrap();
            assert!(
                equal_up_to_scalar(rep.reconstructed.as_ref().unwrap(), &want, 1e-6),
                "{}",
                res.row_id
            );
        }
    }
}

#[test]
fn patterns_cover_partitions_with_a_multiple_part() {
    let labels: Vec<String> = MultiplicityPattern::all(4)
        .iter()
        .map(|p| p.label())
        .collect();
    assert!(labels.iter().any(|l| l == "1,1,1,1"));
    assert!(labels.iter().any(|l| l == "2,1,1"));
}

#[test]
fn z_times_power_of_unity_polynomial_is_exceptional_at_zero() {
    for d in [3, 4] {
        for m in [1, 2] {
            let src = format!("z(z^{}-1)^{m}", d - 1);
            let n = newton_map(&parse_rational_map(&src).unwrap()).unwrap();
            let ex = exceptional_points(&n).unwrap();
            assert!(
                ex.iter().any(|z| z.chordal_distance(&ORIGIN) < 1e-9),
                "{src}: {ex:?}"
            );
        }
    }
}
