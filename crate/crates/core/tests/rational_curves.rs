use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tropsev::arith::{q, Q};
use tropsev::enumeration::random_h_transverse_polygon;
use tropsev::poly::Ring;
use tropsev::polygon::{LatticePolygon, TangencyProfile};
use tropsev::rational::*;

fn parametrization(seed: u64, w: i64, h: i64) -> RationalParametrization {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = random_h_transverse_polygon(&mut rng, w, h);
    RationalParametrization::random(&p, &TangencyProfile::trivial(&p), seed).unwrap()
}

fn small() -> impl Strategy<Value = [i64; 2]> {
    (-4i64..=4, -4i64..=4).prop_map(|(a, b)| [a, b])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn derivative_of_pullback(seed in any::<u64>(), m in small()) {
        let r = parametrization(seed, 4, 3);
        let (n, d) = monomial_pullback(&r, m).fraction();
        let (ln, ld) = log_derivative(&r, m).fraction();
        // (n/d)' = (n/d) * (ln/ld), cleared of denominators.
        let lhs = n.derivative().rmul(&d).rsub(&n.rmul(&d.derivative())).rmul(&ld);
        let rhs = n.rmul(&d).rmul(&ln);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pullback_is_a_homomorphism(seed in any::<u64>(), a in small(), b in small(), t in -50i64..50) {
        let r = parametrization(seed, 4, 3);
        let sum = monomial_pullback(&r, [a[0] + b[0], a[1] + b[1]]);
        let prod = monomial_pullback(&r, a).mul(&monomial_pullback(&r, b));
        prop_assert_eq!(&sum.constant, &prod.constant);
        let pt = Q::new(t.into(), 7.into());
        match (sum.eval(&pt), prod.eval(&pt)) {
            (Ok(x), Ok(y)) => prop_assert_eq!(x, y),
            (x, y) => prop_assert_eq!(x.is_err(), y.is_err()),
        }
    }

    #[test]
    fn boundary_divisors_have_degree_zero(seed in any::<u64>(), m in small()) {
        let r = parametrization(seed, 6, 4);
        prop_assert_eq!(monomial_pullback(&r, m).degree(), 0);
        let rel = boundary_divisor_relations(&r.polygon, &r.profile).unwrap();
        prop_assert_eq!(rel.x.iter().map(|t| t.coefficient).sum::<i64>(), 0);
        prop_assert_eq!(rel.y.iter().map(|t| t.coefficient).sum::<i64>(), 0);
        // Logarithmic derivatives have no residue at infinity.
        prop_assert_eq!(log_derivative(&r, m).residue_sum(), q(0));
    }

    #[test]
    fn side_choice_is_bounded_by_width(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_h_transverse_polygon(&mut rng, 6, 4);
        for k in 0..p.sides().len() {
            let c = choose_side_l(&p, k).unwrap();
            prop_assert!(c.pairing > 0 && c.pairing <= c.width);
        }
    }

    #[test]
    fn tacnode_polynomial_agrees_with_evaluation(a in 1i64..=6, b in 1i64..=6, num in 2i64..40, den in 1i64..9) {
        let c = Q::new(num.into(), den.into());
        prop_assume!(c != q(1));
        let poly = tacnode_a_polynomial(a, b).unwrap();
        prop_assert_eq!(poly.eval(&c), tacnode_test_height2(a, b, &c).unwrap().a_coeff);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn nodes_count_interior_points(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_h_transverse_polygon(&mut rng, 4, 3);
        let prof = TangencyProfile::trivial(&p);
        prop_assume!(prof.size() <= 12);
        let (_, rep, _) = generic_parametrization(&p, &prof, seed, 5).unwrap();
        prop_assert_eq!(rep.count, p.interior_lattice_points().len());
        prop_assert!(rep.all_transverse);
        prop_assert!(rep.nodes.iter().all(|n| n.transverse));
    }
}

#[test]
fn nodes_of_named_polygons() {
    for (p, nodes) in [
        (LatticePolygon::triangle(4), 3),
        (LatticePolygon::square(2), 1),
        (LatticePolygon::kite(2, 3).unwrap(), 4),
        (LatticePolygon::new(vec![[0, 0], [2, 1], [5, 0], [0, -1]]).unwrap(), 4),
    ] {
        let (_, rep, _) = generic_parametrization(&p, &TangencyProfile::trivial(&p), 1, 5).unwrap();
        assert_eq!(rep.count, nodes, "{:?}", p.vertices());
        assert_eq!(rep.count, p.interior_lattice_points().len());
    }
}

