use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tropsev::arith::QVec;
use tropsev::enumeration::{random_floor_decomposed_curve, random_h_transverse_polygon};
use tropsev::floors::{elevator_multiplicity_bound_check, is_floor_decomposed};
use tropsev::moves::{genus_reduction_path, replay, replay_stretch, snapshots, MoveCertificate, Terminal};
use tropsev::polygon::LatticePolygon;
use tropsev::realizability::realizability_filter;
use tropsev::tropical::Curve;

fn sorted_degree(c: &Curve) -> Vec<[i64; 2]> {
    let mut d = c.degree();
    d.sort();
    d
}

fn fixed_positions(c: &Curve, fixed: &[usize]) -> Vec<QVec> {
    fixed.iter().map(|id| c.vertices[&c.leg(*id).unwrap().v].pos.clone()).collect()
}

fn check_path(p: &LatticePolygon, c: &Curve) -> Result<(), TestCaseError> {
    let path = genus_reduction_path(c, p, 0).map_err(|e| TestCaseError::fail(format!("{e}")))?;
    let genera: Vec<i64> = path.curves.iter().map(Curve::genus).collect();
    prop_assert_eq!(genera.len() as i64, c.genus() + 1);
    prop_assert!(genera.windows(2).all(|w| w[1] == w[0] - 1), "{:?}", genera);
    prop_assert_eq!(*genera.last().unwrap(), 0);
    let degree = sorted_degree(c);
    for cert in &path.certificates {
        check_certificate(p, cert, &degree)?;
    }
    for x in &path.curves {
        prop_assert_eq!(sorted_degree(x), degree.clone());
    }
    Ok(())
}

fn check_certificate(p: &LatticePolygon, cert: &MoveCertificate, degree: &[[i64; 2]]) -> Result<(), TestCaseError> {
    let stretched = matches!(cert.terminal, Terminal::Stretched);
    let replayed = if stretched { replay_stretch(cert) } else { replay(cert, p) };
    prop_assert!(replayed.is_ok(), "{:?}", replayed.err());
    let states = snapshots(cert).unwrap();
    let fixed = fixed_positions(&cert.initial, &cert.fixed);
    for s in &states {
        s.validate().unwrap();
        prop_assert!(s.is_stable());
        prop_assert!(is_floor_decomposed(s));
        prop_assert!(realizability_filter(s).unwrap().is_empty());
        prop_assert!(elevator_multiplicity_bound_check(s, p).unwrap().0);
        prop_assert_eq!(sorted_degree(s), degree.to_vec());
        if !stretched {
            prop_assert_eq!(fixed_positions(s, &cert.fixed), fixed.clone());
        }
    }
    for (s, step) in states[1..].iter().zip(&cert.steps) {
        prop_assert_eq!(&s.combinatorial_type(), &step.ty);
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reduction_paths_are_certified(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_h_transverse_polygon(&mut rng, 4, 3);
        let (c, _) = random_floor_decomposed_curve(&mut rng, &p).unwrap();
        prop_assume!(c.genus() > 0);
        check_path(&p, &c)?;
    }
}

#[test]
fn reduction_of_quartics() {
    let p = LatticePolygon::triangle(4);
    let mut seen = [0; 4];
    for seed in 0..6 {
        let (c, _) = random_floor_decomposed_curve(&mut ChaCha8Rng::seed_from_u64(seed), &p).unwrap();
        seen[c.genus() as usize] += 1;
        check_path(&p, &c).unwrap();
    }
    assert!(seen[1..].iter().sum::<i32>() > 0);
}
