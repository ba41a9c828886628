use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};
use tropsev::arith::{det, dot, primitive, q, qdot, QVec};
use tropsev::enumeration::{random_floor_decomposed_curve, random_h_transverse_polygon};
use tropsev::floors::{self, basic_floor_to_floor_elevators, cycle_complexity, cycles, projection_degree, vertical_complexity};
use tropsev::moves::{genus_reduction_path, snapshots};
use tropsev::polygon::LatticePolygon;
use tropsev::realizability::{find_special_subgraphs, SpecialKind};
use tropsev::tropical::{slope_multiplicity, Curve};

fn curve(seed: u64, w: i64, h: i64) -> (LatticePolygon, Curve) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = random_h_transverse_polygon(&mut rng, w, h);
    let (c, _) = random_floor_decomposed_curve(&mut rng, &p).unwrap();
    (p, c)
}

/// All edge sets forming a single cycle, by brute force over subsets.
fn brute_cycles(c: &Curve) -> BTreeSet<BTreeSet<usize>> {
    let ids: Vec<usize> = c.edges.keys().copied().collect();
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << ids.len()) {
        let es: Vec<usize> = (0..ids.len()).filter(|i| mask >> i & 1 == 1).map(|i| ids[i]).collect();
        let mut deg: BTreeMap<usize, usize> = BTreeMap::new();
        for e in &es {
            let ed = &c.edges[e];
            *deg.entry(ed.v).or_default() += 1;
            *deg.entry(ed.w).or_default() += 1;
        }
        if deg.values().any(|&d| d != 2) {
            continue;
        }
        // Connected: walk from one vertex.
        let start = *deg.keys().next().unwrap();
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for e in &es {
                let ed = &c.edges[e];
                for (a, b) in [(ed.v, ed.w), (ed.w, ed.v)] {
                    if a == v && seen.insert(b) {
                        stack.push(b);
                    }
                }
            }
        }
        if seen.len() == deg.len() {
            out.insert(es.into_iter().collect());
        }
    }
    out
}

/// A cycle mapping onto a segment with one vertex over each end.
fn is_flattened(c: &Curve, es: &BTreeSet<usize>) -> bool {
    let slopes: Vec<[i64; 2]> = es.iter().map(|e| c.edges[e].slope).filter(|s| *s != [0, 0]).collect();
    let Some(&d) = slopes.first() else { return false };
    if slopes.iter().any(|&s| det(s, d) != 0) {
        return false;
    }
    let vs: BTreeSet<usize> = es.iter().flat_map(|e| [c.edges[e].v, c.edges[e].w]).collect();
    let vals: Vec<_> = vs.iter().map(|v| qdot(&c.vertices[v].pos, d)).collect();
    let (lo, hi) = (vals.iter().min().unwrap(), vals.iter().max().unwrap());
    lo != hi && vals.iter().filter(|x| *x == lo).count() == 1 && vals.iter().filter(|x| *x == hi).count() == 1
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_curves_are_well_formed(seed in any::<u64>()) {
        let (p, c) = curve(seed, 6, 4);
        c.validate().unwrap();
        prop_assert!(c.is_dual_to(&p));
        let weights: i64 = c.vertices.values().map(|v| v.weight as i64).sum();
        prop_assert_eq!(c.genus(), c.betti1() + weights);
        prop_assert_eq!(c.betti1(), c.edges.len() as i64 - c.vertices.len() as i64 + 1);
        for e in c.edges.values().filter(|e| e.slope != [0, 0]) {
            let (prim, m) = primitive(e.slope);
            prop_assert_eq!(slope_multiplicity(e.slope).unwrap(), m);
            prop_assert_eq!([m * prim[0], m * prim[1]], e.slope);
        }
    }

    #[test]
    fn evaluation_commutes_with_translation(seed in any::<u64>(), a in -20i64..20, b in -20i64..20, d in 1i64..5) {
        let (_, c) = curve(seed, 5, 3);
        let t: QVec = [q(a) / q(d), q(b)];
        let moved: Vec<QVec> = c.evaluate().iter().map(|x| [&x[0] + &t[0], &x[1] + &t[1]]).collect();
        prop_assert_eq!(c.translate(&t).evaluate(), moved);
    }

    #[test]
    fn stratum_dimension_is_coordinate_free(seed in any::<u64>(), k in -3i64..=3) {
        let (_, c) = curve(seed, 5, 3);
        let before = c.combinatorial_type().stratum_dimension().unwrap();
        for u in [[[1, k], [0, 1]], [[0, 1], [1, 0]], [[-1, 0], [k, 1]]] {
            prop_assert_eq!(c.transform(&u).combinatorial_type().stratum_dimension().unwrap(), before);
        }
        if c.genus() == 0 {
            let (actual, expected) = before;
            prop_assert_eq!(Some(actual), expected);
        }
    }

    #[test]
    fn basic_elevators_end_on_opposite_slopes(seed in any::<u64>()) {
        let (_, c) = curve(seed, 6, 4);
        for b in basic_floor_to_floor_elevators(&c).unwrap() {
            for v in [b.bottom, b.top] {
                let mut xs: Vec<i64> = c
                    .star(v)
                    .into_iter()
                    .map(|g| (g, c.germ_slope(g)))
                    .filter(|(g, s)| {
                        *s != [0, 0] && !matches!(g, tropsev::tropical::Germ::Edge(e, _) if b.edges.contains(e))
                    })
                    .map(|(_, s)| s[0])
                    .collect();
                xs.sort();
                prop_assert_eq!(xs, vec![-1, 1]);
            }
        }
    }

    #[test]
    fn vertical_complexity_is_a_minimum(seed in any::<u64>()) {
        let (_, c) = curve(seed, 5, 4);
        prop_assume!(c.edges.len() <= 12);
        let cys = cycles(&c).unwrap();
        let brute = brute_cycles(&c);
        prop_assert_eq!(cys.iter().map(|o| o.edges.clone()).collect::<BTreeSet<_>>(), brute);
        let min = cys.iter().map(|o| cycle_complexity(&c, o).unwrap()).min();
        prop_assert_eq!(vertical_complexity(&c).unwrap(), min);
    }

    #[test]
    fn projections_have_constant_fibers(seed in any::<u64>(), m0 in -3i64..=3, m1 in -3i64..=3) {
        let (_, c) = curve(seed, 6, 4);
        let m = [m0, m1];
        let contracts = c.edges.values().any(|e| e.slope != [0, 0] && dot(e.slope, m) == 0)
            || c.legs.iter().any(|l| !l.is_contracted() && dot(l.slope, m) == 0);
        prop_assume!(!contracts && m != [0, 0]);
        prop_assert!(projection_degree(&c, m).unwrap().verified);
    }
}

/// States along reduction paths contain flattened cycles and contracted
/// pieces; detection must agree with brute force there.
#[test]
fn special_subgraphs_match_brute_force() {
    let (mut checked, mut flat_seen) = (0, 0);
    for seed in 0..12 {
        let p = LatticePolygon::triangle(3);
        let (c, _) = random_floor_decomposed_curve(&mut ChaCha8Rng::seed_from_u64(seed), &p).unwrap();
        if c.genus() == 0 {
            continue;
        }
        let path = genus_reduction_path(&c, &p, 0).unwrap();
        for cert in &path.certificates {
            for s in snapshots(cert).unwrap() {
                if s.edges.len() > 16 || !floors::is_floor_decomposed(&s) {
                    continue;
                }
                let found = find_special_subgraphs(&s);
                assert_eq!(found, find_special_subgraphs(&s));
                let flat: BTreeSet<BTreeSet<usize>> = found
                    .iter()
                    .filter(|x| x.kind == SpecialKind::FlattenedCycle)
                    .map(|x| x.edges.clone())
                    .collect();
                let brute: BTreeSet<BTreeSet<usize>> =
                    brute_cycles(&s).into_iter().filter(|es| is_flattened(&s, es)).collect();
                assert_eq!(flat, brute);
                flat_seen += flat.len();
                let elliptic: BTreeSet<usize> = found
                    .iter()
                    .filter(|x| x.kind == SpecialKind::EllipticComponent)
                    .flat_map(|x| x.vertices.clone())
                    .collect();
                let expect: BTreeSet<usize> = s
                    .vertices
                    .values()
                    .filter(|v| {
                        let loops = s.edges.values().filter(|e| e.is_loop() && e.v == v.id).count();
                        (v.weight == 1 && loops == 0) || (v.weight == 0 && loops == 1)
                    })
                    .map(|v| v.id)
                    .collect();
                assert_eq!(elliptic, expect);
                checked += 1;
            }
        }
    }
    assert!(checked > 0 && flat_seen > 0, "{checked} {flat_seen}");
}
