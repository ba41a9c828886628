//! Flattened cycles, elliptic components and contracted elliptic tails,
//! and the midpoint condition they must satisfy inside a basic
//! floor-to-floor elevator of a realizable curve.
//!
//! The filter is a necessary condition only: an empty report means that no
//! violation was found, not that the curve is realizable.

use crate::arith::{Q, QVec};
use crate::error::{Error, Result};
use crate::floors::{self, BasicFloorToFloorElevator};
use crate::tropical::{Curve, Germ};
use std::collections::{BTreeSet, VecDeque};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpecialKind {
    FlattenedCycle,
    EllipticComponent,
    ContractedEllipticTail,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpecialSubgraph {
    pub kind: SpecialKind,
    pub vertices: BTreeSet<usize>,
    pub edges: BTreeSet<usize>,
    /// The vertices over the two ends of a flattened cycle.
    pub endpoints: Option<(usize, usize)>,
}

fn loops_at(c: &Curve, v: usize) -> Vec<usize> {
    c.edges.values().filter(|e| e.v == v && e.w == v).map(|e| e.id).collect()
}

fn flattened(c: &Curve, o: &floors::Cycle) -> Option<SpecialSubgraph> {
    let pts: Vec<&QVec> = o.vertices.iter().map(|v| &c.vertices[v].pos).collect();
    let dir = o
        .edges
        .iter()
        .map(|e| c.edges[e].slope)
        .find(|s| *s != [0, 0])?;
    // Every edge must be parallel to `dir`, which puts all vertices on a line.
    if o.edges.iter().any(|e| crate::arith::det(c.edges[e].slope, dir) != 0) {
        return None;
    }
    let key = |p: &QVec| crate::arith::qdot(p, dir);
    let vals: Vec<Q> = pts.iter().map(|p| key(p)).collect();
    let lo = vals.iter().min()?;
    let hi = vals.iter().max()?;
    let at_lo: Vec<usize> = o.vertices.iter().zip(&vals).filter(|(_, x)| *x == lo).map(|(v, _)| *v).collect();
    let at_hi: Vec<usize> = o.vertices.iter().zip(&vals).filter(|(_, x)| *x == hi).map(|(v, _)| *v).collect();
    if at_lo.len() != 1 || at_hi.len() != 1 || lo == hi {
        return None;
    }
    Some(SpecialSubgraph {
        kind: SpecialKind::FlattenedCycle,
        vertices: o.vertices.clone(),
        edges: o.edges.clone(),
        endpoints: Some((at_lo[0], at_hi[0])),
    })
}

/// Every flattened cycle, elliptic component and contracted elliptic tail.
pub fn find_special_subgraphs(c: &Curve) -> Vec<SpecialSubgraph> {
    let mut out = BTreeSet::new();
    if let Ok(cys) = floors::cycles(c) {
        for o in &cys {
            if let Some(s) = flattened(c, o) {
                out.insert(s);
            }
        }
    }
    for v in c.vertices.values() {
        let loops = loops_at(c, v.id);
        if v.weight == 1 && loops.is_empty() {
            out.insert(SpecialSubgraph {
                kind: SpecialKind::EllipticComponent,
                vertices: BTreeSet::from([v.id]),
                edges: BTreeSet::new(),
                endpoints: None,
            });
        }
        if v.weight == 0 && loops.len() == 1 {
            out.insert(SpecialSubgraph {
                kind: SpecialKind::EllipticComponent,
                vertices: BTreeSet::from([v.id]),
                edges: loops.iter().copied().collect(),
                endpoints: None,
            });
        }
    }
    for e in c.edges.values() {
        if e.is_loop() || e.slope != [0, 0] {
            continue;
        }
        for (v1, v2) in [(e.v, e.w), (e.w, e.v)] {
            let (a, b) = (&c.vertices[&v1], &c.vertices[&v2]);
            if a.weight != 0 {
                continue;
            }
            let star = c.star(v2);
            let loops = loops_at(c, v2);
            let tail = (b.weight == 1 && star == [Germ::Edge(e.id, v2 == e.v)])
                || (b.weight == 0 && loops.len() == 1 && star.len() == 3);
            if tail {
                let mut edges = BTreeSet::from([e.id]);
                edges.extend(loops);
                out.insert(SpecialSubgraph {
                    kind: SpecialKind::ContractedEllipticTail,
                    vertices: BTreeSet::from([v1, v2]),
                    edges,
                    endpoints: None,
                });
            }
        }
    }
    out.into_iter().collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WellSpacedReport {
    pub holds: bool,
    /// Lengths of the parts of `h(E)` below and above `h(O)`.
    pub lower: Q,
    pub upper: Q,
    pub transform: [[i64; 2]; 2],
}

const IDENTITY: [[i64; 2]; 2] = [[1, 0], [0, 1]];

/// Components of `E` minus `O`; edges touching `O` stay attached to their
/// other endpoint.
fn complement_components(c: &Curve, e: &BasicFloorToFloorElevator, o: &SpecialSubgraph) -> Vec<(BTreeSet<usize>, BTreeSet<usize>)> {
    let rest_edges: BTreeSet<usize> = e.edges.difference(&o.edges).copied().collect();
    let rest_vertices: BTreeSet<usize> = e.vertices.difference(&o.vertices).copied().collect();
    let mut seen_e = BTreeSet::new();
    let mut comps = Vec::new();
    for &start in &rest_edges {
        if seen_e.contains(&start) {
            continue;
        }
        let mut ce = BTreeSet::from([start]);
        let mut cv = BTreeSet::new();
        seen_e.insert(start);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            let ed = &c.edges[&x];
            for v in [ed.v, ed.w] {
                if !rest_vertices.contains(&v) {
                    continue;
                }
                cv.insert(v);
                for &y in &rest_edges {
                    let f = &c.edges[&y];
                    if (f.v == v || f.w == v) && seen_e.insert(y) {
                        ce.insert(y);
                        queue.push_back(y);
                    }
                }
            }
        }
        comps.push((cv, ce));
    }
    for &v in &rest_vertices {
        if !comps.iter().any(|(cv, _)| cv.contains(&v)) {
            comps.push((BTreeSet::from([v]), BTreeSet::new()));
        }
    }
    comps
}

/// Checks the midpoint condition for `O` inside `E`, after applying the
/// coordinate change `transform` that makes `E` a vertical basic elevator.
pub fn wellspaced_check(
    c: &Curve,
    e: &BasicFloorToFloorElevator,
    o: &SpecialSubgraph,
    transform: Option<[[i64; 2]; 2]>,
) -> Result<WellSpacedReport> {
    let u = transform.unwrap_or(IDENTITY);
    let c = c.transform(&u);
    let basics = floors::basic_floor_to_floor_elevators(&c)
        .map_err(|_| Error::HypothesesNotMet("coordinates are not floor decomposed".into()))?;
    if !basics.iter().any(|b| b.edges == e.edges && b.bottom == e.bottom && b.top == e.top) {
        return Err(Error::HypothesesNotMet("E is not a basic floor-to-floor elevator".into()));
    }
    if !o.vertices.is_subset(&e.vertices) || !o.edges.is_subset(&e.edges) {
        return Err(Error::HypothesesNotMet("O is not contained in E".into()));
    }
    let comps = complement_components(&c, e, o);
    if comps.len() > 2 {
        return Err(Error::HypothesesNotMet(format!("E minus O has {} components", comps.len())));
    }
    for (cv, ce) in &comps {
        if cv.iter().any(|v| c.vertices[v].weight != 0) {
            return Err(Error::HypothesesNotMet("a component of E minus O has weight".into()));
        }
        let mut spans: Vec<(Q, Q)> = Vec::new();
        for x in ce {
            let ed = &c.edges[x];
            if ed.slope == [0, 0] {
                return Err(Error::HypothesesNotMet("a component of E minus O is contracted".into()));
            }
            let (a, b) = (c.vertices[&ed.v].pos[1].clone(), c.vertices[&ed.w].pos[1].clone());
            spans.push(if a < b { (a, b) } else { (b, a) });
        }
        spans.sort();
        if spans.windows(2).any(|w| w[1].0 < w[0].1) {
            return Err(Error::HypothesesNotMet("a component of E minus O folds over itself".into()));
        }
    }
    let y = |v: &usize| c.vertices[v].pos[1].clone();
    let (lo_e, hi_e) = (y(&e.bottom), y(&e.top));
    let lo_o = o.vertices.iter().map(y).min().unwrap();
    let hi_o = o.vertices.iter().map(y).max().unwrap();
    let lower = &lo_o - &lo_e;
    let upper = &hi_e - &hi_o;
    let holds = (lo_o == lo_e && hi_o == hi_e) || lower == upper;
    Ok(WellSpacedReport { holds, lower, upper, transform: u })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub elevator: BasicFloorToFloorElevator,
    pub special: SpecialSubgraph,
    pub lower: Q,
    pub upper: Q,
    pub transform: [[i64; 2]; 2],
}

/// Coordinate changes tried when looking for basic elevators.
pub const CANDIDATE_TRANSFORMS: [[[i64; 2]; 2]; 3] = [IDENTITY, [[-1, 0], [0, 1]], [[0, 1], [1, 0]]];

/// All pairs `(E, O)` satisfying the hypotheses of the midpoint condition
/// but violating it.
pub fn realizability_filter(c: &Curve) -> Result<Vec<Violation>> {
    if !floors::is_floor_decomposed(c) {
        return Err(Error::NotFloorDecomposed);
    }
    let specials = find_special_subgraphs(c);
    let mut out = Vec::new();
    if specials.is_empty() {
        return Ok(out);
    }
    let mut checked = BTreeSet::new();
    for u in CANDIDATE_TRANSFORMS {
        let Ok(basics) = floors::basic_floor_to_floor_elevators(&c.transform(&u)) else {
            continue;
        };
        for e in &basics {
            for o in &specials {
                if !checked.insert((e.edges.clone(), o.clone())) {
                    continue;
                }
                if let Ok(r) = wellspaced_check(c, e, o, Some(u)) {
                    if !r.holds {
                        out.push(Violation {
                            elevator: e.clone(),
                            special: o.clone(),
                            lower: r.lower,
                            upper: r.upper,
                            transform: u,
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::arith::{q, qr, qv};

    /// Two floors joined by an elevator with a weight-one vertex at height `y`.
    pub fn elliptic_elevator(y: Q) -> Curve {
        let mut c = Curve::new();
        let a = c.add_vertex(qv(0, 0));
        let b = c.add_vertex(qv(1, 1));
        let cc = c.add_vertex(qv(2, 3));
        let u = c.add_weighted_vertex([q(2), y], 1);
        let d = c.add_vertex(qv(2, 10));
        c.add_edge_between(a, b, 1);
        c.add_edge_between(b, cc, 1);
        c.add_edge_between(cc, u, 1);
        c.add_edge_between(u, d, 1);
        c.add_leg(a, [-1, 0]);
        c.add_leg(a, [0, -1]);
        c.add_leg(b, [0, -1]);
        c.add_leg(cc, [1, 1]);
        c.add_leg(d, [-1, 0]);
        c.add_leg(d, [1, 1]);
        c.validate().unwrap();
        c
    }

    /// A weight-two elevator from height 0 to 10 that splits into two
    /// parallel weight-one edges between heights `a` and `b`.
    pub fn flattened_elevator(a: Q, b: Q) -> Curve {
        let mut c = Curve::new();
        let lo = c.add_vertex(qv(0, 0));
        let u1 = c.add_vertex([q(0), a]);
        let u2 = c.add_vertex([q(0), b]);
        let hi = c.add_vertex(qv(0, 10));
        c.add_edge_between(lo, u1, 2);
        c.add_edge_between(u1, u2, 1);
        c.add_edge_between(u1, u2, 1);
        c.add_edge_between(u2, hi, 2);
        c.add_leg(lo, [-1, 0]);
        c.add_leg(lo, [1, -2]);
        c.add_leg(hi, [-1, 2]);
        c.add_leg(hi, [1, 0]);
        c.validate().unwrap();
        c
    }

    #[test]
    fn finds_elliptic_component() {
        let c = elliptic_elevator(qr(13, 2));
        let s = find_special_subgraphs(&c);
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].kind, SpecialKind::EllipticComponent);
        assert_eq!(find_special_subgraphs(&c), s);
    }

    #[test]
    fn finds_flattened_cycle() {
        let c = flattened_elevator(q(3), q(7));
        let s = find_special_subgraphs(&c);
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].kind, SpecialKind::FlattenedCycle);
        assert_eq!(s[0].endpoints, Some((1, 2)));
    }

    #[test]
    fn finds_contracted_tail() {
        let mut c = elliptic_elevator(qr(13, 2));
        let u = 3;
        c.vertices.get_mut(&u).unwrap().weight = 0;
        let t = c.add_weighted_vertex([q(2), qr(13, 2)], 1);
        c.insert_edge(u, t, q(1), [0, 0]);
        let s = find_special_subgraphs(&c);
        assert!(s.iter().any(|x| x.kind == SpecialKind::ContractedEllipticTail && x.vertices == BTreeSet::from([u, t])));
    }

    #[test]
    fn midpoint_condition() {
        let good = elliptic_elevator(qr(13, 2));
        assert!(realizability_filter(&good).unwrap().is_empty());
        let bad = elliptic_elevator(qr(16, 3));
        let v = realizability_filter(&bad).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].lower, qr(7, 3));
        assert_eq!(v[0].upper, qr(14, 3));
    }

    #[test]
    fn flattened_cycle_spacing() {
        let c = flattened_elevator(q(3), q(7));
        assert!(realizability_filter(&c).unwrap().is_empty());
        let c = flattened_elevator(q(2), q(7));
        assert_eq!(realizability_filter(&c).unwrap().len(), 1);
    }

    #[test]
    fn full_span_is_fine() {
        // The flattened cycle is the whole elevator.
        let mut c = Curve::new();
        let lo = c.add_vertex(qv(0, 0));
        let hi = c.add_vertex(qv(0, 10));
        c.add_edge_between(lo, hi, 1);
        c.add_edge_between(lo, hi, 1);
        c.add_leg(lo, [-1, 0]);
        c.add_leg(lo, [1, -2]);
        c.add_leg(hi, [-1, 2]);
        c.add_leg(hi, [1, 0]);
        let s = find_special_subgraphs(&c);
        let e = &floors::basic_floor_to_floor_elevators(&c).unwrap()[0];
        let r = wellspaced_check(&c, e, &s[0], None).unwrap();
        assert!(r.holds);
    }

    #[test]
    fn invariant_under_reflection_and_translation() {
        for y in [qr(13, 2), qr(16, 3)] {
            let c = elliptic_elevator(y);
            let base = realizability_filter(&c).unwrap().len();
            let t = c.translate(&[qr(1, 7), q(-4)]);
            assert_eq!(realizability_filter(&t).unwrap().len(), base);
            let r = c.transform(&[[-1, 0], [0, 1]]);
            assert_eq!(realizability_filter(&r).unwrap().len(), base);
        }
    }
}
