//! Floor decompositions, elevators, cycles and the width bound on
//! elevator multiplicities.

use crate::arith::{dot, gcd, primitive, q, qdot, IVec, Q, QVec};
use crate::error::{Error, Result};
use crate::polygon::LatticePolygon;
use crate::tropical::Curve;
use num::Signed;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// Bound on the first Betti number for exhaustive cycle enumeration.
pub const MAX_CYCLE_RANK: i64 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Part {
    Edge(usize),
    Leg(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Floor {
    pub vertices: BTreeSet<usize>,
    pub edges: BTreeSet<usize>,
    pub legs: BTreeSet<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FloorDecomposition {
    pub elevators: Vec<Part>,
    /// Ordered by the lowest vertex height, then by vertex id.
    pub floors: Vec<Floor>,
    /// Components carrying no non-contracted edge or leg.
    pub detached: Vec<BTreeSet<usize>>,
    pub contracted_legs: Vec<usize>,
}

impl FloorDecomposition {
    pub fn floor_of(&self, v: usize) -> Option<usize> {
        self.floors.iter().position(|f| f.vertices.contains(&v))
    }
}

pub fn is_floor_decomposed(c: &Curve) -> bool {
    let ok = |s: IVec| s[0].abs() <= 1;
    c.edges.values().all(|e| ok(e.slope)) && c.legs.iter().all(|l| ok(l.slope))
}

fn is_elevator_slope(s: IVec) -> bool {
    s[0] == 0 && s[1] != 0
}

pub fn decompose(c: &Curve) -> Result<FloorDecomposition> {
    if !is_floor_decomposed(c) {
        return Err(Error::NotFloorDecomposed);
    }
    let mut elevators: Vec<Part> = c
        .edges
        .values()
        .filter(|e| is_elevator_slope(e.slope))
        .map(|e| Part::Edge(e.id))
        .collect();
    elevators.extend(c.legs.iter().filter(|l| is_elevator_slope(l.slope)).map(|l| Part::Leg(l.id)));

    let mut seen = BTreeSet::new();
    let mut floors = Vec::new();
    let mut detached = Vec::new();
    for &s in c.vertices.keys() {
        if !seen.insert(s) {
            continue;
        }
        let mut f = Floor::default();
        f.vertices.insert(s);
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for e in c.edges.values() {
                if (e.v != v && e.w != v) || is_elevator_slope(e.slope) {
                    continue;
                }
                f.edges.insert(e.id);
                let u = e.other(v);
                if seen.insert(u) {
                    f.vertices.insert(u);
                    queue.push_back(u);
                }
            }
        }
        for l in &c.legs {
            if f.vertices.contains(&l.v) && !is_elevator_slope(l.slope) {
                f.legs.insert(l.id);
            }
        }
        let carries = f.edges.iter().any(|e| c.edges[e].slope != [0, 0])
            || f.legs.iter().any(|l| !c.leg(*l).unwrap().is_contracted());
        if carries {
            floors.push(f);
        } else {
            detached.push(f.vertices);
        }
    }
    let key = |f: &Floor| {
        let y = f.vertices.iter().map(|v| c.vertices[v].pos[1].clone()).min().unwrap();
        (y, *f.vertices.iter().next().unwrap())
    };
    floors.sort_by_key(key);
    Ok(FloorDecomposition {
        elevators,
        floors,
        detached,
        contracted_legs: c.marks().iter().map(|l| l.id).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasicFloorToFloorElevator {
    pub vertices: BTreeSet<usize>,
    pub edges: BTreeSet<usize>,
    /// Contracted legs carried by the subgraph.
    pub legs: BTreeSet<usize>,
    /// Endpoint over the lower end of the segment.
    pub bottom: usize,
    pub top: usize,
}

fn is_vertical_edge(s: IVec) -> bool {
    s[0] == 0
}

/// Vertical subgraph spanned by `u1` inside the height window `[y1, y2]`.
fn vertical_window(c: &Curve, u1: usize, y1: &Q, y2: &Q) -> (BTreeSet<usize>, BTreeSet<usize>) {
    let x = &c.vertices[&u1].pos[0];
    let inside = |v: usize| {
        let p = &c.vertices[&v].pos;
        &p[0] == x && &p[1] >= y1 && &p[1] <= y2
    };
    let mut vs = BTreeSet::from([u1]);
    let mut es = BTreeSet::new();
    let mut queue = VecDeque::from([u1]);
    while let Some(v) = queue.pop_front() {
        for e in c.edges.values() {
            if (e.v != v && e.w != v) || !is_vertical_edge(e.slope) {
                continue;
            }
            let u = e.other(v);
            if !inside(u) {
                continue;
            }
            es.insert(e.id);
            if vs.insert(u) {
                queue.push_back(u);
            }
        }
    }
    (vs, es)
}

fn check_basic(c: &Curve, vs: &BTreeSet<usize>, es: &BTreeSet<usize>, u1: usize, u2: usize) -> bool {
    let y1 = &c.vertices[&u1].pos[1];
    let y2 = &c.vertices[&u2].pos[1];
    if !vs.contains(&u2) {
        return false;
    }
    // A unique vertex over each endpoint.
    for &v in vs {
        let y = &c.vertices[&v].pos[1];
        if (y == y1 && v != u1) || (y == y2 && v != u2) {
            return false;
        }
    }
    // Non-contracted legs make the image unbounded.
    if c.legs.iter().any(|l| vs.contains(&l.v) && !l.is_contracted() && is_vertical_edge(l.slope)) {
        return false;
    }
    for &v in vs {
        let mut ext: Vec<IVec> = Vec::new();
        for g in c.star(v) {
            let inside = match g {
                crate::tropical::Germ::Edge(e, _) => es.contains(&e),
                crate::tropical::Germ::Leg(l) => c.leg(l).unwrap().is_contracted(),
            };
            if !inside {
                ext.push(c.germ_slope(g));
            }
        }
        if v == u1 || v == u2 {
            let mut xs: Vec<i64> = ext.iter().map(|s| s[0]).collect();
            xs.sort_unstable();
            if xs != vec![-1, 1] {
                return false;
            }
        } else if !ext.is_empty() {
            return false;
        }
    }
    true
}

pub fn basic_floor_to_floor_elevators(c: &Curve) -> Result<Vec<BasicFloorToFloorElevator>> {
    if !is_floor_decomposed(c) {
        return Err(Error::NotFloorDecomposed);
    }
    let attach: Vec<usize> = c
        .vertices
        .keys()
        .copied()
        .filter(|&v| c.star(v).into_iter().any(|g| c.germ_slope(g)[0] != 0))
        .collect();
    let mut out = BTreeSet::new();
    for &u1 in &attach {
        for &u2 in &attach {
            let (p1, p2) = (&c.vertices[&u1].pos, &c.vertices[&u2].pos);
            if p1[0] != p2[0] || p1[1] >= p2[1] {
                continue;
            }
            let (vs, es) = vertical_window(c, u1, &p1[1], &p2[1]);
            if es.is_empty() || !check_basic(c, &vs, &es, u1, u2) {
                continue;
            }
            let legs = c.legs.iter().filter(|l| l.is_contracted() && vs.contains(&l.v)).map(|l| l.id).collect();
            out.insert(BasicFloorToFloorElevator { vertices: vs, edges: es, legs, bottom: u1, top: u2 });
        }
    }
    Ok(out.into_iter().collect())
}

/// A connected subgraph in which every vertex has valence two.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    pub edges: BTreeSet<usize>,
    pub vertices: BTreeSet<usize>,
    pub marks: BTreeSet<usize>,
}

/// Every cycle of the graph, from combinations of fundamental cycles.
pub fn cycles(c: &Curve) -> Result<Vec<Cycle>> {
    let b1 = c.betti1();
    if b1 > MAX_CYCLE_RANK {
        return Err(Error::TooManyCycles(b1 as usize));
    }
    // Spanning forest.
    let mut parent: BTreeMap<usize, Option<(usize, usize)>> = BTreeMap::new();
    let mut tree = BTreeSet::new();
    for &s in c.vertices.keys() {
        if parent.contains_key(&s) {
            continue;
        }
        parent.insert(s, None);
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for e in c.edges.values() {
                if e.v != v && e.w != v {
                    continue;
                }
                let u = e.other(v);
                if let std::collections::btree_map::Entry::Vacant(slot) = parent.entry(u) {
                    slot.insert(Some((v, e.id)));
                    tree.insert(e.id);
                    queue.push_back(u);
                }
            }
        }
    }
    let path_to_root = |mut v: usize| {
        let mut es = Vec::new();
        while let Some(Some((p, e))) = parent.get(&v) {
            es.push(*e);
            v = *p;
        }
        es
    };
    let fundamental: Vec<BTreeSet<usize>> = c
        .edges
        .values()
        .filter(|e| !tree.contains(&e.id))
        .map(|e| {
            let mut set: BTreeSet<usize> = BTreeSet::from([e.id]);
            for x in path_to_root(e.v).into_iter().chain(path_to_root(e.w)) {
                if !set.remove(&x) {
                    set.insert(x);
                }
            }
            set
        })
        .collect();
    let mut out = BTreeSet::new();
    for mask in 1u32..(1u32 << fundamental.len()) {
        let mut set = BTreeSet::new();
        for (i, f) in fundamental.iter().enumerate() {
            if mask >> i & 1 == 1 {
                for &x in f {
                    if !set.remove(&x) {
                        set.insert(x);
                    }
                }
            }
        }
        if let Some(cy) = as_cycle(c, &set) {
            out.insert(cy);
        }
    }
    Ok(out.into_iter().collect())
}

fn as_cycle(c: &Curve, set: &BTreeSet<usize>) -> Option<Cycle> {
    if set.is_empty() {
        return None;
    }
    let mut deg: BTreeMap<usize, usize> = BTreeMap::new();
    for e in set {
        let e = &c.edges[e];
        *deg.entry(e.v).or_default() += 1;
        *deg.entry(e.w).or_default() += 1;
    }
    if deg.values().any(|&d| d != 2) {
        return None;
    }
    let start = *deg.keys().next().unwrap();
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for e in set {
            let e = &c.edges[e];
            if e.v == v || e.w == v {
                let u = e.other(v);
                if seen.insert(u) {
                    queue.push_back(u);
                }
            }
        }
    }
    if seen.len() != deg.len() {
        return None;
    }
    let marks = c.legs.iter().filter(|l| l.is_contracted() && seen.contains(&l.v)).map(|l| l.id).collect();
    Some(Cycle { edges: set.clone(), vertices: seen, marks })
}

/// Number of basic floor-to-floor elevators contained in `o`.
pub fn cycle_complexity(c: &Curve, o: &Cycle) -> Result<usize> {
    let basics = basic_floor_to_floor_elevators(c)?;
    Ok(basics.iter().filter(|b| b.edges.is_subset(&o.edges)).count())
}

/// Minimum of [`cycle_complexity`] over all cycles; `None` without cycles.
pub fn vertical_complexity(c: &Curve) -> Result<Option<usize>> {
    let basics = basic_floor_to_floor_elevators(c)?;
    Ok(cycles(c)?
        .iter()
        .map(|o| basics.iter().filter(|b| b.edges.is_subset(&o.edges)).count())
        .min())
}

/// Images of floor vertices, which include the floor-borne marks.
pub fn special_points(c: &Curve) -> Result<BTreeSet<QVec>> {
    let d = decompose(c)?;
    Ok(d.floors
        .iter()
        .flat_map(|f| f.vertices.iter())
        .map(|v| c.vertices[v].pos.clone())
        .collect())
}

/// Parallelogram with two horizontal sides containing `p` and of the same
/// width, together with the primitive functional along its slanted sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parallelogram {
    pub polygon: LatticePolygon,
    pub m: IVec,
}

pub fn inscribe_parallelogram(p: &LatticePolygon) -> Result<Parallelogram> {
    let w = p.width()?;
    let (y0, y1) = p.y_range();
    let bound = p.sides().iter().map(|s| s.primitive_direction[0].abs()).max().unwrap_or(0) + 1;
    let mut cands: Vec<i64> = (-bound..=bound).collect();
    cands.sort_by_key(|s| (s.abs(), *s));
    for s in cands {
        let vals: Vec<i64> = p.vertices().iter().map(|v| v[0] - s * v[1]).collect();
        let (c1, c2) = (*vals.iter().min().unwrap(), *vals.iter().max().unwrap());
        if c2 - c1 != w {
            continue;
        }
        let poly = LatticePolygon::new(vec![
            [c1 + s * y0, y0],
            [c2 + s * y0, y0],
            [c2 + s * y1, y1],
            [c1 + s * y1, y1],
        ])?;
        return Ok(Parallelogram { polygon: poly, m: [s, 1] });
    }
    Err(Error::HypothesesNotMet("no parallelogram of equal width".into()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionCertificate {
    pub m: IVec,
    pub d_m: i64,
    /// Sorted distinct images of vertices under `m`.
    pub critical_values: Vec<Q>,
    /// Generic sample points with their weighted fiber counts.
    pub fibers: Vec<(Q, i64)>,
    pub verified: bool,
}

/// Weighted number of preimages of `t` under `<h, m>`.
pub fn fiber_count(c: &Curve, m: IVec, t: &Q) -> i64 {
    let mut n = 0;
    for e in c.edges.values() {
        let a = qdot(&c.vertices[&e.v].pos, m);
        let b = qdot(&c.vertices[&e.w].pos, m);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        if &lo < t && t < &hi {
            n += dot(e.slope, m).abs();
        }
    }
    for l in &c.legs {
        let a = qdot(&c.vertices[&l.v].pos, m);
        let s = dot(l.slope, m);
        if (s > 0 && t > &a) || (s < 0 && t < &a) {
            n += s.abs();
        }
    }
    n
}

/// `d_m`, the sum of `<slope, m>` over legs on which it is positive, with
/// the fiber count verified at one point in each complementary interval
/// of the vertex images.
pub fn projection_degree(c: &Curve, m: IVec) -> Result<ProjectionCertificate> {
    let d_m: i64 = c.legs.iter().map(|l| dot(l.slope, m)).filter(|&x| x > 0).sum();
    if d_m == 0 {
        return Err(Error::FunctionalContractsEverything);
    }
    let vals: BTreeSet<Q> = c.vertices.values().map(|v| qdot(&v.pos, m)).collect();
    let vals: Vec<Q> = vals.into_iter().collect();
    let mut samples = Vec::new();
    if let (Some(first), Some(last)) = (vals.first(), vals.last()) {
        samples.push(first - q(1));
        for w in vals.windows(2) {
            samples.push((&w[0] + &w[1]) / q(2));
        }
        samples.push(last + q(1));
    }
    let fibers: Vec<(Q, i64)> = samples.into_iter().map(|t| {
        let n = fiber_count(c, m, &t);
        (t, n)
    }).collect();
    let verified = fibers.iter().all(|(_, n)| *n == d_m);
    Ok(ProjectionCertificate { m, d_m, critical_values: vals, fibers, verified })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WidthCertificate {
    pub width: i64,
    pub parallelogram: Parallelogram,
    pub projection: ProjectionCertificate,
    /// Largest elevator multiplicity found.
    pub max_elevator_multiplicity: i64,
}

/// Checks that no elevator is heavier than the width of `p`.
pub fn elevator_multiplicity_bound_check(c: &Curve, p: &LatticePolygon) -> Result<(bool, WidthCertificate)> {
    if !c.is_dual_to(p) {
        return Err(Error::NotDual);
    }
    let d = decompose(c)?;
    let width = p.width()?;
    let par = inscribe_parallelogram(p)?;
    let projection = projection_degree(c, par.m)?;
    let max_elev = d
        .elevators
        .iter()
        .map(|part| {
            let s = match part {
                Part::Edge(e) => c.edges[e].slope,
                Part::Leg(l) => c.leg(*l).unwrap().slope,
            };
            gcd(s[0], s[1])
        })
        .max()
        .unwrap_or(0);
    let ok = max_elev <= width && projection.verified && projection.d_m == width;
    Ok((ok, WidthCertificate { width, parallelogram: par, projection, max_elevator_multiplicity: max_elev }))
}

/// Primitive direction and multiplicity of an elevator part.
pub fn part_slope(c: &Curve, p: Part) -> IVec {
    match p {
        Part::Edge(e) => c.edges[&e].slope,
        Part::Leg(l) => c.leg(l).unwrap().slope,
    }
}

pub fn part_multiplicity(c: &Curve, p: Part) -> i64 {
    primitive(part_slope(c, p)).1
}
