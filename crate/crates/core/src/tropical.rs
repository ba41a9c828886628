//! Parametrized tropical curves in `N_R = R^2` with exact rational
//! positions and lengths.
//!
//! Vertices and bounded edges are keyed by stable ids so that moves can
//! refer to them across mutations. Edge slopes are oriented from `v` to `w`;
//! leg slopes point away from the attachment vertex. Legs with slope zero
//! are the contracted legs (marked points) and always come first.

use crate::arith::{add, gcd, primitive, q, qstep, qsub, IVec, Q, QVec};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::polygon::{LatticePolygon, TangencyProfile, TropicalDegree};
use num::{Signed, Zero};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub id: usize,
    pub weight: u32,
    pub pos: QVec,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: usize,
    pub v: usize,
    pub w: usize,
    pub length: Q,
    pub slope: IVec,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.v == self.w
    }
    pub fn other(&self, x: usize) -> usize {
        if self.v == x {
            self.w
        } else {
            self.v
        }
    }
    /// Slope pointing away from endpoint `x`.
    pub fn slope_from(&self, x: usize) -> IVec {
        if self.v == x {
            self.slope
        } else {
            [-self.slope[0], -self.slope[1]]
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Leg {
    pub id: usize,
    pub v: usize,
    pub slope: IVec,
}

impl Leg {
    pub fn is_contracted(&self) -> bool {
        self.slope == [0, 0]
    }
}

/// A half-edge at a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Germ {
    Edge(usize, bool),
    Leg(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Curve {
    pub vertices: BTreeMap<usize, Vertex>,
    pub edges: BTreeMap<usize, Edge>,
    pub legs: Vec<Leg>,
}

/// Multiplicity of a non-contracted slope.
pub fn slope_multiplicity(s: IVec) -> Result<i64> {
    let g = gcd(s[0], s[1]);
    if g == 0 {
        Err(Error::ContractedEdge(0))
    } else {
        Ok(g)
    }
}

fn qvec_to_slope(d: &QVec, weight: i64) -> Option<(IVec, Q)> {
    // Smallest integer multiple of d, then its primitive direction.
    let l = num::integer::lcm(d[0].denom().clone(), d[1].denom().clone());
    let ix: i64 = num::ToPrimitive::to_i64(&(d[0].numer() * (&l / d[0].denom())))?;
    let iy: i64 = num::ToPrimitive::to_i64(&(d[1].numer() * (&l / d[1].denom())))?;
    let (p, _) = primitive([ix, iy]);
    if p == [0, 0] {
        return None;
    }
    let s = [weight * p[0], weight * p[1]];
    let len = if s[0] != 0 { &d[0] / q(s[0]) } else { &d[1] / q(s[1]) };
    Some((s, len))
}

impl Curve {
    pub fn new() -> Self {
        Self::default()
    }

    fn next_vertex_id(&self) -> usize {
        self.vertices.keys().next_back().map_or(0, |k| k + 1)
    }
    fn next_edge_id(&self) -> usize {
        self.edges.keys().next_back().map_or(0, |k| k + 1)
    }
    fn next_leg_id(&self) -> usize {
        self.legs.iter().map(|l| l.id + 1).max().unwrap_or(0)
    }

    pub fn add_vertex(&mut self, pos: QVec) -> usize {
        self.add_weighted_vertex(pos, 0)
    }

    pub fn add_weighted_vertex(&mut self, pos: QVec, weight: u32) -> usize {
        let id = self.next_vertex_id();
        self.vertices.insert(id, Vertex { id, weight, pos });
        id
    }

    /// Adds an edge whose slope is `weight` times the primitive direction
    /// from `v` to `w`; the length follows from the positions.
    pub fn add_edge_between(&mut self, v: usize, w: usize, weight: i64) -> usize {
        let d = qsub(&self.vertices[&w].pos, &self.vertices[&v].pos);
        let (slope, length) = qvec_to_slope(&d, weight).expect("endpoints coincide");
        self.insert_edge(v, w, length, slope)
    }

    pub fn insert_edge(&mut self, v: usize, w: usize, length: Q, slope: IVec) -> usize {
        let id = self.next_edge_id();
        self.edges.insert(id, Edge { id, v, w, length, slope });
        id
    }

    pub fn add_leg(&mut self, v: usize, slope: IVec) -> usize {
        let id = self.next_leg_id();
        self.legs.push(Leg { id, v, slope });
        self.normalize_leg_order();
        id
    }

    /// Attaches a contracted leg (a marked point) at `v`.
    pub fn add_mark(&mut self, v: usize) -> usize {
        self.add_leg(v, [0, 0])
    }

    /// Stable partition: contracted legs first.
    pub fn normalize_leg_order(&mut self) {
        let (mut a, b): (Vec<Leg>, Vec<Leg>) = self.legs.drain(..).partition(Leg::is_contracted);
        a.extend(b);
        self.legs = a;
    }

    pub fn leg(&self, id: usize) -> Option<&Leg> {
        self.legs.iter().find(|l| l.id == id)
    }

    pub fn marks(&self) -> Vec<&Leg> {
        self.legs.iter().filter(|l| l.is_contracted()).collect()
    }

    pub fn star(&self, v: usize) -> Vec<Germ> {
        let mut out = Vec::new();
        for e in self.edges.values() {
            if e.v == v {
                out.push(Germ::Edge(e.id, true));
            }
            if e.w == v {
                out.push(Germ::Edge(e.id, false));
            }
        }
        for l in &self.legs {
            if l.v == v {
                out.push(Germ::Leg(l.id));
            }
        }
        out
    }

    /// Slope of a germ pointing away from its vertex.
    pub fn germ_slope(&self, g: Germ) -> IVec {
        match g {
            Germ::Edge(e, true) => self.edges[&e].slope,
            Germ::Edge(e, false) => {
                let s = self.edges[&e].slope;
                [-s[0], -s[1]]
            }
            Germ::Leg(l) => self.leg(l).unwrap().slope,
        }
    }

    pub fn valence(&self, v: usize) -> usize {
        self.star(v).len()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.edges
            .values()
            .filter(|e| e.v == v || e.w == v)
            .map(|e| e.other(v))
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        let Some(&start) = self.vertices.keys().next() else {
            return true;
        };
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for u in self.neighbors(v) {
                if seen.insert(u) {
                    queue.push_back(u);
                }
            }
        }
        seen.len() == self.vertices.len()
    }

    pub fn num_components(&self) -> usize {
        let mut seen = BTreeSet::new();
        let mut count = 0;
        for &s in self.vertices.keys() {
            if !seen.insert(s) {
                continue;
            }
            count += 1;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for u in self.neighbors(v) {
                    if seen.insert(u) {
                        queue.push_back(u);
                    }
                }
            }
        }
        count
    }

    /// First Betti number of the underlying graph.
    pub fn betti1(&self) -> i64 {
        self.edges.len() as i64 - self.vertices.len() as i64 + self.num_components() as i64
    }

    /// `1 - chi(G) + sum of weights`.
    pub fn genus(&self) -> i64 {
        1 - (self.vertices.len() as i64 - self.edges.len() as i64)
            + self.vertices.values().map(|v| v.weight as i64).sum::<i64>()
    }

    /// The first vertex at which balancing fails, if any.
    pub fn balancing_violation(&self) -> Option<usize> {
        self.vertices.keys().copied().find(|&v| {
            let s = self.star(v).into_iter().fold([0, 0], |acc, g| add(acc, self.germ_slope(g)));
            s != [0, 0]
        })
    }

    pub fn is_balanced(&self) -> bool {
        self.balancing_violation().is_none()
    }

    pub fn is_stable(&self) -> bool {
        self.vertices.values().all(|v| {
            let val = self.valence(v.id);
            if v.weight == 0 {
                val >= 3
            } else {
                val >= 1
            }
        })
    }

    /// Checks every structural invariant: references, positive lengths,
    /// contracted loops, edge-position compatibility and balancing.
    pub fn validate(&self) -> Result<()> {
        for e in self.edges.values() {
            if !self.vertices.contains_key(&e.v) || !self.vertices.contains_key(&e.w) {
                return Err(Error::InvalidCurve(format!("edge {} has a missing endpoint", e.id)));
            }
            if !e.length.is_positive() {
                return Err(Error::InvalidCurve(format!("edge {} has non-positive length", e.id)));
            }
            if e.is_loop() && e.slope != [0, 0] {
                return Err(Error::InvalidCurve(format!("loop {} is not contracted", e.id)));
            }
            let expect = qstep(&self.vertices[&e.v].pos, &e.length, e.slope);
            if expect != self.vertices[&e.w].pos {
                return Err(Error::InvalidCurve(format!("edge {} disagrees with positions", e.id)));
            }
        }
        let mut ids = BTreeSet::new();
        let mut seen_free = false;
        for l in &self.legs {
            if !self.vertices.contains_key(&l.v) {
                return Err(Error::InvalidCurve(format!("leg {} has a missing vertex", l.id)));
            }
            if !ids.insert(l.id) {
                return Err(Error::InvalidCurve(format!("duplicate leg id {}", l.id)));
            }
            if l.is_contracted() && seen_free {
                return Err(Error::InvalidCurve("contracted legs must come first".into()));
            }
            seen_free |= !l.is_contracted();
        }
        if let Some(v) = self.balancing_violation() {
            return Err(Error::InvalidCurve(format!("not balanced at vertex {v}")));
        }
        Ok(())
    }

    pub fn degree(&self) -> TropicalDegree {
        self.legs.iter().filter(|l| !l.is_contracted()).map(|l| l.slope).collect()
    }

    /// The tangency profile read off from the legs, if every leg is a
    /// positive multiple of an outer normal of `p` and the multiplicities on
    /// each side add up to its lattice length.
    pub fn profile_on(&self, p: &LatticePolygon) -> Option<TangencyProfile> {
        let sides = p.sides();
        let mut prof = vec![Vec::new(); sides.len()];
        for s in self.degree() {
            let (dir, m) = primitive(s);
            let i = sides.iter().position(|x| x.primitive_outer_normal == dir)?;
            prof[i].push(m as u64);
        }
        for d in prof.iter_mut() {
            d.sort_unstable_by(|a, b| b.cmp(a));
        }
        let profile = TangencyProfile { sides: prof };
        profile.validate(p).ok()?;
        Some(profile)
    }

    pub fn is_dual_to(&self, p: &LatticePolygon) -> bool {
        self.profile_on(p).is_some()
    }

    /// Positions of the vertices carrying the contracted legs, in leg order.
    pub fn evaluate(&self) -> Vec<QVec> {
        self.legs
            .iter()
            .filter(|l| l.is_contracted())
            .map(|l| self.vertices[&l.v].pos.clone())
            .collect()
    }

    pub fn translate(&self, t: &QVec) -> Curve {
        let mut c = self.clone();
        for v in c.vertices.values_mut() {
            v.pos = [&v.pos[0] + &t[0], &v.pos[1] + &t[1]];
        }
        c
    }

    /// Applies an integral linear map to positions and slopes.
    pub fn transform(&self, u: &[[i64; 2]; 2]) -> Curve {
        let mut c = self.clone();
        let qu = |p: &QVec| -> QVec {
            [
                &p[0] * q(u[0][0]) + &p[1] * q(u[0][1]),
                &p[0] * q(u[1][0]) + &p[1] * q(u[1][1]),
            ]
        };
        for v in c.vertices.values_mut() {
            v.pos = qu(&v.pos);
        }
        for e in c.edges.values_mut() {
            e.slope = crate::arith::mat_apply(u, e.slope);
        }
        for l in c.legs.iter_mut() {
            l.slope = crate::arith::mat_apply(u, l.slope);
        }
        c
    }

    /// No contracted bounded edges, and no two germs at a vertex with
    /// positively proportional slopes; contracted legs are ignored.
    pub fn is_immersed(&self) -> bool {
        if self.edges.values().any(|e| e.slope == [0, 0]) {
            return false;
        }
        self.vertices.keys().all(|&v| {
            let dirs: Vec<IVec> = self
                .star(v)
                .into_iter()
                .map(|g| self.germ_slope(g))
                .filter(|s| *s != [0, 0])
                .map(|s| primitive(s).0)
                .collect();
            let set: BTreeSet<IVec> = dirs.iter().copied().collect();
            set.len() == dirs.len()
        })
    }

    /// `n = |d| + g - 1`, counting non-contracted legs.
    pub fn expected_n(&self) -> i64 {
        self.degree().len() as i64 + self.genus() - 1
    }

    pub fn combinatorial_type(&self) -> CombinatorialType {
        CombinatorialType {
            vertices: self.vertices.values().map(|v| (v.id, v.weight)).collect(),
            edges: self.edges.values().map(|e| (e.id, TypeEdge { v: e.v, w: e.w, slope: e.slope })).collect(),
            legs: self.legs.clone(),
        }
    }

    /// Recomputes positions from the edge lengths along a spanning tree,
    /// keeping `root` fixed. Fails if a cycle does not close up.
    pub fn reposition(&mut self, root: usize) -> Result<()> {
        let mut seen = BTreeSet::from([root]);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let es: Vec<Edge> = self.edges.values().filter(|e| e.v == v || e.w == v).cloned().collect();
            for e in es {
                let u = e.other(v);
                if seen.insert(u) {
                    let p = qstep(&self.vertices[&v].pos, &e.length, e.slope_from(v));
                    self.vertices.get_mut(&u).unwrap().pos = p;
                    queue.push_back(u);
                }
            }
        }
        self.validate()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TypeEdge {
    pub v: usize,
    pub w: usize,
    pub slope: IVec,
}

/// A curve with lengths and positions forgotten.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CombinatorialType {
    pub vertices: BTreeMap<usize, u32>,
    pub edges: BTreeMap<usize, TypeEdge>,
    pub legs: Vec<Leg>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StratumKind {
    Nice,
    SimpleWall,
    Other,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StratumClass {
    pub kind: StratumKind,
    pub actual_dimension: i64,
    /// `None` when a vertex has positive weight.
    pub expected_dimension: Option<i64>,
}

/// Affine-linear expressions for vertex positions in terms of the
/// unknowns `(x0, y0, l_e...)`: the root position followed by the lengths
/// of the bounded edges in id order.
pub struct PositionSystem {
    pub edge_ids: Vec<usize>,
    pub root: usize,
    /// For each vertex, rows for x and y over `2 + |E|` unknowns.
    pub pos: BTreeMap<usize, [Vec<Q>; 2]>,
    /// Cycle-closing constraints, two per non-tree edge.
    pub cycle_rows: Matrix,
}

impl PositionSystem {
    pub fn unknowns(&self) -> usize {
        2 + self.edge_ids.len()
    }

    pub fn col_of_edge(&self, e: usize) -> usize {
        2 + self.edge_ids.iter().position(|&x| x == e).expect("unknown edge")
    }
}

impl CombinatorialType {
    pub fn genus(&self) -> i64 {
        1 - (self.vertices.len() as i64 - self.edges.len() as i64)
            + self.vertices.values().map(|&w| w as i64).sum::<i64>()
    }

    pub fn valence(&self, v: usize) -> usize {
        let e = self
            .edges
            .values()
            .map(|e| (e.v == v) as usize + (e.w == v) as usize)
            .sum::<usize>();
        e + self.legs.iter().filter(|l| l.v == v).count()
    }

    pub fn is_weightless(&self) -> bool {
        self.vertices.values().all(|&w| w == 0)
    }

    pub fn is_balanced(&self) -> bool {
        self.vertices.keys().all(|&v| {
            let mut s = [0, 0];
            for e in self.edges.values() {
                if e.v == v {
                    s = add(s, e.slope);
                }
                if e.w == v {
                    s = add(s, [-e.slope[0], -e.slope[1]]);
                }
            }
            for l in self.legs.iter().filter(|l| l.v == v) {
                s = add(s, l.slope);
            }
            s == [0, 0]
        })
    }

    pub fn is_connected(&self) -> bool {
        let Some(&start) = self.vertices.keys().next() else {
            return true;
        };
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for e in self.edges.values() {
                for (a, b) in [(e.v, e.w), (e.w, e.v)] {
                    if a == v && seen.insert(b) {
                        queue.push_back(b);
                    }
                }
            }
        }
        seen.len() == self.vertices.len()
    }

    pub fn betti1(&self) -> i64 {
        self.edges.len() as i64 - self.vertices.len() as i64 + 1
    }

    pub fn position_system(&self) -> Result<PositionSystem> {
        if !self.is_connected() {
            return Err(Error::DisconnectedGraph);
        }
        let edge_ids: Vec<usize> = self.edges.keys().copied().collect();
        let n = 2 + edge_ids.len();
        let root = *self.vertices.keys().next().ok_or(Error::DisconnectedGraph)?;
        let mut pos: BTreeMap<usize, [Vec<Q>; 2]> = BTreeMap::new();
        let mut r = [vec![q(0); n], vec![q(0); n]];
        r[0][0] = q(1);
        r[1][1] = q(1);
        pos.insert(root, r);
        let mut tree = BTreeSet::new();
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for (k, (&id, e)) in self.edges.iter().enumerate() {
                let (u, s) = if e.v == v {
                    (e.w, e.slope)
                } else if e.w == v {
                    (e.v, [-e.slope[0], -e.slope[1]])
                } else {
                    continue;
                };
                if pos.contains_key(&u) {
                    continue;
                }
                let mut row = pos[&v].clone();
                row[0][2 + k] += q(s[0]);
                row[1][2 + k] += q(s[1]);
                pos.insert(u, row);
                tree.insert(id);
                queue.push_back(u);
            }
        }
        let mut cycle_rows = Vec::new();
        for (k, (&id, e)) in self.edges.iter().enumerate() {
            if tree.contains(&id) {
                continue;
            }
            for c in 0..2 {
                let mut row: Vec<Q> = pos[&e.w][c].iter().zip(&pos[&e.v][c]).map(|(a, b)| a - b).collect();
                row[2 + k] -= q(e.slope[c]);
                cycle_rows.push(row);
            }
        }
        Ok(PositionSystem { edge_ids, root, pos, cycle_rows })
    }

    /// `(actual, expected)` dimensions of the stratum. The expected value
    /// is only defined for weightless types.
    pub fn stratum_dimension(&self) -> Result<(i64, Option<i64>)> {
        let sys = self.position_system()?;
        let rank = linalg::rank(&sys.cycle_rows) as i64;
        let e = self.edges.len() as i64;
        let actual = 2 + e - rank;
        let expected = self.is_weightless().then(|| 2 + e - 2 * self.betti1());
        Ok((actual, expected))
    }

    pub fn classify_stratum(&self) -> Result<StratumClass> {
        let (actual, expected) = self.stratum_dimension()?;
        let regular = expected == Some(actual);
        let vals: Vec<usize> = self.vertices.keys().map(|&v| self.valence(v)).collect();
        let fours = vals.iter().filter(|&&x| x == 4).count();
        let others_three = vals.iter().all(|&x| x == 3 || x == 4);
        let kind = if !self.is_weightless() || !regular || !others_three {
            StratumKind::Other
        } else if fours == 0 {
            StratumKind::Nice
        } else if fours == 1 {
            StratumKind::SimpleWall
        } else {
            StratumKind::Other
        };
        Ok(StratumClass { kind, actual_dimension: actual, expected_dimension: expected })
    }
}

/// Local dimension of `ev^{-1}(q) ∩ M_Θ` at `c`, where `q` are the first
/// `qs.len()` marked points.
pub fn evaluation_fiber_dimension(c: &Curve, qs: &[QVec]) -> Result<i64> {
    let ev = c.evaluate();
    if qs.len() > ev.len() {
        return Err(Error::EvaluationMismatch(ev.len()));
    }
    for (i, (a, b)) in qs.iter().zip(&ev).enumerate() {
        if a != b {
            return Err(Error::EvaluationMismatch(i));
        }
    }
    let t = c.combinatorial_type();
    let sys = t.position_system()?;
    let mut rows = sys.cycle_rows.clone();
    for l in c.legs.iter().filter(|l| l.is_contracted()).take(qs.len()) {
        rows.push(sys.pos[&l.v][0].clone());
        rows.push(sys.pos[&l.v][1].clone());
    }
    Ok(sys.unknowns() as i64 - linalg::rank(&rows) as i64)
}

/// Is the fiber of the evaluation map through the first `k` marks of
/// dimension `n - k`?
pub fn general_position_check(c: &Curve, qs: &[QVec]) -> Result<bool> {
    let dim = evaluation_fiber_dimension(c, qs)?;
    Ok(dim == c.expected_n() - qs.len() as i64)
}

/// Every bounded length of the curve is positive and slopes agree with
/// positions; zero-length contracted edges are excluded by construction.
pub fn lengths_are_positive(c: &Curve) -> bool {
    c.edges.values().all(|e| !e.length.is_zero() && e.length.is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::qv;

    /// Tropical line with vertex at `p`.
    pub fn tripod(p: QVec) -> Curve {
        let mut c = Curve::new();
        let v = c.add_vertex(p);
        c.add_leg(v, [0, -1]);
        c.add_leg(v, [1, 1]);
        c.add_leg(v, [-1, 0]);
        c
    }

    #[test]
    fn genus_formula() {
        let mut c = Curve::new();
        c.add_vertex(qv(0, 0));
        assert_eq!(c.genus(), 0);
        let mut l = Curve::new();
        let v = l.add_vertex(qv(0, 0));
        l.insert_edge(v, v, q(1), [0, 0]);
        assert_eq!(l.genus(), 1);
        let mut w = Curve::new();
        let a = w.add_weighted_vertex(qv(0, 0), 1);
        let b = w.add_vertex(qv(1, 0));
        w.add_edge_between(a, b, 1);
        assert_eq!(w.genus(), 1);
    }

    #[test]
    fn balancing() {
        let mut line = Curve::new();
        let v = line.add_vertex(qv(0, 0));
        line.add_leg(v, [1, 0]);
        line.add_leg(v, [-1, 0]);
        assert!(line.is_balanced());
        assert!(tripod(qv(0, 0)).is_balanced());
        let mut bad = Curve::new();
        let v = bad.add_vertex(qv(0, 0));
        for s in [[1, 0], [0, 1], [-1, 0]] {
            bad.add_leg(v, s);
        }
        assert_eq!(bad.balancing_violation(), Some(v));
    }

    #[test]
    fn multiplicities() {
        assert_eq!(slope_multiplicity([2, 0]), Ok(2));
        assert_eq!(slope_multiplicity([3, -1]), Ok(1));
        assert_eq!(slope_multiplicity([4, 6]), Ok(2));
        assert!(slope_multiplicity([0, 0]).is_err());
    }

    #[test]
    fn stability() {
        let mut two = Curve::new();
        let v = two.add_vertex(qv(0, 0));
        two.add_leg(v, [1, 0]);
        two.add_leg(v, [-1, 0]);
        assert!(!two.is_stable());
        let mut iso = Curve::new();
        iso.add_weighted_vertex(qv(0, 0), 1);
        assert!(!iso.is_stable());
        assert!(tripod(qv(0, 0)).is_stable());
    }

    #[test]
    fn degree_and_duality() {
        let c = tripod(qv(0, 0));
        assert!(c.is_dual_to(&LatticePolygon::triangle(1)));
        assert!(!c.is_dual_to(&LatticePolygon::square(1)));
        let mut odd = Curve::new();
        let v = odd.add_vertex(qv(0, 0));
        odd.add_leg(v, [2, 1]);
        odd.add_leg(v, [-2, -1]);
        assert!(!odd.is_dual_to(&LatticePolygon::triangle(1)));
    }

    #[test]
    fn evaluation_is_equivariant() {
        let mut c = tripod(qv(1, 2));
        assert!(c.evaluate().is_empty());
        c.add_mark(0);
        assert_eq!(c.evaluate(), vec![qv(1, 2)]);
        let t = qv(3, -1);
        assert_eq!(c.translate(&t).evaluate(), vec![qv(4, 1)]);
    }

    #[test]
    fn tree_strata_are_regular() {
        // Two tripods glued along a bounded edge.
        let mut c = Curve::new();
        let a = c.add_vertex(qv(0, 0));
        let b = c.add_vertex(qv(1, 0));
        c.add_edge_between(a, b, 1);
        c.add_leg(a, [-1, 1]);
        c.add_leg(a, [0, -1]);
        c.add_leg(b, [0, 1]);
        c.add_leg(b, [1, -1]);
        c.validate().unwrap();
        let t = c.combinatorial_type();
        assert_eq!(t.stratum_dimension().unwrap(), (3, Some(3)));
        assert_eq!(t.classify_stratum().unwrap().kind, StratumKind::Nice);
        assert!(general_position_check(&c, &[]).unwrap() || c.expected_n() != 3);
    }

    #[test]
    fn positive_weight_is_other() {
        let mut c = Curve::new();
        let v = c.add_weighted_vertex(qv(0, 0), 1);
        c.add_leg(v, [1, 0]);
        c.add_leg(v, [-1, 0]);
        let cls = c.combinatorial_type().classify_stratum().unwrap();
        assert_eq!(cls.kind, StratumKind::Other);
        assert_eq!(cls.expected_dimension, None);
    }

    #[test]
    fn marks_on_one_edge_break_general_position() {
        // A line with two marks on the same (horizontal) leg side: subdivide
        // the leg into a bounded edge with two 2-valent-plus-mark vertices.
        let mut c = Curve::new();
        let o = c.add_vertex(qv(0, 0));
        let a = c.add_vertex(qv(1, 0));
        let b = c.add_vertex(qv(2, 0));
        c.add_edge_between(o, a, 1);
        c.add_edge_between(a, b, 1);
        c.add_leg(o, [0, -1]);
        c.add_leg(o, [-1, 1]);
        c.add_leg(b, [1, 0]);
        c.add_mark(a);
        c.add_mark(b);
        c.validate().unwrap();
        let ev = c.evaluate();
        // n = 3 + 0 - 1 = 2, so two generic marks would leave dimension 0.
        assert_eq!(evaluation_fiber_dimension(&c, &ev).unwrap(), 1);
        assert!(!general_position_check(&c, &ev).unwrap());

        let mut one = Curve::new();
        let o = one.add_vertex(qv(0, 0));
        let a = one.add_vertex(qv(1, 0));
        one.add_edge_between(o, a, 1);
        one.add_leg(o, [0, -1]);
        one.add_leg(o, [-1, 1]);
        one.add_leg(a, [1, 0]);
        one.add_mark(a);
        let ev = one.evaluate();
        assert!(general_position_check(&one, &ev).unwrap());
        assert!(general_position_check(&one, &[]).is_ok());
    }

    #[test]
    fn reposition_recovers_positions() {
        let mut c = Curve::new();
        let a = c.add_vertex(qv(0, 0));
        let b = c.add_vertex(qv(2, 2));
        c.add_edge_between(a, b, 1);
        c.add_leg(a, [-1, 0]);
        c.add_leg(a, [0, -1]);
        c.add_leg(b, [1, 0]);
        c.add_leg(b, [0, 1]);
        let orig = c.clone();
        c.vertices.get_mut(&b).unwrap().pos = qv(9, 9);
        c.reposition(a).unwrap();
        assert_eq!(c, orig);
    }
}
