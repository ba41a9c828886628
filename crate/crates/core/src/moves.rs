//! Wall-crossing moves on floor decomposed curves, and the genus reduction
//! built from them.
//!
//! With some marks held fixed, a curve moves in a family cut out by linear
//! conditions on its root position and edge lengths. Cycles must close,
//! fixed marks stay put, and every flattened cycle, elliptic component or
//! elliptic tail stays at the midpoint of its elevator. A move follows the
//! family to the first wall, where some edge length reaches zero. It then
//! contracts those edges and continues past the wall by splitting the
//! resulting vertex of higher valence.

use crate::arith::{is_power_of, q, IVec, Q, QVec};
use crate::enumeration;
use crate::error::{Error, Result};
use crate::floors::{self, Cycle};
use crate::linalg::{self, Matrix};
use crate::polygon::LatticePolygon;
use crate::realizability::{self, SpecialKind, SpecialSubgraph};
use crate::tropical::{CombinatorialType, Curve, Germ, Leg, PositionSystem, StratumKind, TypeEdge};
use num::{Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// Residue characteristic: `0` or a prime.
pub type ResidueCharacteristic = u64;

const MAX_STEPS: usize = 500;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    /// Translates the listed marks, which carry the floor with index
    /// `floor` and everything above it, vertically by `dy`.
    TranslateFloor { floor: usize, marks: Vec<usize>, dy: Q },
    /// Moves the elevator edge horizontally by `dx` inside its family.
    TranslateElevator { elevator: usize, dx: Q },
    /// Splits the 4-valent vertex of a simple wall, moving the germs in
    /// `split` to a new vertex, and grows the new edge to length `amount`.
    CrossSimpleWall { vertex: usize, split: Vec<Germ>, amount: Q },
    /// As [`Move::CrossSimpleWall`] but without requiring a simple wall.
    SplitFourValent { vertex: usize, pairing: Vec<Germ>, amount: Q },
    /// Shrinks the flattened cycle with the given ends by `amount` in
    /// height, first splitting ends that are 4-valent.
    ShrinkFlattenedCycle { bottom: usize, top: usize, amount: Q },
    DevelopContractedLoop { vertex: usize },
    DevelopEllipticTail { vertex: usize },
    /// Records that the family is a ray along which only this edge grows.
    StretchToLimit { edge: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateStep {
    pub mv: Move,
    pub ty: CombinatorialType,
    pub evaluations: Vec<QVec>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionCase {
    /// The two elevators leave the floor in opposite directions with equal
    /// multiplicity.
    OppositeEqual,
    /// The two elevators and the floors they join form a cycle of vertical
    /// complexity two.
    ComplexityTwo,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Terminal {
    Stretched,
    TwoElevators { e: usize, e_prime: usize, case: ReductionCase },
    /// A lower complexity curve was found; the search starts over from it.
    Restart { complexity_before: usize, complexity_after: usize, remarked: Curve },
    Ray { edge: usize, case: ReductionCase, kappa: Option<u64>, reduced: Curve },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveCertificate {
    pub initial: Curve,
    pub fixed: Vec<usize>,
    /// The mark forgotten before the moves, with its position.
    pub released: Option<(usize, QVec)>,
    pub characteristic: ResidueCharacteristic,
    pub threshold: Q,
    pub steps: Vec<CertificateStep>,
    pub terminal: Terminal,
}

// ---------------------------------------------------------------------------
// Local surgery

fn germ_slope_in(t: &CombinatorialType, g: Germ) -> IVec {
    match g {
        Germ::Edge(e, true) => t.edges[&e].slope,
        Germ::Edge(e, false) => {
            let s = t.edges[&e].slope;
            [-s[0], -s[1]]
        }
        Germ::Leg(l) => t.legs.iter().find(|x| x.id == l).expect("leg").slope,
    }
}

fn type_star(t: &CombinatorialType, v: usize) -> Vec<Germ> {
    let mut out = Vec::new();
    for (&id, e) in &t.edges {
        if e.v == v {
            out.push(Germ::Edge(id, true));
        }
        if e.w == v {
            out.push(Germ::Edge(id, false));
        }
    }
    out.extend(t.legs.iter().filter(|l| l.v == v).map(|l| Germ::Leg(l.id)));
    out
}

fn check_pairing(star: &[Germ], pairing: &[Germ]) -> Result<()> {
    let set: BTreeSet<&Germ> = pairing.iter().collect();
    if pairing.len() != 2 || set.len() != 2 || !pairing.iter().all(|g| star.contains(g)) {
        return Err(Error::InvalidPairing(format!("{pairing:?} is not two germs of {star:?}")));
    }
    Ok(())
}

/// Splits a 4-valent vertex: the germs in `pairing` move to a new vertex
/// joined to `v` by a new edge whose slope balancing forces to be their sum.
pub fn split_four_valent(t: &CombinatorialType, v: usize, pairing: &[Germ]) -> Result<CombinatorialType> {
    let star = type_star(t, v);
    if star.len() != 4 {
        return Err(Error::NotFourValent(v));
    }
    check_pairing(&star, pairing)?;
    let mut out = t.clone();
    let slope = pairing.iter().fold([0, 0], |s, g| crate::arith::add(s, germ_slope_in(t, *g)));
    let nv = out.vertices.keys().next_back().map_or(0, |k| k + 1);
    out.vertices.insert(nv, 0);
    for g in pairing {
        match *g {
            Germ::Edge(e, true) => out.edges.get_mut(&e).unwrap().v = nv,
            Germ::Edge(e, false) => out.edges.get_mut(&e).unwrap().w = nv,
            Germ::Leg(l) => out.legs.iter_mut().find(|x| x.id == l).unwrap().v = nv,
        }
    }
    let ne = out.edges.keys().next_back().map_or(0, |k| k + 1);
    out.edges.insert(ne, TypeEdge { v, w: nv, slope });
    Ok(out)
}

/// The three ways of splitting a 4-valent vertex, one per pairing that
/// contains the first germ.
pub fn all_splits(t: &CombinatorialType, v: usize) -> Result<Vec<(Vec<Germ>, CombinatorialType)>> {
    let star = type_star(t, v);
    if star.len() != 4 {
        return Err(Error::NotFourValent(v));
    }
    (1..4)
        .map(|i| {
            let p = vec![star[0], star[i]];
            split_four_valent(t, v, &p).map(|t2| (p, t2))
        })
        .collect()
}

/// Splits `v` in a curve, with the new edge of length zero.
fn split_vertex(c: &Curve, v: usize, moved: &[Germ]) -> Result<(Curve, usize, usize)> {
    let star = c.star(v);
    if moved.len() < 2 || star.len() < moved.len() + 2 || !moved.iter().all(|g| star.contains(g)) {
        return Err(Error::InvalidPairing(format!("{moved:?} at vertex {v}")));
    }
    let slope = moved.iter().fold([0, 0], |s, g| crate::arith::add(s, c.germ_slope(*g)));
    let mut out = c.clone();
    let nv = out.add_vertex(c.vertices[&v].pos.clone());
    for g in moved {
        match *g {
            Germ::Edge(e, true) => out.edges.get_mut(&e).unwrap().v = nv,
            Germ::Edge(e, false) => out.edges.get_mut(&e).unwrap().w = nv,
            Germ::Leg(l) => out.legs.iter_mut().find(|x| x.id == l).unwrap().v = nv,
        }
    }
    let ne = out.insert_edge(v, nv, q(0), slope);
    Ok((out, nv, ne))
}

/// Merges the endpoints of every zero-length edge. A merged vertex gains
/// the genus of the subgraph collapsed into it.
fn contract_zero_edges(c: &Curve) -> Curve {
    let zero: Vec<usize> = c.edges.values().filter(|e| e.length.is_zero()).map(|e| e.id).collect();
    if zero.is_empty() {
        return c.clone();
    }
    let mut parent: BTreeMap<usize, usize> = c.vertices.keys().map(|&v| (v, v)).collect();
    fn find(p: &mut BTreeMap<usize, usize>, x: usize) -> usize {
        let y = p[&x];
        if y == x {
            return x;
        }
        let r = find(p, y);
        p.insert(x, r);
        r
    }
    for &e in &zero {
        let (a, b) = (find(&mut parent, c.edges[&e].v), find(&mut parent, c.edges[&e].w));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            parent.insert(hi, lo);
        }
    }
    let mut out = c.clone();
    let mut extra: BTreeMap<usize, i64> = BTreeMap::new();
    for &e in &zero {
        let r = find(&mut parent, c.edges[&e].v);
        *extra.entry(r).or_default() += 1;
        out.edges.remove(&e);
    }
    let vs: Vec<usize> = c.vertices.keys().copied().collect();
    for &v in &vs {
        let r = find(&mut parent, v);
        if r != v {
            let w = out.vertices.remove(&v).unwrap().weight;
            out.vertices.get_mut(&r).unwrap().weight += w;
            *extra.entry(r).or_default() -= 1;
        }
    }
    for (r, k) in extra {
        out.vertices.get_mut(&r).unwrap().weight += k as u32;
    }
    for e in out.edges.values_mut() {
        e.v = find(&mut parent, e.v);
        e.w = find(&mut parent, e.w);
    }
    for l in out.legs.iter_mut() {
        l.v = find(&mut parent, l.v);
    }
    out
}

/// Removes a weight-zero vertex with exactly two opposite non-contracted
/// germs and no marks, joining them.
fn smooth_vertex(c: &mut Curve, v: usize) -> bool {
    let star = c.star(v);
    if c.vertices[&v].weight != 0 || star.len() != 2 {
        return false;
    }
    let (a, b) = (star[0], star[1]);
    if let (Germ::Edge(x, _), Germ::Edge(y, _)) = (a, b) {
        if x == y {
            return false;
        }
    }
    let s = c.germ_slope(b);
    if c.germ_slope(a) != [-s[0], -s[1]] || s == [0, 0] {
        return false;
    }
    let far = |c: &Curve, g: Germ| match g {
        Germ::Edge(e, _) => Some(c.edges[&e].other(v)),
        Germ::Leg(_) => None,
    };
    match (a, b) {
        (Germ::Edge(x, _), Germ::Edge(y, _)) => {
            let (ua, ub) = (far(c, a).unwrap(), far(c, b).unwrap());
            let len = &c.edges[&x].length + &c.edges[&y].length;
            let keep = x.min(y);
            c.edges.remove(&x.max(y));
            let e = c.edges.get_mut(&keep).unwrap();
            // Oriented from `ua` to `ub`, along the slope of germ `b`.
            e.v = ua;
            e.w = ub;
            e.slope = s;
            e.length = len;
        }
        (Germ::Edge(x, _), Germ::Leg(l)) | (Germ::Leg(l), Germ::Edge(x, _)) => {
            let u = c.edges[&x].other(v);
            c.edges.remove(&x);
            c.legs.iter_mut().find(|g| g.id == l).unwrap().v = u;
        }
        _ => return false,
    }
    c.vertices.remove(&v);
    true
}

fn smooth_all(c: &mut Curve) {
    loop {
        let vs: Vec<usize> = c.vertices.keys().copied().collect();
        if !vs.into_iter().any(|v| smooth_vertex(c, v)) {
            break;
        }
    }
}

/// Drops a mark and smooths its vertex if that leaves it 2-valent.
pub fn forget_mark(c: &Curve, leg: usize) -> Result<Curve> {
    let l = c.leg(leg).ok_or_else(|| Error::Precondition(format!("no leg {leg}")))?;
    if !l.is_contracted() {
        return Err(Error::Precondition(format!("leg {leg} is not a mark")));
    }
    let v = l.v;
    let mut out = c.clone();
    out.legs.retain(|x| x.id != leg);
    smooth_vertex(&mut out, v);
    Ok(out)
}

// ---------------------------------------------------------------------------
// Families

fn row_dot(row: &[Q], u: &[Q]) -> Q {
    row.iter().zip(u).fold(q(0), |acc, (a, b)| acc + a * b)
}

fn is_vertical(s: IVec) -> bool {
    s[0] == 0 && s[1] != 0
}

/// Follows the vertical path out of `start` away from `avoid` edges until
/// a vertex with a non-vertical germ; `None` if it escapes along a leg.
fn walk_vertical(c: &Curve, start: usize, inside: &BTreeSet<usize>, up: bool) -> Option<usize> {
    let mut v = start;
    let mut came: Option<usize> = None;
    for _ in 0..=c.edges.len() {
        let germs = c.star(v);
        let floorish = germs.iter().any(|g| {
            let s = c.germ_slope(*g);
            s[0] != 0
        });
        if floorish {
            return Some(v);
        }
        let next: Vec<Germ> = germs
            .into_iter()
            .filter(|g| {
                let s = c.germ_slope(*g);
                is_vertical(s)
                    && (s[1] > 0) == up
                    && match g {
                        Germ::Edge(e, _) => !inside.contains(e) && Some(*e) != came,
                        Germ::Leg(_) => true,
                    }
            })
            .collect();
        match next.as_slice() {
            [Germ::Edge(e, _)] => {
                came = Some(*e);
                v = c.edges[e].other(v);
            }
            _ => return None,
        }
    }
    None
}

/// For each special subgraph sitting inside an elevator: its lowest and
/// highest attachment vertices and the ends of the surrounding elevator.
fn midpoint_frames(c: &Curve) -> Vec<(SpecialSubgraph, [usize; 4])> {
    let mut out = Vec::new();
    for s in realizability::find_special_subgraphs(c) {
        let attach: Vec<usize> = s
            .vertices
            .iter()
            .copied()
            .filter(|&v| {
                c.star(v).into_iter().any(|g| match g {
                    Germ::Edge(e, _) => !s.edges.contains(&e),
                    Germ::Leg(l) => !c.leg(l).unwrap().is_contracted(),
                })
            })
            .collect();
        let y = |v: &usize| c.vertices[v].pos[1].clone();
        let (Some(lo), Some(hi)) = (attach.iter().min_by_key(|v| y(v)), attach.iter().max_by_key(|v| y(v))) else {
            continue;
        };
        let (Some(bot), Some(top)) = (walk_vertical(c, *lo, &s.edges, false), walk_vertical(c, *hi, &s.edges, true))
        else {
            continue;
        };
        out.push((s, [bot, *lo, *hi, top]));
    }
    out
}

/// The linear conditions of the family of `c` with the marks `fixed`.
fn constraint_rows(c: &Curve, sys: &PositionSystem, fixed: &[usize]) -> Result<Matrix> {
    let mut rows = sys.cycle_rows.clone();
    for &id in fixed {
        let l = c.leg(id).ok_or_else(|| Error::Precondition(format!("fixed mark {id} is missing")))?;
        rows.push(sys.pos[&l.v][0].clone());
        rows.push(sys.pos[&l.v][1].clone());
    }
    for (_, [bot, lo, hi, top]) in midpoint_frames(c) {
        let n = sys.unknowns();
        let row: Vec<Q> = (0..n)
            .map(|k| &sys.pos[&lo][1][k] - &sys.pos[&bot][1][k] - &sys.pos[&top][1][k] + &sys.pos[&hi][1][k])
            .collect();
        if row.iter().any(|x| !x.is_zero()) {
            rows.push(row);
        }
    }
    Ok(rows)
}

struct Family {
    sys: PositionSystem,
    basis: Vec<Vec<Q>>,
    point: Vec<Q>,
}

fn family(c: &Curve, fixed: &[usize]) -> Result<Family> {
    let sys = c.combinatorial_type().position_system()?;
    let rows = constraint_rows(c, &sys, fixed)?;
    let basis = linalg::nullspace(&rows, sys.unknowns());
    let root = &c.vertices[&sys.root].pos;
    let mut point = vec![root[0].clone(), root[1].clone()];
    point.extend(sys.edge_ids.iter().map(|e| c.edges[e].length.clone()));
    Ok(Family { sys, basis, point })
}

impl Family {
    fn direction(&self) -> Result<Vec<Q>> {
        match self.basis.len() {
            0 => Err(Error::NoFreedom),
            1 => Ok(self.basis[0].clone()),
            k => Err(Error::Precondition(format!("family has dimension {k}"))),
        }
    }

    fn x_rate(&self, v: usize, d: &[Q]) -> Q {
        row_dot(&self.sys.pos[&v][0], d)
    }

    fn y_rate(&self, v: usize, d: &[Q]) -> Q {
        row_dot(&self.sys.pos[&v][1], d)
    }

    /// Largest step before some edge length reaches zero.
    fn wall_distance(&self, d: &[Q]) -> Option<Q> {
        let mut best: Option<Q> = None;
        for k in 0..self.sys.edge_ids.len() {
            let dk = &d[2 + k];
            if dk.is_negative() {
                let t = &self.point[2 + k] / -dk;
                if best.as_ref().is_none_or(|b| &t < b) {
                    best = Some(t);
                }
            }
        }
        best
    }

    /// The curve at parameter `t`; zero-length edges are contracted.
    fn at(&self, c: &Curve, d: &[Q], t: &Q) -> Curve {
        let u: Vec<Q> = self.point.iter().zip(d).map(|(a, b)| a + b * t).collect();
        let mut out = c.clone();
        for (k, e) in self.sys.edge_ids.iter().enumerate() {
            out.edges.get_mut(e).unwrap().length = u[2 + k].clone();
        }
        for (v, rows) in &self.sys.pos {
            out.vertices.get_mut(v).unwrap().pos = [row_dot(&rows[0], &u), row_dot(&rows[1], &u)];
        }
        contract_zero_edges(&out)
    }
}

fn scaled(d: &[Q], k: &Q) -> Vec<Q> {
    d.iter().map(|x| x * k).collect()
}

/// Moves along the normalised direction `d` by `amount`, refusing to pass
/// a wall.
fn step(c: &Curve, fam: &Family, d: &[Q], amount: &Q) -> Result<Curve> {
    if !amount.is_positive() {
        return Err(Error::Precondition("non-positive move".into()));
    }
    if let Some(w) = fam.wall_distance(d) {
        if amount > &w {
            return Err(Error::Precondition(format!("move of {amount} passes a wall at {w}")));
        }
    }
    Ok(fam.at(c, d, amount))
}

// ---------------------------------------------------------------------------
// Applying moves

fn elevator_direction(c: &Curve, fixed: &[usize], elevator: usize) -> Result<(Family, Vec<Q>)> {
    let fam = family(c, fixed)?;
    let d = fam.direction()?;
    let e = c.edges.get(&elevator).ok_or_else(|| Error::Precondition(format!("no edge {elevator}")))?;
    let r = fam.x_rate(e.v, &d);
    if r.is_zero() {
        return Err(Error::NoFreedom);
    }
    let d = scaled(&d, &(q(1) / r));
    Ok((fam, d))
}

fn split_direction(c: &Curve, fixed: &[usize], vertex: usize, germs: &[Germ]) -> Result<(Curve, Family, Vec<Q>, usize)> {
    let (c2, _, ne) = split_vertex(c, vertex, germs)?;
    let fam = family(&c2, fixed)?;
    let d = fam.direction()?;
    let col = fam.sys.col_of_edge(ne);
    if d[col].is_zero() {
        return Err(Error::NoFreedom);
    }
    let d = scaled(&d, &(q(1) / &d[col]));
    Ok((c2, fam, d, ne))
}

fn flattened_with_ends(c: &Curve, bottom: usize, top: usize) -> Result<SpecialSubgraph> {
    realizability::find_special_subgraphs(c)
        .into_iter()
        .find(|s| s.kind == SpecialKind::FlattenedCycle && s.endpoints == Some((bottom, top)))
        .ok_or_else(|| Error::NotFlattenedCycleWall(format!("no flattened cycle between {bottom} and {top}")))
}

/// Splits 4-valent ends of a flattened cycle so that its two edges at each
/// end stay together, and returns the resulting ends.
fn open_flattened(c: &Curve, bottom: usize, top: usize) -> Result<(Curve, usize, usize)> {
    let s = flattened_with_ends(c, bottom, top)?;
    let mut cur = c.clone();
    let mut ends = [bottom, top];
    for end in ends.iter_mut() {
        let star = cur.star(*end);
        if star.len() == 3 {
            continue;
        }
        if star.len() != 4 {
            return Err(Error::NotFlattenedCycleWall(format!("vertex {end} has valence {}", star.len())));
        }
        let inner: Vec<Germ> = star
            .into_iter()
            .filter(|g| matches!(g, Germ::Edge(e, _) if s.edges.contains(e)))
            .collect();
        if inner.len() != 2 {
            return Err(Error::NotFlattenedCycleWall(format!("vertex {end} is not an end of the cycle")));
        }
        let (c2, nv, _) = split_vertex(&cur, *end, &inner)?;
        cur = c2;
        *end = nv;
    }
    Ok((cur, ends[0], ends[1]))
}

/// Applies one move. `p` gates the development moves.
pub fn apply_move(c: &Curve, fixed: &[usize], mv: &Move, p: ResidueCharacteristic) -> Result<Curve> {
    match mv {
        Move::TranslateFloor { marks, dy, .. } => translate_marks(c, fixed, marks, dy),
        Move::TranslateElevator { elevator, dx } => {
            let (fam, d) = elevator_direction(c, fixed, *elevator)?;
            if dx.is_negative() {
                step(c, &fam, &scaled(&d, &q(-1)), &-dx)
            } else {
                step(c, &fam, &d, dx)
            }
        }
        Move::CrossSimpleWall { vertex, split, amount } => {
            let kind = c.combinatorial_type().classify_stratum()?.kind;
            if kind != StratumKind::SimpleWall || c.star(*vertex).len() != 4 {
                return Err(Error::NotOnWall(format!("vertex {vertex} of a {kind:?} stratum")));
            }
            let (c2, fam, d, _) = split_direction(c, fixed, *vertex, split)?;
            step(&c2, &fam, &d, amount)
        }
        Move::SplitFourValent { vertex, pairing, amount } => {
            if c.star(*vertex).len() != 4 {
                return Err(Error::NotFourValent(*vertex));
            }
            check_pairing(&c.star(*vertex), pairing)?;
            let (c2, fam, d, _) = split_direction(c, fixed, *vertex, pairing)?;
            step(&c2, &fam, &d, amount)
        }
        Move::ShrinkFlattenedCycle { bottom, top, amount } => {
            let (c2, b, t) = open_flattened(c, *bottom, *top)?;
            let fam = family(&c2, fixed)?;
            let d = fam.direction()?;
            let rate = fam.y_rate(t, &d) - fam.y_rate(b, &d);
            if rate.is_zero() {
                return Err(Error::NoFreedom);
            }
            let d = scaled(&d, &(q(-1) / rate));
            step(&c2, &fam, &d, amount)
        }
        Move::DevelopContractedLoop { vertex } => develop_contracted_loop(c, *vertex, p),
        Move::DevelopEllipticTail { vertex } => develop_elliptic_tail(c, *vertex, p),
        Move::StretchToLimit { edge } => {
            check_ray(c, fixed, *edge)?;
            Ok(c.clone())
        }
    }
}

/// Re-solves the curve with the listed marks moved up by `dy`; the type
/// must survive.
fn translate_marks(c: &Curve, fixed: &[usize], marks: &[usize], dy: &Q) -> Result<Curve> {
    let sys = c.combinatorial_type().position_system()?;
    let n = sys.unknowns();
    let mut rows = sys.cycle_rows.clone();
    let mut rhs = vec![q(0); rows.len()];
    for &id in fixed {
        let l = c.leg(id).ok_or_else(|| Error::Precondition(format!("fixed mark {id} is missing")))?;
        let mut p = c.vertices[&l.v].pos.clone();
        if marks.contains(&id) {
            p[1] += dy;
        }
        for k in 0..2 {
            rows.push(sys.pos[&l.v][k].clone());
            rhs.push(p[k].clone());
        }
    }
    if linalg::rank(&rows) < n {
        return Err(Error::NoFreedom);
    }
    let u = linalg::solve(&rows, &rhs, n).ok_or(Error::NoFreedom)?;
    if u[2..].iter().any(|x| !x.is_positive()) {
        return Err(Error::NoFreedom);
    }
    let fam = Family { point: vec![q(0); n], basis: vec![], sys };
    Ok(fam.at(c, &u, &q(1)))
}

// ---------------------------------------------------------------------------
// Development at a weight-one vertex

fn weight_one_kappa(c: &Curve, v: usize) -> Result<u64> {
    let vx = c.vertices.get(&v).ok_or(Error::NotWeightOneVertex(v))?;
    let star = c.star(v);
    if vx.weight != 1 || star.len() != 2 || c.edges.values().any(|e| e.is_loop() && e.v == v) {
        return Err(Error::NotWeightOneVertex(v));
    }
    let m: Vec<i64> = star.iter().map(|g| crate::arith::gcd(c.germ_slope(*g)[0], c.germ_slope(*g)[1])).collect();
    if m[0] != m[1] || m[0] == 0 {
        return Err(Error::NotWeightOneVertex(v));
    }
    Ok(m[0] as u64)
}

/// Multiplicity of the two edges at a 2-valent weight-one vertex.
pub fn weight_one_multiplicity(c: &Curve, v: usize) -> Result<u64> {
    weight_one_kappa(c, v)
}

pub fn loop_allowed(kappa: u64, p: ResidueCharacteristic) -> bool {
    p == 0 || kappa % p != 0
}

pub fn tail_allowed(kappa: u64, p: ResidueCharacteristic) -> bool {
    p > 1 && is_power_of(kappa, p)
}

/// Replaces the weight of `v` by a contracted loop of length one.
pub fn develop_contracted_loop(c: &Curve, v: usize, p: ResidueCharacteristic) -> Result<Curve> {
    let kappa = weight_one_kappa(c, v)?;
    if !loop_allowed(kappa, p) {
        return Err(Error::CharacteristicGate { p, kappa });
    }
    let mut out = c.clone();
    out.vertices.get_mut(&v).unwrap().weight = 0;
    out.insert_edge(v, v, q(1), [0, 0]);
    Ok(out)
}

/// Moves the weight of `v` to a new 1-valent vertex on a contracted edge
/// of length one.
pub fn develop_elliptic_tail(c: &Curve, v: usize, p: ResidueCharacteristic) -> Result<Curve> {
    let kappa = weight_one_kappa(c, v)?;
    if !tail_allowed(kappa, p) {
        return Err(Error::CharacteristicGate { p, kappa });
    }
    let mut out = c.clone();
    out.vertices.get_mut(&v).unwrap().weight = 0;
    let t = out.add_weighted_vertex(c.vertices[&v].pos.clone(), 1);
    out.insert_edge(v, t, q(1), [0, 0]);
    Ok(out)
}

/// Type-level forms of the two developments.
pub fn develop_contracted_loop_type(c: &Curve, v: usize, p: ResidueCharacteristic) -> Result<CombinatorialType> {
    develop_contracted_loop(c, v, p).map(|x| x.combinatorial_type())
}

pub fn develop_elliptic_tail_type(c: &Curve, v: usize, p: ResidueCharacteristic) -> Result<CombinatorialType> {
    develop_elliptic_tail(c, v, p).map(|x| x.combinatorial_type())
}

/// The family of `c` is the ray on which only `edge` changes length.
fn check_ray(c: &Curve, fixed: &[usize], edge: usize) -> Result<Vec<Q>> {
    let fam = family(c, fixed)?;
    let d = fam.direction()?;
    let col = fam.sys.col_of_edge(edge);
    let only = d.iter().enumerate().all(|(k, x)| (k == col) != x.is_zero());
    if !only {
        return Err(Error::Precondition(format!("edge {edge} is not the only moving length")));
    }
    Ok(scaled(&d, &(q(1) / &d[col])))
}

// ---------------------------------------------------------------------------
// Certificates

/// Checks every per-state invariant of the engine.
pub fn check_state(c: &Curve, p: &LatticePolygon, fixed: &[usize], evaluations: &[QVec]) -> Result<()> {
    let fail = |m: String| Err(Error::InvalidCurve(m));
    c.validate()?;
    if !c.is_stable() {
        return fail("unstable".into());
    }
    if !floors::is_floor_decomposed(c) {
        return fail("not floor decomposed".into());
    }
    if !c.is_dual_to(p) {
        return fail("degree changed".into());
    }
    let (ok, _) = floors::elevator_multiplicity_bound_check(c, p)?;
    if !ok {
        return fail("elevator multiplicity above the width".into());
    }
    let ev: Vec<QVec> = fixed.iter().map(|id| c.vertices[&c.leg(*id).unwrap().v].pos.clone()).collect();
    if ev != evaluations {
        return fail("a fixed mark moved".into());
    }
    let bad = realizability::realizability_filter(c)?;
    if !bad.is_empty() {
        return fail(format!("{} midpoint violations", bad.len()));
    }
    Ok(())
}

struct Recorder<'a> {
    cert: MoveCertificate,
    cur: Curve,
    polygon: &'a LatticePolygon,
    evaluations: Vec<QVec>,
}

impl<'a> Recorder<'a> {
    fn new(c: Curve, fixed: Vec<usize>, released: Option<(usize, QVec)>, p: u64, polygon: &'a LatticePolygon, threshold: Q) -> Result<Self> {
        let evaluations: Vec<QVec> = fixed.iter().map(|id| c.vertices[&c.leg(*id).unwrap().v].pos.clone()).collect();
        check_state(&c, polygon, &fixed, &evaluations)?;
        Ok(Recorder {
            cert: MoveCertificate {
                initial: c.clone(),
                fixed,
                released,
                characteristic: p,
                threshold,
                steps: Vec::new(),
                terminal: Terminal::Stretched,
            },
            cur: c,
            polygon,
            evaluations,
        })
    }

    fn push(&mut self, mv: Move) -> Result<()> {
        let next = apply_move(&self.cur, &self.cert.fixed, &mv, self.cert.characteristic)?;
        check_state(&next, self.polygon, &self.cert.fixed, &self.evaluations)?;
        self.cert.steps.push(CertificateStep {
            mv,
            ty: next.combinatorial_type(),
            evaluations: self.evaluations.clone(),
        });
        self.cur = next;
        Ok(())
    }

    fn finish(mut self, terminal: Terminal) -> (Curve, MoveCertificate) {
        self.cert.terminal = terminal;
        (self.cur, self.cert)
    }
}

/// Replays a certificate, checking every recorded type and every state
/// invariant.
pub fn replay(cert: &MoveCertificate, polygon: &LatticePolygon) -> Result<Curve> {
    let evaluations: Vec<QVec> =
        cert.fixed.iter().map(|id| cert.initial.vertices[&cert.initial.leg(*id).unwrap().v].pos.clone()).collect();
    check_state(&cert.initial, polygon, &cert.fixed, &evaluations)?;
    let mut cur = cert.initial.clone();
    for (i, s) in cert.steps.iter().enumerate() {
        cur = apply_move(&cur, &cert.fixed, &s.mv, cert.characteristic)?;
        if cur.combinatorial_type() != s.ty {
            return Err(Error::InvalidCurve(format!("step {i} reached a different type")));
        }
        if s.evaluations != evaluations {
            return Err(Error::InvalidCurve(format!("step {i} records different evaluations")));
        }
        check_state(&cur, polygon, &cert.fixed, &evaluations)?;
    }
    match &cert.terminal {
        Terminal::Ray { edge, reduced, .. } => {
            check_ray(&cur, &cert.fixed, *edge)?;
            if &remove_ray_edge(&cur, *edge)? != reduced {
                return Err(Error::InvalidCurve("terminal curve does not match".into()));
            }
        }
        Terminal::Restart { complexity_after, remarked, .. } => {
            let (leg, _) = cert.released.as_ref().ok_or_else(|| Error::InvalidCurve("no released mark".into()))?;
            if &mark_bare_elevator(&cur, *leg)? != remarked
                || floors::vertical_complexity(remarked)? != Some(*complexity_after)
            {
                return Err(Error::InvalidCurve("restart curve does not match".into()));
            }
        }
        _ => {}
    }
    Ok(cur)
}

/// The curve before the first move and after each move, without checks.
pub fn snapshots(cert: &MoveCertificate) -> Result<Vec<Curve>> {
    let mut out = vec![cert.initial.clone()];
    for s in &cert.steps {
        let next = apply_move(out.last().unwrap(), &cert.fixed, &s.mv, cert.characteristic)?;
        out.push(next);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Stretching

fn mark_ids(c: &Curve) -> Vec<usize> {
    c.marks().iter().map(|l| l.id).collect()
}

fn threshold_for(c: &Curve, p: &LatticePolygon) -> Result<Q> {
    let profile = c.profile_on(p).ok_or(Error::NotDual)?;
    let pts = c.evaluate();
    let xs = pts.iter().map(|x| &x[0]);
    let diam = match (xs.clone().min(), xs.max()) {
        (Some(a), Some(b)) => b - a,
        _ => q(0),
    };
    enumeration::stretch_threshold(p, &profile, c.genus().max(0) as usize, &diam)
}

/// Order of the marks from the bottom up: for each floor, the legs going
/// down to it, its own mark, then marks on elevators leaving it upwards.
fn stretch_order(c: &Curve) -> Result<Vec<(usize, usize)>> {
    let d = floors::decompose(c)?;
    let basics = floors::basic_floor_to_floor_elevators(c)?;
    let y = |v: usize| c.vertices[&v].pos[1].clone();
    let mut keyed: Vec<((usize, u8, Q), usize, usize)> = Vec::new();
    for l in c.marks() {
        if let Some(f) = d.floor_of(l.v) {
            keyed.push(((f, 1, y(l.v)), l.id, f));
            continue;
        }
        if let Some(b) = basics.iter().find(|b| b.legs.contains(&l.id)) {
            let f = d.floor_of(b.bottom).ok_or(Error::NotFloorDecomposed)?;
            keyed.push(((f, 2, y(l.v)), l.id, f));
            continue;
        }
        // A mark on a leg: its floor is where the leg leaves.
        let f = walk_vertical(c, l.v, &BTreeSet::new(), true)
            .and_then(|v| d.floor_of(v))
            .map(|f| ((f, 0, y(l.v)), f));
        let g = walk_vertical(c, l.v, &BTreeSet::new(), false).and_then(|v| d.floor_of(v)).map(|f| ((f, 2, y(l.v)), f));
        let (k, f) = f.or(g).ok_or_else(|| Error::Precondition(format!("mark {} is on no elevator", l.id)))?;
        keyed.push((k, l.id, f));
    }
    keyed.sort();
    Ok(keyed.into_iter().map(|(_, id, f)| (id, f)).collect())
}

/// Raises marks from the bottom up until consecutive marks are at least
/// the stretch threshold apart; the type never changes.
pub fn stretch_points(c: &Curve, polygon: &LatticePolygon) -> Result<(Curve, MoveCertificate)> {
    let fixed = mark_ids(c);
    let threshold = threshold_for(c, polygon)?;
    let mut rec = Recorder::new(c.clone(), fixed.clone(), None, 0, polygon, threshold.clone())?;
    let order = stretch_order(c)?;
    let ty = c.combinatorial_type();
    for k in 1..order.len() {
        let pos = |c: &Curve, id: usize| c.vertices[&c.leg(id).unwrap().v].pos[1].clone();
        let below = order[..k].iter().map(|(id, _)| pos(&rec.cur, *id)).max().unwrap();
        let gap = pos(&rec.cur, order[k].0) - below;
        if gap >= threshold {
            continue;
        }
        let dy = &threshold - gap;
        let marks: Vec<usize> = order[k..].iter().map(|(id, _)| *id).collect();
        let next = translate_marks(&rec.cur, &fixed, &marks, &dy)?;
        if next.combinatorial_type() != ty {
            return Err(Error::NoFreedom);
        }
        // The translated marks move, so evaluations are re-recorded.
        rec.cur = next;
        rec.evaluations = fixed.iter().map(|id| rec.cur.vertices[&rec.cur.leg(*id).unwrap().v].pos.clone()).collect();
        rec.cert.steps.push(CertificateStep {
            mv: Move::TranslateFloor { floor: order[k].1, marks, dy },
            ty: ty.clone(),
            evaluations: rec.evaluations.clone(),
        });
    }
    Ok(rec.finish(Terminal::Stretched))
}

/// Replays a stretching certificate, whose moves relocate the marks.
pub fn replay_stretch(cert: &MoveCertificate) -> Result<Curve> {
    let mut cur = cert.initial.clone();
    for (i, s) in cert.steps.iter().enumerate() {
        let Move::TranslateFloor { marks, dy, .. } = &s.mv else {
            return Err(Error::InvalidCurve(format!("step {i} is not a translation")));
        };
        cur = translate_marks(&cur, &cert.fixed, marks, dy)?;
        let ev: Vec<QVec> = cert.fixed.iter().map(|id| cur.vertices[&cur.leg(*id).unwrap().v].pos.clone()).collect();
        if cur.combinatorial_type() != s.ty || ev != s.evaluations {
            return Err(Error::InvalidCurve(format!("step {i} does not replay")));
        }
    }
    Ok(cur)
}

// ---------------------------------------------------------------------------
// Reduction to two elevators

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoElevators {
    pub curve: Curve,
    pub e: usize,
    pub e_prime: usize,
    pub case: ReductionCase,
    pub certificates: Vec<MoveCertificate>,
}

struct Target {
    cycle: Cycle,
    complexity: usize,
    /// Edges of the chosen elevator and its mark.
    e_edges: BTreeSet<usize>,
    e_bottom: usize,
    e_top: usize,
    mark: usize,
}

/// Every choice of cycle and elevator, best first: low vertical complexity,
/// then a high top floor, then small edge ids.
fn targets(c: &Curve) -> Result<Vec<Target>> {
    let d = floors::decompose(c)?;
    let basics = floors::basic_floor_to_floor_elevators(c)?;
    let mut keyed = Vec::new();
    for o in floors::cycles(c)? {
        let complexity = basics.iter().filter(|b| b.edges.is_subset(&o.edges)).count();
        let top = o
            .edges
            .iter()
            .filter(|e| c.edges[e].slope[0] != 0)
            .filter_map(|e| d.floor_of(c.edges[e].v))
            .max();
        let Some(k) = top else { continue };
        for e in basics.iter().filter(|b| b.edges.is_subset(&o.edges) && d.floor_of(b.top) == Some(k)) {
            if e.legs.len() != 1 {
                continue;
            }
            let key = (complexity, std::cmp::Reverse(k), o.edges.iter().copied().collect::<Vec<_>>(), e.edges.iter().copied().collect::<Vec<_>>());
            keyed.push((
                key,
                Target {
                    complexity,
                    e_edges: e.edges.clone(),
                    e_bottom: e.bottom,
                    e_top: e.top,
                    mark: *e.legs.iter().next().unwrap(),
                    cycle: o.clone(),
                },
            ));
        }
    }
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    if keyed.is_empty() {
        return Err(Error::Precondition("the curve has no cycle through a floor".into()));
    }
    Ok(keyed.into_iter().map(|(_, t)| t).collect())
}

/// The vertical edge of the cycle reached from `start` by walking along
/// floor edges of the cycle, starting away from `from`.
fn next_elevator(c: &Curve, cycle: &BTreeSet<usize>, start: usize, from: usize) -> Result<usize> {
    let (mut v, mut prev) = (start, from);
    for _ in 0..=cycle.len() {
        let next = cycle
            .iter()
            .copied()
            .find(|&e| e != prev && (c.edges[&e].v == v || c.edges[&e].w == v))
            .ok_or_else(|| Error::SearchExhausted("cycle ends".into()))?;
        if is_vertical(c.edges[&next].slope) {
            return Ok(next);
        }
        v = c.edges[&next].other(v);
        prev = next;
    }
    Err(Error::SearchExhausted("cycle has no second elevator".into()))
}

fn vertical_ends(c: &Curve, e: usize) -> (usize, usize) {
    let ed = &c.edges[&e];
    if ed.slope[1] > 0 {
        (ed.v, ed.w)
    } else {
        (ed.w, ed.v)
    }
}

fn germ_of(c: &Curve, v: usize, e: usize) -> Germ {
    *c.star(v).iter().find(|g| matches!(g, Germ::Edge(x, _) if *x == e)).expect("incident")
}

/// Finds the floor germ at `v` heading in the direction `sign`.
fn floor_germ(c: &Curve, v: usize, sign: i64) -> Option<Germ> {
    c.star(v).into_iter().find(|g| c.germ_slope(*g)[0] == sign)
}

/// The state reached by reduce_to_two_elevators.
struct Walk<'a> {
    rec: Recorder<'a>,
    e: usize,
    e_prime: usize,
    sign: i64,
    complexity: usize,
}

fn start_walk<'a>(c: &Curve, polygon: &'a LatticePolygon, p: u64, t: Target) -> Result<Walk<'a>> {
    let released_pos = c.vertices[&c.leg(t.mark).unwrap().v].pos.clone();
    let cur = forget_mark(c, t.mark)?;
    let fixed = mark_ids(&cur);
    let e = *t
        .e_edges
        .iter()
        .find(|e| cur.edges.contains_key(e))
        .ok_or_else(|| Error::SearchExhausted("elevator vanished".into()))?;
    let (b, top) = vertical_ends(&cur, e);
    if b != t.e_bottom || top != t.e_top {
        return Err(Error::Precondition("the elevator is not a single edge after releasing its mark".into()));
    }
    let mut cycle = t.cycle.edges.clone();
    cycle.retain(|x| cur.edges.contains_key(x));
    cycle.insert(e);
    let e_prime = next_elevator(&cur, &cycle, b, e)?;
    let (bp, tp) = vertical_ends(&cur, e_prime);
    let x_e = cur.vertices[&b].pos[0].clone();
    let x_ep = cur.vertices[if bp == b || tp == b { &b } else if cur.vertices[&bp].pos[1] == cur.vertices[&b].pos[1] { &bp } else { &tp }].pos[0].clone();
    let x_ep = if x_ep == x_e { cur.vertices[&bp].pos[0].clone() } else { x_ep };
    let sign = if x_ep > x_e { 1 } else { -1 };
    let threshold = threshold_for(c, polygon)?;
    let rec = Recorder::new(cur, fixed, Some((t.mark, released_pos)), p, polygon, threshold)?;
    Ok(Walk { rec, e, e_prime, sign, complexity: t.complexity })
}

impl<'a> Walk<'a> {
    /// A copy of the walk for looking ahead without recording.
    fn probe(&self, polygon: &'a LatticePolygon) -> Result<Walk<'a>> {
        let rec = Recorder::new(self.rec.cur.clone(), self.rec.cert.fixed.clone(), None, self.rec.cert.characteristic, polygon, q(0))?;
        Ok(Walk { rec, e: self.e, e_prime: self.e_prime, sign: self.sign, complexity: self.complexity })
    }

    fn e_ends(&self) -> (usize, usize) {
        vertical_ends(&self.rec.cur, self.e)
    }

    fn meets(&self, c: &Curve) -> bool {
        let (b, _) = vertical_ends(c, self.e);
        let ep = &c.edges[&self.e_prime];
        ep.v == b || ep.w == b
    }

    /// Moves `E` towards `E'`, passing special points, and stops in the
    /// open stratum just before `E` and `E'` meet.
    fn run(&mut self) -> Result<()> {
        for _ in 0..MAX_STEPS {
            let (fam, d) = elevator_direction(&self.rec.cur, &self.rec.cert.fixed, self.e)?;
            let d = scaled(&d, &q(self.sign));
            let t = fam
                .wall_distance(&d)
                .ok_or_else(|| Error::SearchExhausted("no wall between the two elevators".into()))?;
            let wall = fam.at(&self.rec.cur, &d, &t);
            if self.meets(&wall) {
                return Ok(());
            }
            self.rec.push(Move::TranslateElevator { elevator: self.e, dx: &t * q(self.sign) })?;
            let c = &self.rec.cur;
            let (b, top) = self.e_ends();
            let hit: Vec<usize> = [b, top].into_iter().filter(|v| c.star(*v).len() == 4).collect();
            let [v] = hit.as_slice() else {
                return Err(Error::SearchExhausted(format!("unexpected wall at vertices {hit:?}")));
            };
            let fg = floor_germ(c, *v, self.sign).ok_or_else(|| Error::SearchExhausted("floor ends".into()))?;
            let split = vec![germ_of(c, *v, self.e), fg];
            let (_, fam2, d2, _) = split_direction(c, &self.rec.cert.fixed, *v, &split)?;
            let amount = fam2.wall_distance(&d2).map_or(q(1), |w| w / q(2));
            self.rec.push(Move::CrossSimpleWall { vertex: *v, split, amount })?;
        }
        Err(Error::SearchExhausted("too many walls".into()))
    }

    /// Translates `E` onto `E'`.
    fn meet(&mut self) -> Result<()> {
        let (fam, d) = elevator_direction(&self.rec.cur, &self.rec.cert.fixed, self.e)?;
        let d = scaled(&d, &q(self.sign));
        let t = fam.wall_distance(&d).ok_or_else(|| Error::SearchExhausted("no meeting wall".into()))?;
        self.rec.push(Move::TranslateElevator { elevator: self.e, dx: t * q(self.sign) })
    }

    /// Decides between the two cases from the combinatorics at the meeting.
    fn meeting(&self) -> Result<Meeting> {
        let c = &self.rec.cur;
        let (u, top) = self.e_ends();
        let ep = &c.edges[&self.e_prime];
        if ep.v != u && ep.w != u {
            return Err(Error::SearchExhausted("the elevators did not meet".into()));
        }
        let s = ep.slope_from(u);
        if s[1] < 0 {
            if s[1].abs() == c.edges[&self.e].slope[1].abs() {
                return Ok(Meeting::Reduce(ReductionCase::OppositeEqual));
            }
            return Ok(Meeting::Lower);
        }
        let d = floors::decompose(c)?;
        let chain_top = walk_vertical(c, ep.other(u), &BTreeSet::from([self.e_prime]), true);
        match chain_top.and_then(|v| d.floor_of(v)) {
            Some(f) if Some(f) == d.floor_of(top) => Ok(Meeting::Reduce(ReductionCase::ComplexityTwo)),
            Some(_) => Ok(Meeting::Lower),
            None => Err(Error::SearchExhausted("upper elevator does not reach a floor".into())),
        }
    }

    /// At a meeting that is neither reducible configuration, carries the
    /// elevators past each other to the next floor. The cycle then uses
    /// fewer basic elevators, and the released mark is put back on the
    /// elevator left without one.
    fn lower(mut self) -> Result<(Curve, MoveCertificate)> {
        let before = self.complexity;
        let (u, _) = self.e_ends();
        let c = &self.rec.cur;
        let mut pairing = vec![germ_of(c, u, self.e), germ_of(c, u, self.e_prime)];
        let mut vertex = u;
        for _ in 0..MAX_STEPS {
            let fixed = self.rec.cert.fixed.clone();
            let (_, fam, d, behind) = split_direction(&self.rec.cur, &fixed, vertex, &pairing)?;
            let full = fam.wall_distance(&d).ok_or(Error::UnboundedMove)?;
            self.rec.push(Move::SplitFourValent { vertex, pairing: pairing.clone(), amount: full })?;
            let c = &self.rec.cur;
            let be = &c.edges[&behind];
            let m = be.w;
            let up = be.slope[1] > 0;
            let carried: Vec<Germ> = c
                .star(m)
                .into_iter()
                .filter(|g| matches!(g, Germ::Edge(e, _) if *e != behind && pairing.iter().any(|p| matches!(p, Germ::Edge(x, _) if x == e))))
                .collect();
            let [carried] = carried.as_slice() else {
                return Err(Error::SearchExhausted("lost track of the moving elevator".into()));
            };
            let star = c.star(m);
            if star.len() != 4 {
                return Err(Error::SearchExhausted(format!("vertex {m} has valence {}", star.len())));
            }
            let ahead = star.iter().copied().find(|g| {
                let s = c.germ_slope(*g);
                g != carried && !matches!(g, Germ::Edge(e, _) if *e == behind) && is_vertical(s) && (s[1] > 0) == up
            });
            if let Some(x) = ahead {
                pairing = vec![*carried, x];
                vertex = m;
                continue;
            }
            // A floor: attach the carried elevator to it and stop.
            let carried = *carried;
            let floor: Vec<Germ> = star.iter().copied().filter(|g| c.germ_slope(*g)[0] != 0).collect();
            for g in floor {
                let pairing = vec![carried, g];
                let Ok((_, fam, d, _)) = split_direction(&self.rec.cur, &fixed, m, &pairing) else { continue };
                let amount = fam.wall_distance(&d).map_or(q(1), |x| x / q(2));
                if self.rec.push(Move::SplitFourValent { vertex: m, pairing, amount }).is_ok() {
                    let released = self.rec.cert.released.as_ref().map(|r| r.0).unwrap();
                    let remarked = mark_bare_elevator(&self.rec.cur, released)?;
                    let after = floors::vertical_complexity(&remarked)?.unwrap_or(0);
                    if after >= before {
                        return Err(Error::SearchExhausted("vertical complexity did not drop".into()));
                    }
                    let (_, cert) = self.rec.finish(Terminal::Restart {
                        complexity_before: before,
                        complexity_after: after,
                        remarked: remarked.clone(),
                    });
                    return Ok((remarked, cert));
                }
            }
            return Err(Error::SearchExhausted(format!("no way past floor vertex {m}")));
        }
        Err(Error::SearchExhausted("too many walls".into()))
    }
}

enum Meeting {
    Reduce(ReductionCase),
    Lower,
}

/// Puts mark `leg` at the middle of the one elevator without a mark.
pub fn mark_bare_elevator(c: &Curve, leg: usize) -> Result<Curve> {
    let basics = floors::basic_floor_to_floor_elevators(c)?;
    let bare: Vec<_> = basics.iter().filter(|b| b.legs.is_empty()).collect();
    let [b] = bare.as_slice() else {
        return Err(Error::SearchExhausted(format!("{} elevators without a mark", bare.len())));
    };
    let e = b.edges.iter().max_by_key(|e| c.edges[*e].length.clone()).copied().unwrap();
    let ed = c.edges[&e].clone();
    let half = &ed.length / q(2);
    let mut out = c.clone();
    let pos = crate::arith::qstep(&c.vertices[&ed.v].pos, &half, ed.slope);
    let m = out.add_vertex(pos);
    let edge = out.edges.get_mut(&e).unwrap();
    edge.w = m;
    edge.length = half.clone();
    out.insert_edge(m, ed.w, half, ed.slope);
    out.legs.push(Leg { id: leg, v: m, slope: [0, 0] });
    out.normalize_leg_order();
    Ok(out)
}

/// Moves a curve of positive genus through stretched marks until two
/// elevators of one cycle are about to meet at a floor in one of the two
/// reducible configurations.
pub fn reduce_to_two_elevators(c: &Curve, polygon: &LatticePolygon) -> Result<TwoElevators> {
    let (mut out, mut restarts) = with_restarts(c, polygon, |cur, t| reduce_with(cur, polygon, t))?;
    restarts.append(&mut out.certificates);
    out.certificates = restarts;
    Ok(out)
}

/// Tries each target in turn. A characteristic gate is reported in
/// preference to other failures.
fn over_targets<T>(c: &Curve, mut f: impl FnMut(Target) -> Result<T>) -> Result<T> {
    if c.genus() < 1 {
        return Err(Error::Precondition("genus must be positive".into()));
    }
    let mut first: Option<Error> = None;
    for t in targets(c)? {
        match f(t) {
            Ok(x) => return Ok(x),
            Err(e) => {
                if first.as_ref().is_none_or(|f| !f.is_gate() && e.is_gate()) {
                    first = Some(e);
                }
            }
        }
    }
    Err(first.unwrap())
}

fn reduce_with(c: &Curve, polygon: &LatticePolygon, t: Target) -> Result<Outcome<TwoElevators>> {
    let mut w = start_walk(c, polygon, 0, t)?;
    w.run()?;
    let (e, e_prime) = (w.e, w.e_prime);
    let mut probe = w.probe(polygon)?;
    probe.meet()?;
    match probe.meeting()? {
        Meeting::Reduce(case) => {
            let (curve, cert) = w.rec.finish(Terminal::TwoElevators { e, e_prime, case });
            Ok(Outcome::Done(TwoElevators { curve, e, e_prime, case, certificates: vec![cert] }))
        }
        Meeting::Lower => {
            w.meet()?;
            let (curve, cert) = w.lower()?;
            Ok(Outcome::Restart(curve, cert))
        }
    }
}

enum Outcome<T> {
    Done(T),
    /// A curve of lower vertical complexity through the same marks.
    Restart(Curve, MoveCertificate),
}

/// Runs `f` on `c` until it succeeds, restretching after each restart.
/// Returns the result with the certificates of the restarts.
fn with_restarts<T>(
    c: &Curve,
    polygon: &LatticePolygon,
    mut f: impl FnMut(&Curve, Target) -> Result<Outcome<T>>,
) -> Result<(T, Vec<MoveCertificate>)> {
    let mut certs = Vec::new();
    let mut cur = c.clone();
    for _ in 0..MAX_STEPS {
        match over_targets(&cur, |t| f(&cur, t))? {
            Outcome::Done(x) => return Ok((x, certs)),
            Outcome::Restart(next, cert) => {
                certs.push(cert);
                let (s, sc) = stretch_points(&next, polygon)?;
                if !sc.steps.is_empty() {
                    certs.push(sc);
                }
                cur = s;
            }
        }
    }
    Err(Error::SearchExhausted("too many restarts".into()))
}

// ---------------------------------------------------------------------------
// Genus reduction

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    pub reduced: Curve,
    pub case: ReductionCase,
    pub kappa: Option<u64>,
    /// Certificates of the detours through lower complexity, in order.
    pub restarts: Vec<MoveCertificate>,
    pub certificate: MoveCertificate,
}

/// Drops the growing edge of a terminal ray, with a tail vertex it leaves
/// isolated, and smooths what is left.
pub fn remove_ray_edge(c: &Curve, edge: usize) -> Result<Curve> {
    let e = c.edges.get(&edge).ok_or_else(|| Error::Precondition(format!("no edge {edge}")))?.clone();
    let mut out = c.clone();
    out.edges.remove(&edge);
    for v in [e.v, e.w] {
        if out.vertices.contains_key(&v) && out.star(v).is_empty() && out.vertices[&v].weight == 1 && !e.is_loop() {
            out.vertices.remove(&v);
        }
    }
    smooth_all(&mut out);
    if !out.combinatorial_type().is_connected() {
        return Err(Error::DisconnectedGraph);
    }
    Ok(out)
}

fn weight_one_vertex(c: &Curve) -> Option<usize> {
    c.vertices.values().find(|v| v.weight == 1).map(|v| v.id)
}

/// One drop of the genus: reduce to two elevators, let them meet, and
/// develop the contracted edge, loop or tail that carries the genus away.
pub fn genus_reduction_step(c: &Curve, polygon: &LatticePolygon, p: ResidueCharacteristic) -> Result<ReductionStep> {
    let (mut step, restarts) = with_restarts(c, polygon, |cur, t| step_with(cur, polygon, p, t))?;
    step.restarts = restarts;
    Ok(step)
}

fn step_with(c: &Curve, polygon: &LatticePolygon, p: ResidueCharacteristic, t: Target) -> Result<Outcome<ReductionStep>> {
    let mut w = start_walk(c, polygon, p, t)?;
    w.run()?;
    let mut probe = w.probe(polygon)?;
    probe.meet()?;
    let meeting = probe.meeting()?;
    w.meet()?;
    let case = match meeting {
        Meeting::Reduce(case) => case,
        Meeting::Lower => {
            let (curve, cert) = w.lower()?;
            return Ok(Outcome::Restart(curve, cert));
        }
    };
    let mut kappa = None;
    let edge = match case {
        ReductionCase::OppositeEqual => {
            let (b, _) = w.e_ends();
            let split = vec![germ_of(&w.rec.cur, b, w.e), germ_of(&w.rec.cur, b, w.e_prime)];
            w.rec.push(Move::CrossSimpleWall { vertex: b, split, amount: q(1) })?;
            let gamma = *w.rec.cur.edges.keys().next_back().unwrap();
            w.rec.push(Move::StretchToLimit { edge: gamma })?;
            gamma
        }
        ReductionCase::ComplexityTwo => {
            let mut collapsed = None;
            for _ in 0..MAX_STEPS {
                if let Some(v) = weight_one_vertex(&w.rec.cur) {
                    collapsed = Some(v);
                    break;
                }
                let s = realizability::find_special_subgraphs(&w.rec.cur)
                    .into_iter()
                    .find(|s| s.kind == SpecialKind::FlattenedCycle)
                    .ok_or_else(|| Error::SearchExhausted("the flattened cycle disappeared".into()))?;
                let (bot, top) = s.endpoints.unwrap();
                let c = &w.rec.cur;
                if c.star(bot).len() == 4 && floor_germ(c, bot, 1).is_none() {
                    // The cycle end reached a mark on the elevator.
                    let pairing: Vec<Germ> =
                        c.star(bot).into_iter().filter(|g| matches!(g, Germ::Edge(e, _) if s.edges.contains(e))).collect();
                    let (_, fam, d, _) = split_direction(c, &w.rec.cert.fixed, bot, &pairing)?;
                    let amount = fam.wall_distance(&d).map_or(q(1), |x| x / q(2));
                    w.rec.push(Move::SplitFourValent { vertex: bot, pairing, amount })?;
                    continue;
                }
                if c.star(top).len() == 4 && floor_germ(c, top, 1).is_none() {
                    let pairing: Vec<Germ> =
                        c.star(top).into_iter().filter(|g| matches!(g, Germ::Edge(e, _) if s.edges.contains(e))).collect();
                    let (_, fam, d, _) = split_direction(c, &w.rec.cert.fixed, top, &pairing)?;
                    let amount = fam.wall_distance(&d).map_or(q(1), |x| x / q(2));
                    w.rec.push(Move::SplitFourValent { vertex: top, pairing, amount })?;
                    continue;
                }
                let (c2, b2, t2) = open_flattened(c, bot, top)?;
                let fam = family(&c2, &w.rec.cert.fixed)?;
                let d = fam.direction()?;
                let rate = fam.y_rate(t2, &d) - fam.y_rate(b2, &d);
                if rate.is_zero() {
                    return Err(Error::NoFreedom);
                }
                let d = scaled(&d, &(q(-1) / rate));
                let full = fam.wall_distance(&d).ok_or(Error::UnboundedMove)?;
                let opened = c.star(bot).len() == 4 || c.star(top).len() == 4;
                let amount = if opened { full / q(2) } else { full };
                w.rec.push(Move::ShrinkFlattenedCycle { bottom: bot, top, amount })?;
            }
            let u3 = collapsed.ok_or_else(|| Error::SearchExhausted("the cycle never collapsed".into()))?;
            let k = weight_one_kappa(&w.rec.cur, u3)?;
            kappa = Some(k);
            if loop_allowed(k, p) {
                w.rec.push(Move::DevelopContractedLoop { vertex: u3 })?;
            } else if tail_allowed(k, p) {
                w.rec.push(Move::DevelopEllipticTail { vertex: u3 })?;
            } else {
                return Err(Error::CharacteristicGate { p, kappa: k });
            }
            let gamma = *w.rec.cur.edges.keys().next_back().unwrap();
            w.rec.push(Move::StretchToLimit { edge: gamma })?;
            gamma
        }
    };
    let reduced = remove_ray_edge(&w.rec.cur, edge)?;
    if reduced.genus() != c.genus() - 1 {
        return Err(Error::InvalidCurve("genus did not drop by one".into()));
    }
    check_state(&reduced, polygon, &w.rec.cert.fixed, &w.rec.evaluations)?;
    let (_, certificate) = w.rec.finish(Terminal::Ray { edge, case, kappa, reduced: reduced.clone() });
    Ok(Outcome::Done(ReductionStep { reduced, case, kappa, restarts: Vec::new(), certificate }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionPath {
    pub certificates: Vec<MoveCertificate>,
    pub steps: Vec<ReductionStep>,
    pub curves: Vec<Curve>,
}

/// Reduces the genus to zero one step at a time, stretching the remaining
/// marks before every step.
pub fn genus_reduction_path(c: &Curve, polygon: &LatticePolygon, p: ResidueCharacteristic) -> Result<ReductionPath> {
    if p != 0 && !crate::arith::is_prime(p) {
        return Err(Error::Precondition(format!("{p} is neither 0 nor prime")));
    }
    let interior = polygon.interior_lattice_points().len() as i64;
    if c.genus() < 0 || c.genus() > interior {
        return Err(Error::HypothesesNotMet(format!("genus {} outside 0..={interior}", c.genus())));
    }
    let mut path = ReductionPath { certificates: Vec::new(), steps: Vec::new(), curves: vec![c.clone()] };
    let mut cur = c.clone();
    loop {
        let (s, cert) = stretch_points(&cur, polygon)?;
        if !cert.steps.is_empty() {
            path.certificates.push(cert);
        }
        cur = s;
        if cur.genus() == 0 {
            return Ok(path);
        }
        let step = genus_reduction_step(&cur, polygon, p)?;
        path.certificates.extend(step.restarts.iter().cloned());
        path.certificates.push(step.certificate.clone());
        cur = step.reduced.clone();
        path.curves.push(cur.clone());
        path.steps.push(step);
    }
}
