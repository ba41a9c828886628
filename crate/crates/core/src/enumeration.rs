//! Floor decomposed curves through vertically stretched points.
//!
//! Through such points every curve splits into floors and elevators with
//! exactly one marked point each, so the search runs over the points from
//! the bottom up: every point is either the mark of a new floor or the mark
//! of an elevator (a leg going down to a later floor, a leg going up from an
//! earlier one, or a bounded elevator between two floors). Heights follow
//! from the marks; positions are solved exactly once the combinatorics is
//! fixed.

pub mod caporaso_harris;

use crate::arith::{det, q, IVec, Q, QVec};
use crate::error::{Error, Result};
use crate::floors;
use crate::polygon::{dual_degree, LatticePolygon, TangencyProfile};
use crate::tropical::{self, Curve};
use num::Signed;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

pub use caporaso_harris::caporaso_harris_oracle;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfiguration {
    pub points: Vec<QVec>,
    pub stretched: bool,
    /// Minimal vertical gap the configuration was built with.
    pub threshold: Q,
}

/// Leg data of the search, read off from the polygon and profile.
#[derive(Clone, Debug)]
struct Boundary {
    /// `a` for left legs `(-1, a)`.
    left: BTreeMap<i64, usize>,
    /// `b` for right legs `(1, b)`.
    right: BTreeMap<i64, usize>,
    /// Weights of legs `(0, -w)`.
    bottom: BTreeMap<i64, usize>,
    /// Weights of legs `(0, w)`.
    top: BTreeMap<i64, usize>,
    height: usize,
    width: i64,
}

fn boundary(p: &LatticePolygon, profile: &TangencyProfile) -> Result<Boundary> {
    let width = p.width()?;
    if !crate::polygon::profile_valid_for_theorem(p, profile)? {
        return Err(Error::ProfileMismatch("non-trivial on a non-horizontal side".into()));
    }
    let mut b = Boundary {
        left: BTreeMap::new(),
        right: BTreeMap::new(),
        bottom: BTreeMap::new(),
        top: BTreeMap::new(),
        height: p.height() as usize,
        width,
    };
    for s in dual_degree(p, profile)? {
        let slot = match s[0] {
            -1 => b.left.entry(s[1]),
            1 => b.right.entry(s[1]),
            0 if s[1] < 0 => b.bottom.entry(-s[1]),
            0 => b.top.entry(s[1]),
            _ => return Err(Error::NotHTransverse),
        };
        *slot.or_default() += 1;
    }
    Ok(b)
}

fn total(m: &BTreeMap<i64, usize>) -> usize {
    m.values().sum()
}

fn take(m: &mut BTreeMap<i64, usize>, k: i64) {
    let c = m.get_mut(&k).expect("present");
    *c -= 1;
    if *c == 0 {
        m.remove(&k);
    }
}

/// Upper bound for the absolute floor slope of any curve in the search.
fn slope_bound(b: &Boundary, g: usize) -> i64 {
    let legs: i64 = b.left.iter().chain(&b.right).map(|(k, c)| k.abs() * *c as i64).sum::<i64>()
        + b.bottom.iter().chain(&b.top).map(|(k, c)| k * *c as i64).sum::<i64>();
    legs + (g + b.height) as i64 * b.width
}

/// Vertical gap that makes a configuration stretched for `(p, profile, g)`
/// given the horizontal spread `diam` of the points.
pub fn stretch_threshold(p: &LatticePolygon, profile: &TangencyProfile, g: usize, diam: &Q) -> Result<Q> {
    let b = boundary(p, profile)?;
    let s = slope_bound(&b, g);
    Ok(q(2) * q(s + 1) * (diam + q(1)))
}

fn x_diameter(points: &[QVec]) -> Q {
    let xs = points.iter().map(|p| &p[0]);
    match (xs.clone().min(), xs.max()) {
        (Some(a), Some(b)) => b - a,
        _ => q(0),
    }
}

/// `n = |d| + g - 1` points with distinct abscissae and vertical gaps above
/// the stretch threshold, drawn deterministically from `seed`.
pub fn stretched_config(p: &LatticePolygon, profile: &TangencyProfile, g: usize, seed: u64) -> Result<PointConfiguration> {
    profile.validate(p)?;
    let n = (profile.size() + g).checked_sub(1).ok_or_else(|| Error::Precondition("empty profile".into()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut xs: Vec<i64> = (0..(10 * n as i64 + 10)).collect();
    xs.shuffle(&mut rng);
    xs.truncate(n);
    let pts: Vec<QVec> = xs.iter().map(|&x| [q(x), q(0)]).collect();
    let t = stretch_threshold(p, profile, g, &x_diameter(&pts))?;
    let points = xs
        .iter()
        .enumerate()
        .map(|(i, &x)| [q(x), &t * q(i as i64 + 1)])
        .collect();
    Ok(PointConfiguration { points, stretched: true, threshold: t })
}

/// Whether consecutive heights differ by at least the threshold required
/// for `(p, profile, g)`.
pub fn is_stretched(p: &LatticePolygon, profile: &TangencyProfile, g: usize, points: &[QVec]) -> Result<bool> {
    let t = stretch_threshold(p, profile, g, &x_diameter(points))?;
    let mut ys: Vec<&Q> = points.iter().map(|p| &p[1]).collect();
    ys.sort();
    let xs_distinct = {
        let mut xs: Vec<&Q> = points.iter().map(|p| &p[0]).collect();
        xs.sort();
        xs.windows(2).all(|w| w[0] != w[1])
    };
    Ok(xs_distinct && ys.windows(2).all(|w| w[1] - w[0] >= t))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    DownLeg,
    UpLeg,
    Bounded,
}

#[derive(Clone, Debug)]
struct FloorRec {
    point: usize,
    a: i64,
    b: i64,
    up_needed: i64,
}

#[derive(Clone, Debug)]
struct ElevRec {
    point: usize,
    w: i64,
    kind: Kind,
    lower: Option<usize>,
    upper: Option<usize>,
}

#[derive(Clone, Debug)]
struct State {
    floors: Vec<FloorRec>,
    elevs: Vec<ElevRec>,
    /// Elevators waiting for their upper floor.
    pending: Vec<usize>,
    bd: Boundary,
}

struct Search<'a> {
    points: &'a [QVec],
    /// Point indices sorted by height.
    order: Vec<usize>,
    height: usize,
    width: i64,
    rng: Option<ChaCha8Rng>,
    first_only: bool,
    found: Vec<State>,
}

impl Search<'_> {
    fn feasible(&self, i: usize, st: &State) -> bool {
        let left = self.order.len() - i;
        let floors_left = self.height - st.floors.len();
        let legs_left = total(&st.bd.bottom) + total(&st.bd.top);
        if left < floors_left + legs_left {
            return false;
        }
        if floors_left == 0 && (!st.pending.is_empty() || total(&st.bd.bottom) > 0) {
            return false;
        }
        let need: i64 = st.floors.iter().map(|f| f.up_needed).sum();
        let max_top = st.bd.top.keys().next_back().copied().unwrap_or(0).max(self.width);
        need <= (left - floors_left) as i64 * max_top
    }

    fn shuffle<T>(&mut self, v: &mut [T]) {
        if let Some(r) = self.rng.as_mut() {
            v.shuffle(r);
        }
    }

    fn done(&self) -> bool {
        self.first_only && !self.found.is_empty()
    }

    fn run(&mut self, i: usize, st: State) {
        if self.done() || !self.feasible(i, &st) {
            return;
        }
        if i == self.order.len() {
            if st.floors.len() == self.height
                && st.pending.is_empty()
                && st.floors.iter().all(|f| f.up_needed == 0)
                && total(&st.bd.left) + total(&st.bd.right) + total(&st.bd.bottom) + total(&st.bd.top) == 0
                && connected(&st)
            {
                self.found.push(st);
            }
            return;
        }
        let pt = self.order[i];
        let mut branches: Vec<State> = Vec::new();

        // The point marks a new floor.
        if st.floors.len() < self.height {
            let last = st.floors.len() + 1 == self.height;
            let np = st.pending.len();
            for mask in 0u32..(1u32 << np) {
                if last && mask != (1u32 << np) - 1 {
                    continue;
                }
                let chosen: Vec<usize> = (0..np).filter(|k| mask >> k & 1 == 1).map(|k| st.pending[k]).collect();
                let down: i64 = chosen.iter().map(|&e| st.elevs[e].w).sum();
                for &a in st.bd.left.keys() {
                    for &b in st.bd.right.keys() {
                        let need = down - (a + b);
                        if need < 0 {
                            continue;
                        }
                        let mut s = st.clone();
                        let f = s.floors.len();
                        s.floors.push(FloorRec { point: pt, a, b, up_needed: need });
                        take(&mut s.bd.left, a);
                        take(&mut s.bd.right, b);
                        for &e in &chosen {
                            s.elevs[e].upper = Some(f);
                        }
                        s.pending.retain(|e| !chosen.contains(e));
                        branches.push(s);
                    }
                }
            }
        }
        // A leg going down to a floor above.
        if st.floors.len() < self.height {
            for &w in st.bd.bottom.keys() {
                let mut s = st.clone();
                take(&mut s.bd.bottom, w);
                s.elevs.push(ElevRec { point: pt, w, kind: Kind::DownLeg, lower: None, upper: None });
                s.pending.push(s.elevs.len() - 1);
                branches.push(s);
            }
        }
        for f in 0..st.floors.len() {
            let need = st.floors[f].up_needed;
            // A leg going up from a floor below.
            for &w in st.bd.top.keys() {
                if w > need {
                    continue;
                }
                let mut s = st.clone();
                take(&mut s.bd.top, w);
                s.floors[f].up_needed -= w;
                s.elevs.push(ElevRec { point: pt, w, kind: Kind::UpLeg, lower: Some(f), upper: None });
                branches.push(s);
            }
            // A bounded elevator from a floor below to one above.
            if st.floors.len() < self.height {
                for w in 1..=need.min(self.width) {
                    let mut s = st.clone();
                    s.floors[f].up_needed -= w;
                    s.elevs.push(ElevRec { point: pt, w, kind: Kind::Bounded, lower: Some(f), upper: None });
                    s.pending.push(s.elevs.len() - 1);
                    branches.push(s);
                }
            }
        }
        self.shuffle(&mut branches);
        for s in branches {
            self.run(i + 1, s);
            if self.done() {
                return;
            }
        }
    }
}

fn connected(st: &State) -> bool {
    let n = st.floors.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for e in &st.elevs {
        if let (Some(a), Some(b)) = (e.lower, e.upper) {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
    }
    let r0 = find(&mut parent, 0);
    (0..n).all(|x| find(&mut parent, x) == r0)
}

/// Builds the curve of a finished search state.
fn build(points: &[QVec], st: &State) -> Result<Curve> {
    let mut c = Curve::new();
    let mut mark_vertex: BTreeMap<usize, usize> = BTreeMap::new();
    // Floor vertex of each elevator end: (elevator, is_lower_end) -> vertex.
    let mut ends: BTreeMap<(usize, bool), usize> = BTreeMap::new();
    for (fi, f) in st.floors.iter().enumerate() {
        // (x, slope change, attachment)
        let mut nodes: Vec<(Q, i64, Option<(usize, bool)>)> = vec![(points[f.point][0].clone(), 0, None)];
        for (ei, e) in st.elevs.iter().enumerate() {
            if e.lower == Some(fi) {
                nodes.push((points[e.point][0].clone(), e.w, Some((ei, true))));
            }
            if e.upper == Some(fi) {
                nodes.push((points[e.point][0].clone(), -e.w, Some((ei, false))));
            }
        }
        nodes.sort_by(|x, y| x.0.cmp(&y.0));
        // Slopes of the segments: slopes[j] is right of node j.
        let mut slopes = Vec::with_capacity(nodes.len());
        let mut s = -f.a;
        for n in &nodes {
            s -= n.1;
            slopes.push(s);
        }
        debug_assert_eq!(s, f.b);
        let mi = nodes.iter().position(|n| n.2.is_none()).unwrap();
        let mut ys = vec![q(0); nodes.len()];
        ys[mi] = points[f.point][1].clone();
        for j in mi + 1..nodes.len() {
            ys[j] = &ys[j - 1] + q(slopes[j - 1]) * (&nodes[j].0 - &nodes[j - 1].0);
        }
        for j in (0..mi).rev() {
            ys[j] = &ys[j + 1] - q(slopes[j]) * (&nodes[j + 1].0 - &nodes[j].0);
        }
        let ids: Vec<usize> = nodes
            .iter()
            .zip(&ys)
            .map(|(n, y)| c.add_vertex([n.0.clone(), y.clone()]))
            .collect();
        for j in 0..nodes.len() - 1 {
            let len = &nodes[j + 1].0 - &nodes[j].0;
            c.insert_edge(ids[j], ids[j + 1], len, [1, slopes[j]]);
        }
        c.add_leg(ids[0], [-1, f.a]);
        c.add_leg(*ids.last().unwrap(), [1, f.b]);
        mark_vertex.insert(f.point, ids[mi]);
        for (j, n) in nodes.iter().enumerate() {
            if let Some(k) = n.2 {
                ends.insert(k, ids[j]);
            }
        }
    }
    for (ei, e) in st.elevs.iter().enumerate() {
        let p = &points[e.point];
        let m = c.add_vertex(p.clone());
        mark_vertex.insert(e.point, m);
        let y_of = |c: &Curve, v: usize| c.vertices[&v].pos[1].clone();
        let w = q(e.w);
        match e.kind {
            Kind::Bounded => {
                let lo = ends[&(ei, true)];
                let hi = ends[&(ei, false)];
                let (l1, l2) = ((&p[1] - y_of(&c, lo)) / &w, (y_of(&c, hi) - &p[1]) / &w);
                if !l1.is_positive() || !l2.is_positive() {
                    return Err(Error::NotStretched);
                }
                c.insert_edge(lo, m, l1, [0, e.w]);
                c.insert_edge(m, hi, l2, [0, e.w]);
            }
            Kind::UpLeg => {
                let lo = ends[&(ei, true)];
                let l = (&p[1] - y_of(&c, lo)) / &w;
                if !l.is_positive() {
                    return Err(Error::NotStretched);
                }
                c.insert_edge(lo, m, l, [0, e.w]);
                c.add_leg(m, [0, e.w]);
            }
            Kind::DownLeg => {
                let hi = ends[&(ei, false)];
                let l = (y_of(&c, hi) - &p[1]) / &w;
                if !l.is_positive() {
                    return Err(Error::NotStretched);
                }
                c.insert_edge(hi, m, l, [0, -e.w]);
                c.add_leg(m, [0, -e.w]);
            }
        }
    }
    // Marks in the order of the configuration.
    let free = std::mem::take(&mut c.legs);
    for k in 0..points.len() {
        c.legs.push(tropical::Leg { id: k, v: mark_vertex[&k], slope: [0, 0] });
    }
    for (j, mut l) in free.into_iter().enumerate() {
        l.id = points.len() + j;
        c.legs.push(l);
    }
    c.validate()?;
    Ok(c)
}

fn search(
    p: &LatticePolygon,
    profile: &TangencyProfile,
    g: usize,
    points: &[QVec],
    rng: Option<ChaCha8Rng>,
    first_only: bool,
) -> Result<Vec<Curve>> {
    let bd = boundary(p, profile)?;
    let n = profile.size() + g;
    if points.len() + 1 != n {
        return Err(Error::Precondition(format!("expected {} points, got {}", n - 1, points.len())));
    }
    if !is_stretched(p, profile, g, points)? {
        return Err(Error::NotStretched);
    }
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a][1].cmp(&points[b][1]));
    let mut s = Search {
        points,
        order,
        height: bd.height,
        width: bd.width,
        rng,
        first_only,
        found: Vec::new(),
    };
    let st = State { floors: Vec::new(), elevs: Vec::new(), pending: Vec::new(), bd };
    s.run(0, st);
    let found = std::mem::take(&mut s.found);
    found.iter().map(|st| build(s.points, st)).collect()
}

/// All floor decomposed curves of genus `g` and degree dual to
/// `(p, profile)` through the points of `config`.
pub fn enumerate_through_points(
    p: &LatticePolygon,
    profile: &TangencyProfile,
    g: usize,
    config: &PointConfiguration,
) -> Result<Vec<Curve>> {
    search(p, profile, g, &config.points, None, false)
}

/// One curve through `config`, found with randomised branch order.
pub fn random_curve_through(
    p: &LatticePolygon,
    profile: &TangencyProfile,
    g: usize,
    config: &PointConfiguration,
    seed: u64,
) -> Result<Option<Curve>> {
    let rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(search(p, profile, g, &config.points, Some(rng), true)?.into_iter().next())
}

/// Product of `|det|` of the two non-contracted slopes at each trivalent
/// vertex, ignoring contracted legs.
pub fn vertex_multiplicity(c: &Curve) -> u64 {
    let mut m: u64 = 1;
    for &v in c.vertices.keys() {
        let s: Vec<IVec> = c
            .star(v)
            .into_iter()
            .map(|g| c.germ_slope(g))
            .filter(|s| *s != [0, 0])
            .collect();
        if s.len() == 3 {
            m *= det(s[0], s[1]).unsigned_abs();
        }
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub curves: Vec<Curve>,
    pub multiplicities: Vec<u64>,
    pub total: u64,
    pub threshold: Q,
    /// The multiplicity is the vertex-determinant product.
    pub multiplicity_rule: &'static str,
}

pub fn count_with_multiplicity(
    p: &LatticePolygon,
    profile: &TangencyProfile,
    g: usize,
    config: &PointConfiguration,
) -> Result<CountReport> {
    if !profile.is_trivial() {
        return Err(Error::UnsupportedProfile);
    }
    let curves = enumerate_through_points(p, profile, g, config)?;
    let multiplicities: Vec<u64> = curves.iter().map(vertex_multiplicity).collect();
    Ok(CountReport {
        total: multiplicities.iter().sum(),
        multiplicities,
        curves,
        threshold: config.threshold.clone(),
        multiplicity_rule: "product of |det| over trivalent vertices",
    })
}

/// Runs the per-curve checks every enumerated curve must pass.
pub fn check_enumerated(c: &Curve, p: &LatticePolygon, g: usize, config: &PointConfiguration) -> Result<()> {
    let fail = |m: &str| Err(Error::InvalidCurve(m.to_string()));
    c.validate()?;
    if !floors::is_floor_decomposed(c) {
        return fail("not floor decomposed");
    }
    if !c.is_stable() {
        return fail("not stable");
    }
    if !c.is_immersed() {
        return fail("not immersed");
    }
    if c.genus() != g as i64 {
        return fail("wrong genus");
    }
    if !c.combinatorial_type().is_weightless() {
        return fail("has weight");
    }
    if c.evaluate() != config.points {
        return fail("does not pass through the points");
    }
    let (ok, _) = floors::elevator_multiplicity_bound_check(c, p)?;
    if !ok {
        return fail("width bound violated");
    }
    if !tropical::general_position_check(c, &config.points)? {
        return fail("not in general position");
    }
    Ok(())
}

/// A random h-transverse polygon with at most the given width and height,
/// with every slice width in `0..=max_width`.
pub fn random_h_transverse_polygon(rng: &mut impl Rng, max_width: i64, max_height: i64) -> LatticePolygon {
    loop {
        let h = rng.gen_range(1..=max_height) as usize;
        let mut dl: Vec<i64> = (0..h).map(|_| rng.gen_range(-3..=3)).collect();
        let mut dr: Vec<i64> = (0..h).map(|_| rng.gen_range(-3..=3)).collect();
        dl.sort_unstable();
        dr.sort_unstable_by(|a, b| b.cmp(a));
        let w0 = rng.gen_range(0..=max_width);
        let (mut xl, mut xr) = (vec![0i64], vec![w0]);
        for k in 0..h {
            xl.push(xl[k] + dl[k]);
            xr.push(xr[k] + dr[k]);
        }
        if (0..=h).any(|k| xr[k] < xl[k] || xr[k] - xl[k] > max_width) {
            continue;
        }
        let mut pts = Vec::new();
        for k in 0..=h {
            pts.push([xl[k], k as i64]);
            pts.push([xr[k], k as i64]);
        }
        if let Ok(p) = LatticePolygon::convex_hull(&pts) {
            if p.is_h_transverse() && p.width().unwrap() <= max_width {
                return p;
            }
        }
    }
}

/// A random marked floor decomposed curve dual to `p` with trivial profile,
/// together with the stretched configuration of its own marks. Legs are
/// dealt to floors at random and the upward flux between consecutive floors
/// is split into random bounded elevators.
pub fn random_floor_decomposed_curve(rng: &mut impl Rng, p: &LatticePolygon) -> Result<(Curve, PointConfiguration)> {
    let profile = TangencyProfile::trivial(p);
    let bd = boundary(p, &profile)?;
    let h = bd.height;
    let expand = |m: &BTreeMap<i64, usize>| -> Vec<i64> {
        m.iter().flat_map(|(k, c)| std::iter::repeat_n(*k, *c)).collect()
    };
    let (mut left, mut right) = (expand(&bd.left), expand(&bd.right));
    let (bottom, top) = (expand(&bd.bottom), expand(&bd.top));
    for _ in 0..1000 {
        left.shuffle(rng);
        right.shuffle(rng);
        let down_at: Vec<usize> = bottom.iter().map(|_| rng.gen_range(0..h)).collect();
        let up_at: Vec<usize> = top.iter().map(|_| rng.gen_range(0..h)).collect();
        // Flux crossing the gap above floor k.
        let mut cross = vec![0i64; h];
        let mut acc = 0;
        for k in 0..h {
            let down: i64 = bottom.iter().zip(&down_at).filter(|(_, &f)| f == k).map(|(w, _)| w).sum();
            let up: i64 = top.iter().zip(&up_at).filter(|(_, &f)| f == k).map(|(w, _)| w).sum();
            acc += down - (left[k] + right[k]) - up;
            cross[k] = acc;
        }
        if cross[h - 1] != 0 || cross[..h - 1].iter().any(|&x| x <= 0) {
            continue;
        }
        let mut bounded: Vec<(usize, i64)> = Vec::new();
        for (k, &f) in cross[..h - 1].iter().enumerate() {
            let mut rest = f;
            while rest > 0 {
                let w = rng.gen_range(1..=rest);
                bounded.push((k, w));
                rest -= w;
            }
        }
        // Marks from the bottom up: legs down to floor k, floor k, legs up
        // from floor k, elevators from floor k to k + 1.
        let mut floors = Vec::new();
        let mut elevs = Vec::new();
        for k in 0..h {
            for (w, _) in bottom.iter().zip(&down_at).filter(|(_, &f)| f == k) {
                elevs.push(ElevRec { point: 0, w: *w, kind: Kind::DownLeg, lower: None, upper: Some(k) });
            }
            floors.push(FloorRec { point: 0, a: left[k], b: right[k], up_needed: 0 });
            for (w, _) in top.iter().zip(&up_at).filter(|(_, &f)| f == k) {
                elevs.push(ElevRec { point: 0, w: *w, kind: Kind::UpLeg, lower: Some(k), upper: None });
            }
            for &(_, w) in bounded.iter().filter(|(f, _)| *f == k) {
                elevs.push(ElevRec { point: 0, w, kind: Kind::Bounded, lower: Some(k), upper: Some(k + 1) });
            }
        }
        // Heights follow the order in which the records were pushed.
        let mut slots: Vec<(bool, usize)> = Vec::new();
        let (mut fi, mut ei) = (0, 0);
        for k in 0..h {
            while ei < elevs.len() && elevs[ei].kind == Kind::DownLeg && elevs[ei].upper == Some(k) {
                slots.push((false, ei));
                ei += 1;
            }
            slots.push((true, fi));
            fi += 1;
            while ei < elevs.len() && elevs[ei].lower == Some(k) {
                slots.push((false, ei));
                ei += 1;
            }
        }
        let n = slots.len();
        let mut xs: Vec<i64> = (0..(4 * n as i64 + 4)).collect();
        xs.shuffle(rng);
        let g = bounded.len() + 1 - h;
        let diam = q(4 * n as i64 + 4);
        let gap = stretch_threshold(p, &profile, g, &diam)?;
        let mut points = Vec::with_capacity(n);
        for (i, &(is_floor, j)) in slots.iter().enumerate() {
            points.push([q(xs[i]), &gap * q(i as i64 + 1)]);
            if is_floor {
                floors[j].point = i;
            } else {
                elevs[j].point = i;
            }
        }
        let st = State { floors, elevs, pending: Vec::new(), bd: bd.clone() };
        let c = build(&points, &st)?;
        return Ok((c, PointConfiguration { points, stretched: true, threshold: gap }));
    }
    Err(Error::SearchExhausted("no admissible leg distribution".into()))
}
