//! Convex lattice polygons in `M = Z^2` and the numerical data attached to
//! them: sides, normals, widths, tangency profiles and hypothesis reports.

use crate::arith::{
    ceil_q, complete_to_unimodular, det, dot, floor_q, gcd, is_prime, mat_apply, primitive, q, qr,
    IVec, Q,
};
use crate::error::{Error, Result};

pub type LatticePoint = IVec;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePolygon {
    vertices: Vec<LatticePoint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Side {
    pub tail: LatticePoint,
    pub head: LatticePoint,
    pub primitive_direction: IVec,
    pub primitive_outer_normal: IVec,
    pub lattice_length: i64,
}

impl Side {
    pub fn is_horizontal(&self) -> bool {
        self.primitive_direction[1] == 0
    }
}

fn twice_area(vs: &[IVec]) -> i64 {
    let n = vs.len();
    (0..n).map(|i| det(vs[i], vs[(i + 1) % n])).sum()
}

impl LatticePolygon {
    /// Builds a polygon from its vertices listed in cyclic order, in either
    /// orientation. The stored order is counterclockwise from the
    /// lexicographically smallest vertex.
    pub fn new(vertices: Vec<LatticePoint>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::NonConvexInput(format!("{n} vertices")));
        }
        let mut vs = vertices;
        if twice_area(&vs) < 0 {
            vs.reverse();
        }
        for i in 0..n {
            let a = vs[i];
            let b = vs[(i + 1) % n];
            let c = vs[(i + 2) % n];
            let turn = det([b[0] - a[0], b[1] - a[1]], [c[0] - b[0], c[1] - b[1]]);
            if turn <= 0 {
                return Err(Error::NonConvexInput(format!(
                    "no strict left turn at ({}, {})",
                    b[0], b[1]
                )));
            }
        }
        // A strictly convex closed path with positive turns can still wind twice.
        let total: f64 = (0..n)
            .map(|i| {
                let a = vs[i];
                let b = vs[(i + 1) % n];
                let c = vs[(i + 2) % n];
                let u = [(b[0] - a[0]) as f64, (b[1] - a[1]) as f64];
                let v = [(c[0] - b[0]) as f64, (c[1] - b[1]) as f64];
                (u[0] * v[1] - u[1] * v[0]).atan2(u[0] * v[0] + u[1] * v[1])
            })
            .sum();
        if (total - std::f64::consts::TAU).abs() > 1e-6 {
            return Err(Error::NonConvexInput("boundary winds more than once".into()));
        }
        let start = (0..n).min_by_key(|&i| vs[i]).unwrap();
        vs.rotate_left(start);
        Ok(LatticePolygon { vertices: vs })
    }

    /// Convex hull of a point set; collinear boundary points are dropped.
    pub fn convex_hull(points: &[LatticePoint]) -> Result<Self> {
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();
        if pts.len() < 3 {
            return Err(Error::NonConvexInput("fewer than three distinct points".into()));
        }
        let cross = |o: IVec, a: IVec, b: IVec| det([a[0] - o[0], a[1] - o[1]], [b[0] - o[0], b[1] - o[1]]);
        let mut lower: Vec<IVec> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<IVec> = Vec::new();
        for &p in pts.iter().rev() {
            while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        if lower.len() < 3 || twice_area(&lower) == 0 {
            return Err(Error::NonConvexInput("zero area".into()));
        }
        Self::new(lower)
    }

    /// `d` times the standard triangle.
    pub fn triangle(d: i64) -> Self {
        Self::new(vec![[0, 0], [d, 0], [0, d]]).expect("d > 0")
    }

    pub fn square(s: i64) -> Self {
        Self::new(vec![[0, 0], [s, 0], [s, s], [0, s]]).expect("s > 0")
    }

    /// The kite with vertices `(0,0)`, `(k,-1)`, `(k+k',0)`, `(k,1)`.
    /// For `k = 0` this is the convex hull of those points, a triangle.
    pub fn kite(k: i64, k2: i64) -> Result<Self> {
        if k < 0 || k2 < k || k2 <= 0 {
            return Err(Error::InvalidKiteParameters(k, k2));
        }
        Self::convex_hull(&[[0, 0], [k, -1], [k + k2, 0], [k, 1]])
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn sides(&self) -> Vec<Side> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let tail = self.vertices[i];
                let head = self.vertices[(i + 1) % n];
                let (d, len) = primitive([head[0] - tail[0], head[1] - tail[1]]);
                Side {
                    tail,
                    head,
                    primitive_direction: d,
                    primitive_outer_normal: [d[1], -d[0]],
                    lattice_length: len,
                }
            })
            .collect()
    }

    pub fn twice_area(&self) -> i64 {
        twice_area(&self.vertices)
    }

    pub fn is_h_transverse(&self) -> bool {
        self.sides().iter().all(|s| s.primitive_direction[1].abs() <= 1)
    }

    pub fn y_range(&self) -> (i64, i64) {
        let ys = self.vertices.iter().map(|v| v[1]);
        (ys.clone().min().unwrap(), ys.max().unwrap())
    }

    pub fn height(&self) -> i64 {
        let (lo, hi) = self.y_range();
        hi - lo
    }

    /// The horizontal slice `{y = t}` as an interval `[xl, xr]`.
    pub fn slice(&self, t: &Q) -> Option<(Q, Q)> {
        let mut lo: Option<Q> = None;
        let mut hi: Option<Q> = None;
        let mut push = |x: Q| {
            if lo.as_ref().is_none_or(|l| &x < l) {
                lo = Some(x.clone());
            }
            if hi.as_ref().is_none_or(|h| &x > h) {
                hi = Some(x);
            }
        };
        for s in self.sides() {
            let (a, b) = (s.tail, s.head);
            let (ya, yb) = (q(a[1]), q(b[1]));
            if a[1] == b[1] {
                if &ya == t {
                    push(q(a[0]));
                    push(q(b[0]));
                }
                continue;
            }
            let (ymin, ymax) = if ya < yb { (&ya, &yb) } else { (&yb, &ya) };
            if t < ymin || t > ymax {
                continue;
            }
            let x = q(a[0]) + (t - &ya) * q(b[0] - a[0]) / q(b[1] - a[1]);
            push(x);
        }
        Some((lo?, hi?))
    }

    /// Lattice length of the slice at integer height `k`.
    pub fn slice_lattice_length(&self, k: i64) -> i64 {
        match self.slice(&q(k)) {
            Some((l, r)) => (floor_q(&r) - ceil_q(&l)).max(0),
            None => 0,
        }
    }

    pub fn width(&self) -> Result<i64> {
        if !self.is_h_transverse() {
            return Err(Error::NotHTransverse);
        }
        let (lo, hi) = self.y_range();
        Ok((lo..=hi).map(|k| self.slice_lattice_length(k)).max().unwrap_or(0))
    }

    /// Points strictly inside the polygon.
    pub fn interior_lattice_points(&self) -> Vec<LatticePoint> {
        let sides = self.sides();
        let xs = self.vertices.iter().map(|v| v[0]);
        let (x0, x1) = (xs.clone().min().unwrap(), xs.max().unwrap());
        let (y0, y1) = self.y_range();
        let mut out = Vec::new();
        for y in y0..=y1 {
            for x in x0..=x1 {
                let p = [x, y];
                if sides
                    .iter()
                    .all(|s| dot(s.primitive_outer_normal, [p[0] - s.tail[0], p[1] - s.tail[1]]) < 0)
                {
                    out.push(p);
                }
            }
        }
        out
    }

    pub fn transform(&self, u: &[[i64; 2]; 2]) -> Result<Self> {
        Self::new(self.vertices.iter().map(|&v| mat_apply(u, v)).collect())
    }

    pub fn translate(&self, t: IVec) -> Self {
        Self::new(self.vertices.iter().map(|v| [v[0] + t[0], v[1] + t[1]]).collect()).unwrap()
    }

    /// A determinant-one change of coordinates `U` with `U * P` h-transverse,
    /// found by exhausting the bounded region `{n : |<m_i, n>| <= 1}` of
    /// candidate vertical functionals. The identity is preferred.
    pub fn h_transverse_coordinates(&self) -> Option<[[i64; 2]; 2]> {
        let dirs: Vec<IVec> = self.sides().iter().map(|s| s.primitive_direction).collect();
        let ok = |n: IVec| dirs.iter().all(|&m| dot(m, n).abs() <= 1);
        if ok([0, 1]) {
            return Some([[1, 0], [0, 1]]);
        }
        // The region's vertices lie among the intersections of pairs of
        // boundary lines <m_i, n> = +-1.
        let mut bound = 0i64;
        for (i, &a) in dirs.iter().enumerate() {
            for &b in &dirs[i + 1..] {
                let dd = det(a, b);
                if dd == 0 {
                    continue;
                }
                for sa in [-1, 1] {
                    for sb in [-1, 1] {
                        // Solve a.n = sa, b.n = sb by Cramer's rule.
                        let nx = qr(sa * b[1] - sb * a[1], dd);
                        let ny = qr(a[0] * sb - b[0] * sa, dd);
                        bound = bound.max(ceil_q(&crate::arith::abs_q(&nx)));
                        bound = bound.max(ceil_q(&crate::arith::abs_q(&ny)));
                    }
                }
            }
        }
        let mut cands: Vec<IVec> = Vec::new();
        for x in -bound..=bound {
            for y in -bound..=bound {
                if gcd(x, y) == 1 && ok([x, y]) {
                    cands.push([x, y]);
                }
            }
        }
        cands.sort_by_key(|n| (n[0].abs() + n[1].abs(), *n));
        cands.into_iter().map(complete_to_unimodular).find(|u| {
            self.transform(u).map(|p| p.is_h_transverse()).unwrap_or(false)
        })
    }

    /// Index of the sublattice of `N` spanned by the primitive outer
    /// normals, or `None` if they do not span a rank-2 lattice.
    pub fn normal_sublattice_index(&self) -> Option<u64> {
        let ns: Vec<IVec> = self.sides().iter().map(|s| s.primitive_outer_normal).collect();
        let mut g = 0i64;
        for (i, &a) in ns.iter().enumerate() {
            for &b in &ns[i + 1..] {
                g = gcd(g, det(a, b));
            }
        }
        if g == 0 {
            None
        } else {
            Some(g.unsigned_abs())
        }
    }

    /// `5 * max |m_i|^2` over primitive side directions.
    pub fn monodromy_threshold(&self) -> i64 {
        5 * self
            .sides()
            .iter()
            .map(|s| dot(s.primitive_direction, s.primitive_direction))
            .max()
            .unwrap_or(0)
    }
}

/// Per-side multisets of tangency orders, indexed like [`LatticePolygon::sides`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TangencyProfile {
    pub sides: Vec<Vec<u64>>,
}

/// Multiset of non-contracted leg slopes.
pub type TropicalDegree = Vec<IVec>;

impl TangencyProfile {
    pub fn trivial(p: &LatticePolygon) -> Self {
        TangencyProfile {
            sides: p.sides().iter().map(|s| vec![1; s.lattice_length as usize]).collect(),
        }
    }

    pub fn validate(&self, p: &LatticePolygon) -> Result<()> {
        let sides = p.sides();
        if sides.len() != self.sides.len() {
            return Err(Error::ProfileMismatch(format!(
                "{} sides but {} multisets",
                sides.len(),
                self.sides.len()
            )));
        }
        for (i, (s, d)) in sides.iter().zip(&self.sides).enumerate() {
            if d.iter().any(|&x| x == 0) {
                return Err(Error::ProfileMismatch(format!("side {i} has a zero entry")));
            }
            if d.iter().sum::<u64>() != s.lattice_length as u64 {
                return Err(Error::ProfileMismatch(format!(
                    "side {i} sums to {} instead of {}",
                    d.iter().sum::<u64>(),
                    s.lattice_length
                )));
            }
        }
        Ok(())
    }

    /// `|d|`, the total number of tangency points.
    pub fn size(&self) -> usize {
        self.sides.iter().map(Vec::len).sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.sides.iter().flatten().all(|&d| d == 1)
    }
}

pub fn trivial_profile(p: &LatticePolygon) -> TangencyProfile {
    TangencyProfile::trivial(p)
}

/// True iff every non-horizontal side carries only tangency order one.
pub fn profile_valid_for_theorem(p: &LatticePolygon, profile: &TangencyProfile) -> Result<bool> {
    if !p.is_h_transverse() {
        return Err(Error::NotHTransverse);
    }
    profile.validate(p)?;
    Ok(p
        .sides()
        .iter()
        .zip(&profile.sides)
        .all(|(s, d)| s.is_horizontal() || d.iter().all(|&x| x == 1)))
}

pub fn dual_degree(p: &LatticePolygon, profile: &TangencyProfile) -> Result<TropicalDegree> {
    profile.validate(p)?;
    let mut out = Vec::new();
    for (s, ds) in p.sides().iter().zip(&profile.sides) {
        for &d in ds {
            let n = s.primitive_outer_normal;
            out.push([d as i64 * n[0], d as i64 * n[1]]);
        }
    }
    Ok(out)
}

/// `|d| + g - 1`.
pub fn severi_dimension(profile: &TangencyProfile, g: i64) -> i64 {
    profile.size() as i64 + g - 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisCheck {
    pub holds: bool,
    pub violations: Vec<String>,
    /// Set when only necessary conditions were verified.
    pub partial: bool,
}

impl HypothesisCheck {
    fn from(violations: Vec<String>, partial: bool) -> Self {
        HypothesisCheck { holds: violations.is_empty(), violations, partial }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisReport {
    pub characteristic: u64,
    pub genus: i64,
    pub width: i64,
    pub interior_points: usize,
    pub normal_sublattice_index: Option<u64>,
    pub monodromy_threshold: i64,
    pub main: HypothesisCheck,
    pub zariski: HypothesisCheck,
    pub monodromy: HypothesisCheck,
}

pub fn hypothesis_report(
    p: &LatticePolygon,
    profile: &TangencyProfile,
    g: i64,
    characteristic: u64,
) -> Result<HypothesisReport> {
    if characteristic != 0 && !is_prime(characteristic) {
        return Err(Error::Precondition(format!(
            "characteristic {characteristic} is neither 0 nor prime"
        )));
    }
    let w = p.width()?;
    let trivial_off_horizontal = profile_valid_for_theorem(p, profile)?;
    let interior = p.interior_lattice_points().len();
    let c = characteristic as i64;

    let mut common = Vec::new();
    if !trivial_off_horizontal {
        common.push("profile is non-trivial on a non-horizontal side".to_string());
    }
    if g < 0 || g > interior as i64 {
        common.push(format!("genus {g} is outside 0..={interior}"));
    }

    let mut main = common.clone();
    if c != 0 && 2 * c <= w {
        main.push(format!("char {c} <= w/2 = {w}/2"));
    }
    let mut zariski = common.clone();
    if c != 0 && c <= w {
        zariski.push(format!("char {c} <= w = {w}"));
    }

    let index = p.normal_sublattice_index();
    let threshold = p.monodromy_threshold();
    let mut mono = common;
    if c != 0 {
        mono.push(format!("char {c} is not 0"));
    }
    if !profile.is_trivial() {
        mono.push("profile is not trivial".into());
    }
    if index != Some(1) {
        mono.push(format!("normals span a sublattice of index {:?}", index));
    }
    for (i, s) in p.sides().iter().enumerate() {
        if s.lattice_length < threshold {
            mono.push(format!(
                "side {i} has lattice length {} < {threshold}",
                s.lattice_length
            ));
        }
    }

    Ok(HypothesisReport {
        characteristic,
        genus: g,
        width: w,
        interior_points: interior,
        normal_sublattice_index: index,
        monodromy_threshold: threshold,
        main: HypothesisCheck::from(main, false),
        zariski: HypothesisCheck::from(zariski, false),
        monodromy: HypothesisCheck::from(mono, true),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sides_of_the_unit_triangle() {
        let t = LatticePolygon::triangle(1);
        let s = t.sides();
        assert_eq!(s.len(), 3);
        assert!(s.iter().all(|x| x.lattice_length == 1));
        let ns: Vec<IVec> = s.iter().map(|x| x.primitive_outer_normal).collect();
        assert_eq!(ns, vec![[0, -1], [1, 1], [-1, 0]]);
    }

    #[test]
    fn kite_normals() {
        let k = LatticePolygon::kite(3, 3).unwrap();
        assert_eq!(k.vertices(), &[[0, 0], [3, -1], [6, 0], [3, 1]]);
        let mut ns: Vec<IVec> = k.sides().iter().map(|x| x.primitive_outer_normal).collect();
        ns.sort();
        assert_eq!(ns, vec![[-1, -3], [-1, 3], [1, -3], [1, 3]]);
        assert_eq!(LatticePolygon::kite(1, 2).unwrap().vertices(), &[[0, 0], [1, -1], [3, 0], [1, 1]]);
    }

    #[test]
    fn degenerate_kite_is_a_triangle() {
        let k = LatticePolygon::kite(0, 1).unwrap();
        assert_eq!(k.vertices(), &[[0, -1], [1, 0], [0, 1]]);
        assert_eq!(k.width().unwrap(), 1);
        assert!(LatticePolygon::kite(2, 1).is_err());
    }

    #[test]
    fn orientation_and_start_are_canonical() {
        let a = LatticePolygon::new(vec![[0, 1], [1, 0], [0, 0]]).unwrap();
        assert_eq!(a, LatticePolygon::triangle(1));
        assert!(LatticePolygon::new(vec![[0, 0], [1, 0], [2, 0], [0, 1]]).is_err());
        assert!(LatticePolygon::new(vec![[0, 0], [1, 1], [1, 0], [0, 1]]).is_err());
    }

    #[test]
    fn h_transversality() {
        assert!(LatticePolygon::kite(1, 2).unwrap().is_h_transverse());
        let bad = LatticePolygon::new(vec![[0, 1], [1, -1], [6, -1]]).unwrap();
        assert!(!bad.is_h_transverse());
        assert_eq!(bad.width(), Err(Error::NotHTransverse));
        assert!(bad.h_transverse_coordinates().is_none());
    }

    #[test]
    fn sheared_triangle_needs_new_coordinates() {
        // (0,0),(0,2),(1,1) is h-transverse; shearing y by 2x breaks that.
        let base = LatticePolygon::kite(0, 2).unwrap().translate([0, 0]);
        assert!(base.is_h_transverse());
        let sheared = base.transform(&[[1, 0], [2, 1]]).unwrap();
        assert!(!sheared.is_h_transverse());
        let u = sheared.h_transverse_coordinates().unwrap();
        assert_ne!(u, [[1, 0], [0, 1]]);
        assert!(sheared.transform(&u).unwrap().is_h_transverse());
    }

    #[test]
    fn widths_and_heights() {
        assert_eq!(LatticePolygon::kite(3, 3).unwrap().width().unwrap(), 6);
        assert_eq!(LatticePolygon::triangle(1).width().unwrap(), 1);
        assert_eq!(LatticePolygon::triangle(4).width().unwrap(), 4);
        assert_eq!(LatticePolygon::kite(2, 5).unwrap().height(), 2);
        assert_eq!(LatticePolygon::square(2).height(), 2);
    }

    #[test]
    fn interior_points() {
        assert!(LatticePolygon::triangle(1).interior_lattice_points().is_empty());
        assert_eq!(LatticePolygon::triangle(3).interior_lattice_points(), vec![[1, 1]]);
        assert_eq!(
            LatticePolygon::kite(3, 3).unwrap().interior_lattice_points(),
            vec![[1, 0], [2, 0], [3, 0], [4, 0], [5, 0]]
        );
    }

    #[test]
    fn profiles_and_degrees() {
        let t3 = LatticePolygon::triangle(3);
        let prof = trivial_profile(&t3);
        assert_eq!(prof.sides, vec![vec![1, 1, 1]; 3]);
        let deg = dual_degree(&t3, &prof).unwrap();
        assert_eq!(deg.len(), 9);
        assert_eq!(deg.iter().fold([0, 0], |a, b| [a[0] + b[0], a[1] + b[1]]), [0, 0]);
        assert_eq!(severi_dimension(&prof, 0), 8);

        let k = LatticePolygon::kite(3, 3).unwrap();
        let kp = trivial_profile(&k);
        assert_eq!(kp.sides, vec![vec![1]; 4]);
        assert_eq!(severi_dimension(&kp, 1), 4);

        let bad = TangencyProfile { sides: vec![vec![1, 1], vec![1], vec![1]] };
        assert!(matches!(dual_degree(&LatticePolygon::triangle(1), &bad), Err(Error::ProfileMismatch(_))));
    }

    #[test]
    fn profile_theorem_validity() {
        let hex = LatticePolygon::new(vec![[0, 0], [3, -1], [6, -1], [9, 0], [6, 1], [3, 1]]).unwrap();
        let mut prof = trivial_profile(&hex);
        for (s, d) in hex.sides().iter().zip(prof.sides.iter_mut()) {
            if s.is_horizontal() {
                *d = vec![3];
            }
        }
        assert!(profile_valid_for_theorem(&hex, &prof).unwrap());

        let t2 = LatticePolygon::triangle(2);
        let mut p2 = trivial_profile(&t2);
        p2.sides[1] = vec![2];
        assert!(!profile_valid_for_theorem(&t2, &p2).unwrap());
    }

    #[test]
    fn normal_sublattices() {
        assert_eq!(LatticePolygon::kite(1, 2).unwrap().normal_sublattice_index(), Some(1));
        assert_ne!(LatticePolygon::kite(3, 3).unwrap().normal_sublattice_index(), Some(1));
        assert_eq!(LatticePolygon::triangle(1).normal_sublattice_index(), Some(1));
    }

    #[test]
    fn thresholds() {
        assert_eq!(LatticePolygon::triangle(1).monodromy_threshold(), 10);
        assert_eq!(LatticePolygon::kite(3, 3).unwrap().monodromy_threshold(), 50);
        assert_eq!(LatticePolygon::square(1).monodromy_threshold(), 5);
    }

    #[test]
    fn kite_hypotheses() {
        let k = LatticePolygon::kite(3, 3).unwrap();
        let prof = trivial_profile(&k);
        let r0 = hypothesis_report(&k, &prof, 1, 0).unwrap();
        assert!(r0.main.holds && r0.zariski.holds);
        assert!(!r0.monodromy.holds);
        assert!(r0.monodromy.violations.iter().any(|v| v.contains("sublattice")));
        let r3 = hypothesis_report(&k, &prof, 1, 3).unwrap();
        assert!(!r3.main.holds);
        assert!(hypothesis_report(&k, &prof, 1, 4).is_err());

        let t = LatticePolygon::triangle(1);
        let rt = hypothesis_report(&t, &trivial_profile(&t), 0, 0).unwrap();
        assert!(rt.main.holds && rt.zariski.holds);
        assert_eq!(rt.monodromy.violations.len(), 3);
        assert!(rt.monodromy.violations.iter().all(|v| v.contains("lattice length")));
    }
}
