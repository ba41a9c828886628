//! Rational curves on toric surfaces, given explicitly by where they meet
//! the boundary.
//!
//! A map from the projective line with the boundary points `c_{i,j}` over
//! side `i` pulls the monomial `x^m` back to
//! `chi(m) * prod (t - c_{i,j})^(d_{i,j} <n_i, m>)`, with `n_i` the inner
//! normal of side `i`. The point `t = infinity` is kept inside the torus.

use crate::arith::{dot, q, IVec, Q};
use crate::error::{Error, Result};
use crate::polygon::{LatticePolygon, Side, TangencyProfile};
use crate::poly::{resultant, subresultant, Poly, PolyQ, Ring};
use num::complex::Complex64;
use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

/// `constant * prod (t - root)^exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredRationalFunction {
    pub constant: Q,
    pub factors: Vec<(Q, i64)>,
}

impl FactoredRationalFunction {
    pub fn new(constant: Q, factors: Vec<(Q, i64)>) -> Result<Self> {
        if constant.is_zero() {
            return Err(Error::InvalidCurve("zero constant".into()));
        }
        let mut merged: Vec<(Q, i64)> = Vec::new();
        for (c, e) in factors {
            match merged.iter_mut().find(|f| f.0 == c) {
                Some(f) => f.1 += e,
                None => merged.push((c, e)),
            }
        }
        merged.retain(|f| f.1 != 0);
        Ok(FactoredRationalFunction { constant, factors: merged })
    }

    pub fn exponent_at(&self, c: &Q) -> i64 {
        self.factors.iter().find(|f| &f.0 == c).map_or(0, |f| f.1)
    }

    pub fn eval(&self, t: &Q) -> Result<Q> {
        let mut v = self.constant.clone();
        for (c, e) in &self.factors {
            let base = t - c;
            if base.is_zero() && *e < 0 {
                return Err(Error::ParameterAtPole);
            }
            v *= pow_q(&base, *e);
        }
        Ok(v)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut f = self.factors.clone();
        f.extend(o.factors.iter().cloned());
        Self::new(&self.constant * &o.constant, f).expect("nonzero")
    }

    /// Numerator and denominator polynomials, the constant going to the
    /// numerator.
    pub fn fraction(&self) -> (PolyQ, PolyQ) {
        let mut num = PolyQ::constant(self.constant.clone());
        let mut den = PolyQ::constant(q(1));
        for (c, e) in &self.factors {
            let lin = PolyQ::linear_root(c.clone()).pow(e.unsigned_abs() as u32);
            if *e > 0 {
                num = num.rmul(&lin);
            } else {
                den = den.rmul(&lin);
            }
        }
        (num, den)
    }

    /// Total order of zeros minus poles over the finite points; minus the
    /// order at infinity.
    pub fn degree(&self) -> i64 {
        self.factors.iter().map(|f| f.1).sum()
    }
}

fn pow_q(x: &Q, e: i64) -> Q {
    let p = num::pow::pow(x.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

/// Inner primitive normal of a side.
pub fn inner_normal(s: &Side) -> IVec {
    [-s.primitive_outer_normal[0], -s.primitive_outer_normal[1]]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalParametrization {
    pub polygon: LatticePolygon,
    pub profile: TangencyProfile,
    /// `params[i][j]` is the parameter of the `j`-th boundary point on side `i`.
    pub params: Vec<Vec<Q>>,
    /// Values of the character on the standard basis.
    pub character: [Q; 2],
}

impl RationalParametrization {
    pub fn new(polygon: LatticePolygon, profile: TangencyProfile, params: Vec<Vec<Q>>, character: [Q; 2]) -> Result<Self> {
        profile.validate(&polygon)?;
        if params.len() != profile.sides.len() || params.iter().zip(&profile.sides).any(|(p, d)| p.len() != d.len()) {
            return Err(Error::ProfileMismatch("one parameter is needed per boundary point".into()));
        }
        let all: BTreeSet<&Q> = params.iter().flatten().collect();
        if all.len() != profile.size() {
            return Err(Error::DegenerateParameters("boundary parameters repeat".into()));
        }
        if character.iter().any(Zero::is_zero) {
            return Err(Error::DegenerateParameters("the character vanishes".into()));
        }
        Ok(RationalParametrization { polygon, profile, params, character })
    }

    /// Parameters drawn from a seeded generator: distinct rationals with
    /// small numerators and denominators.
    pub fn random(polygon: &LatticePolygon, profile: &TangencyProfile, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut seen = BTreeSet::new();
        let mut draw = |rng: &mut ChaCha8Rng| loop {
            let x = Q::new(rng.gen_range(-60i64..=60).into(), rng.gen_range(1i64..=7).into());
            if seen.insert(x.clone()) {
                return x;
            }
        };
        let params = profile.sides.iter().map(|d| d.iter().map(|_| draw(&mut rng)).collect()).collect();
        let character = [draw(&mut rng), draw(&mut rng)].map(|c| if c.is_zero() { q(1) } else { c });
        Self::new(polygon.clone(), profile.clone(), params, character)
    }

    fn points(&self) -> Vec<(usize, usize, Q, u64)> {
        let mut out = Vec::new();
        for (i, ps) in self.params.iter().enumerate() {
            for (j, c) in ps.iter().enumerate() {
                out.push((i, j, c.clone(), self.profile.sides[i][j]));
            }
        }
        out
    }

    pub fn character_at(&self, m: IVec) -> Q {
        pow_q(&self.character[0], m[0]) * pow_q(&self.character[1], m[1])
    }
}

pub fn monomial_pullback(r: &RationalParametrization, m: IVec) -> FactoredRationalFunction {
    let sides = r.polygon.sides();
    let factors = r
        .points()
        .into_iter()
        .map(|(i, _, c, d)| (c, d as i64 * dot(inner_normal(&sides[i]), m)))
        .collect();
    FactoredRationalFunction::new(r.character_at(m), factors).expect("character is nonzero")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorTerm {
    pub side: usize,
    pub point: usize,
    pub normal: IVec,
    pub coefficient: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorRelations {
    pub x: Vec<DivisorTerm>,
    pub y: Vec<DivisorTerm>,
}

/// Divisors of the pullbacks of `x` and `y` as formal sums over the
/// boundary points.
pub fn boundary_divisor_relations(p: &LatticePolygon, profile: &TangencyProfile) -> Result<DivisorRelations> {
    profile.validate(p)?;
    let sides = p.sides();
    let terms = |m: IVec| {
        let mut out = Vec::new();
        for (i, d) in profile.sides.iter().enumerate() {
            let n = inner_normal(&sides[i]);
            for (j, &dij) in d.iter().enumerate() {
                out.push(DivisorTerm { side: i, point: j, normal: n, coefficient: dij as i64 * dot(n, m) });
            }
        }
        out
    };
    Ok(DivisorRelations { x: terms([1, 0]), y: terms([0, 1]) })
}

/// A rational function written as a sum of simple poles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplePoles {
    pub terms: Vec<(Q, Q)>,
}

impl SimplePoles {
    pub fn eval(&self, t: &Q) -> Result<Q> {
        let mut v = q(0);
        for (c, r) in &self.terms {
            if t == c {
                return Err(Error::ParameterAtPole);
            }
            v += r / (t - c);
        }
        Ok(v)
    }

    pub fn residue_sum(&self) -> Q {
        self.terms.iter().fold(q(0), |acc, t| acc + &t.1)
    }

    /// `P / Q` in lowest terms, with `Q` monic.
    pub fn fraction(&self) -> (PolyQ, PolyQ) {
        let mut num = PolyQ::rzero();
        let mut den = PolyQ::rone();
        for (c, r) in &self.terms {
            let lin = PolyQ::linear_root(c.clone());
            num = num.rmul(&lin).radd(&den.scale(r));
            den = den.rmul(&lin);
        }
        let g = num.gcd(&den);
        if g.deg0() > 0 {
            num = num.divrem(&g).0;
            den = den.divrem(&g).0;
        }
        let l = den.lc();
        (num.scale(&(q(1) / &l)), den.scale(&(q(1) / l)))
    }

    /// Value of `-t^2 L(t)` at infinity, the derivative of the logarithm in
    /// the coordinate `1/t`, provided the residues sum to zero.
    pub fn at_infinity(&self) -> Q {
        -self.terms.iter().fold(q(0), |acc, (c, r)| acc + c * r)
    }
}

/// The logarithmic derivative of the pullback of `x^m`.
pub fn log_derivative(r: &RationalParametrization, m: IVec) -> SimplePoles {
    let f = monomial_pullback(r, m);
    SimplePoles { terms: f.factors.into_iter().map(|(c, e)| (c, q(e))).collect() }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SideChoice {
    pub k: usize,
    pub l: usize,
    /// `|<n_l, m_k>|`.
    pub pairing: i64,
    pub width: i64,
    /// The height of the horizontal line used, if side `k` is not horizontal.
    pub line: Option<Q>,
    pub via_adjacent: bool,
}

/// For side `k`, a side `l` with `0 < |<n_l, m_k>| <= width`, chosen by a
/// horizontal line half a step above the lower end of side `k`.
pub fn choose_side_l(p: &LatticePolygon, k: usize) -> Result<SideChoice> {
    if !p.is_h_transverse() {
        return Err(Error::NotHTransverse);
    }
    let sides = p.sides();
    let sk = sides.get(k).ok_or_else(|| Error::OutOfRange(format!("side {k}")))?;
    let width = p.width()?;
    let mk = sk.primitive_direction;
    let pairing = |l: usize| dot(inner_normal(&sides[l]), mk).abs();
    let finish = |l: usize, line: Option<Q>, via_adjacent: bool| {
        let pr = pairing(l);
        if pr == 0 || pr > width {
            return Err(Error::HypothesesNotMet(format!("side {l} pairs to {pr} with side {k}")));
        }
        Ok(SideChoice { k, l, pairing: pr, width, line, via_adjacent })
    };
    if sk.is_horizontal() {
        let l = (0..sides.len()).find(|&l| !sides[l].is_horizontal()).ok_or(Error::NotHTransverse)?;
        return finish(l, None, false);
    }
    let a = q(sk.tail[1].min(sk.head[1])) + Q::new(1.into(), 2.into());
    let crosses = |s: &Side| {
        let (lo, hi) = (s.tail[1].min(s.head[1]), s.tail[1].max(s.head[1]));
        q(lo) < a && a < q(hi)
    };
    let other = (0..sides.len())
        .find(|&l| l != k && crosses(&sides[l]))
        .ok_or_else(|| Error::HypothesesNotMet("no side across".into()))?;
    let parallel = crate::arith::det(sides[other].primitive_direction, mk) == 0;
    if parallel {
        finish((k + 1) % sides.len(), Some(a), true)
    } else {
        finish(other, Some(a), false)
    }
}

fn side_direction_and_dual(s: &Side) -> (IVec, IVec) {
    let n = inner_normal(s);
    // Some m' with <n, m'> = 1.
    let (g, x, y) = ext_gcd(n[0], n[1]);
    debug_assert_eq!(g, 1);
    (s.primitive_direction, [x, y])
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        return (a.signum() * a, a.signum(), 0);
    }
    let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
    (g, y, x - a.div_euclid(b) * y)
}

/// Boundary points over the same side have distinct values of the
/// monomial along that side.
pub fn boundary_injectivity_check(r: &RationalParametrization) -> Result<bool> {
    let sides = r.polygon.sides();
    for (k, ps) in r.params.iter().enumerate() {
        let f = monomial_pullback(r, sides[k].primitive_direction);
        let vals = ps.iter().map(|c| f.eval(c)).collect::<Result<Vec<_>>>()?;
        let set: BTreeSet<&Q> = vals.iter().collect();
        if set.len() != vals.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParameterPoint {
    Boundary { side: usize, point: usize, t: Q },
    /// The common roots of a polynomial.
    RootsOf(PolyQ),
    Infinity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImmersionWitness {
    pub point: ParameterPoint,
    /// A monomial whose logarithmic derivative is nonzero there, if any.
    pub functional: Option<IVec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImmersionReport {
    pub immersed: bool,
    pub witnesses: Vec<ImmersionWitness>,
}

/// Checks that the map is an immersion: at every boundary point of side
/// `k` the logarithmic derivative along `m_k` is nonzero, and at every
/// zero of it the derivative along a dual `m'_k` is nonzero.
pub fn immersion_check(r: &RationalParametrization, characteristic: u64) -> Result<ImmersionReport> {
    let width = r.polygon.width()?;
    if characteristic != 0 && characteristic as i64 <= width {
        return Err(Error::HypothesesNotMet(format!("characteristic {characteristic} does not exceed width {width}")));
    }
    let sides = r.polygon.sides();
    let mut witnesses = Vec::new();
    for (k, s) in sides.iter().enumerate() {
        let (mk, mk2) = side_direction_and_dual(s);
        let lk = log_derivative(r, mk);
        if lk.terms.is_empty() {
            return Err(Error::DegenerateParameters(format!("the derivative along side {k} vanishes identically")));
        }
        for (j, c) in r.params[k].iter().enumerate() {
            let ok = !lk.eval(c)?.is_zero();
            witnesses.push(ImmersionWitness {
                point: ParameterPoint::Boundary { side: k, point: j, t: c.clone() },
                functional: ok.then_some(mk),
            });
        }
        let (zk, _) = lk.fraction();
        if zk.deg0() == 0 {
            continue;
        }
        let (zk2, _) = log_derivative(r, mk2).fraction();
        let common = zk.gcd(&zk2);
        witnesses.push(ImmersionWitness {
            point: ParameterPoint::RootsOf(zk.clone()),
            functional: (common.deg0() == 0).then_some(mk2),
        });
    }
    let lx = log_derivative(r, [1, 0]).at_infinity();
    let ly = log_derivative(r, [0, 1]).at_infinity();
    let inf = if !lx.is_zero() {
        Some([1, 0])
    } else if !ly.is_zero() {
        Some([0, 1])
    } else {
        None
    };
    witnesses.push(ImmersionWitness { point: ParameterPoint::Infinity, functional: inf });
    Ok(ImmersionReport { immersed: witnesses.iter().all(|w| w.functional.is_some()), witnesses })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TacnodeReport {
    /// `t^2 - s t + c` with `s` the forced sum of the two parameters.
    pub quadratic: PolyQ,
    /// Remainder `A t + B` of `t^b (t - 1)^a` modulo the quadratic.
    pub a_coeff: Q,
    pub b_coeff: Q,
    pub no_tacnode: bool,
}

fn check_ab(a: i64, b: i64) -> Result<()> {
    if a < 0 || b < 0 || a + b == 0 {
        return Err(Error::DegenerateABC);
    }
    Ok(())
}

/// The quadratic whose roots would be the two parameters of a tacnode.
pub fn tacnode_quadratic(a: i64, b: i64, c: &Q) -> Result<PolyQ> {
    check_ab(a, b)?;
    let s = (q(2 * a + 2 * b) * c + q(2 * b)) / q(a + 2 * b);
    Ok(PolyQ::new(vec![c.clone(), -s, q(1)]))
}

fn target(a: i64, b: i64) -> PolyQ {
    PolyQ::monomial(q(1), b as usize).rmul(&PolyQ::from_ints(&[-1, 1]).pow(a as u32))
}

/// Height-two polygons: no tacnode can occur at parameter `c` when the
/// remainder of `t^b (t - 1)^a` modulo the quadratic has a nonzero linear
/// coefficient.
pub fn tacnode_test_height2(a: i64, b: i64, c: &Q) -> Result<TacnodeReport> {
    if c.is_zero() || c.is_one() {
        return Err(Error::DegenerateABC);
    }
    let f = tacnode_quadratic(a, b, c)?;
    let rem = target(a, b).rem(&f);
    let (a_coeff, b_coeff) = (rem.coeff(1), rem.coeff(0));
    Ok(TacnodeReport { no_tacnode: !a_coeff.is_zero(), quadratic: f, a_coeff, b_coeff })
}

/// The linear coefficient `A` of that remainder as a polynomial in `c`.
pub fn tacnode_a_polynomial(a: i64, b: i64) -> Result<PolyQ> {
    check_ab(a, b)?;
    let k = q(1) / q(a + 2 * b);
    // t^2 - ((2a+2b) k c + 2b k) t + c, with coefficients in Q[c].
    let f: Poly<PolyQ> = Poly::new(vec![
        PolyQ::new(vec![q(0), q(1)]),
        PolyQ::new(vec![-q(2 * b) * &k, -q(2 * a + 2 * b) * &k]),
        PolyQ::rone(),
    ]);
    let g: Poly<PolyQ> = target(a, b).map(|x| PolyQ::constant(x.clone()));
    Ok(g.rem_monic(&f).coeff(1))
}

// ---------------------------------------------------------------------------
// Nodes

/// A root of a squarefree polynomial, identified by an approximation.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraicParameter {
    pub poly: PolyQ,
    pub approx: Complex64,
    /// Isolating interval when the root is real.
    pub interval: Option<(Q, Q)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Node {
    pub t1: AlgebraicParameter,
    pub t2: AlgebraicParameter,
    pub image: [Complex64; 2],
    pub transverse: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NodeReport {
    /// Squarefree polynomial whose roots are the parameters of the nodes.
    pub eliminant: PolyQ,
    /// The partner of a node parameter, as a polynomial modulo the eliminant.
    pub partner: PolyQ,
    pub nodes: Vec<Node>,
    pub count: usize,
    pub all_transverse: bool,
}

type Bi = Poly<PolyQ>;

/// `(N(t1) D(t2) - N(t2) D(t1)) / (t1 - t2)` as a polynomial in `t2` over
/// `Q[t1]`.
fn divided_difference(n: &PolyQ, d: &PolyQ) -> Bi {
    let lift = |p: &PolyQ| -> Bi { p.map(|a| PolyQ::constant(a.clone())) };
    let inner = |p: &PolyQ| -> Bi { Poly::constant(p.clone()) };
    let a = inner(n).rmul(&lift(d)).rsub(&lift(n).rmul(&inner(d)));
    // Divide by t2 - t1, which is monic in t2.
    let div: Bi = Poly::new(vec![PolyQ::new(vec![q(0), q(-1)]), PolyQ::rone()]);
    let (quo, rem) = a.divrem_exact(&div);
    debug_assert!(rem.ris_zero());
    quo.rneg()
}

fn mod_compose(p: &PolyQ, x: &PolyQ, m: &PolyQ) -> PolyQ {
    let mut acc = PolyQ::rzero();
    for k in (0..=p.deg0()).rev() {
        acc = acc.rmul(x).radd(&PolyQ::constant(p.coeff(k))).rem(m);
    }
    acc
}

fn eval_c(p: &PolyQ, z: Complex64) -> Complex64 {
    (0..=p.deg0()).rev().fold(Complex64::new(0.0, 0.0), |acc, k| acc * z + crate::arith::to_f64(&p.coeff(k)))
}

/// Value of a log derivative `P/Q` at the roots of `m`, as `P * Q^-1 mod m`
/// after substituting `x` for `t`.
fn log_mod(l: &(PolyQ, PolyQ), x: &PolyQ, m: &PolyQ) -> Result<PolyQ> {
    let num = mod_compose(&l.0, x, m);
    let den = mod_compose(&l.1, x, m);
    let inv = den.inverse_mod(m).ok_or_else(|| Error::NonGenericParameters("a node sits on the boundary".into()))?;
    Ok(num.rmul(&inv).rem(m))
}

/// Finds all pairs `t1 != t2` with the same image, by eliminating `t2`
/// from the two equations given by `x` and `y`.
pub fn node_enumeration(r: &RationalParametrization) -> Result<NodeReport> {
    if !boundary_injectivity_check(r)? {
        return Err(Error::NonGenericParameters("not injective on the boundary".into()));
    }
    if !immersion_check(r, 0)?.immersed {
        return Err(Error::NonGenericParameters("not an immersion".into()));
    }
    let fx = monomial_pullback(r, [1, 0]);
    let fy = monomial_pullback(r, [0, 1]);
    let (nx, dx) = fx.fraction();
    let (ny, dy) = fy.fraction();
    let px = divided_difference(&nx, &dx);
    let py = divided_difference(&ny, &dy);
    let mut res = resultant(&px, &py);
    if res.is_zero_poly() {
        return Err(Error::NonGenericParameters("the two equations share a component".into()));
    }
    for c in r.params.iter().flatten() {
        res = res.strip_root(c).0;
    }
    let res = res.monic();
    let lx = log_derivative(r, [1, 0]).fraction();
    let ly = log_derivative(r, [0, 1]).fraction();
    if res.deg0() == 0 {
        return Ok(NodeReport {
            eliminant: res,
            partner: PolyQ::rzero(),
            nodes: Vec::new(),
            count: 0,
            all_transverse: true,
        });
    }
    if !res.is_squarefree() || res.deg0() % 2 == 1 {
        return Err(Error::NonGenericParameters(format!("eliminant of degree {} is not a union of node pairs", res.deg0())));
    }
    // A node with a parameter at infinity makes both leading terms vanish.
    let lcx = px.lc();
    let lcy = py.lc();
    if lcx.gcd(&lcy).gcd(&res).deg0() > 0 {
        return Err(Error::NonGenericParameters("a node at infinity".into()));
    }
    // A polynomial linear in t2 that vanishes at the partner.
    let s1 = if px.deg0() == 1 {
        px.clone()
    } else if py.deg0() == 1 {
        py.clone()
    } else {
        subresultant(&px, &py, 1)
    };
    let (s1c, s0c) = (s1.coeff(1).rem(&res), s1.coeff(0).rem(&res));
    let inv = s1c.inverse_mod(&res).ok_or_else(|| Error::NonGenericParameters("a point with three parameters".into()))?;
    let partner = s0c.rneg().rmul(&inv).rem(&res);
    let t = PolyQ::x();
    // The partner is a fixed-point free involution of the roots.
    let fail = |m: &str| Err(Error::NonGenericParameters(m.into()));
    if !mod_compose(&res, &partner, &res).is_zero_poly() {
        return fail("partner is not a root");
    }
    if mod_compose(&partner, &partner, &res) != t.rem(&res) {
        return fail("partner is not an involution");
    }
    if partner.rsub(&t).gcd(&res).deg0() > 0 {
        return fail("a parameter is its own partner");
    }
    for (n, d) in [(&nx, &dx), (&ny, &dy)] {
        let lhs = mod_compose(n, &t, &res).rmul(&mod_compose(d, &partner, &res)).rem(&res);
        let rhs = mod_compose(n, &partner, &res).rmul(&mod_compose(d, &t, &res)).rem(&res);
        if lhs != rhs {
            return fail("partners have different images");
        }
    }
    // Transversality: the tangent directions at the two branches differ.
    let tan = log_mod(&lx, &t, &res)?
        .rmul(&log_mod(&ly, &partner, &res)?)
        .rsub(&log_mod(&lx, &partner, &res)?.rmul(&log_mod(&ly, &t, &res)?))
        .rem(&res);
    let tangent = tan.gcd(&res);
    let all_transverse = tangent.deg0() == 0;

    let roots = res.approx_complex_roots();
    let real = res.isolate_real_roots();
    let param = |z: Complex64| {
        let interval = real
            .iter()
            .find(|(lo, hi)| {
                z.im.abs() < 1e-9 && crate::arith::to_f64(lo) - 1e-9 <= z.re && z.re <= crate::arith::to_f64(hi) + 1e-9
            })
            .cloned();
        AlgebraicParameter { poly: res.clone(), approx: z, interval }
    };
    let mut used = vec![false; roots.len()];
    let mut nodes = Vec::new();
    for i in 0..roots.len() {
        if used[i] {
            continue;
        }
        let image = eval_c(&partner, roots[i]);
        let j = (0..roots.len())
            .filter(|&j| j != i && !used[j])
            .min_by(|&a, &b| (roots[a] - image).norm().total_cmp(&(roots[b] - image).norm()))
            .ok_or_else(|| Error::NonGenericParameters("unpaired parameter".into()))?;
        used[i] = true;
        used[j] = true;
        let z = roots[i];
        let fz = |n: &PolyQ, d: &PolyQ| eval_c(n, z) / eval_c(d, z);
        let transverse = all_transverse || eval_c(&tangent, z).norm() > 1e-6 * (1.0 + z.norm()).powi(tangent.deg0() as i32);
        nodes.push(Node { t1: param(z), t2: param(roots[j]), image: [fz(&nx, &dx), fz(&ny, &dy)], transverse });
    }
    Ok(NodeReport { count: nodes.len(), eliminant: res, partner, nodes, all_transverse })
}

/// Tries seeds `seed, seed + 1, ...` until the parameters are generic,
/// returning the seed used.
pub fn generic_parametrization(
    p: &LatticePolygon,
    profile: &TangencyProfile,
    seed: u64,
    retries: u64,
) -> Result<(RationalParametrization, NodeReport, u64)> {
    let mut last = None;
    for s in seed..=seed + retries {
        let r = RationalParametrization::random(p, profile, s)?;
        match node_enumeration(&r) {
            Ok(rep) => return Ok((r, rep, s)),
            Err(e @ (Error::NonGenericParameters(_) | Error::DegenerateParameters(_) | Error::ParameterAtPole)) => {
                last = Some(e)
            }
            Err(e) => return Err(e),
        }
    }
    Err(last.unwrap())
}
