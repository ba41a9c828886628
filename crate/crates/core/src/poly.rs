//! Dense univariate polynomials over a commutative ring, with the field
//! operations (division, gcd, Sturm sequences) specialised to `Q`.
//!
//! `Poly<Poly<Q>>` serves as the bivariate ring used for resultants: the
//! outer variable is eliminated, the inner one survives.

use crate::arith::{q, Q};
use num::complex::Complex64;
use num::{Signed, Zero};
use std::fmt;

pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn rzero() -> Self;
    fn rone() -> Self;
    fn ris_zero(&self) -> bool;
    fn radd(&self, o: &Self) -> Self;
    fn rsub(&self, o: &Self) -> Self;
    fn rmul(&self, o: &Self) -> Self;
    fn rneg(&self) -> Self;
    fn from_i64(n: i64) -> Self;
    /// Division known to be exact. Panics otherwise.
    fn exact_div(&self, o: &Self) -> Self;
}

impl Ring for Q {
    fn rzero() -> Self {
        <Q as Zero>::zero()
    }
    fn rone() -> Self {
        q(1)
    }
    fn ris_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn radd(&self, o: &Self) -> Self {
        self + o
    }
    fn rsub(&self, o: &Self) -> Self {
        self - o
    }
    fn rmul(&self, o: &Self) -> Self {
        self * o
    }
    fn rneg(&self) -> Self {
        -self
    }
    fn from_i64(n: i64) -> Self {
        q(n)
    }
    fn exact_div(&self, o: &Self) -> Self {
        self / o
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    c: Vec<T>,
}

impl<T: Ring> Poly<T> {
    pub fn new(mut c: Vec<T>) -> Self {
        while c.last().is_some_and(|x| x.ris_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn constant(a: T) -> Self {
        Self::new(vec![a])
    }

    /// The monomial `a * x^k`.
    pub fn monomial(a: T, k: usize) -> Self {
        let mut c = vec![T::rzero(); k + 1];
        c[k] = a;
        Self::new(c)
    }

    pub fn x() -> Self {
        Self::monomial(T::rone(), 1)
    }

    /// `x - a`
    pub fn linear_root(a: T) -> Self {
        Self::new(vec![a.rneg(), T::rone()])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> T {
        self.c.get(k).cloned().unwrap_or_else(T::rzero)
    }

    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> T {
        self.c.last().cloned().unwrap_or_else(T::rzero)
    }

    pub fn is_zero_poly(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::rzero();
        for a in self.c.iter().rev() {
            acc = acc.rmul(x).radd(a);
        }
        acc
    }

    pub fn scale(&self, a: &T) -> Self {
        Self::new(self.c.iter().map(|x| x.rmul(a)).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| a.rmul(&T::from_i64(k as i64)))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::constant(T::rone());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = out.rmul(&base);
            }
            base = base.rmul(&base);
            e >>= 1;
        }
        out
    }

    /// Remainder modulo a monic polynomial; valid over any ring.
    pub fn rem_monic(&self, m: &Self) -> Self {
        let dm = m.degree().expect("division by zero polynomial");
        assert!(m.lc() == T::rone(), "modulus must be monic");
        let mut r = self.c.clone();
        while r.len() > dm {
            let k = r.len() - 1;
            let a = r[k].clone();
            if !a.ris_zero() {
                for (i, mc) in m.c.iter().enumerate() {
                    let idx = k - dm + i;
                    r[idx] = r[idx].rsub(&a.rmul(mc));
                }
            }
            r.pop();
        }
        Self::new(r)
    }

    /// Quotient and remainder, assuming every leading-coefficient division
    /// that occurs is exact in `T`.
    pub fn divrem_exact(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let ld = d.lc();
        let mut r = self.c.clone();
        let mut quo = vec![T::rzero(); r.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1;
            let a = r[k].exact_div(&ld);
            if !a.ris_zero() {
                for (i, dc) in d.c.iter().enumerate() {
                    let idx = k - dd + i;
                    r[idx] = r[idx].rsub(&a.rmul(dc));
                }
            }
            quo[k - dd] = a;
            r.pop();
            while r.last().is_some_and(|x| x.ris_zero()) {
                r.pop();
            }
        }
        (Self::new(quo), Self::new(r))
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.c.iter().map(f).collect())
    }
}

impl<T: Ring> Ring for Poly<T> {
    fn rzero() -> Self {
        Poly { c: Vec::new() }
    }
    fn rone() -> Self {
        Poly::constant(T::rone())
    }
    fn ris_zero(&self) -> bool {
        self.c.is_empty()
    }
    fn radd(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|k| self.coeff(k).radd(&o.coeff(k))).collect())
    }
    fn rsub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|k| self.coeff(k).rsub(&o.coeff(k))).collect())
    }
    fn rmul(&self, o: &Self) -> Self {
        if self.c.is_empty() || o.c.is_empty() {
            return Self::rzero();
        }
        let mut c = vec![T::rzero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.ris_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].radd(&a.rmul(b));
            }
        }
        Poly::new(c)
    }
    fn rneg(&self) -> Self {
        Poly::new(self.c.iter().map(|a| a.rneg()).collect())
    }
    fn from_i64(n: i64) -> Self {
        Poly::constant(T::from_i64(n))
    }
    fn exact_div(&self, o: &Self) -> Self {
        let (quo, r) = self.divrem_exact(o);
        assert!(r.ris_zero(), "inexact polynomial division");
        quo
    }
}

impl<T: Ring> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, a) in self.c.iter().enumerate().rev() {
            if a.ris_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({:?})", a)?,
                1 => write!(f, "({:?})*t", a)?,
                _ => write!(f, "({:?})*t^{}", a, k)?,
            }
        }
        Ok(())
    }
}

impl<T: Ring> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub type PolyQ = Poly<Q>;

impl Poly<Q> {
    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&a| q(a)).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero_poly() {
            return self.clone();
        }
        let l = self.lc();
        self.scale(&(q(1) / l))
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        self.divrem_exact(d)
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Monic gcd; the gcd of two zero polynomials is zero.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero_poly() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn squarefree_part(&self) -> Self {
        if self.deg0() == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.divrem(&g).0.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).deg0() == 0
    }

    /// Removes every factor `(x - a)` from `self`.
    pub fn strip_root(&self, a: &Q) -> (Self, usize) {
        let lin = Self::linear_root(a.clone());
        let mut p = self.clone();
        let mut k = 0;
        while !p.is_zero_poly() && p.eval(a).is_zero() {
            p = p.divrem(&lin).0;
            k += 1;
        }
        (p, k)
    }

    /// Multiplicative inverse of `self` modulo `m`, if `gcd(self, m) = 1`.
    pub fn inverse_mod(&self, m: &Self) -> Option<Self> {
        let (mut r0, mut r1) = (m.clone(), self.rem(m));
        let (mut s0, mut s1) = (Self::rzero(), Self::rone());
        while !r1.is_zero_poly() {
            let (quo, r) = r0.divrem(&r1);
            let s = s0.rsub(&quo.rmul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.deg0() != 0 || r0.is_zero_poly() {
            return None;
        }
        let inv = q(1) / r0.lc();
        Some(s0.scale(&inv).rem(m))
    }

    /// Cauchy bound: every complex root has absolute value below it.
    pub fn root_bound(&self) -> Q {
        let l = self.lc().abs();
        let m = self.c[..self.c.len() - 1]
            .iter()
            .map(|a| a.abs() / &l)
            .fold(q(0), |acc, x| if x > acc { x } else { acc });
        m + q(1)
    }

    pub fn sturm_sequence(&self) -> Vec<Self> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero_poly() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].rem(&seq[n - 1]).rneg();
            if r.is_zero_poly() {
                break;
            }
            seq.push(r);
        }
        seq
    }

    fn sign_changes(seq: &[Self], x: &Q) -> usize {
        let signs: Vec<i8> = seq
            .iter()
            .map(|p| {
                let v = p.eval(x);
                if v.is_zero() {
                    0
                } else if v.is_positive() {
                    1
                } else {
                    -1
                }
            })
            .filter(|&s| s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_real_roots(&self, a: &Q, b: &Q) -> usize {
        let seq = self.sturm_sequence();
        Self::sign_changes(&seq, a).saturating_sub(Self::sign_changes(&seq, b))
    }

    /// Isolating intervals `[lo, hi]` for the distinct real roots, sorted.
    /// A degenerate interval `lo == hi` is an exact rational root; otherwise
    /// the root lies strictly inside and the endpoints are not roots.
    pub fn isolate_real_roots(&self) -> Vec<(Q, Q)> {
        if self.deg0() == 0 {
            return Vec::new();
        }
        let p = self.squarefree_part();
        let seq = p.sturm_sequence();
        let bound = p.root_bound();
        let mut out = Vec::new();
        let mut stack = vec![(-bound.clone(), bound)];
        while let Some((a, b)) = stack.pop() {
            let n = Self::sign_changes(&seq, &a) - Self::sign_changes(&seq, &b);
            if n == 0 {
                continue;
            }
            if n == 1 {
                if p.eval(&b).is_zero() {
                    out.push((b.clone(), b));
                    continue;
                }
                if !p.eval(&a).is_zero() {
                    out.push((a, b));
                    continue;
                }
            }
            let mid = (&a + &b) / q(2);
            stack.push((a, mid.clone()));
            stack.push((mid, b));
        }
        out.sort_by(|x, y| x.0.cmp(&y.0));
        out
    }

    /// Shrinks an isolating interval until its width is below `eps`.
    pub fn refine_root(&self, lo: &Q, hi: &Q, eps: &Q) -> (Q, Q) {
        let (mut a, mut b) = (lo.clone(), hi.clone());
        if a == b {
            return (a, b);
        }
        let sa = self.eval(&a).is_positive();
        while &(&b - &a) > eps {
            let mid = (&a + &b) / q(2);
            let v = self.eval(&mid);
            if v.is_zero() {
                return (mid.clone(), mid);
            }
            if v.is_positive() == sa {
                a = mid;
            } else {
                b = mid;
            }
        }
        (a, b)
    }

    /// Floating-point approximations of all complex roots (Durand-Kerner);
    /// only used for display.
    pub fn approx_complex_roots(&self) -> Vec<Complex64> {
        let n = self.deg0();
        if n == 0 {
            return Vec::new();
        }
        let m = self.monic();
        let c: Vec<Complex64> = m.c.iter().map(|a| Complex64::new(crate::arith::to_f64(a), 0.0)).collect();
        let eval = |z: Complex64| c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * z + a);
        let seed = Complex64::new(0.4, 0.9);
        let mut roots: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32)).collect();
        for _ in 0..2000 {
            let mut delta = 0.0f64;
            for i in 0..n {
                let mut den = Complex64::new(1.0, 0.0);
                for j in 0..n {
                    if i != j {
                        den *= roots[i] - roots[j];
                    }
                }
                if den.norm() == 0.0 {
                    den = Complex64::new(1e-12, 0.0);
                }
                let step = eval(roots[i]) / den;
                roots[i] -= step;
                delta = delta.max(step.norm());
            }
            if delta < 1e-15 {
                break;
            }
        }
        roots
    }
}

/// Determinant by fraction-free Gaussian elimination.
pub fn det_bareiss<T: Ring>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    if n == 0 {
        return T::rone();
    }
    let mut negate = false;
    let mut prev = T::rone();
    for k in 0..n - 1 {
        if m[k][k].ris_zero() {
            match (k + 1..n).find(|&i| !m[i][k].ris_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return T::rzero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].rmul(&m[k][k]).rsub(&m[i][k].rmul(&m[k][j]));
                m[i][j] = v.exact_div(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        d.rneg()
    } else {
        d
    }
}

fn shifted_rows<T: Ring>(p: &Poly<T>, count: usize, width: usize) -> Vec<Vec<T>> {
    let d = p.deg0();
    (0..count)
        .map(|k| {
            // p * x^(count-1-k); column c holds the coefficient of x^(width-1-c).
            let shift = count - 1 - k;
            (0..width)
                .map(|col| {
                    let e = width - 1 - col;
                    if e >= shift && e - shift <= d {
                        p.coeff(e - shift)
                    } else {
                        T::rzero()
                    }
                })
                .collect()
        })
        .collect()
}

/// The `j`-th subresultant of `a` and `b` (so `j = 0` is the resultant).
pub fn subresultant<T: Ring>(a: &Poly<T>, b: &Poly<T>, j: usize) -> Poly<T> {
    let (m, n) = (a.deg0(), b.deg0());
    assert!(j <= m.min(n));
    let width = m + n - j;
    let mut rows = shifted_rows(a, n - j, width);
    rows.extend(shifted_rows(b, m - j, width));
    let r = rows.len();
    if r == 0 {
        return Poly::rone();
    }
    let coeffs = (0..=j)
        .map(|i| {
            let col_i = width - 1 - i;
            let sub: Vec<Vec<T>> = rows
                .iter()
                .map(|row| {
                    let mut v: Vec<T> = row[..r - 1].to_vec();
                    v.push(row[col_i].clone());
                    v
                })
                .collect();
            det_bareiss(sub)
        })
        .collect();
    Poly::new(coeffs)
}

pub fn resultant<T: Ring>(a: &Poly<T>, b: &Poly<T>) -> T {
    if a.is_zero_poly() || b.is_zero_poly() {
        return T::rzero();
    }
    subresultant(a, b, 0).coeff(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::qr;

    fn p(c: &[i64]) -> PolyQ {
        PolyQ::from_ints(c)
    }

    #[test]
    fn arithmetic_and_division() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[-1, 1]);
        let (quo, r) = a.divrem(&b);
        assert_eq!(quo, p(&[1, 1]));
        assert!(r.is_zero_poly());
        assert_eq!(a.gcd(&p(&[1, 2, 1])), p(&[1, 1]));
        assert_eq!(p(&[1, 1]).pow(3), p(&[1, 3, 3, 1]));
    }

    #[test]
    fn resultant_of_linear_factors() {
        // Res(x - 2, x^2 - 3) = 2^2 - 3 = 1 (up to the sign convention).
        let r = resultant(&p(&[-2, 1]), &p(&[-3, 0, 1]));
        assert_eq!(r, q(1));
        // Common root gives zero.
        assert_eq!(resultant(&p(&[-1, 0, 1]), &p(&[1, 1])), q(0));
    }

    #[test]
    fn resultant_matches_product_formula() {
        // a = (x-1)(x-3), b = (x+2)(x-5): Res = prod (ai - bj).
        let a = p(&[3, -4, 1]);
        let b = p(&[-10, -3, 1]);
        let expect = q((1 + 2) * (1 - 5) * (3 + 2) * (3 - 5));
        assert_eq!(resultant(&a, &b), expect);
    }

    #[test]
    fn first_subresultant_recovers_common_root() {
        // a and b share exactly the root 2; S1 = s1*x + s0 vanishes there.
        let a = p(&[-2, 1]).rmul(&p(&[1, 0, 1]));
        let b = p(&[-2, 1]).rmul(&p(&[5, 1]));
        let s1 = subresultant(&a, &b, 1);
        assert_eq!(s1.degree(), Some(1));
        assert!(s1.eval(&q(2)).is_zero());
    }

    #[test]
    fn bivariate_resultant_eliminates() {
        // A = y - x, B = y^2 - 2: Res_y = x^2 - 2.
        let x = Poly::<Q>::x();
        let a: Poly<PolyQ> = Poly::new(vec![x.rneg(), PolyQ::rone()]);
        let b: Poly<PolyQ> = Poly::new(vec![PolyQ::from_i64(-2), PolyQ::rzero(), PolyQ::rone()]);
        let r = resultant(&a, &b);
        assert_eq!(r, p(&[-2, 0, 1]));
    }

    #[test]
    fn sturm_isolation() {
        let f = p(&[-2, 0, 1]).rmul(&p(&[-1, 3]));
        let roots = f.isolate_real_roots();
        assert_eq!(roots.len(), 3);
        assert!(roots.iter().any(|(lo, hi)| *lo <= qr(1, 3) && qr(1, 3) <= *hi));
        for (lo, hi) in &roots {
            if lo != hi {
                assert!(f.eval(lo).is_positive() != f.eval(hi).is_positive());
            }
        }
        assert_eq!(p(&[1, 0, 1]).isolate_real_roots().len(), 0);
    }

    #[test]
    fn inverse_modulo() {
        let m = p(&[-2, 0, 1]);
        let a = p(&[1, 1]);
        let inv = a.inverse_mod(&m).unwrap();
        assert_eq!(a.rmul(&inv).rem(&m), p(&[1]));
        assert!(p(&[0, 0, 1]).rsub(&p(&[2])).inverse_mod(&m).is_none());
    }

    #[test]
    fn complex_root_approximation() {
        let roots = p(&[1, 0, 1]).approx_complex_roots();
        assert_eq!(roots.len(), 2);
        for z in roots {
            assert!((z.norm() - 1.0).abs() < 1e-9);
        }
    }
}
