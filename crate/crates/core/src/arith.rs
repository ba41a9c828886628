//! Exact scalars and small integer-vector helpers shared by every module.

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;
pub type Z = BigInt;

/// Integer 2-vector: lattice points, slopes, normals.
pub type IVec = [i64; 2];

/// Rational 2-vector: positions in N_R.
pub type QVec = [Q; 2];

pub fn q(n: i64) -> Q {
    Q::from_integer(Z::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(Z::from(n), Z::from(d))
}

pub fn qv(x: i64, y: i64) -> QVec {
    [q(x), q(y)]
}

pub fn qvec(v: IVec) -> QVec {
    [q(v[0]), q(v[1])]
}

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Lattice length and primitive direction of an integer vector.
/// The zero vector has lattice length 0 and is its own direction.
pub fn primitive(v: IVec) -> (IVec, i64) {
    let g = gcd(v[0], v[1]);
    if g == 0 {
        return ([0, 0], 0);
    }
    ([v[0] / g, v[1] / g], g)
}

pub fn dot(a: IVec, b: IVec) -> i64 {
    a[0] * b[0] + a[1] * b[1]
}

pub fn det(a: IVec, b: IVec) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

pub fn add(a: IVec, b: IVec) -> IVec {
    [a[0] + b[0], a[1] + b[1]]
}

pub fn neg(a: IVec) -> IVec {
    [-a[0], -a[1]]
}

pub fn scale(k: i64, a: IVec) -> IVec {
    [k * a[0], k * a[1]]
}

pub fn qadd(a: &QVec, b: &QVec) -> QVec {
    [&a[0] + &b[0], &a[1] + &b[1]]
}

pub fn qsub(a: &QVec, b: &QVec) -> QVec {
    [&a[0] - &b[0], &a[1] - &b[1]]
}

/// `p + t * s` for an integer direction `s`.
pub fn qstep(p: &QVec, t: &Q, s: IVec) -> QVec {
    [&p[0] + t * q(s[0]), &p[1] + t * q(s[1])]
}

pub fn qdot(a: &QVec, m: IVec) -> Q {
    &a[0] * q(m[0]) + &a[1] * q(m[1])
}

/// Completes a primitive row vector `n` to a determinant-one matrix whose
/// second row is `n`.
pub fn complete_to_unimodular(n: IVec) -> [[i64; 2]; 2] {
    let e = n[0].extended_gcd(&n[1]);
    // e.x * n0 + e.y * n1 = gcd = ±1; we want a*n1 - b*n0 = 1.
    let (mut a, mut b) = (e.y, -e.x);
    if e.gcd < 0 {
        a = -a;
        b = -b;
    }
    let m = [[a, b], n];
    debug_assert_eq!(m[0][0] * m[1][1] - m[0][1] * m[1][0], 1);
    m
}

pub fn mat_apply(m: &[[i64; 2]; 2], v: IVec) -> IVec {
    [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
}

pub fn mat_det(m: &[[i64; 2]; 2]) -> i64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

pub fn mat_inverse_unimodular(m: &[[i64; 2]; 2]) -> [[i64; 2]; 2] {
    let d = mat_det(m);
    assert!(d == 1 || d == -1, "matrix is not unimodular");
    [[m[1][1] * d, -m[0][1] * d], [-m[1][0] * d, m[0][0] * d]]
}

/// The inverse-transpose, which is how a change of coordinates on M acts on N.
pub fn mat_dual(m: &[[i64; 2]; 2]) -> [[i64; 2]; 2] {
    let inv = mat_inverse_unimodular(m);
    [[inv[0][0], inv[1][0]], [inv[0][1], inv[1][1]]]
}

pub fn floor_q(x: &Q) -> i64 {
    x.floor().to_integer().to_i64().expect("coordinate out of i64 range")
}

pub fn ceil_q(x: &Q) -> i64 {
    x.ceil().to_integer().to_i64().expect("coordinate out of i64 range")
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn is_integer(x: &Q) -> bool {
    x.is_integer()
}

pub fn abs_q(x: &Q) -> Q {
    x.abs()
}

/// Parses "p/q", "p" or a decimal-free integer; rejects a zero denominator.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: Z = n.trim().parse().ok()?;
            let d: Z = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Q::new(n, d))
            }
        }
        None => s.parse::<Z>().ok().map(Q::from_integer),
    }
}

pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Is `k` a positive power `p^l`, `l >= 1`, of `p`?
pub fn is_power_of(k: u64, p: u64) -> bool {
    if p < 2 || k < p {
        return false;
    }
    let mut k = k;
    while k % p == 0 {
        k /= p;
    }
    k == 1
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_vectors() {
        assert_eq!(primitive([4, 6]), ([2, 3], 2));
        assert_eq!(primitive([-3, 0]), ([-1, 0], 3));
        assert_eq!(primitive([0, 0]), ([0, 0], 0));
    }

    #[test]
    fn unimodular_completion() {
        for n in [[0, 1], [1, 0], [3, -1], [-2, 5], [7, 3]] {
            let m = complete_to_unimodular(n);
            assert_eq!(mat_det(&m), 1);
            assert_eq!(m[1], n);
        }
    }

    #[test]
    fn rationals_round_trip_through_strings() {
        for s in ["3/4", "-7/2", "5", "0"] {
            assert_eq!(fmt_q(&parse_q(s).unwrap()), s);
        }
        assert!(parse_q("1/0").is_none());
        assert_eq!(parse_q("6/4").unwrap(), qr(3, 2));
    }

    #[test]
    fn prime_powers() {
        assert!(is_power_of(25, 5));
        assert!(is_power_of(5, 5));
        assert!(!is_power_of(1, 5));
        assert!(!is_power_of(10, 5));
        assert!(is_prime(7) && !is_prime(9));
    }
}
