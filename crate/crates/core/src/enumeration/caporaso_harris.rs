//! Severi degrees of the projective plane from the Caporaso–Harris
//! recursion, used as an independent check on tropical counts.
//!
//! `N(d, δ, α, β)` counts possibly reducible δ-nodal curves of degree `d`
//! with tangency `α` to a fixed line at fixed points and `β` at free points.
//! Irreducible counts are recovered by removing all unions of curves of
//! lower degree.

use crate::error::{Error, Result};
use std::collections::HashMap;

pub const MAX_DEGREE: u32 = 5;

type Key = (u32, i64, Vec<u32>, Vec<u32>);

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn weight(v: &[u32]) -> u32 {
    v.iter().enumerate().map(|(i, &a)| (i as u32 + 1) * a).sum()
}

fn binom(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

#[derive(Default)]
struct Recursion {
    memo: HashMap<Key, u128>,
}

impl Recursion {
    fn n(&mut self, d: u32, delta: i64, alpha: Vec<u32>, beta: Vec<u32>) -> u128 {
        let (alpha, beta) = (trim(alpha), trim(beta));
        if delta < 0 || weight(&alpha) + weight(&beta) != d {
            return 0;
        }
        if d == 0 {
            return (delta == 0) as u128;
        }
        if delta > (d * (d - 1) / 2) as i64 {
            return 0;
        }
        let key = (d, delta, alpha.clone(), beta.clone());
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let mut total = 0u128;
        for k in 0..beta.len() {
            if beta[k] > 0 {
                let mut a = alpha.clone();
                a.resize(a.len().max(k + 1), 0);
                a[k] += 1;
                let mut b = beta.clone();
                b[k] -= 1;
                total += (k as u128 + 1) * self.n(d, delta, a, b);
            }
        }
        let len = d as usize;
        let mut alpha_p = Vec::new();
        sub_vectors(&alpha, 0, &mut Vec::new(), &mut alpha_p);
        for a2 in alpha_p {
            let rest = (d - 1).checked_sub(weight(&a2));
            let Some(rest) = rest else { continue };
            let mut betas = Vec::new();
            super_vectors(&beta, len, rest, 0, &mut Vec::new(), &mut betas);
            for b2 in betas {
                let extra: u32 = (0..b2.len()).map(|k| b2[k] - beta.get(k).copied().unwrap_or(0)).sum();
                let delta2 = delta - (d as i64 - 1) + extra as i64;
                if delta2 < 0 {
                    continue;
                }
                let mut coef = 1u128;
                for k in 0..b2.len() {
                    let bk = beta.get(k).copied().unwrap_or(0);
                    coef *= ((k + 1) as u128).pow(b2[k] - bk) * binom(b2[k], bk);
                }
                for k in 0..alpha.len() {
                    coef *= binom(alpha[k], a2.get(k).copied().unwrap_or(0));
                }
                if coef > 0 {
                    total += coef * self.n(d - 1, delta2, a2.clone(), b2.clone());
                }
            }
        }
        self.memo.insert(key, total);
        total
    }
}

/// All vectors `v <= a` componentwise.
fn sub_vectors(a: &[u32], k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if k == a.len() {
        out.push(cur.clone());
        return;
    }
    for x in 0..=a[k] {
        cur.push(x);
        sub_vectors(a, k + 1, cur, out);
        cur.pop();
    }
}

/// All vectors `v >= b` of length `len` with `I v == target`.
fn super_vectors(b: &[u32], len: usize, target: u32, k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    let used = weight(cur);
    if k == len {
        if used == target {
            out.push(cur.clone());
        }
        return;
    }
    let lo = b.get(k).copied().unwrap_or(0);
    let mut x = lo;
    while used + (k as u32 + 1) * x <= target {
        cur.push(x);
        super_vectors(b, len, target, k + 1, cur, out);
        cur.pop();
        x += 1;
    }
}

/// Number of δ-nodal plane curves of degree `d` through
/// `d(d+3)/2 - δ` general points, reducible ones included.
pub fn severi_degree(d: u32, delta: i64) -> u128 {
    let mut beta = vec![0; d as usize];
    if d > 0 {
        beta[0] = d;
    }
    Recursion::default().n(d, delta, Vec::new(), beta)
}

fn points(d: u32, delta: i64) -> i64 {
    (d * (d + 3) / 2) as i64 - delta
}

fn max_nodes(d: u32) -> i64 {
    (d as i64 - 1) * (d as i64 - 2) / 2
}

fn factorial(n: i64) -> u128 {
    (1..=n as u128).product()
}

/// Irreducible δ-nodal curves of degree `d`.
fn irreducible(d: u32, delta: i64, memo: &mut HashMap<(u32, i64), u128>) -> u128 {
    if let Some(&v) = memo.get(&(d, delta)) {
        return v;
    }
    let mut reducible = 0u128;
    let mut parts = Vec::new();
    collect_unions(d, d, i64::MAX, &mut Vec::new(), &mut parts);
    for comps in parts.into_iter().filter(|c| c.len() >= 2) {
        // Nodes from pairwise intersections.
        let mut cross = 0i64;
        for i in 0..comps.len() {
            for j in i + 1..comps.len() {
                cross += (comps[i].0 * comps[j].0) as i64;
            }
        }
        let own: i64 = comps.iter().map(|c| c.1).sum();
        if own + cross != delta {
            continue;
        }
        if comps.iter().any(|c| points(c.0, c.1) < 0) {
            continue;
        }
        let mut ways = factorial(points(d, delta));
        for c in &comps {
            ways /= factorial(points(c.0, c.1));
        }
        let mut i = 0;
        while i < comps.len() {
            let j = (i..comps.len()).take_while(|&j| comps[j] == comps[i]).count();
            ways /= factorial(j as i64);
            i += j;
        }
        let mut prod = ways;
        for c in &comps {
            prod *= irreducible(c.0, c.1, memo);
        }
        reducible += prod;
    }
    let v = severi_degree(d, delta) - reducible;
    memo.insert((d, delta), v);
    v
}

/// Non-increasing lists of components `(degree, nodes)` with degrees
/// summing to `d`.
fn collect_unions(rest: u32, max_d: u32, max_key: i64, cur: &mut Vec<(u32, i64)>, out: &mut Vec<Vec<(u32, i64)>>) {
    if rest == 0 {
        out.push(cur.clone());
        return;
    }
    for e in (1..=rest.min(max_d)).rev() {
        for nodes in (0..=max_nodes(e)).rev() {
            let key = (e as i64) * 1000 + nodes;
            if e == max_d && key > max_key {
                continue;
            }
            cur.push((e, nodes));
            collect_unions(rest - e, e, key, cur, out);
            cur.pop();
        }
    }
}

/// Irreducible plane curves of degree `d` and geometric genus `g` through
/// `3d + g - 1` general points.
pub fn caporaso_harris_oracle(d: u32, g: u32) -> Result<u128> {
    if d == 0 || d > MAX_DEGREE {
        return Err(Error::OutOfRange(format!("degree {d} outside 1..={MAX_DEGREE}")));
    }
    let delta = max_nodes(d) - g as i64;
    if delta < 0 {
        return Ok(0);
    }
    Ok(irreducible(d, delta, &mut HashMap::new()))
}
