//! Slow, independent reference implementations used only by tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Determinant by cofactor expansion along the first row.
pub fn cofactor_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * cofactor_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// gcd of all `k x k` minors of a rows-list matrix.
pub fn determinantal_divisor(m: &[Vec<BigInt>], k: usize) -> BigInt {
    let (r, c) = (m.len(), m[0].len());
    let mut g = BigInt::zero();
    for rs in subsets(r, k) {
        for cs in subsets(c, k) {
            let sub: Vec<Vec<BigInt>> = rs
                .iter()
                .map(|&i| cs.iter().map(|&j| m[i][j].clone()).collect())
                .collect();
            g = g.gcd(&cofactor_det(&sub));
        }
    }
    g
}

fn adjugate(m: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = m.len();
    let mut adj = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<BigInt>> = m
                .iter()
                .enumerate()
                .filter(|&(r, _)| r != i)
                .map(|(_, row)| {
                    row.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let d = if n == 1 {
                BigInt::one()
            } else {
                cofactor_det(&minor)
            };
            adj[j][i] = if (i + j) % 2 == 0 { d } else { -d };
        }
    }
    adj
}

/// The group `X^{-1} Z^{n+1} / Z^{n+1}` for facet-vector columns `cols`,
/// enumerated by closure inside `(Z/D)^{n+1}`, `D = |det X|`. Returns
/// `(D, elements)`.
pub fn quotient_group(cols: &[Vec<BigInt>]) -> (BigInt, Vec<Vec<BigInt>>) {
    let n1 = cols.len();
    let rows: Vec<Vec<BigInt>> = (0..n1)
        .map(|i| cols.iter().map(|c| c[i].clone()).collect())
        .collect();
    let det = cofactor_det(&rows);
    let d = det.abs();
    let adj = adjugate(&rows);
    // X^{-1} = adj / det; its columns generate the group, scaled by D
    let gens: Vec<Vec<BigInt>> = (0..n1)
        .map(|j| {
            (0..n1)
                .map(|i| (&adj[i][j] * det.signum()).mod_floor(&d))
                .collect()
        })
        .collect();
    let zero = vec![BigInt::zero(); n1];
    let mut elems = vec![zero.clone()];
    let mut seen = std::collections::HashSet::new();
    seen.insert(zero);
    let mut i = 0;
    while i < elems.len() {
        let e = elems[i].clone();
        for g in &gens {
            let s: Vec<BigInt> = e
                .iter()
                .zip(g)
                .map(|(a, b)| (a + b).mod_floor(&d))
                .collect();
            if seen.insert(s.clone()) {
                elems.push(s);
            }
        }
        i += 1;
    }
    (d, elems)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Least vector over units, per-coordinate signs and permutations mod `p`.
pub fn brute_canonical(p: &BigInt, r: &[BigInt]) -> Vec<BigInt> {
    let n = r.len();
    let perms = permutations(n);
    let mut best: Option<Vec<BigInt>> = None;
    let mut u = BigInt::one();
    while &u < p {
        if u.gcd(p).is_one() {
            for signs in 0u32..1 << n {
                for perm in &perms {
                    let v: Vec<BigInt> = perm
                        .iter()
                        .enumerate()
                        .map(|(k, &i)| {
                            let x = (&r[i] * &u).mod_floor(p);
                            if signs >> k & 1 == 1 {
                                (p - x).mod_floor(p)
                            } else {
                                x
                            }
                        })
                        .collect();
                    if best.as_ref().is_none_or(|b| &v < b) {
                        best = Some(v);
                    }
                }
            }
        }
        u += 1;
    }
    best.expect("p >= 2 has a unit")
}

/// Lens parameters by enumeration: the group element whose `F_0`
/// coordinate is 1, read off at `F_1, ..., F_n`.
pub fn brute_lens(cols: &[Vec<BigInt>]) -> Option<(BigInt, Vec<BigInt>)> {
    let (d, elems) = quotient_group(cols);
    if elems.len() as u64 != u64::try_from(&d).ok()? {
        return None;
    }
    let g = elems.into_iter().find(|e| e[0].is_one())?;
    Some((d, g[1..].to_vec()))
}

pub fn i(x: i64) -> BigInt {
    BigInt::from(x)
}

/// Normalized family members `(q, p)` with `sum(q) + p <= max_sum`.
pub fn family(n: usize, max_sum: i64) -> Vec<(Vec<BigInt>, BigInt)> {
    fn rec(
        p: i64,
        n: usize,
        lo: i64,
        budget: i64,
        cur: &mut Vec<i64>,
        out: &mut Vec<(Vec<BigInt>, BigInt)>,
    ) {
        if cur.len() == n {
            out.push((cur.iter().map(|&x| i(x)).collect(), i(p)));
            return;
        }
        for x in lo..p.min(budget + 1) {
            if x.gcd(&p) == 1 {
                cur.push(x);
                rec(p, n, x, budget - x, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    for p in 2..max_sum {
        rec(p, n, 1, max_sum - p, &mut Vec::new(), &mut out);
    }
    out
}
