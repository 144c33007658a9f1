use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::smith::{smith_form, smith_form_with_inverses};
use super::IntMatrix;
use crate::error::{Error, Result};

/// gcd of absolute values; 0 for an empty or all-zero list.
pub fn gcd_many<'a, I>(xs: I) -> BigInt
where
    I: IntoIterator<Item = &'a BigInt>,
{
    xs.into_iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (BigInt::one(), BigInt::zero());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_negative() {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Integers `(x, y, z)` with `c1*x + c2*y + c3*z = 1`, if any exist.
pub fn bezout3(c1: &BigInt, c2: &BigInt, c3: &BigInt) -> Option<(BigInt, BigInt, BigInt)> {
    let (g12, x, y) = ext_gcd(c1, c2);
    let (g, s, t) = ext_gcd(&g12, c3);
    if !g.is_one() {
        return None;
    }
    Some((&s * x, &s * y, t))
}

/// Least nonnegative residue of `x` modulo `m > 0`.
pub fn modulo(x: &BigInt, m: &BigInt) -> BigInt {
    x.mod_floor(m)
}

/// Inverse of `x` modulo `m`, if `gcd(x, m) = 1`.
pub fn mod_inverse(x: &BigInt, m: &BigInt) -> Option<BigInt> {
    let (g, s, _) = ext_gcd(x, m);
    g.is_one().then(|| s.mod_floor(m))
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

fn column_matrix(vectors: &[Vec<BigInt>]) -> Result<IntMatrix> {
    let m = vectors[0].len();
    if vectors.iter().any(|v| v.len() != m) {
        return Err(Error::Dimension("vectors of unequal length".into()));
    }
    if vectors.len() > m {
        return Err(Error::Dimension(format!(
            "{} vectors cannot be part of a basis of Z^{m}",
            vectors.len()
        )));
    }
    IntMatrix::from_columns(vectors)
}

/// True iff the vectors span a direct summand of `Z^m` of rank `k`, i.e. all
/// Smith elementary divisors of the column matrix are 1.
pub fn is_part_of_basis(vectors: &[Vec<BigInt>]) -> Result<bool> {
    if vectors.is_empty() {
        return Ok(true);
    }
    let a = column_matrix(vectors)?;
    let s = smith_form(&a);
    Ok(s.diagonal().iter().all(One::is_one))
}

/// gcd of all maximal minors of a matrix with at least as many rows as
/// columns.
pub fn maximal_minors_gcd(a: &IntMatrix) -> Result<BigInt> {
    let k = a.cols();
    if k > a.rows() {
        return Err(Error::Dimension("more columns than rows".into()));
    }
    let mut g = BigInt::zero();
    for rows in k_subsets(a.rows(), k) {
        let minor: Vec<Vec<BigInt>> = rows.iter().map(|&i| a.row(i).to_vec()).collect();
        let d = IntMatrix::from_rows(&minor)?.det()?;
        g = g.gcd(&d);
        if g.is_one() {
            break;
        }
    }
    Ok(g)
}

/// Completes `vectors` to a unimodular `m x m` matrix whose first columns are
/// the inputs verbatim.
pub fn unimodular_extend(vectors: &[Vec<BigInt>]) -> Result<IntMatrix> {
    if vectors.is_empty() {
        return Err(Error::Dimension("no vectors to extend".into()));
    }
    let a = column_matrix(vectors)?;
    let (m, k) = (a.rows(), a.cols());
    let (s, u_inv, v_inv) = smith_form_with_inverses(&a);
    if !s.diagonal().iter().all(One::is_one) {
        return Err(Error::NotExtendable(m));
    }
    // a = u_inv * [I_k; 0] * v_inv, so u_inv * diag(v_inv, I) starts with a.
    let mut block = IntMatrix::identity(m);
    for i in 0..k {
        for j in 0..k {
            block[(i, j)] = v_inv[(i, j)].clone();
        }
    }
    Ok(&u_inv * &block)
}
