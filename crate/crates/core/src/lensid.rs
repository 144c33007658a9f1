//! Identification of generalized lens spaces and parameter normal forms.
//!
//! For a hyper characteristic function with column matrix `X = [xi_0 .. xi_n]`
//! of full rank, the space is `S^{2n+1}` modulo the finite group
//! `X^{-1} Z^{n+1} / Z^{n+1}` acting through the standard torus. Coordinates
//! of that group are indexed by facets; in the usual lens presentation facet
//! `F_0` plays the role of the last homogeneous coordinate.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::charfun::HyperCharFn;
use crate::error::{Error, Result};
use crate::exactlin::{mod_inverse, modulo, smith_form, IntMatrix};

/// Result of identifying `L(simplex, xi)`; the space has dimension `2n + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LensClass {
    Sphere { n: usize },
    Lens { p: BigInt, r: Vec<BigInt> },
    ProductS1CPn { n: usize },
}

impl LensClass {
    pub fn n(&self) -> usize {
        match self {
            LensClass::Sphere { n } | LensClass::ProductS1CPn { n } => *n,
            LensClass::Lens { r, .. } => r.len(),
        }
    }

    /// Order of the quotient group; `None` for the infinite case.
    pub fn order(&self) -> Option<BigInt> {
        match self {
            LensClass::Sphere { .. } => Some(BigInt::one()),
            LensClass::Lens { p, .. } => Some(p.clone()),
            LensClass::ProductS1CPn { .. } => None,
        }
    }

    pub fn is_sphere(&self) -> bool {
        matches!(self, LensClass::Sphere { .. })
    }
}

impl fmt::Display for LensClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LensClass::Sphere { n } => write!(f, "S^{}", 2 * n + 1),
            LensClass::Lens { p, r } => {
                let r: Vec<String> = r.iter().map(ToString::to_string).collect();
                write!(f, "L({p}; {})", r.join(","))
            }
            LensClass::ProductS1CPn { n } => write!(f, "S^1 x CP^{n}"),
        }
    }
}

/// Identifies the generalized lens space of a valid hyper characteristic
/// function.
pub fn identify(f: &HyperCharFn) -> Result<LensClass> {
    let n = f.dim();
    let xi = f.matrix();
    let snf = smith_form(&xi);
    let rank = snf.rank();
    if rank == n {
        return Ok(LensClass::ProductS1CPn { n });
    }
    if rank < n {
        return Err(Error::InvalidCharFn(format!("rank {rank} < {n}")));
    }
    let divisors = snf.diagonal();
    let p: BigInt = divisors.iter().product();
    if p.is_one() {
        return Ok(LensClass::Sphere { n });
    }
    if divisors[..n].iter().any(|d| !d.is_one()) {
        return Err(Error::NonCyclicQuotient { divisors });
    }
    // X^{-1} = V D^{-1} U and U is unimodular, so the group is generated by
    // the last column of V divided by p.
    let numerators: Vec<BigInt> = snf.v.column(n).iter().map(|x| modulo(x, &p)).collect();
    normalize_generator(&p, &numerators).ok_or(Error::NonCyclicQuotient { divisors })
}

/// Scales a generator of a cyclic subgroup of `(Z/p)^{n+1}` (facet-indexed)
/// so that one coordinate becomes 1, trying `F_0` first and then
/// `F_n, ..., F_1`. The lens parameters are the remaining coordinates in the
/// order `F_1, ..., F_n, F_0`.
fn normalize_generator(p: &BigInt, g: &[BigInt]) -> Option<LensClass> {
    let len = g.len();
    let presentation: Vec<usize> = (1..len).chain(std::iter::once(0)).collect();
    for &j in presentation.iter().rev() {
        let Some(u) = mod_inverse(&g[j], p) else {
            continue;
        };
        let r = presentation
            .iter()
            .filter(|&&i| i != j)
            .map(|&i| modulo(&(&g[i] * &u), p))
            .collect();
        return Some(LensClass::Lens { p: p.clone(), r });
    }
    None
}

fn check_lens_params(p: &BigInt, q: &[BigInt]) -> Result<()> {
    if !p.is_positive() {
        return Err(Error::InvalidLensParameters(format!(
            "p = {p} is not positive"
        )));
    }
    if let Some(x) = q.iter().find(|x| !x.gcd(p).is_one()) {
        return Err(Error::InvalidLensParameters(format!("gcd({p}, {x}) != 1")));
    }
    Ok(())
}

/// Reduces each parameter into `[0, p)` and sorts ascending.
pub fn reduce_params(p: &BigInt, q: &[BigInt]) -> Vec<BigInt> {
    let mut r: Vec<BigInt> = q.iter().map(|x| modulo(x, p)).collect();
    r.sort();
    r
}

/// Lens parameter translation by `B`: `a = B(-q)`, `a' = a mod p`,
/// `q' = -B^{-1} a'`, `r = q' mod p`. `L(p; q)` and `L(p; r)` are
/// diffeomorphic.
///
/// `B` must be unimodular (`det = +-1`).
pub fn lenscla2_translate(p: &BigInt, q: &[BigInt], b: &IntMatrix) -> Result<Vec<BigInt>> {
    check_lens_params(p, q)?;
    if !b.is_square() || b.rows() != q.len() {
        return Err(Error::Dimension(format!(
            "B is {}x{} but q has {} entries",
            b.rows(),
            b.cols(),
            q.len()
        )));
    }
    let b_inv = b.unimodular_inverse()?;
    let neg_q: Vec<BigInt> = q.iter().map(|x| -x).collect();
    let a = b.mul_vec(&neg_q)?;
    let a_red: Vec<BigInt> = a.iter().map(|x| modulo(x, p)).collect();
    let q_prime: Vec<BigInt> = b_inv.mul_vec(&a_red)?.into_iter().map(|x| -x).collect();
    Ok(q_prime.iter().map(|x| modulo(x, p)).collect())
}

/// Classification of 3-dimensional lens spaces: `r = +-q` or `qr = +-1 (mod p)`.
pub fn diffeo_3dim(p: &BigInt, q: &BigInt, r: &BigInt) -> Result<bool> {
    check_lens_params(p, &[q.clone(), r.clone()])?;
    let plus = |x: &BigInt| modulo(x, p);
    let (q, r) = (plus(q), plus(r));
    let qr = plus(&(&q * &r));
    Ok(r == q || r == plus(&-&q) || qr == plus(&BigInt::one()) || qr == plus(&-BigInt::one()))
}

/// Lexicographically least vector reachable by a global unit multiple,
/// per-coordinate negation and permutation, all taken mod `p`.
pub fn canonical_form(p: &BigInt, r: &[BigInt]) -> Result<Vec<BigInt>> {
    if p < &BigInt::from(2) {
        return Err(Error::InvalidLensParameters(format!(
            "p = {p} has no lens parameters"
        )));
    }
    check_lens_params(p, r)?;
    let half = p / 2;
    let mut best: Option<Vec<BigInt>> = None;
    let mut u = BigInt::one();
    // u and -u give the same candidate after negation
    while u <= half {
        if u.gcd(p).is_one() {
            let mut cand: Vec<BigInt> = r
                .iter()
                .map(|x| {
                    let y = modulo(&(x * &u), p);
                    let z = p - &y;
                    y.min(z)
                })
                .collect();
            cand.sort();
            if best.as_ref().is_none_or(|b| &cand < b) {
                best = Some(cand);
            }
        }
        u += 1;
    }
    Ok(best.unwrap_or_else(|| vec![BigInt::one(); r.len()]))
}

/// Canonical key for comparing identified spaces: spheres and products
/// compare by kind, lens spaces by `(p, canonical_form)`.
pub fn class_key(c: &LensClass) -> Result<LensClass> {
    match c {
        LensClass::Lens { p, r } => Ok(LensClass::Lens {
            p: p.clone(),
            r: canonical_form(p, r)?,
        }),
        other => Ok(other.clone()),
    }
}
