use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::charfun::{validate_rational_simplex, RationalCharFn};
use crate::error::{Error, Result};
use crate::exactlin::{bezout3, gcd_many};

/// Extension coefficients `(eps_1, ..., eps_n)`, each 0 or -1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EpsilonVector(Vec<i8>);

impl EpsilonVector {
    pub fn new(eps: Vec<i8>) -> Result<Self> {
        if let Some(x) = eps.iter().find(|&&x| x != 0 && x != -1) {
            return Err(Error::Precondition(format!(
                "epsilon entry {x} not in {{0, -1}}"
            )));
        }
        Ok(EpsilonVector(eps))
    }

    pub fn zeros(n: usize) -> Self {
        EpsilonVector(vec![0; n])
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All of `{0, -1}^n`, 0 before -1, first coordinate most significant.
    pub fn all(n: usize) -> impl Iterator<Item = EpsilonVector> {
        (0u64..1u64 << n).map(move |bits| {
            EpsilonVector(
                (0..n)
                    .map(|i| if bits >> (n - 1 - i) & 1 == 1 { -1 } else { 0 })
                    .collect(),
            )
        })
    }
}

impl fmt::Display for EpsilonVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Membership in the family of normalized lens tuples:
/// `0 < q_1 <= ... <= q_n < p` and `gcd(p, q_i) = 1`.
pub fn check_family(p: &BigInt, q: &[BigInt]) -> Result<()> {
    let bad = |why: String| Err(Error::InvalidLensParameters(why));
    if q.is_empty() {
        return bad("empty q".into());
    }
    if !q[0].is_positive() || q.last().unwrap() >= p {
        return bad(format!("parameters of L({p}; ..) must lie in [1, {p})"));
    }
    if q.windows(2).any(|w| w[0] > w[1]) {
        return bad("parameters are not sorted".into());
    }
    if let Some(x) = q.iter().find(|x| !x.gcd(p).is_one()) {
        return bad(format!("gcd({p}, {x}) != 1"));
    }
    Ok(())
}

/// The four gcd tests for extending the 2-dimensional lens model.
pub fn eps_search_dim3(q1: &BigInt, q2: &BigInt, p: &BigInt) -> Result<Option<EpsilonVector>> {
    check_family(p, &[q1.clone(), q2.clone()])?;
    let (r1, r2) = (p - q1, p - q2);
    let hit = [
        (q1, q2, [0, 0]),
        (&r1, q2, [-1, 0]),
        (q1, &r2, [0, -1]),
        (&r1, &r2, [-1, -1]),
    ]
    .into_iter()
    .find(|(x, y, _)| x.gcd(y).is_one());
    Ok(hit.map(|(_, _, e)| EpsilonVector(e.to_vec())))
}

pub fn extension_is_valid(p: &BigInt, q: &[BigInt], eps: &EpsilonVector) -> Result<bool> {
    let eta = RationalCharFn::lens_extension_vectors(p, q, eps.as_slice());
    Ok(validate_rational_simplex(q.len() + 1, &eta)?.is_valid())
}

/// First `eps` in [`EpsilonVector::all`] order whose extension is a valid
/// rational characteristic function.
pub fn eps_search_general(q: &[BigInt], p: &BigInt) -> Result<Option<EpsilonVector>> {
    check_family(p, q)?;
    for eps in EpsilonVector::all(q.len()) {
        if extension_is_valid(p, q, &eps)? {
            return Ok(Some(eps));
        }
    }
    Ok(None)
}

/// Pairwise coefficient triples `(eps_j p + q_j, -(eps_i p + q_i), eps_i q_j - eps_j q_i)`
/// for `i < j`.
pub fn question2_coefficients(
    p: &BigInt,
    q: &[BigInt],
    eps: &EpsilonVector,
) -> Vec<((usize, usize), [BigInt; 3])> {
    let e: Vec<BigInt> = eps.as_slice().iter().map(|&x| BigInt::from(x)).collect();
    let mut out = Vec::new();
    for i in 0..q.len() {
        for j in i + 1..q.len() {
            let c = [
                &e[j] * p + &q[j],
                -(&e[i] * p + &q[i]),
                &e[i] * &q[j] - &e[j] * &q[i],
            ];
            out.push(((i, j), c));
        }
    }
    out
}

/// Every pairwise equation `c_1 x + c_2 y + c_3 z = 1` is solvable.
pub fn question2_holds(p: &BigInt, q: &[BigInt], eps: &EpsilonVector) -> bool {
    question2_coefficients(p, q, eps)
        .iter()
        .all(|(_, [a, b, c])| bezout3(a, b, c).is_some())
}

/// Same test by gcd only.
pub fn question2_gcd_holds(p: &BigInt, q: &[BigInt], eps: &EpsilonVector) -> bool {
    question2_coefficients(p, q, eps)
        .iter()
        .all(|(_, c)| gcd_many(c.iter()).is_one())
}
