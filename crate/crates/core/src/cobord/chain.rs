use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::charfun::{det2, validate_rational_polygon};
use crate::error::{Error, Result};
use crate::exactlin::{ext_gcd, gcd_many};

pub type Vec2 = [BigInt; 2];

fn vec2(x: i64, y: i64) -> Vec2 {
    [BigInt::from(x), BigInt::from(y)]
}

fn is_primitive(v: &Vec2) -> bool {
    gcd_many(v.iter()).is_one()
}

/// One reduction step: given primitive `v1`, `v2` with `|det(v1, v2)| = r > 1`,
/// a primitive `e` with `|det(v1, e)| = 1` and `|det(v2, e)| < r`.
pub fn lem1_step(v1: &Vec2, v2: &Vec2) -> Result<Vec2> {
    if !is_primitive(v1) || !is_primitive(v2) {
        return Err(Error::Precondition(format!(
            "({}, {}) and ({}, {}) must both be primitive",
            v1[0], v1[1], v2[0], v2[1]
        )));
    }
    let r = det2(v1, v2).abs();
    if r <= BigInt::one() {
        return Err(Error::NothingToReduce(r));
    }
    let [a, b] = v1;
    // P = [[a, x], [b, y]] has det 1; A = P^{-1} sends v1 to (1, 0).
    let (_, s, t) = ext_gcd(a, b);
    let (x, y) = (-t, s);
    let c = &y * &v2[0] - &x * &v2[1];
    let d = a * &v2[1] - b * &v2[0];
    // (u, 1) with |c - d u| < |d|
    let u = &c / &d;
    let e = [a * &u + &x, b * &u + &y];

    if !det2(v1, &e).abs().is_one() || !is_primitive(&e) || det2(v2, &e).abs() >= r {
        return Err(Error::Invariant(format!(
            "reduction step from ({a}, {b}) produced ({}, {})",
            e[0], e[1]
        )));
    }
    Ok(e)
}

/// Unimodular chain from `(1, 0)` to `(-q, p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainCert {
    pub p: BigInt,
    pub q: BigInt,
    pub chain: Vec<Vec2>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainDefect {
    BadTarget,
    BadStart,
    BadEnd,
    NotPrimitive(usize),
    NotUnimodular(usize),
    NotRational(String),
}

impl fmt::Display for ChainDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainDefect::BadTarget => f.write_str("target needs gcd(q, p) = 1 and 0 < q < p"),
            ChainDefect::BadStart => f.write_str("chain does not start at (1, 0)"),
            ChainDefect::BadEnd => f.write_str("chain does not end at (-q, p)"),
            ChainDefect::NotPrimitive(i) => write!(f, "chain vector {i} is not primitive"),
            ChainDefect::NotUnimodular(i) => {
                write!(f, "|det| of chain vectors {i} and {} is not 1", i + 1)
            }
            ChainDefect::NotRational(s) => write!(f, "polygon labeling rejected: {s}"),
        }
    }
}

fn valid_target(q: &BigInt, p: &BigInt) -> bool {
    q.is_positive() && q < p && q.gcd(p).is_one()
}

impl ChainCert {
    /// Endpoints, primitivity and consecutive unimodularity.
    pub fn check(&self) -> std::result::Result<(), ChainDefect> {
        if !valid_target(&self.q, &self.p) {
            return Err(ChainDefect::BadTarget);
        }
        if self.chain.first() != Some(&vec2(1, 0)) {
            return Err(ChainDefect::BadStart);
        }
        if self.chain.last() != Some(&[-&self.q, self.p.clone()]) {
            return Err(ChainDefect::BadEnd);
        }
        if let Some(i) = self.chain.iter().position(|v| !is_primitive(v)) {
            return Err(ChainDefect::NotPrimitive(i));
        }
        if let Some(i) = self
            .chain
            .windows(2)
            .position(|w| !det2(&w[0], &w[1]).abs().is_one())
        {
            return Err(ChainDefect::NotUnimodular(i));
        }
        Ok(())
    }

    /// The polygon whose labeled edges are the chain, closed by one
    /// unlabeled edge.
    pub fn polygon_edges(&self) -> Vec<Option<Vec2>> {
        self.chain
            .iter()
            .cloned()
            .map(Some)
            .chain(std::iter::once(None))
            .collect()
    }
}

/// Builds the chain by repeated [`lem1_step`] towards `(-q, p)`.
pub fn lem2_chain(q: &BigInt, p: &BigInt) -> Result<ChainCert> {
    if !valid_target(q, p) {
        return Err(Error::InvalidLensParameters(format!(
            "chain target needs gcd(q, p) = 1 and 0 < q < p, got q = {q}, p = {p}"
        )));
    }
    let target = [-q, p.clone()];
    let mut chain = vec![vec2(1, 0)];
    let mut cur = vec2(1, 0);
    let mut remaining = p.clone();
    while !det2(&cur, &target).abs().is_one() {
        if remaining.is_zero() {
            return Err(Error::Invariant("chain failed to terminate".into()));
        }
        remaining -= 1;
        cur = lem1_step(&cur, &target)?;
        chain.push(cur.clone());
    }
    chain.push(target);
    Ok(ChainCert {
        p: p.clone(),
        q: q.clone(),
        chain,
    })
}

/// The dimension-3 certificate: the chain together with its acceptance.
pub fn polygon_certificate(p: &BigInt, q: &BigInt) -> Result<(ChainCert, bool)> {
    let cert = lem2_chain(q, p)?;
    let accepted = verify_chain(&cert).is_ok();
    Ok((cert, accepted))
}

/// Chain invariants plus validity of the polygon labeling.
pub fn verify_chain(cert: &ChainCert) -> std::result::Result<(), ChainDefect> {
    cert.check()?;
    let report = validate_rational_polygon(&cert.polygon_edges())
        .map_err(|e| ChainDefect::NotRational(e.to_string()))?;
    if !report.is_valid() {
        return Err(ChainDefect::NotRational(report.to_string()));
    }
    Ok(())
}
