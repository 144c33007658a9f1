//! Characteristic functions on simplices and polygons.
//!
//! Facets of the `n`-simplex are indexed `F_0, ..., F_n`, with `F_i` the facet
//! opposite vertex `V_i`. Every proper subset of facets of a simplex meets in
//! a nonempty face, so validity reduces to a direct-summand test on facet
//! subsets of bounded size. Vectors are stored with whatever sign they were
//! given; every predicate here is sign-invariant.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{gcd_many, is_part_of_basis, k_subsets, parse_vector, IntMatrix};

pub type IntVector = Vec<BigInt>;

/// Every facet subset that failed the direct-summand test.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidityReport {
    pub failing: Vec<Vec<usize>>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.failing.is_empty()
    }
}

impl fmt::Display for ValidityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return f.write_str("valid");
        }
        write!(f, "invalid; failing facet subsets:")?;
        for s in &self.failing {
            let names: Vec<String> = s.iter().map(|i| format!("F{i}")).collect();
            write!(f, " {{{}}}", names.join(","))?;
        }
        Ok(())
    }
}

fn check_shape(count: usize, len: usize, vectors: &[IntVector]) -> Result<()> {
    if vectors.len() != count {
        return Err(Error::Dimension(format!(
            "expected {count} facet vectors, got {}",
            vectors.len()
        )));
    }
    if let Some(v) = vectors.iter().find(|v| v.len() != len) {
        return Err(Error::Dimension(format!(
            "facet vector of length {} where {len} was expected",
            v.len()
        )));
    }
    Ok(())
}

/// Tests every facet subset of size `1..=max_size`.
fn summand_report(vectors: &[IntVector], max_size: usize) -> Result<ValidityReport> {
    let mut failing = Vec::new();
    for size in 1..=max_size {
        for subset in k_subsets(vectors.len(), size) {
            let chosen: Vec<IntVector> = subset.iter().map(|&i| vectors[i].clone()).collect();
            if !is_part_of_basis(&chosen)? {
                failing.push(subset);
            }
        }
    }
    Ok(ValidityReport { failing })
}

/// Validity of `n + 1` vectors in `Z^{n+1}` as a hyper characteristic function
/// of the `n`-simplex: every facet subset of size at most `n` spans a direct
/// summand of matching rank.
pub fn validate_hyper(n: usize, vectors: &[IntVector]) -> Result<ValidityReport> {
    if n == 0 {
        return Err(Error::Dimension(
            "simplex dimension must be positive".into(),
        ));
    }
    check_shape(n + 1, n + 1, vectors)?;
    summand_report(vectors, n)
}

/// Validity of `d + 1` vectors in `Z^d` as a rational characteristic function
/// of the `d`-simplex. Only faces of positive dimension are constrained, so
/// subsets of size `d` (vertices) are exempt.
pub fn validate_rational_simplex(d: usize, vectors: &[IntVector]) -> Result<ValidityReport> {
    if d < 2 {
        return Err(Error::Dimension(
            "rational simplex dimension must be at least 2".into(),
        ));
    }
    check_shape(d + 1, d, vectors)?;
    summand_report(vectors, d - 1)
}

/// Polygon edges in cyclic order; `None` marks the single unlabeled edge.
/// Labeled edges must be primitive and adjacent labeled edges unimodular.
/// Failing subsets are `[i]` for a non-primitive edge and `[i, j]` for an
/// adjacent pair with `|det| != 1`.
pub fn validate_rational_polygon(edges: &[Option<[BigInt; 2]>]) -> Result<ValidityReport> {
    let k = edges.len();
    if k < 3 {
        return Err(Error::Dimension(format!(
            "a polygon needs at least 3 edges, got {k}"
        )));
    }
    if edges.iter().filter(|e| e.is_none()).count() > 1 {
        return Err(Error::Dimension("at most one edge may be unlabeled".into()));
    }
    let mut failing = Vec::new();
    for (i, e) in edges.iter().enumerate() {
        if let Some(v) = e {
            if !gcd_many(v.iter()).is_one() {
                failing.push(vec![i]);
            }
        }
    }
    for i in 0..k {
        let j = (i + 1) % k;
        if let (Some(a), Some(b)) = (&edges[i], &edges[j]) {
            if !det2(a, b).abs().is_one() {
                let mut pair = vec![i, j];
                pair.sort_unstable();
                failing.push(pair);
            }
        }
    }
    Ok(ValidityReport { failing })
}

pub(crate) fn det2(a: &[BigInt; 2], b: &[BigInt; 2]) -> BigInt {
    &a[0] * &b[1] - &a[1] * &b[0]
}

/// Closed-form test for extending the standard 2-dimensional lens function by
/// a fourth vector `(a, b, c)`:
/// `gcd{a,c} = gcd{b,c} = gcd{bp + q2 c, -(ap + q1 c), b q1 - a q2} = 1`.
/// Assumes `gcd(p, q1) = gcd(p, q2) = 1`.
pub fn rach1_condition(
    a: &BigInt,
    b: &BigInt,
    c: &BigInt,
    q1: &BigInt,
    q2: &BigInt,
    p: &BigInt,
) -> bool {
    gcd_many([a, c]).is_one()
        && gcd_many([b, c]).is_one()
        && gcd_many(&[b * p + q2 * c, -(a * p + q1 * c), b * q1 - a * q2]).is_one()
}

/// A validated hyper characteristic function of the `n`-simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperCharFn {
    vectors: Vec<IntVector>,
}

impl HyperCharFn {
    pub fn new(vectors: Vec<IntVector>) -> Result<Self> {
        let n = vectors.len().saturating_sub(1);
        let report = validate_hyper(n, &vectors)?;
        if !report.is_valid() {
            return Err(Error::InvalidCharFn(report.to_string()));
        }
        Ok(HyperCharFn { vectors })
    }

    /// `xi(F_i) = e_{i+1}`.
    pub fn standard(n: usize) -> Result<Self> {
        let id = IntMatrix::identity(n + 1);
        Self::new(id.columns())
    }

    /// `xi(F_0) = (-q_1, ..., -q_n, p)`, `xi(F_i) = e_i`: the model of
    /// `L(p; q_1, ..., q_n)`.
    pub fn lens(p: &BigInt, q: &[BigInt]) -> Result<Self> {
        let n = q.len();
        if n == 0 {
            return Err(Error::Dimension("lens model needs at least one q".into()));
        }
        let mut first: IntVector = q.iter().map(|x| -x).collect();
        first.push(p.clone());
        let mut vectors = vec![first];
        vectors.extend(IntMatrix::identity(n + 1).columns().into_iter().take(n));
        Self::new(vectors)
    }

    /// Simplex dimension `n`.
    pub fn dim(&self) -> usize {
        self.vectors.len() - 1
    }

    pub fn vectors(&self) -> &[IntVector] {
        &self.vectors
    }

    /// The `(n+1) x (n+1)` matrix with columns `xi_0, ..., xi_n`.
    pub fn matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(&self.vectors).expect("shape checked at construction")
    }
}

/// A validated rational characteristic function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RationalCharFn {
    /// `d + 1` facet vectors in `Z^d` on the `d`-simplex.
    Simplex(Vec<IntVector>),
    /// Cyclic edge labels of a polygon, one edge possibly unlabeled.
    Polygon(Vec<Option<[BigInt; 2]>>),
}

impl RationalCharFn {
    pub fn simplex(vectors: Vec<IntVector>) -> Result<Self> {
        let d = vectors.len().saturating_sub(1);
        let report = validate_rational_simplex(d, &vectors)?;
        if !report.is_valid() {
            return Err(Error::InvalidCharFn(report.to_string()));
        }
        Ok(RationalCharFn::Simplex(vectors))
    }

    pub fn polygon(edges: Vec<Option<[BigInt; 2]>>) -> Result<Self> {
        let report = validate_rational_polygon(&edges)?;
        if !report.is_valid() {
            return Err(Error::InvalidCharFn(report.to_string()));
        }
        Ok(RationalCharFn::Polygon(edges))
    }

    /// The simplex extension of the lens model: `eta(F_0) = (-q, p)`,
    /// `eta(F_i) = e_i`, `eta(F_{n+1}) = (eps, 1)`. Not validated.
    pub fn lens_extension_vectors(p: &BigInt, q: &[BigInt], eps: &[i8]) -> Vec<IntVector> {
        let n = q.len();
        let mut first: IntVector = q.iter().map(|x| -x).collect();
        first.push(p.clone());
        let mut vectors = vec![first];
        for i in 0..n {
            let mut e = vec![BigInt::zero(); n + 1];
            e[i] = BigInt::one();
            vectors.push(e);
        }
        let mut last: IntVector = eps.iter().map(|&e| BigInt::from(e)).collect();
        last.push(BigInt::one());
        vectors.push(last);
        vectors
    }
}

/// A torus automorphism, given by its unimodular integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaTranslation(IntMatrix);

impl DeltaTranslation {
    pub fn new(delta: IntMatrix) -> Result<Self> {
        let d = delta.det()?;
        if !d.abs().is_one() {
            return Err(Error::NotUnimodular(d));
        }
        Ok(DeltaTranslation(delta))
    }

    /// `[[b, 0], [0, 1]]` for a unimodular `b`.
    pub fn block(b: &IntMatrix) -> Result<Self> {
        if !b.is_square() {
            return Err(Error::Dimension("block matrix must be square".into()));
        }
        let n = b.rows();
        let mut m = IntMatrix::identity(n + 1);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = b[(i, j)].clone();
            }
        }
        Self::new(m)
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }
}

/// The delta-translation of `f`: each facet vector replaced by its literal
/// image under `delta`.
pub fn translate_charfun(delta: &DeltaTranslation, f: &HyperCharFn) -> Result<HyperCharFn> {
    if delta.0.rows() != f.dim() + 1 {
        return Err(Error::Dimension(format!(
            "{}x{} translation for vectors in Z^{}",
            delta.0.rows(),
            delta.0.cols(),
            f.dim() + 1
        )));
    }
    let vectors = f
        .vectors
        .iter()
        .map(|v| delta.0.mul_vec(v))
        .collect::<Result<Vec<_>>>()?;
    HyperCharFn::new(vectors)
}

/// Contents of a characteristic-function text file: line 1 is the dimension,
/// each following line one facet vector `a,b,c` in facet order. A line `-`
/// marks an unlabeled polygon edge. Blank lines and `#` comments are skipped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharFnFile {
    pub dimension: usize,
    pub vectors: Vec<Option<IntVector>>,
}

impl CharFnFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let first = lines
            .next()
            .ok_or_else(|| Error::Parse("empty characteristic-function file".into()))?;
        let dimension = first
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad dimension line {first:?}")))?;
        let vectors = lines
            .map(|l| {
                if l == "-" {
                    Ok(None)
                } else {
                    parse_vector(l).map(Some)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CharFnFile { dimension, vectors })
    }

    /// All vectors, failing if any edge is unlabeled.
    pub fn labeled(&self) -> Result<Vec<IntVector>> {
        self.vectors
            .iter()
            .cloned()
            .map(|v| v.ok_or_else(|| Error::Parse("unlabeled facet outside a polygon".into())))
            .collect()
    }
}
