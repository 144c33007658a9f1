use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::search::{check_family, eps_search_general, EpsilonVector};
use crate::charfun::{validate_rational_simplex, HyperCharFn, IntVector, RationalCharFn};
use crate::error::{Error, Result};
use crate::exactlin::{modulo, IntMatrix};
use crate::lensid::{canonical_form, class_key, identify, reduce_params, LensClass};

/// A node of a reduction tree. Spheres have `p = 1`, empty `q`, no `eps`
/// and no children.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionNode {
    pub p: BigInt,
    pub q: Vec<BigInt>,
    pub eps: Option<EpsilonVector>,
    pub children: Vec<ReductionNode>,
}

impl ReductionNode {
    pub fn sphere() -> Self {
        ReductionNode {
            p: BigInt::one(),
            q: Vec::new(),
            eps: None,
            children: Vec::new(),
        }
    }

    pub fn is_sphere_leaf(&self) -> bool {
        self.p.is_one() && self.eps.is_none() && self.children.is_empty()
    }

    /// `q_1 + ... + q_n + p`.
    pub fn sum(&self) -> BigInt {
        self.q.iter().sum::<BigInt>() + &self.p
    }

    /// The class this node claims to be.
    pub fn claimed_class(&self, n: usize) -> LensClass {
        if self.p.is_one() {
            LensClass::Sphere { n }
        } else {
            LensClass::Lens {
                p: self.p.clone(),
                r: self.q.clone(),
            }
        }
    }

    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(Self::node_count).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.children.iter().map(Self::depth).max().unwrap_or(0)
    }
}

/// Certificate that `L(p; q)` bounds, one node per reduction step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTree {
    pub dimension: usize,
    pub root: ReductionNode,
}

/// For each vertex `V_i` of the `(n+1)`-simplex, the space cut out around it:
/// the hyper function formed by the `n + 1` facet vectors other than
/// `eta(F_i)`.
pub fn vertex_cut_boundaries(eta: &[IntVector]) -> Result<Vec<(usize, LensClass)>> {
    let d = eta.len().saturating_sub(1);
    let report = validate_rational_simplex(d, eta)?;
    if !report.is_valid() {
        return Err(Error::InvalidCharFn(report.to_string()));
    }
    (0..eta.len())
        .map(|i| {
            let xi: Vec<IntVector> = eta
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, v)| v.clone())
                .collect();
            Ok((i, identify(&HyperCharFn::new(xi)?)?))
        })
        .collect()
}

/// Reduces into `[0, p)` and sorts; `p = 1` sends everything to 0.
pub fn normalize_params(p: &BigInt, q: &[BigInt]) -> Vec<BigInt> {
    reduce_params(p, q)
}

/// Builds a reduction tree for `L(p; q)`. `Ok(None)` when the epsilon search
/// fails at some node.
///
/// The root keeps the given (normalized) parameters. A child is first tried
/// with the parameters produced by identification; if its subtree dead-ends,
/// the other parameter vectors of the same class (unit multiples and
/// coordinate signs mod `p`) are tried in ascending order.
pub fn build_certificate(p: &BigInt, q: &[BigInt]) -> Result<Option<ReductionTree>> {
    if q.is_empty() {
        return Err(Error::Dimension("need at least one lens parameter".into()));
    }
    if !p.is_positive() {
        return Err(Error::InvalidLensParameters(format!(
            "p = {p} is not positive"
        )));
    }
    let q = normalize_params(p, q);
    if !p.is_one() {
        check_family(p, &q)?;
    }
    let n = q.len();
    let mut builder = Builder {
        n,
        memo: HashMap::new(),
    };
    Ok(builder
        .node(p, &q)?
        .map(|root| ReductionTree { dimension: n, root }))
}

/// Every sorted parameter vector of the class of `L(p; q)`, `q` first.
fn class_representatives(p: &BigInt, q: &[BigInt]) -> Vec<Vec<BigInt>> {
    let mut seen = BTreeSet::new();
    let mut u = BigInt::one();
    while &u < p {
        if u.gcd(p).is_one() {
            let base: Vec<BigInt> = q.iter().map(|x| modulo(&(x * &u), p)).collect();
            for signs in 0u64..1 << q.len() {
                let v: Vec<BigInt> = base
                    .iter()
                    .enumerate()
                    .map(|(i, x)| {
                        if signs >> i & 1 == 1 {
                            p - x
                        } else {
                            x.clone()
                        }
                    })
                    .collect();
                seen.insert(reduce_params(p, &v));
            }
        }
        u += 1;
    }
    let first = q.to_vec();
    seen.remove(&first);
    std::iter::once(first).chain(seen).collect()
}

struct Builder {
    n: usize,
    /// `(p, canonical form) -> subtree`, for children only.
    memo: HashMap<(BigInt, Vec<BigInt>), Option<ReductionNode>>,
}

impl Builder {
    fn child(&mut self, p: &BigInt, q: &[BigInt]) -> Result<Option<ReductionNode>> {
        let key = (p.clone(), canonical_form(p, q)?);
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }
        let mut found = None;
        for rep in class_representatives(p, q) {
            if let Some(node) = self.node(p, &rep)? {
                found = Some(node);
                break;
            }
        }
        self.memo.insert(key, found.clone());
        Ok(found)
    }

    fn node(&mut self, p: &BigInt, q: &[BigInt]) -> Result<Option<ReductionNode>> {
        let n = self.n;
        if p.is_one() {
            return Ok(Some(ReductionNode::sphere()));
        }
        let Some(eps) = eps_search_general(q, p)? else {
            return Ok(None);
        };
        let eta = RationalCharFn::lens_extension_vectors(p, q, eps.as_slice());
        let mut parts = vertex_cut_boundaries(&eta)?;
        let (_, own) = parts.pop().expect("n + 2 vertices");
        let me = LensClass::Lens {
            p: p.clone(),
            r: q.to_vec(),
        };
        if class_key(&own)? != class_key(&me)? {
            return Err(Error::Invariant(format!(
                "vertex V_{} gives {own}, not {me}",
                n + 1
            )));
        }
        let mut children = Vec::with_capacity(parts.len());
        for (i, class) in parts {
            let child = match class {
                LensClass::Sphere { .. } => ReductionNode::sphere(),
                LensClass::Lens { p: cp, r } => {
                    if &cp >= p {
                        return Err(Error::Invariant(format!(
                            "child at V_{i} of L({p}; ..) has order {cp}"
                        )));
                    }
                    let cq = normalize_params(&cp, &r);
                    match self.child(&cp, &cq)? {
                        Some(node) => node,
                        None => return Ok(None),
                    }
                }
                LensClass::ProductS1CPn { .. } => {
                    return Err(Error::Invariant(format!(
                        "child at V_{i} is not a lens space"
                    )));
                }
            };
            children.push(child);
        }
        Ok(Some(ReductionNode {
            p: p.clone(),
            q: q.to_vec(),
            eps: Some(eps),
            children,
        }))
    }
}

/// Outcome of [`verify_certificate`]; `failure` holds the path of the first
/// rejected node (`root`, `root/2`, `root/2/0`, ...) and the reason.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub failure: Option<(String, String)>,
    pub nodes_checked: usize,
}

impl VerificationReport {
    pub fn accepted(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "accepted ({} nodes)", self.nodes_checked),
            Some((path, why)) => write!(f, "rejected at {path}: {why}"),
        }
    }
}

/// Rederives every node from its own `(p, q, eps)` and compares.
pub fn verify_certificate(t: &ReductionTree) -> VerificationReport {
    let mut count = 0;
    let failure = if t.dimension == 0 {
        Some((
            "root".to_string(),
            "dimension must be at least 1".to_string(),
        ))
    } else {
        verify_node(&t.root, t.dimension, "root", &mut count).err()
    };
    VerificationReport {
        failure,
        nodes_checked: count,
    }
}

type Rejection = (String, String);

fn verify_node(
    node: &ReductionNode,
    n: usize,
    path: &str,
    count: &mut usize,
) -> std::result::Result<(), Rejection> {
    *count += 1;
    let reject = |why: String| Err((path.to_string(), why));
    if node.eps.is_none() && node.children.is_empty() {
        if node.p.is_one() {
            return Ok(());
        }
        return reject(format!("leaf with p = {} is not a sphere", node.p));
    }
    if node.p.is_one() {
        return reject("sphere node carries a reduction".into());
    }
    if node.q.len() != n {
        return reject(format!("expected {n} parameters, found {}", node.q.len()));
    }
    if let Err(e) = check_family(&node.p, &node.q) {
        return reject(e.to_string());
    }
    let Some(eps) = &node.eps else {
        return reject("lens node without epsilon".into());
    };
    if eps.len() != n {
        return reject(format!("epsilon has {} entries, expected {n}", eps.len()));
    }
    let eta = RationalCharFn::lens_extension_vectors(&node.p, &node.q, eps.as_slice());
    let parts = match vertex_cut_boundaries(&eta) {
        Ok(parts) => parts,
        Err(e) => return reject(format!("extension by {eps}: {e}")),
    };
    let key = |c: &LensClass| class_key(c).map_err(|e| (path.to_string(), e.to_string()));
    let own = &parts[n + 1].1;
    if key(own)? != key(&node.claimed_class(n))? {
        return reject(format!("self component is {own}"));
    }
    if node.children.len() != n + 1 {
        return reject(format!(
            "expected {} children, found {}",
            n + 1,
            node.children.len()
        ));
    }
    for (i, child) in node.children.iter().enumerate() {
        let child_path = format!("{path}/{i}");
        let reject_child = |why: String| Err((child_path.clone(), why));
        if child.p >= node.p {
            return reject_child(format!(
                "order {} does not decrease from {}",
                child.p, node.p
            ));
        }
        // independent of the Smith form route inside identify
        let order = cut_determinant(&eta, i).abs();
        let expected = &parts[i].1;
        if expected.order().as_ref() != Some(&order) {
            return reject_child(format!("identified {expected} but |det| = {order}"));
        }
        let claimed = child.claimed_class(n);
        let claimed_key = match class_key(&claimed) {
            Ok(k) => k,
            Err(e) => return reject_child(e.to_string()),
        };
        if claimed_key != key(expected)? {
            return reject_child(format!("claims {claimed}, vertex cut gives {expected}"));
        }
        verify_node(child, n, &child_path, count)?;
    }
    Ok(())
}

fn cut_determinant(eta: &[IntVector], skip: usize) -> BigInt {
    let cols: Vec<IntVector> = eta
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != skip)
        .map(|(_, v)| v.clone())
        .collect();
    IntMatrix::from_columns(&cols)
        .and_then(|m| m.det())
        .expect("square by construction")
}

/// Closed-form child orders `|eps_i p + q_i|` for `i = 1..n`.
pub fn closed_form_orders(p: &BigInt, q: &[BigInt], eps: &EpsilonVector) -> Vec<BigInt> {
    q.iter()
        .zip(eps.as_slice())
        .map(|(qi, &e)| (BigInt::from(e) * p + qi).abs())
        .collect()
}
