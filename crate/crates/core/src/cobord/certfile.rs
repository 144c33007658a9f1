//! JSON certificate files.
//!
//! Reduction tree: `{"dimension", "p", "q", "eps", "children"}` at the root,
//! `{"p", "q", "eps", "children"}` below it and `{"p": 1}` for spheres.
//! Chain: `{"p", "q", "chain": [[q1, p1], ...]}`. Integers are unbounded.

use num_bigint::BigInt;
use serde_json::{Map, Number, Value};

use super::chain::{ChainCert, Vec2};
use super::search::EpsilonVector;
use super::tree::{ReductionNode, ReductionTree};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Tree(ReductionTree),
    Chain(ChainCert),
}

impl Certificate {
    pub fn to_json(&self) -> String {
        let v = match self {
            Certificate::Tree(t) => tree_value(t),
            Certificate::Chain(c) => chain_value(c),
        };
        let mut s = serde_json::to_string_pretty(&v).expect("plain JSON values");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let obj = as_object(&v, "certificate")?;
        if obj.contains_key("chain") {
            parse_chain(obj).map(Certificate::Chain)
        } else {
            parse_tree(obj).map(Certificate::Tree)
        }
    }
}

fn int(x: &BigInt) -> Value {
    Value::Number(x.to_string().parse::<Number>().expect("decimal integer"))
}

fn ints(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(int).collect())
}

fn node_value(node: &ReductionNode, dimension: Option<usize>) -> Value {
    let mut m = Map::new();
    if let Some(d) = dimension {
        m.insert("dimension".into(), Value::from(d));
    }
    m.insert("p".into(), int(&node.p));
    if !node.is_sphere_leaf() {
        m.insert("q".into(), ints(&node.q));
        if let Some(eps) = &node.eps {
            let e = eps.as_slice().iter().map(|&x| Value::from(x)).collect();
            m.insert("eps".into(), Value::Array(e));
        }
        let kids = node.children.iter().map(|c| node_value(c, None)).collect();
        m.insert("children".into(), Value::Array(kids));
    }
    Value::Object(m)
}

fn tree_value(t: &ReductionTree) -> Value {
    node_value(&t.root, Some(t.dimension))
}

fn chain_value(c: &ChainCert) -> Value {
    let mut m = Map::new();
    m.insert("p".into(), int(&c.p));
    m.insert("q".into(), int(&c.q));
    let chain = c.chain.iter().map(|v| ints(v)).collect();
    m.insert("chain".into(), Value::Array(chain));
    Value::Object(m)
}

fn malformed(what: impl Into<String>) -> Error {
    Error::Parse(what.into())
}

fn as_object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| malformed(format!("{what} must be an object")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| malformed(format!("{what} must be an array")))
}

fn as_int(v: &Value, what: &str) -> Result<BigInt> {
    let Value::Number(n) = v else {
        return Err(malformed(format!("{what} must be an integer")));
    };
    n.to_string()
        .parse::<BigInt>()
        .map_err(|_| malformed(format!("{what} must be an integer, found {n}")))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| malformed(format!("missing field \"{key}\"")))
}

fn only_keys(obj: &Map<String, Value>, allowed: &[&str]) -> Result<()> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(malformed(format!("unexpected field \"{k}\""))),
        None => Ok(()),
    }
}

fn parse_chain(obj: &Map<String, Value>) -> Result<ChainCert> {
    only_keys(obj, &["p", "q", "chain"])?;
    let p = as_int(field(obj, "p")?, "p")?;
    let q = as_int(field(obj, "q")?, "q")?;
    let chain = as_array(field(obj, "chain")?, "chain")?
        .iter()
        .map(|v| {
            let pair = as_array(v, "chain entry")?;
            if pair.len() != 2 {
                return Err(malformed("chain entries must have two integers"));
            }
            Ok::<Vec2, Error>([
                as_int(&pair[0], "chain entry")?,
                as_int(&pair[1], "chain entry")?,
            ])
        })
        .collect::<Result<_>>()?;
    Ok(ChainCert { p, q, chain })
}

fn parse_tree(obj: &Map<String, Value>) -> Result<ReductionTree> {
    let d = as_int(field(obj, "dimension")?, "dimension")?;
    let dimension =
        usize::try_from(&d).map_err(|_| malformed(format!("dimension {d} out of range")))?;
    let root = parse_node(obj, true)?;
    Ok(ReductionTree { dimension, root })
}

fn parse_node(obj: &Map<String, Value>, is_root: bool) -> Result<ReductionNode> {
    let allowed: &[&str] = if is_root {
        &["dimension", "p", "q", "eps", "children"]
    } else {
        &["p", "q", "eps", "children"]
    };
    only_keys(obj, allowed)?;
    let p = as_int(field(obj, "p")?, "p")?;
    let q = match obj.get("q") {
        Some(v) => as_array(v, "q")?
            .iter()
            .map(|x| as_int(x, "q entry"))
            .collect::<Result<_>>()?,
        None => Vec::new(),
    };
    let eps = match obj.get("eps") {
        Some(v) => {
            let e = as_array(v, "eps")?
                .iter()
                .map(|x| {
                    x.as_i64()
                        .and_then(|x| i8::try_from(x).ok())
                        .ok_or_else(|| malformed("eps entries must be 0 or -1"))
                })
                .collect::<Result<Vec<i8>>>()?;
            Some(EpsilonVector::new(e).map_err(|e| malformed(e.to_string()))?)
        }
        None => None,
    };
    let children = match obj.get("children") {
        Some(v) => as_array(v, "children")?
            .iter()
            .map(|c| parse_node(as_object(c, "child")?, false))
            .collect::<Result<_>>()?,
        None => Vec::new(),
    };
    Ok(ReductionNode {
        p,
        q,
        eps,
        children,
    })
}
