//! JSON form of twisted complexes.
//!
//! ```json
//! {"algebra": "r", "n": 2,
//!  "summands": [{"vertex": [], "qshift": 0, "cohshift": 0}, ...],
//!  "delta": [[row, col, [monomial, ...]], ...]}
//! ```
//!
//! Vertices are element arrays such as `[2,1,0]`; box vertices are pairs of
//! them. Monomials are `[src, tgt]` over `r`, a pair of those over `rr`, and
//! `{"src": [x, y], "path": ["X0", "D1"]}` over `box`.

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{basis_mon_r, AlgebraTag, BoxAlgebra, BoxMon, MonR, MonRR};
use crate::complexes::{Matrix, ProjComplex, RComplex, RRComplex, Summand};
use crate::error::{Error, Result};
use crate::quiver::{check_n, BoxStep, BoxVertex, Vertex};
use crate::rings::F2Comb;

pub fn complex_to_json<V: Serialize, M: Serialize + Ord + Clone>(n: u32, c: &ProjComplex<V, M>) -> Value {
    let delta: Vec<Value> =
        c.delta.iter().map(|(&(row, col), e)| json!([row, col, e.iter().collect::<Vec<_>>()])).collect();
    json!({
        "algebra": c.tag,
        "n": n,
        "summands": c.summands,
        "delta": delta,
    })
}

pub enum AnyComplex {
    R(RComplex),
    RR(RRComplex),
    Box(Box<BoxAlgebra>, ProjComplex<BoxVertex, BoxMon>),
}

pub struct ParsedComplex {
    pub n: u32,
    pub complex: AnyComplex,
}

fn bad(reason: impl Into<String>) -> Error {
    Error::Parse { what: "complex", input: String::new(), reason: reason.into() }
}

fn vertex(v: &Value, n: u32) -> Result<Vertex> {
    if let Some(s) = v.as_str() {
        return Vertex::parse(s, n);
    }
    let elems = v.as_array().ok_or_else(|| bad(format!("vertex {v} is not an array")))?;
    let elems: Vec<u32> = elems
        .iter()
        .map(|e| e.as_u64().and_then(|e| u32::try_from(e).ok()).ok_or_else(|| bad(format!("bad element {e}"))))
        .collect::<Result<_>>()?;
    if elems.windows(2).any(|w| w[0] <= w[1]) {
        return Err(bad(format!("vertex {v} is not strictly decreasing")));
    }
    if elems.iter().any(|&e| e > n) {
        return Err(bad(format!("vertex {v} has an element above {n}")));
    }
    Ok(Vertex::from_elems(&elems))
}

fn pair<'a>(v: &'a Value, what: &str) -> Result<(&'a Value, &'a Value)> {
    match v.as_array().map(Vec::as_slice) {
        Some([a, b]) => Ok((a, b)),
        _ => Err(bad(format!("{what} {v} is not a pair"))),
    }
}

fn box_vertex(v: &Value, n: u32) -> Result<BoxVertex> {
    let (x, y) = pair(v, "box vertex")?;
    Ok(BoxVertex::new(vertex(x, n)?, vertex(y, n)?))
}

fn mon_r(v: &Value, n: u32) -> Result<MonR> {
    let (a, b) = pair(v, "monomial")?;
    let (src, tgt) = (vertex(a, n)?, vertex(b, n)?);
    basis_mon_r(n, src, tgt).ok_or_else(|| bad(format!("no monomial from {src} to {tgt}")))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(format!("missing field '{key}'")))
}

fn int(v: &Value, key: &str) -> Result<i32> {
    field(v, key)?
        .as_i64()
        .and_then(|x| i32::try_from(x).ok())
        .ok_or_else(|| bad(format!("field '{key}' is not an integer")))
}

fn parse_parts<V, M: Ord + Clone>(
    doc: &Value,
    tag: AlgebraTag,
    vert: impl Fn(&Value) -> Result<V>,
    mon: impl Fn(&Value) -> Result<F2Comb<M>>,
) -> Result<ProjComplex<V, M>> {
    let summands = field(doc, "summands")?
        .as_array()
        .ok_or_else(|| bad("'summands' is not an array"))?
        .iter()
        .map(|s| Ok(Summand::new(vert(field(s, "vertex")?)?, int(s, "qshift")?, int(s, "cohshift")?)))
        .collect::<Result<Vec<_>>>()?;
    let mut delta = Matrix::new();
    for entry in field(doc, "delta")?.as_array().ok_or_else(|| bad("'delta' is not an array"))? {
        let parts = entry.as_array().map(Vec::as_slice);
        let Some([row, col, mons]) = parts else {
            return Err(bad(format!("delta entry {entry} is not [row, col, monomials]")));
        };
        let idx = |x: &Value| -> Result<usize> {
            let i = x.as_u64().ok_or_else(|| bad(format!("bad index {x}")))? as usize;
            if i >= summands.len() {
                return Err(bad(format!("index {i} out of range")));
            }
            Ok(i)
        };
        let (row, col) = (idx(row)?, idx(col)?);
        let mut e = F2Comb::zero();
        for m in mons.as_array().ok_or_else(|| bad("monomial list is not an array"))? {
            e += mon(m)?;
        }
        let slot: &mut F2Comb<M> = delta.entry((row, col)).or_default();
        *slot += e;
    }
    delta.retain(|_, e| !e.is_zero());
    Ok(ProjComplex { tag, summands, delta })
}

pub fn parse_complex(text: &str) -> Result<ParsedComplex> {
    let doc: Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    let n = check_n(field(&doc, "n")?.as_i64().ok_or_else(|| bad("'n' is not an integer"))?)?;
    let tag = field(&doc, "algebra")?.as_str().ok_or_else(|| bad("'algebra' is not a string"))?;
    let complex = match tag {
        "r" => {
            AnyComplex::R(parse_parts(&doc, AlgebraTag::R, |v| vertex(v, n), |m| Ok(F2Comb::from_term(mon_r(m, n)?)))?)
        }
        "rr" => AnyComplex::RR(parse_parts(
            &doc,
            AlgebraTag::RR,
            |v| box_vertex(v, n),
            |m| {
                let (l, r) = pair(m, "monomial")?;
                Ok(F2Comb::from_term(MonRR::new(mon_r(l, n)?, mon_r(r, n)?)))
            },
        )?),
        "box" => {
            let alg = BoxAlgebra::lazy(n)?;
            let c = parse_parts(
                &doc,
                AlgebraTag::Box,
                |v| box_vertex(v, n),
                |m| {
                    let src = box_vertex(field(m, "src")?, n)?;
                    let path: Vec<BoxStep> = field(m, "path")?
                        .as_array()
                        .ok_or_else(|| bad("'path' is not an array"))?
                        .iter()
                        .map(|s| s.as_str().ok_or_else(|| bad(format!("bad step {s}")))?.parse())
                        .collect::<Result<_>>()?;
                    alg.from_path(src, &path)
                },
            )?;
            AnyComplex::Box(Box::new(alg), c)
        }
        other => return Err(bad(format!("unknown algebra '{other}'"))),
    };
    Ok(ParsedComplex { n, complex })
}
