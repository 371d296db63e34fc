//! The quiver on decreasing sequences in `{0..n}` and its box product.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest `n` for which vertices fit in the bitmask representation.
pub const MAX_N: u32 = 30;
/// Largest `n` for which the full quiver is materialized.
pub const QUIVER_BOUND: u32 = 16;
/// Largest `n` for which the box quiver is materialized.
pub const BOX_QUIVER_BOUND: u32 = 7;

pub fn check_n(n: i64) -> Result<u32> {
    if n <= 0 {
        return Err(Error::InvalidN(n));
    }
    if n > MAX_N as i64 {
        return Err(Error::BoundExceeded { what: "vertex encoding", n: n as u32, bound: MAX_N });
    }
    Ok(n as u32)
}

/// A strictly decreasing sequence of integers in `{0..n}`, stored as the
/// bitmask of its elements. The ambient `n` is carried by the context.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Vertex(pub u32);

impl Vertex {
    pub const EMPTY: Vertex = Vertex(0);

    pub fn from_elems(elems: &[u32]) -> Vertex {
        Vertex(elems.iter().fold(0, |m, &e| m | (1 << e)))
    }

    pub fn single(i: u32) -> Vertex {
        Vertex(1 << i)
    }

    /// The two-element vertex `[s+1, s]`.
    pub fn pair(s: u32) -> Vertex {
        Vertex(3 << s)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn contains(self, i: u32) -> bool {
        i < 32 && self.0 >> i & 1 == 1
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Elements in decreasing order.
    pub fn elems(self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.len() as usize);
        let mut m = self.0;
        while m != 0 {
            let top = 31 - m.leading_zeros();
            out.push(top);
            m &= !(1 << top);
        }
        out
    }

    pub fn max(self) -> Option<u32> {
        (self.0 != 0).then(|| 31 - self.0.leading_zeros())
    }

    pub fn min(self) -> Option<u32> {
        (self.0 != 0).then(|| self.0.trailing_zeros())
    }

    pub fn is_subset(self, other: Vertex) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Vertex) -> Vertex {
        Vertex(self.0 | other.0)
    }

    pub fn minus(self, other: Vertex) -> Vertex {
        Vertex(self.0 & !other.0)
    }

    /// Insert the adjacent pair `{s, s+1}` if it is disjoint from `self` and
    /// fits below `n`.
    pub fn add_pair(self, s: u32, n: u32) -> Option<Vertex> {
        if s + 1 > n || self.0 & (3 << s) != 0 {
            return None;
        }
        Some(Vertex(self.0 | 3 << s))
    }

    pub fn fits(self, n: u32) -> bool {
        n >= 31 || self.0 >> (n + 1) == 0
    }

    /// `e(x) = sum of (-1)^{x_k}`.
    pub fn euler(self) -> i32 {
        let even = self.0 & 0x5555_5555;
        even.count_ones() as i32 - (self.0 & !even).count_ones() as i32
    }

    pub fn all(n: u32) -> impl Iterator<Item = Vertex> {
        (0..1u32 << (n + 1)).map(Vertex)
    }

    pub fn parse(s: &str, n: u32) -> Result<Vertex> {
        let v: Vertex = s.parse()?;
        if !v.fits(n) {
            return Err(Error::OutOfRange(format!("{v} has an element larger than n = {n}")));
        }
        Ok(v)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elems().iter().map(|e| e.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Vertex {
    type Err = Error;

    /// Parses `"[2,1,0]"`, `"[]"`; whitespace is ignored. Elements must be
    /// strictly decreasing.
    fn from_str(s: &str) -> Result<Vertex> {
        let err = |reason: &str| Error::Parse { what: "vertex", input: s.to_string(), reason: reason.to_string() };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner =
            compact.strip_prefix('[').and_then(|t| t.strip_suffix(']')).ok_or_else(|| err("expected brackets"))?;
        if inner.is_empty() {
            return Ok(Vertex::EMPTY);
        }
        let mut prev: Option<u32> = None;
        let mut bits = 0u32;
        for tok in inner.split(',') {
            let e: u32 = tok.parse().map_err(|_| err("expected non-negative integers"))?;
            if e > MAX_N {
                return Err(err("element too large"));
            }
            if prev.is_some_and(|p| p <= e) {
                return Err(err("elements must be strictly decreasing"));
            }
            prev = Some(e);
            bits |= 1 << e;
        }
        Ok(Vertex(bits))
    }
}

impl Serialize for Vertex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.elems().serialize(s)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct Arrow {
    pub source: Vertex,
    pub s: u32,
    pub target: Vertex,
}

#[derive(Clone, Debug)]
pub struct Quiver {
    pub n: u32,
    pub vertices: Vec<Vertex>,
    out: Vec<Vec<Arrow>>,
    inc: Vec<Vec<Arrow>>,
}

pub fn build_gamma(n: i64) -> Result<Quiver> {
    let n = check_n(n)?;
    if n > QUIVER_BOUND {
        return Err(Error::BoundExceeded { what: "quiver", n, bound: QUIVER_BOUND });
    }
    let vertices: Vec<Vertex> = Vertex::all(n).collect();
    let mut out = vec![Vec::new(); vertices.len()];
    let mut inc = vec![Vec::new(); vertices.len()];
    for &v in &vertices {
        for s in 0..n {
            if let Some(t) = v.add_pair(s, n) {
                let a = Arrow { source: v, s, target: t };
                out[v.0 as usize].push(a);
                inc[t.0 as usize].push(a);
            }
        }
    }
    Ok(Quiver { n, vertices, out, inc })
}

impl Quiver {
    pub fn arrows_from(&self, v: Vertex) -> &[Arrow] {
        &self.out[v.0 as usize]
    }

    pub fn arrows_into(&self, v: Vertex) -> &[Arrow] {
        &self.inc[v.0 as usize]
    }

    pub fn arrows(&self) -> impl Iterator<Item = &Arrow> {
        self.out.iter().flatten()
    }

    pub fn num_arrows(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    /// Connected components of the underlying undirected graph, each sorted,
    /// listed in order of their smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut comp = vec![usize::MAX; self.vertices.len()];
        let mut out = Vec::new();
        for &start in &self.vertices {
            if comp[start.0 as usize] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start.0 as usize] = id;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                let nbrs = self.arrows_from(v).iter().map(|a| a.target);
                let nbrs = nbrs.chain(self.arrows_into(v).iter().map(|a| a.source));
                for w in nbrs.collect::<Vec<_>>() {
                    if comp[w.0 as usize] == usize::MAX {
                        comp[w.0 as usize] = id;
                        members.push(w);
                        stack.push(w);
                    }
                }
            }
            members.sort();
            out.push(members);
        }
        out
    }
}

/// A vertex of the box quiver: a pair of vertices of the base quiver.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BoxVertex {
    pub x: Vertex,
    pub y: Vertex,
}

impl BoxVertex {
    pub fn new(x: Vertex, y: Vertex) -> Self {
        Self { x, y }
    }

    pub fn all(n: u32) -> impl Iterator<Item = BoxVertex> {
        Vertex::all(n).flat_map(move |x| Vertex::all(n).map(move |y| BoxVertex::new(x, y)))
    }
}

impl fmt::Display for BoxVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl fmt::Debug for BoxVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for BoxVertex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (self.x, self.y).serialize(s)
    }
}

/// The three kinds of box arrows, in the order used for normal forms.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum BoxKind {
    /// Inserts `{s, s+1}` into the first coordinate.
    X,
    /// Inserts `{s, s+1}` into the second coordinate.
    Y,
    /// Inserts `{s, s+1}` into the first and `{s+1, s+2}` into the second.
    D,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoxStep {
    pub kind: BoxKind,
    pub s: u32,
}

impl BoxStep {
    pub fn x(s: u32) -> Self {
        Self { kind: BoxKind::X, s }
    }

    pub fn y(s: u32) -> Self {
        Self { kind: BoxKind::Y, s }
    }

    pub fn d(s: u32) -> Self {
        Self { kind: BoxKind::D, s }
    }

    pub fn apply(self, v: BoxVertex, n: u32) -> Option<BoxVertex> {
        match self.kind {
            BoxKind::X => Some(BoxVertex::new(v.x.add_pair(self.s, n)?, v.y)),
            BoxKind::Y => Some(BoxVertex::new(v.x, v.y.add_pair(self.s, n)?)),
            BoxKind::D => Some(BoxVertex::new(v.x.add_pair(self.s, n)?, v.y.add_pair(self.s + 1, n)?)),
        }
    }

    pub fn cohdeg(self) -> i32 {
        match self.kind {
            BoxKind::D => -1,
            _ => 0,
        }
    }

    pub fn qdeg(self, n: u32) -> i32 {
        let side = |s: u32| n as i32 - 1 - 2 * s as i32;
        match self.kind {
            BoxKind::D => side(self.s) + side(self.s + 1),
            _ => side(self.s),
        }
    }

    pub fn all(n: u32) -> impl Iterator<Item = BoxStep> {
        let sides = (0..n).flat_map(|s| [BoxStep::x(s), BoxStep::y(s)]);
        sides.chain((0..n.saturating_sub(1)).map(BoxStep::d))
    }
}

impl fmt::Display for BoxStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.kind, self.s)
    }
}

impl fmt::Debug for BoxStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for BoxStep {
    type Err = Error;
    fn from_str(s: &str) -> Result<BoxStep> {
        let err =
            || Error::Parse { what: "box step", input: s.to_string(), reason: "expected X<s>, Y<s> or D<s>".into() };
        let mut chars = s.trim().chars();
        let kind = match chars.next() {
            Some('X') => BoxKind::X,
            Some('Y') => BoxKind::Y,
            Some('D') => BoxKind::D,
            _ => return Err(err()),
        };
        let idx = chars.as_str().parse().map_err(|_| err())?;
        Ok(BoxStep { kind, s: idx })
    }
}

impl Serialize for BoxStep {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct BoxArrow {
    pub step: BoxStep,
    pub source: BoxVertex,
    pub target: BoxVertex,
}

#[derive(Clone, Debug)]
pub struct BoxQuiver {
    pub n: u32,
    out: BTreeMap<BoxVertex, Vec<BoxArrow>>,
}

pub fn build_gamma_box(n: i64) -> Result<BoxQuiver> {
    let n = check_n(n)?;
    if n > BOX_QUIVER_BOUND {
        return Err(Error::BoundExceeded { what: "box quiver", n, bound: BOX_QUIVER_BOUND });
    }
    let mut out = BTreeMap::new();
    for v in BoxVertex::all(n) {
        let arrows = BoxStep::all(n)
            .filter_map(|step| step.apply(v, n).map(|target| BoxArrow { step, source: v, target }))
            .collect();
        out.insert(v, arrows);
    }
    Ok(BoxQuiver { n, out })
}

impl BoxQuiver {
    pub fn vertices(&self) -> impl Iterator<Item = &BoxVertex> {
        self.out.keys()
    }

    pub fn arrows_from(&self, v: BoxVertex) -> &[BoxArrow] {
        self.out.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn arrows(&self) -> impl Iterator<Item = &BoxArrow> {
        self.out.values().flatten()
    }

    pub fn num_vertices(&self) -> usize {
        self.out.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Vertex {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(v("[2, 1,0]"), Vertex(0b111));
        assert_eq!(v(" [ ] "), Vertex::EMPTY);
        assert_eq!(Vertex::from_elems(&[3, 0]).to_string(), "[3,0]");
        assert!("[0,1]".parse::<Vertex>().is_err());
        assert!("[1,1]".parse::<Vertex>().is_err());
        assert!("2,1".parse::<Vertex>().is_err());
        assert!(Vertex::parse("[3]", 2).is_err());
    }

    #[test]
    fn euler_values() {
        assert_eq!(Vertex::EMPTY.euler(), 0);
        assert_eq!(v("[1]").euler(), -1);
        assert_eq!(v("[2,0]").euler(), 2);
        assert_eq!(v("[2,1,0]").euler(), 1);
    }

    #[test]
    fn rejects_bad_n() {
        assert_eq!(build_gamma(0).unwrap_err(), Error::InvalidN(0));
        assert!(build_gamma(-3).is_err());
        assert!(build_gamma_box(0).is_err());
    }

    #[test]
    fn arrows_out_of_empty() {
        let q = build_gamma(2).unwrap();
        let targets: Vec<String> = q.arrows_from(Vertex::EMPTY).iter().map(|a| a.target.to_string()).collect();
        assert_eq!(targets, ["[1,0]", "[2,1]"]);
        assert!(q.arrows_from(v("[2,0]")).is_empty());
    }

    #[test]
    fn n1_components() {
        let q = build_gamma(1).unwrap();
        let comps: Vec<Vec<String>> =
            q.components().iter().map(|c| c.iter().map(|x| x.to_string()).collect()).collect();
        assert_eq!(comps, vec![vec!["[]", "[1,0]"], vec!["[0]"], vec!["[1]"]]);
    }

    #[test]
    fn box_diagonal() {
        let b = build_gamma_box(2).unwrap();
        assert_eq!(b.num_vertices(), 64);
        let src = BoxVertex::new(Vertex::EMPTY, Vertex::EMPTY);
        let d: Vec<_> = b.arrows_from(src).iter().filter(|a| a.step.kind == BoxKind::D).collect();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].target, BoxVertex::new(v("[1,0]"), v("[2,1]")));
        for y in Vertex::all(2) {
            let from = BoxVertex::new(v("[2,0]"), y);
            assert!(b.arrows_from(from).iter().all(|a| a.step != BoxStep::d(1)));
        }
    }

    #[test]
    fn step_degrees() {
        assert_eq!(BoxStep::x(0).qdeg(2), 1);
        assert_eq!(BoxStep::d(0).qdeg(2), 0);
        assert_eq!(BoxStep::d(0).cohdeg(), -1);
        assert_eq!("D3".parse::<BoxStep>().unwrap(), BoxStep::d(3));
    }
}
