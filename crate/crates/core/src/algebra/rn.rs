//! The graded algebra spanned by paths in the base quiver, where disjoint
//! pair insertions commute. Each `e(x) R e(w)` has dimension at most one.

use std::fmt;

use serde::{Serialize, Serializer};

use super::{AlgebraTag, DgAlgebra};
use crate::error::{Error, Result};
use crate::path::{swap_relations, PathEngine, PathQuiver};
use crate::quiver::Vertex;
use crate::rings::F2Comb;

/// Default bound on `n` for the path-enumeration oracle.
pub const ORACLE_BOUND: u32 = 5;

/// The basis monomial of `e(src) R e(tgt)`; the idempotent when equal.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonR {
    pub src: Vertex,
    pub tgt: Vertex,
}

pub type AlgElemR = F2Comb<MonR>;

/// Splits `w \ x` into its forced adjacent pairs, lowest first. `None` when
/// `x` is not contained in `w` or some maximal run has odd length.
pub fn pair_decomposition(x: Vertex, w: Vertex) -> Option<Vec<u32>> {
    if !x.is_subset(w) {
        return None;
    }
    let mut rest = w.minus(x).bits();
    let mut pairs = Vec::new();
    while rest != 0 {
        let s = rest.trailing_zeros();
        if rest >> (s + 1) & 1 == 0 {
            return None;
        }
        pairs.push(s);
        rest &= !(3 << s);
    }
    Some(pairs)
}

fn pair_degree(n: u32, s: u32) -> i32 {
    n as i32 - 1 - 2 * s as i32
}

pub fn basis_mon_r(n: u32, x: Vertex, w: Vertex) -> Option<MonR> {
    if !w.fits(n) || !x.fits(n) {
        return None;
    }
    pair_decomposition(x, w).map(|_| MonR { src: x, tgt: w })
}

impl MonR {
    pub fn idempotent(v: Vertex) -> Self {
        MonR { src: v, tgt: v }
    }

    pub fn qdeg(self, n: u32) -> i32 {
        let pairs = pair_decomposition(self.src, self.tgt).expect("basis monomial");
        pairs.into_iter().map(|s| pair_degree(n, s)).sum()
    }

    /// The generator inserting the pair `{s, s+1}` at `x`.
    pub fn generator(x: Vertex, s: u32, n: u32) -> Option<Self> {
        x.add_pair(s, n).map(|w| MonR { src: x, tgt: w })
    }

    pub fn is_idempotent(self) -> bool {
        self.src == self.tgt
    }

    /// A factorization into generators, inserting lower pairs first.
    pub fn steps(self) -> Vec<u32> {
        pair_decomposition(self.src, self.tgt).expect("basis monomial")
    }
}

impl fmt::Display for MonR {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.src == self.tgt {
            write!(f, "e({})", self.src)
        } else {
            write!(f, "r({}->{})", self.src, self.tgt)
        }
    }
}

impl fmt::Debug for MonR {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for MonR {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (self.src, self.tgt).serialize(s)
    }
}

pub fn mul_mon_r(a: MonR, b: MonR) -> Option<MonR> {
    (a.tgt == b.src).then_some(MonR { src: a.src, tgt: b.tgt })
}

pub fn mult_r(a: &AlgElemR, b: &AlgElemR) -> AlgElemR {
    let mut out = F2Comb::zero();
    for &x in a.iter() {
        for &y in b.iter() {
            if let Some(p) = mul_mon_r(x, y) {
                out.toggle(p);
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug)]
pub struct RAlgebra {
    pub n: u32,
}

impl RAlgebra {
    pub fn new(n: u32) -> Self {
        Self { n }
    }
}

impl DgAlgebra for RAlgebra {
    type V = Vertex;
    type M = MonR;

    fn tag(&self) -> AlgebraTag {
        AlgebraTag::R
    }

    fn n(&self) -> u32 {
        self.n
    }

    fn mul(&self, a: &MonR, b: &MonR) -> AlgElemR {
        mul_mon_r(*a, *b).into_iter().collect()
    }

    fn diff(&self, _: &MonR) -> AlgElemR {
        F2Comb::zero()
    }

    fn source(&self, a: &MonR) -> Vertex {
        a.src
    }

    fn target(&self, a: &MonR) -> Vertex {
        a.tgt
    }

    fn cohdeg(&self, _: &MonR) -> i32 {
        0
    }

    fn qdeg(&self, a: &MonR) -> i32 {
        a.qdeg(self.n)
    }

    fn idempotent(&self, v: Vertex) -> MonR {
        MonR::idempotent(v)
    }

    fn hom_basis(&self, src: Vertex, tgt: Vertex, cohdeg: i32) -> Vec<MonR> {
        if cohdeg != 0 {
            return Vec::new();
        }
        basis_mon_r(self.n, src, tgt).into_iter().collect()
    }
}

/// The base quiver presented for path enumeration.
#[derive(Clone, Copy, Debug)]
pub struct GammaPaths {
    pub n: u32,
}

impl PathQuiver for GammaPaths {
    type V = Vertex;
    type L = u32;

    fn labels(&self) -> Vec<u32> {
        (0..self.n).collect()
    }

    fn step(&self, v: Vertex, s: u32) -> Option<Vertex> {
        v.add_pair(s, self.n)
    }

    fn may_reach(&self, from: Vertex, to: Vertex) -> bool {
        from.is_subset(to)
    }

    fn cohdeg(&self, _: u32) -> i32 {
        0
    }

    fn relations_at(&self, v: Vertex) -> Vec<Vec<[u32; 2]>> {
        swap_relations(self, v, |_, _| false)
    }
}

/// The algebra computed independently by enumerating paths and reducing the
/// commutation relations.
pub struct ROracle {
    pub engine: PathEngine<GammaPaths>,
}

impl ROracle {
    pub fn build(n: u32, bound: u32) -> Result<Self> {
        if n > bound {
            return Err(Error::BoundExceeded { what: "path oracle", n, bound });
        }
        let vertices: Vec<Vertex> = Vertex::all(n).collect();
        Ok(Self { engine: PathEngine::build(GammaPaths { n }, &vertices) })
    }

    pub fn dim(&self, x: Vertex, w: Vertex) -> usize {
        self.engine.dim(x, w, 0)
    }

    /// The product of the classes of two paths, as normal-form paths.
    pub fn product(&self, x: Vertex, a: &[u32], b: &[u32]) -> Vec<Vec<u32>> {
        let path: Vec<u32> = a.iter().chain(b).copied().collect();
        self.engine.reduce(x, &path)
    }
}

pub fn oracle_dim_r(n: u32, x: Vertex, w: Vertex, bound: u32) -> Result<usize> {
    Ok(ROracle::build(n, bound)?.dim(x, w))
}
