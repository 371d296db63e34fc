//! The DG algebra on the box quiver: side generators in each coordinate and
//! diagonal generators of cohomological degree -1, all commuting except an
//! x-side pair `s` with a y-side pair `s+1`. The differential of a diagonal
//! generator is the sum of those two noncommuting composites.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::rn::MonR;
use super::rr::MonRR;
use super::{AlgebraTag, DgAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{self, BitVec, Echelon};
use crate::path::{swap_relations, BlockRef, HomBlock, PathEngine, PathQuiver};
use crate::quiver::{check_n, BoxKind, BoxStep, BoxVertex, Vertex};
use crate::rings::F2Comb;

/// Default bound on `n` for materializing the box algebra.
pub const BOX_ALGEBRA_BOUND: u32 = 4;

#[derive(Clone, Copy, Debug)]
pub struct BoxPaths {
    pub n: u32,
}

/// Whether two box steps are left unrelated by the commutation relations.
pub fn steps_anticommute_only_up_to_d(a: BoxStep, b: BoxStep) -> bool {
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    a.kind == BoxKind::X && b.kind == BoxKind::Y && b.s == a.s + 1
}

impl PathQuiver for BoxPaths {
    type V = BoxVertex;
    type L = BoxStep;

    fn labels(&self) -> Vec<BoxStep> {
        let mut l: Vec<BoxStep> = BoxStep::all(self.n).collect();
        l.sort();
        l
    }

    fn step(&self, v: BoxVertex, l: BoxStep) -> Option<BoxVertex> {
        l.apply(v, self.n)
    }

    fn may_reach(&self, from: BoxVertex, to: BoxVertex) -> bool {
        from.x.is_subset(to.x) && from.y.is_subset(to.y)
    }

    fn cohdeg(&self, l: BoxStep) -> i32 {
        l.cohdeg()
    }

    fn relations_at(&self, v: BoxVertex) -> Vec<Vec<[BoxStep; 2]>> {
        swap_relations(self, v, steps_anticommute_only_up_to_d)
    }
}

/// A normal-form monomial: the least path in its class.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoxMon {
    pub src: BoxVertex,
    pub tgt: BoxVertex,
    pub path: Vec<BoxStep>,
}

impl BoxMon {
    pub fn idempotent(v: BoxVertex) -> Self {
        Self { src: v, tgt: v, path: Vec::new() }
    }

    pub fn cohdeg(&self) -> i32 {
        self.path.iter().map(|s| s.cohdeg()).sum()
    }

    pub fn qdeg(&self, n: u32) -> i32 {
        self.path.iter().map(|s| s.qdeg(n)).sum()
    }

    /// Intermediate vertices, starting at the source.
    pub fn vertices(&self, n: u32) -> Vec<BoxVertex> {
        let mut out = vec![self.src];
        let mut v = self.src;
        for step in &self.path {
            v = step.apply(v, n).expect("valid path");
            out.push(v);
        }
        out
    }
}

impl fmt::Display for BoxMon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            return write!(f, "e{}", self.src);
        }
        let steps: Vec<String> = self.path.iter().map(|s| s.to_string()).collect();
        write!(f, "{}:{}", self.src, steps.join("."))
    }
}

impl fmt::Debug for BoxMon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for BoxMon {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            src: (Vertex, Vertex),
            path: &'a [BoxStep],
        }
        Repr { src: (self.src.x, self.src.y), path: &self.path }.serialize(s)
    }
}

/// Cohomology of one Hom-space block.
#[derive(Clone, Debug, Serialize)]
pub struct CohomologyEntry {
    pub src: BoxVertex,
    pub tgt: BoxVertex,
    pub cohdeg: i32,
    pub qdeg: i32,
    pub dim: usize,
    pub dim_ker: usize,
    pub rank_in: usize,
    pub dim_h: usize,
}

pub struct BoxAlgebra {
    pub n: u32,
    pub engine: PathEngine<BoxPaths>,
}

impl BoxAlgebra {
    pub fn build(n: u32, bound: u32) -> Result<Self> {
        check_n(n as i64)?;
        if n > bound {
            return Err(Error::BoundExceeded { what: "box algebra", n, bound });
        }
        let vertices: Vec<BoxVertex> = BoxVertex::all(n).collect();
        Ok(Self { n, engine: PathEngine::build(BoxPaths { n }, &vertices) })
    }

    /// An algebra whose Hom-spaces are computed only when first touched.
    pub fn lazy(n: u32) -> Result<Self> {
        check_n(n as i64)?;
        let bound = crate::quiver::BOX_QUIVER_BOUND;
        if n > bound {
            return Err(Error::BoundExceeded { what: "box algebra", n, bound });
        }
        Ok(Self { n, engine: PathEngine::new(BoxPaths { n }) })
    }

    /// The class of an arbitrary valid path.
    pub fn from_path(&self, src: BoxVertex, path: &[BoxStep]) -> Result<F2Comb<BoxMon>> {
        let tgt = self
            .engine
            .endpoint(src, path)
            .ok_or_else(|| Error::Invalid(format!("path {path:?} is not valid from {src}")))?;
        Ok(self.engine.reduce(src, path).into_iter().map(|p| BoxMon { src, tgt, path: p }).collect())
    }

    pub fn generator(&self, src: BoxVertex, step: BoxStep) -> Option<BoxMon> {
        let tgt = step.apply(src, self.n)?;
        Some(BoxMon { src, tgt, path: vec![step] })
    }

    /// Leibniz expansion of the differential along a path.
    pub fn diff_path(&self, src: BoxVertex, path: &[BoxStep]) -> F2Comb<BoxMon> {
        let mut out = F2Comb::zero();
        for (i, step) in path.iter().enumerate() {
            if step.kind != BoxKind::D {
                continue;
            }
            let (xs, ys) = (BoxStep::x(step.s), BoxStep::y(step.s + 1));
            for pair in [[xs, ys], [ys, xs]] {
                let mut p = path[..i].to_vec();
                p.extend_from_slice(&pair);
                p.extend_from_slice(&path[i + 1..]);
                out += self.from_path(src, &p).expect("expanded diagonal is a valid path");
            }
        }
        out
    }

    pub fn block(&self, src: BoxVertex, tgt: BoxVertex, cohdeg: i32) -> Option<BlockRef<BoxStep>> {
        self.engine.block(src, tgt, cohdeg)
    }

    pub fn all_monomials(&self) -> Vec<BoxMon> {
        let mut out: Vec<BoxMon> = self
            .engine
            .built_spaces()
            .into_iter()
            .flat_map(|((src, tgt), space)| {
                space
                    .iter()
                    .flat_map(|b| b.basis_paths().map(|p| BoxMon { src, tgt, path: p.to_vec() }))
                    .collect::<Vec<_>>()
            })
            .collect();
        out.sort();
        out
    }

    fn coordinates(&self, block: &HomBlock<BoxStep>, elem: &F2Comb<BoxMon>) -> BitVec {
        BitVec::from_ones(
            block.dim(),
            elem.iter().map(|m| block.basis_index(&m.path).expect("normal form lies in the block")),
        )
    }

    /// Matrix columns of `d` from the block in `cohdeg` to `cohdeg + 1`.
    fn diff_columns(&self, src: BoxVertex, tgt: BoxVertex, cohdeg: i32) -> Vec<BitVec> {
        let (Some(from), Some(to)) = (self.block(src, tgt, cohdeg), self.block(src, tgt, cohdeg + 1)) else {
            return Vec::new();
        };
        from.basis_paths().map(|p| self.coordinates(&to, &self.diff_path(src, p))).collect()
    }

    pub fn cohomology(&self) -> Vec<CohomologyEntry> {
        let spaces = self.engine.built_spaces();
        let mut out: Vec<CohomologyEntry> = spaces
            .par_iter()
            .flat_map_iter(|&((src, tgt), ref space)| {
                space.iter().map(move |b| {
                    let c = b.cohdeg;
                    let out_rank = self
                        .block(src, tgt, c + 1)
                        .map_or(0, |to| linalg::rank(to.dim(), &self.diff_columns(src, tgt, c)));
                    let rank_in = linalg::rank(b.dim(), &self.diff_columns(src, tgt, c - 1));
                    let qdeg = b.basis_paths().next().map_or(0, |p| p.iter().map(|s| s.qdeg(self.n)).sum());
                    CohomologyEntry {
                        src,
                        tgt,
                        cohdeg: c,
                        qdeg,
                        dim: b.dim(),
                        dim_ker: b.dim() - out_rank,
                        rank_in,
                        dim_h: b.dim() - out_rank - rank_in,
                    }
                })
            })
            .collect();
        out.sort_by_key(|e| (e.src, e.tgt, e.cohdeg));
        out
    }

    /// Cycles in the block whose classes form a basis of its cohomology.
    pub fn cohomology_representatives(&self, src: BoxVertex, tgt: BoxVertex, cohdeg: i32) -> Vec<F2Comb<BoxMon>> {
        let Some(block) = self.block(src, tgt, cohdeg) else { return Vec::new() };
        let dim = block.dim();
        let mut image = Echelon::from_rows(dim, &self.diff_columns(src, tgt, cohdeg - 1));
        let outgoing = self.diff_columns(src, tgt, cohdeg);
        let kernel: Vec<BitVec> = if self.block(src, tgt, cohdeg + 1).is_none() {
            (0..dim).map(|i| BitVec::from_ones(dim, [i])).collect()
        } else {
            let len = self.block(src, tgt, cohdeg + 1).map_or(0, |b| b.dim());
            linalg::kernel(len, &outgoing)
        };
        let mut reps = Vec::new();
        for k in kernel {
            if image.insert(k.clone()) {
                reps.push(k.ones().map(|i| BoxMon { src, tgt, path: block.basis_path(i).to_vec() }).collect());
            }
        }
        reps
    }

    /// The algebra map onto the tensor square: diagonal generators go to 0.
    pub fn h_map(&self, m: &BoxMon) -> F2Comb<MonRR> {
        if m.path.iter().any(|s| s.kind == BoxKind::D) {
            return F2Comb::zero();
        }
        let left = MonR { src: m.src.x, tgt: m.tgt.x };
        let right = MonR { src: m.src.y, tgt: m.tgt.y };
        F2Comb::from_term(MonRR::new(left, right))
    }

    pub fn h_map_elem(&self, a: &F2Comb<BoxMon>) -> F2Comb<MonRR> {
        let mut out = F2Comb::zero();
        for m in a.iter() {
            out += self.h_map(m);
        }
        out
    }

    /// A preimage under `h_map`: the x-side steps followed by the y-side
    /// steps, reduced to normal form.
    pub fn section(&self, a: &MonRR) -> F2Comb<BoxMon> {
        let src = a.source();
        let path: Vec<BoxStep> =
            a.left.steps().into_iter().map(BoxStep::x).chain(a.right.steps().into_iter().map(BoxStep::y)).collect();
        self.from_path(src, &path).expect("section path is valid")
    }
}

impl DgAlgebra for BoxAlgebra {
    type V = BoxVertex;
    type M = BoxMon;

    fn tag(&self) -> AlgebraTag {
        AlgebraTag::Box
    }

    fn n(&self) -> u32 {
        self.n
    }

    fn mul(&self, a: &BoxMon, b: &BoxMon) -> F2Comb<BoxMon> {
        if a.tgt != b.src {
            return F2Comb::zero();
        }
        let path: Vec<BoxStep> = a.path.iter().chain(&b.path).copied().collect();
        self.from_path(a.src, &path).expect("composable monomials give a valid path")
    }

    fn diff(&self, a: &BoxMon) -> F2Comb<BoxMon> {
        self.diff_path(a.src, &a.path)
    }

    fn source(&self, a: &BoxMon) -> BoxVertex {
        a.src
    }

    fn target(&self, a: &BoxMon) -> BoxVertex {
        a.tgt
    }

    fn cohdeg(&self, a: &BoxMon) -> i32 {
        a.cohdeg()
    }

    fn qdeg(&self, a: &BoxMon) -> i32 {
        a.qdeg(self.n)
    }

    fn idempotent(&self, v: BoxVertex) -> BoxMon {
        BoxMon::idempotent(v)
    }

    fn hom_basis(&self, src: BoxVertex, tgt: BoxVertex, cohdeg: i32) -> Vec<BoxMon> {
        self.block(src, tgt, cohdeg)
            .map(|b| b.basis_paths().map(|p| BoxMon { src, tgt, path: p.to_vec() }).collect())
            .unwrap_or_default()
    }
}
