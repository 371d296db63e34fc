//! The algebra on the base quiver, its tensor square, and the DG algebra on
//! the box quiver, behind a common interface.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use serde::Serialize;

use crate::rings::F2Comb;

pub mod boxalg;
pub mod rn;
pub mod rr;

pub use boxalg::{BoxAlgebra, BoxMon, BOX_ALGEBRA_BOUND};
pub use rn::{basis_mon_r, mult_r, oracle_dim_r, MonR, RAlgebra, ROracle};
pub use rr::{MonRR, RRAlgebra};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraTag {
    R,
    RR,
    Box,
}

impl AlgebraTag {
    pub fn name(self) -> &'static str {
        match self {
            AlgebraTag::R => "r",
            AlgebraTag::RR => "rr",
            AlgebraTag::Box => "box",
        }
    }
}

/// A graded algebra over F2 given by a basis of monomials, each living in a
/// single Hom-space between idempotents.
pub trait DgAlgebra: Sync {
    type V: Copy + Ord + Hash + Debug + Display + Serialize + Send + Sync;
    type M: Clone + Ord + Hash + Debug + Display + Send + Sync;

    fn tag(&self) -> AlgebraTag;
    fn n(&self) -> u32;
    /// Product of two basis monomials; zero unless the target of `a` is the
    /// source of `b`.
    fn mul(&self, a: &Self::M, b: &Self::M) -> F2Comb<Self::M>;
    fn diff(&self, a: &Self::M) -> F2Comb<Self::M>;
    fn source(&self, a: &Self::M) -> Self::V;
    fn target(&self, a: &Self::M) -> Self::V;
    fn cohdeg(&self, a: &Self::M) -> i32;
    fn qdeg(&self, a: &Self::M) -> i32;
    fn idempotent(&self, v: Self::V) -> Self::M;
    /// Basis of `e(src) A e(tgt)` in the given cohomological degree.
    fn hom_basis(&self, src: Self::V, tgt: Self::V, cohdeg: i32) -> Vec<Self::M>;

    fn mul_elem(&self, a: &F2Comb<Self::M>, b: &F2Comb<Self::M>) -> F2Comb<Self::M> {
        let mut out = F2Comb::zero();
        for x in a.iter() {
            for y in b.iter() {
                out += self.mul(x, y);
            }
        }
        out
    }

    fn diff_elem(&self, a: &F2Comb<Self::M>) -> F2Comb<Self::M> {
        let mut out = F2Comb::zero();
        for x in a.iter() {
            out += self.diff(x);
        }
        out
    }
}
