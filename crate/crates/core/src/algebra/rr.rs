//! The tensor square of the base algebra.

use std::fmt;

use serde::{Serialize, Serializer};

use super::rn::{basis_mon_r, mul_mon_r, MonR};
use super::{AlgebraTag, DgAlgebra};
use crate::quiver::BoxVertex;
use crate::rings::F2Comb;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonRR {
    pub left: MonR,
    pub right: MonR,
}

impl MonRR {
    pub fn new(left: MonR, right: MonR) -> Self {
        Self { left, right }
    }

    pub fn source(self) -> BoxVertex {
        BoxVertex::new(self.left.src, self.right.src)
    }

    pub fn target(self) -> BoxVertex {
        BoxVertex::new(self.left.tgt, self.right.tgt)
    }

    pub fn qdeg(self, n: u32) -> i32 {
        self.left.qdeg(n) + self.right.qdeg(n)
    }
}

impl fmt::Display for MonRR {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (x) {}", self.left, self.right)
    }
}

impl fmt::Debug for MonRR {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for MonRR {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (self.left, self.right).serialize(s)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct RRAlgebra {
    pub n: u32,
}

impl RRAlgebra {
    pub fn new(n: u32) -> Self {
        Self { n }
    }
}

impl DgAlgebra for RRAlgebra {
    type V = BoxVertex;
    type M = MonRR;

    fn tag(&self) -> AlgebraTag {
        AlgebraTag::RR
    }

    fn n(&self) -> u32 {
        self.n
    }

    fn mul(&self, a: &MonRR, b: &MonRR) -> F2Comb<MonRR> {
        let l = mul_mon_r(a.left, b.left);
        let r = mul_mon_r(a.right, b.right);
        l.zip(r).map(|(l, r)| MonRR::new(l, r)).into_iter().collect()
    }

    fn diff(&self, _: &MonRR) -> F2Comb<MonRR> {
        F2Comb::zero()
    }

    fn source(&self, a: &MonRR) -> BoxVertex {
        a.source()
    }

    fn target(&self, a: &MonRR) -> BoxVertex {
        a.target()
    }

    fn cohdeg(&self, _: &MonRR) -> i32 {
        0
    }

    fn qdeg(&self, a: &MonRR) -> i32 {
        a.qdeg(self.n)
    }

    fn idempotent(&self, v: BoxVertex) -> MonRR {
        MonRR::new(MonR::idempotent(v.x), MonR::idempotent(v.y))
    }

    fn hom_basis(&self, src: BoxVertex, tgt: BoxVertex, cohdeg: i32) -> Vec<MonRR> {
        if cohdeg != 0 {
            return Vec::new();
        }
        let l = basis_mon_r(self.n, src.x, tgt.x);
        let r = basis_mon_r(self.n, src.y, tgt.y);
        l.zip(r).map(|(l, r)| MonRR::new(l, r)).into_iter().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Vertex;

    #[test]
    fn componentwise_product() {
        let a = RRAlgebra::new(2);
        let g = MonR::generator(Vertex::EMPTY, 0, 2).unwrap();
        let e = MonR::idempotent(Vertex::EMPTY);
        let h = MonR::generator(Vertex::EMPTY, 1, 2).unwrap();
        let x = MonRR::new(g, e);
        let y = MonRR::new(MonR::idempotent(g.tgt), h);
        let p = a.mul(&x, &y);
        assert_eq!(p, F2Comb::from_term(MonRR::new(g, h)));
        assert_eq!(a.qdeg(&MonRR::new(g, h)), 0);
        assert!(a.mul(&y, &x).is_zero());
    }
}
