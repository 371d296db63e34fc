//! Twisted complexes of shifted projectives `P(v){a}[b]` over the algebras.
//!
//! A map `P(v) -> P(w)` is right multiplication by an element of
//! `e(v) A e(w)`. Matrices are keyed by `(row, col) = (target, source)`, and
//! the product `f * g` means "apply `f`, then `g`". The generator of
//! `P(v){a}[b]` sits in cohomological degree `-b` and q-degree `-a`, so a
//! differential entry from summand `i` to summand `j` has cohomological
//! degree `1 - b_i + b_j` and q-degree `a_j - a_i`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::algebra::{AlgebraTag, BoxAlgebra, BoxMon, DgAlgebra, MonR, MonRR, RRAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{self, BitVec};
use crate::quiver::{BoxVertex, Vertex};
use crate::rings::{F2Comb, FreeModule, LaurentZ};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct Summand<V> {
    pub vertex: V,
    pub qshift: i32,
    pub cohshift: i32,
}

impl<V> Summand<V> {
    pub fn new(vertex: V, qshift: i32, cohshift: i32) -> Self {
        Self { vertex, qshift, cohshift }
    }
}

pub type Matrix<M> = BTreeMap<(usize, usize), F2Comb<M>>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProjComplex<V, M: Ord> {
    pub tag: AlgebraTag,
    pub summands: Vec<Summand<V>>,
    pub delta: Matrix<M>,
}

pub type RComplex = ProjComplex<Vertex, MonR>;
pub type RRComplex = ProjComplex<BoxVertex, MonRR>;
pub type BoxComplex = ProjComplex<BoxVertex, BoxMon>;

impl<V: Copy + Ord, M: Clone + Ord> ProjComplex<V, M> {
    pub fn empty(tag: AlgebraTag) -> Self {
        Self { tag, summands: Vec::new(), delta: BTreeMap::new() }
    }

    pub fn projective(tag: AlgebraTag, v: V, qshift: i32, cohshift: i32) -> Self {
        Self { tag, summands: vec![Summand::new(v, qshift, cohshift)], delta: BTreeMap::new() }
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn is_zero_differential(&self) -> bool {
        self.delta.values().all(F2Comb::is_zero)
    }

    pub fn shift(&self, qshift: i32, cohshift: i32) -> Self {
        let mut c = self.clone();
        for s in &mut c.summands {
            s.qshift += qshift;
            s.cohshift += cohshift;
        }
        c
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let off = self.len();
        let mut c = self.clone();
        c.summands.extend(other.summands.iter().copied());
        for (&(r, col), e) in &other.delta {
            c.delta.insert((r + off, col + off), e.clone());
        }
        c
    }

    /// `sum (-1)^b q^a [v]` over the summands.
    pub fn k0_class(&self) -> FreeModule<V, i32> {
        let mut k = FreeModule::zero();
        for s in &self.summands {
            let sign = if s.cohshift.rem_euclid(2) == 0 { 1 } else { -1 };
            k.add_term(s.vertex, &LaurentZ::monomial(s.qshift, sign));
        }
        k
    }

    /// Drops zero entries from the differential.
    pub fn prune(&mut self) {
        self.delta.retain(|_, e| !e.is_zero());
    }

    /// The complex with summands reordered by `perm` (new index `i` holds
    /// old summand `perm[i]`).
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut inv = vec![0; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            inv[old] = new;
        }
        Self {
            tag: self.tag,
            summands: perm.iter().map(|&i| self.summands[i]).collect(),
            delta: self.delta.iter().map(|(&(r, c), e)| ((inv[r], inv[c]), e.clone())).collect(),
        }
    }
}

/// Adds `b` into `a`.
pub fn mat_add<M: Clone + Ord>(a: &mut Matrix<M>, b: &Matrix<M>) {
    for (k, e) in b {
        let entry = a.entry(*k).or_default();
        entry.add_assign_ref(e);
        if entry.is_zero() {
            a.remove(k);
        }
    }
}

/// `f` followed by `g`.
pub fn mat_mul<A: DgAlgebra>(alg: &A, f: &Matrix<A::M>, g: &Matrix<A::M>) -> Matrix<A::M> {
    let mut by_row = HashMap::<usize, Vec<(usize, &F2Comb<A::M>)>>::new();
    for (&(k, j), e) in g {
        by_row.entry(j).or_default().push((k, e));
    }
    let mut out: Matrix<A::M> = BTreeMap::new();
    for (&(j, i), fe) in f {
        let Some(gs) = by_row.get(&j) else { continue };
        for &(k, ge) in gs {
            let p = alg.mul_elem(fe, ge);
            if !p.is_zero() {
                let entry = out.entry((k, i)).or_default();
                *entry += p;
                if entry.is_zero() {
                    out.remove(&(k, i));
                }
            }
        }
    }
    out
}

pub fn mat_diff<A: DgAlgebra>(alg: &A, f: &Matrix<A::M>) -> Matrix<A::M> {
    f.iter().map(|(k, e)| (*k, alg.diff_elem(e))).filter(|(_, e)| !e.is_zero()).collect()
}

/// Why a complex or map fails validation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub row: usize,
    pub col: usize,
    pub reason: String,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "entry ({}, {}): {}", self.row, self.col, self.reason)
    }
}

/// Checks that every monomial of `entries` between summands of `src` and
/// `tgt` has the degree of a map of bidegree `(cohdeg, qdeg)`.
pub fn check_entry_degrees<A: DgAlgebra>(
    alg: &A,
    src: &[Summand<A::V>],
    tgt: &[Summand<A::V>],
    entries: &Matrix<A::M>,
    cohdeg: i32,
    qdeg: i32,
) -> std::result::Result<(), Witness> {
    for (&(j, i), e) in entries {
        let w = |reason: String| Witness { row: j, col: i, reason };
        let (Some(si), Some(sj)) = (src.get(i), tgt.get(j)) else {
            return Err(w("index out of range".into()));
        };
        for m in e.iter() {
            if alg.source(m) != si.vertex || alg.target(m) != sj.vertex {
                return Err(w(format!("{m} does not lie in e({})Ae({})", si.vertex, sj.vertex)));
            }
            let c = cohdeg - si.cohshift + sj.cohshift;
            let q = qdeg + sj.qshift - si.qshift;
            if alg.cohdeg(m) != c || alg.qdeg(m) != q {
                return Err(w(format!("{m} has bidegree ({}, {}), expected ({c}, {q})", alg.cohdeg(m), alg.qdeg(m))));
            }
        }
    }
    Ok(())
}

/// `d(delta) + delta * delta`.
pub fn mc_residual<A: DgAlgebra>(alg: &A, c: &ProjComplex<A::V, A::M>) -> Matrix<A::M> {
    let mut r = mat_diff(alg, &c.delta);
    mat_add(&mut r, &mat_mul(alg, &c.delta, &c.delta));
    r
}

/// Degree contract and Maurer-Cartan equation.
pub fn verify_mc<A: DgAlgebra>(alg: &A, c: &ProjComplex<A::V, A::M>) -> std::result::Result<(), Witness> {
    check_entry_degrees(alg, &c.summands, &c.summands, &c.delta, 1, 0)?;
    if let Some((&(j, i), e)) = mc_residual(alg, c).iter().next() {
        return Err(Witness { row: j, col: i, reason: format!("d(delta) + delta^2 = {e:?}") });
    }
    Ok(())
}

/// A map of bidegree `(cohdeg, qdeg)` between twisted complexes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChainMap<V, M: Ord> {
    pub source: ProjComplex<V, M>,
    pub target: ProjComplex<V, M>,
    pub cohdeg: i32,
    pub qdeg: i32,
    pub entries: Matrix<M>,
}

/// `d(f) + delta_source * f + f * delta_target`; zero for a closed map.
pub fn closedness_defect<A: DgAlgebra>(alg: &A, f: &ChainMap<A::V, A::M>) -> Matrix<A::M> {
    let mut r = mat_diff(alg, &f.entries);
    mat_add(&mut r, &mat_mul(alg, &f.source.delta, &f.entries));
    mat_add(&mut r, &mat_mul(alg, &f.entries, &f.target.delta));
    r
}

pub fn verify_chain_map<A: DgAlgebra>(alg: &A, f: &ChainMap<A::V, A::M>) -> std::result::Result<(), Witness> {
    check_entry_degrees(alg, &f.source.summands, &f.target.summands, &f.entries, f.cohdeg, f.qdeg)?;
    if let Some((&(j, i), e)) = closedness_defect(alg, f).iter().next() {
        return Err(Witness { row: j, col: i, reason: format!("d(f) = {e:?}") });
    }
    Ok(())
}

/// `C(f) = N + M[1]` for `f: M -> N` closed of degree zero.
pub fn cone<A: DgAlgebra>(alg: &A, f: &ChainMap<A::V, A::M>) -> Result<ProjComplex<A::V, A::M>> {
    if f.cohdeg != 0 || f.qdeg != 0 {
        return Err(Error::Invalid(format!("cone needs a degree-(0,0) map, got ({}, {})", f.cohdeg, f.qdeg)));
    }
    verify_chain_map(alg, f).map_err(|w| Error::NotClosed(w.to_string()))?;
    let off = f.target.len();
    let mut c = f.target.direct_sum(&f.source.shift(0, 1));
    for (&(j, i), e) in &f.entries {
        c.delta.insert((j, i + off), e.clone());
    }
    verify_mc(alg, &c).map_err(|w| Error::NotMaurerCartan(w.to_string()))?;
    Ok(c)
}

/// Tensor product over F2 of two complexes over the base algebra.
pub fn tensor_f2(m: &RComplex, n: &RComplex) -> RRComplex {
    let idx = |i: usize, l: usize| i * n.len() + l;
    let mut c = RRComplex::empty(AlgebraTag::RR);
    for a in &m.summands {
        for b in &n.summands {
            c.summands.push(Summand::new(
                BoxVertex::new(a.vertex, b.vertex),
                a.qshift + b.qshift,
                a.cohshift + b.cohshift,
            ));
        }
    }
    for (&(j, i), e) in &m.delta {
        for (l, b) in n.summands.iter().enumerate() {
            let ent = e.iter().map(|&r| MonRR::new(r, MonR::idempotent(b.vertex))).collect();
            c.delta.insert((idx(j, l), idx(i, l)), ent);
        }
    }
    for (&(k, l), e) in &n.delta {
        for (i, a) in m.summands.iter().enumerate() {
            let ent = e.iter().map(|&r| MonRR::new(MonR::idempotent(a.vertex), r)).collect();
            c.delta.insert((idx(i, k), idx(i, l)), ent);
        }
    }
    c.prune();
    c
}

/// Lifts a complex over the tensor square to the box algebra: entries go
/// through the section of `h_map`, then corrections are added one
/// cohomological gap at a time until the Maurer-Cartan equation holds.
pub fn lift_to_box(alg: &BoxAlgebra, c: &RRComplex) -> Result<BoxComplex> {
    verify_mc(&RRAlgebra::new(alg.n), c).map_err(|w| Error::NotMaurerCartan(w.to_string()))?;
    let mut out = BoxComplex { tag: AlgebraTag::Box, summands: c.summands.clone(), delta: BTreeMap::new() };
    for (&k, e) in &c.delta {
        let mut lifted = F2Comb::zero();
        for m in e.iter() {
            lifted += alg.section(m);
        }
        out.delta.insert(k, lifted);
    }
    out.prune();
    let max_gap = {
        let b: Vec<i32> = c.summands.iter().map(|s| s.cohshift).collect();
        b.iter().max().zip(b.iter().min()).map_or(0, |(hi, lo)| hi - lo)
    };
    for gap in 2..=max_gap.max(1) {
        let residual = mc_residual(alg, &out);
        for (&(k, i), r) in &residual {
            let g = out.summands[i].cohshift - out.summands[k].cohshift;
            if g < gap {
                return Err(Error::Unliftable(format!("residual at ({k}, {i}) with gap {g} survives: {r:?}")));
            }
            if g > gap {
                continue;
            }
            let (vi, vk) = (out.summands[i].vertex, out.summands[k].vertex);
            let h = solve_boundary(alg, vi, vk, 1 - gap, r)
                .ok_or_else(|| Error::Unliftable(format!("no element h with d(h) = {r:?} at ({k}, {i})")))?;
            let entry = out.delta.entry((k, i)).or_default();
            *entry += h;
        }
        out.prune();
    }
    if let Some((&(k, i), r)) = mc_residual(alg, &out).iter().next() {
        return Err(Error::Unliftable(format!("residual at ({k}, {i}) remains: {r:?}")));
    }
    if let Some((k, i)) = section_defect(alg, c, &out) {
        return Err(Error::Unliftable(format!("lifted entry at ({k}, {i}) does not map back to the original")));
    }
    Ok(out)
}

/// First position where `h_map` of the lifted entry differs from the
/// original entry.
pub fn section_defect(alg: &BoxAlgebra, original: &RRComplex, lifted: &BoxComplex) -> Option<(usize, usize)> {
    let keys: std::collections::BTreeSet<_> = original.delta.keys().chain(lifted.delta.keys()).copied().collect();
    keys.into_iter().find(|k| {
        let image = lifted.delta.get(k).map(|e| alg.h_map_elem(e)).unwrap_or_default();
        let orig = original.delta.get(k).cloned().unwrap_or_default();
        image != orig
    })
}

/// Some `h` in `e(src) A e(tgt)` of the given degree with `d(h) = target`.
pub fn solve_boundary(
    alg: &BoxAlgebra,
    src: BoxVertex,
    tgt: BoxVertex,
    cohdeg: i32,
    target: &F2Comb<BoxMon>,
) -> Option<F2Comb<BoxMon>> {
    let to = alg.block(src, tgt, cohdeg + 1)?;
    let basis = alg.hom_basis(src, tgt, cohdeg);
    let coords = |e: &F2Comb<BoxMon>| -> Option<BitVec> {
        let idx: Option<Vec<usize>> = e.iter().map(|m| to.basis_index(&m.path)).collect();
        Some(BitVec::from_ones(to.dim(), idx?))
    };
    let cols: Vec<BitVec> = basis.iter().map(|b| coords(&alg.diff(b))).collect::<Option<_>>()?;
    let sol = linalg::solve(to.dim(), &cols, &coords(target)?)?;
    Some(sol.into_iter().map(|i| basis[i].clone()).collect())
}

/// Searches for a reordering of `b`'s summands making it equal to `a`.
/// Returns `perm` with `b.permuted(&perm) == a`.
pub fn find_isomorphism<V: Copy + Ord, M: Clone + Ord>(
    a: &ProjComplex<V, M>,
    b: &ProjComplex<V, M>,
) -> Option<Vec<usize>> {
    if a.len() != b.len() || a.tag != b.tag {
        return None;
    }
    let mut sa = a.summands.clone();
    let mut sb = b.summands.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return None;
    }
    let mut perm = vec![usize::MAX; a.len()];
    let mut used = vec![false; b.len()];
    fn search<V: Copy + Ord, M: Clone + Ord>(
        a: &ProjComplex<V, M>,
        b: &ProjComplex<V, M>,
        pos: usize,
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if pos == a.len() {
            return true;
        }
        for cand in 0..b.len() {
            if used[cand] || b.summands[cand] != a.summands[pos] {
                continue;
            }
            perm[pos] = cand;
            // entries between already placed summands must agree
            let consistent = (0..=pos).all(|q| {
                let pairs = [(pos, q), (q, pos)];
                pairs.iter().all(|&(r, c)| a.delta.get(&(r, c)) == b.delta.get(&(perm[r], perm[c])))
            });
            if consistent {
                used[cand] = true;
                if search(a, b, pos + 1, perm, used) {
                    return true;
                }
                used[cand] = false;
            }
        }
        false
    }
    search(a, b, 0, &mut perm, &mut used).then_some(perm)
}

/// Convenience constructor for a base-algebra complex from its parts.
pub fn r_complex(summands: Vec<Summand<Vertex>>, delta: Matrix<MonR>) -> RComplex {
    RComplex { tag: AlgebraTag::R, summands, delta }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{RAlgebra, BOX_ALGEBRA_BOUND};

    fn v(s: &str) -> Vertex {
        s.parse().unwrap()
    }

    fn gen(x: &str, s: u32, n: u32) -> F2Comb<MonR> {
        F2Comb::from_term(MonR::generator(v(x), s, n).unwrap())
    }

    /// `P([]){-1}[0] -> P([1,0])[-1]` through the generator at 0, n = 2.
    fn two_term() -> RComplex {
        let mut delta = Matrix::new();
        delta.insert((1, 0), gen("[]", 0, 2));
        r_complex(vec![Summand::new(Vertex::EMPTY, -1, 0), Summand::new(v("[1,0]"), 0, -1)], delta)
    }

    #[test]
    fn projective_classes() {
        let p = RComplex::projective(AlgebraTag::R, v("[1]"), 2, 1);
        assert_eq!(p.k0_class().to_string(), "-q^2*[1]");
        assert!(verify_mc(&RAlgebra::new(2), &p).is_ok());
        assert!(RComplex::empty(AlgebraTag::R).k0_class().is_zero());
    }

    #[test]
    fn mc_accepts_two_term_and_rejects_bad_entry() {
        let alg = RAlgebra::new(2);
        let c = two_term();
        assert!(verify_mc(&alg, &c).is_ok());
        assert_eq!(c.k0_class().to_string(), "q^-1*[] - [1,0]");
        let mut bad = c.clone();
        bad.delta.insert((1, 0), gen("[]", 1, 2));
        let w = verify_mc(&alg, &bad).unwrap_err();
        assert_eq!((w.row, w.col), (1, 0));
    }

    #[test]
    fn cone_of_identity_and_zero() {
        let alg = RAlgebra::new(2);
        let p = RComplex::projective(AlgebraTag::R, v("[1,0]"), 0, 0);
        let mut id = Matrix::new();
        id.insert((0, 0), F2Comb::from_term(MonR::idempotent(v("[1,0]"))));
        let f = ChainMap { source: p.clone(), target: p.clone(), cohdeg: 0, qdeg: 0, entries: id };
        let c = cone(&alg, &f).unwrap();
        assert!(c.k0_class().is_zero());
        let zero = ChainMap {
            source: p.clone(),
            target: RComplex::empty(AlgebraTag::R),
            cohdeg: 0,
            qdeg: 0,
            entries: Matrix::new(),
        };
        assert_eq!(cone(&alg, &zero).unwrap(), p.shift(0, 1));
    }

    #[test]
    fn cone_of_generator() {
        let alg = RAlgebra::new(2);
        let m = RComplex::projective(AlgebraTag::R, Vertex::EMPTY, -1, 0);
        let n = RComplex::projective(AlgebraTag::R, v("[1,0]"), 0, 0);
        let mut e = Matrix::new();
        e.insert((0, 0), gen("[]", 0, 2));
        let f = ChainMap { source: m.clone(), target: n.clone(), cohdeg: 0, qdeg: 0, entries: e };
        let c = cone(&alg, &f).unwrap();
        let mut expect = n.k0_class();
        expect += &m.k0_class().scale(&LaurentZ::constant(-1));
        assert_eq!(c.k0_class(), expect);
        let bad = ChainMap { cohdeg: 0, qdeg: 0, source: n.clone(), target: m.clone(), entries: f.entries.clone() };
        assert!(cone(&alg, &bad).is_err());
    }

    #[test]
    fn tensor_and_lift_need_a_diagonal_correction() {
        // n = 2: complexes with an x-side step at 0 and a y-side step at 1
        let mut d1 = Matrix::new();
        d1.insert((1, 0), gen("[]", 0, 2));
        let a = r_complex(vec![Summand::new(Vertex::EMPTY, -1, 0), Summand::new(v("[1,0]"), 0, -1)], d1);
        let mut d2 = Matrix::new();
        d2.insert((1, 0), gen("[]", 1, 2));
        let b = r_complex(vec![Summand::new(Vertex::EMPTY, 1, 0), Summand::new(v("[2,1]"), 0, -1)], d2);
        let t = tensor_f2(&a, &b);
        assert!(verify_mc(&RRAlgebra::new(2), &t).is_ok());
        let mut k = FreeModule::zero();
        for (x, cx) in a.k0_class().iter() {
            for (y, cy) in b.k0_class().iter() {
                k.add_term(BoxVertex::new(*x, *y), &(cx * cy));
            }
        }
        assert_eq!(t.k0_class(), k);
        let boxalg = BoxAlgebra::build(2, BOX_ALGEBRA_BOUND).unwrap();
        let lifted = lift_to_box(&boxalg, &t).unwrap();
        assert!(verify_mc(&boxalg, &lifted).is_ok());
        // the corner-to-corner entry is the diagonal generator
        let corner = &lifted.delta[&(3, 0)];
        assert_eq!(corner.iter().map(|m| m.to_string()).collect::<Vec<_>>(), ["([],[]):D0"]);
        for (key, e) in &t.delta {
            assert_eq!(&boxalg.h_map_elem(&lifted.delta[key]), e);
        }
    }

    #[test]
    fn permutation_isomorphism() {
        let c = two_term();
        let p = c.permuted(&[1, 0]);
        let perm = find_isomorphism(&c, &p).unwrap();
        assert_eq!(p.permuted(&perm), c);
        assert!(find_isomorphism(&c, &c.shift(1, 0)).is_none());
    }
}
