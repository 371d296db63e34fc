//! The bimodule over the base algebra and the box algebra: for each pair of
//! vertices a complex `T(x, y)` of projectives whose class is `m(x, y)`, and
//! a right action of the box generators by chain maps.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::boxalg::BoxPaths;
use crate::algebra::{basis_mon_r, mult_r, AlgebraTag, MonR, RAlgebra};
use crate::complexes::{
    check_entry_degrees, mat_add, mat_mul, verify_mc, BoxComplex, ChainMap, Matrix, RComplex, Summand,
};
use crate::error::{Error, Result};
use crate::kzero::{self, PairData, Slice};
use crate::path::PathQuiver;
use crate::quiver::{BoxKind, BoxStep, BoxVertex, Vertex};
use crate::rings::F2Comb;

/// The complex `T(x, y)` with its indexing data.
#[derive(Clone, Debug)]
pub struct TPair {
    pub x: Vertex,
    pub y: Vertex,
    pub pd: PairData,
    /// Every slice, including those whose monomial vanishes.
    pub slices: Vec<Slice>,
    /// For each summand of `complex`, the slice it comes from.
    pub summand_slice: Vec<usize>,
    pub complex: RComplex,
}

impl TPair {
    /// Summand index of the slice with the given resolved pairs.
    pub fn summand_of(&self, resolved: u32) -> Option<usize> {
        self.summand_slice.iter().position(|&i| self.slices[i].resolved == resolved)
    }

    pub fn slice_of_summand(&self, i: usize) -> &Slice {
        &self.slices[self.summand_slice[i]]
    }
}

pub fn build_t_pair(n: u32, x: Vertex, y: Vertex) -> TPair {
    let (pd, slices) = kzero::m_slices(n, x, y);
    let summand_slice: Vec<usize> = (0..slices.len()).filter(|&i| slices[i].mon.is_some()).collect();
    let summands =
        summand_slice.iter().map(|&i| Summand::new(slices[i].mon.unwrap(), slices[i].eta, -slices[i].k)).collect();
    let mut delta = Matrix::new();
    for (col, &i) in summand_slice.iter().enumerate() {
        for (row, &j) in summand_slice.iter().enumerate() {
            let (a, b) = (&slices[i], &slices[j]);
            let added = b.resolved & !a.resolved;
            if a.resolved & !b.resolved != 0 || added.count_ones() != 1 {
                continue;
            }
            let s = added.trailing_zeros();
            let g = MonR::generator(a.mon.unwrap(), s, n)
                .filter(|g| g.tgt == b.mon.unwrap())
                .expect("adjacent slices differ by one pair");
            delta.insert((row, col), F2Comb::from_term(g));
        }
    }
    TPair { x, y, pd, slices, summand_slice, complex: RComplex { tag: AlgebraTag::R, summands, delta } }
}

/// Which pairs a box generator resolves in the target of the action.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ActionRule {
    Standard,
    /// Drops the extra resolution for y-side generators; used as a negative
    /// control for the verification sweep.
    MutatedYSide,
}

/// The resolved set and slice shift in `T(x', y')` reached from the slice
/// with resolved set `resolved` in `T(x, y)`.
pub fn target_resolution(x: Vertex, y: Vertex, step: BoxStep, resolved: u32, rule: ActionRule) -> (u32, i32) {
    let t = step.s;
    match step.kind {
        BoxKind::Y => {
            let extra = t >= 1 && x.contains(t - 1) && rule == ActionRule::Standard;
            (resolved | if extra { 1 << (t - 1) } else { 0 }, 0)
        }
        BoxKind::X => {
            let extra = y.contains(t + 2);
            (resolved | if extra { 1 << (t + 1) } else { 0 }, 0)
        }
        BoxKind::D => (resolved, -1),
    }
}

/// An element of the summand of `T(x, y)` indexed by a slice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TElement {
    pub pair: BoxVertex,
    pub k: i32,
    pub resolved: u32,
    pub value: F2Comb<MonR>,
}

/// All `T(x, y)` for one `n`.
pub struct TModule {
    pub n: u32,
    pairs: Vec<TPair>,
}

impl TModule {
    pub fn new(n: u32) -> Self {
        let pairs = BoxVertex::all(n).collect::<Vec<_>>().par_iter().map(|v| build_t_pair(n, v.x, v.y)).collect();
        Self { n, pairs }
    }

    pub fn pair(&self, v: BoxVertex) -> &TPair {
        &self.pairs[((v.x.0 as usize) << (self.n + 1)) | v.y.0 as usize]
    }

    pub fn pairs(&self) -> &[TPair] {
        &self.pairs
    }

    /// `m x r` for a generator `r` leaving `m.pair`; `None` when zero.
    pub fn right_act(&self, m: &TElement, step: BoxStep, rule: ActionRule) -> Option<TElement> {
        let src = self.pair(m.pair);
        let i = src.summand_of(m.resolved)?;
        let ma = src.complex.summands[i].vertex;
        let tgt_v = step.apply(m.pair, self.n)?;
        let tgt = self.pair(tgt_v);
        let (fa, dk) = target_resolution(m.pair.x, m.pair.y, step, m.resolved, rule);
        let j = tgt.summand_of(fa)?;
        let mb = tgt.complex.summands[j].vertex;
        let coef = basis_mon_r(self.n, ma, mb)?;
        let value = mult_r(&m.value, &F2Comb::from_term(coef));
        debug_assert_eq!(tgt.slice_of_summand(j).k, m.k + dk);
        (!value.is_zero()).then_some(TElement { pair: tgt_v, k: m.k + dk, resolved: fa, value })
    }

    /// Matrix of the right action of a generator, from `T(src)` to its target.
    pub fn generator_matrix(&self, src: BoxVertex, step: BoxStep, rule: ActionRule) -> Matrix<MonR> {
        let mut out = Matrix::new();
        let Some(tgt_v) = step.apply(src, self.n) else { return out };
        let (sp, tp) = (self.pair(src), self.pair(tgt_v));
        for (i, s) in sp.complex.summands.iter().enumerate() {
            let sl = sp.slice_of_summand(i);
            let m = TElement {
                pair: src,
                k: sl.k,
                resolved: sl.resolved,
                value: F2Comb::from_term(MonR::idempotent(s.vertex)),
            };
            if let Some(img) = self.right_act(&m, step, rule) {
                let j = tp.summand_of(img.resolved).expect("image lies in a summand");
                out.insert((j, i), img.value);
            }
        }
        out
    }

    pub fn identity_matrix(&self, v: BoxVertex) -> Matrix<MonR> {
        self.pair(v)
            .complex
            .summands
            .iter()
            .enumerate()
            .map(|(i, s)| ((i, i), F2Comb::from_term(MonR::idempotent(s.vertex))))
            .collect()
    }

    /// Action of a path of generators, applied left to right.
    pub fn path_matrix(&self, src: BoxVertex, path: &[BoxStep], rule: ActionRule) -> Matrix<MonR> {
        let alg = RAlgebra::new(self.n);
        let mut acc = self.identity_matrix(src);
        let mut v = src;
        for &step in path {
            let g = self.generator_matrix(v, step, rule);
            acc = mat_mul(&alg, &acc, &g);
            v = step.apply(v, self.n).expect("valid path");
        }
        acc
    }

    pub fn right_act_chainmap(&self, src: BoxVertex, step: BoxStep) -> Option<ChainMap<Vertex, MonR>> {
        let tgt = step.apply(src, self.n)?;
        Some(ChainMap {
            source: self.pair(src).complex.clone(),
            target: self.pair(tgt).complex.clone(),
            cohdeg: step.cohdeg(),
            qdeg: step.qdeg(self.n),
            entries: self.generator_matrix(src, step, ActionRule::Standard),
        })
    }

    /// Action of `d(r)` for a generator `r`.
    fn diff_matrix(&self, src: BoxVertex, step: BoxStep, rule: ActionRule) -> Matrix<MonR> {
        if step.kind != BoxKind::D {
            return Matrix::new();
        }
        let (xs, ys) = (BoxStep::x(step.s), BoxStep::y(step.s + 1));
        let mut m = self.path_matrix(src, &[xs, ys], rule);
        mat_add(&mut m, &self.path_matrix(src, &[ys, xs], rule));
        m
    }

    /// Replaces each summand of a box complex by the shifted `T(x, y)` and
    /// each differential entry by its action.
    pub fn tensor_t(&self, c: &BoxComplex) -> Result<RComplex> {
        let mut out = RComplex::empty(AlgebraTag::R);
        let mut offsets = Vec::with_capacity(c.len());
        for s in &c.summands {
            offsets.push(out.len());
            let t = self.pair(s.vertex).complex.shift(s.qshift, s.cohshift);
            out = out.direct_sum(&t);
        }
        for (&(j, i), e) in &c.delta {
            for m in e.iter() {
                let mat = self.path_matrix(m.src, &m.path, ActionRule::Standard);
                let shifted: Matrix<MonR> =
                    mat.into_iter().map(|((r, col), v)| ((r + offsets[j], col + offsets[i]), v)).collect();
                mat_add(&mut out.delta, &shifted);
            }
        }
        verify_mc(&RAlgebra::new(self.n), &out).map_err(|w| Error::NotMaurerCartan(w.to_string()))?;
        Ok(out)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BimoduleFailure {
    pub check: &'static str,
    pub pair: BoxVertex,
    pub generator: Option<String>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct BimoduleReport {
    pub n: u32,
    pub pairs: usize,
    pub d2_checks: usize,
    pub leibniz_checks: usize,
    pub relation_checks: usize,
    pub compat_checks: usize,
    pub failures: Vec<BimoduleFailure>,
}

impl BimoduleReport {
    fn merge(&mut self, o: BimoduleReport) {
        self.pairs += o.pairs;
        self.d2_checks += o.d2_checks;
        self.leibniz_checks += o.leibniz_checks;
        self.relation_checks += o.relation_checks;
        self.compat_checks += o.compat_checks;
        self.failures.extend(o.failures);
    }

    pub fn total_checks(&self) -> usize {
        self.d2_checks + self.leibniz_checks + self.relation_checks + self.compat_checks
    }
}

fn fmt_matrix(m: &Matrix<MonR>) -> String {
    format!("{m:?}")
}

fn check_pair(tm: &TModule, v: BoxVertex, rule: ActionRule) -> BimoduleReport {
    let n = tm.n;
    let alg = RAlgebra::new(n);
    let mut rep = BimoduleReport { pairs: 1, ..Default::default() };
    let fail = |check: &'static str, generator: Option<BoxStep>, detail: String| BimoduleFailure {
        check,
        pair: v,
        generator: generator.map(|g| g.to_string()),
        detail,
    };
    let mut failures = Vec::new();
    let tp = tm.pair(v);

    rep.d2_checks += 1;
    if let Err(w) = verify_mc(&alg, &tp.complex) {
        failures.push(fail("d2", None, w.to_string()));
    }

    for step in BoxStep::all(n) {
        let Some(tgt) = step.apply(v, n) else { continue };
        let tq = tm.pair(tgt);
        let act = tm.generator_matrix(v, step, rule);
        if let Err(w) =
            check_entry_degrees(&alg, &tp.complex.summands, &tq.complex.summands, &act, step.cohdeg(), step.qdeg(n))
        {
            failures.push(fail("degree", Some(step), w.to_string()));
        }
        rep.leibniz_checks += tp.complex.len();
        let mut lhs = mat_mul(&alg, &tp.complex.delta, &act);
        mat_add(&mut lhs, &mat_mul(&alg, &act, &tq.complex.delta));
        let rhs = tm.diff_matrix(v, step, rule);
        if lhs != rhs {
            failures.push(fail(
                "leibniz",
                Some(step),
                format!("d(m x r) + d(m) x r = {}, m x d(r) = {}", fmt_matrix(&lhs), fmt_matrix(&rhs)),
            ));
        }
        // left multiplication by a basis element of R commutes with the action
        for (i, s) in tp.complex.summands.iter().enumerate() {
            let sl = tp.slice_of_summand(i);
            let e = TElement {
                pair: v,
                k: sl.k,
                resolved: sl.resolved,
                value: F2Comb::from_term(MonR::idempotent(s.vertex)),
            };
            let img = tm.right_act(&e, step, rule);
            for u in Vertex::all(n) {
                let Some(a) = basis_mon_r(n, u, s.vertex) else { continue };
                let a = F2Comb::from_term(a);
                rep.compat_checks += 1;
                let am = TElement { value: mult_r(&a, &e.value), ..e.clone() };
                let left = tm.right_act(&am, step, rule).map(|t| t.value).unwrap_or_default();
                let right = img.as_ref().map(|t| mult_r(&a, &t.value)).unwrap_or_default();
                if left != right {
                    failures.push(fail("compat", Some(step), format!("(a m) x r = {left:?}, a (m x r) = {right:?}")));
                }
            }
        }
    }

    let quiver = BoxPaths { n };
    for rel in quiver.relations_at(v) {
        rep.relation_checks += 1;
        let mats: Vec<Matrix<MonR>> = rel.iter().map(|p| tm.path_matrix(v, p, rule)).collect();
        if mats.windows(2).any(|w| w[0] != w[1]) {
            failures.push(fail("relation", None, format!("paths {rel:?} act differently")));
        }
    }
    rep.relation_checks += 1;
    let id = tm.path_matrix(v, &[], rule);
    let expect: BTreeMap<_, _> = tm.identity_matrix(v);
    if id != expect {
        failures.push(fail("relation", None, "idempotent does not act as the identity".into()));
    }
    rep.failures = failures;
    rep
}

/// Which pairs a verification sweep visits.
#[derive(Clone, Copy, Debug)]
pub enum Sweep {
    Exhaustive,
    Random { samples: usize, seed: u64 },
}

pub fn verify_bimodule_with(tm: &TModule, sweep: Sweep, rule: ActionRule) -> BimoduleReport {
    let all: Vec<BoxVertex> = BoxVertex::all(tm.n).collect();
    let pairs = match sweep {
        Sweep::Exhaustive => all,
        Sweep::Random { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..samples).map(|_| all[rng.gen_range(0..all.len())]).collect()
        }
    };
    let mut rep = pairs.par_iter().map(|&v| check_pair(tm, v, rule)).reduce(BimoduleReport::default, |mut a, b| {
        a.merge(b);
        a
    });
    rep.n = tm.n;
    rep.failures.sort_by_key(|f| (f.pair, f.check));
    rep
}

pub fn verify_bimodule(n: u32, sweep: Sweep) -> BimoduleReport {
    verify_bimodule_with(&TModule::new(n), sweep, ActionRule::Standard)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Vertex {
        s.parse().unwrap()
    }

    fn describe(c: &RComplex) -> Vec<String> {
        c.summands.iter().map(|s| format!("{}{{{}}}[{}]", s.vertex, s.qshift, s.cohshift)).collect()
    }

    #[test]
    fn t_of_adjacent_singletons() {
        let t = build_t_pair(2, v("[0]"), v("[1]"));
        assert_eq!(describe(&t.complex), ["[]{-1}[0]", "[1,0]{0}[-1]"]);
        assert_eq!(t.complex.delta.len(), 1);
        assert_eq!(t.complex.k0_class(), kzero::mult_vertices(2, v("[0]"), v("[1]")));
    }

    #[test]
    fn t_of_two_pairs() {
        let t = build_t_pair(2, v("[1,0]"), v("[2,1]"));
        assert_eq!(describe(&t.complex), ["[]{0}[1]", "[1,0]{1}[0]", "[2,1]{-1}[0]"]);
        let entries: Vec<String> = t.complex.delta.values().map(|e| format!("{e:?}")).collect();
        assert_eq!(entries, ["r([]->[1,0])", "r([]->[2,1])"]);
    }

    #[test]
    fn t_without_pairs() {
        let t = build_t_pair(3, v("[1]"), v("[0]"));
        assert_eq!(describe(&t.complex), ["[1,0]{0}[0]"]);
        assert!(t.complex.delta.is_empty());
        assert!(build_t_pair(3, v("[1]"), v("[1]")).complex.is_empty());
    }

    #[test]
    fn diagonal_action_from_empty_pair() {
        let tm = TModule::new(2);
        let src = BoxVertex::new(Vertex::EMPTY, Vertex::EMPTY);
        let m = TElement { pair: src, k: 0, resolved: 0, value: F2Comb::from_term(MonR::idempotent(Vertex::EMPTY)) };
        let img = tm.right_act(&m, BoxStep::d(0), ActionRule::Standard).unwrap();
        assert_eq!((img.k, img.resolved), (-1, 0));
        assert_eq!(img.value, F2Comb::from_term(MonR::idempotent(Vertex::EMPTY)));
    }

    #[test]
    fn y_side_action_resolves_lower_pair() {
        let tm = TModule::new(2);
        let src = BoxVertex::new(v("[0]"), v("[1]"));
        let m = TElement { pair: src, k: 0, resolved: 0, value: F2Comb::from_term(MonR::idempotent(Vertex::EMPTY)) };
        // acting from ([0],[1]) needs the y-side pair {1,2} to be free
        assert!(tm.right_act(&m, BoxStep::y(1), ActionRule::Standard).is_none());
        let src = BoxVertex::new(v("[0]"), Vertex::EMPTY);
        let m = TElement { pair: src, k: 0, resolved: 0, value: F2Comb::from_term(MonR::idempotent(v("[0]"))) };
        let img = tm.right_act(&m, BoxStep::y(1), ActionRule::Standard).unwrap();
        assert_eq!(img.pair, BoxVertex::new(v("[0]"), v("[2,1]")));
        assert_eq!(img.resolved, 1);
        assert_eq!(format!("{:?}", img.value), "r([0]->[2,1,0])");
    }

    #[test]
    fn small_sweeps_pass() {
        for n in 1..=2 {
            let r = verify_bimodule(n, Sweep::Exhaustive);
            assert!(r.failures.is_empty(), "n = {n}: {:?}", &r.failures[..r.failures.len().min(3)]);
            assert_eq!(r.pairs, 1 << (2 * (n + 1)));
        }
    }

    #[test]
    fn mutation_is_detected() {
        let tm = TModule::new(2);
        let r = verify_bimodule_with(&tm, Sweep::Exhaustive, ActionRule::MutatedYSide);
        assert!(!r.failures.is_empty());
    }
}
