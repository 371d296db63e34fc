//! Quotients of path algebras by quadratic relations, computed one Hom-space
//! at a time by row reduction over F2.
//!
//! Paths in a Hom-space are sorted lexicographically by their arrow labels.
//! Relations are reduced with the highest path as pivot, so every class of
//! the quotient is represented by its lexicographically least path.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;
use std::ops::Deref;
use std::sync::{Arc, RwLock};

use rayon::prelude::*;

use crate::linalg::{BitVec, Echelon};

pub trait PathQuiver: Sync {
    type V: Copy + Ord + Hash + Send + Sync + Debug;
    type L: Copy + Ord + Hash + Send + Sync + Debug;

    fn labels(&self) -> Vec<Self::L>;
    fn step(&self, v: Self::V, l: Self::L) -> Option<Self::V>;
    /// A cheap necessary condition for a path from `from` to `to` to exist.
    fn may_reach(&self, from: Self::V, to: Self::V) -> bool;
    fn cohdeg(&self, l: Self::L) -> i32;
    /// Relations among length-two paths starting at `v`: each relation is a
    /// set of paths whose sum vanishes.
    fn relations_at(&self, v: Self::V) -> Vec<Vec<[Self::L; 2]>>;
}

/// Every length-two path equal to its reordering, except where `keep` says
/// the pair is left unrelated.
pub fn swap_relations<Q: PathQuiver>(q: &Q, v: Q::V, keep_apart: impl Fn(Q::L, Q::L) -> bool) -> Vec<Vec<[Q::L; 2]>> {
    let labels = q.labels();
    let mut out = Vec::new();
    for &a in &labels {
        let Some(va) = q.step(v, a) else { continue };
        for &b in &labels {
            if a >= b || keep_apart(a, b) {
                continue;
            }
            let Some(vab) = q.step(va, b) else { continue };
            let vba = q.step(v, b).and_then(|vb| q.step(vb, a));
            if vba == Some(vab) {
                out.push(vec![[a, b], [b, a]]);
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct HomBlock<L> {
    pub cohdeg: i32,
    paths: Vec<Vec<L>>,
    basis: Vec<usize>,
    nf: Vec<Vec<u32>>,
    relation_rank: usize,
}

impl<L: Ord + Clone> HomBlock<L> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn num_paths(&self) -> usize {
        self.paths.len()
    }

    pub fn relation_rank(&self) -> usize {
        self.relation_rank
    }

    pub fn paths(&self) -> &[Vec<L>] {
        &self.paths
    }

    pub fn basis_path(&self, i: usize) -> &[L] {
        &self.paths[self.basis[i]]
    }

    pub fn basis_paths(&self) -> impl Iterator<Item = &[L]> {
        self.basis.iter().map(|&i| self.paths[i].as_slice())
    }

    /// Position of a normal-form path in the basis.
    pub fn basis_index(&self, path: &[L]) -> Option<usize> {
        let i = self.path_index(path)?;
        self.basis.binary_search(&i).ok()
    }

    pub fn path_index(&self, path: &[L]) -> Option<usize> {
        self.paths.binary_search_by(|p| p.as_slice().cmp(path)).ok()
    }

    /// Basis positions whose sum equals the class of `path`.
    pub fn reduce(&self, path: &[L]) -> Option<&[u32]> {
        self.path_index(path).map(|i| self.nf[i].as_slice())
    }
}

pub type HomSpace<L> = Vec<HomBlock<L>>;

type SpaceCache<V, L> = HashMap<(V, V), Arc<HomSpace<L>>>;
type Relations<L> = Vec<Vec<[L; 2]>>;
type SpaceEntry<V, L> = ((V, V), Arc<HomSpace<L>>);

/// A block borrowed from a shared Hom-space.
pub struct BlockRef<L> {
    space: Arc<HomSpace<L>>,
    idx: usize,
}

impl<L> Deref for BlockRef<L> {
    type Target = HomBlock<L>;
    fn deref(&self) -> &HomBlock<L> {
        &self.space[self.idx]
    }
}

/// Hom-spaces of a path-algebra quotient, computed on first use and cached.
pub struct PathEngine<Q: PathQuiver> {
    pub quiver: Q,
    spaces: RwLock<SpaceCache<Q::V, Q::L>>,
}

fn enumerate_paths<Q: PathQuiver>(q: &Q, src: Q::V, tgt: Q::V) -> Vec<Vec<Q::L>> {
    let labels = q.labels();
    let mut out = Vec::new();
    if !q.may_reach(src, tgt) {
        return out;
    }
    let mut stack = vec![(src, Vec::new())];
    while let Some((v, path)) = stack.pop() {
        if v == tgt {
            out.push(path);
            continue;
        }
        for &l in &labels {
            if let Some(w) = q.step(v, l) {
                if q.may_reach(w, tgt) {
                    let mut p = path.clone();
                    p.push(l);
                    stack.push((w, p));
                }
            }
        }
    }
    out
}

fn build_block<Q: PathQuiver>(
    q: &Q,
    src: Q::V,
    cohdeg: i32,
    mut paths: Vec<Vec<Q::L>>,
    rel_cache: &mut HashMap<Q::V, Relations<Q::L>>,
) -> HomBlock<Q::L> {
    paths.sort();
    let index: HashMap<&[Q::L], usize> = paths.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let len = paths.len();
    let mut ech = Echelon::new(len);
    for p in &paths {
        let mut v = src;
        for i in 0..p.len().saturating_sub(1) {
            let rels = rel_cache.entry(v).or_insert_with(|| q.relations_at(v));
            for rel in rels.iter() {
                if !rel.iter().any(|r| r[0] == p[i] && r[1] == p[i + 1]) {
                    continue;
                }
                let mut ones = Vec::new();
                for r in rel {
                    let mut alt = p.clone();
                    alt[i] = r[0];
                    alt[i + 1] = r[1];
                    if let Some(&j) = index.get(alt.as_slice()) {
                        ones.push(j);
                    }
                }
                ech.insert(BitVec::from_ones(len, ones));
            }
            v = q.step(v, p[i]).expect("enumerated path must be valid");
        }
    }
    let basis: Vec<usize> = (0..len).filter(|&c| !ech.is_pivot(c)).collect();
    let pos: HashMap<usize, u32> = basis.iter().enumerate().map(|(k, &c)| (c, k as u32)).collect();
    let nf = (0..len).map(|i| ech.reduce(BitVec::from_ones(len, [i])).ones().map(|c| pos[&c]).collect()).collect();
    HomBlock { cohdeg, paths, basis, nf, relation_rank: ech.rank() }
}

fn build_space<Q: PathQuiver>(q: &Q, s: Q::V, t: Q::V) -> HomSpace<Q::L> {
    let mut by_deg: HashMap<i32, Vec<Vec<Q::L>>> = HashMap::new();
    for p in enumerate_paths(q, s, t) {
        let c = p.iter().map(|&l| q.cohdeg(l)).sum();
        by_deg.entry(c).or_default().push(p);
    }
    let mut rel_cache = HashMap::new();
    let mut space: HomSpace<Q::L> =
        by_deg.into_iter().map(|(c, ps)| build_block(q, s, c, ps, &mut rel_cache)).collect();
    space.sort_by_key(|b| std::cmp::Reverse(b.cohdeg));
    space
}

impl<Q: PathQuiver> PathEngine<Q> {
    pub fn new(quiver: Q) -> Self {
        Self { quiver, spaces: RwLock::new(HashMap::new()) }
    }

    /// Builds every Hom-space between the given vertices up front.
    pub fn build(quiver: Q, vertices: &[Q::V]) -> Self {
        let engine = Self::new(quiver);
        let pairs: Vec<(Q::V, Q::V)> = vertices
            .iter()
            .flat_map(|&s| vertices.iter().map(move |&t| (s, t)))
            .filter(|&(s, t)| engine.quiver.may_reach(s, t))
            .collect();
        let built: Vec<_> = pairs
            .par_iter()
            .map(|&(s, t)| ((s, t), Arc::new(build_space(&engine.quiver, s, t))))
            .filter(|(_, sp)| !sp.is_empty())
            .collect();
        engine.spaces.write().expect("engine lock").extend(built);
        engine
    }

    pub fn space(&self, src: Q::V, tgt: Q::V) -> Arc<HomSpace<Q::L>> {
        if let Some(sp) = self.spaces.read().expect("engine lock").get(&(src, tgt)) {
            return sp.clone();
        }
        let sp = Arc::new(build_space(&self.quiver, src, tgt));
        self.spaces.write().expect("engine lock").entry((src, tgt)).or_insert(sp).clone()
    }

    pub fn block(&self, src: Q::V, tgt: Q::V, cohdeg: i32) -> Option<BlockRef<Q::L>> {
        let space = self.space(src, tgt);
        let idx = space.iter().position(|b| b.cohdeg == cohdeg)?;
        Some(BlockRef { space, idx })
    }

    pub fn dim(&self, src: Q::V, tgt: Q::V, cohdeg: i32) -> usize {
        self.block(src, tgt, cohdeg).map_or(0, |b| b.dim())
    }

    /// Nonempty Hom-spaces built so far, sorted by endpoints.
    pub fn built_spaces(&self) -> Vec<SpaceEntry<Q::V, Q::L>> {
        let mut v: Vec<_> = self
            .spaces
            .read()
            .expect("engine lock")
            .iter()
            .filter(|(_, sp)| !sp.is_empty())
            .map(|(k, sp)| (*k, sp.clone()))
            .collect();
        v.sort_by_key(|(k, _)| *k);
        v
    }

    pub fn endpoint(&self, src: Q::V, path: &[Q::L]) -> Option<Q::V> {
        path.iter().try_fold(src, |v, &l| self.quiver.step(v, l))
    }

    pub fn cohdeg(&self, path: &[Q::L]) -> i32 {
        path.iter().map(|&l| self.quiver.cohdeg(l)).sum()
    }

    /// Normal forms summing to the class of a valid path.
    pub fn reduce(&self, src: Q::V, path: &[Q::L]) -> Vec<Vec<Q::L>> {
        let tgt = self.endpoint(src, path).expect("path must be valid");
        let block = self.block(src, tgt, self.cohdeg(path)).expect("block of a valid path exists");
        let nf = block.reduce(path).expect("valid path is enumerated");
        nf.iter().map(|&k| block.basis_path(k as usize).to_vec()).collect()
    }
}
