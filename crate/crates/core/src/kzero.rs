//! The higher multiplication on vertex classes, its specialization at
//! `h = -1`, and the Clifford presentation of the resulting algebra.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quiver::Vertex;
use crate::rings::{FreeModule, LaurentZ, LaurentZH, QH};

/// Free `Z[q, q^-1]`-module on vertices.
pub type KClass = FreeModule<Vertex, i32>;
/// Free `Z[q, q^-1, h, h^-1]`-module on vertices.
pub type KClassH = FreeModule<Vertex, QH>;

/// Concatenates vertices when every junction between nonempty parts is
/// strictly decreasing.
pub fn glue(parts: &[Vertex]) -> Option<Vertex> {
    let mut acc = Vertex::EMPTY;
    for &p in parts {
        if let (Some(lo), Some(hi)) = (acc.min(), p.max()) {
            if lo <= hi {
                return None;
            }
        }
        acc = acc.union(p);
    }
    Some(acc)
}

/// Multilinear extension of [`glue`].
pub fn glue_classes(parts: &[KClassH]) -> KClassH {
    let mut acc = KClassH::basis(Vertex::EMPTY);
    for part in parts {
        let mut next = KClassH::zero();
        for (a, ca) in acc.iter() {
            for (b, cb) in part.iter() {
                if let Some(g) = glue(&[*a, *b]) {
                    next.add_term(g, &(ca * cb));
                }
            }
        }
        acc = next;
    }
    acc
}

fn pair_shift(n: u32, s: u32) -> i32 {
    2 * s as i32 + 1 - n as i32
}

/// The shift `mu`, the adjacent pairs and the blocks between them for a
/// product `x * y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairData {
    pub x: Vertex,
    pub y: Vertex,
    pub mu: i32,
    /// Values `s` with `s` in `x` and `s+1` in `y`, decreasing.
    pub pairs: Vec<u32>,
    /// Blocks between consecutive pairs; `None` when the merged block has a
    /// repeated element.
    pub alpha: Vec<Option<Vertex>>,
}

impl PairData {
    pub fn p(&self) -> usize {
        self.pairs.len()
    }

    pub fn pair_mask(&self) -> u32 {
        self.pairs.iter().fold(0, |m, &s| m | 1 << s)
    }

    pub fn vanishes(&self) -> bool {
        self.alpha.iter().any(Option::is_none)
    }
}

pub fn pair_data(x: Vertex, y: Vertex) -> PairData {
    let mut mu = 0;
    for a in x.elems() {
        for b in y.elems() {
            if a + 1 < b {
                mu += if (a + b + 1) % 2 == 0 { 1 } else { -1 };
            }
        }
    }
    let pairs: Vec<u32> = x.elems().into_iter().filter(|&s| y.contains(s + 1)).collect();
    // bounds s_0 = +inf, s_{p+1} = -inf
    let upper = |i: usize| if i == 0 { i64::MAX } else { pairs[i - 1] as i64 };
    let lower = |i: usize| if i == pairs.len() { i64::MIN } else { pairs[i] as i64 + 1 };
    let alpha = (0..=pairs.len())
        .map(|i| {
            let (hi, lo) = (upper(i), lower(i));
            let xs = x.elems().into_iter().filter(|&a| lo <= a as i64 && (a as i64) < hi);
            let ys: Vec<u32> = y.elems().into_iter().filter(|&b| lo < b as i64 && b as i64 <= hi).collect();
            let xs: Vec<u32> = xs.collect();
            let merged = Vertex::from_elems(&xs).union(Vertex::from_elems(&ys));
            (merged.len() as usize == xs.len() + ys.len()).then_some(merged)
        })
        .collect();
    PairData { x, y, mu, pairs, alpha }
}

pub fn beta(n: u32, s: u32) -> Result<KClassH> {
    if s >= n {
        return Err(Error::OutOfRange(format!("pair index {s} must be below n = {n}")));
    }
    let mut b = KClassH::term(Vertex::EMPTY, LaurentZH::q(pair_shift(n, s)));
    b.add_term(Vertex::pair(s), &LaurentZH::h(1));
    Ok(b)
}

/// The higher product of two vertices.
pub fn higher_mult(n: u32, x: Vertex, y: Vertex) -> KClassH {
    let pd = pair_data(x, y);
    if pd.vanishes() {
        return KClassH::zero();
    }
    let mut parts = vec![KClassH::basis(pd.alpha[0].unwrap())];
    for (i, &s) in pd.pairs.iter().enumerate() {
        parts.push(beta(n, s).expect("pair values lie below n"));
        parts.push(KClassH::basis(pd.alpha[i + 1].unwrap()));
    }
    glue_classes(&parts).scale(&LaurentZH::h(pd.mu))
}

pub fn higher_mult_classes(n: u32, a: &KClassH, b: &KClassH) -> KClassH {
    let mut out = KClassH::zero();
    for (x, cx) in a.iter() {
        for (y, cy) in b.iter() {
            out += &higher_mult(n, *x, *y).scale(&(cx * cy));
        }
    }
    out
}

pub fn specialize(a: &KClassH) -> KClass {
    a.map_coeffs(|c| c.specialize_h())
}

pub fn lift_class(a: &KClass) -> KClassH {
    a.map_coeffs(|c| LaurentZH::from(c))
}

/// `m(x, y)`, the higher product at `h = -1`.
pub fn mult_vertices(n: u32, x: Vertex, y: Vertex) -> KClass {
    specialize(&higher_mult(n, x, y))
}

pub fn mult(n: u32, a: &KClass, b: &KClass) -> KClass {
    let mut out = KClass::zero();
    for (x, cx) in a.iter() {
        for (y, cy) in b.iter() {
            out += &mult_vertices(n, *x, *y).scale(&(cx * cy));
        }
    }
    out
}

/// Products of all pairs of vertices, precomputed.
pub struct MultTable {
    pub n: u32,
    table: Vec<KClass>,
}

impl MultTable {
    pub fn new(n: u32) -> Self {
        let size = 1usize << (n + 1);
        let table =
            (0..size * size).map(|i| mult_vertices(n, Vertex((i / size) as u32), Vertex((i % size) as u32))).collect();
        Self { n, table }
    }

    pub fn get(&self, x: Vertex, y: Vertex) -> &KClass {
        &self.table[((x.0 as usize) << (self.n + 1)) | y.0 as usize]
    }

    pub fn mult(&self, a: &KClass, b: &KClass) -> KClass {
        let mut out = KClass::zero();
        for (x, cx) in a.iter() {
            for (y, cy) in b.iter() {
                out += &self.get(*x, *y).scale(&(cx * cy));
            }
        }
        out
    }
}

/// One summand of the expansion of the higher product by powers of `h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Slice {
    pub k: i32,
    /// Pair values resolved to `[s+1, s]`, as a bitmask.
    pub resolved: u32,
    pub eta: i32,
    pub mon: Option<Vertex>,
}

impl Slice {
    /// Resolved pairs as positions `1..=p` in the decreasing pair list.
    pub fn indices(&self, pd: &PairData) -> Vec<usize> {
        pd.pairs.iter().enumerate().filter(|(_, &s)| self.resolved >> s & 1 == 1).map(|(i, _)| i + 1).collect()
    }
}

/// The monomial and shift obtained by resolving the pairs in `resolved`.
pub fn slice_for(n: u32, pd: &PairData, resolved: u32) -> Slice {
    let mut eta = 0;
    let mut parts = Vec::with_capacity(2 * pd.p() + 1);
    let mon = if pd.vanishes() {
        None
    } else {
        parts.push(pd.alpha[0].unwrap());
        for (i, &s) in pd.pairs.iter().enumerate() {
            if resolved >> s & 1 == 1 {
                parts.push(Vertex::pair(s));
            } else {
                parts.push(Vertex::EMPTY);
            }
            parts.push(pd.alpha[i + 1].unwrap());
        }
        glue(&parts)
    };
    for &s in &pd.pairs {
        if resolved >> s & 1 == 0 {
            eta += pair_shift(n, s);
        }
    }
    Slice { k: pd.mu + resolved.count_ones() as i32, resolved, eta, mon }
}

/// All slices, ordered by `k` and then by the resolved set.
pub fn m_slices(n: u32, x: Vertex, y: Vertex) -> (PairData, Vec<Slice>) {
    let pd = pair_data(x, y);
    let p = pd.p();
    let mut slices: Vec<Slice> = (0..1u32 << p)
        .map(|sub| {
            let resolved =
                pd.pairs.iter().enumerate().filter(|(i, _)| sub >> i & 1 == 1).fold(0, |m, (_, &s)| m | 1 << s);
            slice_for(n, &pd, resolved)
        })
        .collect();
    slices.sort_by_key(|s| (s.k, s.resolved));
    (pd, slices)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum Letter {
    One,
    Q,
    Qinv,
    E,
    F,
}

impl Letter {
    pub fn from_char(c: char) -> Option<Letter> {
        Some(match c {
            '1' => Letter::One,
            'q' => Letter::Q,
            'Q' => Letter::Qinv,
            'E' => Letter::E,
            'F' => Letter::F,
            _ => return None,
        })
    }

    pub fn to_char(self) -> char {
        match self {
            Letter::One => '1',
            Letter::Q => 'q',
            Letter::Qinv => 'Q',
            Letter::E => 'E',
            Letter::F => 'F',
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

pub fn iota_letter(n: u32, l: Letter) -> KClass {
    let sum = |parity: u32| {
        let mut c = KClass::zero();
        for i in (0..=n).filter(|i| i % 2 == parity) {
            c.add_term(Vertex::single(i), &LaurentZ::one());
        }
        c
    };
    match l {
        Letter::One => KClass::basis(Vertex::EMPTY),
        Letter::Q => KClass::term(Vertex::EMPTY, LaurentZ::q(1)),
        Letter::Qinv => KClass::term(Vertex::EMPTY, LaurentZ::q(-1)),
        Letter::E => sum(0),
        Letter::F => sum(1),
    }
}

/// Image of a word under the inclusion into the vertex algebra.
pub fn iota(n: u32, word: &[Letter]) -> KClass {
    word.iter().fold(KClass::basis(Vertex::EMPTY), |acc, &l| mult(n, &acc, &iota_letter(n, l)))
}

/// `q^{n-1} + q^{n-3} + ... + q^{1-n}`.
pub fn quantum_n(n: u32) -> LaurentZ {
    let mut p = LaurentZ::zero();
    for i in 0..n {
        p.add_term(pair_shift(n, i), 1);
    }
    p
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CliffordReport {
    pub n: u32,
    pub identities: usize,
    pub random_vectors: usize,
    pub failures: Vec<String>,
}

/// Checks the Clifford relations among the classes `[i]`, and the
/// quadratic-form identity on `samples` random integer vectors.
pub fn clifford_check(n: u32, samples: usize, seed: u64) -> CliffordReport {
    let table = MultTable::new(n);
    let x = |i: u32| KClass::basis(Vertex::single(i));
    let mut rep = CliffordReport { n, ..Default::default() };
    for i in 0..=n {
        for j in i..=n {
            let anti = &table.mult(&x(i), &x(j)) + &table.mult(&x(j), &x(i));
            let expect =
                if j == i + 1 { KClass::term(Vertex::EMPTY, LaurentZ::q(pair_shift(n, i))) } else { KClass::zero() };
            rep.identities += 1;
            if anti != expect {
                rep.failures.push(format!("X{i}X{j} + X{j}X{i} = {anti}, expected {expect}"));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let a: Vec<i64> = (0..=n).map(|_| rng.gen_range(-9..=9)).collect();
        let mut v = KClass::zero();
        for (i, &c) in a.iter().enumerate() {
            v.add_term(Vertex::single(i as u32), &LaurentZ::constant(c));
        }
        let mut form = LaurentZ::zero();
        for i in 0..n as usize {
            form.add_term(pair_shift(n, i as u32), a[i] * a[i + 1]);
        }
        let sq = table.mult(&v, &v);
        rep.random_vectors += 1;
        if sq != KClass::term(Vertex::EMPTY, form.clone()) {
            rep.failures.push(format!("square of {a:?} is {sq}, expected ({form})*[]"));
        }
    }
    rep
}
