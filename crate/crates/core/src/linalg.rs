//! Dense linear algebra over F2 on packed bit vectors.

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn from_ones(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.flip(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor(&mut self, other: &BitVec) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Index of the highest set bit.
    pub fn leading(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate().rev() {
            if w != 0 {
                return Some(i * 64 + 63 - w.leading_zeros() as usize);
            }
        }
        None
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + t)
            })
        })
    }
}

/// A fully reduced row echelon basis of a subspace, pivoting on the highest
/// set bit of each row.
#[derive(Clone, Debug)]
pub struct Echelon {
    len: usize,
    rows: Vec<BitVec>,
    pivot_of: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(len: usize) -> Self {
        Self { len, rows: Vec::new(), pivot_of: vec![None; len] }
    }

    pub fn from_rows<'a>(len: usize, rows: impl IntoIterator<Item = &'a BitVec>) -> Self {
        let mut e = Self::new(len);
        for r in rows {
            e.insert(r.clone());
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_of[col].is_some()
    }

    /// Reduce `v` against the basis. The result has no pivot columns set.
    pub fn reduce(&self, mut v: BitVec) -> BitVec {
        for col in (0..self.len).rev() {
            if v.get(col) {
                if let Some(r) = self.pivot_of[col] {
                    v.xor(&self.rows[r]);
                }
            }
        }
        v
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: BitVec) -> bool {
        let v = self.reduce(v);
        let Some(p) = v.leading() else { return false };
        for row in &mut self.rows {
            if row.get(p) {
                row.xor(&v);
            }
        }
        self.pivot_of[p] = Some(self.rows.len());
        self.rows.push(v);
        true
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v.clone()).is_zero()
    }
}

/// Rank of the span of the given vectors.
pub fn rank(len: usize, vecs: &[BitVec]) -> usize {
    Echelon::from_rows(len, vecs).rank()
}

/// Finds a subset of `cols` whose sum is `target`, if one exists.
pub fn solve(len: usize, cols: &[BitVec], target: &BitVec) -> Option<Vec<usize>> {
    let k = cols.len();
    let mut aug = Echelon::new(len + k);
    for (i, c) in cols.iter().enumerate() {
        let mut row = BitVec::zeros(len + k);
        for j in c.ones() {
            row.flip(k + j);
        }
        row.flip(i);
        aug.insert(row);
    }
    let mut t = BitVec::zeros(len + k);
    for j in target.ones() {
        t.flip(k + j);
    }
    let r = aug.reduce(t);
    if r.ones().any(|i| i >= k) {
        return None;
    }
    Some(r.ones().collect())
}

/// A basis of the subsets of `cols` summing to zero, each as a bit vector
/// of length `cols.len()`.
pub fn kernel(len: usize, cols: &[BitVec]) -> Vec<BitVec> {
    let k = cols.len();
    let mut aug = Echelon::new(len + k);
    let mut out = Vec::new();
    for (i, c) in cols.iter().enumerate() {
        let mut row = BitVec::zeros(len + k);
        for j in c.ones() {
            row.flip(k + j);
        }
        row.flip(i);
        let r = aug.reduce(row);
        if r.ones().all(|j| j < k) {
            out.push(BitVec::from_ones(k, r.ones()));
        } else {
            aug.insert(r);
        }
    }
    out
}
