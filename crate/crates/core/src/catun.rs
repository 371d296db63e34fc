//! Lifting words in `1, q, q^-1, E, F` to complexes over the base algebra.
//!
//! A word comes with a binary association tree. Each internal node is the
//! bifunctor `rho`: tensor over F2, lift to the box algebra, then tensor
//! with the bimodule `T`.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{AlgebraTag, BoxAlgebra, RAlgebra};
use crate::bimodule::TModule;
use crate::complexes::{find_isomorphism, lift_to_box, tensor_f2, verify_mc, RComplex};
use crate::error::{Error, Result};
use crate::kzero::{iota, mult, KClass, Letter};
use crate::quiver::{check_n, Vertex};

/// Largest `n` for which words are lifted.
pub const CATUN_BOUND: u32 = 5;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Assoc {
    Leaf,
    Node(Box<Assoc>, Box<Assoc>),
}

impl Assoc {
    /// Parses trees like `((..).)`, where each dot is a leaf.
    pub fn parse(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |reason: &str| Error::Parse { what: "association", input: s.to_string(), reason: reason.to_string() };
        fn go(c: &[char], pos: &mut usize) -> std::result::Result<Assoc, &'static str> {
            match c.get(*pos) {
                Some('.') => {
                    *pos += 1;
                    Ok(Assoc::Leaf)
                }
                Some('(') => {
                    *pos += 1;
                    let l = go(c, pos)?;
                    let r = go(c, pos)?;
                    if c.get(*pos) != Some(&')') {
                        return Err("expected ')'");
                    }
                    *pos += 1;
                    Ok(Assoc::Node(Box::new(l), Box::new(r)))
                }
                Some(_) => Err("unexpected character"),
                None => Err("unexpected end"),
            }
        }
        let mut pos = 0;
        let t = go(&chars, &mut pos).map_err(err)?;
        if pos != chars.len() {
            return Err(err("trailing characters"));
        }
        Ok(t)
    }

    pub fn leaves(&self) -> usize {
        match self {
            Assoc::Leaf => 1,
            Assoc::Node(l, r) => l.leaves() + r.leaves(),
        }
    }

    /// `((..).)...`: products taken from the left.
    pub fn left_comb(k: usize) -> Self {
        assert!(k >= 1, "a tree needs at least one leaf");
        (1..k).fold(Assoc::Leaf, |acc, _| Assoc::Node(Box::new(acc), Box::new(Assoc::Leaf)))
    }

    /// Every tree with `k` leaves.
    pub fn all(k: usize) -> Vec<Self> {
        if k <= 1 {
            return vec![Assoc::Leaf];
        }
        let mut out = Vec::new();
        for i in 1..k {
            for l in Self::all(i) {
                for r in Self::all(k - i) {
                    out.push(Assoc::Node(Box::new(l.clone()), Box::new(r)));
                }
            }
        }
        out
    }
}

impl fmt::Display for Assoc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Assoc::Leaf => write!(f, "."),
            Assoc::Node(l, r) => write!(f, "({l}{r})"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Word {
    pub letters: Vec<Letter>,
    pub assoc: Assoc,
}

impl Word {
    pub fn new(letters: Vec<Letter>, assoc: Assoc) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::Invalid("empty word".into()));
        }
        if assoc.leaves() != letters.len() {
            return Err(Error::Invalid(format!(
                "association {assoc} has {} leaves but the word has {} letters",
                assoc.leaves(),
                letters.len()
            )));
        }
        Ok(Self { letters, assoc })
    }

    /// Letters are `1 q Q E F`, with `Q` standing for `q^-1`. Without an
    /// association the word is multiplied from the left.
    pub fn parse(word: &str, assoc: Option<&str>) -> Result<Self> {
        let letters = word
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| {
                Letter::from_char(c).ok_or_else(|| Error::Parse {
                    what: "word",
                    input: word.to_string(),
                    reason: format!("unknown letter '{c}'"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let assoc = match assoc {
            Some(a) => Assoc::parse(a)?,
            None => Assoc::left_comb(letters.len().max(1)),
        };
        Self::new(letters, assoc)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.letters.iter().map(|l| l.to_char()).collect();
        write!(f, "{s} {}", self.assoc)
    }
}

pub fn make_e(n: u32) -> RComplex {
    parity_sum(n, 0)
}

pub fn make_f(n: u32) -> RComplex {
    parity_sum(n, 1)
}

fn parity_sum(n: u32, parity: u32) -> RComplex {
    (0..=n)
        .filter(|i| i % 2 == parity)
        .map(|i| RComplex::projective(AlgebraTag::R, Vertex::single(i), 0, 0))
        .fold(RComplex::empty(AlgebraTag::R), |acc, c| acc.direct_sum(&c))
}

pub fn letter_complex(n: u32, l: Letter) -> RComplex {
    match l {
        Letter::One => RComplex::projective(AlgebraTag::R, Vertex::EMPTY, 0, 0),
        Letter::Q => RComplex::projective(AlgebraTag::R, Vertex::EMPTY, 1, 0),
        Letter::Qinv => RComplex::projective(AlgebraTag::R, Vertex::EMPTY, -1, 0),
        Letter::E => make_e(n),
        Letter::F => make_f(n),
    }
}

/// One application of `rho` while lifting a word.
#[derive(Clone, Debug, Serialize)]
pub struct RhoRecord {
    pub left: KClass,
    pub right: KClass,
    pub product: KClass,
    pub summands: usize,
    pub multiplicative: bool,
}

/// The box algebra and bimodule for one `n`, shared across lifts.
pub struct Workbench {
    pub n: u32,
    pub alg: BoxAlgebra,
    pub tm: TModule,
    r: RAlgebra,
}

impl Workbench {
    pub fn new(n: u32) -> Result<Self> {
        check_n(n as i64)?;
        if n > CATUN_BOUND {
            return Err(Error::BoundExceeded { what: "word lifting", n, bound: CATUN_BOUND });
        }
        Ok(Self { n, alg: BoxAlgebra::lazy(n)?, tm: TModule::new(n), r: RAlgebra::new(n) })
    }

    pub fn rho(&self, m: &RComplex, nc: &RComplex) -> Result<RComplex> {
        for c in [m, nc] {
            verify_mc(&self.r, c).map_err(|w| Error::NotMaurerCartan(w.to_string()))?;
        }
        let lifted = lift_to_box(&self.alg, &tensor_f2(m, nc))?;
        verify_mc(&self.alg, &lifted).map_err(|w| Error::NotMaurerCartan(w.to_string()))?;
        self.tm.tensor_t(&lifted)
    }

    pub fn lift_word(&self, w: &Word) -> Result<RComplex> {
        self.lift_word_traced(w, &mut Vec::new())
    }

    /// Lifts a word, recording the K0 bookkeeping of every `rho`.
    pub fn lift_word_traced(&self, w: &Word, trace: &mut Vec<RhoRecord>) -> Result<RComplex> {
        let mut letters = w.letters.iter();
        let out = self.fold(&w.assoc, &mut letters, trace)?;
        Ok(out)
    }

    fn fold<'a>(
        &self,
        t: &Assoc,
        letters: &mut impl Iterator<Item = &'a Letter>,
        trace: &mut Vec<RhoRecord>,
    ) -> Result<RComplex> {
        match t {
            Assoc::Leaf => {
                let l = letters.next().ok_or_else(|| Error::Invalid("association has too many leaves".into()))?;
                Ok(letter_complex(self.n, *l))
            }
            Assoc::Node(a, b) => {
                let m = self.fold(a, letters, trace)?;
                let nc = self.fold(b, letters, trace)?;
                let out = self.rho(&m, &nc)?;
                let (left, right) = (m.k0_class(), nc.k0_class());
                let expected = mult(self.n, &left, &right);
                let product = out.k0_class();
                trace.push(RhoRecord {
                    multiplicative: product == expected,
                    left,
                    right,
                    product,
                    summands: out.len(),
                });
                Ok(out)
            }
        }
    }

    /// Whether `rho(m, P([]))` and `rho(P([]), m)` are both `m` up to a
    /// reordering of summands.
    pub fn unit_law_holds(&self, m: &RComplex) -> Result<bool> {
        let unit = letter_complex(self.n, Letter::One);
        let right = self.rho(m, &unit)?;
        let left = self.rho(&unit, m)?;
        Ok(find_isomorphism(m, &right).is_some() && find_isomorphism(m, &left).is_some())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ShapeSummand {
    pub vertex: Vertex,
    pub qshift: i32,
    pub position: i32,
}

#[derive(Clone, Debug, Serialize)]
pub struct ShapeReport {
    pub n: u32,
    pub letter: Letter,
    pub summands: Vec<ShapeSummand>,
    pub zero_differential: bool,
    pub multiset_matches: bool,
    pub k0_zero: bool,
    pub nonzero: bool,
}

impl ShapeReport {
    pub fn passed(&self) -> bool {
        self.zero_differential && self.multiset_matches && self.k0_zero && self.nonzero
    }
}

/// Checks that the square of `E` (or `F`) sits in positions -1 and 0, each
/// equal to the sum of `P([i,j])` over `i > j` of the letter's parity, with
/// zero differential.
pub fn square_shape(wb: &Workbench, letter: Letter) -> Result<ShapeReport> {
    let parity = match letter {
        Letter::E => 0,
        Letter::F => 1,
        _ => return Err(Error::Invalid(format!("no shape statement for {letter}"))),
    };
    let w = Word::new(vec![letter, letter], Assoc::left_comb(2))?;
    let c = wb.lift_word(&w)?;
    let mut summands: Vec<ShapeSummand> =
        c.summands.iter().map(|s| ShapeSummand { vertex: s.vertex, qshift: s.qshift, position: -s.cohshift }).collect();
    summands.sort_by_key(|s| (s.position, s.vertex, s.qshift));
    let mut expected: Vec<Vertex> = Vec::new();
    for i in (0..=wb.n).filter(|i| i % 2 == parity) {
        for j in (0..i).filter(|j| j % 2 == parity) {
            expected.push(Vertex((1 << i) | (1 << j)));
        }
    }
    expected.sort();
    let at = |p: i32| {
        let mut v: Vec<Vertex> = summands.iter().filter(|s| s.position == p).map(|s| s.vertex).collect();
        v.sort();
        v
    };
    let multiset_matches =
        at(-1) == expected && at(0) == expected && summands.iter().all(|s| s.position == -1 || s.position == 0);
    Ok(ShapeReport {
        n: wb.n,
        letter,
        zero_differential: c.is_zero_differential(),
        multiset_matches,
        k0_zero: c.k0_class().is_zero(),
        nonzero: expected.is_empty() == c.is_empty(),
        summands,
    })
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct WordSweepReport {
    pub n: u32,
    pub words: usize,
    pub lifts: usize,
    pub rho_calls: usize,
    pub failures: Vec<String>,
}

/// Every word of length `1..=max_len` in `alphabet` in every association:
/// each `rho` must be multiplicative on K0, and every association of a word
/// must give the K0 class of the word itself.
pub fn word_sweep(wb: &Workbench, alphabet: &[Letter], max_len: usize) -> WordSweepReport {
    let mut words: Vec<Vec<Letter>> = vec![Vec::new()];
    let mut all = Vec::new();
    for _ in 0..max_len {
        words = words.iter().flat_map(|w| alphabet.iter().map(move |&l| [w.as_slice(), &[l]].concat())).collect();
        all.extend(words.iter().cloned());
    }
    let results: Vec<WordSweepReport> = all
        .par_iter()
        .map(|letters| {
            let mut rep = WordSweepReport { words: 1, ..Default::default() };
            let target = iota(wb.n, letters);
            for assoc in Assoc::all(letters.len()) {
                let w = Word { letters: letters.clone(), assoc };
                let mut trace = Vec::new();
                rep.lifts += 1;
                match wb.lift_word_traced(&w, &mut trace) {
                    Ok(c) => {
                        if c.k0_class() != target {
                            rep.failures.push(format!("{w}: class {} but the word has {}", c.k0_class(), target));
                        }
                    }
                    Err(e) => rep.failures.push(format!("{w}: {e}")),
                }
                rep.rho_calls += trace.len();
                for r in trace.iter().filter(|r| !r.multiplicative) {
                    rep.failures.push(format!("{w}: rho gave {} for {} times {}", r.product, r.left, r.right));
                }
            }
            rep
        })
        .collect();
    let mut out = WordSweepReport { n: wb.n, ..Default::default() };
    for r in results {
        out.words += r.words;
        out.lifts += r.lifts;
        out.rho_calls += r.rho_calls;
        out.failures.extend(r.failures);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::LaurentZ;

    #[test]
    fn association_round_trip() {
        let t = Assoc::parse("((..).)").unwrap();
        assert_eq!(t.leaves(), 3);
        assert_eq!(t.to_string(), "((..).)");
        assert_eq!(t, Assoc::left_comb(3));
        assert!(Assoc::parse("(..").is_err());
        assert!(Assoc::parse("(...)").is_err());
        assert_eq!(Assoc::all(4).len(), 5);
    }

    #[test]
    fn word_parsing() {
        let w = Word::parse("EFE", Some("(.(..))")).unwrap();
        assert_eq!(w.letters, [Letter::E, Letter::F, Letter::E]);
        assert!(Word::parse("EX", None).is_err());
        assert!(Word::parse("EF", Some("((..).)")).is_err());
    }

    #[test]
    fn generators() {
        let e = make_e(2);
        assert_eq!(e.summands.iter().map(|s| s.vertex.to_string()).collect::<Vec<_>>(), ["[0]", "[2]"]);
        assert_eq!(make_f(2).len(), 1);
        assert_eq!(make_e(1).len(), 1);
        for n in 1..=4 {
            assert_eq!(make_e(n).k0_class(), crate::kzero::iota_letter(n, Letter::E));
            assert_eq!(make_f(n).k0_class(), crate::kzero::iota_letter(n, Letter::F));
        }
    }

    #[test]
    fn rho_of_two_projectives_is_t() {
        let wb = Workbench::new(2).unwrap();
        let p = |i| RComplex::projective(AlgebraTag::R, Vertex::single(i), 0, 0);
        let c = wb.rho(&p(0), &p(1)).unwrap();
        let t = &wb.tm.pair(crate::quiver::BoxVertex::new(Vertex::single(0), Vertex::single(1))).complex;
        assert!(find_isomorphism(t, &c).is_some());
    }

    #[test]
    fn quantum_integer_from_e_and_f() {
        for n in 1..=3 {
            let wb = Workbench::new(n).unwrap();
            let (e, f) = (make_e(n), make_f(n));
            let sum = &wb.rho(&e, &f).unwrap().k0_class() + &wb.rho(&f, &e).unwrap().k0_class();
            let expect = KClass::term(Vertex::EMPTY, crate::kzero::quantum_n(n));
            assert_eq!(sum, expect, "n = {n}");
        }
    }

    #[test]
    fn shifts_cancel() {
        let wb = Workbench::new(2).unwrap();
        let c = wb.lift_word(&Word::parse("qQ", None).unwrap()).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!((c.summands[0].vertex, c.summands[0].qshift, c.summands[0].cohshift), (Vertex::EMPTY, 0, 0));
        assert_eq!(c.k0_class(), KClass::term(Vertex::EMPTY, LaurentZ::one()));
    }

    #[test]
    fn unit_law() {
        let wb = Workbench::new(2).unwrap();
        let ef = wb.rho(&make_e(2), &make_f(2)).unwrap();
        for m in [make_e(2), make_f(2), ef] {
            assert!(wb.unit_law_holds(&m).unwrap());
        }
    }

    #[test]
    fn square_of_e_at_two() {
        let wb = Workbench::new(2).unwrap();
        let rep = square_shape(&wb, Letter::E).unwrap();
        assert!(rep.passed(), "{rep:?}");
        let got: Vec<(String, i32)> = rep.summands.iter().map(|s| (s.vertex.to_string(), s.position)).collect();
        assert_eq!(got, [("[2,0]".to_string(), -1), ("[2,0]".to_string(), 0)]);
        let f = square_shape(&wb, Letter::F).unwrap();
        assert!(f.passed() && f.summands.is_empty());
    }

    #[test]
    fn square_of_e_vanishes_at_one() {
        let wb = Workbench::new(1).unwrap();
        let rep = square_shape(&wb, Letter::E).unwrap();
        assert!(rep.passed() && rep.summands.is_empty());
    }

    #[test]
    fn short_words_at_two() {
        let wb = Workbench::new(2).unwrap();
        let rep = word_sweep(&wb, &[Letter::E, Letter::F, Letter::Q], 2);
        assert!(rep.failures.is_empty(), "{:?}", rep.failures);
        assert_eq!(rep.words, 12);
    }
}
