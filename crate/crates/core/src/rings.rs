//! Exact scalar arithmetic: the two-element field, Laurent polynomials over
//! the integers in `q` (and in `q, h`), and free modules over them.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

/// An element of the field with two elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Debug)]
pub struct F2(pub bool);

impl F2 {
    pub const ZERO: F2 = F2(false);
    pub const ONE: F2 = F2(true);
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Add for F2 {
    type Output = F2;
    fn add(self, rhs: F2) -> F2 {
        F2(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for F2 {
    type Output = F2;
    fn mul(self, rhs: F2) -> F2 {
        F2(self.0 & rhs.0)
    }
}

/// A finite F2-linear combination of basis objects, stored as the set of
/// objects with coefficient one. Adding an object twice cancels it.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Comb<T: Ord> {
    terms: BTreeSet<T>,
}

impl<T: Ord> Default for F2Comb<T> {
    fn default() -> Self {
        Self { terms: BTreeSet::new() }
    }
}

impl<T: Ord + Clone> F2Comb<T> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_term(t: T) -> Self {
        let mut terms = BTreeSet::new();
        terms.insert(t);
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.terms.iter()
    }

    pub fn contains(&self, t: &T) -> bool {
        self.terms.contains(t)
    }

    /// Add a single basis object (toggle its coefficient).
    pub fn toggle(&mut self, t: T) {
        if !self.terms.remove(&t) {
            self.terms.insert(t);
        }
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        for t in &other.terms {
            self.toggle(t.clone());
        }
    }
}

impl<T: Ord + Clone> FromIterator<T> for F2Comb<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut c = Self::zero();
        for t in iter {
            c.toggle(t);
        }
        c
    }
}

impl<T: Ord + Clone> AddAssign for F2Comb<T> {
    fn add_assign(&mut self, rhs: Self) {
        for t in rhs.terms {
            self.toggle(t);
        }
    }
}

impl<T: Ord + Clone> Add for F2Comb<T> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl<T: Ord> IntoIterator for F2Comb<T> {
    type Item = T;
    type IntoIter = std::collections::btree_set::IntoIter<T>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl<T: Ord + fmt::Debug> fmt::Debug for F2Comb<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|t| format!("{t:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn checked_add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("integer overflow in Laurent coefficient")
}

fn checked_mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("integer overflow in Laurent coefficient")
}

/// Exponent monoid of a Laurent polynomial ring.
pub trait Exponent: Copy + Ord + Default + fmt::Debug {
    fn combine(self, other: Self) -> Self;
}

impl Exponent for i32 {
    fn combine(self, other: Self) -> Self {
        self.checked_add(other).expect("exponent overflow")
    }
}

/// Exponent of a monomial `q^q h^h`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Debug)]
pub struct QH {
    pub q: i32,
    pub h: i32,
}

impl QH {
    pub fn new(q: i32, h: i32) -> Self {
        Self { q, h }
    }
}

impl Exponent for QH {
    fn combine(self, other: Self) -> Self {
        QH::new(self.q.combine(other.q), self.h.combine(other.h))
    }
}

/// A Laurent polynomial with integer coefficients. Zero coefficients are
/// never stored, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent<E: Exponent> {
    terms: BTreeMap<E, i64>,
}

/// Laurent polynomials in `q`.
pub type LaurentZ = Laurent<i32>;
/// Laurent polynomials in `q` and `h`.
pub type LaurentZH = Laurent<QH>;

impl<E: Exponent> Laurent<E> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(E::default(), 1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(E::default(), c)
    }

    pub fn monomial(e: E, c: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: E) -> i64 {
        self.terms.get(&e).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (E, i64)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, *c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, e: E, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = checked_add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut out = Self::zero();
        for (e, v) in self.terms() {
            out.add_term(e, checked_mul(v, c));
        }
        out
    }

    /// Multiply by the monomial with exponent `e`.
    pub fn shift(&self, e: E) -> Self {
        Self { terms: self.terms.iter().map(|(k, v)| (k.combine(e), *v)).collect() }
    }
}

impl LaurentZ {
    /// The monomial `q^e`.
    pub fn q(e: i32) -> Self {
        Self::monomial(e, 1)
    }
}

impl LaurentZH {
    pub fn qh(q: i32, h: i32) -> Self {
        Self::monomial(QH::new(q, h), 1)
    }

    pub fn q(e: i32) -> Self {
        Self::qh(e, 0)
    }

    pub fn h(e: i32) -> Self {
        Self::qh(0, e)
    }

    /// Substitute `h := -1`.
    pub fn specialize_h(&self) -> LaurentZ {
        let mut out = LaurentZ::zero();
        for (e, c) in self.terms() {
            let sign = if e.h.rem_euclid(2) == 0 { 1 } else { -1 };
            out.add_term(e.q, c * sign);
        }
        out
    }

    /// Smallest and largest power of `h` with a nonzero coefficient.
    pub fn h_range(&self) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|e| e.h);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), h| (lo.min(h), hi.max(h))))
    }

    /// The coefficient of `h^k`, as a polynomial in `q`.
    pub fn h_coeff(&self, k: i32) -> LaurentZ {
        let mut out = LaurentZ::zero();
        for (e, c) in self.terms() {
            if e.h == k {
                out.add_term(e.q, c);
            }
        }
        out
    }
}

impl From<&LaurentZ> for LaurentZH {
    fn from(p: &LaurentZ) -> Self {
        let mut out = LaurentZH::zero();
        for (e, c) in p.terms() {
            out.add_term(QH::new(e, 0), c);
        }
        out
    }
}

impl<E: Exponent> Add for &Laurent<E> {
    type Output = Laurent<E>;
    fn add(self, rhs: Self) -> Laurent<E> {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl<E: Exponent> Sub for &Laurent<E> {
    type Output = Laurent<E>;
    fn sub(self, rhs: Self) -> Laurent<E> {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, checked_mul(c, -1));
        }
        out
    }
}

impl<E: Exponent> Mul for &Laurent<E> {
    type Output = Laurent<E>;
    fn mul(self, rhs: Self) -> Laurent<E> {
        let mut out = Laurent::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1.combine(e2), checked_mul(c1, c2));
            }
        }
        out
    }
}

impl<E: Exponent> Neg for &Laurent<E> {
    type Output = Laurent<E>;
    fn neg(self) -> Laurent<E> {
        self.scale(-1)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl<E: Exponent> $tr for Laurent<E> {
            type Output = Laurent<E>;
            fn $m(self, rhs: Self) -> Laurent<E> {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl<E: Exponent> Neg for Laurent<E> {
    type Output = Laurent<E>;
    fn neg(self) -> Laurent<E> {
        self.scale(-1)
    }
}

impl<E: Exponent> AddAssign<&Laurent<E>> for Laurent<E> {
    fn add_assign(&mut self, rhs: &Laurent<E>) {
        for (e, c) in rhs.terms() {
            self.add_term(e, c);
        }
    }
}

fn fmt_power(var: &str, e: i32) -> Option<String> {
    match e {
        0 => None,
        1 => Some(var.to_string()),
        _ => Some(format!("{var}^{e}")),
    }
}

fn exponent_factors_i32(e: i32) -> Vec<String> {
    fmt_power("q", e).into_iter().collect()
}

fn exponent_factors_qh(e: QH) -> Vec<String> {
    fmt_power("q", e.q).into_iter().chain(fmt_power("h", e.h)).collect()
}

/// Formats one term as (is_negative, magnitude string).
fn fmt_term(factors: Vec<String>, c: i64) -> (bool, String) {
    let mag = c.unsigned_abs();
    let body = if factors.is_empty() {
        mag.to_string()
    } else if mag == 1 {
        factors.join("*")
    } else {
        format!("{mag}*{}", factors.join("*"))
    };
    (c < 0, body)
}

fn join_signed(parts: Vec<(bool, String)>) -> String {
    if parts.is_empty() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (i, (neg, body)) in parts.into_iter().enumerate() {
        match (i, neg) {
            (0, false) => s.push_str(&body),
            (0, true) => {
                s.push('-');
                s.push_str(&body)
            }
            (_, false) => {
                s.push_str(" + ");
                s.push_str(&body)
            }
            (_, true) => {
                s.push_str(" - ");
                s.push_str(&body)
            }
        }
    }
    s
}

/// How a coefficient renders in front of a basis object.
pub trait Coefficient {
    /// `Some((negative, factor))` when the coefficient is a single signed
    /// monomial; the factor is empty for `±1`.
    fn as_signed_monomial(&self) -> Option<(bool, String)>;
}

impl fmt::Display for LaurentZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self.terms().map(|(e, c)| fmt_term(exponent_factors_i32(e), c)).collect();
        write!(f, "{}", join_signed(parts))
    }
}

impl fmt::Display for LaurentZH {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self.terms().map(|(e, c)| fmt_term(exponent_factors_qh(e), c)).collect();
        write!(f, "{}", join_signed(parts))
    }
}

impl<E: Exponent> fmt::Debug for Laurent<E>
where
    Laurent<E>: fmt::Display,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn signed_monomial(factors: Vec<String>, c: i64) -> Option<(bool, String)> {
    if c.unsigned_abs() != 1 {
        return None;
    }
    Some((c < 0, factors.join("*")))
}

impl Coefficient for LaurentZ {
    fn as_signed_monomial(&self) -> Option<(bool, String)> {
        if self.num_terms() != 1 {
            return None;
        }
        let (e, c) = self.terms().next()?;
        signed_monomial(exponent_factors_i32(e), c)
    }
}

impl Coefficient for LaurentZH {
    fn as_signed_monomial(&self) -> Option<(bool, String)> {
        if self.num_terms() != 1 {
            return None;
        }
        let (e, c) = self.terms().next()?;
        signed_monomial(exponent_factors_qh(e), c)
    }
}

impl Serialize for LaurentZ {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.num_terms()))?;
        for (e, c) in self.terms() {
            seq.serialize_element(&(e, c))?;
        }
        seq.end()
    }
}

impl Serialize for LaurentZH {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.num_terms()))?;
        for (e, c) in self.terms() {
            seq.serialize_element(&(e.q, e.h, c))?;
        }
        seq.end()
    }
}

/// A free module over a Laurent polynomial ring with a totally ordered basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FreeModule<K: Ord, E: Exponent> {
    terms: BTreeMap<K, Laurent<E>>,
}

impl<K: Ord, E: Exponent> Default for FreeModule<K, E> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone, E: Exponent> FreeModule<K, E> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(k: K) -> Self {
        Self::term(k, Laurent::one())
    }

    pub fn term(k: K, c: Laurent<E>) -> Self {
        let mut m = Self::zero();
        m.add_term(k, &c);
        m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: &K) -> Laurent<E> {
        self.terms.get(k).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Laurent<E>)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, k: K, c: &Laurent<E>) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Laurent<E>) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.add_term(k.clone(), &(v * c));
        }
        out
    }

    pub fn map_coeffs<F: Exponent>(&self, f: impl Fn(&Laurent<E>) -> Laurent<F>) -> FreeModule<K, F> {
        let mut out = FreeModule::zero();
        for (k, v) in &self.terms {
            out.add_term(k.clone(), &f(v));
        }
        out
    }
}

impl<K: Ord + Clone, E: Exponent> AddAssign<&FreeModule<K, E>> for FreeModule<K, E> {
    fn add_assign(&mut self, rhs: &FreeModule<K, E>) {
        for (k, v) in &rhs.terms {
            self.add_term(k.clone(), v);
        }
    }
}

impl<K: Ord + Clone, E: Exponent> Add for &FreeModule<K, E> {
    type Output = FreeModule<K, E>;
    fn add(self, rhs: Self) -> FreeModule<K, E> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<K: Ord + Clone, E: Exponent> Sub for &FreeModule<K, E> {
    type Output = FreeModule<K, E>;
    fn sub(self, rhs: Self) -> FreeModule<K, E> {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(k.clone(), &-v);
        }
        out
    }
}

impl<K: Ord + Clone + fmt::Display, E: Exponent> fmt::Display for FreeModule<K, E>
where
    Laurent<E>: fmt::Display + Coefficient,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self
            .terms
            .iter()
            .map(|(k, c)| match c.as_signed_monomial() {
                Some((neg, factor)) if factor.is_empty() => (neg, k.to_string()),
                Some((neg, factor)) => (neg, format!("{factor}*{k}")),
                None => (false, format!("({c})*{k}")),
            })
            .collect();
        write!(f, "{}", join_signed(parts))
    }
}

impl<K: Ord + Clone + fmt::Display, E: Exponent> fmt::Debug for FreeModule<K, E>
where
    FreeModule<K, E>: fmt::Display,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<K: Ord + Serialize, E: Exponent> Serialize for FreeModule<K, E>
where
    Laurent<E>: Serialize,
{
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (k, c) in &self.terms {
            seq.serialize_element(&(k, c))?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_of_binomial() {
        let p = &LaurentZH::q(1) + &LaurentZH::h(1);
        let expect = &(&LaurentZH::q(2) + &LaurentZH::qh(1, 1).scale(2)) + &LaurentZH::h(2);
        assert_eq!(&p * &p, expect);
        assert_eq!(&LaurentZH::one() * &p, p);
    }

    #[test]
    fn specialization() {
        assert_eq!(LaurentZH::h(1).specialize_h(), LaurentZ::constant(-1));
        assert_eq!(LaurentZH::h(-1).specialize_h(), LaurentZ::constant(-1));
        assert!((&LaurentZH::one() + &LaurentZH::h(1)).specialize_h().is_zero());
        let p = &LaurentZH::q(-1) + &LaurentZH::h(1);
        assert_eq!(p.specialize_h(), &LaurentZ::q(-1) - &LaurentZ::one());
    }

    #[test]
    fn f2_arithmetic() {
        assert_eq!(F2::ONE + F2::ONE, F2::ZERO);
        assert_eq!(F2::ONE * F2::ZERO, F2::ZERO);
        let mut c: F2Comb<u8> = [1, 2].into_iter().collect();
        c.toggle(1);
        assert_eq!(c, F2Comb::from_term(2));
    }

    #[test]
    fn display() {
        let p = &LaurentZH::h(-1) + &LaurentZH::qh(2, 1).scale(-3);
        assert_eq!(p.to_string(), "h^-1 - 3*q^2*h");
        assert_eq!(LaurentZ::zero().to_string(), "0");
        assert_eq!(LaurentZ::constant(-1).to_string(), "-1");
    }

    #[test]
    #[should_panic(expected = "overflow")]
    fn overflow_is_detected() {
        let p = LaurentZ::constant(i64::MAX);
        let _ = &p * &LaurentZ::constant(2);
    }

    #[test]
    fn json_shape() {
        let p = &LaurentZ::q(2) + &LaurentZ::q(-1).scale(3);
        assert_eq!(serde_json::to_string(&p).unwrap(), "[[-1,3],[2,1]]");
        let p = LaurentZH::qh(1, -1).scale(-2);
        assert_eq!(serde_json::to_string(&p).unwrap(), "[[1,-1,-2]]");
    }
}
