use proptest::prelude::*;

use cliffcat::algebra::{basis_mon_r, AlgebraTag, RAlgebra};
use cliffcat::bimodule::build_t_pair;
use cliffcat::complexes::{cone, tensor_f2, ChainMap, Matrix, RComplex};
use cliffcat::kzero::{higher_mult, m_slices, mult, mult_vertices, KClass, KClassH};
use cliffcat::quiver::{BoxVertex, Vertex};
use cliffcat::rings::{F2Comb, LaurentZ, LaurentZH, QH};

fn laurent_zh() -> impl Strategy<Value = LaurentZH> {
    prop::collection::vec((-3i32..=3, -3i32..=3, -4i64..=4), 0..5).prop_map(|terms| {
        let mut p = LaurentZH::zero();
        for (q, h, c) in terms {
            p.add_term(QH::new(q, h), c);
        }
        p
    })
}

/// `n` together with a vertex that fits in it.
fn n_and_vertices(k: usize) -> impl Strategy<Value = (u32, Vec<Vertex>)> {
    (1u32..=5).prop_flat_map(move |n| (Just(n), prop::collection::vec((0..1u32 << (n + 1)).prop_map(Vertex), k)))
}

fn class(n: u32) -> impl Strategy<Value = KClass> {
    prop::collection::vec((0..1u32 << (n + 1), -2i32..=2, -3i64..=3), 0..4).prop_map(|terms| {
        let mut a = KClass::zero();
        for (v, q, c) in terms {
            a.add_term(Vertex(v), &LaurentZ::monomial(q, c));
        }
        a
    })
}

fn product_class(m: &RComplex, n: &RComplex) -> cliffcat::rings::FreeModule<BoxVertex, i32> {
    let mut out = cliffcat::rings::FreeModule::zero();
    for (x, a) in m.k0_class().iter() {
        for (y, b) in n.k0_class().iter() {
            out.add_term(BoxVertex::new(*x, *y), &(a * b));
        }
    }
    out
}

proptest! {
    #[test]
    fn laurent_ring_axioms(a in laurent_zh(), b in laurent_zh(), c in laurent_zh()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &LaurentZH::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
        prop_assert!((&a + &(-&a)).is_zero());
    }

    #[test]
    fn specialization_is_a_ring_map(a in laurent_zh(), b in laurent_zh()) {
        prop_assert_eq!((&a + &b).specialize_h(), &a.specialize_h() + &b.specialize_h());
        prop_assert_eq!((&a * &b).specialize_h(), &a.specialize_h() * &b.specialize_h());
        prop_assert_eq!(LaurentZH::h(1).specialize_h(), LaurentZ::constant(-1));
    }

    #[test]
    fn empty_vertex_is_the_unit((n, vs) in n_and_vertices(1)) {
        let x = vs[0];
        prop_assert_eq!(mult_vertices(n, Vertex(0), x), KClass::basis(x));
        prop_assert_eq!(mult_vertices(n, x, Vertex(0)), KClass::basis(x));
    }

    #[test]
    fn euler_grading_is_additive((n, vs) in n_and_vertices(2)) {
        let (x, y) = (vs[0], vs[1]);
        for (z, _) in higher_mult(n, x, y).iter() {
            prop_assert_eq!(z.euler(), x.euler() + y.euler());
        }
    }

    #[test]
    fn slices_reassemble_the_higher_product((n, vs) in n_and_vertices(2)) {
        let (x, y) = (vs[0], vs[1]);
        let (pd, slices) = m_slices(n, x, y);
        let mut sum = KClassH::zero();
        for s in &slices {
            if let Some(v) = s.mon {
                sum.add_term(v, &LaurentZH::qh(s.eta, s.k));
            }
        }
        let m = higher_mult(n, x, y);
        prop_assert_eq!(&sum, &m);
        let (lo, hi) = (pd.mu, pd.mu + pd.p() as i32);
        for (_, c) in m.iter() {
            let (a, b) = c.h_range().unwrap();
            prop_assert!(lo <= a && b <= hi, "h powers {}..{} outside {}..{}", a, b, lo, hi);
        }
    }

    #[test]
    fn product_is_associative_and_bilinear((n, a, b, c) in (1u32..=4).prop_flat_map(|n| (Just(n), class(n), class(n), class(n)))) {
        prop_assert_eq!(mult(n, &mult(n, &a, &b), &c), mult(n, &a, &mult(n, &b, &c)));
        prop_assert_eq!(mult(n, &(&a + &b), &c), &mult(n, &a, &c) + &mult(n, &b, &c));
    }

    #[test]
    fn class_is_invariant_under_permutation((n, vs) in n_and_vertices(2), rot in 0usize..8) {
        let c = build_t_pair(n, vs[0], vs[1]).complex;
        let len = c.len();
        let perm: Vec<usize> = (0..len).map(|i| (i + rot) % len.max(1)).rev().collect();
        prop_assert_eq!(c.permuted(&perm).k0_class(), c.k0_class());
    }

    #[test]
    fn cone_class_is_the_difference((n, vs) in n_and_vertices(1), pairs in prop::collection::vec(0u32..5, 0..3), coh in -2i32..=2, q in -3i32..=3) {
        let x = vs[0];
        let w = pairs.iter().fold(x, |w, &s| w.add_pair(s, n).unwrap_or(w));
        let m = basis_mon_r(n, x, w).expect("adding pairs gives a path");
        let src = RComplex::projective(AlgebraTag::R, x, q, coh);
        let tgt = RComplex::projective(AlgebraTag::R, w, q + m.qdeg(n), coh);
        let mut entries = Matrix::new();
        entries.insert((0, 0), F2Comb::from_term(m));
        let f = ChainMap { source: src.clone(), target: tgt.clone(), cohdeg: 0, qdeg: 0, entries };
        let c = cone(&RAlgebra::new(n), &f).unwrap();
        prop_assert_eq!(c.k0_class(), &tgt.k0_class() - &src.k0_class());
    }

    #[test]
    fn tensor_class_is_bilinear((n, vs) in n_and_vertices(4), q in -2i32..=2, coh in -1i32..=1) {
        let m1 = build_t_pair(n, vs[0], vs[1]).complex;
        let m2 = build_t_pair(n, vs[1], vs[2]).complex.shift(q, coh);
        let k = build_t_pair(n, vs[2], vs[3]).complex;
        let lhs = tensor_f2(&m1.direct_sum(&m2), &k).k0_class();
        prop_assert_eq!(&lhs, &(&product_class(&m1, &k) + &product_class(&m2, &k)));
        let rhs = tensor_f2(&k, &m1.direct_sum(&m2)).k0_class();
        prop_assert_eq!(&rhs, &(&product_class(&k, &m1) + &product_class(&k, &m2)));
    }

    #[test]
    fn shifted_class_scales(n in 1u32..=4, x in 0u32..32, q in -3i32..=3, coh in -2i32..=2) {
        let x = Vertex(x & ((1 << (n + 1)) - 1));
        let p = RComplex::projective(AlgebraTag::R, x, q, coh);
        let sign = if coh % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(p.k0_class(), KClass::term(x, LaurentZ::monomial(q, sign)));
    }
}

#[test]
fn higher_product_is_not_associative() {
    for n in 2..=5u32 {
        for s in 0..n - 1 {
            let (a, b) = (Vertex::single(s), Vertex::single(s + 1));
            let aa = KClassH::basis(a);
            let left = cliffcat::kzero::higher_mult_classes(n, &higher_mult(n, a, a), &KClassH::basis(b));
            let right = cliffcat::kzero::higher_mult_classes(n, &aa, &higher_mult(n, a, b));
            assert!(left.is_zero(), "n={n} s={s}: ([s][s])[s+1] = {left}");
            let expect = KClassH::term(
                a,
                &LaurentZH::qh(2 * s as i32 + 1 - n as i32, 0) + &LaurentZH::qh(2 * s as i32 + 1 - n as i32, 1),
            );
            assert_eq!(right, expect, "n={n} s={s}");
            // at h = -1 the two bracketings agree again
            assert!(cliffcat::kzero::specialize(&right).is_zero());
        }
    }
}
