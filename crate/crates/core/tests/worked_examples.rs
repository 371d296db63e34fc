//! Small hand-checkable values.

use cliffcat::algebra::{basis_mon_r, AlgebraTag, BoxAlgebra, MonR, MonRR};
use cliffcat::bimodule::build_t_pair;
use cliffcat::catun::{Word, Workbench};
use cliffcat::complexes::RComplex;
use cliffcat::kzero::{
    beta, glue, higher_mult, iota, m_slices, mult_vertices, pair_data, quantum_n, KClass, KClassH, Letter,
};
use cliffcat::quiver::{build_gamma, build_gamma_box, BoxStep, BoxVertex, Vertex};
use cliffcat::rings::{F2Comb, LaurentZ, LaurentZH};

fn v(s: &str) -> Vertex {
    s.parse().unwrap()
}

fn bv(x: &str, y: &str) -> BoxVertex {
    BoxVertex::new(v(x), v(y))
}

fn kh(terms: &[(&str, i32, i32)]) -> KClassH {
    let mut a = KClassH::zero();
    for &(x, q, h) in terms {
        a.add_term(v(x), &LaurentZH::qh(q, h));
    }
    a
}

fn k(terms: &[(&str, i32, i64)]) -> KClass {
    let mut a = KClass::zero();
    for &(x, q, c) in terms {
        a.add_term(v(x), &LaurentZ::monomial(q, c));
    }
    a
}

#[test]
fn quiver_arrows_at_n2() {
    let q = build_gamma(2).unwrap();
    let out: Vec<(u32, Vertex)> = q.arrows_from(v("[]")).iter().map(|a| (a.s, a.target)).collect();
    assert_eq!(out.len(), 2);
    assert!(out.contains(&(0, v("[1,0]"))) && out.contains(&(1, v("[2,1]"))));
    assert!(q.arrows_from(v("[2,0]")).is_empty());
    assert_eq!((v("[]").euler(), v("[1]").euler(), v("[2,0]").euler()), (0, -1, 2));

    let q1 = build_gamma(1).unwrap();
    let mut sizes: Vec<(i32, usize)> = q1.components().iter().map(|c| (c[0].euler(), c.len())).collect();
    sizes.sort();
    assert_eq!(sizes, [(-1, 1), (0, 2), (1, 1)]);
}

#[test]
fn box_quiver_diagonal_arrows() {
    let q = build_gamma_box(2).unwrap();
    assert!(q.arrows_from(bv("[]", "[]")).iter().any(|a| a.step == BoxStep::d(0) && a.target == bv("[1,0]", "[2,1]")));
    for y in Vertex::all(2) {
        assert!(q.arrows_from(BoxVertex::new(v("[2,0]"), y)).iter().all(|a| a.step != BoxStep::d(1)));
    }
}

#[test]
fn base_algebra_monomials() {
    let m = basis_mon_r(2, v("[]"), v("[1,0]")).unwrap();
    assert_eq!(m.qdeg(2), 1);
    assert!(basis_mon_r(2, v("[]"), v("[2,0]")).is_none());
    let long = basis_mon_r(3, v("[]"), v("[3,2,1,0]")).unwrap();
    // pairs {1,0} and {3,2} carry q-degrees 2 and -2
    assert_eq!(long.qdeg(3), 0);
    assert_eq!(MonR::idempotent(v("[1]")).qdeg(2), 0);
}

#[test]
fn box_generator_and_its_differential() {
    let n = 2;
    let alg = BoxAlgebra::lazy(n).unwrap();
    let (src, tgt) = (bv("[]", "[]"), bv("[1,0]", "[2,1]"));
    assert_eq!(alg.block(src, tgt, -1).map_or(0, |b| b.dim()), 1);
    assert!(alg.cohomology_representatives(src, tgt, -1).is_empty());

    let d = alg.diff_path(src, &[BoxStep::d(0)]);
    let mut expect = alg.from_path(src, &[BoxStep::x(0), BoxStep::y(1)]).unwrap();
    expect += alg.from_path(src, &[BoxStep::y(1), BoxStep::x(0)]).unwrap();
    assert_eq!(d, expect);
    assert!(!d.is_zero());

    assert!(alg.diff_path(src, &[]).is_zero());
    assert!(alg.diff_path(src, &[BoxStep::y(0)]).is_zero());

    let y0 = alg.generator(src, BoxStep::y(0)).unwrap();
    let h = alg.h_map(&y0);
    let e = MonRR::new(MonR::idempotent(v("[]")), basis_mon_r(n, v("[]"), v("[1,0]")).unwrap());
    assert_eq!(h, F2Comb::from_term(e));
    assert!(alg.h_map(&alg.generator(src, BoxStep::d(0)).unwrap()).is_zero());
}

#[test]
fn gluing_and_pair_data() {
    assert_eq!(glue(&[v("[2,1]"), v("[1,0]")]), None);
    assert_eq!(glue(&[v("[2]"), v("[1,0]")]), Some(v("[2,1,0]")));

    let pd = pair_data(v("[0]"), v("[1]"));
    assert_eq!((pd.mu, pd.pairs.clone()), (0, vec![0]));
    let pd = pair_data(v("[0]"), v("[2]"));
    assert_eq!((pd.mu, pd.p(), pd.alpha[0]), (-1, 0, Some(v("[2,0]"))));
    let pd = pair_data(v("[1,0]"), v("[2,1]"));
    assert_eq!((pd.mu, pd.pairs.clone()), (-1, vec![1, 0]));
}

#[test]
fn pair_resolutions() {
    assert_eq!(beta(2, 0).unwrap(), kh(&[("[]", -1, 0), ("[1,0]", 0, 1)]));
    assert_eq!(beta(2, 1).unwrap(), kh(&[("[]", 1, 0), ("[2,1]", 0, 1)]));
    assert!(beta(2, 2).is_err());
}

#[test]
fn special_cases_of_the_higher_product() {
    for n in 2..=5u32 {
        for a in 0..=n {
            for b in 0..=n {
                let m = higher_mult(n, Vertex::single(a), Vertex::single(b));
                let pair = Vertex::single(a).union(Vertex::single(b));
                let expect = if a > b {
                    KClassH::basis(pair)
                } else if a == b {
                    KClassH::zero()
                } else if a + 1 < b {
                    KClassH::term(pair, LaurentZH::h(if (a + b + 1) % 2 == 0 { 1 } else { -1 }))
                } else {
                    let mut e = KClassH::term(Vertex(0), LaurentZH::q(2 * a as i32 + 1 - n as i32));
                    e.add_term(pair, &LaurentZH::h(1));
                    e
                };
                assert_eq!(m, expect, "n={n} [{a}][{b}]");
            }
        }
    }
    assert_eq!(higher_mult(2, v("[1,0]"), v("[2,1]")), kh(&[("[]", 0, -1), ("[1,0]", 1, 0), ("[2,1]", -1, 0)]));
}

#[test]
fn consecutive_triple() {
    for n in 2..=5u32 {
        for s in 1..n {
            let inner = higher_mult(n, Vertex::single(s), Vertex::single(s + 1));
            let got = cliffcat::kzero::higher_mult_classes(n, &KClassH::basis(Vertex::single(s - 1)), &inner);
            let mut e = KClassH::term(Vertex::single(s - 1), LaurentZH::q(2 * s as i32 + 1 - n as i32));
            e.add_term(Vertex::single(s + 1), &LaurentZH::q(2 * s as i32 - 1 - n as i32));
            e.add_term(Vertex::from_elems(&[s + 1, s, s - 1]), &LaurentZH::h(1));
            assert_eq!(got, e, "n={n} s={s}");
        }
    }
}

#[test]
fn specialized_products() {
    for x in Vertex::all(3) {
        assert_eq!(mult_vertices(3, Vertex(0), x), KClass::basis(x));
    }
    assert_eq!(mult_vertices(2, v("[0]"), v("[1]")), k(&[("[]", -1, 1), ("[1,0]", 0, -1)]));
    for n in 2..=5 {
        for s in 0..n {
            let inner = mult_vertices(n, Vertex::single(s), Vertex::single(s + 1));
            assert!(cliffcat::kzero::mult(n, &KClass::basis(Vertex::single(s)), &inner).is_zero());
        }
    }
    let x = |i| KClass::basis(Vertex::single(i));
    let anti = |n, i, j| &cliffcat::kzero::mult(n, &x(i), &x(j)) + &cliffcat::kzero::mult(n, &x(j), &x(i));
    assert_eq!(anti(2, 0, 1), k(&[("[]", -1, 1)]));
    assert!(anti(3, 0, 2).is_zero());
}

#[test]
fn word_classes() {
    for n in 1..=5 {
        assert!(iota(n, &[Letter::E, Letter::E]).is_zero());
        let ef = &iota(n, &[Letter::E, Letter::F]) + &iota(n, &[Letter::F, Letter::E]);
        assert_eq!(ef, KClass::term(Vertex(0), quantum_n(n)));
    }
    let q3 = quantum_n(3);
    assert_eq!(q3, &(&LaurentZ::q(2) + &LaurentZ::q(0)) + &LaurentZ::q(-2));
}

#[test]
fn slice_listings() {
    let (_, s) = m_slices(2, v("[0]"), v("[1]"));
    let got: Vec<(i32, i32, Option<Vertex>)> = s.iter().map(|s| (s.k, s.eta, s.mon)).collect();
    assert_eq!(got, [(0, -1, Some(v("[]"))), (1, 0, Some(v("[1,0]")))]);

    let (_, s) = m_slices(2, v("[1,0]"), v("[2,1]"));
    let mut got: Vec<(i32, i32, Option<Vertex>)> = s.iter().map(|s| (s.k, s.eta, s.mon)).collect();
    got.sort();
    assert_eq!(got, [(-1, 0, Some(v("[]"))), (0, -1, Some(v("[2,1]"))), (0, 1, Some(v("[1,0]"))), (1, 0, None)]);
}

#[test]
fn classes_of_complexes() {
    let p = RComplex::projective(AlgebraTag::R, v("[1]"), 2, 1);
    assert_eq!(p.k0_class(), k(&[("[1]", 2, -1)]));
    let t = build_t_pair(2, v("[0]"), v("[1]"));
    assert_eq!(t.complex.k0_class(), k(&[("[]", -1, 1), ("[1,0]", 0, -1)]));

    let wb = Workbench::new(3).unwrap();
    let ee = wb.lift_word(&Word::parse("EE", None).unwrap()).unwrap();
    assert!(ee.k0_class().is_zero());
    assert!(!ee.is_empty());
}
