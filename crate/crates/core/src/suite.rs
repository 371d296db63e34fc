//! Invariant sweeps. Every suite reports how many checks it ran and a JSON
//! witness for each failure, so an empty sweep is never mistaken for a pass.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{basis_mon_r, BoxAlgebra, DgAlgebra, MonRR, RAlgebra, ROracle, RRAlgebra, BOX_ALGEBRA_BOUND};
use crate::bimodule::{verify_bimodule, Sweep, TModule};
use crate::catun::{letter_complex, make_e, make_f, square_shape, word_sweep, Workbench};
use crate::complexes::verify_mc;
use crate::error::{Error, Result};
use crate::kzero::{
    clifford_check, higher_mult, higher_mult_classes, iota, m_slices, mult, pair_data, quantum_n, specialize, KClass,
    KClassH, Letter, MultTable,
};
use crate::quiver::{build_gamma, build_gamma_box, check_n, BoxStep, BoxVertex, Vertex};
use crate::rings::{F2Comb, LaurentZ, LaurentZH, QH};

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub check: String,
    pub witness: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub n: u32,
    pub checks: usize,
    pub failures: Vec<Failure>,
    pub wall_ms: u64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Random triples for the associativity sweep when it is not exhaustive.
    pub samples: usize,
    /// Random pairs for the bimodule sweep when it is not exhaustive.
    pub bimodule_samples: usize,
    /// Lifts the default per-suite bounds to the hard limits.
    pub bound_override: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self { seed: 7, samples: 100_000, bimodule_samples: 256, bound_override: false }
    }
}

pub const SUITES: &[&str] = &[
    "quiver",
    "algebra-r",
    "box-d2",
    "h-map",
    "algebra-assoc",
    "assoc",
    "clifford",
    "local",
    "slices",
    "iota",
    "bimodule",
    "tpair-k0",
    "catun",
];

/// `(default, hard)` bounds on `n` for a suite.
pub fn suite_bounds(suite: &str) -> Option<(u32, u32)> {
    Some(match suite {
        "quiver" => (5, 8),
        "algebra-r" => (4, crate::algebra::rn::ORACLE_BOUND),
        "box-d2" | "h-map" | "algebra-assoc" => (3, BOX_ALGEBRA_BOUND),
        "assoc" | "clifford" | "local" | "iota" => (5, 8),
        "slices" => (4, 6),
        "bimodule" | "tpair-k0" => (4, 5),
        "catun" => (5, crate::catun::CATUN_BOUND),
        _ => return None,
    })
}

#[derive(Default)]
struct Tally {
    checks: usize,
    failures: Vec<Failure>,
}

impl Tally {
    fn check(&mut self, name: &str, ok: bool, witness: impl FnOnce() -> Value) {
        self.checks += 1;
        if !ok {
            self.failures.push(Failure { check: name.to_string(), witness: witness() });
        }
    }

    fn merge(mut self, o: Tally) -> Tally {
        self.checks += o.checks;
        self.failures.extend(o.failures);
        self
    }
}

pub fn run_suite(suite: &str, n: u32, opts: &SuiteOptions) -> Result<SuiteReport> {
    let n = check_n(n as i64)?;
    let (default, hard) = suite_bounds(suite).ok_or_else(|| Error::Invalid(format!("unknown suite '{suite}'")))?;
    let bound = if opts.bound_override { hard } else { default };
    if n > bound {
        return Err(Error::BoundExceeded { what: "suite", n, bound });
    }
    let start = Instant::now();
    let tally = match suite {
        "quiver" => quiver_suite(n)?,
        "algebra-r" => algebra_r_suite(n)?,
        "box-d2" => box_d2_suite(&BoxAlgebra::build(n, hard)?),
        "h-map" => h_map_suite(&BoxAlgebra::build(n, hard)?),
        "algebra-assoc" => algebra_assoc_suite(&BoxAlgebra::build(n, hard)?),
        "assoc" => assoc_suite(n, opts),
        "clifford" => {
            let rep = clifford_check(n, 1000, opts.seed);
            let mut t = Tally { checks: rep.identities + rep.random_vectors, failures: Vec::new() };
            t.failures
                .extend(rep.failures.into_iter().map(|f| Failure { check: "clifford".into(), witness: json!(f) }));
            t
        }
        "local" => local_suite(n),
        "slices" => slices_suite(n),
        "iota" => iota_suite(n),
        "bimodule" => bimodule_suite(n, opts),
        "tpair-k0" => tpair_k0_suite(n),
        "catun" => catun_suite(n)?,
        _ => unreachable!("suite names are checked above"),
    };
    Ok(SuiteReport {
        suite: suite.to_string(),
        n,
        checks: tally.checks,
        failures: tally.failures,
        wall_ms: start.elapsed().as_millis() as u64,
    })
}

/// Runs every suite at `n`, or at the suite's bound when that is smaller.
pub fn run_all(n: u32, opts: &SuiteOptions) -> Result<Vec<SuiteReport>> {
    SUITES
        .iter()
        .map(|s| {
            let (default, hard) = suite_bounds(s).expect("listed suite");
            run_suite(s, n.min(if opts.bound_override { hard } else { default }), opts)
        })
        .collect()
}

fn quiver_suite(n: u32) -> Result<Tally> {
    let mut t = Tally::default();
    let q = build_gamma(n as i64)?;
    let verts: Vec<Vertex> = Vertex::all(n).collect();
    t.check("vertex count", q.vertices.len() == 1 << (n + 1), || json!({ "count": q.vertices.len() }));
    let got: BTreeSet<_> = q.arrows().map(|a| (a.source, a.s, a.target)).collect();
    let mut expected = BTreeSet::new();
    for &x in &verts {
        for &y in &verts {
            let diff = y.minus(x);
            if x.is_subset(y) && diff.len() == 2 && diff.max().unwrap() == diff.min().unwrap() + 1 {
                expected.insert((x, diff.min().unwrap(), y));
            }
        }
    }
    t.check(
        "arrows match pair insertion",
        got == expected,
        || json!({ "built": got.len(), "enumerated": expected.len() }),
    );
    for a in q.arrows() {
        t.check("arrow adds two elements", a.target.len() == a.source.len() + 2, || json!(a));
    }
    let comps = q.components();
    let mut seen = BTreeMap::new();
    let mut covered = 0;
    for c in &comps {
        covered += c.len();
        let e = c[0].euler();
        t.check("component has constant grading", c.iter().all(|v| v.euler() == e), || json!(c));
        t.check("gradings separate components", seen.insert(e, c.clone()).is_none(), || json!({ "euler": e }));
    }
    t.check("components cover vertices", covered == verts.len(), || json!({ "covered": covered }));
    if n == 2 {
        let mut listed: Vec<BTreeSet<String>> =
            [vec!["[1]"], vec!["[]", "[1,0]", "[2,1]"], vec!["[0]", "[2]", "[2,1,0]"], vec!["[2,0]"]]
                .iter()
                .map(|c| c.iter().map(|s| s.to_string()).collect())
                .collect();
        let mut found: Vec<BTreeSet<String>> =
            comps.iter().map(|c| c.iter().map(|v| v.to_string()).collect()).collect();
        listed.sort();
        found.sort();
        t.check("components of the n = 2 quiver", found == listed, || json!(found));
    }
    let bq = build_gamma_box(n as i64)?;
    t.check("box vertex count", bq.num_vertices() == 1 << (2 * (n + 1)), || json!({ "count": bq.num_vertices() }));
    for v in BoxVertex::all(n) {
        let arrows = bq.arrows_from(v);
        for s in 0..n.saturating_sub(1) {
            let both = v.x.add_pair(s, n).is_some() && v.y.add_pair(s + 1, n).is_some();
            let has = arrows.iter().any(|a| a.step == BoxStep::d(s));
            t.check("diagonal arrow iff both sides", both == has, || json!({ "vertex": v, "s": s }));
        }
    }
    Ok(t)
}

fn algebra_r_suite(n: u32) -> Result<Tally> {
    let mut t = Tally::default();
    let oracle = ROracle::build(n, crate::algebra::rn::ORACLE_BOUND)?;
    let verts: Vec<Vertex> = Vertex::all(n).collect();
    for &x in &verts {
        for &w in &verts {
            let ours = basis_mon_r(n, x, w).map_or(0, |_| 1);
            t.check(
                "hom dimension",
                ours == oracle.dim(x, w),
                || json!({ "x": x, "w": w, "normal_form": ours, "oracle": oracle.dim(x, w) }),
            );
        }
    }
    for &x in &verts {
        for &w in &verts {
            let Some(a) = basis_mon_r(n, x, w) else { continue };
            for &z in &verts {
                let Some(b) = basis_mon_r(n, w, z) else { continue };
                let ours = crate::algebra::mult_r(&one(&a), &one(&b));
                let theirs = oracle.product(x, &a.steps(), &b.steps());
                let expect: Vec<Vec<u32>> = ours.iter().flat_map(|c| oracle.engine.reduce(x, &c.steps())).collect();
                t.check(
                    "product",
                    ours.len() == 1 && theirs == expect,
                    || json!({ "x": x, "w": w, "z": z, "oracle": theirs }),
                );
            }
        }
    }
    Ok(t)
}

fn box_d2_suite(alg: &BoxAlgebra) -> Tally {
    let mut t = Tally::default();
    let mons = alg.all_monomials();
    for m in &mons {
        let d = alg.diff(m);
        t.check("d squared", alg.diff_elem(&d).is_zero(), || json!({ "monomial": m.to_string() }));
        let ok = d.iter().all(|e| {
            e.src == m.src && e.tgt == m.tgt && e.cohdeg() == m.cohdeg() + 1 && e.qdeg(alg.n) == m.qdeg(alg.n)
        });
        t.check("d has bidegree (1, 0)", ok, || json!({ "monomial": m.to_string() }));
    }
    for ((src, _), space) in alg.engine.built_spaces() {
        for block in space.iter() {
            for p in block.paths() {
                let direct = alg.diff_path(src, p);
                let via_nf = alg.diff_elem(&alg.from_path(src, p).expect("enumerated path"));
                t.check(
                    "d respects relations",
                    direct == via_nf,
                    || json!({ "src": src, "path": p.iter().map(|s| s.to_string()).collect::<Vec<_>>() }),
                );
            }
        }
    }
    for a in &mons {
        for b in mons.iter().filter(|b| b.src == a.tgt) {
            let ab = alg.mul(a, b);
            let mut rhs = alg.mul_elem(&alg.diff(a), &one(b));
            rhs += alg.mul_elem(&one(a), &alg.diff(b));
            t.check("Leibniz", alg.diff_elem(&ab) == rhs, || json!({ "a": a.to_string(), "b": b.to_string() }));
        }
    }
    t
}

fn h_map_suite(alg: &BoxAlgebra) -> Tally {
    let mut t = Tally::default();
    let n = alg.n;
    let rr = RRAlgebra::new(n);
    let coh: BTreeMap<(BoxVertex, BoxVertex, i32), _> =
        alg.cohomology().into_iter().map(|e| ((e.src, e.tgt, e.cohdeg), e)).collect();
    for e in coh.values() {
        if e.cohdeg != 0 {
            t.check("cohomology in degree 0 only", e.dim_h == 0, || json!(e));
        }
    }
    for src in BoxVertex::all(n) {
        for tgt in BoxVertex::all(n) {
            let expect = rr.hom_basis(src, tgt, 0);
            let got = coh.get(&(src, tgt, 0)).map_or(0, |e| e.dim_h);
            t.check(
                "cohomology matches tensor square",
                got == expect.len(),
                || json!({ "src": src, "tgt": tgt, "box": got, "tensor": expect.len() }),
            );
            for m in &expect {
                let lifted = alg.section(m);
                t.check("section", alg.h_map_elem(&lifted) == one(m), || json!({ "monomial": m.to_string() }));
                if let Some(e) = coh.get(&(src, tgt, 0)) {
                    t.check("q-degree preserved", e.qdeg == m.qdeg(n), || json!(e));
                }
            }
        }
    }
    let mons = alg.all_monomials();
    for a in &mons {
        t.check("H kills boundaries", alg.h_map_elem(&alg.diff(a)).is_zero(), || json!({ "monomial": a.to_string() }));
        for b in mons.iter().filter(|b| b.src == a.tgt) {
            let lhs = alg.h_map_elem(&alg.mul(a, b));
            let rhs = rr.mul_elem(&alg.h_map(a), &alg.h_map(b));
            t.check("H multiplicative", lhs == rhs, || json!({ "a": a.to_string(), "b": b.to_string() }));
        }
    }
    t
}

fn assoc_triples<A: DgAlgebra>(alg: &A, name: &str, mons: &[A::M]) -> Tally {
    let mut by_src: BTreeMap<A::V, Vec<&A::M>> = BTreeMap::new();
    for m in mons {
        by_src.entry(alg.source(m)).or_default().push(m);
    }
    let empty = Vec::new();
    mons.par_iter()
        .map(|a| {
            let mut t = Tally::default();
            for b in by_src.get(&alg.target(a)).unwrap_or(&empty) {
                let ab = alg.mul(a, b);
                for c in by_src.get(&alg.target(b)).unwrap_or(&empty) {
                    let lhs = alg.mul_elem(&ab, &one(*c));
                    let rhs = alg.mul_elem(&one(a), &alg.mul(b, c));
                    t.check(name, lhs == rhs, || json!({ "a": a.to_string(), "b": b.to_string(), "c": c.to_string() }));
                }
            }
            t
        })
        .reduce(Tally::default, Tally::merge)
}

fn one<M: Clone + Ord>(m: &M) -> F2Comb<M> {
    F2Comb::from_term(m.clone())
}

fn algebra_assoc_suite(alg: &BoxAlgebra) -> Tally {
    let n = alg.n;
    let r = RAlgebra::new(n);
    let verts: Vec<Vertex> = Vertex::all(n).collect();
    let r_mons: Vec<_> = verts.iter().flat_map(|&x| verts.iter().filter_map(move |&w| basis_mon_r(n, x, w))).collect();
    let rr = RRAlgebra::new(n);
    let rr_mons: Vec<MonRR> = r_mons.iter().flat_map(|&a| r_mons.iter().map(move |&b| MonRR::new(a, b))).collect();
    assoc_triples(&r, "base algebra", &r_mons)
        .merge(assoc_triples(&rr, "tensor square", &rr_mons))
        .merge(assoc_triples(alg, "box algebra", &alg.all_monomials()))
}

fn assoc_suite(n: u32, opts: &SuiteOptions) -> Tally {
    let table = MultTable::new(n);
    let verts: Vec<Vertex> = Vertex::all(n).collect();
    let b = |v: Vertex| KClass::basis(v);
    let triple = |x: Vertex, y: Vertex, z: Vertex| {
        let lhs = table.mult(table.get(x, y), &b(z));
        let rhs = table.mult(&b(x), table.get(y, z));
        (lhs == rhs, lhs, rhs)
    };
    let witness = |x: Vertex, y: Vertex, z: Vertex, l: &KClass, r: &KClass| json!({ "x": x, "y": y, "z": z, "left": l.to_string(), "right": r.to_string() });
    let mut t = if n <= 3 {
        verts
            .par_iter()
            .map(|&x| {
                let mut t = Tally::default();
                for &y in &verts {
                    for &z in &verts {
                        let (ok, l, r) = triple(x, y, z);
                        t.check("associativity", ok, || witness(x, y, z, &l, &r));
                    }
                }
                t
            })
            .reduce(Tally::default, Tally::merge)
    } else {
        let chunks = 64;
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(c as u64));
                let mut t = Tally::default();
                for _ in 0..opts.samples.div_ceil(chunks) {
                    let pick = |rng: &mut ChaCha8Rng| verts[rng.gen_range(0..verts.len())];
                    let (x, y, z) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
                    let (ok, l, r) = triple(x, y, z);
                    t.check("associativity", ok, || witness(x, y, z, &l, &r));
                }
                t
            })
            .reduce(Tally::default, Tally::merge)
    };
    for &x in &verts {
        let e = b(Vertex::EMPTY);
        t.check("unit", table.mult(&e, &b(x)) == b(x) && table.mult(&b(x), &e) == b(x), || json!({ "x": x }));
        for &y in &verts {
            let target = x.euler() + y.euler();
            let ok = table.get(x, y).keys().all(|v| v.euler() == target);
            t.check("Euler grading additive", ok, || json!({ "x": x, "y": y }));
        }
    }
    if n <= 3 {
        for t_el in 0..=n {
            let s = Vertex::single(t_el);
            for &x in &verts {
                for &z in &verts {
                    let (ok, l, r) = triple(x, s, z);
                    t.check("associativity through a singleton", ok, || witness(x, s, z, &l, &r));
                }
            }
        }
    }
    t
}

fn local_suite(n: u32) -> Tally {
    let mut t = Tally::default();
    let v = |i: u32| KClassH::basis(Vertex::single(i));
    let shift = |s: u32| 2 * s as i32 + 1 - n as i32;
    for s in 0..n {
        let inner = higher_mult(n, Vertex::single(s), Vertex::single(s + 1));
        let left = higher_mult_classes(n, &v(s), &inner);
        let right = higher_mult_classes(n, &higher_mult(n, Vertex::single(s), Vertex::single(s)), &v(s + 1));
        let mut coeff = LaurentZH::qh(shift(s), 0);
        coeff.add_term(QH::new(shift(s), 1), 1);
        let expect = KClassH::term(Vertex::single(s), coeff);
        t.check("repeated singleton", left == expect, || json!({ "s": s, "value": left.to_string() }));
        t.check("other bracketing vanishes", right.is_zero(), || json!({ "s": s, "value": right.to_string() }));
        t.check("higher product is not associative", left != right, || json!({ "s": s }));
        t.check("vanishes at h = -1", specialize(&left).is_zero(), || json!({ "s": s }));
        let m = |a: &KClass, b: &KClass| mult(n, a, b);
        let x = |i: u32| KClass::basis(Vertex::single(i));
        t.check("product vanishes", m(&x(s), &m(&x(s), &x(s + 1))).is_zero(), || json!({ "s": s }));
    }
    for s in 1..n {
        let inner = higher_mult(n, Vertex::single(s), Vertex::single(s + 1));
        let left = higher_mult_classes(n, &v(s - 1), &inner);
        let right = higher_mult_classes(n, &higher_mult(n, Vertex::single(s - 1), Vertex::single(s)), &v(s + 1));
        let mut expect = KClassH::term(Vertex::single(s - 1), LaurentZH::q(shift(s)));
        expect.add_term(Vertex::single(s + 1), &LaurentZH::q(shift(s - 1)));
        expect.add_term(Vertex::from_elems(&[s + 1, s, s - 1]), &LaurentZH::h(1));
        t.check("consecutive triple", left == expect, || json!({ "s": s, "value": left.to_string() }));
        t.check(
            "consecutive triple, other bracketing",
            right == expect,
            || json!({ "s": s, "value": right.to_string() }),
        );
        let x = |i: u32| KClass::basis(Vertex::single(i));
        let m = |a: &KClass, b: &KClass| mult(n, a, b);
        t.check("specialization agrees", specialize(&left) == m(&x(s - 1), &m(&x(s), &x(s + 1))), || json!({ "s": s }));
    }
    t
}

fn slices_suite(n: u32) -> Tally {
    let verts: Vec<Vertex> = Vertex::all(n).collect();
    verts
        .par_iter()
        .map(|&x| {
            let mut t = Tally::default();
            for &y in &verts {
                let (pd, slices) = m_slices(n, x, y);
                let mut sum = KClassH::zero();
                for s in &slices {
                    if let Some(v) = s.mon {
                        sum.add_term(v, &LaurentZH::qh(s.eta, s.k));
                    }
                    t.check(
                        "slice degree",
                        s.k == pd.mu + s.resolved.count_ones() as i32,
                        || json!({ "x": x, "y": y, "slice": s.resolved }),
                    );
                }
                let m = higher_mult(n, x, y);
                t.check(
                    "reassembly",
                    sum == m,
                    || json!({ "x": x, "y": y, "sum": sum.to_string(), "product": m.to_string() }),
                );
                let lo = pd.mu;
                let hi = pd.mu + pd.p() as i32;
                let ok = m.iter().all(|(_, c)| c.h_range().is_none_or(|(a, b)| a >= lo && b <= hi));
                t.check("h-support", ok, || json!({ "x": x, "y": y, "range": [lo, hi] }));
                debug_assert_eq!(pair_data(x, y).mu, pd.mu);
            }
            t
        })
        .reduce(Tally::default, Tally::merge)
}

fn iota_suite(n: u32) -> Tally {
    use Letter::*;
    let mut t = Tally::default();
    t.check("EE", iota(n, &[E, E]).is_zero(), || json!(iota(n, &[E, E]).to_string()));
    t.check("FF", iota(n, &[F, F]).is_zero(), || json!(iota(n, &[F, F]).to_string()));
    let sum = &iota(n, &[E, F]) + &iota(n, &[F, E]);
    let expect = KClass::term(Vertex::EMPTY, quantum_n(n));
    t.check("EF + FE", sum == expect, || json!(sum.to_string()));
    let one = KClass::basis(Vertex::EMPTY);
    t.check("q q^-1", iota(n, &[Q, Qinv]) == one && iota(n, &[Qinv, Q]) == one, || json!(null));
    t.check("q central", iota(n, &[Q, E]) == iota(n, &[E, Q]), || json!(null));
    t.check("E object", make_e(n).k0_class() == iota(n, &[E]), || json!(make_e(n).k0_class().to_string()));
    t.check("F object", make_f(n).k0_class() == iota(n, &[F]), || json!(make_f(n).k0_class().to_string()));
    let q1 = KClass::term(Vertex::EMPTY, LaurentZ::q(1));
    t.check("q object", letter_complex(n, Q).k0_class() == q1, || json!(null));
    t
}

fn bimodule_suite(n: u32, opts: &SuiteOptions) -> Tally {
    let sweep =
        if n <= 3 { Sweep::Exhaustive } else { Sweep::Random { samples: opts.bimodule_samples, seed: opts.seed } };
    let rep = verify_bimodule(n, sweep);
    let failures = rep
        .failures
        .iter()
        .map(|f| Failure { check: f.check.to_string(), witness: serde_json::to_value(f).expect("serializable") })
        .collect();
    Tally { checks: rep.total_checks(), failures }
}

fn tpair_k0_suite(n: u32) -> Tally {
    let tm = TModule::new(n);
    let r = RAlgebra::new(n);
    tm.pairs()
        .par_iter()
        .map(|p| {
            let mut t = Tally::default();
            t.check("T is a twisted complex", verify_mc(&r, &p.complex).is_ok(), || json!({ "x": p.x, "y": p.y }));
            let k0 = p.complex.k0_class();
            let m = crate::kzero::mult_vertices(n, p.x, p.y);
            t.check(
                "class of T",
                k0 == m,
                || json!({ "x": p.x, "y": p.y, "class": k0.to_string(), "product": m.to_string() }),
            );
            t
        })
        .reduce(Tally::default, Tally::merge)
}

fn catun_suite(n: u32) -> Result<Tally> {
    use Letter::*;
    let wb = Workbench::new(n)?;
    let mut t = Tally::default();
    let to_tally = |rep: crate::catun::WordSweepReport, name: &str| Tally {
        checks: rep.lifts + rep.rho_calls,
        failures: rep.failures.into_iter().map(|f| Failure { check: name.to_string(), witness: json!(f) }).collect(),
    };
    t = t.merge(to_tally(word_sweep(&wb, &[E, F, Q, Qinv], 3), "words of length 3"));
    t = t.merge(to_tally(word_sweep(&wb, &[E, F], 4), "words of length 4 in E, F"));
    for l in [E, F] {
        let rep = square_shape(&wb, l)?;
        t.check("square shape", rep.passed(), || serde_json::to_value(&rep).expect("serializable"));
    }
    let (e, f) = (make_e(n), make_f(n));
    let ef = wb.rho(&e, &f)?;
    let fe = wb.rho(&f, &e)?;
    let sum = &ef.k0_class() + &fe.k0_class();
    t.check("EF + FE", sum == KClass::term(Vertex::EMPTY, quantum_n(n)), || json!(sum.to_string()));
    for (name, m) in [("E", &e), ("F", &f), ("EF", &ef), ("FE", &fe), ("q", &letter_complex(n, Q))] {
        t.check("unit law", wb.unit_law_holds(m)?, || json!(name));
    }
    Ok(t)
}
