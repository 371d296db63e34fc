//! The acceptance gate: every criterion runs at its stated scale and prints
//! one PASS/FAIL line. The test fails if any criterion fails.

use std::io::Write;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cliffcat::bimodule::build_t_pair;
use cliffcat::catun::{square_shape, word_sweep, Workbench};
use cliffcat::kzero::{clifford_check, mult_vertices, KClass, Letter, MultTable};
use cliffcat::quiver::{build_gamma, Vertex};
use cliffcat::rings::LaurentZ;
use cliffcat::suite::{run_suite, SuiteOptions};

type Criterion = (&'static str, Duration, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { ok: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { ok: false, detail: detail.into() }
}

fn v(s: &str) -> Vertex {
    s.parse().unwrap()
}

/// Runs `suite` for each n and sums the checks; the first failure wins.
fn suites(suite: &str, ns: impl IntoIterator<Item = u32>) -> Outcome {
    let opts = SuiteOptions::default();
    let mut checks = 0;
    for n in ns {
        let r = run_suite(suite, n, &opts).unwrap();
        checks += r.checks;
        if let Some(f) = r.failures.first() {
            return fail(format!("{suite} n={n}: {} {}", f.check, f.witness));
        }
        if r.checks == 0 {
            return fail(format!("{suite} n={n} ran no checks"));
        }
    }
    pass(format!("{checks} checks"))
}

fn c1_quiver() -> Outcome {
    let q = build_gamma(2).unwrap();
    if q.vertices.len() != 8 {
        return fail(format!("{} vertices", q.vertices.len()));
    }
    let mut comps: Vec<(i32, Vec<Vertex>)> = q
        .components()
        .into_iter()
        .map(|mut c| {
            c.sort();
            (c[0].euler(), c)
        })
        .collect();
    comps.sort();
    let expect = [
        (-1, vec![v("[1]")]),
        (0, vec![v("[]"), v("[1,0]"), v("[2,1]")]),
        (1, vec![v("[0]"), v("[2]"), v("[2,1,0]")]),
        (2, vec![v("[2,0]")]),
    ];
    let expect: Vec<(i32, Vec<Vertex>)> = expect
        .into_iter()
        .map(|(e, mut c)| {
            c.sort();
            (e, c)
        })
        .collect();
    if comps != expect {
        return fail(format!("components {comps:?}"));
    }
    if comps.iter().any(|(e, c)| c.iter().any(|x| x.euler() != *e)) {
        return fail("euler grading not constant on a component");
    }
    pass("8 vertices, components of sizes 1,3,3,1")
}

fn c2_clifford() -> Outcome {
    let mut identities = 0;
    for n in 1..=5u32 {
        let r = clifford_check(n, 1000, 11 + n as u64);
        if let Some(f) = r.failures.first() {
            return fail(format!("n={n}: {f}"));
        }
        if r.random_vectors != 1000 {
            return fail(format!("n={n}: {} random vectors", r.random_vectors));
        }
        identities += r.identities;
        // the relations again, straight from the vertex products
        for i in 0..=n {
            let xi = Vertex::single(i);
            if !mult_vertices(n, xi, xi).is_zero() {
                return fail(format!("n={n}: X{i}^2 != 0"));
            }
            for j in i + 1..=n {
                let xj = Vertex::single(j);
                let anti = &mult_vertices(n, xi, xj) + &mult_vertices(n, xj, xi);
                let expect = if j == i + 1 {
                    KClass::term(Vertex(0), LaurentZ::q(2 * i as i32 + 1 - n as i32))
                } else {
                    KClass::zero()
                };
                if anti != expect {
                    return fail(format!("n={n}: X{i}X{j} + X{j}X{i} = {anti}"));
                }
            }
        }
    }
    pass(format!("{identities} relations, 1000 random vectors for each n"))
}

fn c3_assoc() -> Outcome {
    let mut count = 0usize;
    let check = |table: &MultTable, x: Vertex, y: Vertex, z: Vertex| {
        let left = table.mult(table.get(x, y), &KClass::basis(z));
        let right = table.mult(&KClass::basis(x), table.get(y, z));
        left == right
    };
    for n in 1..=3u32 {
        let table = MultTable::new(n);
        let all: Vec<Vertex> = Vertex::all(n).collect();
        for &x in &all {
            for &y in &all {
                for &z in &all {
                    count += 1;
                    if !check(&table, x, y, z) {
                        return fail(format!("n={n}: ({x}{y}){z} != {x}({y}{z})"));
                    }
                }
            }
        }
    }
    for n in [4u32, 5] {
        let table = MultTable::new(n);
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + n as u64);
        let mut pick = || Vertex(rng.gen_range(0..1u32 << (n + 1)));
        for _ in 0..100_000 {
            let (x, y, z) = (pick(), pick(), pick());
            count += 1;
            if !check(&table, x, y, z) {
                return fail(format!("n={n}: ({x}{y}){z} != {x}({y}{z})"));
            }
        }
    }
    pass(format!("{count} triples"))
}

fn c9_words() -> Outcome {
    let mut lifts = 0;
    let mut rhos = 0;
    for n in 1..=3u32 {
        let wb = Workbench::new(n).unwrap();
        let r = word_sweep(&wb, &[Letter::E, Letter::F, Letter::Q, Letter::Qinv], 3);
        if let Some(f) = r.failures.first() {
            return fail(format!("n={n}: {f}"));
        }
        lifts += r.lifts;
        rhos += r.rho_calls;
    }
    pass(format!("{lifts} word lifts, {rhos} products"))
}

fn c8_tpair() -> Outcome {
    let mut pairs = 0;
    for n in 1..=4u32 {
        for x in Vertex::all(n) {
            for y in Vertex::all(n) {
                pairs += 1;
                let t = build_t_pair(n, x, y);
                if t.complex.k0_class() != mult_vertices(n, x, y) {
                    return fail(format!("n={n}: class of T({x},{y}) is {}", t.complex.k0_class()));
                }
            }
        }
    }
    pass(format!("{pairs} pairs"))
}

fn c10_shape() -> Outcome {
    let mut baseline = Vec::new();
    for n in 1..=5u32 {
        let wb = Workbench::new(n).unwrap();
        for l in [Letter::E, Letter::F] {
            let r = square_shape(&wb, l).unwrap();
            if !r.passed() {
                return fail(format!("n={n} {l}{l}: {r:?}"));
            }
            // regression baseline: every q-shift is zero
            if r.summands.iter().any(|s| s.qshift != 0) {
                return fail(format!("n={n} {l}{l}: q-shifts moved from the baseline"));
            }
            baseline.push(r.summands.len());
        }
    }
    pass(format!("summand counts {baseline:?}"))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 11] = [
        ("C1 quiver structure at n = 2", Duration::from_secs(1), c1_quiver),
        ("C2 Clifford presentation, n <= 5", Duration::from_secs(5), c2_clifford),
        ("C3 associativity of the product", Duration::from_secs(60), c3_assoc),
        ("C4 local identities of the higher product, n <= 5", Duration::from_secs(1), || suites("local", 1..=5)),
        ("C5 d^2 = 0 on the box algebra, n <= 3", Duration::from_secs(60), || suites("box-d2", 1..=3)),
        ("C6 formality of the box algebra, n <= 3", Duration::from_secs(120), || suites("h-map", 1..=3)),
        ("C7 bimodule axioms, n <= 4", Duration::from_secs(300), || suites("bimodule", 1..=4)),
        ("C8 class of T(x,y) equals the product, n <= 4", Duration::from_secs(60), c8_tpair),
        ("C9 word lifts agree with the product, n <= 3", Duration::from_secs(300), c9_words),
        ("C10 shape of EE and FF, n <= 5", Duration::from_secs(30), c10_shape),
        ("C11 normal form agrees with path quotient, n <= 4", Duration::from_secs(60), || suites("algebra-r", 1..=4)),
    ];
    let mut failed = Vec::new();
    std::io::stdout().write_all(b"\n").unwrap();
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let mut out = run();
        let took = start.elapsed();
        if out.ok && took > limit {
            out = fail(format!("{} but took {took:.2?}, limit {limit:?}", out.detail));
        }
        // written past the test harness capture so the lines show up in a plain `cargo test`
        let line = format!("{} {name}: {} ({took:.2?})\n", if out.ok { "PASS" } else { "FAIL" }, out.detail);
        std::io::stdout().write_all(line.as_bytes()).unwrap();
        if !out.ok {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
