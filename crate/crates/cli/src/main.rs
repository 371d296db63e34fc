use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cliffcat::algebra::{basis_mon_r, BoxAlgebra, DgAlgebra, RAlgebra, RRAlgebra, BOX_ALGEBRA_BOUND};
use cliffcat::bimodule::build_t_pair;
use cliffcat::catun::{square_shape, Word, Workbench};
use cliffcat::complexes::{verify_mc, ProjComplex};
use cliffcat::json::{complex_to_json, parse_complex, AnyComplex};
use cliffcat::kzero::{higher_mult, mult_vertices, Letter};
use cliffcat::quiver::{build_gamma, build_gamma_box, BoxVertex, Vertex, BOX_QUIVER_BOUND, QUIVER_BOUND};
use cliffcat::suite::{run_all, run_suite, suite_bounds, SuiteOptions, SuiteReport, SUITES};
use cliffcat::Error;

/// `println!` that stops quietly when stdout is closed early, e.g. by `head`.
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

#[derive(Parser)]
#[command(name = "cliffcat", version, about = "Computations around a categorified Clifford-type algebra")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Raise per-command bounds on n to their hard limits.
    #[arg(long, global = true)]
    bound_override: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    R,
    Rr,
    Box,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgebraCheck {
    D2,
    HMap,
    Assoc,
}

#[derive(Subcommand)]
enum Cmd {
    /// The base quiver, or the box quiver with --box.
    Quiver {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long = "box")]
        boxed: bool,
    },
    /// Hom-space dimensions of an algebra, or one of its invariant suites.
    Algebra {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, value_enum, default_value = "r")]
        which: Which,
        #[arg(long)]
        dims: bool,
        #[arg(long, value_enum)]
        verify: Option<AlgebraCheck>,
    },
    /// Product of two vertices; --keep-h prints the higher product.
    Multiply {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        keep_h: bool,
    },
    /// The twisted complex T(x, y).
    Bimodule {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, num_args = 2, value_names = ["X", "Y"])]
        pair: Vec<String>,
    },
    /// Check or classify a complex stored as JSON.
    Complex {
        #[arg(long, value_name = "FILE", conflicts_with = "k0", required_unless_present = "k0")]
        verify: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        k0: Option<PathBuf>,
    },
    /// Lift a word in 1 q Q E F (Q is q^-1) to a complex.
    Lift {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long)]
        word: String,
        /// Association tree such as "((..).)"; defaults to left to right.
        #[arg(long)]
        assoc: Option<String>,
    },
    /// Run an invariant suite, or "all".
    Verify {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, default_value = "all")]
        suite: String,
        /// Include wall times in JSON output.
        #[arg(long)]
        timings: bool,
    },
    /// Write every table and report for one n into a directory.
    ExportAll {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, default_value = "export")]
        out: PathBuf,
    },
}

enum Outcome {
    Pass,
    Fail,
}

/// Errors that are the caller's fault exit with 2.
struct Usage(anyhow::Error);

fn usage(e: impl Into<anyhow::Error>) -> Usage {
    Usage(e.into())
}

fn classify(e: Error) -> anyhow::Error {
    anyhow!(e)
}

fn bounded(n: i64, default: u32, hard: u32, over: bool) -> Result<u32, Usage> {
    let n = cliffcat::quiver::check_n(n).map_err(usage)?;
    let bound = if over { hard } else { default };
    if n > bound {
        return Err(usage(Error::BoundExceeded { what: "this command", n, bound }));
    }
    Ok(n)
}

fn print_json(v: &Value) {
    out!("{}", serde_json::to_string_pretty(v).expect("json values serialize"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Ok(Outcome::Pass)) => ExitCode::SUCCESS,
        Ok(Ok(Outcome::Fail)) => ExitCode::from(1),
        Ok(Err(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<anyhow::Result<Outcome>, Usage> {
    let over = cli.bound_override;
    match &cli.cmd {
        Cmd::Quiver { n, boxed } => {
            let n = bounded(*n, if *boxed { BOX_QUIVER_BOUND } else { QUIVER_BOUND }, QUIVER_BOUND, over)?;
            if *boxed && n > BOX_QUIVER_BOUND {
                return Err(usage(Error::BoundExceeded { what: "box quiver", n, bound: BOX_QUIVER_BOUND }));
            }
            let v = if *boxed { box_quiver_json(n) } else { quiver_json(n) };
            if cli.json {
                print_json(&v);
            } else {
                print_quiver_text(&v, *boxed);
            }
            Ok(Ok(Outcome::Pass))
        }
        Cmd::Algebra { n, which, dims, verify } => {
            if let Some(check) = verify {
                let suite = match check {
                    AlgebraCheck::D2 => "box-d2",
                    AlgebraCheck::HMap => "h-map",
                    AlgebraCheck::Assoc => "algebra-assoc",
                };
                return verify_cmd(cli, *n, suite, false);
            }
            let (default, hard) = match which {
                Which::Box => (BOX_ALGEBRA_BOUND, BOX_ALGEBRA_BOUND + 1),
                _ => (8, 10),
            };
            let n = bounded(*n, default, hard, over)?;
            let rows = algebra_dims(n, *which);
            if cli.json {
                print_json(&json!({ "n": n, "algebra": which_name(*which), "dims": rows }));
            } else {
                let nonzero = rows.len();
                let total: u64 = rows.iter().map(|r| r["dim"].as_u64().unwrap_or(0)).sum();
                out!("{} algebra, n = {n}: {nonzero} nonzero blocks, total dimension {total}", which_name(*which));
                if *dims {
                    for r in &rows {
                        out!(
                            "{} -> {}  cohdeg {}  qdeg {}  dim {}",
                            r["src_text"].as_str().unwrap_or(""),
                            r["tgt_text"].as_str().unwrap_or(""),
                            r["cohdeg"],
                            r["qdeg"],
                            r["dim"]
                        );
                    }
                }
            }
            Ok(Ok(Outcome::Pass))
        }
        Cmd::Multiply { n, x, y, keep_h } => {
            let n = cliffcat::quiver::check_n(*n).map_err(usage)?;
            let x = Vertex::parse(x, n).map_err(usage)?;
            let y = Vertex::parse(y, n).map_err(usage)?;
            if *keep_h {
                let m = higher_mult(n, x, y);
                if cli.json {
                    print_json(&json!({ "n": n, "x": x, "y": y, "higher": true, "value": m, "text": m.to_string() }));
                } else {
                    out!("{m}");
                }
            } else {
                let m = mult_vertices(n, x, y);
                if cli.json {
                    print_json(&json!({ "n": n, "x": x, "y": y, "higher": false, "value": m, "text": m.to_string() }));
                } else {
                    out!("{m}");
                }
            }
            Ok(Ok(Outcome::Pass))
        }
        Cmd::Bimodule { n, pair } => {
            let n = cliffcat::quiver::check_n(*n).map_err(usage)?;
            let x = Vertex::parse(&pair[0], n).map_err(usage)?;
            let y = Vertex::parse(&pair[1], n).map_err(usage)?;
            let t = build_t_pair(n, x, y);
            let valid = verify_mc(&RAlgebra::new(n), &t.complex);
            if cli.json {
                let mut v = complex_to_json(n, &t.complex);
                v["pair"] = json!([x, y]);
                v["k0"] = json!(t.complex.k0_class());
                v["valid"] = json!(valid.is_ok());
                print_json(&v);
            } else {
                out!("T({x}, {y}) over n = {n}");
                print_complex_text(&t.complex);
                out!("class: {}", t.complex.k0_class());
                if let Err(w) = &valid {
                    out!("not a twisted complex: {w}");
                }
            }
            Ok(Ok(if valid.is_ok() { Outcome::Pass } else { Outcome::Fail }))
        }
        Cmd::Complex { verify, k0 } => {
            let path = verify.as_ref().or(k0.as_ref()).expect("clap requires one of the two");
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display())).map_err(usage)?;
            let parsed = parse_complex(&text).map_err(usage)?;
            if verify.is_some() {
                let res = match &parsed.complex {
                    AnyComplex::R(c) => verify_mc(&RAlgebra::new(parsed.n), c),
                    AnyComplex::RR(c) => verify_mc(&RRAlgebra::new(parsed.n), c),
                    AnyComplex::Box(alg, c) => verify_mc(alg.as_ref(), c),
                };
                if cli.json {
                    print_json(&json!({ "valid": res.is_ok(), "witness": res.as_ref().err() }));
                } else {
                    match &res {
                        Ok(()) => out!("valid"),
                        Err(w) => out!("invalid: {w}"),
                    }
                }
                Ok(Ok(if res.is_ok() { Outcome::Pass } else { Outcome::Fail }))
            } else {
                let class = match &parsed.complex {
                    AnyComplex::R(c) => c.k0_class().to_string(),
                    AnyComplex::RR(c) => c.k0_class().to_string(),
                    AnyComplex::Box(_, c) => c.k0_class().to_string(),
                };
                let value = match &parsed.complex {
                    AnyComplex::R(c) => json!(c.k0_class()),
                    AnyComplex::RR(c) => json!(c.k0_class()),
                    AnyComplex::Box(_, c) => json!(c.k0_class()),
                };
                if cli.json {
                    print_json(&json!({ "k0": value, "text": class }));
                } else {
                    out!("{class}");
                }
                Ok(Ok(Outcome::Pass))
            }
        }
        Cmd::Lift { n, word, assoc } => {
            let n = bounded(*n, cliffcat::catun::CATUN_BOUND, cliffcat::catun::CATUN_BOUND, over)?;
            let w = Word::parse(word, assoc.as_deref()).map_err(usage)?;
            let wb = Workbench::new(n).map_err(usage)?;
            let c = match wb.lift_word(&w) {
                Ok(c) => c,
                Err(e) => return Ok(Err(classify(e))),
            };
            let letters: Vec<Letter> = w.letters.clone();
            let expect = cliffcat::kzero::iota(n, &letters);
            let agrees = c.k0_class() == expect;
            if cli.json {
                let mut v = complex_to_json(n, &c);
                v["word"] = json!(word);
                v["assoc"] = json!(w.assoc.to_string());
                v["k0"] = json!(c.k0_class());
                v["k0_matches_word"] = json!(agrees);
                print_json(&v);
            } else {
                out!("{w} over n = {n}");
                print_complex_text(&c);
                out!("class: {}", c.k0_class());
                out!("class of the word: {expect}");
            }
            Ok(Ok(if agrees { Outcome::Pass } else { Outcome::Fail }))
        }
        Cmd::Verify { n, suite, timings } => verify_cmd(cli, *n, suite, *timings),
        Cmd::ExportAll { n, out } => {
            let n = bounded(*n, 4, 5, over)?;
            Ok(export_all(cli, n, out))
        }
    }
}

fn options(cli: &Cli) -> SuiteOptions {
    SuiteOptions { seed: cli.seed, bound_override: cli.bound_override, ..Default::default() }
}

fn report_json(r: &SuiteReport, timings: bool) -> Value {
    let mut v = serde_json::to_value(r).expect("reports serialize");
    if !timings {
        v.as_object_mut().expect("report is an object").remove("wall_ms");
    }
    v["passed"] = json!(r.passed());
    v
}

fn verify_cmd(cli: &Cli, n: i64, suite: &str, timings: bool) -> Result<anyhow::Result<Outcome>, Usage> {
    let n = cliffcat::quiver::check_n(n).map_err(usage)?;
    let opts = options(cli);
    let reports = if suite == "all" {
        run_all(n, &opts).map_err(usage)?
    } else {
        if suite_bounds(suite).is_none() {
            return Err(usage(anyhow!("unknown suite '{suite}'; expected one of {} or all", SUITES.join(", "))));
        }
        vec![run_suite(suite, n, &opts).map_err(usage)?]
    };
    let passed = reports.iter().all(SuiteReport::passed);
    if cli.json {
        let list: Vec<Value> = reports.iter().map(|r| report_json(r, timings)).collect();
        print_json(&json!({ "passed": passed, "reports": list }));
    } else {
        for r in &reports {
            out!(
                "{:<14} n={} checks={:<8} failures={:<4} {:>6} ms  {}",
                r.suite,
                r.n,
                r.checks,
                r.failures.len(),
                r.wall_ms,
                if r.passed() { "PASS" } else { "FAIL" }
            );
            for f in r.failures.iter().take(5) {
                out!("    {}: {}", f.check, f.witness);
            }
        }
    }
    Ok(Ok(if passed { Outcome::Pass } else { Outcome::Fail }))
}

fn quiver_json(n: u32) -> Value {
    let q = build_gamma(n as i64).expect("n checked");
    let vertices: Vec<Value> = q.vertices.iter().map(|v| json!({ "vertex": v, "euler": v.euler() })).collect();
    let arrows: Vec<Value> = q.arrows().map(|a| json!({ "source": a.source, "s": a.s, "target": a.target })).collect();
    let mut comps: Vec<Vec<Vertex>> = q.components();
    for c in &mut comps {
        c.sort();
    }
    comps.sort_by_key(|c| c[0].euler());
    let components: Vec<Value> = comps.iter().map(|c| json!({ "euler": c[0].euler(), "vertices": c })).collect();
    json!({ "n": n, "vertices": vertices, "arrows": arrows, "components": components })
}

fn box_quiver_json(n: u32) -> Value {
    let q = build_gamma_box(n as i64).expect("n checked");
    let vertices: Vec<&BoxVertex> = q.vertices().collect();
    let arrows: Vec<Value> =
        q.arrows().map(|a| json!({ "source": a.source, "step": a.step, "target": a.target })).collect();
    json!({ "n": n, "vertices": vertices, "arrows": arrows })
}

fn print_quiver_text(v: &Value, boxed: bool) {
    let count = |k: &str| v[k].as_array().map_or(0, Vec::len);
    out!("n = {}: {} vertices, {} arrows", v["n"], count("vertices"), count("arrows"));
    if boxed {
        return;
    }
    for c in v["components"].as_array().into_iter().flatten() {
        let names: Vec<String> = c["vertices"]
            .as_array()
            .into_iter()
            .flatten()
            .map(|v| {
                let elems: Vec<String> = v.as_array().into_iter().flatten().map(|e| e.to_string()).collect();
                format!("[{}]", elems.join(","))
            })
            .collect();
        out!("euler {:>3}: {}", c["euler"], names.join(" "));
    }
}

fn which_name(w: Which) -> &'static str {
    match w {
        Which::R => "r",
        Which::Rr => "rr",
        Which::Box => "box",
    }
}

fn dims_of<A: DgAlgebra>(alg: &A, src: A::V, tgt: A::V, cohdegs: &[i32], rows: &mut Vec<Value>) {
    for &c in cohdegs {
        let basis = alg.hom_basis(src, tgt, c);
        let mut by_q: std::collections::BTreeMap<i32, usize> = Default::default();
        for m in &basis {
            *by_q.entry(alg.qdeg(m)).or_default() += 1;
        }
        for (q, d) in by_q {
            rows.push(json!({
                "src": src, "tgt": tgt, "src_text": src.to_string(), "tgt_text": tgt.to_string(),
                "cohdeg": c, "qdeg": q, "dim": d,
            }));
        }
    }
}

fn algebra_dims(n: u32, which: Which) -> Vec<Value> {
    let mut rows = Vec::new();
    match which {
        Which::R => {
            let a = RAlgebra::new(n);
            for x in Vertex::all(n) {
                for w in Vertex::all(n).filter(|&w| basis_mon_r(n, x, w).is_some()) {
                    dims_of(&a, x, w, &[0], &mut rows);
                }
            }
        }
        Which::Rr => {
            let a = RRAlgebra::new(n);
            for s in BoxVertex::all(n) {
                for t in BoxVertex::all(n) {
                    if basis_mon_r(n, s.x, t.x).is_some() && basis_mon_r(n, s.y, t.y).is_some() {
                        dims_of(&a, s, t, &[0], &mut rows);
                    }
                }
            }
        }
        Which::Box => {
            let a = BoxAlgebra::build(n, BOX_ALGEBRA_BOUND + 1).expect("n checked");
            for ((s, t), space) in a.engine.built_spaces() {
                let degs: Vec<i32> = space.iter().map(|b| b.cohdeg).rev().collect();
                dims_of(&a, s, t, &degs, &mut rows);
            }
        }
    }
    rows
}

fn print_complex_text<V: std::fmt::Display + Copy + Ord, M: std::fmt::Display + Ord + Clone>(c: &ProjComplex<V, M>) {
    if c.is_empty() {
        out!("zero complex");
        return;
    }
    for (i, s) in c.summands.iter().enumerate() {
        out!("  {i}: P({}){{{}}}[{}]", s.vertex, s.qshift, s.cohshift);
    }
    for (&(row, col), e) in &c.delta {
        let terms: Vec<String> = e.iter().map(|m| m.to_string()).collect();
        out!("  {col} -> {row}: {}", terms.join(" + "));
    }
}

fn write(dir: &Path, name: &str, v: &Value) -> anyhow::Result<()> {
    let path = dir.join(name);
    fs::write(&path, serde_json::to_string_pretty(v)? + "\n").with_context(|| format!("writing {}", path.display()))
}

fn export_all(cli: &Cli, n: u32, out: &Path) -> anyhow::Result<Outcome> {
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    write(out, "quiver.json", &quiver_json(n))?;
    write(out, "box_quiver.json", &box_quiver_json(n))?;
    for w in [Which::R, Which::Rr, Which::Box] {
        if matches!(w, Which::Box) && n > BOX_ALGEBRA_BOUND {
            continue;
        }
        let name = format!("algebra_{}.json", which_name(w));
        write(out, &name, &json!({ "n": n, "algebra": which_name(w), "dims": algebra_dims(n, w) }))?;
    }
    let mut products = Vec::new();
    let mut pairs = Vec::new();
    for x in Vertex::all(n) {
        for y in Vertex::all(n) {
            let m = higher_mult(n, x, y);
            products.push(json!({ "x": x, "y": y, "higher": m, "text": m.to_string() }));
            let t = build_t_pair(n, x, y);
            let mut v = complex_to_json(n, &t.complex);
            v["pair"] = json!([x, y]);
            pairs.push(v);
        }
    }
    write(out, "products.json", &json!({ "n": n, "products": products }))?;
    write(out, "bimodule.json", &json!({ "n": n, "pairs": pairs }))?;
    let wb = Workbench::new(n)?;
    let shapes: Vec<Value> = [Letter::E, Letter::F]
        .iter()
        .map(|&l| square_shape(&wb, l).map(|r| serde_json::to_value(r).expect("serializable")))
        .collect::<cliffcat::Result<_>>()?;
    write(out, "squares.json", &json!({ "n": n, "shapes": shapes }))?;
    let reports = run_all(n, &options(cli))?;
    let passed = reports.iter().all(SuiteReport::passed);
    let list: Vec<Value> = reports.iter().map(|r| report_json(r, false)).collect();
    write(out, "verify.json", &json!({ "passed": passed, "reports": list }))?;
    if !cli.json {
        out!("wrote {} files to {}", 9 - usize::from(n > BOX_ALGEBRA_BOUND), out.display());
    } else {
        print_json(&json!({ "out": out, "passed": passed }));
    }
    Ok(if passed { Outcome::Pass } else { Outcome::Fail })
}
