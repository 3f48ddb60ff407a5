//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines always reach the output.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use hopf_core::splitnum::multiplication_table;
use hopf_core::verify::run_suite;
use hopf_core::{Check, SplitOctonion, Suite, SuiteReport, VerifyOptions};

const SEED: u64 = 20_240_601;

struct Outcome {
    ok: bool,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { ok: true, notes: Vec::new() }
    }

    fn require(&mut self, cond: bool, what: impl Into<String>) {
        if !cond {
            self.ok = false;
            self.notes.push(what.into());
        }
    }

    /// Every check whose id matches must pass, and any residual must be
    /// below `tol`. Returns the worst residual seen.
    fn checks(&mut self, r: &SuiteReport, matches: impl Fn(&str) -> bool, expect: usize, tol: Option<f64>) -> f64 {
        let sel: Vec<&Check> = r.checks.iter().filter(|c| matches(&c.id)).collect();
        self.require(sel.len() == expect, format!("{}: expected {expect} matching checks, got {}", r.suite, sel.len()));
        let mut worst: f64 = 0.0;
        for c in sel {
            self.require(c.passed(), format!("{} failed {}", c.id, c.detail));
            if let (Some(res), Some(t)) = (c.residual, tol) {
                self.require(res < t, format!("{} residual {res:e} ≥ {t:e}", c.id));
                worst = if res.is_nan() { f64::NAN } else { worst.max(res) };
            }
        }
        worst
    }

    fn time(&mut self, took: Duration, limit: f64) {
        self.require(took.as_secs_f64() < limit, format!("took {:.2} s, limit {limit} s", took.as_secs_f64()));
    }
}

const CASES: [&str; 6] = ["1-I", "1-II", "2-I", "2-II", "3-I", "3-II"];

fn per_case(suffix: &'static str) -> impl Fn(&str) -> bool {
    move |id: &str| CASES.iter().any(|c| id == format!("hopf.{c}.{suffix}") || id == format!("gauge.{c}.{suffix}"))
}

fn run(suite: Suite, opts: &VerifyOptions) -> (SuiteReport, Duration) {
    let t = Instant::now();
    let r = run_suite(suite, opts);
    (r, t.elapsed())
}

fn main() -> ExitCode {
    let opts = VerifyOptions::new(SEED);
    let mut lines: Vec<(usize, &str, Outcome, String)> = Vec::new();

    // 1
    let (alg, t) = run(Suite::Algebra, &opts);
    let mut o = Outcome::new();
    o.time(t, 2.0);
    o.require(opts.composition_samples >= 1000, "fewer than 1000 composition pairs");
    let table = multiplication_table::<SplitOctonion<f64>>();
    o.require(table.table.iter().map(Vec::len).sum::<usize>() == 64, "octonion table is not 8x8");
    o.checks(&alg, |id| id.starts_with("octonion.") || id == "quaternion.relations", 4, None);
    o.checks(&alg, |id| id.starts_with("composition.") || id.starts_with("conjugation."), 6, None);
    lines.push((1, "algebra exactness", o, format!("{:.2} s", t.as_secs_f64())));

    // 2
    let (gam, t) = run(Suite::Gamma, &opts);
    let mut o = Outcome::new();
    o.time(t, 2.0);
    o.checks(&gam, |id| id.ends_with(".anticommutator"), 8, None);
    o.checks(&gam, |id| id.ends_with(".block_form") || id.ends_with(".consistency"), 11, None);
    o.checks(&gam, |id| id == "lambda_so43_II.from_table", 1, None);
    o.require(gam.passed(), "gamma suite has failures");
    lines.push((2, "Clifford suites", o, format!("{:.2} s", t.as_secs_f64())));

    // 3, 4
    let (hopf, t) = run(Suite::Hopf, &opts);
    let mut o = Outcome::new();
    o.time(t, 5.0);
    o.require(opts.hopf_samples >= 1000, "fewer than 1000 spinors per case");
    let w = o.checks(&hopf, per_case("constraint"), 6, Some(1e-12));
    o.checks(&hopf, per_case("constraint_exact"), 6, None);
    o.checks(&hopf, |id| id == "hopf.0.antipodal", 1, None);
    lines.push((3, "Hopf constraints", o, format!("{:.2} s, worst {w:.1e}", t.as_secs_f64())));

    let mut o = Outcome::new();
    o.require(opts.hopf_points >= 200, "fewer than 200 base points");
    let w = o.checks(&hopf, |id| id.starts_with("hopf.") && id.contains(".round_trip."), 12, Some(1e-12));
    lines.push((4, "round trips", o, format!("worst {w:.1e}")));

    // 5, 6, 7
    let (gauge, t) = run(Suite::Gauge, &opts);
    let mut o = Outcome::new();
    o.require(opts.gauge_points >= 100, "fewer than 100 points per case");
    let w = o.checks(&gauge, per_case("connection"), 6, Some(1e-6));
    let v = o.checks(&gauge, per_case("majorana_vanishing"), 2, Some(1e-12));
    lines.push((5, "connection oracle", o, format!("{:.2} s, worst {w:.1e}, vanishing {v:.1e}", t.as_secs_f64())));

    let mut o = Outcome::new();
    let wf = o.checks(&gauge, per_case("curvature"), 6, Some(1e-5));
    let wa = o.checks(&gauge, per_case("gluing_a"), 5, Some(1e-6));
    let wg = o.checks(&gauge, per_case("gluing_f"), 5, Some(1e-6));
    o.checks(&gauge, per_case("abelian_f"), 2, None);
    lines.push((6, "curvature and gluing", o, format!("F {wf:.1e}, A′ {wa:.1e}, F′ {wg:.1e}")));

    let mut o = Outcome::new();
    let w = o.checks(&gauge, per_case("unitarity"), 5, Some(1e-12));
    lines.push((7, "transition unitarity", o, format!("worst {w:.1e}")));

    // 8
    let (sup, t) = run(Suite::Super, &opts);
    let mut o = Outcome::new();
    o.checks(&sup, |id| id.starts_with("super.engine."), 2, None);
    o.checks(&sup, |id| id == "super.osp.I" || id == "super.osp.II", 2, None);
    o.checks(&sup, |id| id.starts_with("super.constraint_exact."), 2, None);
    let w = o.checks(&sup, |id| id.starts_with("super.gluing_"), 2, Some(1e-6));
    o.checks(&sup, |id| id.starts_with("super.theta_reduction."), 2, None);
    o.require(sup.passed(), "super suite has failures");
    lines.push((8, "super suite", o, format!("{:.2} s, gluing {w:.1e}", t.as_secs_f64())));

    // 9
    let t = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_hopfctl"))
        .args(["verify", "--suite", "all", "--seed", &SEED.to_string(), "--no-timestamp"])
        .output()
        .expect("spawn hopfctl");
    let t = t.elapsed();
    let mut o = Outcome::new();
    o.time(t, 60.0);
    o.require(out.status.code() == Some(0), format!("exit code {:?}", out.status.code()));
    match serde_json::from_slice::<serde_json::Value>(&out.stdout) {
        Ok(v) => {
            o.require(v["status"] == "pass", "report status is not pass");
            o.require(v["reports"].as_array().map(Vec::len) == Some(5), "expected five suite reports");
        }
        Err(e) => o.require(false, format!("report is not JSON: {e}")),
    }
    lines.push((9, "hopfctl verify --suite all", o, format!("{:.2} s", t.as_secs_f64())));

    let mut all = true;
    for (n, name, o, info) in &lines {
        println!("criterion {n} {} {name} ({info})", if o.ok { "PASS" } else { "FAIL" });
        for note in &o.notes {
            println!("    {note}");
        }
        all &= o.ok;
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
