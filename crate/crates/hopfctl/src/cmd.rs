use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use hopf_core::splitnum::{multiplication_table, MultiplicationTable};
use hopf_core::verify::run_suites;
use hopf_core::{hopfmaps, HopfMap, MapCase, Patch, Realization, SplitComplex, SplitOctonion, SplitQuaternion};
use hopf_core::{Status, SuiteReport, UnitRing, VerifyOptions};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::{AlgebraArg, CliError, InvertArgs, ProjectArgs, TablesArgs, VerifyArgs};

pub const SCHEMA: u32 = 1;

/// Runs `$f::<T>(args)` with the scalar ring matching the realization.
macro_rules! by_ring {
    ($r:expr, $f:ident($($a:expr),*)) => {
        match $r {
            Realization::I => $f::<hopf_core::SplitF>($($a),*),
            Realization::II => $f::<hopf_core::ComplexF>($($a),*),
        }
    };
}
pub(crate) use by_ring;

pub fn parse_json<T: DeserializeOwned>(what: &str, s: &str) -> Result<T, CliError> {
    let mut de = serde_json::Deserializer::from_str(s);
    let v = serde_path_to_error::deserialize(&mut de)
        .map_err(|e| CliError::Usage(format!("malformed {what} at `{}`: {}", e.path(), e.inner())))?;
    de.end().map_err(|e| CliError::Usage(format!("malformed {what}: {e}")))?;
    Ok(v)
}

pub fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => {
            let mut o = std::io::stdout().lock();
            o.write_all(text.as_bytes())?;
            o.flush()?;
        }
    }
    Ok(())
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types serialize");
    s.push('\n');
    s
}

fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

/// Drops the sign of zero so that poles print as `0`.
fn clean(v: f64) -> f64 {
    v + 0.0
}

#[derive(Serialize)]
struct VerifyReport {
    schema: u32,
    suite: &'static str,
    status: Status,
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp_unix_s: Option<u64>,
    wall_time_ms: f64,
    reports: Vec<SuiteReport>,
}

pub fn verify(a: VerifyArgs) -> Result<ExitCode, CliError> {
    let mut opts = VerifyOptions::new(a.seed);
    opts.corrupt_fixture = a.corrupt_fixture;
    opts.tolerance_overrides = a.tolerance;
    let mut reports = run_suites(&a.suite.suites(), &opts);
    for r in &reports {
        let failed = r.failures().count();
        eprintln!(
            "{:<8} {:<4} {:>3} checks {:>3} failed {:>9.1} ms",
            r.suite,
            status_str(r.status),
            r.checks.len(),
            failed,
            r.wall_time_ms
        );
        for c in r.failures() {
            eprintln!("  FAIL {} {}", c.id, c.detail);
        }
    }
    let mut wall: f64 = reports.iter().map(|r| r.wall_time_ms).sum();
    let mut timestamp = SystemTime::now().duration_since(UNIX_EPOCH).ok().map(|d| d.as_secs());
    if a.no_timestamp {
        timestamp = None;
        wall = 0.0;
        reports.iter_mut().for_each(|r| r.wall_time_ms = 0.0);
    }
    let ok = reports.iter().all(SuiteReport::passed);
    let rep = VerifyReport {
        schema: SCHEMA,
        suite: a.suite.name(),
        status: if ok { Status::Pass } else { Status::Fail },
        seed: a.seed,
        timestamp_unix_s: timestamp,
        wall_time_ms: wall,
        reports,
    };
    emit(a.out.as_deref(), &to_json(&rep))?;
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::Info => "info",
    }
}

#[derive(Serialize)]
struct BasePointOut {
    schema: u32,
    level: u8,
    realization: Realization,
    metric: Vec<i8>,
    x: Vec<f64>,
}

fn ring_vec<T: UnitRing<Re = f64>>(v: &[[f64; 2]]) -> Vec<T> {
    v.iter().map(|p| T::new(p[0], p[1])).collect()
}

fn pairs<T: UnitRing<Re = f64>>(v: &[T]) -> Vec<[f64; 2]> {
    v.iter().map(|z| [clean(z.re()), clean(z.im())]).collect()
}

fn project_with<T: UnitRing<Re = f64>>(case: MapCase, spinor: &str) -> Result<Vec<f64>, CliError> {
    let comps: Vec<[f64; 2]> = parse_json("spinor", spinor)?;
    let map = HopfMap::<T>::new(case).map_err(domain)?;
    let s = hopfmaps::Spinor::new(case, ring_vec::<T>(&comps));
    map.project(&s).map_err(domain)
}

pub fn project(a: ProjectArgs) -> Result<ExitCode, CliError> {
    let case = MapCase::new(a.map.level, a.map.realization);
    let x = if case.level == 0 {
        let v: [f64; 2] = parse_json("spinor", &a.spinor)?;
        hopfmaps::project_level0(&v).to_vec()
    } else {
        by_ring!(case.realization, project_with(case, &a.spinor))?
    };
    let out = BasePointOut {
        schema: SCHEMA,
        level: case.level,
        realization: case.realization,
        metric: case.base_metric().signature,
        x: x.into_iter().map(clean).collect(),
    };
    emit(None, &to_json(&out))?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct SpinorOut {
    schema: u32,
    level: u8,
    realization: Realization,
    patch: Patch,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    conjugate_rep: bool,
    spinor: serde_json::Value,
}

fn invert_with<T: UnitRing<Re = f64>>(
    case: MapCase,
    patch: Patch,
    x: &[f64],
    fiber: Option<&str>,
) -> Result<(Vec<[f64; 2]>, bool), CliError> {
    let map = HopfMap::<T>::new(case).map_err(domain)?;
    let fiber = match fiber {
        Some(f) => ring_vec::<T>(&parse_json::<Vec<[f64; 2]>>("fiber", f)?),
        None => map.default_fiber(),
    };
    let s = map.invert(x, patch, &fiber).map_err(domain)?;
    Ok((pairs(&s.comps), s.conjugate_rep))
}

pub fn invert(a: InvertArgs) -> Result<ExitCode, CliError> {
    let case = MapCase::new(a.map.level, a.map.realization);
    let x: Vec<f64> = parse_json("point", &a.point)?;
    let (spinor, conjugate_rep) = if case.level == 0 {
        if a.fiber.is_some() {
            return Err(CliError::Usage("level 0 takes no --fiber".into()));
        }
        let y: [f64; 2] = x.as_slice().try_into().map_err(|_| domain(hopf_core::HopfError::Dimension { expected: 2, got: x.len() }))?;
        let v = hopfmaps::invert_level0(&y).map_err(domain)?;
        (serde_json::json!([clean(v[0]), clean(v[1])]), false)
    } else {
        let (s, c) = by_ring!(case.realization, invert_with(case, a.patch, &x, a.fiber.as_deref()))?;
        (serde_json::to_value(s).expect("pairs serialize"), c)
    };
    let out = SpinorOut { schema: SCHEMA, level: case.level, realization: case.realization, patch: a.patch, conjugate_rep, spinor };
    emit(None, &to_json(&out))?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct TableOut {
    schema: u32,
    #[serde(flatten)]
    table: MultiplicationTable,
}

pub fn tables(a: TablesArgs) -> Result<ExitCode, CliError> {
    let table = match a.algebra {
        AlgebraArg::SplitComplex => multiplication_table::<SplitComplex<f64>>(),
        AlgebraArg::SplitQuaternion => multiplication_table::<SplitQuaternion<f64>>(),
        AlgebraArg::SplitOctonion => multiplication_table::<SplitOctonion<f64>>(),
    };
    emit(None, &to_json(&TableOut { schema: SCHEMA, table }))?;
    Ok(ExitCode::SUCCESS)
}
