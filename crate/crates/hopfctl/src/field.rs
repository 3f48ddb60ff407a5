//! `sample-field`: gauge potential and field strength on a grid.

use std::process::ExitCode;

use hopf_core::{GaugeModel, MapCase, MetricForm, Patch, Realization, UnitRing};
use serde::Serialize;

use crate::cmd::{by_ring, emit, to_json, SCHEMA};
use crate::{CliError, Format, GridMode, SampleFieldArgs};

const MAX_POINTS: usize = 1_000_000;
const EPS_ON_SHELL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Axis {
    pub fn value(&self, i: usize) -> f64 {
        if self.steps == 1 {
            self.min
        } else {
            self.min + (self.max - self.min) * i as f64 / (self.steps - 1) as f64
        }
    }
}

pub fn parse_grid(s: &str) -> Result<Vec<Axis>, CliError> {
    let bad = |m: String| CliError::Usage(format!("bad --grid: {m}"));
    s.split(',')
        .enumerate()
        .map(|(k, part)| {
            let f: Vec<&str> = part.trim().split(':').collect();
            if f.len() != 3 {
                return Err(bad(format!("axis {k}: expected min:max:steps, got `{part}`")));
            }
            let num = |t: &str| t.trim().parse::<f64>().ok().filter(|v| v.is_finite());
            let min = num(f[0]).ok_or_else(|| bad(format!("axis {k}: min `{}`", f[0])))?;
            let max = num(f[1]).ok_or_else(|| bad(format!("axis {k}: max `{}`", f[1])))?;
            let steps: usize = f[2].trim().parse().ok().filter(|n| *n > 0).ok_or_else(|| bad(format!("axis {k}: steps `{}`", f[2])))?;
            Ok(Axis { min, max, steps })
        })
        .collect()
}

/// Maps a grid point to a point on `η(x,x) = c`, or `None` when it has no
/// counterpart on the requested patch.
pub fn place(g: &[f64], metric: &MetricForm, c: f64, d: usize, patch: Patch, mode: GridMode) -> Option<Vec<f64>> {
    let eta = &metric.signature;
    if g.len() + 1 == d {
        let rest: f64 = g.iter().zip(eta).map(|(v, s)| *s as f64 * v * v).sum();
        let sq = (c - rest) / eta[d - 1] as f64;
        if sq.is_nan() || sq < 0.0 {
            return None;
        }
        let last = if patch == Patch::Upper { sq.sqrt() } else { -sq.sqrt() };
        let mut x = g.to_vec();
        x.push(last);
        return Some(x);
    }
    let q = metric.quad(g);
    let scale = 1.0 + g.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    match mode {
        GridMode::Skip => ((q - c).abs() <= EPS_ON_SHELL * scale * scale).then(|| g.to_vec()),
        GridMode::Project => {
            let r = c / q;
            (r.is_finite() && r > 0.0).then(|| g.iter().map(|v| v * r.sqrt()).collect())
        }
    }
}

fn columns(d: usize, fd: usize) -> Vec<String> {
    let mut cols: Vec<String> = (1..=d).map(|a| format!("x{a}")).collect();
    let entries = |prefix: String, cols: &mut Vec<String>| {
        for r in 1..=fd {
            for c in 1..=fd {
                cols.push(format!("{prefix}_r{r}c{c}_re"));
                cols.push(format!("{prefix}_r{r}c{c}_im"));
            }
        }
    };
    for a in 1..=d {
        entries(format!("A{a}"), &mut cols);
    }
    for a in 1..=d {
        for b in a + 1..=d {
            entries(format!("F{a}_{b}"), &mut cols);
        }
    }
    cols
}

struct Sampled {
    columns: Vec<String>,
    rows: Vec<Vec<f64>>,
    skipped: usize,
}

fn sample_with<T: UnitRing<Re = f64>>(case: MapCase, patch: Patch, axes: &[Axis], mode: GridMode) -> Result<Sampled, CliError> {
    let model = GaugeModel::<T>::new(case).map_err(|e| CliError::Domain(e.to_string()))?;
    let d = case.base_dim();
    let fd = case.fiber_dim();
    if axes.len() != d && axes.len() + 1 != d {
        return Err(CliError::Usage(format!("--grid needs {} or {d} axes at level {}, got {}", d - 1, case.level, axes.len())));
    }
    let total = axes.iter().try_fold(1usize, |n, a| n.checked_mul(a.steps)).filter(|n| *n <= MAX_POINTS);
    let total = total.ok_or_else(|| CliError::Usage(format!("--grid exceeds {MAX_POINTS} points")))?;
    let metric = case.base_metric();
    let c = case.constraint() as f64;
    let mut rows = Vec::new();
    let mut skipped = 0;
    let mut idx = vec![0usize; axes.len()];
    for _ in 0..total {
        let g: Vec<f64> = axes.iter().zip(&idx).map(|(a, i)| a.value(*i)).collect();
        let row = place(&g, &metric, c, d, patch, mode).and_then(|x| {
            let s = model.sample(&x, patch).ok()?;
            let mut row = x;
            let mut push = |m: &hopf_core::RMatrix<T>| row.extend(m.entries().iter().flat_map(|z| [z.re(), z.im()]));
            s.a.iter().for_each(&mut push);
            for a in 0..d {
                for b in a + 1..d {
                    push(&s.f[a][b]);
                }
            }
            row.iter().all(|v| v.is_finite()).then_some(row)
        });
        match row {
            Some(r) => rows.push(r.into_iter().map(|v| v + 0.0).collect()),
            None => skipped += 1,
        }
        for k in (0..idx.len()).rev() {
            idx[k] += 1;
            if idx[k] < axes[k].steps {
                break;
            }
            idx[k] = 0;
        }
    }
    Ok(Sampled { columns: columns(d, fd), rows, skipped })
}

#[derive(Serialize)]
struct FieldJson<'a> {
    schema: u32,
    level: u8,
    realization: Realization,
    patch: Patch,
    columns: &'a [String],
    rows: &'a [Vec<f64>],
    skipped: usize,
}

/// Shortest decimal that parses back to the same `f64`.
fn num(v: f64) -> String {
    format!("{v:?}")
}

pub fn sample_field(a: SampleFieldArgs) -> Result<ExitCode, CliError> {
    let case = MapCase::new(a.map.level, a.map.realization);
    let axes = parse_grid(&a.grid)?;
    let s = by_ring!(case.realization, sample_with(case, a.patch, &axes, a.mode))?;
    let text = match a.format {
        Format::Json => to_json(&FieldJson {
            schema: SCHEMA,
            level: case.level,
            realization: case.realization,
            patch: a.patch,
            columns: &s.columns,
            rows: &s.rows,
            skipped: s.skipped,
        }),
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
            let io = |e: csv::Error| CliError::Io(e.into());
            w.write_record(&s.columns).map_err(io)?;
            for r in &s.rows {
                w.write_record(r.iter().map(|v| num(*v))).map_err(io)?;
            }
            w.write_record(["#skipped".to_string(), s.skipped.to_string()]).map_err(io)?;
            String::from_utf8(w.into_inner().map_err(|e| CliError::Io(e.into_error()))?).expect("ascii output")
        }
    };
    emit(a.out.as_deref(), &text)?;
    eprintln!("{} points, {} skipped", s.rows.len(), s.skipped);
    Ok(ExitCode::SUCCESS)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parses_and_spaces_evenly() {
        let g = parse_grid("-1:1:3, 0:0:1").unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!((0..3).map(|i| g[0].value(i)).collect::<Vec<_>>(), vec![-1.0, 0.0, 1.0]);
        assert_eq!(g[1].value(0), 0.0);
        assert!(parse_grid("0:1").is_err());
        assert!(parse_grid("0:1:0").is_err());
        assert!(parse_grid("a:1:2").is_err());
    }

    #[test]
    fn reduced_grid_solves_last_coordinate() {
        let case = MapCase::new(1, Realization::I);
        let m = case.base_metric();
        let c = case.constraint() as f64;
        let x = place(&[0.3, -0.2], &m, c, 3, Patch::Lower, GridMode::Skip).unwrap();
        assert!((m.quad(&x) - c).abs() < 1e-12);
        assert!(x[2] < 0.0);
    }

    #[test]
    fn full_grid_modes() {
        let case = MapCase::new(1, Realization::I);
        let m = case.base_metric();
        let c = case.constraint() as f64;
        let off = [0.1, 0.2, 2.0];
        assert!(place(&off, &m, c, 3, Patch::Upper, GridMode::Skip).is_none());
        let x = place(&off, &m, c, 3, Patch::Upper, GridMode::Project).unwrap();
        assert!((m.quad(&x) - c).abs() < 1e-12);
    }

    #[test]
    fn shortest_round_trip_formatting() {
        for v in [0.1, 1.0 / 3.0, 1e-300, -2.5e17, f64::MIN_POSITIVE] {
            assert_eq!(num(v).parse::<f64>().unwrap(), v);
        }
    }
}
