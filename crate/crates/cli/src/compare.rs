use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use crate::config::{RunConfig, StrategyKind};
use crate::run::{run_benchmark, write_json, Averages, RunReport};

/// `100 (1 - accelerated / original)`: positive when the accelerated method
/// needs less, `-100` when it needs twice as much.
pub fn reduction_percent(original: f64, accelerated: f64) -> f64 {
    100.0 * (1.0 - accelerated / original)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompareRow {
    pub metric: String,
    /// `nonadaptive`, `hybrid` or `reduction_pct`.
    pub method: String,
    pub values: Vec<Option<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompareTable {
    pub grid: Vec<usize>,
    pub rows: Vec<CompareRow>,
}

impl CompareTable {
    pub fn row(&self, metric: &str, method: &str) -> Option<&CompareRow> {
        self.rows.iter().find(|r| r.metric == metric && r.method == method)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("metric,method");
        for n in &self.grid {
            let _ = write!(out, ",{n}");
        }
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.metric);
            out.push(',');
            out.push_str(&row.method);
            for v in &row.values {
                match v {
                    Some(v) => {
                        let _ = write!(out, ",{v:?}");
                    }
                    None => out.push(','),
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Full output of a comparison: the table and the per-size reports.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub table: CompareTable,
    pub nonadaptive: Vec<RunReport>,
    pub hybrid: Vec<RunReport>,
}

const METRICS: [(&str, fn(&Averages) -> Option<f64>); 3] = [
    ("iterations_practice", |a| a.iterations_practice),
    ("iterations_theory", |a| a.iterations_theory),
    ("wall_ms", |a| a.wall_ms),
];

/// Builds the table from already computed reports, one pair per grid entry.
pub fn tabulate(grid: &[usize], nonadaptive: &[RunReport], hybrid: &[RunReport]) -> CompareTable {
    let mut rows = Vec::new();
    for (metric, get) in METRICS {
        let orig: Vec<Option<f64>> = nonadaptive.iter().map(|r| get(&r.averages)).collect();
        let accel: Vec<Option<f64>> = hybrid.iter().map(|r| get(&r.averages)).collect();
        let reduction = orig
            .iter()
            .zip(&accel)
            .map(|(o, a)| match (o, a) {
                (Some(o), Some(a)) if *o > 0.0 => Some(reduction_percent(*o, *a)),
                _ => None,
            })
            .collect();
        for (method, values) in [("nonadaptive", orig), ("hybrid", accel), ("reduction_pct", reduction)] {
            rows.push(CompareRow {
                metric: metric.to_string(),
                method: method.to_string(),
                values,
            });
        }
    }
    CompareTable {
        grid: grid.to_vec(),
        rows,
    }
}

/// Runs the non-adaptive and the hybrid method on every `n` of `grid` with
/// otherwise identical settings (and therefore identical instances) and
/// writes the table as CSV to `table_path`. The strategy, trace path and
/// instance file of `config` are ignored; a configured report path receives
/// the [`Comparison`] as JSON.
pub fn compare_methods(config: &RunConfig, grid: &[usize], table_path: &Path) -> Result<Comparison> {
    if grid.is_empty() {
        bail!("the comparison grid is empty");
    }
    let mut nonadaptive = Vec::with_capacity(grid.len());
    let mut hybrid = Vec::with_capacity(grid.len());
    for &n in grid {
        let base = RunConfig {
            n,
            instance: None,
            trace: None,
            report: None,
            ..config.clone()
        };
        nonadaptive.push(run_benchmark(&base.with_strategy(StrategyKind::Nonadaptive))?);
        hybrid.push(run_benchmark(&base.with_strategy(StrategyKind::Hybrid))?);
    }
    let table = tabulate(grid, &nonadaptive, &hybrid);
    std::fs::write(table_path, table.to_csv())
        .with_context(|| format!("writing {}", table_path.display()))?;
    let comparison = Comparison {
        table,
        nonadaptive,
        hybrid,
    };
    if let Some(path) = &config.report {
        write_json(&comparison, path)?;
    }
    Ok(comparison)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_sign_convention() {
        assert_eq!(reduction_percent(9210.0, 18420.0), -100.0);
        assert_eq!(reduction_percent(200.0, 50.0), 75.0);
        assert_eq!(reduction_percent(10.0, 10.0), 0.0);
    }

    fn report(practice: f64, theory: f64) -> RunReport {
        let config = RunConfig::new(3, 4, 0, StrategyKind::Nonadaptive);
        RunReport {
            config,
            repeats: Vec::new(),
            averages: Averages {
                completed: 1,
                converged: 1,
                iterations_practice: Some(practice),
                iterations_theory: Some(theory),
                wall_ms: None,
                final_gap: Some(0.0),
            },
        }
    }

    #[test]
    fn single_column_table() {
        let t = tabulate(&[100], &[report(400.0, 9210.0)], &[report(40.0, 18420.0)]);
        assert_eq!(t.rows.len(), 9);
        assert!(t.rows.iter().all(|r| r.values.len() == 1));
        assert_eq!(t.row("iterations_practice", "reduction_pct").unwrap().values, vec![Some(90.0)]);
        assert_eq!(t.row("iterations_theory", "reduction_pct").unwrap().values, vec![Some(-100.0)]);
        assert_eq!(t.row("wall_ms", "reduction_pct").unwrap().values, vec![None]);
        let csv = t.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "metric,method,100");
        assert_eq!(lines.len(), 10);
        assert!(lines.contains(&"iterations_theory,reduction_pct,-100.0"));
        assert!(lines.contains(&"wall_ms,hybrid,"));
    }
}
