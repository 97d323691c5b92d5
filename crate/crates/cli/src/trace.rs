use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use afom_core::IterationRecord;
use anyhow::{bail, Context, Result};

pub const TRACE_HEADER: &str = "t,L_t,f_ut,beta_t,gap,wall_ms";

/// Companion file of a trace: the trace's file name with `.summary` appended.
pub fn summary_path_for(trace: &Path) -> PathBuf {
    let mut name = trace.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".summary");
    trace.with_file_name(name)
}

/// One CSV line of a trace record. Floats use the shortest representation
/// that parses back to the same value; an unchecked gap is left empty.
pub fn trace_row(r: &IterationRecord) -> String {
    let gap = r.gap.map(|g| format!("{g:?}")).unwrap_or_default();
    format!("{},{:?},{:?},{:?},{},{:?}", r.t, r.l, r.f_u, r.beta, gap, r.wall_ms)
}

/// Writes the per-iteration trace as CSV plus a one-line summary next to it.
pub fn emit_trace(records: &[IterationRecord], path: &Path) -> Result<()> {
    let Some(last) = records.last() else {
        bail!("refusing to write an empty trace to {}", path.display());
    };
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut w = BufWriter::new(file);
    writeln!(w, "{TRACE_HEADER}")?;
    for r in records {
        writeln!(w, "{}", trace_row(r))?;
    }
    w.flush().with_context(|| format!("writing {}", path.display()))?;

    let max_beta = records.iter().map(|r| r.beta).fold(f64::NEG_INFINITY, f64::max);
    let checks = records.iter().filter(|r| r.gap.is_some()).count();
    let last_gap = records.iter().rev().find_map(|r| r.gap);
    let summary = format!(
        "iterations={} final_L={:?} final_f_u={:?} max_beta={:?} gap_checks={} last_gap={} wall_ms={:?}\n",
        last.t,
        last.l,
        last.f_u,
        max_beta,
        checks,
        last_gap.map(|g| format!("{g:?}")).unwrap_or_else(|| "none".into()),
        last.wall_ms,
    );
    let summary_path = summary_path_for(path);
    std::fs::write(&summary_path, summary).with_context(|| format!("writing {}", summary_path.display()))
}
