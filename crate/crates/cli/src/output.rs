//! CSV rows and atomic file output.

use std::io::Write;
use std::path::Path;

use hardy_core::harness::ExperimentRow;

use crate::CliError;

pub const CSV_COLUMNS: [&str; 14] = [
    "experiment_id",
    "theorem",
    "d",
    "n",
    "variant",
    "family",
    "params",
    "count",
    "bound_raw",
    "bound_cap",
    "satisfied",
    "L",
    "m",
    "quad_err",
];

/// One line per row, `,`-separated, LF line endings. An infinite bound is
/// written as `inf` with an empty cap.
pub fn rows_to_csv(rows: &[ExperimentRow]) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(CSV_COLUMNS).expect("in-memory write");
    for r in rows {
        w.write_record([
            r.experiment_id.clone(),
            r.theorem.as_str().to_string(),
            r.spec.d.to_string(),
            r.spec.n.0.to_string(),
            r.spec.variant.as_str().to_string(),
            r.potential.family_name().to_string(),
            r.potential.params_string(),
            r.count.to_string(),
            r.bound.raw.to_string(),
            r.bound.cap.map(|c| c.to_string()).unwrap_or_default(),
            r.satisfied.to_string(),
            r.window.to_string(),
            r.points.to_string(),
            format!("{:e}", r.bound.quadrature.error_estimate),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}

/// Writes to a temporary file next to `path`, then renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let fail = |e: std::io::Error| CliError::io(format!("cannot write {}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(fail)?;
    tmp.write_all(bytes).map_err(fail)?;
    tmp.as_file().sync_all().map_err(fail)?;
    tmp.persist(path).map_err(|e| fail(e.error))?;
    Ok(())
}
