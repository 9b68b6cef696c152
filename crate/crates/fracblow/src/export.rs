//! CSV and manifest writers for run data.
//!
//! Every plot-facing artifact is a plain CSV file with a header row;
//! snapshots additionally get a JSON manifest mapping files to times.
//! Writers are deliberately dumb: formatting only, no computation.

use std::io;
use std::path::Path;

use fracblow_core::GridFunction1D;
use serde::Serialize;

use crate::pde::{ComplexField, PairingInequalityReport};

fn csv_writer(path: &Path) -> io::Result<csv::Writer<std::fs::File>> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    Ok(csv::Writer::from_path(path).map_err(io::Error::other)?)
}

fn finish(w: csv::Writer<std::fs::File>) -> io::Result<()> {
    w.into_inner().map_err(io::Error::other)?.sync_all().ok();
    Ok(())
}

/// Writes a scalar trajectory as `t,g`.
pub fn write_trajectory_csv(path: &Path, trajectory: &GridFunction1D<f64>) -> io::Result<()> {
    let mut w = csv_writer(path)?;
    w.write_record(["t", "g"]).map_err(io::Error::other)?;
    for (i, g) in trajectory.samples().iter().enumerate() {
        w.write_record([format!("{:.12e}", trajectory.time(i)), format!("{g:.12e}")])
            .map_err(io::Error::other)?;
    }
    finish(w)
}

/// Writes one field snapshot; `x,re,im` in one dimension and `x,y,re,im`
/// in two.
pub fn write_snapshot_csv(path: &Path, field: &ComplexField) -> io::Result<()> {
    let mut w = csv_writer(path)?;
    let dim = field.grid().dim();
    if dim == 1 {
        w.write_record(["x", "re", "im"]).map_err(io::Error::other)?;
    } else {
        w.write_record(["x", "y", "re", "im"]).map_err(io::Error::other)?;
    }
    for (idx, v) in field.values().iter().enumerate() {
        let point = field.grid().point(idx);
        let mut record = vec![format!("{:.12e}", point[0])];
        if dim == 2 {
            record.push(format!("{:.12e}", point[1]));
        }
        record.push(format!("{:.12e}", v.re));
        record.push(format!("{:.12e}", v.im));
        w.write_record(&record).map_err(io::Error::other)?;
    }
    finish(w)
}

/// One entry of the snapshot manifest.
#[derive(Debug, Serialize)]
pub struct SnapshotEntry {
    /// Snapshot file name, relative to the manifest.
    pub file: String,
    /// Simulation time of the snapshot.
    pub time: f64,
}

/// Writes the snapshot manifest as JSON.
pub fn write_snapshot_manifest(path: &Path, entries: &[SnapshotEntry]) -> io::Result<()> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    #[derive(Serialize)]
    struct Manifest<'a> {
        snapshots: &'a [SnapshotEntry],
    }
    let text = serde_json::to_string_pretty(&Manifest { snapshots: entries })
        .expect("manifests serialize without error");
    std::fs::write(path, text + "\n")
}

/// Writes the pairing series as `t,pairing`.
pub fn write_pairing_csv(path: &Path, times: &[f64], series: &[f64]) -> io::Result<()> {
    let mut w = csv_writer(path)?;
    w.write_record(["t", "pairing"]).map_err(io::Error::other)?;
    for (t, v) in times.iter().zip(series) {
        w.write_record([format!("{t:.12e}"), format!("{v:.12e}")]).map_err(io::Error::other)?;
    }
    finish(w)
}

/// Writes the inequality diagnostic as `t,pairing,lhs,rhs`. The derivative
/// columns start one step in and stay empty when the entry condition
/// already failed.
pub fn write_inequality_csv(path: &Path, report: &PairingInequalityReport) -> io::Result<()> {
    let mut w = csv_writer(path)?;
    w.write_record(["t", "pairing", "lhs", "rhs"]).map_err(io::Error::other)?;
    for (i, (t, v)) in report.times.iter().zip(&report.series).enumerate() {
        let (lhs, rhs) = if i >= 1 && i - 1 < report.lhs.len() {
            (format!("{:.12e}", report.lhs[i - 1]), format!("{:.12e}", report.rhs[i - 1]))
        } else {
            (String::new(), String::new())
        };
        w.write_record([format!("{t:.12e}"), format!("{v:.12e}"), lhs, rhs])
            .map_err(io::Error::other)?;
    }
    finish(w)
}

/// One row of the classification sweep table.
#[derive(Debug)]
pub struct SweepRow {
    /// Nonlinearity power of the row.
    pub p: f64,
    /// Data amplitude of the row.
    pub epsilon: f64,
    /// Regime tag the classifier returned.
    pub regime: String,
    /// Kind of the attached bound, empty when none.
    pub bound_kind: String,
    /// Value of the attached bound, when finite.
    pub bound_value: Option<f64>,
    /// Formula behind the bound, empty when none.
    pub formula: String,
}

/// Writes the classification sweep as
/// `p,epsilon,regime,bound_kind,bound_value,formula`.
pub fn write_classify_sweep_csv(path: &Path, rows: &[SweepRow]) -> io::Result<()> {
    let mut w = csv_writer(path)?;
    w.write_record(["p", "epsilon", "regime", "bound_kind", "bound_value", "formula"])
        .map_err(io::Error::other)?;
    for row in rows {
        let value = row.bound_value.map(|v| format!("{v:.12e}")).unwrap_or_default();
        w.write_record([
            format!("{:.6}", row.p),
            format!("{:.6e}", row.epsilon),
            row.regime.clone(),
            row.bound_kind.clone(),
            value,
            row.formula.clone(),
        ])
        .map_err(io::Error::other)?;
    }
    finish(w)
}

/// Writes the scalar sweep results as
/// `alpha,B,p,g0,T_L,T_U,t_last_finite,t_threshold`.
pub fn write_fode_sweep_csv(
    path: &Path,
    rows: &[(f64, f64, f64, f64, fracblow_core::BlowupEstimate)],
) -> io::Result<()> {
    let mut w = csv_writer(path)?;
    w.write_record(["alpha", "B", "p", "g0", "T_L", "T_U", "t_last_finite", "t_threshold"])
        .map_err(io::Error::other)?;
    for (alpha, b, p, g0, est) in rows {
        w.write_record([
            format!("{alpha:.6}"),
            format!("{b:.6}"),
            format!("{p:.6}"),
            format!("{g0:.6}"),
            format!("{:.12e}", est.t_lower),
            format!("{:.12e}", est.t_upper),
            format!("{:.12e}", est.t_last_finite),
            format!("{:.12e}", est.t_threshold),
        ])
        .map_err(io::Error::other)?;
    }
    finish(w)
}
