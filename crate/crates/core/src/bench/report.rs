//! Aggregated benchmark results and their CSV / JSON encodings.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::pipeline::Algorithm;

pub const CSV_HEADER: &str = "map,algorithm,tasks,success_rate,mean_length_m,mean_runtime_s";

/// Outcome of one algorithm on one task.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TaskResult {
    /// Index of the task in the benchmark's scenario list.
    pub scenario: usize,
    pub map_id: String,
    pub algorithm: Algorithm,
    pub success: bool,
    /// Trajectory length in meters, present iff `success`.
    pub length: Option<f64>,
    /// Smoothing time (both phases), seconds.
    pub runtime: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// A task that never reached the smoothers, e.g. because the geometric
/// planner found no path.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExcludedTask {
    pub scenario: usize,
    pub map_id: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub map: String,
    pub algorithm: Algorithm,
    pub tasks: usize,
    pub success_rate: f64,
    /// Mean over successful tasks only.
    pub mean_length_m: Option<f64>,
    pub mean_runtime_s: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub rows: Vec<ReportRow>,
    pub tasks: Vec<TaskResult>,
    #[serde(default)]
    pub excluded: Vec<ExcludedTask>,
}

impl BenchReport {
    /// Aggregate per (map, algorithm). Rows and task records are sorted, so
    /// the result does not depend on the order tasks finished in.
    pub fn from_results(mut tasks: Vec<TaskResult>, mut excluded: Vec<ExcludedTask>) -> Self {
        tasks.sort_by_key(|t| (t.scenario, t.algorithm));
        excluded.sort_by_key(|e| e.scenario);
        let mut groups: BTreeMap<(&str, Algorithm), Vec<&TaskResult>> = BTreeMap::new();
        for t in &tasks {
            groups.entry((t.map_id.as_str(), t.algorithm)).or_default().push(t);
        }
        let rows = groups
            .into_iter()
            .map(|((map, algorithm), ts)| {
                let n = ts.len();
                let lengths: Vec<f64> = ts.iter().filter_map(|t| t.length).collect();
                let successes = ts.iter().filter(|t| t.success).count();
                ReportRow {
                    map: map.to_string(),
                    algorithm,
                    tasks: n,
                    success_rate: successes as f64 / n as f64,
                    mean_length_m: if lengths.is_empty() {
                        None
                    } else {
                        Some(lengths.iter().sum::<f64>() / lengths.len() as f64)
                    },
                    mean_runtime_s: ts.iter().map(|t| t.runtime).sum::<f64>() / n as f64,
                }
            })
            .collect();
        BenchReport {
            rows,
            tasks,
            excluded,
        }
    }

    pub fn row(&self, map: &str, algorithm: Algorithm) -> Option<&ReportRow> {
        self.rows.iter().find(|r| r.map == map && r.algorithm == algorithm)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let len = r.mean_length_m.map(|l| format!("{l:.4}")).unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{},{:.4},{},{:.6}",
                r.map, r.algorithm, r.tasks, r.success_rate, len, r.mean_runtime_s
            );
        }
        out
    }

    pub fn write_csv(&self, mut w: impl Write) -> Result<()> {
        w.write_all(self.to_csv().as_bytes())?;
        Ok(())
    }

    pub fn write_json(&self, w: impl Write) -> Result<()> {
        serde_json::to_writer_pretty(w, self)?;
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// The CSV with the runtime column removed, for run-to-run comparisons.
pub fn strip_runtime_column(csv: &str) -> String {
    csv.lines()
        .map(|l| match l.rfind(',') {
            Some(i) => &l[..i],
            None => l,
        })
        .collect::<Vec<_>>()
        .join("\n")
}
