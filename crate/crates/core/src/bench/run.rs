//! Benchmark execution.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rayon::prelude::*;

use super::report::{BenchReport, ExcludedTask, TaskResult};
use super::scenario::Scenario;
use crate::error::{Error, Result};
use crate::pipeline::{geometric_path, smooth, Algorithm, Smoothed, SmootherConfig};
use crate::steering::Trajectory;
use crate::workspace::Workspace;

/// One task result together with the trajectory it produced.
#[derive(Clone, Debug)]
pub struct TaskRun {
    pub result: TaskResult,
    pub trajectory: Option<Trajectory>,
}

/// Everything a benchmark run produced, before aggregation.
#[derive(Clone, Debug, Default)]
pub struct BenchRuns {
    pub runs: Vec<TaskRun>,
    pub excluded: Vec<ExcludedTask>,
}

impl BenchRuns {
    pub fn report(&self) -> BenchReport {
        BenchReport::from_results(
            self.runs.iter().map(|r| r.result.clone()).collect(),
            self.excluded.clone(),
        )
    }
}

enum Task {
    Done(Vec<TaskRun>),
    Excluded(ExcludedTask),
}

fn run_one(
    idx: usize,
    sc: &Scenario,
    ws: &Workspace,
    algorithms: &[Algorithm],
    cfg: &SmootherConfig,
) -> Task {
    let exclude = |reason: String| {
        Task::Excluded(ExcludedTask {
            scenario: idx,
            map_id: sc.map_id.clone(),
            reason,
        })
    };
    // the geometric path is shared by all algorithms and not timed
    let path = match geometric_path(ws, &sc.start, &sc.goal) {
        Ok(Some(p)) => p,
        Ok(None) => return exclude("no geometric path".into()),
        Err(e) => return exclude(e.to_string()),
    };
    let runs = algorithms
        .iter()
        .map(|&algorithm| {
            let t0 = Instant::now();
            let out = catch_unwind(AssertUnwindSafe(|| smooth(algorithm, &path, ws, cfg).1));
            let runtime = t0.elapsed().as_secs_f64();
            let (smoothed, note): (Option<Smoothed>, _) = match out {
                Ok(s) => (s, None),
                Err(payload) => {
                    let msg = payload
                        .downcast_ref::<&str>()
                        .map(|s| s.to_string())
                        .or_else(|| payload.downcast_ref::<String>().cloned())
                        .unwrap_or_else(|| "unknown panic".into());
                    (None, Some(format!("panicked: {msg}")))
                }
            };
            let trajectory = smoothed.map(|s| s.trajectory);
            TaskRun {
                result: TaskResult {
                    scenario: idx,
                    map_id: sc.map_id.clone(),
                    algorithm,
                    success: trajectory.is_some(),
                    length: trajectory.as_ref().map(|t| t.length),
                    runtime,
                    note,
                },
                trajectory,
            }
        })
        .collect();
    Task::Done(runs)
}

/// Run every algorithm on every scenario. Tasks run on `jobs` threads
/// (all cores when 0); results come back in scenario order.
pub fn run_tasks(
    workspaces: &BTreeMap<String, Workspace>,
    scenarios: &[Scenario],
    algorithms: &[Algorithm],
    cfg: &SmootherConfig,
    jobs: usize,
) -> Result<BenchRuns> {
    cfg.validate()?;
    for sc in scenarios {
        if !workspaces.contains_key(&sc.map_id) {
            return Err(Error::Input(format!("scenario references unknown map `{}`", sc.map_id)));
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    let tasks: Vec<Task> = pool.install(|| {
        scenarios
            .par_iter()
            .enumerate()
            .map(|(i, sc)| run_one(i, sc, &workspaces[&sc.map_id], algorithms, cfg))
            .collect()
    });
    let mut out = BenchRuns::default();
    for t in tasks {
        match t {
            Task::Done(runs) => out.runs.extend(runs),
            Task::Excluded(e) => out.excluded.push(e),
        }
    }
    Ok(out)
}

/// Run and aggregate.
pub fn run_benchmark(
    workspaces: &BTreeMap<String, Workspace>,
    scenarios: &[Scenario],
    algorithms: &[Algorithm],
    cfg: &SmootherConfig,
    jobs: usize,
) -> Result<BenchReport> {
    Ok(run_tasks(workspaces, scenarios, algorithms, cfg, jobs)?.report())
}
