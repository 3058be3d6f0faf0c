//! Glue between the geometric planner and the two smoothing pipelines.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geoplan::{theta_star, GeometricPath};
use crate::phase1::{move_and_insert, Phase1Config};
use crate::prune_grips::{prune_original, PruneOriginalConfig};
use crate::prune_hs::{prune_modified, PruneHsConfig};
use crate::steering::{State, Steering, Trajectory};
use crate::workspace::Workspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Algorithm {
    /// DAG-based pruning baseline.
    #[serde(rename = "grips")]
    Grips,
    /// Greedy pruning with reach-ahead and heuristic sampling.
    #[serde(rename = "grips-hs")]
    GripsHs,
}

impl Algorithm {
    pub const ALL: [Algorithm; 2] = [Algorithm::Grips, Algorithm::GripsHs];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Grips => "grips",
            Algorithm::GripsHs => "grips-hs",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "grips" => Ok(Algorithm::Grips),
            "grips-hs" => Ok(Algorithm::GripsHs),
            other => Err(Error::Input(format!("unknown algorithm `{other}`"))),
        }
    }
}

/// Every tunable of the smoothing pipeline.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SmootherConfig {
    pub steering: Steering,
    pub phase1: Phase1Config,
    pub prune_original: PruneOriginalConfig,
    pub prune_hs: PruneHsConfig,
}

impl SmootherConfig {
    pub fn validate(&self) -> Result<()> {
        self.steering.params.validate()?;
        self.steering.gains.validate()?;
        self.steering.cfg.validate()?;
        self.phase1.validate()?;
        self.prune_original.validate()?;
        self.prune_hs.validate()
    }
}

/// A feasible trajectory and the waypoints it passes through.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Smoothed {
    pub trajectory: Trajectory,
    /// Waypoints joined by the trajectory's motions, in order.
    pub waypoints: Vec<State>,
    /// Sampled states that are not on the input path.
    pub extra_states: Vec<State>,
}

/// Steer from `from` (at `speed`) to `to`; the motion is returned only if
/// it arrives and is collision-free.
pub fn connect(
    ws: &Workspace,
    steering: &Steering,
    from: &State,
    speed: f64,
    to: &State,
) -> Option<Trajectory> {
    let r = steering.steer(from, speed, to);
    if r.reached && !ws.collides(&r.trajectory) {
        Some(r.trajectory)
    } else {
        None
    }
}

/// Theta* on the inflated grid between the task poses. The endpoints of the
/// returned path are the exact task poses.
pub fn geometric_path(ws: &Workspace, start: &State, goal: &State) -> Result<Option<GeometricPath>> {
    let s = ws.endpoint_cell(start, "start")?;
    let g = ws.endpoint_cell(goal, "goal")?;
    let Some(cells) = theta_star(&ws.planning, s, g)? else {
        return Ok(None);
    };
    let path = if cells.len() == 1 && start != goal {
        GeometricPath::new(vec![*start, *goal])
    } else {
        GeometricPath::from_cells(&ws.map, &cells, goal.theta).with_endpoints(*start, *goal)
    };
    Ok(Some(path))
}

/// Phase 1 followed by the pruning phase of `algorithm`. Returns the
/// phase-1 path alongside the pruning result.
pub fn smooth(
    algorithm: Algorithm,
    path: &GeometricPath,
    ws: &Workspace,
    cfg: &SmootherConfig,
) -> (GeometricPath, Option<Smoothed>) {
    let moved = move_and_insert(path, ws, &cfg.steering, &cfg.phase1);
    let out = match algorithm {
        Algorithm::Grips => prune_original(&moved, ws, &cfg.steering, &cfg.prune_original),
        Algorithm::GripsHs => prune_modified(&moved, &cfg.prune_hs, ws, &cfg.steering),
    };
    (moved, out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanOutcome {
    pub algorithm: Algorithm,
    /// `None` if the geometric planner found no path.
    pub geometric: Option<GeometricPath>,
    /// Path after the first smoothing phase.
    pub phase1: Option<GeometricPath>,
    /// `None` if smoothing failed.
    pub smoothed: Option<Smoothed>,
}

impl PlanOutcome {
    pub fn trajectory(&self) -> Option<&Trajectory> {
        self.smoothed.as_ref().map(|s| &s.trajectory)
    }
}

/// End-to-end planning with either smoother.
pub fn plan(
    algorithm: Algorithm,
    ws: &Workspace,
    start: &State,
    goal: &State,
    cfg: &SmootherConfig,
) -> Result<PlanOutcome> {
    let geometric = geometric_path(ws, start, goal)?;
    let (phase1, smoothed) = match &geometric {
        Some(path) => {
            let (p1, s) = smooth(algorithm, path, ws, cfg);
            (Some(p1), s)
        }
        None => (None, None),
    };
    Ok(PlanOutcome {
        algorithm,
        geometric,
        phase1,
        smoothed,
    })
}
