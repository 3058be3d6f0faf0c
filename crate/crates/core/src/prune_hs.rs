//! Greedy pruning with heuristic sampling.
//!
//! From the current anchor (the actual end of the last motion) the smoother
//! greedily skips as many waypoints as it can. When the next waypoint is not
//! reachable it looks up to `horizon` waypoints ahead, and when that fails
//! too it samples extra states on a line through the middle of the
//! offending segment and tries to pass through one of them.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geoplan::GeometricPath;
use crate::phase1::circular_mean;
use crate::pipeline::{connect, plan, Algorithm, PlanOutcome, Smoothed, SmootherConfig};
use crate::steering::{State, Steering, Trajectory};
use crate::workspace::Workspace;

/// Direction of the line extra states are sampled on.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtraMode {
    /// Normal to the segment between the two states.
    #[default]
    Perpendicular,
    /// Along the circular mean of the two states' headings.
    HeadingAverage,
}

/// Order in which sampled offsets are tried.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CandidateOrder {
    /// `0, +step, -step, +2·step, ...`
    #[default]
    NearestFirst,
    /// `-M, ..., 0, ..., +M`
    Sweep,
}

macro_rules! kebab_enum {
    ($ty:ty { $($variant:ident => $name:literal),+ $(,)? }) => {
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(match self { $(<$ty>::$variant => $name),+ })
            }
        }

        impl FromStr for $ty {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($name => Ok(<$ty>::$variant),)+
                    other => Err(Error::Config(format!("unknown value `{other}`"))),
                }
            }
        }
    };
}

kebab_enum!(ExtraMode { Perpendicular => "perpendicular", HeadingAverage => "heading-average" });
kebab_enum!(CandidateOrder { NearestFirst => "nearest-first", Sweep => "sweep" });

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PruneHsConfig {
    /// Reach horizon `H`, in waypoints.
    pub horizon: usize,
    /// Half-length `M` of the sampling line, meters.
    pub max_offset: f64,
    /// Spacing of sampled states along the line, meters.
    pub step: f64,
    pub extra_mode: ExtraMode,
    pub order: CandidateOrder,
}

impl Default for PruneHsConfig {
    fn default() -> Self {
        PruneHsConfig {
            horizon: 5,
            max_offset: 5.0,
            step: 1.0,
            extra_mode: ExtraMode::Perpendicular,
            order: CandidateOrder::NearestFirst,
        }
    }
}

impl PruneHsConfig {
    pub fn validate(&self) -> Result<()> {
        if self.horizon >= 1
            && self.max_offset > 0.0
            && self.step > 0.0
            && self.step <= 2.0 * self.max_offset
        {
            Ok(())
        } else {
            Err(Error::Config(format!("invalid pruning config: {self:?}")))
        }
    }

    /// Signed offsets along the sampling line, in the order they are tried.
    pub fn offsets(&self) -> Vec<f64> {
        let k = (self.max_offset / self.step + 1e-9).floor() as i64;
        match self.order {
            CandidateOrder::NearestFirst => std::iter::once(0)
                .chain((1..=k).flat_map(|i| [i, -i]))
                .map(|i| i as f64 * self.step)
                .collect(),
            CandidateOrder::Sweep => (-k..=k).map(|i| i as f64 * self.step).collect(),
        }
    }
}

/// Result of one successful advance along the path.
#[derive(Clone, Debug, PartialEq)]
pub struct PruneOutcome {
    /// Index of the waypoint the motion ended at.
    pub new_index: usize,
    /// Actual end of the motion, the next anchor.
    pub anchor: State,
    pub segment: Trajectory,
}

impl PruneOutcome {
    fn new(new_index: usize, segment: Trajectory) -> Self {
        PruneOutcome {
            new_index,
            anchor: *segment.end(),
            segment,
        }
    }
}

/// Greedily skip waypoints: starting at `i + 1`, keep advancing while the
/// anchor reaches the next waypoint without collision. The caller has
/// already established that `path[i + 1]` is reachable.
pub fn skip_states(
    path: &GeometricPath,
    anchor: &State,
    speed: f64,
    i: usize,
    ws: &Workspace,
    steering: &Steering,
) -> PruneOutcome {
    let first = connect(ws, steering, anchor, speed, &path.waypoints[i + 1])
        .expect("skip_states needs a reachable successor");
    skip_from(path, anchor, speed, i + 1, first, ws, steering)
}

fn skip_from(
    path: &GeometricPath,
    anchor: &State,
    speed: f64,
    mut j: usize,
    mut segment: Trajectory,
    ws: &Workspace,
    steering: &Steering,
) -> PruneOutcome {
    while j + 1 < path.len() {
        match connect(ws, steering, anchor, speed, &path.waypoints[j + 1]) {
            Some(tr) => {
                j += 1;
                segment = tr;
            }
            None => break,
        }
    }
    PruneOutcome::new(j, segment)
}

/// Try `path[i + k]` for `k = 2..=horizon` (clamped at the goal) and return
/// the first one reachable from the anchor.
pub fn reach_next_states(
    path: &GeometricPath,
    anchor: &State,
    speed: f64,
    i: usize,
    cfg: &PruneHsConfig,
    ws: &Workspace,
    steering: &Steering,
) -> Option<PruneOutcome> {
    let last = path.len() - 1;
    (2..=cfg.horizon)
        .map(|k| i + k)
        .take_while(|&j| j <= last)
        .find_map(|j| {
            connect(ws, steering, anchor, speed, &path.waypoints[j])
                .map(|tr| PruneOutcome::new(j, tr))
        })
}

/// Sampled intermediate poses between `a` and `b`, in trial order. Each
/// sits on the line through the midpoint of `ab` and faces along `ab`.
pub fn extra_candidates(a: &State, b: &State, cfg: &PruneHsConfig) -> Vec<State> {
    let slope = a.bearing_to(b);
    let dir = match cfg.extra_mode {
        ExtraMode::Perpendicular => slope + FRAC_PI_2,
        ExtraMode::HeadingAverage => circular_mean(a.theta, b.theta),
    };
    let (mx, my) = ((a.x + b.x) / 2.0, (a.y + b.y) / 2.0);
    let (s, c) = dir.sin_cos();
    cfg.offsets()
        .into_iter()
        .map(|d| State::new(mx + d * c, my + d * s, slope))
        .collect()
}

/// A sampled state together with the two chained motions through it.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtraState {
    pub state: State,
    /// `a → state → b`, the second motion starting where the first ended.
    pub segment: Trajectory,
}

/// First sampled state that the robot can pass through on its way from `a`
/// to `b` without collision.
pub fn extra_states(
    a: &State,
    speed: f64,
    b: &State,
    cfg: &PruneHsConfig,
    ws: &Workspace,
    steering: &Steering,
) -> Option<ExtraState> {
    extra_candidates(a, b, cfg)
        .into_iter()
        .filter(|cand| ws.is_state_free(cand))
        .find_map(|cand| {
            let mut tr = connect(ws, steering, a, speed, &cand)?;
            let second = connect(ws, steering, tr.end(), tr.end_speed(), b)?;
            tr.extend(&second);
            Some(ExtraState {
                state: cand,
                segment: tr,
            })
        })
}

/// Greedy pruning phase. `None` when a bottleneck can be bridged neither by
/// path waypoints nor by a sampled state.
pub fn prune_modified(
    path: &GeometricPath,
    cfg: &PruneHsConfig,
    ws: &Workspace,
    steering: &Steering,
) -> Option<Smoothed> {
    let n = path.len();
    let wp = &path.waypoints;
    let mut trajectory = Trajectory::at_rest(wp[0], steering.cfg.dt);
    let mut waypoints = vec![wp[0]];
    let mut extra = Vec::new();
    let mut i = 0;
    while i + 1 < n {
        let anchor = *trajectory.end();
        let speed = trajectory.end_speed();
        let advance = match connect(ws, steering, &anchor, speed, &wp[i + 1]) {
            Some(first) => Some(skip_from(path, &anchor, speed, i + 1, first, ws, steering)),
            None if cfg.horizon > 1 => {
                reach_next_states(path, &anchor, speed, i, cfg, ws, steering)
            }
            None => None,
        };
        match advance {
            Some(out) => {
                trajectory.extend(&out.segment);
                i = out.new_index;
            }
            None => {
                let e = extra_states(&anchor, speed, &wp[i + 1], cfg, ws, steering)?;
                trajectory.extend(&e.segment);
                waypoints.push(e.state);
                extra.push(e.state);
                i += 1;
            }
        }
        waypoints.push(wp[i]);
    }
    Some(Smoothed {
        trajectory,
        waypoints,
        extra_states: extra,
    })
}

/// Geometric planning, the first smoothing phase, and greedy pruning with
/// heuristic sampling, end to end.
pub fn plan_trajectory(
    ws: &Workspace,
    start: &State,
    goal: &State,
    cfg: &SmootherConfig,
) -> Result<PlanOutcome> {
    plan(Algorithm::GripsHs, ws, start, goal, cfg)
}
