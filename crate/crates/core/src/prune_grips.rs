//! Baseline pruning: shortcut tests mark irremovable waypoints, then a
//! length-weighted DAG between consecutive irremovable anchors selects which
//! intermediate waypoints to keep. Rounds repeat until the waypoint set is
//! stable.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geoplan::GeometricPath;
use crate::phase1::update_headings;
use crate::pipeline::{connect, Smoothed};
use crate::steering::{State, Steering, Trajectory};
use crate::workspace::Workspace;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PruneOriginalConfig {
    /// Maximum number of pruning rounds.
    pub max_rounds: usize,
}

impl Default for PruneOriginalConfig {
    fn default() -> Self {
        PruneOriginalConfig { max_rounds: 50 }
    }
}

impl PruneOriginalConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_rounds >= 1 {
            Ok(())
        } else {
            Err(Error::Config("max_rounds must be at least 1".into()))
        }
    }
}

/// Indices of waypoints that cannot be shortcut: steering from the
/// predecessor straight to the successor collides or does not arrive.
/// The endpoints are always included. Sorted ascending.
pub fn mark_irremovable(path: &GeometricPath, ws: &Workspace, steering: &Steering) -> Vec<usize> {
    let n = path.len();
    let mut out = vec![0];
    for i in 1..n.saturating_sub(1) {
        let a = &path.waypoints[i - 1];
        let b = &path.waypoints[i + 1];
        if connect(ws, steering, a, 0.0, b).is_none() {
            out.push(i);
        }
    }
    if n > 1 {
        out.push(n - 1);
    }
    out
}

/// Costs closer than this are ties, resolved toward fewer waypoints.
const TIE_EPS: f64 = 1e-9;

/// Weight of a DAG edge: the steered length plus the residual gap between
/// where the motion stopped and its nominal target.
pub fn edge_cost(tr: &Trajectory, target: &State) -> f64 {
    tr.length + tr.end().distance(target)
}

/// One DAG round: between each pair of consecutive anchors, the shortest
/// chain of feasible steered edges (evaluated from the nominal waypoints,
/// starting at rest). Returns the kept waypoint indices, or `None` if some
/// anchor pair is disconnected.
pub fn select_waypoints(
    path: &GeometricPath,
    anchors: &[usize],
    ws: &Workspace,
    steering: &Steering,
) -> Option<Vec<usize>> {
    let wp = &path.waypoints;
    let mut keep = vec![anchors[0]];
    for pair in anchors.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let m = b - a + 1;
        let mut dist = vec![f64::INFINITY; m];
        let mut hops = vec![usize::MAX; m];
        let mut prev = vec![usize::MAX; m];
        dist[0] = 0.0;
        hops[0] = 0;
        for j in 1..m {
            for i in 0..j {
                if !dist[i].is_finite() {
                    continue;
                }
                let target = &wp[a + j];
                if let Some(tr) = connect(ws, steering, &wp[a + i], 0.0, target) {
                    let d = dist[i] + edge_cost(&tr, target);
                    let h = hops[i] + 1;
                    let better = d < dist[j] - TIE_EPS || (d <= dist[j] + TIE_EPS && h < hops[j]);
                    if better {
                        dist[j] = d;
                        hops[j] = h;
                        prev[j] = i;
                    }
                }
            }
        }
        if !dist[m - 1].is_finite() {
            return None;
        }
        let mut chain = Vec::new();
        let mut j = m - 1;
        while j != 0 {
            chain.push(a + j);
            j = prev[j];
        }
        keep.extend(chain.into_iter().rev());
    }
    Some(keep)
}

/// Steer through `waypoints` in order, each motion starting from where the
/// previous one actually ended. The result must be collision-free and its
/// last motion must arrive at the final waypoint.
pub fn concatenate(waypoints: &[State], ws: &Workspace, steering: &Steering) -> Option<Trajectory> {
    let mut tr = Trajectory::at_rest(waypoints[0], steering.cfg.dt);
    let mut arrived = true;
    for w in &waypoints[1..] {
        let r = steering.steer(tr.end(), tr.end_speed(), w);
        arrived = r.reached;
        tr.extend(&r.trajectory);
    }
    if arrived && !ws.collides(&tr) {
        Some(tr)
    } else {
        None
    }
}

/// Full baseline pruning phase.
pub fn prune_original(
    path: &GeometricPath,
    ws: &Workspace,
    steering: &Steering,
    cfg: &PruneOriginalConfig,
) -> Option<Smoothed> {
    let mut cur = path.clone();
    for _ in 0..cfg.max_rounds {
        if cur.len() <= 2 {
            break;
        }
        let anchors = mark_irremovable(&cur, ws, steering);
        let keep = select_waypoints(&cur, &anchors, ws, steering)?;
        if keep.len() == cur.len() {
            break;
        }
        let next = GeometricPath::new(keep.iter().map(|&i| cur.waypoints[i]).collect());
        cur = update_headings(&next);
    }
    if cur.len() == 2 {
        // a single edge still has to be feasible on its own
        select_waypoints(&cur, &[0, 1], ws, steering)?;
    }
    let trajectory = concatenate(&cur.waypoints, ws, steering)?;
    Some(Smoothed {
        trajectory,
        waypoints: cur.waypoints,
        extra_states: Vec::new(),
    })
}
