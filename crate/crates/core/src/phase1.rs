//! First smoothing phase: push interior waypoints up the clearance field,
//! insert extra waypoints where steered connections pass closest to
//! obstacles, and keep waypoint headings aligned with the polyline.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geoplan::GeometricPath;
use crate::steering::{State, Steering};
use crate::workspace::Workspace;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Phase1Config {
    /// Initial gradient step, in cells.
    pub step0: f64,
    /// Per-round decay of the gradient step, in (0, 1).
    pub discount: f64,
    /// Number of gradient rounds.
    pub move_rounds: usize,
    /// Minimum distance (meters) of an inserted state from both segment ends.
    pub d_min: f64,
    /// Number of insertion rounds.
    pub insert_rounds: usize,
}

impl Default for Phase1Config {
    fn default() -> Self {
        Phase1Config {
            step0: 1.0,
            discount: 0.8,
            move_rounds: 5,
            d_min: 1.0,
            insert_rounds: 1,
        }
    }
}

impl Phase1Config {
    pub fn validate(&self) -> Result<()> {
        let ok = self.step0 > 0.0
            && self.discount > 0.0
            && self.discount < 1.0
            && self.move_rounds >= 1
            && self.d_min > 0.0
            && self.insert_rounds >= 1;
        if ok {
            Ok(())
        } else {
            Err(Error::Config(format!("invalid phase-1 config: {self:?}")))
        }
    }

    /// Gradient step of round `k`, in cells.
    pub fn step(&self, k: usize) -> f64 {
        self.step0 * self.discount.powi(k as i32)
    }
}

/// One gradient round. Interior waypoints move `step(round)` cells along the
/// clearance gradient. A move is kept only if the new position is in a free
/// cell, strictly gains clearance, and stays visible from both neighbors.
pub fn move_states(
    path: &GeometricPath,
    ws: &Workspace,
    cfg: &Phase1Config,
    round: usize,
) -> GeometricPath {
    let mut out = path.clone();
    let n = out.len();
    if n < 3 {
        return out;
    }
    let step = cfg.step(round) * ws.map.cell_size();
    for i in 1..n - 1 {
        let cur = out.waypoints[i];
        let g = ws.dmap.gradient_at(cur.x, cur.y);
        if g.is_zero() {
            continue;
        }
        let cand = State {
            x: cur.x + step * g.dx,
            y: cur.y + step * g.dy,
            theta: cur.theta,
        };
        if ws.clearance(&cand) <= ws.clearance(&cur) {
            continue;
        }
        let Some(cell) = ws.map.cell_at(cand.x, cand.y) else {
            continue;
        };
        if !ws.map.is_free(cell) {
            continue;
        }
        let prev = &out.waypoints[i - 1];
        let next = &out.waypoints[i + 1];
        let visible = |s: &State| {
            ws.map
                .cell_at(s.x, s.y)
                .is_some_and(|c| ws.map.line_of_sight(c, cell))
        };
        if visible(prev) && visible(next) {
            out.waypoints[i] = cand;
        }
    }
    out
}

/// Insertion rounds: steer between every consecutive pair and insert each
/// trajectory state sitting at a strict local clearance minimum that is
/// more than `d_min` away from both ends of the pair. Headings are refreshed
/// after every round.
pub fn insert_states(
    path: &GeometricPath,
    ws: &Workspace,
    steering: &Steering,
    cfg: &Phase1Config,
) -> GeometricPath {
    let mut cur = path.clone();
    for _ in 0..cfg.insert_rounds {
        let mut waypoints = Vec::with_capacity(cur.len() * 2);
        for pair in cur.waypoints.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            waypoints.push(*a);
            // partial trajectories are scanned too
            let tr = steering.steer(a, 0.0, b).trajectory;
            let clear: Vec<f64> = tr.states.iter().map(|s| ws.clearance(s)).collect();
            for k in 1..tr.states.len().saturating_sub(1) {
                let s = &tr.states[k];
                if clear[k] < clear[k - 1]
                    && clear[k] < clear[k + 1]
                    && s.distance(a) > cfg.d_min
                    && s.distance(b) > cfg.d_min
                {
                    waypoints.push(*s);
                }
            }
        }
        waypoints.push(*cur.last());
        cur = update_headings(&GeometricPath::new(waypoints));
    }
    cur
}

/// Mean direction of two angles; the first wins when they cancel out.
pub fn circular_mean(a: f64, b: f64) -> f64 {
    let (s, c) = (a.sin() + b.sin(), a.cos() + b.cos());
    if s.abs() < 1e-12 && c.abs() < 1e-12 {
        a
    } else {
        s.atan2(c)
    }
}

/// Set each interior heading to the circular mean of its incoming and
/// outgoing segment directions. Endpoint headings are left alone.
pub fn update_headings(path: &GeometricPath) -> GeometricPath {
    let mut out = path.clone();
    let n = out.len();
    for i in 1..n.saturating_sub(1) {
        let theta = match (path.segment_heading(i - 1), path.segment_heading(i)) {
            (Some(a), Some(b)) => circular_mean(a, b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => continue,
        };
        out.waypoints[i] = State::new(out.waypoints[i].x, out.waypoints[i].y, theta);
    }
    out
}

/// `move_rounds` gradient rounds with decaying step, then the insertion
/// rounds; headings are refreshed after every round.
pub fn move_and_insert(
    path: &GeometricPath,
    ws: &Workspace,
    steering: &Steering,
    cfg: &Phase1Config,
) -> GeometricPath {
    let mut cur = path.clone();
    for k in 0..cfg.move_rounds {
        cur = update_headings(&move_states(&cur, ws, cfg, k));
    }
    insert_states(&cur, ws, steering, cfg)
}
