//! Theta* any-angle search producing the geometric path that seeds smoothing.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gridmap::{Cell, GridMap};
use crate::steering::{normalize_angle, State};

/// Ordered waypoints; consecutive pairs are mutually visible on the
/// planning grid when produced by [`theta_star`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeometricPath {
    pub waypoints: Vec<State>,
}

impl GeometricPath {
    pub fn new(waypoints: Vec<State>) -> Self {
        assert!(!waypoints.is_empty(), "a geometric path needs a waypoint");
        GeometricPath { waypoints }
    }

    /// Waypoints at the cell centers; each heading follows its outgoing
    /// segment, and the last takes `goal_heading`.
    pub fn from_cells(map: &GridMap, cells: &[Cell], goal_heading: f64) -> Self {
        let pts: Vec<(f64, f64)> = cells.iter().map(|&c| map.cell_center(c)).collect();
        let mut waypoints = Vec::with_capacity(pts.len());
        for (i, &(x, y)) in pts.iter().enumerate() {
            let theta = match pts.get(i + 1) {
                Some(&(nx, ny)) => (ny - y).atan2(nx - x),
                None => goal_heading,
            };
            waypoints.push(State::new(x, y, theta));
        }
        GeometricPath { waypoints }
    }

    pub fn len(&self) -> usize {
        self.waypoints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.waypoints.is_empty()
    }

    pub fn first(&self) -> &State {
        &self.waypoints[0]
    }

    pub fn last(&self) -> &State {
        self.waypoints.last().expect("non-empty path")
    }

    /// Polyline length in meters.
    pub fn length(&self) -> f64 {
        self.waypoints.windows(2).map(|w| w[0].distance(&w[1])).sum()
    }

    /// Replace the endpoint poses with the exact task poses.
    pub fn with_endpoints(mut self, start: State, goal: State) -> Self {
        let n = self.waypoints.len();
        self.waypoints[0] = start;
        if n > 1 {
            self.waypoints[n - 1] = goal;
        }
        self
    }

    /// Cells of the waypoints on `map`; `None` if some waypoint is off-grid.
    pub fn cells(&self, map: &GridMap) -> Option<Vec<Cell>> {
        self.waypoints.iter().map(|s| map.cell_at(s.x, s.y)).collect()
    }

    /// Every consecutive pair of waypoints is visible on `map`.
    pub fn is_visible_on(&self, map: &GridMap) -> bool {
        match self.cells(map) {
            Some(cells) => cells.windows(2).all(|w| map.line_of_sight(w[0], w[1])),
            None => false,
        }
    }

    /// Heading of each segment, `None` for zero-length segments.
    pub(crate) fn segment_heading(&self, i: usize) -> Option<f64> {
        let (a, b) = (&self.waypoints[i], &self.waypoints[i + 1]);
        if a.distance(b) > 0.0 {
            Some(normalize_angle(a.bearing_to(b)))
        } else {
            None
        }
    }
}

#[derive(Clone, Copy, PartialEq)]
struct Open {
    f: f64,
    g: f64,
    cell: Cell,
}

impl Eq for Open {}

impl Ord for Open {
    // BinaryHeap is a max-heap: invert so the smallest (f, g, cell) pops first.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .f
            .total_cmp(&self.f)
            .then_with(|| other.g.total_cmp(&self.g))
            .then_with(|| other.cell.cmp(&self.cell))
    }
}

impl PartialOrd for Open {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

const NEIGHBORS: [(i64, i64); 8] = [
    (1, 0),
    (-1, 0),
    (0, 1),
    (0, -1),
    (1, 1),
    (1, -1),
    (-1, 1),
    (-1, -1),
];

/// Theta* on an 8-connected grid with the Euclidean heuristic.
///
/// Returns `Ok(None)` when start and goal are disconnected. Neighbor moves
/// are only allowed when they pass the supercover visibility test, so the
/// path never squeezes diagonally between two blocked cells. Costs are in
/// cells.
pub fn theta_star(map: &GridMap, start: Cell, goal: Cell) -> Result<Option<Vec<Cell>>> {
    if !map.is_free(start) {
        return Err(Error::Input(format!("start cell {start:?} is blocked")));
    }
    if !map.is_free(goal) {
        return Err(Error::Input(format!("goal cell {goal:?} is blocked")));
    }
    if start == goal {
        return Ok(Some(vec![start]));
    }

    let w = map.width();
    let idx = |c: Cell| c.y * w + c.x;
    let n = w * map.height();
    let mut g = vec![f64::INFINITY; n];
    let mut parent: Vec<Option<Cell>> = vec![None; n];
    let mut closed = vec![false; n];
    let mut open = BinaryHeap::new();

    g[idx(start)] = 0.0;
    parent[idx(start)] = Some(start);
    open.push(Open {
        f: start.distance(goal),
        g: 0.0,
        cell: start,
    });

    while let Some(Open { g: gs, cell: s, .. }) = open.pop() {
        if closed[idx(s)] || gs > g[idx(s)] {
            continue;
        }
        closed[idx(s)] = true;
        if s == goal {
            let mut cells = vec![goal];
            let mut c = goal;
            while c != start {
                c = parent[idx(c)].expect("closed cells have parents");
                cells.push(c);
            }
            cells.reverse();
            return Ok(Some(cells));
        }
        let ps = parent[idx(s)].expect("opened cells have parents");
        for (dx, dy) in NEIGHBORS {
            let (nx, ny) = (s.x as i64 + dx, s.y as i64 + dy);
            if map.is_blocked(nx, ny) {
                continue;
            }
            let nb = Cell::new(nx as usize, ny as usize);
            if closed[idx(nb)] || !map.line_of_sight(s, nb) {
                continue;
            }
            let (via, cost) = if map.line_of_sight(ps, nb) {
                (ps, g[idx(ps)] + ps.distance(nb))
            } else {
                (s, gs + s.distance(nb))
            };
            if cost < g[idx(nb)] {
                g[idx(nb)] = cost;
                parent[idx(nb)] = Some(via);
                open.push(Open {
                    f: cost + nb.distance(goal),
                    g: cost,
                    cell: nb,
                });
            }
        }
    }
    Ok(None)
}

/// Polyline length of a cell path, in cells.
pub fn cell_path_length(cells: &[Cell]) -> f64 {
    cells.windows(2).map(|w| w[0].distance(w[1])).sum()
}
