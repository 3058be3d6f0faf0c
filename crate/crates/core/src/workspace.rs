use crate::error::{Error, Result};
use crate::gridmap::{distance_transform, Cell, DistanceMap, GridMap};
use crate::steering::{trajectory_collides, RobotParams, State, Trajectory};

/// A map together with its clearance field and the grid inflated by the
/// robot radius, which is what the geometric planner searches.
#[derive(Clone, Debug)]
pub struct Workspace {
    pub map: GridMap,
    pub dmap: DistanceMap,
    pub planning: GridMap,
    pub params: RobotParams,
}

impl Workspace {
    pub fn new(map: GridMap, params: RobotParams) -> Self {
        let dmap = distance_transform(&map);
        let planning = map.inflate(&dmap, params.radius);
        Workspace {
            map,
            dmap,
            planning,
            params,
        }
    }

    pub fn clearance(&self, s: &State) -> f64 {
        self.dmap.state_clearance(s.x, s.y)
    }

    /// The pose lies in a free cell with at least the robot radius of clearance.
    pub fn is_state_free(&self, s: &State) -> bool {
        self.map.is_position_free(s.x, s.y) && self.clearance(s) >= self.params.radius
    }

    pub fn collides(&self, tr: &Trajectory) -> bool {
        trajectory_collides(&self.map, &self.dmap, tr, &self.params)
    }

    /// Planning-grid cell of a task endpoint, rejecting poses the robot
    /// cannot occupy.
    pub fn endpoint_cell(&self, s: &State, what: &str) -> Result<Cell> {
        let cell = self
            .map
            .cell_at(s.x, s.y)
            .ok_or_else(|| Error::Input(format!("{what} ({}, {}) is off the map", s.x, s.y)))?;
        if !self.is_state_free(s) || !self.planning.is_free(cell) {
            return Err(Error::Input(format!(
                "{what} ({}, {}) is blocked or closer than {} m to an obstacle",
                s.x, s.y, self.params.radius
            )));
        }
        Ok(cell)
    }
}
