//! Post-smoothing of geometric grid paths into kinematically feasible
//! trajectories for a car-like robot.
//!
//! The pipeline is: an any-angle geometric path ([`geoplan`]), a first
//! smoothing phase that pushes waypoints away from obstacles and inserts
//! states at clearance bottlenecks ([`phase1`]), and a pruning phase that
//! connects waypoints with the closed-loop [`steering`] function. Two pruning
//! strategies are provided: the DAG-based shortcut pruning ([`prune_grips`])
//! and the greedy skip / reach-ahead / extra-state sampling variant
//! ([`prune_hs`]).

pub mod bench;
pub mod config;
pub mod error;
pub mod geoplan;
pub mod gridmap;
pub mod maps;
pub mod phase1;
pub mod pipeline;
pub mod prune_grips;
pub mod prune_hs;
pub mod steering;
pub mod workspace;

pub use error::{Error, Result};
pub use geoplan::GeometricPath;
pub use gridmap::{Cell, DistanceMap, GridMap};
pub use pipeline::{plan, Algorithm, PlanOutcome, Smoothed, SmootherConfig};
pub use steering::{State, Steering, Trajectory};
pub use workspace::Workspace;
