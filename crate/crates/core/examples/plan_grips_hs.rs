//! Plan one task end to end with the heuristic-sampling smoother and save
//! a picture of the result.
//!
//! ```text
//! cargo run --example plan_grips_hs -- out.svg
//! ```

use grips::bench::render_svg;
use grips::prune_hs::plan_trajectory;
use grips::steering::RobotParams;
use grips::{GridMap, SmootherConfig, State, Workspace};

const MAP: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/maps/outdoor.map");

fn main() -> grips::Result<()> {
    let map = GridMap::load_movingai(&std::fs::read_to_string(MAP)?)?;
    let ws = Workspace::new(map, RobotParams::default());
    let start = State::new(2.1, 2.1, 0.0);
    let goal = State::new(22.1, 20.1, 0.7);
    let out = plan_trajectory(&ws, &start, &goal, &SmootherConfig::default())?;

    let geometric = out.geometric.as_ref().expect("the outdoor map is connected");
    println!("geometric path: {} waypoints, {:.2} m", geometric.len(), geometric.length());
    if let Some(p1) = &out.phase1 {
        println!("after moving and inserting: {} waypoints", p1.len());
    }
    let Some(s) = &out.smoothed else {
        println!("smoothing failed");
        return Ok(());
    };
    let tr = &s.trajectory;
    let end = tr.end();
    println!(
        "trajectory: {} states, {:.2} m, {} waypoints kept, {} sampled",
        tr.states.len(),
        tr.length,
        s.waypoints.len(),
        s.extra_states.len()
    );
    println!("ends at ({:.2}, {:.2}, {:+.2}), goal ({:.2}, {:.2}, {:+.2})", end.x, end.y, end.theta, goal.x, goal.y, goal.theta);
    println!("collision-free: {}", !ws.collides(tr));

    if let Some(path) = std::env::args().nth(1) {
        std::fs::write(&path, render_svg(&ws.map, Some(geometric), Some(tr), &s.extra_states))?;
        println!("wrote {path}");
    }
    Ok(())
}
