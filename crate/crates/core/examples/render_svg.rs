//! Draw a small map with a geometric path and the steered trajectory.
//!
//! ```text
//! cargo run --example render_svg > corner.svg
//! ```

use grips::bench::render_svg;
use grips::steering::RobotParams;
use grips::{plan, Algorithm, GridMap, SmootherConfig, State, Workspace};

fn main() -> grips::Result<()> {
    // an open 80x80 room with a block in the middle
    let map = GridMap::from_fn(80, 80, 0.2, |x, y| (30..50).contains(&x) && (25..55).contains(&y))?;
    let ws = Workspace::new(map, RobotParams::default());
    let out = plan(
        Algorithm::GripsHs,
        &ws,
        &State::new(2.0, 8.0, 0.0),
        &State::new(14.0, 8.0, 0.0),
        &SmootherConfig::default(),
    )?;
    let extra = out.smoothed.as_ref().map_or(&[][..], |s| &s.extra_states[..]);
    print!("{}", render_svg(&ws.map, out.geometric.as_ref(), out.trajectory(), extra));
    Ok(())
}
