//! Any-angle geometric planning on the grid inflated by the robot radius.
//!
//! ```text
//! cargo run --example theta_star
//! ```

use grips::geoplan::{cell_path_length, theta_star};
use grips::steering::RobotParams;
use grips::{Cell, GridMap, Workspace};

const MAP: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/maps/indoor.map");

fn main() -> grips::Result<()> {
    let map = GridMap::load_movingai(&std::fs::read_to_string(MAP)?)?;
    let ws = Workspace::new(map, RobotParams::default());
    let (start, goal) = (Cell::new(10, 10), Cell::new(115, 110));
    match theta_star(&ws.planning, start, goal)? {
        None => println!("no path"),
        Some(cells) => {
            println!("{} waypoints, {:.2} cells long", cells.len(), cell_path_length(&cells));
            for c in &cells {
                println!("  ({}, {})", c.x, c.y);
            }
            let visible = cells.windows(2).all(|w| ws.planning.line_of_sight(w[0], w[1]));
            println!("every segment has line of sight: {visible}");
        }
    }
    Ok(())
}
