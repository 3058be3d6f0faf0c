//! Load a Moving AI map, compute its clearance field and query it.
//!
//! ```text
//! cargo run --example distance_map
//! ```

use grips::gridmap::{distance_transform, GridMap};

const MAP: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/maps/indoor.map");

fn main() -> grips::Result<()> {
    let map = GridMap::load_movingai(&std::fs::read_to_string(MAP)?)?;
    let dmap = distance_transform(&map);
    println!("{}x{} cells of {} m, {} blocked", map.width(), map.height(), map.cell_size(), map.blocked_count());

    let best = dmap.values().iter().cloned().fold(0.0, f64::max);
    println!("largest clearance: {best:.3} m");

    for (x, y) in [(2.0, 2.0), (8.3, 4.1), (12.8, 12.8), (20.0, 5.5)] {
        let g = dmap.gradient_at(x, y);
        println!(
            "({x:5.2}, {y:5.2}) m: clearance {:.3} m, gradient ({:+.3}, {:+.3})",
            dmap.state_clearance(x, y),
            g.dx,
            g.dy
        );
    }
    Ok(())
}
