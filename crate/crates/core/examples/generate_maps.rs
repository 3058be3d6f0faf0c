//! Regenerate the bundled maps and their task files.
//!
//! ```text
//! cargo run --example generate_maps -- data
//! ```

use std::path::PathBuf;

use grips::bench::{generate_scenarios, write_scenarios};
use grips::config::Config;
use grips::gridmap::distance_transform;
use grips::maps;

/// Tasks per bundled map.
const TASKS: usize = 50;

fn main() -> grips::Result<()> {
    let root = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "data".into()));
    std::fs::create_dir_all(root.join("maps"))?;
    std::fs::create_dir_all(root.join("scenarios"))?;
    let cfg = Config::default();
    for (seed, (id, map)) in (1u64..).zip(maps::bundled()) {
        let dmap = distance_transform(&map);
        let tasks = generate_scenarios(id, &map, &dmap, TASKS, cfg.min_clearance, cfg.min_separation, seed)?;
        std::fs::write(root.join(format!("maps/{id}.map")), map.to_movingai())?;
        std::fs::write(root.join(format!("scenarios/{id}.scen")), write_scenarios(&tasks, map.cell_size()))?;
        println!("{id}: {}x{}, {} blocked cells, {} tasks", map.width(), map.height(), map.blocked_count(), tasks.len());
    }
    Ok(())
}
