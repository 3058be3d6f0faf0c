//! Smooth the same geometric paths with both pruning strategies and compare.
//!
//! ```text
//! cargo run --release --example compare_algorithms
//! ```

use grips::bench::parse_scenarios;
use grips::pipeline::{geometric_path, smooth};
use grips::{Algorithm, GridMap, SmootherConfig, Workspace};

const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data");

fn main() -> grips::Result<()> {
    let cfg = SmootherConfig::default();
    let map = GridMap::load_movingai(&std::fs::read_to_string(format!("{DATA}/maps/indoor.map"))?)?;
    let ws = Workspace::new(map, cfg.steering.params);
    let tasks = parse_scenarios(&std::fs::read_to_string(format!("{DATA}/scenarios/indoor.scen"))?, 0.2)?;

    println!("task  waypoints  grips                   grips-hs");
    for (i, t) in tasks.iter().enumerate().take(15) {
        let Some(path) = geometric_path(&ws, &t.start, &t.goal)? else {
            continue;
        };
        let cells: Vec<String> = Algorithm::ALL
            .iter()
            .map(|&alg| {
                let start = std::time::Instant::now();
                let (_, out) = smooth(alg, &path, &ws, &cfg);
                let ms = start.elapsed().as_secs_f64() * 1e3;
                match out {
                    Some(s) => format!("{:6.2} m {:6.2} ms", s.trajectory.length, ms),
                    None => format!("failed   {ms:6.2} ms"),
                }
            })
            .collect();
        println!("{i:4}  {:9}  {:22}  {}", path.len(), cells[0], cells[1]);
    }
    Ok(())
}
