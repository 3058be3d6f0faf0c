//! Run the bundled benchmark and print the aggregated report.
//!
//! ```text
//! cargo run --release --example benchmark
//! ```

use std::collections::BTreeMap;

use grips::bench::{parse_scenarios, run_benchmark};
use grips::{Algorithm, GridMap, SmootherConfig, Workspace};

const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data");

fn main() -> grips::Result<()> {
    let cfg = SmootherConfig::default();
    let mut workspaces = BTreeMap::new();
    let mut tasks = Vec::new();
    for id in ["indoor", "outdoor"] {
        let map = GridMap::load_movingai(&std::fs::read_to_string(format!("{DATA}/maps/{id}.map"))?)?;
        workspaces.insert(id.to_string(), Workspace::new(map, cfg.steering.params));
        tasks.extend(parse_scenarios(&std::fs::read_to_string(format!("{DATA}/scenarios/{id}.scen"))?, 0.2)?);
    }
    let report = run_benchmark(&workspaces, &tasks, &Algorithm::ALL, &cfg, 0)?;
    print!("{}", report.to_csv());
    println!("{} tasks excluded", report.excluded.len());
    Ok(())
}
