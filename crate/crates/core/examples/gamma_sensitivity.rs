//! Success rate of both smoothers on the bundled tasks as the steering
//! angle limit varies.
//!
//! With a tight limit the controller orbits goals whose heading points away
//! from the approach direction, which caps both smoothers alike. Looser
//! limits expose the difference between the pruning strategies.
//!
//! ```text
//! cargo run --release --example gamma_sensitivity
//! ```

use std::collections::BTreeMap;

use grips::bench::{parse_scenarios, run_tasks};
use grips::{Algorithm, GridMap, SmootherConfig, Workspace};

const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data");

fn main() -> grips::Result<()> {
    let mut maps = Vec::new();
    let mut tasks = Vec::new();
    for id in ["indoor", "outdoor"] {
        maps.push((id, GridMap::load_movingai(&std::fs::read_to_string(format!("{DATA}/maps/{id}.map"))?)?));
        tasks.extend(parse_scenarios(&std::fs::read_to_string(format!("{DATA}/scenarios/{id}.scen"))?, 0.2)?);
    }
    println!("gamma_max  grips  grips-hs  (success over both maps)");
    for gamma_max in [0.6, std::f64::consts::FRAC_PI_4, 1.0, 1.2, 1.4, 1.5] {
        let mut cfg = SmootherConfig::default();
        cfg.steering.params.gamma_max = gamma_max;
        let ws: BTreeMap<String, Workspace> = maps
            .iter()
            .map(|(id, m)| (id.to_string(), Workspace::new(m.clone(), cfg.steering.params)))
            .collect();
        let runs = run_tasks(&ws, &tasks, &Algorithm::ALL, &cfg, 0)?;
        let rate = |alg| {
            let rs: Vec<_> = runs.runs.iter().filter(|r| r.result.algorithm == alg).collect();
            rs.iter().filter(|r| r.result.success).count() as f64 / rs.len().max(1) as f64
        };
        println!("{gamma_max:9.3}  {:5.2}  {:8.2}", rate(Algorithm::Grips), rate(Algorithm::GripsHs));
    }
    Ok(())
}
