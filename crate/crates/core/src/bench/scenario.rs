//! Planning tasks and the `.scen` text format.
//!
//! One task per line: `map_id sx sy stheta gx gy gtheta`, whitespace
//! separated, positions in cells (floats), angles in radians. Lines starting
//! with `#` are comments; a `# seed N` comment records the generator seed.

use std::f64::consts::PI;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gridmap::{Cell, DistanceMap, GridMap};
use crate::steering::State;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub map_id: String,
    /// Start pose in meters.
    pub start: State,
    /// Goal pose in meters.
    pub goal: State,
    pub seed: u64,
}

/// Draw `n` tasks whose start and goal cells have at least `min_clearance`
/// cells of clearance and are at least `min_separation` cells apart.
/// Positions are cell centers; headings are uniform.
pub fn generate_scenarios(
    map_id: &str,
    map: &GridMap,
    dmap: &DistanceMap,
    n: usize,
    min_clearance: f64,
    min_separation: f64,
    seed: u64,
) -> Result<Vec<Scenario>> {
    let threshold = min_clearance * map.cell_size();
    let qualifying: Vec<Cell> = map
        .cells()
        .filter(|c| map.is_free(*c) && dmap.cell_clearance(c.x as i64, c.y as i64) >= threshold)
        .collect();
    if qualifying.len() < 2 {
        return Err(Error::Input(format!(
            "map `{map_id}` has {} cells with clearance >= {min_clearance} cells",
            qualifying.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    let pose = |c: Cell, rng: &mut ChaCha8Rng| {
        let (x, y) = map.cell_center(c);
        State::new(x, y, rng.gen_range(-PI..PI))
    };
    let mut rejected = 0usize;
    while out.len() < n {
        let s = *qualifying.choose(&mut rng).expect("non-empty");
        let g = *qualifying.choose(&mut rng).expect("non-empty");
        if s == g || s.distance(g) < min_separation {
            rejected += 1;
            if rejected > 10_000 * (n + 1) {
                return Err(Error::Input(format!(
                    "map `{map_id}`: no qualifying cells {min_separation} cells apart"
                )));
            }
            continue;
        }
        out.push(Scenario {
            map_id: map_id.to_string(),
            start: pose(s, &mut rng),
            goal: pose(g, &mut rng),
            seed,
        });
    }
    Ok(out)
}

/// Render tasks as `.scen` text, positions converted to cells (six
/// decimals, exact for cell centers).
pub fn write_scenarios(scenarios: &[Scenario], cell_size: f64) -> String {
    let mut out = String::new();
    if let Some(first) = scenarios.first() {
        let _ = writeln!(out, "# seed {}", first.seed);
    }
    out.push_str("# map_id sx sy stheta gx gy gtheta\n");
    for s in scenarios {
        let _ = writeln!(
            out,
            "{} {:.6} {:.6} {} {:.6} {:.6} {}",
            s.map_id,
            s.start.x / cell_size,
            s.start.y / cell_size,
            s.start.theta,
            s.goal.x / cell_size,
            s.goal.y / cell_size,
            s.goal.theta
        );
    }
    out
}

/// Parse `.scen` text; positions are scaled from cells to meters.
pub fn parse_scenarios(text: &str, cell_size: f64) -> Result<Vec<Scenario>> {
    let mut seed = 0;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let no = i + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let mut parts = comment.split_whitespace();
            if parts.next() == Some("seed") {
                if let Some(v) = parts.next().and_then(|v| v.parse().ok()) {
                    seed = v;
                }
            }
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 7 {
            return Err(Error::parse(no, format!("expected 7 fields, found {}", fields.len())));
        }
        let mut nums = [0.0; 6];
        for (k, f) in fields[1..].iter().enumerate() {
            nums[k] = f
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::parse(no, format!("bad number `{f}`")))?;
        }
        out.push(Scenario {
            map_id: fields[0].to_string(),
            start: State::new(nums[0] * cell_size, nums[1] * cell_size, nums[2]),
            goal: State::new(nums[3] * cell_size, nums[4] * cell_size, nums[5]),
            seed,
        });
    }
    Ok(out)
}
