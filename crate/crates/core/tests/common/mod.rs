//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};

use grips::phase1::update_headings;
use grips::steering::{normalize_angle, RobotParams};
use grips::{Cell, GeometricPath, GridMap, SmootherConfig, State, Steering, Trajectory, Workspace};
use rand::Rng;

pub const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data");
pub const MAP_IDS: [&str; 2] = ["indoor", "outdoor"];

pub fn bundled_map(id: &str) -> GridMap {
    let text = std::fs::read_to_string(format!("{DATA}/maps/{id}.map")).unwrap();
    GridMap::load_movingai(&text).unwrap()
}

pub fn bundled_scenarios(id: &str) -> Vec<grips::bench::Scenario> {
    let text = std::fs::read_to_string(format!("{DATA}/scenarios/{id}.scen")).unwrap();
    grips::bench::parse_scenarios(&text, 0.2).unwrap()
}

pub fn random_map(rng: &mut impl Rng, w: usize, h: usize, density: f64) -> GridMap {
    GridMap::from_fn(w, h, 0.2, |_, _| rng.gen_bool(density)).unwrap()
}

/// Distance from every cell center to the nearest blocked cell center, in
/// meters, by checking every blocked cell and the padding ring around the
/// map (out-of-bounds cells count as blocked).
pub fn brute_force_clearance(map: &GridMap) -> Vec<f64> {
    let (w, h) = (map.width() as i64, map.height() as i64);
    let mut blocked = Vec::new();
    for y in -1..=h {
        for x in -1..=w {
            if map.is_blocked(x, y) {
                blocked.push((x, y));
            }
        }
    }
    let mut out = Vec::with_capacity((w * h) as usize);
    for y in 0..h {
        for x in 0..w {
            let best = blocked
                .iter()
                .map(|&(bx, by)| ((bx - x) * (bx - x) + (by - y) * (by - y)) as f64)
                .fold(f64::INFINITY, f64::min);
            out.push(best.sqrt() * map.cell_size());
        }
    }
    out
}

#[derive(PartialEq)]
struct Entry(f64, (i64, i64));
impl Eq for Entry {}
impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.total_cmp(&self.0).then_with(|| other.1.cmp(&self.1))
    }
}

/// 8-connected A* length in cells. A diagonal step needs both orthogonal
/// side cells free (no corner cutting).
pub fn astar_length(map: &GridMap, s: Cell, g: Cell) -> Option<f64> {
    let free = |x: i64, y: i64| !map.is_blocked(x, y);
    let (s, g) = ((s.x as i64, s.y as i64), (g.x as i64, g.y as i64));
    if !free(s.0, s.1) || !free(g.0, g.1) {
        return None;
    }
    let hfn = |p: (i64, i64)| {
        let (dx, dy) = ((p.0 - g.0).abs() as f64, (p.1 - g.1).abs() as f64);
        dx.max(dy) + (2f64.sqrt() - 1.0) * dx.min(dy)
    };
    let mut best: HashMap<(i64, i64), f64> = HashMap::new();
    let mut open = BinaryHeap::new();
    best.insert(s, 0.0);
    open.push(Entry(hfn(s), s));
    while let Some(Entry(f, p)) = open.pop() {
        let gp = best[&p];
        if f > gp + hfn(p) + 1e-12 {
            continue;
        }
        if p == g {
            return Some(gp);
        }
        for dx in -1..=1i64 {
            for dy in -1..=1i64 {
                if dx == 0 && dy == 0 {
                    continue;
                }
                let q = (p.0 + dx, p.1 + dy);
                if !free(q.0, q.1) {
                    continue;
                }
                if dx != 0 && dy != 0 && (!free(p.0 + dx, p.1) || !free(p.0, p.1 + dy)) {
                    continue;
                }
                let c = gp + if dx != 0 && dy != 0 { 2f64.sqrt() } else { 1.0 };
                if best.get(&q).is_none_or(|&old| c < old - 1e-12) {
                    best.insert(q, c);
                    open.push(Entry(c + hfn(q), q));
                }
            }
        }
    }
    None
}

/// Replays a trajectory's controls with a separate Euler integrator and
/// returns the worst per-coordinate deviation from the stored states.
pub fn replay_error(tr: &Trajectory, params: &RobotParams) -> f64 {
    let mut s = tr.states[0];
    let mut worst: f64 = 0.0;
    for (u, stored) in tr.controls.iter().zip(&tr.states[1..]) {
        let x = s.x + u.v * s.theta.cos() * tr.dt;
        let y = s.y + u.v * s.theta.sin() * tr.dt;
        let theta = s.theta + u.v / params.wheelbase * u.gamma.tan() * tr.dt;
        s = State { x, y, theta: normalize_angle(theta) };
        let dth = normalize_angle(s.theta - stored.theta).abs();
        worst = worst.max((s.x - stored.x).abs()).max((s.y - stored.y).abs()).max(dth);
    }
    worst
}

/// Every kinematic and clearance requirement on a produced trajectory.
/// Returns a description of the first violation.
pub fn check_trajectory(tr: &Trajectory, ws: &Workspace, params: &RobotParams) -> Result<(), String> {
    if tr.states.len() != tr.controls.len() + 1 {
        return Err("state/control count mismatch".into());
    }
    let err = replay_error(tr, params);
    if err > 1e-9 {
        return Err(format!("re-integration error {err:e}"));
    }
    let eps = 1e-12;
    let mut prev = tr.start_speed;
    for (k, u) in tr.controls.iter().enumerate() {
        if u.v.abs() > params.v_max + eps {
            return Err(format!("speed {} at step {k}", u.v));
        }
        if u.gamma.abs() > params.gamma_max + eps {
            return Err(format!("steering angle {} at step {k}", u.gamma));
        }
        if (u.v - prev).abs() > params.a_max * tr.dt + eps {
            return Err(format!("speed jump {} at step {k}", u.v - prev));
        }
        prev = u.v;
    }
    for (k, s) in tr.states.iter().enumerate() {
        let c = ws.clearance(s);
        if c < params.radius {
            return Err(format!("clearance {c} at state {k}"));
        }
    }
    Ok(())
}

/// Edge weight used by the DAG oracle: steered length plus the distance
/// left between where the motion stopped and its target.
pub fn oracle_edge(ws: &Workspace, st: &Steering, a: &State, b: &State) -> Option<f64> {
    let r = st.steer(a, 0.0, b);
    if !r.reached || ws.collides(&r.trajectory) {
        return None;
    }
    let e = r.trajectory.end();
    Some(r.trajectory.length + (e.x - b.x).hypot(e.y - b.y))
}

/// Cheapest subsequence of `waypoints` that contains every anchor index,
/// by exhaustive enumeration over all subsets of the non-anchor indices.
/// Returns the cost and the kept indices.
pub fn enumerate_best(
    waypoints: &[State],
    anchors: &[usize],
    ws: &Workspace,
    st: &Steering,
) -> Option<(f64, Vec<usize>)> {
    let n = waypoints.len();
    let free: Vec<usize> = (0..n).filter(|i| !anchors.contains(i)).collect();
    let mut memo: HashMap<(usize, usize), Option<f64>> = HashMap::new();
    let mut best: Option<(f64, Vec<usize>)> = None;
    for mask in 0u32..(1 << free.len()) {
        let mut keep: Vec<usize> = anchors.to_vec();
        for (b, &i) in free.iter().enumerate() {
            if mask & (1 << b) != 0 {
                keep.push(i);
            }
        }
        keep.sort_unstable();
        let mut total = 0.0;
        let mut ok = true;
        for w in keep.windows(2) {
            let c = *memo
                .entry((w[0], w[1]))
                .or_insert_with(|| oracle_edge(ws, st, &waypoints[w[0]], &waypoints[w[1]]));
            match c {
                Some(c) => total += c,
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        let better = match &best {
            None => true,
            Some((c, k)) => total < c - 1e-9 || (total <= c + 1e-9 && keep.len() < k.len()),
        };
        if better {
            best = Some((total, keep));
        }
    }
    best
}

pub fn default_ws(map: GridMap) -> Workspace {
    Workspace::new(map, SmootherConfig::default().steering.params)
}

/// Open 100x60 map with a few random blocks, and a jittered left-to-right
/// path of `n` waypoints whose positions are free.
pub fn random_instance(rng: &mut impl Rng, n: usize) -> (Workspace, GeometricPath) {
    let blocks: Vec<(usize, usize, usize)> = (0..rng.gen_range(0..4))
        .map(|_| (rng.gen_range(20..80), rng.gen_range(10..50), rng.gen_range(2..6)))
        .collect();
    let map = GridMap::from_fn(100, 60, 0.2, |x, y| {
        blocks.iter().any(|&(bx, by, r)| x.abs_diff(bx) <= r && y.abs_diff(by) <= r)
    })
    .unwrap();
    let ws = default_ws(map);
    loop {
        let wp: Vec<State> = (0..n)
            .map(|k| {
                let t = k as f64 / (n - 1) as f64;
                let x = 2.0 + 16.0 * t + rng.gen_range(-0.8..0.8);
                let y = 6.0 + rng.gen_range(-2.5..2.5);
                State::new(x, y, rng.gen_range(-0.4..0.4))
            })
            .collect();
        if wp.iter().all(|s| ws.clearance(s) >= 0.6) {
            return (ws, update_headings(&GeometricPath::new(wp)));
        }
    }
}

