//! Generators for the bundled desk-scale benchmark maps.
//!
//! Both generators are deterministic in their seed. [`bundled`] returns the
//! two maps shipped under `data/maps/`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gridmap::{Cell, GridMap, DEFAULT_CELL_SIZE};

/// Side length of the bundled maps, in cells.
pub const BUNDLED_SIZE: usize = 128;

/// Parameters of an indoor map: a `rooms × rooms` grid of rooms separated
/// by walls, with one door per wall segment between neighboring rooms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IndoorParams {
    pub size: usize,
    pub rooms: usize,
    /// Wall thickness in cells.
    pub wall: usize,
    /// Door width in cells.
    pub door: usize,
    pub seed: u64,
}

/// Parameters of an outdoor map: axis-aligned rectangles of random size
/// scattered uniformly (overlaps allowed).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OutdoorParams {
    pub size: usize,
    pub count: usize,
    pub min_side: usize,
    pub max_side: usize,
    pub seed: u64,
}

pub const INDOOR: IndoorParams = IndoorParams {
    size: BUNDLED_SIZE,
    rooms: 3,
    wall: 3,
    door: 20,
    seed: 3,
};

pub const OUTDOOR: OutdoorParams = OutdoorParams {
    size: BUNDLED_SIZE,
    count: 20,
    min_side: 4,
    max_side: 10,
    seed: 1,
};

fn fill(map: &mut GridMap, xs: std::ops::Range<usize>, ys: std::ops::Range<usize>, blocked: bool) {
    for y in ys.start..ys.end.min(map.height()) {
        for x in xs.start..xs.end.min(map.width()) {
            map.set_blocked(Cell::new(x, y), blocked);
        }
    }
}

pub fn indoor(p: &IndoorParams) -> GridMap {
    assert!(p.rooms >= 1 && p.size >= p.rooms * (2 * p.wall + p.door), "rooms do not fit");
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut map = GridMap::new(p.size, p.size, DEFAULT_CELL_SIZE).expect("positive size");
    let pitch = p.size / p.rooms;
    let walls: Vec<usize> = (1..p.rooms).map(|k| k * pitch - p.wall / 2).collect();
    for &w in &walls {
        fill(&mut map, w..w + p.wall, 0..p.size, true);
        fill(&mut map, 0..p.size, w..w + p.wall, true);
    }
    for &w in &walls {
        for r in 0..p.rooms {
            let lo = r * pitch + p.wall;
            let hi = ((r + 1) * pitch).saturating_sub(p.wall + p.door).max(lo + 1);
            let v = rng.gen_range(lo..hi);
            fill(&mut map, w..w + p.wall, v..v + p.door, false);
            let h = rng.gen_range(lo..hi);
            fill(&mut map, h..h + p.door, w..w + p.wall, false);
        }
    }
    map
}

pub fn outdoor(p: &OutdoorParams) -> GridMap {
    assert!(p.min_side >= 1 && p.min_side <= p.max_side && p.max_side < p.size);
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut map = GridMap::new(p.size, p.size, DEFAULT_CELL_SIZE).expect("positive size");
    for _ in 0..p.count {
        let w = rng.gen_range(p.min_side..=p.max_side);
        let h = rng.gen_range(p.min_side..=p.max_side);
        let x0 = rng.gen_range(0..p.size - w);
        let y0 = rng.gen_range(0..p.size - h);
        fill(&mut map, x0..x0 + w, y0..y0 + h, true);
    }
    map
}

/// The bundled maps as `(map_id, map)` pairs.
pub fn bundled() -> Vec<(&'static str, GridMap)> {
    vec![("indoor", indoor(&INDOOR)), ("outdoor", outdoor(&OUTDOOR))]
}
