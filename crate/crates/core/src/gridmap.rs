//! Occupancy grids, Moving AI map I/O, supercover line-of-sight and the
//! Euclidean clearance field used to push waypoints away from obstacles.
//!
//! Cell `(x, y)` covers the square `[x, x+1) × [y, y+1)` in cell units, so its
//! center sits at `((x + 0.5)·cell_size, (y + 0.5)·cell_size)` in meters.
//! Everything outside the grid is treated as blocked.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Default edge length of one grid cell in meters.
pub const DEFAULT_CELL_SIZE: f64 = 0.2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub x: usize,
    pub y: usize,
}

impl Cell {
    pub const fn new(x: usize, y: usize) -> Self {
        Cell { x, y }
    }

    /// Euclidean distance between cell centers, in cells.
    pub fn distance(self, other: Cell) -> f64 {
        let dx = self.x as f64 - other.x as f64;
        let dy = self.y as f64 - other.y as f64;
        dx.hypot(dy)
    }
}

/// A direction in the plane, used for clearance gradients.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Vec2 {
    pub dx: f64,
    pub dy: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { dx: 0.0, dy: 0.0 };

    pub fn new(dx: f64, dy: f64) -> Self {
        Vec2 { dx, dy }
    }

    pub fn norm(self) -> f64 {
        self.dx.hypot(self.dy)
    }

    pub fn is_zero(self) -> bool {
        self.dx == 0.0 && self.dy == 0.0
    }
}

/// Binary occupancy grid. `true` marks a blocked cell.
#[derive(Clone, Debug, PartialEq)]
pub struct GridMap {
    width: usize,
    height: usize,
    cell_size: f64,
    occupancy: Vec<bool>,
}

impl GridMap {
    /// An all-free grid.
    pub fn new(width: usize, height: usize, cell_size: f64) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::Input(format!(
                "grid dimensions must be positive, got {width}x{height}"
            )));
        }
        if !(cell_size > 0.0 && cell_size.is_finite()) {
            return Err(Error::Input(format!("cell size must be positive, got {cell_size}")));
        }
        Ok(GridMap {
            width,
            height,
            cell_size,
            occupancy: vec![false; width * height],
        })
    }

    pub fn from_fn(
        width: usize,
        height: usize,
        cell_size: f64,
        mut blocked: impl FnMut(usize, usize) -> bool,
    ) -> Result<Self> {
        let mut map = GridMap::new(width, height, cell_size)?;
        for y in 0..height {
            for x in 0..width {
                map.occupancy[y * width + x] = blocked(x, y);
            }
        }
        Ok(map)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn cell_size(&self) -> f64 {
        self.cell_size
    }

    pub fn with_cell_size(mut self, cell_size: f64) -> Result<Self> {
        if !(cell_size > 0.0 && cell_size.is_finite()) {
            return Err(Error::Input(format!("cell size must be positive, got {cell_size}")));
        }
        self.cell_size = cell_size;
        Ok(self)
    }

    pub fn in_bounds(&self, x: i64, y: i64) -> bool {
        x >= 0 && y >= 0 && (x as usize) < self.width && (y as usize) < self.height
    }

    /// Out-of-bounds coordinates are blocked.
    pub fn is_blocked(&self, x: i64, y: i64) -> bool {
        !self.in_bounds(x, y) || self.occupancy[y as usize * self.width + x as usize]
    }

    pub fn is_free(&self, cell: Cell) -> bool {
        !self.is_blocked(cell.x as i64, cell.y as i64)
    }

    pub fn set_blocked(&mut self, cell: Cell, blocked: bool) {
        assert!(cell.x < self.width && cell.y < self.height, "cell {cell:?} out of bounds");
        self.occupancy[cell.y * self.width + cell.x] = blocked;
    }

    pub fn blocked_count(&self) -> usize {
        self.occupancy.iter().filter(|&&b| b).count()
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (0..self.height).flat_map(move |y| (0..self.width).map(move |x| Cell::new(x, y)))
    }

    /// Center of `cell` in meters.
    pub fn cell_center(&self, cell: Cell) -> (f64, f64) {
        (
            (cell.x as f64 + 0.5) * self.cell_size,
            (cell.y as f64 + 0.5) * self.cell_size,
        )
    }

    /// The cell containing a metric position, if it lies on the grid.
    pub fn cell_at(&self, x: f64, y: f64) -> Option<Cell> {
        let cx = (x / self.cell_size).floor();
        let cy = (y / self.cell_size).floor();
        if cx.is_finite() && cy.is_finite() && self.in_bounds(cx as i64, cy as i64) {
            Some(Cell::new(cx as usize, cy as usize))
        } else {
            None
        }
    }

    /// Whether the position lies inside a free cell.
    pub fn is_position_free(&self, x: f64, y: f64) -> bool {
        self.cell_at(x, y).is_some_and(|c| self.is_free(c))
    }

    /// Copy of this grid where every cell with clearance below `radius`
    /// meters is blocked as well.
    pub fn inflate(&self, dmap: &DistanceMap, radius: f64) -> GridMap {
        let mut out = self.clone();
        for (blocked, &c) in out.occupancy.iter_mut().zip(&dmap.clearance) {
            if c < radius {
                *blocked = true;
            }
        }
        out
    }

    /// Supercover line-of-sight between two cell centers: every cell the
    /// segment touches must be free. When the segment passes exactly through
    /// a cell corner, both side cells are tested too.
    pub fn line_of_sight(&self, a: Cell, b: Cell) -> bool {
        let (mut x, mut y) = (a.x as i64, a.y as i64);
        let dx = (b.x as i64 - x).abs();
        let dy = (b.y as i64 - y).abs();
        let sx = if b.x as i64 >= x { 1 } else { -1 };
        let sy = if b.y as i64 >= y { 1 } else { -1 };
        if self.is_blocked(x, y) {
            return false;
        }
        let (mut ix, mut iy) = (0i64, 0i64);
        while ix < dx || iy < dy {
            // Next boundary crossing: x at t = (2ix+1)/(2dx), y at t = (2iy+1)/(2dy).
            let tx = (1 + 2 * ix) * dy;
            let ty = (1 + 2 * iy) * dx;
            if tx == ty {
                if self.is_blocked(x + sx, y) || self.is_blocked(x, y + sy) {
                    return false;
                }
                x += sx;
                y += sy;
                ix += 1;
                iy += 1;
            } else if tx < ty {
                x += sx;
                ix += 1;
            } else {
                y += sy;
                iy += 1;
            }
            if self.is_blocked(x, y) {
                return false;
            }
        }
        true
    }

    /// Parse a Moving AI `.map` file.
    pub fn load_movingai(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end_matches('\r')));
        let mut height = None;
        let mut width = None;
        let mut saw_type = false;
        let mut last_line = 0;
        loop {
            let Some((no, line)) = lines.next() else {
                return Err(Error::parse(last_line + 1, "missing `map` header line"));
            };
            last_line = no;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let key = parts.next().unwrap_or_default();
            let value = parts.next();
            match key {
                "type" => {
                    if value.is_none() {
                        return Err(Error::parse(no, "`type` needs a value"));
                    }
                    saw_type = true;
                }
                "height" | "width" => {
                    let n = value
                        .and_then(|v| v.parse::<usize>().ok())
                        .filter(|&n| n > 0)
                        .ok_or_else(|| Error::parse(no, format!("bad `{key}` value")))?;
                    if key == "height" {
                        height = Some(n);
                    } else {
                        width = Some(n);
                    }
                }
                "map" => break,
                other => return Err(Error::parse(no, format!("unexpected header line `{other}`"))),
            }
            if parts.next().is_some() {
                return Err(Error::parse(no, "trailing tokens in header line"));
            }
        }
        if !saw_type {
            return Err(Error::parse(last_line, "missing `type` header line"));
        }
        let height = height.ok_or_else(|| Error::parse(last_line, "missing `height` header"))?;
        let width = width.ok_or_else(|| Error::parse(last_line, "missing `width` header"))?;

        let mut map = GridMap::new(width, height, DEFAULT_CELL_SIZE)?;
        for y in 0..height {
            let Some((no, row)) = lines.next() else {
                return Err(Error::parse(
                    last_line + 1,
                    format!("expected {height} map rows, found {y}"),
                ));
            };
            last_line = no;
            let row: Vec<char> = row.chars().collect();
            if row.len() != width {
                return Err(Error::parse(
                    no,
                    format!("row has {} cells, expected {width}", row.len()),
                ));
            }
            for (x, ch) in row.into_iter().enumerate() {
                let blocked = match ch {
                    '.' | 'G' | 'S' => false,
                    '@' | 'O' | 'T' | 'W' => true,
                    other => {
                        return Err(Error::parse(no, format!("unknown cell character `{other}`")))
                    }
                };
                map.occupancy[y * width + x] = blocked;
            }
        }
        for (no, rest) in lines {
            if !rest.trim().is_empty() {
                return Err(Error::parse(no, "unexpected content after map body"));
            }
        }
        Ok(map)
    }

    /// Serialize as an octile Moving AI map using `.` and `@`.
    pub fn to_movingai(&self) -> String {
        let mut out = String::with_capacity((self.width + 1) * self.height + 48);
        let _ = write!(
            out,
            "type octile\nheight {}\nwidth {}\nmap\n",
            self.height, self.width
        );
        for y in 0..self.height {
            for x in 0..self.width {
                out.push(if self.occupancy[y * self.width + x] { '@' } else { '.' });
            }
            out.push('\n');
        }
        out
    }
}

/// Per-cell Euclidean distance (meters) from the cell center to the nearest
/// blocked cell center, out-of-bounds cells included.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceMap {
    width: usize,
    height: usize,
    cell_size: f64,
    clearance: Vec<f64>,
}

impl DistanceMap {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn cell_size(&self) -> f64 {
        self.cell_size
    }

    /// Clearance of a cell in meters; 0 outside the grid.
    pub fn cell_clearance(&self, x: i64, y: i64) -> f64 {
        if x < 0 || y < 0 || x as usize >= self.width || y as usize >= self.height {
            0.0
        } else {
            self.clearance[y as usize * self.width + x as usize]
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.clearance
    }

    /// Bilinear interpolation of the cell-center clearances around `(x, y)`
    /// (meters). Positions off the map have zero clearance.
    pub fn state_clearance(&self, x: f64, y: f64) -> f64 {
        let cs = self.cell_size;
        if !(x >= 0.0 && y >= 0.0 && x <= self.width as f64 * cs && y <= self.height as f64 * cs) {
            return 0.0;
        }
        let u = x / cs - 0.5;
        let v = y / cs - 0.5;
        let i0 = u.floor();
        let j0 = v.floor();
        let fx = u - i0;
        let fy = v - j0;
        let (i0, j0) = (i0 as i64, j0 as i64);
        let c00 = self.cell_clearance(i0, j0);
        let c10 = self.cell_clearance(i0 + 1, j0);
        let c01 = self.cell_clearance(i0, j0 + 1);
        let c11 = self.cell_clearance(i0 + 1, j0 + 1);
        let bottom = c00 + (c10 - c00) * fx;
        let top = c01 + (c11 - c01) * fx;
        bottom + (top - bottom) * fy
    }

    /// Unit ascent direction of the interpolated clearance field, from
    /// central differences one cell wide. Zero on plateaus and within one
    /// cell of the map border.
    pub fn gradient_at(&self, x: f64, y: f64) -> Vec2 {
        let h = self.cell_size;
        let w = self.width as f64 * h;
        let ht = self.height as f64 * h;
        if !(x >= h && y >= h && x <= w - h && y <= ht - h) {
            return Vec2::ZERO;
        }
        let gx = (self.state_clearance(x + h, y) - self.state_clearance(x - h, y)) / (2.0 * h);
        let gy = (self.state_clearance(x, y + h) - self.state_clearance(x, y - h)) / (2.0 * h);
        let n = gx.hypot(gy);
        if n > 1e-9 {
            Vec2::new(gx / n, gy / n)
        } else {
            Vec2::ZERO
        }
    }
}

/// Exact Euclidean distance transform (separable lower-envelope method,
/// linear in the number of cells).
pub fn distance_transform(map: &GridMap) -> DistanceMap {
    // Pad with a ring of blocked cells; any out-of-bounds cell is never
    // closer than its projection onto this ring.
    let pw = map.width + 2;
    let ph = map.height + 2;
    let mut grid = vec![f64::INFINITY; pw * ph];
    for py in 0..ph {
        for px in 0..pw {
            if map.is_blocked(px as i64 - 1, py as i64 - 1) {
                grid[py * pw + px] = 0.0;
            }
        }
    }

    let n = pw.max(ph);
    let mut f = vec![0.0; n];
    let mut d = vec![0.0; n];
    let mut v = vec![0usize; n];
    let mut z = vec![0.0; n + 1];

    for px in 0..pw {
        for py in 0..ph {
            f[py] = grid[py * pw + px];
        }
        lower_envelope(&f[..ph], &mut d[..ph], &mut v, &mut z);
        for py in 0..ph {
            grid[py * pw + px] = d[py];
        }
    }
    for py in 0..ph {
        let row = &mut grid[py * pw..(py + 1) * pw];
        f[..pw].copy_from_slice(row);
        lower_envelope(&f[..pw], &mut d[..pw], &mut v, &mut z);
        row.copy_from_slice(&d[..pw]);
    }

    let mut clearance = Vec::with_capacity(map.width * map.height);
    for y in 0..map.height {
        for x in 0..map.width {
            let sq = grid[(y + 1) * pw + x + 1];
            clearance.push(sq.sqrt() * map.cell_size);
        }
    }
    DistanceMap {
        width: map.width,
        height: map.height,
        cell_size: map.cell_size,
        clearance,
    }
}

/// 1D squared distance transform of sampled function `f` into `d`.
fn lower_envelope(f: &[f64], d: &mut [f64], v: &mut [usize], z: &mut [f64]) {
    let n = f.len();
    let mut k: usize = 0;
    let mut any = false;
    for q in 0..n {
        if !f[q].is_finite() {
            continue;
        }
        if !any {
            any = true;
            v[0] = q;
            z[0] = f64::NEG_INFINITY;
            z[1] = f64::INFINITY;
            continue;
        }
        let fq = f[q] + (q * q) as f64;
        let mut s;
        loop {
            let p = v[k];
            s = (fq - (f[p] + (p * p) as f64)) / (2.0 * q as f64 - 2.0 * p as f64);
            // z[0] is -inf, so this stops at k == 0
            if s <= z[k] {
                k -= 1;
            } else {
                break;
            }
        }
        k += 1;
        v[k] = q;
        z[k] = s;
        z[k + 1] = f64::INFINITY;
    }
    if !any {
        d.fill(f64::INFINITY);
        return;
    }
    k = 0;
    for (q, dq) in d.iter_mut().enumerate() {
        while z[k + 1] < q as f64 {
            k += 1;
        }
        let p = v[k];
        let diff = q as f64 - p as f64;
        *dq = diff * diff + f[p];
    }
}
