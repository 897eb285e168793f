use super::pattern::{Point, Window};

/// Uniform bucket grid over a window for nearest-neighbor and range queries.
///
/// Cell indices are derived from coordinates relative to the window origin,
/// so translating pattern and window together leaves all query results
/// unchanged whenever the coordinate differences are unchanged.
#[derive(Debug, Clone)]
pub struct BucketGrid {
    window: Window,
    nx: usize,
    ny: usize,
    // CSR layout: points of cell c are ids[start[c]..start[c + 1]].
    start: Vec<u32>,
    ids: Vec<u32>,
    points: Vec<Point>,
}

impl BucketGrid {
    /// Build a grid with roughly `target_per_cell` points per cell.
    pub fn new(points: &[Point], window: &Window, target_per_cell: f64) -> Self {
        let n = points.len().max(1);
        let area = window.area();
        let cell = (area * target_per_cell / n as f64).sqrt().max(1e-12);
        Self::with_cell_size(points, window, cell)
    }

    /// Build a grid whose cells are no smaller than `cell` on either axis,
    /// so points within `cell` of each other are in the same or an adjacent
    /// cell.
    pub fn with_min_cell_size(points: &[Point], window: &Window, cell: f64) -> Self {
        let nx = ((window.width() / cell).floor() as usize).clamp(1, 4096);
        let ny = ((window.height() / cell).floor() as usize).clamp(1, 4096);
        Self::build(points, window, nx, ny)
    }

    pub fn with_cell_size(points: &[Point], window: &Window, cell: f64) -> Self {
        let nx = ((window.width() / cell).ceil() as usize).clamp(1, 4096);
        let ny = ((window.height() / cell).ceil() as usize).clamp(1, 4096);
        Self::build(points, window, nx, ny)
    }

    fn build(points: &[Point], window: &Window, nx: usize, ny: usize) -> Self {
        let ncells = nx * ny;
        let cell_x = window.width() / nx as f64;
        let cell_y = window.height() / ny as f64;
        let mut counts = vec![0u32; ncells + 1];
        let index = |p: &Point| -> usize {
            let ix = (((p.x - window.x0) / cell_x) as usize).min(nx - 1);
            let iy = (((p.y - window.y0) / cell_y) as usize).min(ny - 1);
            iy * nx + ix
        };
        for p in points {
            counts[index(p) + 1] += 1;
        }
        for c in 0..ncells {
            counts[c + 1] += counts[c];
        }
        let mut cursor = counts.clone();
        let mut ids = vec![0u32; points.len()];
        for (i, p) in points.iter().enumerate() {
            let c = index(p);
            ids[cursor[c] as usize] = i as u32;
            cursor[c] += 1;
        }
        BucketGrid {
            window: *window,
            nx,
            ny,
            start: counts,
            ids,
            points: points.to_vec(),
        }
    }

    fn cell_of(&self, x: f64, y: f64) -> (isize, isize) {
        let cell_x = self.window.width() / self.nx as f64;
        let cell_y = self.window.height() / self.ny as f64;
        let ix = ((x - self.window.x0) / cell_x).floor() as isize;
        let iy = ((y - self.window.y0) / cell_y).floor() as isize;
        (ix.clamp(0, self.nx as isize - 1), iy.clamp(0, self.ny as isize - 1))
    }

    /// Distance from `(x, y)` to the nearest stored point, skipping the point
    /// with index `skip` (pass `u32::MAX` to skip nothing).
    pub fn nearest_distance(&self, x: f64, y: f64, skip: u32) -> Option<f64> {
        if self.points.is_empty() || (self.points.len() == 1 && skip == 0) {
            return None;
        }
        let (cx, cy) = self.cell_of(x, y);
        let cell_x = self.window.width() / self.nx as f64;
        let cell_y = self.window.height() / self.ny as f64;
        let mut best_sq = f64::INFINITY;
        let max_ring = self.nx.max(self.ny) as isize;
        for ring in 0..=max_ring {
            // Once a candidate is found, one extra ring guarantees correctness.
            if best_sq.is_finite() {
                let safe = (ring - 1) as f64 * cell_x.min(cell_y);
                if safe > 0.0 && safe * safe >= best_sq {
                    break;
                }
            }
            let mut any_cell = false;
            for iy in (cy - ring)..=(cy + ring) {
                if iy < 0 || iy >= self.ny as isize {
                    continue;
                }
                for ix in (cx - ring)..=(cx + ring) {
                    if ix < 0 || ix >= self.nx as isize {
                        continue;
                    }
                    // Only the ring border (interior already visited).
                    if ring > 0 && (ix - cx).abs() != ring && (iy - cy).abs() != ring {
                        continue;
                    }
                    any_cell = true;
                    let c = iy as usize * self.nx + ix as usize;
                    for &id in &self.ids[self.start[c] as usize..self.start[c + 1] as usize] {
                        if id == skip {
                            continue;
                        }
                        let p = &self.points[id as usize];
                        let dx = p.x - x;
                        let dy = p.y - y;
                        let d2 = dx * dx + dy * dy;
                        if d2 < best_sq {
                            best_sq = d2;
                        }
                    }
                }
            }
            if !any_cell && best_sq.is_finite() {
                break;
            }
        }
        if best_sq.is_finite() {
            Some(best_sq.sqrt())
        } else {
            None
        }
    }

    /// Number of stored points within closed distance `r` of `(x, y)`,
    /// skipping index `skip`.
    pub fn count_within(&self, x: f64, y: f64, r: f64, skip: u32) -> usize {
        let (cx, cy) = self.cell_of(x, y);
        let cell_x = self.window.width() / self.nx as f64;
        let cell_y = self.window.height() / self.ny as f64;
        let rx = (r / cell_x).ceil() as isize + 1;
        let ry = (r / cell_y).ceil() as isize + 1;
        let r_sq = r * r;
        let mut count = 0;
        for iy in (cy - ry).max(0)..=(cy + ry).min(self.ny as isize - 1) {
            for ix in (cx - rx).max(0)..=(cx + rx).min(self.nx as isize - 1) {
                let c = iy as usize * self.nx + ix as usize;
                for &id in &self.ids[self.start[c] as usize..self.start[c + 1] as usize] {
                    if id == skip {
                        continue;
                    }
                    let p = &self.points[id as usize];
                    let dx = p.x - x;
                    let dy = p.y - y;
                    if dx * dx + dy * dy <= r_sq {
                        count += 1;
                    }
                }
            }
        }
        count
    }
}

/// Visit every unordered pair of points at distance `<= r_max`, calling
/// `f(i, j, distance)` with `i < j`. Brute force below a size cutoff,
/// bucketed sweep above it; both visit pairs in a deterministic order.
pub fn for_pairs_within<F: FnMut(usize, usize, f64)>(
    points: &[Point],
    window: &Window,
    r_max: f64,
    mut f: F,
) {
    let n = points.len();
    if n < 2 {
        return;
    }
    let r_sq = r_max * r_max;
    if n <= 128 {
        for i in 0..n {
            for j in (i + 1)..n {
                let d2 = points[i].dist_sq(&points[j]);
                if d2 <= r_sq {
                    f(i, j, d2.sqrt());
                }
            }
        }
        return;
    }
    let grid = BucketGrid::with_min_cell_size(points, window, r_max.max(1e-9));
    // For each point visit its own cell and the neighboring cells with higher
    // linear index, emitting each pair once with i < j.
    let nx = grid.nx as isize;
    let ny = grid.ny as isize;
    for cy in 0..ny {
        for cx in 0..nx {
            let c = (cy * nx + cx) as usize;
            let cur = &grid.ids[grid.start[c] as usize..grid.start[c + 1] as usize];
            // Within the cell.
            for a in 0..cur.len() {
                for b in (a + 1)..cur.len() {
                    let (mut i, mut j) = (cur[a] as usize, cur[b] as usize);
                    if i > j {
                        std::mem::swap(&mut i, &mut j);
                    }
                    let d2 = points[i].dist_sq(&points[j]);
                    if d2 <= r_sq {
                        f(i, j, d2.sqrt());
                    }
                }
            }
            // Forward neighbor cells (half stencil).
            const STENCIL: [(isize, isize); 4] = [(1, 0), (-1, 1), (0, 1), (1, 1)];
            for (dx, dy) in STENCIL {
                let (ox, oy) = (cx + dx, cy + dy);
                if ox < 0 || ox >= nx || oy < 0 || oy >= ny {
                    continue;
                }
                let o = (oy * nx + ox) as usize;
                let other = &grid.ids[grid.start[o] as usize..grid.start[o + 1] as usize];
                for &ai in cur {
                    for &bj in other {
                        let (mut i, mut j) = (ai as usize, bj as usize);
                        if i > j {
                            std::mem::swap(&mut i, &mut j);
                        }
                        let d2 = points[i].dist_sq(&points[j]);
                        if d2 <= r_sq {
                            f(i, j, d2.sqrt());
                        }
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scatter(n: usize, seed: u64) -> Vec<Point> {
        // Small deterministic LCG; test-local, independent of the model RNG.
        let mut state = seed.wrapping_mul(0x9E3779B97F4A7C15) | 1;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        (0..n).map(|_| Point::new(next(), next())).collect()
    }

    #[test]
    fn nearest_matches_brute_force() {
        let w = Window::new(0.0, 1.0, 0.0, 1.0).unwrap();
        let pts = scatter(200, 7);
        let grid = BucketGrid::new(&pts, &w, 2.0);
        for (i, p) in pts.iter().enumerate() {
            let brute = pts
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, q)| p.dist(q))
                .fold(f64::INFINITY, f64::min);
            let fast = grid.nearest_distance(p.x, p.y, i as u32).unwrap();
            assert_eq!(fast, brute);
        }
    }

    #[test]
    fn count_within_matches_brute_force() {
        let w = Window::new(0.0, 2.0, 0.0, 1.0).unwrap();
        let pts: Vec<Point> = scatter(150, 3)
            .into_iter()
            .map(|p| Point::new(p.x * 2.0, p.y))
            .collect();
        let grid = BucketGrid::with_cell_size(&pts, &w, 0.1);
        for r in [0.05, 0.13, 0.4] {
            for (i, p) in pts.iter().enumerate() {
                let brute = pts
                    .iter()
                    .enumerate()
                    .filter(|(j, q)| *j != i && p.dist(q) <= r)
                    .count();
                assert_eq!(grid.count_within(p.x, p.y, r, i as u32), brute);
            }
        }
    }

    #[test]
    fn pair_sweep_matches_brute_force() {
        let w = Window::new(0.0, 1.0, 0.0, 1.0).unwrap();
        let pts = scatter(400, 11);
        let r = 0.12;
        let mut fast: Vec<(usize, usize)> = Vec::new();
        for_pairs_within(&pts, &w, r, |i, j, _| fast.push((i, j)));
        fast.sort_unstable();
        let mut brute: Vec<(usize, usize)> = Vec::new();
        for i in 0..pts.len() {
            for j in (i + 1)..pts.len() {
                if pts[i].dist(&pts[j]) <= r {
                    brute.push((i, j));
                }
            }
        }
        assert_eq!(fast, brute);
    }
}
