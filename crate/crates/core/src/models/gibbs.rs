//! Birth/death Metropolis-Hastings sampler for pairwise-interaction Gibbs
//! processes (Strauss and hard core).
//!
//! Proposals are symmetric (probability 1/2 birth, 1/2 death) with the
//! Geyer-Moller acceptance ratios for the unnormalized density
//! `beta^n gamma^{s(x)}`, where `s` counts pairs closer than the interaction
//! radius. `gamma = 0` (with `0^0 = 1`) is the hard core process. The chain
//! is not a perfect sampler; exactness is validated statistically.

use rand::Rng;

use crate::error::{Error, Result};
use crate::geometry::{Point, PointPattern, Window};

use super::rng::{uniform, RngStream};

/// Default number of burn-in proposals.
pub const DEFAULT_CHAIN_LENGTH: usize = 100_000;

/// Dynamic bucket grid over the window; cells are at least the interaction
/// radius wide so neighbor counting only scans a 3 x 3 block.
struct DynGrid {
    window: Window,
    nx: usize,
    ny: usize,
    cells: Vec<Vec<u32>>,
}

impl DynGrid {
    fn new(window: &Window, radius: f64) -> Self {
        let nx = ((window.width() / radius).floor() as usize).clamp(1, 1024);
        let ny = ((window.height() / radius).floor() as usize).clamp(1, 1024);
        DynGrid {
            window: *window,
            nx,
            ny,
            cells: vec![Vec::new(); nx * ny],
        }
    }

    fn cell_index(&self, p: &Point) -> usize {
        let cx = (((p.x - self.window.x0) / self.window.width() * self.nx as f64) as usize)
            .min(self.nx - 1);
        let cy = (((p.y - self.window.y0) / self.window.height() * self.ny as f64) as usize)
            .min(self.ny - 1);
        cy * self.nx + cx
    }

    fn insert(&mut self, id: u32, p: &Point) {
        let c = self.cell_index(p);
        self.cells[c].push(id);
    }

    fn remove(&mut self, id: u32, p: &Point) {
        let c = self.cell_index(p);
        let pos = self.cells[c].iter().position(|&x| x == id).unwrap();
        self.cells[c].swap_remove(pos);
    }

    fn count_neighbors(&self, p: &Point, radius: f64, skip: u32, points: &[Point]) -> usize {
        let cx = (((p.x - self.window.x0) / self.window.width() * self.nx as f64) as isize)
            .clamp(0, self.nx as isize - 1);
        let cy = (((p.y - self.window.y0) / self.window.height() * self.ny as f64) as isize)
            .clamp(0, self.ny as isize - 1);
        let r_sq = radius * radius;
        let mut count = 0;
        for iy in (cy - 1).max(0)..=(cy + 1).min(self.ny as isize - 1) {
            for ix in (cx - 1).max(0)..=(cx + 1).min(self.nx as isize - 1) {
                for &id in &self.cells[iy as usize * self.nx + ix as usize] {
                    if id == skip {
                        continue;
                    }
                    let q = &points[id as usize];
                    let dx = q.x - p.x;
                    let dy = q.y - p.y;
                    if dx * dx + dy * dy <= r_sq {
                        count += 1;
                    }
                }
            }
        }
        count
    }
}

struct GibbsState {
    points: Vec<Point>,
    free: Vec<u32>,
    live: Vec<u32>,
    live_pos: Vec<usize>,
    grid: DynGrid,
}

impl GibbsState {
    fn new(window: &Window, radius: f64) -> Self {
        GibbsState {
            points: Vec::new(),
            free: Vec::new(),
            live: Vec::new(),
            live_pos: Vec::new(),
            grid: DynGrid::new(window, radius),
        }
    }

    fn len(&self) -> usize {
        self.live.len()
    }

    fn insert(&mut self, p: Point) {
        let id = match self.free.pop() {
            Some(id) => {
                self.points[id as usize] = p;
                id
            }
            None => {
                self.points.push(p);
                self.live_pos.push(usize::MAX);
                (self.points.len() - 1) as u32
            }
        };
        self.live_pos[id as usize] = self.live.len();
        self.live.push(id);
        self.grid.insert(id, &p);
    }

    fn remove_at(&mut self, live_index: usize) {
        let id = self.live[live_index];
        let p = self.points[id as usize];
        self.live.swap_remove(live_index);
        if live_index < self.live.len() {
            self.live_pos[self.live[live_index] as usize] = live_index;
        }
        self.grid.remove(id, &p);
        self.free.push(id);
    }

    fn neighbors(&self, p: &Point, radius: f64, skip: u32) -> usize {
        self.grid.count_neighbors(p, radius, skip, &self.points)
    }

    fn to_points(&self) -> Vec<Point> {
        self.live.iter().map(|&id| self.points[id as usize]).collect()
    }
}

fn gamma_pow(gamma: f64, t: usize) -> f64 {
    if gamma == 0.0 {
        if t == 0 {
            1.0
        } else {
            0.0
        }
    } else {
        gamma.powi(t as i32)
    }
}

fn run_chain(
    beta: f64,
    gamma: f64,
    radius: f64,
    window: &Window,
    rng: &mut impl Rng,
    state: &mut GibbsState,
    proposals: usize,
) {
    let area = window.area();
    for _ in 0..proposals {
        if rng.gen::<f64>() < 0.5 {
            // Birth.
            let p = Point::new(
                uniform(rng, window.x0, window.x1),
                uniform(rng, window.y0, window.y1),
            );
            let t = state.neighbors(&p, radius, u32::MAX);
            let ratio = beta * area / (state.len() + 1) as f64 * gamma_pow(gamma, t);
            if rng.gen::<f64>() < ratio.min(1.0) {
                state.insert(p);
            }
        } else {
            // Death.
            if state.len() == 0 {
                continue;
            }
            let pick = (rng.gen::<f64>() * state.len() as f64) as usize;
            let pick = pick.min(state.len() - 1);
            let id = state.live[pick];
            let p = state.points[id as usize];
            let t = state.neighbors(&p, radius, id);
            let inv_interaction = if gamma == 0.0 {
                // A valid hard core state has t == 0.
                if t == 0 {
                    1.0
                } else {
                    f64::INFINITY
                }
            } else {
                gamma.powi(-(t as i32))
            };
            let ratio = state.len() as f64 / (beta * area) * inv_interaction;
            if rng.gen::<f64>() < ratio.min(1.0) {
                state.remove_at(pick);
            }
        }
    }
}

fn validate(beta: f64, gamma: f64, radius: f64) -> Result<()> {
    if !(beta > 0.0) {
        return Err(Error::InvalidParameter {
            name: "beta",
            message: format!("must be positive, got {beta}"),
        });
    }
    if !(radius > 0.0) {
        return Err(Error::InvalidParameter {
            name: "radius",
            message: format!("must be positive, got {radius}"),
        });
    }
    if !(0.0..=1.0).contains(&gamma) {
        return Err(Error::InvalidParameter {
            name: "gamma",
            message: format!("must lie in [0, 1], got {gamma}"),
        });
    }
    Ok(())
}

/// Strauss process sampler: burn-in from the empty pattern.
pub fn sample_strauss(
    beta: f64,
    gamma: f64,
    radius: f64,
    window: &Window,
    stream: RngStream,
    chain_length: usize,
) -> Result<PointPattern> {
    validate(beta, gamma, radius)?;
    let mut rng = stream.rng();
    let mut state = GibbsState::new(window, radius);
    run_chain(beta, gamma, radius, window, &mut rng, &mut state, chain_length);
    Ok(PointPattern::new(state.to_points(), *window).expect("chain states are simple"))
}

/// Hard core process sampler: burn-in from a dart-throwing initial state
/// that already satisfies the hard core constraint.
///
/// Infeasible parameter combinations (packing densities the dart throwing
/// cannot reach) are not detected; the chain simply mixes from whatever
/// initial state was achieved.
pub fn sample_hardcore(
    beta: f64,
    radius: f64,
    window: &Window,
    stream: RngStream,
    chain_length: usize,
) -> Result<PointPattern> {
    validate(beta, 0.0, radius)?;
    let mut rng = stream.rng();
    let mut state = GibbsState::new(window, radius);
    // Dart throwing toward the target intensity.
    let target = (beta * window.area()).ceil() as usize;
    let mut attempts = 0;
    while state.len() < target && attempts < 10 * target.max(1) {
        attempts += 1;
        let p = Point::new(
            uniform(&mut rng, window.x0, window.x1),
            uniform(&mut rng, window.y0, window.y1),
        );
        if state.neighbors(&p, radius, u32::MAX) == 0 {
            state.insert(p);
        }
    }
    run_chain(beta, 0.0, radius, window, &mut rng, &mut state, chain_length);
    Ok(PointPattern::new(state.to_points(), *window).expect("chain states are simple"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn min_pairwise(pat: &PointPattern) -> f64 {
        let pts = pat.points();
        let mut best = f64::INFINITY;
        for i in 0..pts.len() {
            for j in (i + 1)..pts.len() {
                best = best.min(pts[i].dist(&pts[j]));
            }
        }
        best
    }

    #[test]
    fn hardcore_respects_minimum_distance() {
        let w = Window::square_with_area(1.0).unwrap();
        for i in 0..10 {
            let pat = sample_hardcore(80.0, 0.05, &w, RngStream::new(21, i), 20_000).unwrap();
            assert!(pat.len() > 10);
            assert!(min_pairwise(&pat) >= 0.05, "draw {i} violates hard core");
        }
    }

    #[test]
    fn strauss_gamma_zero_respects_hard_core() {
        let w = Window::square_with_area(1.0).unwrap();
        for i in 0..10 {
            let pat = sample_strauss(80.0, 0.0, 0.05, &w, RngStream::new(33, i), 20_000).unwrap();
            assert!(min_pairwise(&pat) >= 0.05, "draw {i} violates hard core");
        }
    }

    #[test]
    fn strauss_gamma_one_matches_poisson_mean() {
        // gamma = 1 removes the interaction term: counts are Poisson(beta|W|).
        let w = Window::square_with_area(1.0).unwrap();
        let beta = 60.0;
        let n_draws = 60;
        let mut total = 0;
        for i in 0..n_draws {
            total += sample_strauss(beta, 1.0, 0.05, &w, RngStream::new(4, i), 30_000)
                .unwrap()
                .len();
        }
        let mean = total as f64 / n_draws as f64;
        let se = (beta / n_draws as f64).sqrt();
        assert!((mean - beta).abs() < 4.0 * se, "mean {mean} vs {beta}");
    }

    #[test]
    fn rejects_bad_parameters() {
        let w = Window::square_with_area(1.0).unwrap();
        assert!(sample_strauss(-1.0, 0.5, 0.1, &w, RngStream::new(0, 0), 10).is_err());
        assert!(sample_strauss(10.0, 1.5, 0.1, &w, RngStream::new(0, 0), 10).is_err());
        assert!(sample_hardcore(10.0, 0.0, &w, RngStream::new(0, 0), 10).is_err());
    }

    #[test]
    fn deterministic_given_stream() {
        let w = Window::square_with_area(1.0).unwrap();
        let a = sample_strauss(50.0, 0.6, 0.08, &w, RngStream::new(8, 2), 5_000).unwrap();
        let b = sample_strauss(50.0, 0.6, 0.08, &w, RngStream::new(8, 2), 5_000).unwrap();
        assert_eq!(a.points(), b.points());
    }
}
