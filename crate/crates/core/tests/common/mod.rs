//! Shared test helpers: a brute-force persistent-homology oracle based on
//! Z2 boundary-matrix ranks, independent of the production pairing code.

#![allow(dead_code)]

use spatgof::geometry::{alpha_filtration, delaunay, AlphaFiltration, Point, PointPattern, Window};
use spatgof::homology::{persistence, PersistenceDiagram};

/// Gaussian elimination rank of a Z2 matrix whose columns are u64 bitmasks
/// (supports up to 64 rows).
fn z2_rank(mut columns: Vec<u64>) -> usize {
    let mut rank = 0;
    for bit in 0..64 {
        let mask = 1u64 << bit;
        let Some(pivot) = (rank..columns.len()).find(|&c| columns[c] & mask != 0) else {
            continue;
        };
        columns.swap(rank, pivot);
        let p = columns[rank];
        for c in columns.iter_mut().skip(rank + 1) {
            if *c & mask != 0 {
                *c ^= p;
            }
        }
        rank += 1;
    }
    rank
}

/// Dimension of the intersection of the column space of `columns` with the
/// coordinate subspace spanned by rows where `keep_mask` is set.
fn z2_subspace_intersection_dim(columns: &[u64], keep_mask: u64) -> usize {
    let total = z2_rank(columns.to_vec());
    let projected: Vec<u64> = columns.iter().map(|c| c & !keep_mask).collect();
    total - z2_rank(projected)
}

/// Persistence pairs of one dimension as a sorted multiset of
/// (birth, death) with `f64::INFINITY` for essential features.
pub type PairMultiset = Vec<(f64, f64)>;

/// Brute-force diagram: enumerate the distinct filtration radii, compute
/// persistent Betti numbers of every subcomplex pair from boundary-matrix
/// ranks over Z2, and read the pairs off the rank jumps. Zero-persistence
/// pairs are invisible to this construction by design.
pub fn brute_force_diagram(filtration: &AlphaFiltration, dim: u8) -> PairMultiset {
    let simplices = filtration.simplices();
    assert!(simplices.len() <= 60, "oracle is for tiny complexes");
    let mut radii: Vec<f64> = simplices.iter().map(|s| s.radius).collect();
    radii.sort_by(|a, b| a.partial_cmp(b).unwrap());
    radii.dedup();
    let k = radii.len();

    let vertices: Vec<usize> = (0..simplices.len())
        .filter(|&i| simplices[i].simplex.dim == 0)
        .collect();
    let edges: Vec<usize> = (0..simplices.len())
        .filter(|&i| simplices[i].simplex.dim == 1)
        .collect();
    let triangles: Vec<usize> = (0..simplices.len())
        .filter(|&i| simplices[i].simplex.dim == 2)
        .collect();
    let vertex_row = |v: u32| -> usize {
        vertices
            .iter()
            .position(|&i| simplices[i].simplex.vertices[0] == v)
            .unwrap()
    };
    let edge_row = |a: u32, b: u32| -> usize {
        let key = if a < b { [a, b] } else { [b, a] };
        edges
            .iter()
            .position(|&i| simplices[i].simplex.vertices[..2] == key)
            .unwrap()
    };

    // Boundary columns over the full complex (rows in the smaller dimension).
    let d1_cols: Vec<u64> = edges
        .iter()
        .map(|&i| {
            let v = simplices[i].simplex.vertices;
            (1u64 << vertex_row(v[0])) | (1u64 << vertex_row(v[1]))
        })
        .collect();
    let d2_cols: Vec<u64> = triangles
        .iter()
        .map(|&i| {
            let v = simplices[i].simplex.vertices;
            (1u64 << edge_row(v[0], v[1]))
                | (1u64 << edge_row(v[0], v[2]))
                | (1u64 << edge_row(v[1], v[2]))
        })
        .collect();

    // Persistent Betti number beta_dim(i -> j) for radius indices i <= j,
    // with index usize::MAX meaning the empty complex.
    let persistent_betti = |i: usize, j: usize| -> i64 {
        if i == usize::MAX {
            return 0;
        }
        let (ri, rj) = (radii[i], radii[j]);
        let in_i = |s: usize| simplices[s].radius <= ri;
        let in_j = |s: usize| simplices[s].radius <= rj;
        match dim {
            0 => {
                let nv = vertices.iter().filter(|&&s| in_i(s)).count() as i64;
                // Z_0(K_i) is everything; B_0(K_j) restricted to K_i's rows.
                let keep: u64 = vertices
                    .iter()
                    .enumerate()
                    .filter(|&(_, &s)| in_i(s))
                    .map(|(row, _)| 1u64 << row)
                    .sum();
                let bd: Vec<u64> = edges
                    .iter()
                    .enumerate()
                    .filter(|&(_, &s)| in_j(s))
                    .map(|(c, _)| d1_cols[c])
                    .collect();
                nv - z2_subspace_intersection_dim(&bd, keep) as i64
            }
            1 => {
                // Z_1(K_i): kernel of d1 on K_i's edges.
                let cols_i: Vec<u64> = edges
                    .iter()
                    .enumerate()
                    .filter(|&(_, &s)| in_i(s))
                    .map(|(c, _)| d1_cols[c])
                    .collect();
                let z1 = cols_i.len() as i64 - z2_rank(cols_i) as i64;
                let keep: u64 = edges
                    .iter()
                    .enumerate()
                    .filter(|&(_, &s)| in_i(s))
                    .map(|(row, _)| 1u64 << row)
                    .sum();
                let bd: Vec<u64> = triangles
                    .iter()
                    .enumerate()
                    .filter(|&(_, &s)| in_j(s))
                    .map(|(c, _)| d2_cols[c])
                    .collect();
                // Boundaries of K_j supported on K_i's edges are cycles there.
                z1 - z2_subspace_intersection_dim(&bd, keep) as i64
            }
            _ => 0,
        }
    };

    let mut pairs: PairMultiset = Vec::new();
    for i in 0..k {
        let prev_i = if i == 0 { usize::MAX } else { i - 1 };
        for j in (i + 1)..k {
            let mult = (persistent_betti(i, j - 1) - persistent_betti(i, j))
                - (persistent_betti(prev_i, j - 1) - persistent_betti(prev_i, j));
            for _ in 0..mult {
                pairs.push((radii[i], radii[j]));
            }
        }
        let essential = persistent_betti(i, k - 1) - persistent_betti(prev_i, k - 1);
        for _ in 0..essential {
            pairs.push((radii[i], f64::INFINITY));
        }
    }
    pairs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pairs
}

/// The implementation's diagram reduced to the oracle's view: positive
/// persistence pairs of one dimension, sorted.
pub fn diagram_pairs(diagram: &PersistenceDiagram, dim: u8) -> PairMultiset {
    let mut pairs: PairMultiset = diagram
        .features_of_dim(dim)
        .filter(|f| f.death > f.birth)
        .map(|f| (f.birth, f.death))
        .collect();
    pairs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pairs
}

/// Build pattern, filtration and diagram for raw coordinate tuples.
pub fn small_pipeline(points: &[(f64, f64)]) -> (AlphaFiltration, PersistenceDiagram) {
    let pts: Vec<Point> = points.iter().map(|&(x, y)| Point::new(x, y)).collect();
    let pat = PointPattern::new(pts, Window::new(-1e6, 1e6, -1e6, 1e6).unwrap()).unwrap();
    let filt = alpha_filtration(&delaunay(&pat).unwrap());
    let diag = persistence(&filt);
    (filt, diag)
}

/// Deterministic uniform scatter used by oracle and acceptance tests.
pub struct TestRng(u64);

impl TestRng {
    pub fn new(seed: u64) -> Self {
        TestRng(seed.wrapping_mul(0x9E3779B97F4A7C15) | 1)
    }

    pub fn next_f64(&mut self) -> f64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (self.0 >> 11) as f64 / (1u64 << 53) as f64
    }
}

/// Check oracle agreement for one pattern, panicking with context if the
/// diagrams differ.
pub fn assert_oracle_agreement(points: &[(f64, f64)]) {
    let (filt, diag) = small_pipeline(points);
    for dim in [0u8, 1u8] {
        let oracle = brute_force_diagram(&filt, dim);
        let ours = diagram_pairs(&diag, dim);
        assert_eq!(
            oracle, ours,
            "dim {dim} diagram mismatch for points {points:?}"
        );
    }
}

/// The 20-curve envelope scenario: the observed curve (index 0) is the
/// unique erl-extreme curve, while five simulated curves each spike at a
/// grid point where the other 19 coincide, giving them continuous rank 0.
/// The erl test then rejects with p = 1/20 while the cont test accepts with
/// p = 6/20.
pub fn appendix_scenario_curves() -> Vec<Vec<f64>> {
    let n_grid = 8;
    let mut curves = vec![vec![0.0f64; n_grid]; 20];
    // Five tie traps: simulation k spikes at grid point k - 1.
    for k in 1..=5 {
        curves[k][k - 1] = 1.0;
    }
    // Two points where the observed curve dominates a continuous spread
    // whose minimum is attained twice (so no simulation is pointwise
    // extreme there).
    curves[0][5] = 10.0;
    curves[0][6] = 10.0;
    for (pos, sim) in (1..=19).enumerate() {
        // Grid point 5: sims 1, 2 share the minimum 0.5; the rest spread.
        curves[sim][5] = if sim <= 2 { 0.5 } else { 0.6 + 0.1 * (sim - 3) as f64 };
        // Grid point 6: sims 18, 19 share the minimum instead.
        curves[sim][6] = if sim >= 18 { 0.5 } else { 0.6 + 0.1 * pos as f64 };
    }
    // One fully tied point.
    for c in &mut curves {
        c[7] = 7.0;
    }
    curves
}
