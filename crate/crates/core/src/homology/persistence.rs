//! Persistent homology of the alpha filtration.
//!
//! Dimension 0 is paired with a union-find over edges in filtration order;
//! dimension 1 by column reduction of the Z2 boundary matrix with simplices
//! sorted by (radius, dim, vertex order). Zero-persistence pairs are kept in
//! the diagram; they cannot contribute to any summary curve.

use std::fmt::Write as _;

use crate::geometry::AlphaFiltration;

/// One topological feature with its birth and death radius
/// (`f64::INFINITY` for the essential component).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Feature {
    pub dim: u8,
    pub birth: f64,
    pub death: f64,
}

#[derive(Debug, Clone, Default)]
pub struct PersistenceDiagram {
    features: Vec<Feature>,
}

impl PersistenceDiagram {
    pub fn features(&self) -> &[Feature] {
        &self.features
    }

    pub fn features_of_dim(&self, dim: u8) -> impl Iterator<Item = &Feature> {
        self.features.iter().filter(move |f| f.dim == dim)
    }

    /// CSV export with columns dim, birth, death (infinity as `inf`).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("dim,birth,death\n");
        for f in &self.features {
            if f.death.is_infinite() {
                writeln!(out, "{},{},inf", f.dim, f.birth).unwrap();
            } else {
                writeln!(out, "{},{},{}", f.dim, f.birth, f.death).unwrap();
            }
        }
        out
    }
}

struct UnionFind {
    parent: Vec<u32>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let up = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = up;
            x = up;
        }
        x
    }

    /// Union by rank, ties to the smaller root index; true if merged.
    fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (hi, lo) = match self.rank[ra as usize].cmp(&self.rank[rb as usize]) {
            std::cmp::Ordering::Greater => (ra, rb),
            std::cmp::Ordering::Less => (rb, ra),
            std::cmp::Ordering::Equal => {
                let hi = ra.min(rb);
                self.rank[hi as usize] += 1;
                (hi, ra.max(rb))
            }
        };
        self.parent[lo as usize] = hi;
        true
    }
}

/// Compute the persistence diagram of an alpha filtration.
pub fn persistence(filtration: &AlphaFiltration) -> PersistenceDiagram {
    let simplices = filtration.simplices();
    let n = filtration.n_vertices();
    let mut features = Vec::with_capacity(n + simplices.len() / 6);

    // Filtration position of every edge, keyed by its vertex pair.
    let mut edge_pos: Vec<([u32; 2], u32)> = simplices
        .iter()
        .enumerate()
        .filter(|(_, s)| s.simplex.dim == 1)
        .map(|(i, s)| ([s.simplex.vertices[0], s.simplex.vertices[1]], i as u32))
        .collect();
    edge_pos.sort_unstable();
    let pos_of_edge = |a: u32, b: u32| -> u32 {
        let key = if a < b { [a, b] } else { [b, a] };
        let i = edge_pos.partition_point(|(e, _)| *e < key);
        debug_assert!(edge_pos[i].0 == key);
        edge_pos[i].1
    };

    // Dimension 0 by union-find; surviving roots are essential features.
    let mut uf = UnionFind::new(n);
    let mut components = n;
    for fs in simplices {
        if fs.simplex.dim == 1 {
            let [a, b, _] = fs.simplex.vertices;
            if uf.union(a, b) {
                features.push(Feature { dim: 0, birth: 0.0, death: fs.radius });
                components -= 1;
            }
        }
    }
    for _ in 0..components {
        features.push(Feature { dim: 0, birth: 0.0, death: f64::INFINITY });
    }

    // Dimension 1 by Z2 column reduction over triangle columns. The pivot of
    // a reduced column is the loop-creating edge paired with that triangle.
    let mut pivot_owner: Vec<Option<Vec<u32>>> = vec![None; simplices.len()];
    let mut pivot_death: Vec<f64> = vec![0.0; simplices.len()];
    let mut scratch: Vec<u32> = Vec::new();
    for fs in simplices {
        if fs.simplex.dim != 2 {
            continue;
        }
        let [a, b, c] = fs.simplex.vertices;
        let mut column = vec![
            pos_of_edge(a, b),
            pos_of_edge(a, c),
            pos_of_edge(b, c),
        ];
        column.sort_unstable();
        loop {
            let Some(&pivot) = column.last() else {
                unreachable!("planar triangle column reduced to zero");
            };
            match &pivot_owner[pivot as usize] {
                None => {
                    let birth = simplices[pivot as usize].radius;
                    features.push(Feature { dim: 1, birth, death: fs.radius });
                    pivot_death[pivot as usize] = fs.radius;
                    pivot_owner[pivot as usize] = Some(column);
                    break;
                }
                Some(other) => {
                    // column ^= other (symmetric difference of sorted vecs).
                    scratch.clear();
                    let (mut i, mut j) = (0, 0);
                    while i < column.len() && j < other.len() {
                        match column[i].cmp(&other[j]) {
                            std::cmp::Ordering::Less => {
                                scratch.push(column[i]);
                                i += 1;
                            }
                            std::cmp::Ordering::Greater => {
                                scratch.push(other[j]);
                                j += 1;
                            }
                            std::cmp::Ordering::Equal => {
                                i += 1;
                                j += 1;
                            }
                        }
                    }
                    scratch.extend_from_slice(&column[i..]);
                    scratch.extend_from_slice(&other[j..]);
                    std::mem::swap(&mut column, &mut scratch);
                }
            }
        }
    }

    debug_assert_eq!(
        features.iter().filter(|f| f.dim == 0).count(),
        n,
        "one 0-dimensional feature per point"
    );
    debug_assert!(features.iter().all(|f| f.death >= f.birth));
    PersistenceDiagram { features }
}
