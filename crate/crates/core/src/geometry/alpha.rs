//! Alpha-complex filtration of a Delaunay triangulation.
//!
//! Every simplex is tagged with the smallest ball radius `r` (not `r^2`) at
//! which it enters the alpha complex: vertices at 0, triangles at their
//! circumradius, edges at half their length when the diametral disc is empty
//! (a Gabriel edge) and otherwise at the smallest incident triangle radius.

use std::fmt::Write as _;

use robust::{orient2d, Coord};

use super::delaunay::Triangulation;
use super::pattern::Point;

const NONE: u32 = u32::MAX;

/// A simplex of dimension 0, 1 or 2 with sorted vertex indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Simplex {
    pub dim: u8,
    /// Vertex indices, ascending; unused slots hold `u32::MAX`.
    pub vertices: [u32; 3],
}

impl Simplex {
    pub fn vertex(v: u32) -> Self {
        Simplex { dim: 0, vertices: [v, NONE, NONE] }
    }

    pub fn edge(a: u32, b: u32) -> Self {
        debug_assert!(a < b);
        Simplex { dim: 1, vertices: [a, b, NONE] }
    }

    pub fn triangle(a: u32, b: u32, c: u32) -> Self {
        debug_assert!(a < b && b < c);
        Simplex { dim: 2, vertices: [a, b, c] }
    }
}

/// A simplex together with the radius at which it enters the complex.
#[derive(Debug, Clone, Copy)]
pub struct FilteredSimplex {
    pub simplex: Simplex,
    pub radius: f64,
}

/// Alpha filtration: all simplices of the Delaunay triangulation sorted by
/// (radius, dimension, vertex order), so faces precede cofaces.
#[derive(Debug, Clone)]
pub struct AlphaFiltration {
    simplices: Vec<FilteredSimplex>,
    n_vertices: usize,
}

impl AlphaFiltration {
    pub fn simplices(&self) -> &[FilteredSimplex] {
        &self.simplices
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn max_radius(&self) -> f64 {
        self.simplices.iter().map(|s| s.radius).fold(0.0, f64::max)
    }

    /// Radii of all simplices of one dimension, ascending.
    pub fn sorted_radii(&self, dim: u8) -> Vec<f64> {
        let mut r: Vec<f64> = self
            .simplices
            .iter()
            .filter(|s| s.simplex.dim == dim)
            .map(|s| s.radius)
            .collect();
        r.sort_by(|a, b| a.partial_cmp(b).unwrap());
        r
    }

    /// Debug export: CSV with columns dim, v1, v2, v3, radius.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("dim,v1,v2,v3,radius\n");
        for fs in &self.simplices {
            let v = fs.simplex.vertices;
            let field = |x: u32| -> String {
                if x == NONE {
                    String::new()
                } else {
                    x.to_string()
                }
            };
            writeln!(
                out,
                "{},{},{},{},{}",
                fs.simplex.dim,
                field(v[0]),
                field(v[1]),
                field(v[2]),
                fs.radius
            )
            .unwrap();
        }
        out
    }
}

fn circumradius(a: &Point, b: &Point, c: &Point) -> f64 {
    let la = a.dist(b);
    let lb = b.dist(c);
    let lc = c.dist(a);
    // orient2d computes twice the signed area with adaptive precision, so a
    // non-collinear triple never yields zero here.
    let cross = orient2d(
        Coord { x: a.x, y: a.y },
        Coord { x: b.x, y: b.y },
        Coord { x: c.x, y: c.y },
    )
    .abs();
    la * lb * lc / (2.0 * cross)
}

/// Build the alpha filtration of a triangulation.
pub fn alpha_filtration(tri: &Triangulation) -> AlphaFiltration {
    let pts = tri.points();
    let n = tri.n_vertices();
    let mut simplices: Vec<FilteredSimplex> =
        Vec::with_capacity(n + tri.edges().len() + tri.triangles().len());
    for v in 0..n as u32 {
        simplices.push(FilteredSimplex { simplex: Simplex::vertex(v), radius: 0.0 });
    }
    let tri_radius: Vec<f64> = tri
        .triangles()
        .iter()
        .map(|t| {
            circumradius(&pts[t[0] as usize], &pts[t[1] as usize], &pts[t[2] as usize])
        })
        .collect();
    // Triangle lookup by sorted vertex triple (triangles are stored sorted).
    let tri_of = |a: u32, b: u32, c: u32| -> f64 {
        let mut key = [a, b, c];
        key.sort_unstable();
        let i = tri.triangles().partition_point(|t| *t < key);
        debug_assert!(tri.triangles()[i] == key);
        tri_radius[i]
    };
    for (e, apexes) in tri.edges().iter().zip(tri.edge_apexes()) {
        let (pa, pb) = (&pts[e[0] as usize], &pts[e[1] as usize]);
        let mid = Point::new(0.5 * (pa.x + pb.x), 0.5 * (pa.y + pb.y));
        let half_sq = pa.dist_sq(pb) * 0.25;
        let mut blocked = false;
        let mut min_coface = f64::INFINITY;
        for &w in apexes {
            if w == NONE {
                continue;
            }
            if pts[w as usize].dist_sq(&mid) < half_sq {
                blocked = true;
            }
            min_coface = min_coface.min(tri_of(e[0], e[1], w));
        }
        let base = if blocked { f64::INFINITY } else { half_sq.sqrt() };
        // Clamping to the smallest coface keeps face monotonicity exact even
        // when the Gabriel test is decided within rounding error.
        let radius = base.min(min_coface);
        simplices.push(FilteredSimplex { simplex: Simplex::edge(e[0], e[1]), radius });
    }
    for (t, &r) in tri.triangles().iter().zip(&tri_radius) {
        simplices.push(FilteredSimplex {
            simplex: Simplex::triangle(t[0], t[1], t[2]),
            radius: r,
        });
    }
    simplices.sort_by(|x, y| {
        (x.radius, x.simplex.dim, x.simplex.vertices)
            .partial_cmp(&(y.radius, y.simplex.dim, y.simplex.vertices))
            .unwrap()
    });
    AlphaFiltration { simplices, n_vertices: n }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::delaunay::delaunay;
    use crate::geometry::pattern::{PointPattern, Window};
    use approx::assert_relative_eq;

    fn filtration_of(points: &[(f64, f64)]) -> AlphaFiltration {
        let pts: Vec<Point> = points.iter().map(|&(x, y)| Point::new(x, y)).collect();
        let pat = PointPattern::new(pts, Window::new(-100.0, 100.0, -100.0, 100.0).unwrap()).unwrap();
        alpha_filtration(&delaunay(&pat).unwrap())
    }

    fn radius_of(f: &AlphaFiltration, dim: u8, verts: &[u32]) -> f64 {
        f.simplices()
            .iter()
            .find(|s| {
                s.simplex.dim == dim
                    && s.simplex.vertices[..dim as usize + 1] == *verts
            })
            .unwrap()
            .radius
    }

    #[test]
    fn equilateral_triangle_radii() {
        let h = 3.0f64.sqrt() / 2.0;
        let f = filtration_of(&[(0.0, 0.0), (1.0, 0.0), (0.5, h)]);
        assert_eq!(f.simplices().len(), 3 + 3 + 1);
        for e in [[0u32, 1], [0, 2], [1, 2]] {
            assert_relative_eq!(radius_of(&f, 1, &e), 0.5, max_relative = 1e-12);
        }
        assert_relative_eq!(radius_of(&f, 2, &[0, 1, 2]), 1.0 / 3.0f64.sqrt(), max_relative = 1e-12);
    }

    #[test]
    fn two_points_single_edge() {
        let f = filtration_of(&[(0.0, 0.0), (0.0, 3.0)]);
        assert_eq!(radius_of(&f, 1, &[0, 1]), 1.5);
    }

    #[test]
    fn non_gabriel_edge_takes_coface_radius() {
        // The diametral disc of the long edge contains the third point.
        let f = filtration_of(&[(0.0, 0.0), (2.0, 0.0), (1.0, 0.1)]);
        let long_edge = radius_of(&f, 1, &[0, 1]);
        let triangle = radius_of(&f, 2, &[0, 1, 2]);
        assert_eq!(long_edge, triangle);
        assert_relative_eq!(triangle, 5.0500, max_relative = 1e-4);
        // The short edges are Gabriel.
        assert_relative_eq!(radius_of(&f, 1, &[0, 2]), (1.0f64 + 0.01).sqrt() / 2.0, max_relative = 1e-12);
    }

    #[test]
    fn monotone_and_caps_at_full_complex() {
        let f = filtration_of(&[
            (0.0, 0.0),
            (1.0, 0.1),
            (2.3, 0.7),
            (0.3, 1.4),
            (1.7, 1.9),
            (0.9, 2.6),
        ]);
        assert_face_monotone(&f);
        let rmax = f.max_radius();
        let all = f.simplices().iter().filter(|s| s.radius <= rmax).count();
        assert_eq!(all, f.simplices().len());
    }

    pub(crate) fn assert_face_monotone(f: &AlphaFiltration) {
        let radius_lookup = |dim: u8, verts: [u32; 3]| -> f64 {
            f.simplices()
                .iter()
                .find(|s| s.simplex.dim == dim && s.simplex.vertices == verts)
                .unwrap()
                .radius
        };
        for fs in f.simplices() {
            let v = fs.simplex.vertices;
            match fs.simplex.dim {
                0 => assert_eq!(fs.radius, 0.0),
                1 => {
                    for k in 0..2 {
                        assert!(radius_lookup(0, [v[k], NONE, NONE]) <= fs.radius);
                    }
                }
                _ => {
                    for (a, b) in [(v[0], v[1]), (v[0], v[2]), (v[1], v[2])] {
                        assert!(radius_lookup(1, [a, b, NONE]) <= fs.radius);
                    }
                }
            }
        }
    }

    #[test]
    fn scaling_by_power_of_two_is_exact() {
        let base = [
            (0.137, 0.291),
            (1.03, 0.17),
            (0.52, 1.44),
            (1.9, 1.2),
            (0.33, 0.87),
        ];
        let f1 = filtration_of(&base);
        let scaled: Vec<(f64, f64)> = base.iter().map(|&(x, y)| (4.0 * x, 4.0 * y)).collect();
        let f4 = filtration_of(&scaled);
        for (a, b) in f1.simplices().iter().zip(f4.simplices()) {
            assert_eq!(a.simplex, b.simplex);
            assert_eq!(a.radius * 4.0, b.radius);
        }
    }

    #[test]
    fn csv_export_shape() {
        let f = filtration_of(&[(0.0, 0.0), (1.0, 0.0), (0.5, 0.7)]);
        let csv = f.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "dim,v1,v2,v3,radius");
        assert_eq!(csv.lines().count(), 1 + 7);
        assert!(csv.lines().any(|l| l.starts_with("0,0,,,0")));
    }
}
