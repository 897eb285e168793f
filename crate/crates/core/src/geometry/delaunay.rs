//! Incremental Delaunay triangulation with exact adaptive-precision
//! predicates and a deterministic, index-ordered symbolic perturbation.
//!
//! Cocircular ties are resolved as if each point `i` were lifted onto the
//! paraboloid and lowered by an infinitesimal amount that strictly decreases
//! with the point index. Expanding the lifted in-circle determinant, a tie
//! `incircle(a,b,c,d) == 0` is decided by the orientation cofactor of the
//! lowest-indexed participant. The rule is independent of insertion order,
//! so the triangulation is a function of the indexed point sequence only.
//! For the four corners of a square indexed counterclockwise this picks the
//! diagonal through vertices 0 and 2.
//!
//! The mesh keeps one ghost triangle per hull edge (vertex `GHOST`), which
//! lets points that fall exactly on a hull edge, or collinear beyond it, be
//! inserted without degenerate triangles.

use robust::{incircle, orient2d, Coord};

use super::pattern::{Point, PointPattern};
use crate::error::{Error, Result};

const GHOST: u32 = u32::MAX;
const NONE: u32 = u32::MAX;

/// A planar triangulation: vertex count, edges and triangles as sorted
/// index tuples, plus the opposite ("apex") vertices of each edge.
#[derive(Debug, Clone)]
pub struct Triangulation {
    points: Vec<Point>,
    edges: Vec<[u32; 2]>,
    triangles: Vec<[u32; 3]>,
    /// Apex vertices of the 1 or 2 triangles incident to each edge
    /// (`u32::MAX` when absent); aligned with `edges`.
    edge_apexes: Vec<[u32; 2]>,
}

impl Triangulation {
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn n_vertices(&self) -> usize {
        self.points.len()
    }

    pub fn edges(&self) -> &[[u32; 2]] {
        &self.edges
    }

    pub fn triangles(&self) -> &[[u32; 3]] {
        &self.triangles
    }

    pub fn edge_apexes(&self) -> &[[u32; 2]] {
        &self.edge_apexes
    }

    /// `V - E + T`, which is 1 for any triangulation of a connected pattern.
    pub fn euler_characteristic(&self) -> i64 {
        self.points.len() as i64 - self.edges.len() as i64 + self.triangles.len() as i64
    }
}

#[inline]
fn coord(p: &Point) -> Coord<f64> {
    Coord { x: p.x, y: p.y }
}

#[inline]
fn orient(pts: &[Point], a: u32, b: u32, c: u32) -> f64 {
    orient2d(coord(&pts[a as usize]), coord(&pts[b as usize]), coord(&pts[c as usize]))
}

/// Exact in-circle test with the index-ordered symbolic perturbation.
/// `(a, b, c)` must be counterclockwise; returns true when `d` is inside.
fn incircle_sos(pts: &[Point], a: u32, b: u32, c: u32, d: u32) -> bool {
    let ic = incircle(
        coord(&pts[a as usize]),
        coord(&pts[b as usize]),
        coord(&pts[c as usize]),
        coord(&pts[d as usize]),
    );
    if ic != 0.0 {
        return ic > 0.0;
    }
    // Perturbed determinant: IC' = IC - da*orient(b,c,d) + db*orient(a,c,d)
    //                               - dc*orient(a,b,d) + dd*orient(a,b,c),
    // with weights strictly decreasing in point index. The lowest-indexed
    // participant whose cofactor is nonzero decides.
    let mut participants = [(a, 0u8), (b, 1), (c, 2), (d, 3)];
    participants.sort_unstable_by_key(|&(idx, _)| idx);
    for (_, role) in participants {
        let o = match role {
            0 => -orient(pts, b, c, d),
            1 => orient(pts, a, c, d),
            2 => -orient(pts, a, b, d),
            _ => orient(pts, a, b, c),
        };
        if o != 0.0 {
            return o > 0.0;
        }
    }
    false
}

/// True when `p` lies strictly inside the open segment (a, b), assuming the
/// three points are exactly collinear.
fn on_open_segment(pts: &[Point], a: u32, b: u32, p: u32) -> bool {
    let (pa, pb, pp) = (&pts[a as usize], &pts[b as usize], &pts[p as usize]);
    if (pa.x - pb.x).abs() >= (pa.y - pb.y).abs() {
        let (lo, hi) = if pa.x < pb.x { (pa.x, pb.x) } else { (pb.x, pa.x) };
        lo < pp.x && pp.x < hi
    } else {
        let (lo, hi) = if pa.y < pb.y { (pa.y, pb.y) } else { (pb.y, pa.y) };
        lo < pp.y && pp.y < hi
    }
}

#[derive(Debug, Clone, Copy)]
struct Tri {
    /// Vertices, counterclockwise; ghost triangles keep `GHOST` in slot 2.
    v: [u32; 3],
    /// `n[k]` is the neighbor across the edge opposite `v[k]`.
    n: [u32; 3],
    alive: bool,
}

struct Mesh<'a> {
    pts: &'a [Point],
    tris: Vec<Tri>,
    free: Vec<u32>,
    hint: u32,
    // Scratch buffers reused across insertions.
    cavity: Vec<u32>,
    ring: Vec<(u32, u32, u32)>, // (start, end, outer neighbor)
    stack: Vec<u32>,
}

impl<'a> Mesh<'a> {
    fn new(pts: &'a [Point]) -> Self {
        Mesh {
            pts,
            tris: Vec::with_capacity(pts.len() * 2 + 16),
            free: Vec::new(),
            hint: 0,
            cavity: Vec::new(),
            ring: Vec::new(),
            stack: Vec::new(),
        }
    }

    fn alloc(&mut self, v: [u32; 3]) -> u32 {
        let t = Tri { v, n: [NONE; 3], alive: true };
        if let Some(id) = self.free.pop() {
            self.tris[id as usize] = t;
            id
        } else {
            self.tris.push(t);
            (self.tris.len() - 1) as u32
        }
    }

    /// Slot of the vertex not on edge {a, b}.
    fn slot_opposite(&self, t: u32, a: u32, b: u32) -> usize {
        let v = self.tris[t as usize].v;
        for k in 0..3 {
            if v[k] != a && v[k] != b {
                return k;
            }
        }
        unreachable!("edge ({a}, {b}) not in triangle {t}");
    }

    fn set_neighbor(&mut self, t: u32, a: u32, b: u32, nb: u32) {
        let k = self.slot_opposite(t, a, b);
        self.tris[t as usize].n[k] = nb;
    }

    fn conflict(&self, t: u32, p: u32) -> bool {
        let tri = &self.tris[t as usize];
        if tri.v[2] == GHOST {
            let (a, b) = (tri.v[0], tri.v[1]);
            let o = orient(self.pts, a, b, p);
            o > 0.0 || (o == 0.0 && on_open_segment(self.pts, a, b, p))
        } else {
            incircle_sos(self.pts, tri.v[0], tri.v[1], tri.v[2], p)
        }
    }

    /// Find one triangle in conflict with `p` by walking from the hint.
    fn locate(&self, p: u32) -> u32 {
        let mut t = self.hint;
        if !(self.tris.get(t as usize).map_or(false, |x| x.alive && x.v[2] != GHOST)) {
            t = match self
                .tris
                .iter()
                .position(|x| x.alive && x.v[2] != GHOST)
            {
                Some(i) => i as u32,
                None => return self.scan(p),
            };
        }
        let budget = 4 * self.tris.len() + 16;
        for _ in 0..budget {
            let tri = &self.tris[t as usize];
            if tri.v[2] == GHOST {
                if self.conflict(t, p) {
                    return t;
                }
                // Landed on a non-conflicting ghost; fall back to scanning.
                return self.scan(p);
            }
            let [a, b, c] = tri.v;
            if orient(self.pts, a, b, p) < 0.0 {
                t = tri.n[2];
            } else if orient(self.pts, b, c, p) < 0.0 {
                t = tri.n[0];
            } else if orient(self.pts, c, a, p) < 0.0 {
                t = tri.n[1];
            } else {
                return t; // inside or on the boundary of t
            }
        }
        self.scan(p)
    }

    fn scan(&self, p: u32) -> u32 {
        for (i, tri) in self.tris.iter().enumerate() {
            if tri.alive && self.conflict(i as u32, p) {
                return i as u32;
            }
        }
        unreachable!("no conflicting triangle for point {p}");
    }

    fn insert(&mut self, p: u32) {
        let seed = self.locate(p);
        debug_assert!(self.conflict(seed, p));
        // Flood the conflict region.
        self.cavity.clear();
        self.ring.clear();
        self.stack.clear();
        self.stack.push(seed);
        self.tris[seed as usize].alive = false;
        self.cavity.push(seed);
        while let Some(t) = self.stack.pop() {
            let tri = self.tris[t as usize];
            for k in 0..3 {
                let nb = tri.n[k];
                let (ea, eb) = (tri.v[(k + 1) % 3], tri.v[(k + 2) % 3]);
                if self.tris[nb as usize].alive {
                    if self.conflict(nb, p) {
                        self.tris[nb as usize].alive = false;
                        self.cavity.push(nb);
                        self.stack.push(nb);
                    } else {
                        self.ring.push((ea, eb, nb));
                    }
                }
            }
        }
        // Retriangulate the cavity as a fan around p. Each ring edge keeps
        // its direction from the dead triangle, so (start, end, p) is ccw
        // for finite edges; ghost edges are rotated to keep GHOST in slot 2.
        let ring = std::mem::take(&mut self.ring);
        let mut new_ids = Vec::with_capacity(ring.len());
        for &(s, e, _) in &ring {
            let v = if s == GHOST {
                [e, p, GHOST]
            } else if e == GHOST {
                [p, s, GHOST]
            } else {
                [s, e, p]
            };
            new_ids.push(self.alloc(v));
        }
        // The ring is a simple cycle, so each vertex starts exactly one ring
        // edge and ends exactly one. The successor of the triangle built on
        // (s, e) shares fan edge (e, p); the predecessor shares (p, s).
        let mut by_start: Vec<(u32, u32)> = ring
            .iter()
            .zip(&new_ids)
            .map(|(&(s, _, _), &id)| (s, id))
            .collect();
        by_start.sort_unstable_by_key(|&(s, _)| s);
        let successor = |start: u32| -> u32 {
            let i = by_start.partition_point(|&(s, _)| s < start);
            debug_assert!(by_start[i].0 == start);
            by_start[i].1
        };
        let mut by_end: Vec<(u32, u32)> = ring
            .iter()
            .zip(&new_ids)
            .map(|(&(_, e, _), &id)| (e, id))
            .collect();
        by_end.sort_unstable_by_key(|&(e, _)| e);
        let predecessor = |end: u32| -> u32 {
            let i = by_end.partition_point(|&(e, _)| e < end);
            debug_assert!(by_end[i].0 == end);
            by_end[i].1
        };
        for (&(s, e, outer), &id) in ring.iter().zip(&new_ids) {
            self.set_neighbor(id, s, e, outer);
            self.set_neighbor(outer, s, e, id);
            self.set_neighbor(id, e, p, successor(e));
            self.set_neighbor(id, p, s, predecessor(s));
        }
        for &id in &new_ids {
            if self.tris[id as usize].v[2] != GHOST {
                self.hint = id;
            }
        }
        self.free.extend(&self.cavity);
        self.ring = ring; // keep the scratch allocation
    }
}

/// Delaunay triangulation of a point pattern.
///
/// Patterns with fewer than one point are an error. Collinear patterns give
/// a chain of edges and no triangles.
pub fn delaunay(pattern: &PointPattern) -> Result<Triangulation> {
    let pts = pattern.points();
    let n = pts.len();
    if n < 1 {
        return Err(Error::EmptyPattern { needed: 1 });
    }
    if n == 1 {
        return Ok(finish(pts, Vec::new(), Vec::new()));
    }
    if n == 2 {
        return Ok(finish(pts, vec![[0, 1]], Vec::new()));
    }
    // First point not collinear with points 0 and 1.
    let pivot = (2..n).find(|&i| orient(pts, 0, 1, i as u32) != 0.0);
    let Some(pivot) = pivot else {
        // All points on one line: chain in coordinate order.
        let mut order: Vec<u32> = (0..n as u32).collect();
        order.sort_by(|&a, &b| {
            let (pa, pb) = (&pts[a as usize], &pts[b as usize]);
            (pa.x, pa.y).partial_cmp(&(pb.x, pb.y)).unwrap()
        });
        let mut edges: Vec<[u32; 2]> = order.windows(2).map(|w| sorted2(w[0], w[1])).collect();
        edges.sort_unstable();
        return Ok(finish(pts, edges, Vec::new()));
    };
    let pivot = pivot as u32;

    let mut mesh = Mesh::new(pts);
    let (i0, i1, i2) = if orient(pts, 0, 1, pivot) > 0.0 {
        (0u32, 1u32, pivot)
    } else {
        (1u32, 0u32, pivot)
    };
    let t0 = mesh.alloc([i0, i1, i2]);
    let g0 = mesh.alloc([i1, i0, GHOST]);
    let g1 = mesh.alloc([i2, i1, GHOST]);
    let g2 = mesh.alloc([i0, i2, GHOST]);
    mesh.tris[t0 as usize].n = [g1, g2, g0];
    mesh.tris[g0 as usize].n = [g2, g1, t0];
    mesh.tris[g1 as usize].n = [g0, g2, t0];
    mesh.tris[g2 as usize].n = [g1, g0, t0];
    mesh.hint = t0;

    for i in 2..n as u32 {
        if i == pivot {
            continue;
        }
        mesh.insert(i);
    }

    // Collect finite triangles and their edges.
    let mut triangles: Vec<[u32; 3]> = Vec::new();
    for tri in &mesh.tris {
        if tri.alive && tri.v[2] != GHOST {
            let mut v = tri.v;
            v.sort_unstable();
            triangles.push(v);
        }
    }
    triangles.sort_unstable();
    let mut edges: Vec<[u32; 2]> = Vec::with_capacity(triangles.len() * 3 / 2 + 3);
    for t in &triangles {
        edges.push([t[0], t[1]]);
        edges.push([t[0], t[2]]);
        edges.push([t[1], t[2]]);
    }
    edges.sort_unstable();
    edges.dedup();
    Ok(finish_with_apexes(pts, edges, triangles))
}

fn sorted2(a: u32, b: u32) -> [u32; 2] {
    if a < b {
        [a, b]
    } else {
        [b, a]
    }
}

fn finish(pts: &[Point], edges: Vec<[u32; 2]>, triangles: Vec<[u32; 3]>) -> Triangulation {
    let edge_apexes = vec![[NONE, NONE]; edges.len()];
    Triangulation {
        points: pts.to_vec(),
        edges,
        triangles,
        edge_apexes,
    }
}

fn finish_with_apexes(pts: &[Point], edges: Vec<[u32; 2]>, triangles: Vec<[u32; 3]>) -> Triangulation {
    let mut edge_apexes = vec![[NONE, NONE]; edges.len()];
    let edge_index = |a: u32, b: u32| -> usize {
        let key = sorted2(a, b);
        edges.partition_point(|e| *e < key)
    };
    for t in &triangles {
        for (a, b, apex) in [(t[0], t[1], t[2]), (t[0], t[2], t[1]), (t[1], t[2], t[0])] {
            let e = edge_index(a, b);
            let slots = &mut edge_apexes[e];
            if slots[0] == NONE {
                slots[0] = apex;
            } else {
                debug_assert!(slots[1] == NONE);
                slots[1] = apex;
            }
        }
    }
    Triangulation {
        points: pts.to_vec(),
        edges,
        triangles,
        edge_apexes,
    }
}
