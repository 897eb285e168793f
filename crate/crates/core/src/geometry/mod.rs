//! Planar geometry: point patterns, Delaunay triangulation and the
//! alpha-complex filtration.

pub mod alpha;
pub mod bucket;
pub mod delaunay;
pub mod pattern;

pub use alpha::{alpha_filtration, AlphaFiltration, FilteredSimplex, Simplex};
pub use delaunay::{delaunay, Triangulation};
pub use pattern::{Point, PointPattern, Window};
