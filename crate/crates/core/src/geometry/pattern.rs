use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

/// Axis-aligned rectangular observation window `[x0, x1] x [y0, y1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Window {
    pub fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Result<Self> {
        if !(x0 < x1 && y0 < y1) || !(x0.is_finite() && x1.is_finite() && y0.is_finite() && y1.is_finite()) {
            return Err(Error::InvalidWindow { x0, x1, y0, y1 });
        }
        Ok(Window { x0, x1, y0, y1 })
    }

    /// Square window `[0, sqrt(area)]^2`.
    pub fn square_with_area(area: f64) -> Result<Self> {
        if !(area > 0.0) {
            return Err(Error::InvalidParameter {
                name: "area",
                message: format!("must be positive, got {area}"),
            });
        }
        let side = area.sqrt();
        Window::new(0.0, side, 0.0, side)
    }

    pub fn width(&self) -> f64 {
        self.x1 - self.x0
    }

    pub fn height(&self) -> f64 {
        self.y1 - self.y0
    }

    pub fn area(&self) -> f64 {
        self.width() * self.height()
    }

    pub fn shorter_side(&self) -> f64 {
        self.width().min(self.height())
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        self.x0 <= x && x <= self.x1 && self.y0 <= y && y <= self.y1
    }

    /// Distance from an interior point to the window boundary.
    pub fn boundary_distance(&self, x: f64, y: f64) -> f64 {
        let dx = (x - self.x0).min(self.x1 - x);
        let dy = (y - self.y0).min(self.y1 - y);
        dx.min(dy)
    }

    /// Window grown by `margin` on all four sides.
    pub fn dilated(&self, margin: f64) -> Window {
        Window {
            x0: self.x0 - margin,
            x1: self.x1 + margin,
            y0: self.y0 - margin,
            y1: self.y1 + margin,
        }
    }
}

/// A planar point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dist(&self, other: &Point) -> f64 {
        self.dist_sq(other).sqrt()
    }

    pub fn dist_sq(&self, other: &Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }
}

/// A finite simple point pattern observed in a rectangular window.
///
/// Construction enforces that every point lies in the closed window and that
/// no two points coincide exactly.
#[derive(Debug, Clone)]
pub struct PointPattern {
    points: Vec<Point>,
    window: Window,
}

impl PointPattern {
    pub fn new(points: Vec<Point>, window: Window) -> Result<Self> {
        for p in &points {
            if !window.contains(p.x, p.y) {
                return Err(Error::PointOutsideWindow { x: p.x, y: p.y });
            }
        }
        // Duplicate detection by exact coordinate equality.
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by(|&a, &b| {
            (points[a].x, points[a].y)
                .partial_cmp(&(points[b].x, points[b].y))
                .unwrap()
        });
        for w in order.windows(2) {
            let (a, b) = (&points[w[0]], &points[w[1]]);
            if a.x == b.x && a.y == b.y {
                return Err(Error::DuplicatePoint { x: a.x, y: a.y });
            }
        }
        Ok(PointPattern { points, window })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    /// Estimated intensity `n / |W|`.
    pub fn intensity(&self) -> f64 {
        self.len() as f64 / self.window.area()
    }

    /// Serialize to the plain-text pattern format:
    /// one header line `window x0 x1 y0 y1`, then one `x y` pair per line.
    pub fn to_text(&self) -> String {
        let w = &self.window;
        let mut out = String::new();
        writeln!(out, "window {} {} {} {}", w.x0, w.x1, w.y0, w.y1).unwrap();
        for p in &self.points {
            writeln!(out, "{} {}", p.x, p.y).unwrap();
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::PatternFile("missing header line".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 5 || fields[0] != "window" {
            return Err(Error::PatternFile(format!(
                "expected header `window x0 x1 y0 y1`, got `{header}`"
            )));
        }
        let parse = |s: &str| -> Result<f64> {
            s.parse::<f64>()
                .map_err(|_| Error::PatternFile(format!("bad number `{s}`")))
        };
        let window = Window::new(parse(fields[1])?, parse(fields[2])?, parse(fields[3])?, parse(fields[4])?)?;
        let mut points = Vec::new();
        for line in lines {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(Error::PatternFile(format!("expected `x y`, got `{line}`")));
            }
            points.push(Point::new(parse(fields[0])?, parse(fields[1])?));
        }
        PointPattern::new(points, window)
    }

    pub fn write_file(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn read_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_text(&text)
    }
}
