//! Ripley's isotropic edge correction for rectangular windows.

use crate::error::{Error, Result};
use crate::geometry::{Point, Window};

/// Inverse of the fraction of the circle of radius `r` centered at `center`
/// that lies inside the window, from exact arc-length accounting of the
/// boundary intersections.
///
/// Valid whenever the circle does not cross two opposite window sides,
/// which holds under the `r <= shorter_side / 4` policy used by the
/// second-order estimators (with kernel slack).
pub fn iso_weight(center: &Point, r: f64, window: &Window) -> Result<f64> {
    debug_assert!(r > 0.0);
    let d = [
        center.x - window.x0, // left
        window.x1 - center.x, // right
        center.y - window.y0, // bottom
        window.y1 - center.y, // top
    ];
    let half_angle = |dist: f64| -> f64 {
        if dist < r {
            (dist / r).clamp(-1.0, 1.0).acos()
        } else {
            0.0
        }
    };
    let mut outside = 0.0;
    for side in d {
        outside += 2.0 * half_angle(side);
    }
    // Corners: (horizontal side, vertical side) pairs whose meeting corner
    // lies strictly inside the circle double-count the overlapping arc.
    let r_sq = r * r;
    for (dh, dv) in [(d[0], d[2]), (d[0], d[3]), (d[1], d[2]), (d[1], d[3])] {
        if dh * dh + dv * dv < r_sq {
            outside += std::f64::consts::FRAC_PI_2 - half_angle(dh) - half_angle(dv);
        }
    }
    let inside = std::f64::consts::TAU - outside;
    let p = inside / std::f64::consts::TAU;
    if p <= 0.0 {
        return Err(Error::CircleOutsideWindow { x: center.x, y: center.y, radius: r });
    }
    Ok(1.0 / p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn unit_window() -> Window {
        Window::new(0.0, 1.0, 0.0, 1.0).unwrap()
    }

    #[test]
    fn interior_circle_has_weight_one() {
        let w = unit_window();
        assert_eq!(iso_weight(&Point::new(0.5, 0.5), 0.2, &w).unwrap(), 1.0);
    }

    #[test]
    fn corner_point_weight_four() {
        let w = unit_window();
        assert_relative_eq!(
            iso_weight(&Point::new(0.0, 0.0), 0.2, &w).unwrap(),
            4.0,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            iso_weight(&Point::new(1.0, 1.0), 0.3, &w).unwrap(),
            4.0,
            max_relative = 1e-12
        );
    }

    #[test]
    fn edge_midpoint_weight_two() {
        let w = unit_window();
        assert_relative_eq!(
            iso_weight(&Point::new(0.5, 0.0), 0.2, &w).unwrap(),
            2.0,
            max_relative = 1e-12
        );
    }

    #[test]
    fn near_edge_weight_between_one_and_two() {
        let w = unit_window();
        let wt = iso_weight(&Point::new(0.5, 0.05), 0.2, &w).unwrap();
        assert!(wt > 1.0 && wt < 2.0);
        // Hand value: p = 1 - acos(d/r)/pi.
        let expected = 1.0 / (1.0 - (0.05f64 / 0.2).acos() / std::f64::consts::PI);
        assert_relative_eq!(wt, expected, max_relative = 1e-12);
    }

    #[test]
    fn weight_matches_quadrature() {
        // Compare against a dense numeric integration of the arc indicator.
        let w = Window::new(0.0, 2.0, 0.0, 1.0).unwrap();
        for (cx, cy, r) in [(0.1, 0.2, 0.25), (0.05, 0.05, 0.2), (1.9, 0.97, 0.24), (0.3, 0.5, 0.45)] {
            let c = Point::new(cx, cy);
            let m = 2_000_000;
            let mut inside = 0usize;
            for k in 0..m {
                let th = std::f64::consts::TAU * (k as f64 + 0.5) / m as f64;
                let (x, y) = (cx + r * th.cos(), cy + r * th.sin());
                if w.contains(x, y) {
                    inside += 1;
                }
            }
            let p_num = inside as f64 / m as f64;
            assert_relative_eq!(
                iso_weight(&c, r, &w).unwrap(),
                1.0 / p_num,
                max_relative = 1e-4
            );
        }
    }
}
