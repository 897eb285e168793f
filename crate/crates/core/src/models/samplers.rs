//! Samplers for the binomial, Poisson, Matern cluster and
//! Baddeley-Silverman cell processes.

use rand::Rng;

use crate::error::{Error, Result};
use crate::geometry::{Point, PointPattern, Window};

use super::rng::{poisson_count, uniform, RngStream};

fn build(points: Vec<Point>, window: &Window) -> PointPattern {
    PointPattern::new(points, *window).expect("sampled pattern must be simple")
}

fn uniform_point(rng: &mut impl Rng, window: &Window) -> Point {
    Point::new(
        uniform(rng, window.x0, window.x1),
        uniform(rng, window.y0, window.y1),
    )
}

/// Binomial point process: exactly `n` points, iid uniform in the window.
pub fn sample_binomial(n: usize, window: &Window, stream: RngStream) -> PointPattern {
    let mut rng = stream.rng();
    let points = (0..n).map(|_| uniform_point(&mut rng, window)).collect();
    build(points, window)
}

/// Homogeneous Poisson process with intensity `lambda`.
pub fn sample_poisson(lambda: f64, window: &Window, stream: RngStream) -> Result<PointPattern> {
    if !(lambda > 0.0) {
        return Err(Error::InvalidParameter {
            name: "lambda",
            message: format!("intensity must be positive, got {lambda}"),
        });
    }
    let mut rng = stream.rng();
    let n = poisson_count(&mut rng, lambda * window.area());
    let points = (0..n).map(|_| uniform_point(&mut rng, window)).collect();
    Ok(build(points, window))
}

/// Matern cluster process. Parents are simulated on the window dilated by
/// the cluster radius so that edge clusters contribute their children.
pub fn sample_matern_cluster(
    kappa: f64,
    mu: f64,
    radius: f64,
    window: &Window,
    stream: RngStream,
) -> Result<PointPattern> {
    let (_, children) = matern_cluster_parts(kappa, mu, radius, window, stream)?;
    Ok(build(children, window))
}

/// Parents and retained children, exposed for tests of the construction.
pub(crate) fn matern_cluster_parts(
    kappa: f64,
    mu: f64,
    radius: f64,
    window: &Window,
    stream: RngStream,
) -> Result<(Vec<Point>, Vec<Point>)> {
    for (name, v) in [("kappa", kappa), ("mu", mu), ("radius", radius)] {
        if !(v > 0.0) {
            return Err(Error::InvalidParameter {
                name,
                message: format!("must be positive, got {v}"),
            });
        }
    }
    let mut rng = stream.rng();
    let dilated = window.dilated(radius);
    let n_parents = poisson_count(&mut rng, kappa * dilated.area());
    let mut parents = Vec::with_capacity(n_parents);
    let mut children = Vec::new();
    for _ in 0..n_parents {
        let parent = uniform_point(&mut rng, &dilated);
        let n_children = poisson_count(&mut rng, mu);
        for _ in 0..n_children {
            let r = radius * rng.gen::<f64>().sqrt();
            let theta = std::f64::consts::TAU * rng.gen::<f64>();
            let child = Point::new(parent.x + r * theta.cos(), parent.y + r * theta.sin());
            if window.contains(child.x, child.y) {
                children.push(child);
            }
        }
        parents.push(parent);
    }
    Ok((parents, children))
}

/// Cell count distribution of the Baddeley-Silverman process:
/// P(0) = 1/10, P(1) = 8/9, P(10) = 1/90, with mean and variance 1.
pub(crate) fn cell_count(rng: &mut impl Rng) -> usize {
    let u: f64 = rng.gen();
    if u < 0.1 {
        0
    } else if u < 0.1 + 8.0 / 9.0 {
        1
    } else {
        10
    }
}

/// Cells per axis: the window cannot be tiled by exactly `floor(lambda |W|)`
/// equal squares, so a k x k grid with `k = round(sqrt(lambda |W|))` is used.
pub fn badsil_grid_dim(lambda: f64, window: &Window) -> usize {
    (lambda * window.area()).sqrt().round().max(1.0) as usize
}

/// Baddeley-Silverman cell process on a k x k grid of equal cells.
pub fn sample_cell(lambda: f64, window: &Window, stream: RngStream) -> Result<PointPattern> {
    if !(lambda * window.area() >= 1.0) {
        return Err(Error::InvalidParameter {
            name: "lambda",
            message: format!(
                "cell process needs lambda |W| >= 1, got {}",
                lambda * window.area()
            ),
        });
    }
    let mut rng = stream.rng();
    let k = badsil_grid_dim(lambda, window);
    let step_x = window.width() / k as f64;
    let step_y = window.height() / k as f64;
    let mut points = Vec::new();
    for iy in 0..k {
        for ix in 0..k {
            let x0 = window.x0 + ix as f64 * step_x;
            let y0 = window.y0 + iy as f64 * step_y;
            for _ in 0..cell_count(&mut rng) {
                points.push(Point::new(
                    x0 + rng.gen::<f64>() * step_x,
                    y0 + rng.gen::<f64>() * step_y,
                ));
            }
        }
    }
    Ok(build(points, window))
}
