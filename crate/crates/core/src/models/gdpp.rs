//! Spectral sampler for the Gaussian determinantal point process on a
//! rectangular window, treated as a torus.
//!
//! Fourier modes `k` in `Z^2` have eigenvalues
//! `lambda_k = lambda pi alpha^2 exp(-pi^2 alpha^2 |k~|^2)` with
//! `k~ = (k1 / Lx, k2 / Ly)`; each mode is kept independently with
//! probability `lambda_k` (all below 1 inside the existence region), and the
//! resulting projection process is sampled by sequential conditional
//! sampling with Gram-Schmidt orthonormalization. Modes with eigenvalue
//! below 1e-10 are truncated.

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::geometry::{Point, PointPattern, Window};

use super::rng::{uniform, RngStream};

const EIGENVALUE_CUTOFF: f64 = 1e-10;

/// Largest admissible shape parameter for intensity `lambda`.
pub fn gdpp_alpha_bound(lambda: f64) -> f64 {
    1.0 / (lambda * std::f64::consts::PI).sqrt()
}

/// Eigenvalue of the mode with squared scaled frequency
/// `scaled_sq = (k1 / Lx)^2 + (k2 / Ly)^2`.
pub fn gdpp_eigenvalue(lambda: f64, alpha: f64, scaled_sq: f64) -> f64 {
    let pi = std::f64::consts::PI;
    lambda * pi * alpha * alpha * (-pi * pi * alpha * alpha * scaled_sq).exp()
}

fn validate(lambda: f64, alpha: f64) -> Result<()> {
    if !(lambda > 0.0) {
        return Err(Error::InvalidParameter {
            name: "lambda",
            message: format!("intensity must be positive, got {lambda}"),
        });
    }
    let bound = gdpp_alpha_bound(lambda);
    if !(alpha > 0.0 && alpha < bound) {
        return Err(Error::InvalidParameter {
            name: "alpha",
            message: format!("existence requires 0 < alpha < {bound}, got {alpha}"),
        });
    }
    Ok(())
}

/// All modes with eigenvalue above the cutoff, in lexicographic (k1, k2)
/// order, as (angular frequency x, angular frequency y, eigenvalue).
fn enumerate_modes(lambda: f64, alpha: f64, window: &Window) -> Vec<(f64, f64, f64)> {
    let pi = std::f64::consts::PI;
    let (lx, ly) = (window.width(), window.height());
    let lead = lambda * pi * alpha * alpha;
    // lambda_k >= cutoff  <=>  |k~|^2 <= log(lead / cutoff) / (pi alpha)^2
    let scaled_sq_max = (lead / EIGENVALUE_CUTOFF).ln().max(0.0) / (pi * pi * alpha * alpha);
    let k1_max = (scaled_sq_max.sqrt() * lx).ceil() as i64;
    let k2_max = (scaled_sq_max.sqrt() * ly).ceil() as i64;
    let mut modes = Vec::new();
    for k1 in -k1_max..=k1_max {
        for k2 in -k2_max..=k2_max {
            let scaled_sq = (k1 as f64 / lx).powi(2) + (k2 as f64 / ly).powi(2);
            let ev = gdpp_eigenvalue(lambda, alpha, scaled_sq);
            if ev >= EIGENVALUE_CUTOFF {
                modes.push((
                    std::f64::consts::TAU * k1 as f64 / lx,
                    std::f64::consts::TAU * k2 as f64 / ly,
                    ev,
                ));
            }
        }
    }
    modes
}

/// Draw one Gaussian DPP pattern.
pub fn sample_gdpp(
    lambda: f64,
    alpha: f64,
    window: &Window,
    stream: RngStream,
) -> Result<PointPattern> {
    validate(lambda, alpha)?;
    let mut rng = stream.rng();
    let modes = enumerate_modes(lambda, alpha, window);
    // Independent Bernoulli selection of modes.
    let kept: Vec<(f64, f64)> = modes
        .iter()
        .filter(|&&(_, _, ev)| rng.gen::<f64>() < ev)
        .map(|&(wx, wy, _)| (wx, wy))
        .collect();
    let n = kept.len();
    if n == 0 {
        return Ok(PointPattern::new(Vec::new(), *window).unwrap());
    }
    let area = window.area();
    let norm = 1.0 / area.sqrt();
    let phase = |p: &Point| -> Vec<Complex64> {
        kept.iter()
            .map(|&(wx, wy)| {
                let arg = wx * (p.x - window.x0) + wy * (p.y - window.y0);
                Complex64::from_polar(norm, arg)
            })
            .collect()
    };

    // Sequential sampling: the first point is uniform (the projection kernel
    // has constant diagonal); subsequent points are drawn by rejection from
    // the conditional density, with the span of previous feature vectors
    // removed by Gram-Schmidt.
    let mut points: Vec<Point> = Vec::with_capacity(n);
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    let first = Point::new(
        uniform(&mut rng, window.x0, window.x1),
        uniform(&mut rng, window.y0, window.y1),
    );
    let v = phase(&first);
    points.push(first);
    basis.push(normalize(v));
    for remaining in (1..n).rev() {
        let mut guard = 0u64;
        loop {
            guard += 1;
            assert!(guard < 100_000_000, "rejection sampling failed to accept");
            let cand = Point::new(
                uniform(&mut rng, window.x0, window.x1),
                uniform(&mut rng, window.y0, window.y1),
            );
            let v = phase(&cand);
            // Residual squared norm after projecting out the basis.
            let mut residual_sq = n as f64 / area;
            let mut projections = Vec::with_capacity(basis.len());
            for e in &basis {
                let dot = hermitian_dot(e, &v);
                residual_sq -= dot.norm_sqr();
                projections.push(dot);
            }
            // Accept with probability residual^2 * A / n (dominating bound).
            if rng.gen::<f64>() * (n as f64) < residual_sq.max(0.0) * area {
                let mut w = v;
                for (e, dot) in basis.iter().zip(&projections) {
                    for (wc, ec) in w.iter_mut().zip(e) {
                        *wc -= dot * ec;
                    }
                }
                points.push(cand);
                basis.push(normalize(w));
                break;
            }
        }
        let _ = remaining;
    }
    Ok(PointPattern::new(points, *window).expect("dpp draws are simple"))
}

fn hermitian_dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn normalize(mut v: Vec<Complex64>) -> Vec<Complex64> {
    let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    debug_assert!(norm > 0.0);
    for c in &mut v {
        *c /= norm;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn leading_eigenvalue_below_one() {
        // lambda = 50, alpha = 0.05: leading eigenvalue = lambda pi alpha^2.
        let lead = gdpp_eigenvalue(50.0, 0.05, 0.0);
        assert_relative_eq!(lead, 0.39269908, max_relative = 1e-6);
        assert!(lead < 1.0);
    }

    #[test]
    fn existence_bound_enforced() {
        let w = Window::square_with_area(1.0).unwrap();
        let bound = gdpp_alpha_bound(50.0);
        assert_relative_eq!(bound, 0.07978845608, max_relative = 1e-9);
        assert!(sample_gdpp(50.0, bound, &w, RngStream::new(0, 0)).is_err());
        assert!(sample_gdpp(50.0, -0.1, &w, RngStream::new(0, 0)).is_err());
        assert!(sample_gdpp(50.0, 0.05, &w, RngStream::new(0, 0)).is_ok());
    }

    #[test]
    fn expected_mode_mass_close_to_intensity_mass() {
        // Sum of eigenvalues approximates lambda |W|.
        let w = Window::square_with_area(2.0).unwrap();
        let total: f64 = enumerate_modes(50.0, 0.05, &w).iter().map(|m| m.2).sum();
        assert_relative_eq!(total, 100.0, max_relative = 0.01);
    }

    #[test]
    fn draw_count_near_intensity() {
        let w = Window::square_with_area(1.0).unwrap();
        let mut total = 0;
        let n_draws = 40;
        for i in 0..n_draws {
            total += sample_gdpp(50.0, 0.05, &w, RngStream::new(13, i)).unwrap().len();
        }
        let mean = total as f64 / n_draws as f64;
        // Counts of a DPP are underdispersed relative to Poisson; use the
        // Poisson bound as a conservative band.
        let se = (50.0f64 / n_draws as f64).sqrt();
        assert!((mean - 50.0).abs() < 4.0 * se, "mean {mean}");
    }

    #[test]
    fn deterministic_given_stream() {
        let w = Window::square_with_area(1.0).unwrap();
        let a = sample_gdpp(50.0, 0.05, &w, RngStream::new(3, 9)).unwrap();
        let b = sample_gdpp(50.0, 0.05, &w, RngStream::new(3, 9)).unwrap();
        assert_eq!(a.points(), b.points());
    }
}
