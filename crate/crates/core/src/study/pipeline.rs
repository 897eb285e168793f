//! Shared per-pattern summary computation: evaluates any subset of the
//! eleven summary statistics on their standard grids, reusing the Delaunay
//! filtration, persistence diagram and distance structures across
//! statistics that share them.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::geometry::{alpha_filtration, delaunay, PointPattern};
use crate::homology::{apf, betti_curve, euler_curve, persistence};
use crate::summaries::{
    f_est_with_lattice, g_est, k_est, l_from_k, pcf_est, EvalGrid, SummaryId, DEFAULT_F_LATTICE,
};

/// Computes summary curves on the standard per-statistic grids.
#[derive(Debug, Clone)]
pub struct SummaryComputer {
    grids: BTreeMap<SummaryId, EvalGrid>,
    f_lattice: usize,
}

impl Default for SummaryComputer {
    fn default() -> Self {
        Self::new(DEFAULT_F_LATTICE)
    }
}

impl SummaryComputer {
    pub fn new(f_lattice: usize) -> Self {
        let grids = SummaryId::ALL
            .iter()
            .map(|&s| (s, s.default_grid()))
            .collect();
        SummaryComputer { grids, f_lattice }
    }

    pub fn grid(&self, summary: SummaryId) -> &EvalGrid {
        &self.grids[&summary]
    }

    /// Curve values for each requested summary of one pattern.
    pub fn compute(
        &self,
        pattern: &PointPattern,
        which: &[SummaryId],
    ) -> Result<BTreeMap<SummaryId, Vec<f64>>> {
        let mut out = BTreeMap::new();
        let wants = |s: SummaryId| which.contains(&s);

        if wants(SummaryId::K) || wants(SummaryId::L) {
            let k = k_est(pattern, self.grid(SummaryId::K))?;
            if wants(SummaryId::L) {
                out.insert(SummaryId::L, l_from_k(&k).values);
            }
            if wants(SummaryId::K) {
                out.insert(SummaryId::K, k.values);
            }
        }
        if wants(SummaryId::Pcf) {
            out.insert(
                SummaryId::Pcf,
                pcf_est(pattern, self.grid(SummaryId::Pcf))?.values,
            );
        }
        if wants(SummaryId::F) || wants(SummaryId::G) || wants(SummaryId::J) {
            let f = if wants(SummaryId::F) || wants(SummaryId::J) {
                Some(f_est_with_lattice(pattern, self.grid(SummaryId::F), self.f_lattice)?)
            } else {
                None
            };
            let g = if wants(SummaryId::G) || wants(SummaryId::J) {
                Some(g_est(pattern, self.grid(SummaryId::G))?)
            } else {
                None
            };
            if wants(SummaryId::J) {
                let (f, g) = (f.as_ref().unwrap(), g.as_ref().unwrap());
                let values = f
                    .values
                    .iter()
                    .zip(&g.values)
                    .map(|(&fv, &gv)| {
                        let denom = 1.0 - fv;
                        if denom == 0.0 {
                            f64::NAN
                        } else {
                            (1.0 - gv) / denom
                        }
                    })
                    .collect();
                out.insert(SummaryId::J, values);
            }
            if let Some(f) = f {
                if wants(SummaryId::F) {
                    out.insert(SummaryId::F, f.values);
                }
            }
            if let Some(g) = g {
                if wants(SummaryId::G) {
                    out.insert(SummaryId::G, g.values);
                }
            }
        }
        let topological: Vec<SummaryId> = which
            .iter()
            .copied()
            .filter(|s| s.is_topological())
            .collect();
        if !topological.is_empty() {
            let filtration = alpha_filtration(&delaunay(pattern)?);
            let needs_diagram = topological.iter().any(|s| *s != SummaryId::Euler);
            let diagram = if needs_diagram {
                Some(persistence(&filtration))
            } else {
                None
            };
            for s in topological {
                let values = match s {
                    SummaryId::Beta0 => betti_curve(diagram.as_ref().unwrap(), 0, self.grid(s)).values,
                    SummaryId::Beta1 => betti_curve(diagram.as_ref().unwrap(), 1, self.grid(s)).values,
                    SummaryId::Apf0 => apf(diagram.as_ref().unwrap(), 0, self.grid(s)).values,
                    SummaryId::Apf1 => apf(diagram.as_ref().unwrap(), 1, self.grid(s)).values,
                    SummaryId::Euler => euler_curve(&filtration, self.grid(s)).values,
                    _ => unreachable!(),
                };
                out.insert(s, values);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{sample_binomial, RngStream};
    use crate::geometry::Window;

    #[test]
    fn computes_all_eleven_summaries() {
        let w = Window::square_with_area(1.0).unwrap();
        let pat = sample_binomial(60, &w, RngStream::new(5, 0));
        let computer = SummaryComputer::new(64);
        let curves = computer.compute(&pat, &SummaryId::ALL).unwrap();
        assert_eq!(curves.len(), 11);
        for (s, values) in &curves {
            assert_eq!(values.len(), computer.grid(*s).len(), "{s}");
        }
        // The J curve is consistent with F and G where finite.
        let (f, g, j) = (&curves[&SummaryId::F], &curves[&SummaryId::G], &curves[&SummaryId::J]);
        for i in 0..j.len() {
            if j[i].is_finite() {
                assert!((j[i] - (1.0 - g[i]) / (1.0 - f[i])).abs() < 1e-12);
            }
        }
        // Euler-Poincare across the independently computed curves.
        let (b0, b1, chi) = (
            &curves[&SummaryId::Beta0],
            &curves[&SummaryId::Beta1],
            &curves[&SummaryId::Euler],
        );
        for i in 0..chi.len() {
            assert_eq!(b0[i] - b1[i], chi[i]);
        }
    }
}
