use serde::Serialize;

use super::space::{Regime, SumSpace, SumVector};
use crate::component::{cal_d_component, dual_diameter};
use crate::error::{Error, Result};

/// Smoothness of a nonzero element.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SmoothnessReport {
    /// Structural smoothness read off the support set description.
    pub smooth: bool,
    pub eps_smooth: bool,
    #[serde(rename = "D")]
    pub d: f64,
}

impl SumSpace {
    /// `D(x) = diam J(x)` in the dual norm.
    ///
    /// `1 < p < ∞`: `(Σ (‖x_n‖/‖x‖)^p D(x_n)^q)^{1/q}` over the support.
    /// `p = 1`: `max D(x_n)` if every declared index is supported, else `2`.
    /// `c_0`: `D(x_{n0})` for a unique max index `n0`, else `2`.
    pub fn diameter(&self, x: &SumVector) -> Result<f64> {
        let j = self.support_functionals(x)?;
        let d = |i: usize, set: &crate::component::JDescription| {
            dual_diameter(self.component(i), set.extremes())
        };
        Ok(match j.regime {
            Regime::Lp(p) => {
                let q = p / (p - 1.0);
                let total: f64 = j
                    .parts
                    .iter()
                    .map(|part| {
                        let w = part.scale.powf(p / (p - 1.0));
                        w * d(part.index, &part.set).powf(q)
                    })
                    .sum();
                total.powf(1.0 / q)
            }
            Regime::L1 if !j.free.is_empty() => 2.0,
            Regime::L1 => j
                .parts
                .iter()
                .map(|part| d(part.index, &part.set))
                .fold(0.0, f64::max),
            Regime::C0 if j.parts.len() > 1 => 2.0,
            Regime::C0 => d(j.parts[0].index, &j.parts[0].set),
        })
    }

    /// `𝒟(X) = sup D(x)`.
    ///
    /// For `p ∈ {0, 1}` this is `2` once two components are declared; a
    /// single declared component gives `𝒟` of that component.
    pub fn cal_d(&self) -> Result<f64> {
        let per = self.components().iter().map(cal_d_component);
        Ok(match self.regime()? {
            Regime::Lp(_) => per.fold(0.0, f64::max),
            Regime::L1 | Regime::C0 if self.len() > 1 => 2.0,
            Regime::L1 | Regime::C0 => cal_d_component(self.component(0)),
        })
    }

    /// `D(x)`, `ε`-smoothness and structural smoothness of `x`.
    pub fn smoothness_report(&self, x: &SumVector, eps: f64) -> Result<SmoothnessReport> {
        if !(0.0..2.0).contains(&eps) {
            return Err(Error::invalid_argument(format!(
                "eps must lie in [0, 2), got {eps}"
            )));
        }
        let j = self.support_functionals(x)?;
        let all_smooth = j.parts.iter().all(|p| p.set.is_singleton());
        let smooth = match j.regime {
            Regime::Lp(_) => all_smooth,
            Regime::L1 => j.free.is_empty() && all_smooth,
            Regime::C0 => j.parts.len() == 1 && all_smooth,
        };
        let d = self.diameter(x)?;
        Ok(SmoothnessReport {
            smooth,
            eps_smooth: d <= eps,
            d,
        })
    }
}
