use super::space::{Regime, SumFunctional, SumSpace, SumVector};
use crate::error::{Error, Result};

impl SumSpace {
    /// A unit vector `y` with `f(y) ≥ ‖f‖_q − eps`.
    ///
    /// Component norming vectors are exact, so `f(y) = ‖f‖_q` up to rounding:
    /// `y_n = (‖f_n‖/‖f‖_q)^{q−1} v_n` for `1 < p < ∞`, the largest `f_n`
    /// for `p = 1`, and every nonzero `f_n` for `c_0`.
    pub fn norming_element(&self, f: &SumFunctional, eps: f64) -> Result<SumVector> {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::invalid_argument("eps must be positive and finite"));
        }
        let regime = self.regime()?;
        let fnorm = self.dual_norm(f)?;
        if fnorm == 0.0 {
            return Err(Error::degenerate("zero functional has no norming element"));
        }
        let norms: Vec<f64> = f
            .entries()
            .iter()
            .map(|(i, g)| self.component(*i).dual_norm_unchecked(g.coords()))
            .collect();
        let mut entries = Vec::new();
        match regime {
            Regime::Lp(p) => {
                let q = p / (p - 1.0);
                for ((i, g), &ng) in f.entries().iter().zip(&norms) {
                    if ng > 0.0 {
                        let w = (ng / fnorm).powf(q - 1.0);
                        entries.push((*i, self.component(*i).norming_vector(g)?.scaled(w)));
                    }
                }
            }
            Regime::L1 => {
                let k = (0..norms.len())
                    .fold(0, |b, k| if norms[k] > norms[b] { k } else { b });
                let (i, g) = &f.entries()[k];
                entries.push((*i, self.component(*i).norming_vector(g)?));
            }
            Regime::C0 => {
                for ((i, g), &ng) in f.entries().iter().zip(&norms) {
                    if ng > 0.0 {
                        entries.push((*i, self.component(*i).norming_vector(g)?));
                    }
                }
            }
        }
        let y = SumVector::new(entries)?;
        // Rescale away the rounding left in the Lp weights.
        let n = self.norm(&y)?;
        let y = y.scaled(1.0 / n);
        if f.apply(&y) < fnorm - eps {
            return Err(Error::Construction(format!(
                "norming element reached {} < {fnorm} - {eps}",
                f.apply(&y)
            )));
        }
        Ok(y)
    }
}
