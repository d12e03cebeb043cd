use serde::Serialize;

use super::space::{Regime, SumFunctional, SumSpace, SumVector};
use crate::component::{is_component_support, support_set, ComponentFunctional, JDescription};
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::tolerance::{EXTREME_LIMIT, GEOM_TOL};

/// One supported index of `J(x)`: functionals `scale · g` with `g ∈ J(x_n)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SupportPart {
    pub index: usize,
    pub scale: f64,
    pub set: JDescription,
}

/// Exact description of `J(x)` for a nonzero element of a sum.
///
/// - `1 < p < ∞`: `f_n = scale_n · g_n`, `g_n ∈ J(x_n)` on the support and
///   `f_n = 0` elsewhere, with `scale_n = (‖x_n‖/‖x‖)^{p−1}`.
/// - `p = 1`: `f_n ∈ J(x_n)` on the support, `‖f_n‖ ≤ 1` on `free`.
/// - `c_0`: `parts` lists the max-attaining indices; `J(x)` is the set of
///   convex combinations `Σ λ_n g_n e_n` with `g_n ∈ J(x_n)`, `λ_n ≥ 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SumJDescription {
    #[serde(skip)]
    pub regime: Regime,
    pub norm: f64,
    pub parts: Vec<SupportPart>,
    pub free: Vec<usize>,
}

impl SumSpace {
    /// `J(x)` in the structured form of [`SumJDescription`].
    pub fn support_functionals(&self, x: &SumVector) -> Result<SumJDescription> {
        let regime = self.regime()?;
        let norms = self.component_norms(x)?;
        let norm = self.exponent().combine(norms.iter().copied());
        if norm == 0.0 {
            return Err(Error::degenerate(
                "support functionals are defined only for nonzero vectors",
            ));
        }
        let mut parts = Vec::new();
        for ((i, v), &nv) in x.entries().iter().zip(&norms) {
            if nv == 0.0 {
                continue;
            }
            let scale = match regime {
                Regime::Lp(p) => (nv / norm).powf(p - 1.0),
                Regime::L1 => 1.0,
                Regime::C0 => {
                    if nv < norm * (1.0 - GEOM_TOL) {
                        continue;
                    }
                    1.0
                }
            };
            parts.push(SupportPart {
                index: *i,
                scale,
                set: support_set(self.component(*i), v)?,
            });
        }
        let free = if regime == Regime::L1 {
            let supp: Vec<usize> = parts.iter().map(|p| p.index).collect();
            (0..self.len()).filter(|i| !supp.contains(i)).collect()
        } else {
            Vec::new()
        };
        Ok(SumJDescription {
            regime,
            norm,
            parts,
            free,
        })
    }

    /// `f ∈ J(x)`: `‖f‖_q = 1` and `f(x) ≥ ‖x‖`, both within relative `1e−9`.
    pub fn is_support(&self, x: &SumVector, f: &SumFunctional) -> Result<bool> {
        let norm = self.nonzero_norm(x)?;
        let fnorm = self.dual_norm(f)?;
        Ok((fnorm - 1.0).abs() <= GEOM_TOL && f.apply(x) >= norm * (1.0 - GEOM_TOL))
    }

    /// Extreme points of `J(x)`.
    ///
    /// For `p = 1` every off-support index contributes the extreme points of
    /// its dual ball, which must be finite.
    pub fn support_ext(&self, x: &SumVector) -> Result<Vec<SumFunctional>> {
        self.support_functionals(x)?.extremes(self, EXTREME_LIMIT)
    }

    /// `{f(y) : f ∈ J(x)}`.
    pub fn value_interval(&self, x: &SumVector, y: &SumVector) -> Result<Interval> {
        self.check_vector(y)?;
        Ok(self.support_functionals(x)?.value_interval(self, y))
    }
}

impl SumJDescription {
    /// Canonical member: per-part canonical functional, zero on free
    /// indices; for `c_0` the weight sits on the first max index.
    pub fn canonical(&self) -> SumFunctional {
        let parts: &[SupportPart] = match self.regime {
            Regime::C0 => &self.parts[..1],
            _ => &self.parts,
        };
        SumFunctional::new(
            parts
                .iter()
                .map(|p| (p.index, p.set.canonical().scaled(p.scale)))
                .collect(),
        )
        .expect("parts are ordered by index")
    }

    /// A member of `J(x)` minimizing (or maximizing) `f(y)`.
    pub fn extremal(&self, space: &SumSpace, y: &SumVector, maximize: bool) -> SumFunctional {
        let zero = |i: usize| crate::component::ComponentVector::zeros(space.component(i).dim());
        let yn = |i: usize| y.get(i).cloned().unwrap_or_else(|| zero(i));
        match self.regime {
            Regime::C0 => {
                let mut best: Option<(f64, usize, ComponentFunctional)> = None;
                for p in &self.parts {
                    let w = yn(p.index);
                    let g = p.set.extremal(&w, maximize);
                    let val = g.apply(&w);
                    let better = match &best {
                        None => true,
                        Some((bv, _, _)) => (maximize && val > *bv) || (!maximize && val < *bv),
                    };
                    if better {
                        best = Some((val, p.index, g.clone()));
                    }
                }
                let (_, i, g) = best.expect("nonempty max set");
                SumFunctional::single(i, g)
            }
            _ => {
                let mut entries: Vec<(usize, ComponentFunctional)> = self
                    .parts
                    .iter()
                    .map(|p| (p.index, p.set.extremal(&yn(p.index), maximize).scaled(p.scale)))
                    .collect();
                for &i in &self.free {
                    if let Some(w) = y.get(i) {
                        if !w.is_zero() {
                            let psi = support_set(space.component(i), w)
                                .expect("nonzero entry")
                                .canonical()
                                .clone();
                            entries.push((i, if maximize { psi } else { psi.scaled(-1.0) }));
                        }
                    }
                }
                entries.sort_by_key(|e| e.0);
                SumFunctional::new(entries).expect("distinct indices")
            }
        }
    }

    /// `{f(y) : f ∈ J(x)}` as interval arithmetic over the parts.
    pub fn value_interval(&self, space: &SumSpace, y: &SumVector) -> Interval {
        let part_vi = |p: &SupportPart| match y.get(p.index) {
            Some(w) => Interval::hull_of(p.set.extremes().iter().map(|g| g.apply(w)))
                .expect("nonempty")
                .scale(p.scale),
            None => Interval::ZERO,
        };
        match self.regime {
            Regime::C0 => self
                .parts
                .iter()
                .map(part_vi)
                .reduce(Interval::hull)
                .expect("nonempty max set"),
            _ => {
                let base: Interval = self.parts.iter().map(part_vi).sum();
                let slack: f64 = self
                    .free
                    .iter()
                    .filter_map(|&i| y.get(i).map(|w| space.component(i).norm_unchecked(w.coords())))
                    .sum();
                Interval {
                    lo: base.lo - slack,
                    hi: base.hi + slack,
                }
            }
        }
    }

    /// Structural membership test against the description, relative `tol`.
    pub fn contains(&self, space: &SumSpace, x: &SumVector, f: &SumFunctional, tol: f64) -> Result<bool> {
        space.check_functional(f)?;
        let part_of = |i: usize| self.parts.iter().find(|p| p.index == i);
        let dn = |i: usize, g: &ComponentFunctional| space.component(i).dual_norm_unchecked(g.coords());
        match self.regime {
            Regime::Lp(_) => {
                for (i, g) in f.entries() {
                    if part_of(*i).is_none() && dn(*i, g) > tol {
                        return Ok(false);
                    }
                }
                for p in &self.parts {
                    let Some(g) = f.get(p.index) else {
                        return Ok(false);
                    };
                    let v = x.get(p.index).expect("supported");
                    if !is_component_support(space.component(p.index), v, &g.scaled(1.0 / p.scale), tol)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Regime::L1 => {
                for (i, g) in f.entries() {
                    if part_of(*i).is_none() && dn(*i, g) > 1.0 + tol {
                        return Ok(false);
                    }
                }
                for p in &self.parts {
                    let Some(g) = f.get(p.index) else {
                        return Ok(false);
                    };
                    let v = x.get(p.index).expect("supported");
                    if !is_component_support(space.component(p.index), v, g, tol)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Regime::C0 => {
                let mut weight = 0.0;
                for (i, g) in f.entries() {
                    let w = dn(*i, g);
                    match part_of(*i) {
                        None if w > tol => return Ok(false),
                        None => {}
                        Some(_) => {
                            let v = x.get(*i).expect("supported");
                            let nv = space.component(*i).norm_unchecked(v.coords());
                            if g.apply(v) < w * nv - tol * self.norm {
                                return Ok(false);
                            }
                            weight += w;
                        }
                    }
                }
                Ok((weight - 1.0).abs() <= tol)
            }
        }
    }

    /// Number of extreme points, saturating.
    fn count(&self, space: &SumSpace) -> Result<usize> {
        match self.regime {
            Regime::C0 => Ok(self.parts.iter().map(|p| p.set.extremes().len()).sum()),
            _ => {
                let mut n: usize = 1;
                for p in &self.parts {
                    n = n.saturating_mul(p.set.extremes().len());
                }
                for &i in &self.free {
                    n = n.saturating_mul(space.component(i).dual_ball_extremes()?.len());
                }
                Ok(n)
            }
        }
    }

    /// All extreme points, refusing to enumerate more than `limit`.
    pub fn extremes(&self, space: &SumSpace, limit: usize) -> Result<Vec<SumFunctional>> {
        let n = self.count(space)?;
        if n > limit {
            return Err(Error::not_enumerable(format!(
                "J(x) has {n} extreme points, limit is {limit}"
            )));
        }
        if self.regime == Regime::C0 {
            return Ok(self
                .parts
                .iter()
                .flat_map(|p| {
                    p.set
                        .extremes()
                        .iter()
                        .map(move |g| SumFunctional::single(p.index, g.clone()))
                })
                .collect());
        }
        let mut factors: Vec<(usize, Vec<ComponentFunctional>)> = self
            .parts
            .iter()
            .map(|p| {
                (
                    p.index,
                    p.set.extremes().iter().map(|g| g.scaled(p.scale)).collect(),
                )
            })
            .collect();
        for &i in &self.free {
            factors.push((i, space.component(i).dual_ball_extremes()?));
        }
        factors.sort_by_key(|f| f.0);
        let mut out: Vec<Vec<(usize, ComponentFunctional)>> = vec![Vec::new()];
        for (i, choices) in &factors {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    choices.iter().map(move |g| {
                        let mut e = prefix.clone();
                        e.push((*i, g.clone()));
                        e
                    })
                })
                .collect();
        }
        Ok(out
            .into_iter()
            .map(|e| SumFunctional::new(e).expect("ordered"))
            .collect())
    }
}
