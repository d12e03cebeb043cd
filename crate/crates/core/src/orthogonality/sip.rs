use super::characterization::orthogonality_witness;
use super::Side;
use crate::component::ComponentVector;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::sum::{Regime, SumFunctional, SumSpace, SumVector};
use crate::tolerance::GEOM_TOL;

/// A rule picking one support functional for each unit vector.
///
/// It is only ever called on canonical unit representatives (see
/// [`canonical_unit`]), so it defines a map on lines, which is all a
/// semi-inner product needs.
pub trait SipSelector {
    fn select(&self, space: &SumSpace, unit: &SumVector) -> Result<SumFunctional>;
}

/// The canonical member of `J(x)` for every line.
#[derive(Debug, Clone, Copy, Default)]
pub struct CanonicalSelector;

impl SipSelector for CanonicalSelector {
    fn select(&self, space: &SumSpace, unit: &SumVector) -> Result<SumFunctional> {
        Ok(space.support_functionals(unit)?.canonical())
    }
}

/// Picks the member of `J(x)` minimizing or maximizing `f(direction)`.
#[derive(Debug, Clone)]
pub struct ExtremalSelector {
    pub direction: SumVector,
    pub maximize: bool,
}

impl SipSelector for ExtremalSelector {
    fn select(&self, space: &SumSpace, unit: &SumVector) -> Result<SumFunctional> {
        Ok(space
            .support_functionals(unit)?
            .extremal(space, &self.direction, self.maximize))
    }
}

/// Prescribed functionals on finitely many lines, canonical elsewhere.
#[derive(Debug, Clone, Default)]
pub struct PinnedSelector {
    pins: Vec<(SumVector, SumFunctional)>,
}

fn same_point(a: &SumVector, b: &SumVector) -> bool {
    let d = a.axpy(-1.0, b);
    let scale = a
        .entries()
        .iter()
        .chain(b.entries())
        .flat_map(|(_, v)| v.coords().iter())
        .fold(f64::MIN_POSITIVE, |m, c| m.max(c.abs()));
    d.entries()
        .iter()
        .flat_map(|(_, v)| v.coords().iter())
        .all(|c| c.abs() <= 1e-12 * scale)
}

impl PinnedSelector {
    pub fn new() -> Self {
        Self::default()
    }

    /// Pins `f ∈ J(x)` to the line through `x`.
    pub fn pin(&mut self, space: &SumSpace, x: &SumVector, f: SumFunctional) -> Result<()> {
        let (lambda, unit) = canonical_unit(space, x)?;
        if !space.is_support(x, &f)? {
            return Err(Error::invalid_argument("pinned functional must lie in J(x)"));
        }
        let g = if lambda < 0.0 { f.scaled(-1.0) } else { f };
        self.pins.retain(|(u, _)| !same_point(u, &unit));
        self.pins.push((unit, g));
        Ok(())
    }
}

impl SipSelector for PinnedSelector {
    fn select(&self, space: &SumSpace, unit: &SumVector) -> Result<SumFunctional> {
        match self.pins.iter().find(|(u, _)| same_point(u, unit)) {
            Some((_, g)) => Ok(g.clone()),
            None => CanonicalSelector.select(space, unit),
        }
    }
}

/// `x = λ·x₀` with `‖x₀‖ = 1` and the first nonzero coordinate of `x₀`
/// (component by component) positive.
pub fn canonical_unit(space: &SumSpace, x: &SumVector) -> Result<(f64, SumVector)> {
    let norm = space.nonzero_norm(x)?;
    let first = x.first_nonzero().expect("nonzero vector");
    let lambda = norm.copysign(first);
    Ok((lambda, x.scaled(1.0 / lambda)))
}

/// `[x, y] = λ·Ψ([x])(y)` for `x = λ·x₀`; `[0, y] = 0`.
pub fn sip<S: SipSelector + ?Sized>(
    space: &SumSpace,
    selector: &S,
    x: &SumVector,
    y: &SumVector,
) -> Result<f64> {
    space.check_vector(y)?;
    if space.norm(x)? == 0.0 {
        return Ok(0.0);
    }
    let (lambda, unit) = canonical_unit(space, x)?;
    Ok(lambda * selector.select(space, &unit)?.apply(y))
}

/// `α` with `y = α·x`, if any (`x` nonzero).
pub fn collinear_factor(x: &SumVector, y: &SumVector) -> Option<f64> {
    let mut pivot = None;
    let mut best = 0.0_f64;
    for (i, v) in x.entries() {
        for (k, &c) in v.coords().iter().enumerate() {
            if c.abs() > best {
                best = c.abs();
                pivot = Some((*i, k, c));
            }
        }
    }
    let (i, k, c) = pivot?;
    let alpha = y.get(i).map_or(0.0, |v| v.coords()[k]) / c;
    same_point(&x.scaled(alpha), y).then_some(alpha)
}

/// All values `[x, y]` over semi-inner products: `‖x‖·{f(y) : f ∈ J(x)}`,
/// or the point `α‖x‖²` when `y = α·x`.
pub fn sip_value_interval(space: &SumSpace, x: &SumVector, y: &SumVector) -> Result<Interval> {
    let norm = space.nonzero_norm(x)?;
    space.check_vector(y)?;
    if let Some(alpha) = collinear_factor(x, y) {
        return Ok(Interval::point(alpha * norm * norm));
    }
    Ok(space.value_interval(x, y)?.scale(norm))
}

pub(crate) fn power_map(v: f64, p: f64, c: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else {
        v.signum() * (v.abs() / c).powf(p - 1.0) * c
    }
}

/// How far the `p`-commuting condition fails; `≤ 0` means it holds.
///
/// With `A` the values of `[x, y]`, `B` those of `[y, x]` and
/// `φ(v) = |v/(‖x‖‖y‖)|^{p−2}·v` (increasing), left asks `φ(A) ⊆ B` and
/// right asks `B ⊆ φ(A)`.
pub(crate) fn commuting_gap(
    space: &SumSpace,
    x: &SumVector,
    y: &SumVector,
    p: f64,
    side: Side,
) -> Result<f64> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::invalid_argument(format!("p must lie in (1, ∞), got {p}")));
    }
    let nx = space.nonzero_norm(x)?;
    let ny = space.nonzero_norm(y)?;
    if collinear_factor(x, y).is_some() {
        return Ok(0.0);
    }
    let c = nx * ny;
    let a = sip_value_interval(space, x, y)?;
    let b = sip_value_interval(space, y, x)?;
    let phi_a = Interval {
        lo: power_map(a.lo, p, c),
        hi: power_map(a.hi, p, c),
    };
    Ok(match side {
        Side::Left => (b.lo - phi_a.lo).max(phi_a.hi - b.hi),
        Side::Right => (phi_a.lo - b.lo).max(b.hi - phi_a.hi),
    })
}

/// Whether `x` is `p`-left (or `p`-right) s.i.p. commuting with `y`.
///
/// Selectors on the distinct lines `[x]` and `[y]` are independent, so the
/// quantifiers over semi-inner products become interval containments.
pub fn p_sip_commuting(
    space: &SumSpace,
    x: &SumVector,
    y: &SumVector,
    p: f64,
    side: Side,
) -> Result<bool> {
    let gap = commuting_gap(space, x, y, p, side)?;
    let c = space.norm(x)? * space.norm(y)?;
    Ok(gap <= GEOM_TOL * c)
}

fn lift(v: Option<&ComponentVector>) -> SumVector {
    v.map_or_else(SumVector::empty, |c| SumVector::single(0, c.clone()))
}

/// `Σ ‖x_n‖^{p−2} [x_n, y_n]_n` with one selector per declared component.
pub fn sip_sum<S: SipSelector>(
    space: &SumSpace,
    selectors: &[S],
    x: &SumVector,
    y: &SumVector,
) -> Result<f64> {
    let Regime::Lp(p) = space.regime()? else {
        return Err(Error::invalid_argument("sip_sum needs 1 < p < ∞"));
    };
    if selectors.len() != space.len() {
        return Err(Error::invalid_argument(format!(
            "expected {} selectors, got {}",
            space.len(),
            selectors.len()
        )));
    }
    space.check_vector(x)?;
    space.check_vector(y)?;
    let mut total = 0.0;
    for (i, v) in x.entries() {
        let comp = space.component(*i);
        let nv = comp.norm_unchecked(v.coords());
        if nv == 0.0 {
            continue;
        }
        let single = SumSpace::single(comp.clone());
        let s = sip(&single, &selectors[*i], &lift(Some(v)), &lift(y.get(*i)))?;
        total += nv.powf(p - 2.0) * s;
    }
    Ok(total)
}

/// Component selectors making `Σ ‖x_n‖^{p−2}[x_n, y_n]_n = 0`, when `x ⊥_B y`.
///
/// A member `f ∈ J(x)` with `f(y) = 0` splits as `f_n = (‖x_n‖/‖x‖)^{p−1} h_n`
/// with `h_n ∈ J(x_n)`; pinning `h_n` to `[x_n]` gives
/// `Σ ‖x_n‖^{p−2}[x_n, y_n]_n = ‖x‖^{p−1} f(y)`.
pub fn orthogonal_sip_selectors(
    space: &SumSpace,
    x: &SumVector,
    y: &SumVector,
) -> Result<Option<Vec<PinnedSelector>>> {
    if !matches!(space.regime()?, Regime::Lp(_)) {
        return Err(Error::invalid_argument("orthogonal_sip_selectors needs 1 < p < ∞"));
    }
    let Some(f) = orthogonality_witness(space, x, y)? else {
        return Ok(None);
    };
    let j = space.support_functionals(x)?;
    let mut selectors = vec![PinnedSelector::new(); space.len()];
    for part in &j.parts {
        let comp = space.component(part.index);
        let single = SumSpace::single(comp.clone());
        let h = f
            .get(part.index)
            .expect("witness covers the support")
            .scaled(1.0 / part.scale);
        let xn = lift(x.get(part.index));
        // Normalize away rounding so the pin passes the membership test.
        let hn = comp.dual_norm(&h)?;
        let h = SumFunctional::single(0, h.scaled(1.0 / hn));
        selectors[part.index].pin(&single, &xn, h)?;
    }
    Ok(Some(selectors))
}
