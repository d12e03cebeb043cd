use serde::Serialize;

use super::characterization::{bj_orthogonal, orthogonal_completion, reverse_completion};
use super::sip::{commuting_gap, p_sip_commuting, power_map, sip_value_interval};
use super::{Side, TriBool};
use crate::component::{support_set, value_interval, ComponentSpace, ComponentVector};
use crate::error::Result;
use crate::grid::directions;
use crate::interval::Interval;
use crate::oracles::{bj_orthogonal_oracle, OracleConfig};
use crate::sum::{Regime, SumSpace, SumVector};
use crate::tolerance::{GEOM_TOL, ORACLE_TOL};

/// Smallest relative margin a grid witness must have.
const WITNESS_MARGIN: f64 = 1e-6;

/// How a counterexample was built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    /// `p = 1`, left: a large vector placed at a zero coordinate of `x`.
    ZeroCoordinate,
    /// `p = 1`, left: `±x_n/‖x_n‖` weights over a partition with unequal mass.
    UnequalPartition,
    /// `p = 1`, right: `y` keeps only the smallest entry of `x`.
    SmallestEntry,
    /// `c_0`, right: `−x_m/‖x_m‖` at a non-max index, `x_n/‖x_n‖` at max ones.
    SignFlip,
    /// `c_0`, left: orthogonal unit vector at a max index, `2x_m/‖x_m‖` elsewhere.
    OrthogonalAndLarge,
    /// Unequal entry norms, `y = (x_i, −αx_j)`.
    UnequalNorms,
    /// Three equal-norm entries, `(x_1, βx_2, βx_3)`.
    ThreeEntries,
    /// Two equal entries, one of them not smooth.
    NonSmooth,
    /// An entry is not `p`-s.i.p. symmetric, `y = (w, αx_m)`.
    NonCommuting,
    /// A component-level counterexample placed at the single nonzero entry.
    Lifted,
    /// Found by scanning a deterministic grid of directions.
    Grid,
}

/// A counterexample to left (or right) symmetry of `x`.
///
/// Left: `x ⊥ z` but not `z ⊥ x`. Right: `y ⊥ x` but not `x ⊥ y`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Falsification {
    pub witness: SumVector,
    pub scheme: Scheme,
    /// Both relations re-checked by the brute-force oracle.
    pub oracle_confirmed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetryAnalysis {
    pub result: TriBool,
    pub falsification: Option<Falsification>,
}

impl SymmetryAnalysis {
    fn yes() -> Self {
        Self {
            result: TriBool::Yes,
            falsification: None,
        }
    }

    fn unknown() -> Self {
        Self {
            result: TriBool::Unknown,
            falsification: None,
        }
    }

    fn no(f: Falsification) -> Self {
        Self {
            result: TriBool::No,
            falsification: Some(f),
        }
    }
}

enum Plan {
    Verdict(TriBool),
    Candidate(Scheme, SumVector),
    Lift(usize),
    Undecided,
}

fn lift(v: &ComponentVector) -> SumVector {
    SumVector::single(0, v.clone())
}

fn denies(space: &SumSpace, x: &SumVector, w: &SumVector, side: Side) -> Result<bool> {
    Ok(match side {
        Side::Left => bj_orthogonal(space, x, w)? && !bj_orthogonal(space, w, x)?,
        Side::Right => bj_orthogonal(space, w, x)? && !bj_orthogonal(space, x, w)?,
    })
}

fn oracle_denies(
    space: &SumSpace,
    x: &SumVector,
    w: &SumVector,
    side: Side,
    config: &OracleConfig,
) -> Result<bool> {
    let o = |a: &SumVector, b: &SumVector| bj_orthogonal_oracle(space, a, b, ORACLE_TOL, config);
    Ok(match side {
        Side::Left => o(x, w)? && !o(w, x)?,
        Side::Right => o(w, x)? && !o(x, w)?,
    })
}

fn confirm(
    space: &SumSpace,
    x: &SumVector,
    side: Side,
    config: &OracleConfig,
    scheme: Scheme,
    witness: SumVector,
) -> Result<Option<Falsification>> {
    if !denies(space, x, &witness, side)? {
        return Ok(None);
    }
    let oracle_confirmed = oracle_denies(space, x, &witness, side, config)?;
    Ok(Some(Falsification {
        witness,
        scheme,
        oracle_confirmed,
    }))
}

/// Scans `w` over a direction grid, completes it to an orthogonal partner
/// and keeps the partner whose reverse relation fails by the widest margin.
fn grid_falsify(
    space: &SumSpace,
    x: &SumVector,
    side: Side,
    config: &OracleConfig,
) -> Result<Option<Falsification>> {
    let dims: Vec<usize> = space.components().iter().map(|c| c.dim()).collect();
    let total: usize = dims.iter().sum();
    let nx = space.norm(x)?;
    let mut best: Option<(f64, SumVector)> = None;
    for d in directions(total, config.grid_directions) {
        let mut offset = 0;
        let entries = dims
            .iter()
            .enumerate()
            .map(|(i, &k)| {
                let c = d[offset..offset + k].to_vec();
                offset += k;
                (i, ComponentVector(c))
            })
            .collect();
        let w = SumVector::new(entries)?;
        let (partner, margin) = match side {
            Side::Left => {
                let t = orthogonal_completion(space, x, &w)?.t;
                let z = w.axpy(t, x);
                if space.norm(&z)? == 0.0 {
                    continue;
                }
                let m = space.value_interval(&z, x)?.min_abs() / nx;
                (z, m)
            }
            Side::Right => {
                let s = reverse_completion(space, x, &w)?;
                let y = w.axpy(s, x);
                let ny = space.norm(&y)?;
                if ny == 0.0 {
                    continue;
                }
                let m = space.value_interval(x, &y)?.min_abs() / ny;
                (y, m)
            }
        };
        if best.as_ref().is_none_or(|b| margin > b.0) {
            best = Some((margin, partner));
        }
    }
    match best {
        Some((m, w)) if m > WITNESS_MARGIN => confirm(space, x, side, config, Scheme::Grid, w),
        _ => Ok(None),
    }
}

/// Left (or right) symmetry of `v` in a single component.
///
/// Inner-product spaces and lines are symmetric everywhere. Otherwise only
/// a grid search for a counterexample is available, so the answer is
/// `No` or `Unknown`.
pub fn component_symmetric(
    space: &ComponentSpace,
    v: &ComponentVector,
    side: Side,
    config: &OracleConfig,
) -> Result<SymmetryAnalysis> {
    let single = SumSpace::single(space.clone());
    let x = lift(v);
    single.nonzero_norm(&x)?;
    if space.is_inner_product() || space.dim() == 1 {
        return Ok(SymmetryAnalysis::yes());
    }
    Ok(match grid_falsify(&single, &x, side, config)? {
        Some(f) => SymmetryAnalysis::no(f),
        None => SymmetryAnalysis::unknown(),
    })
}

/// Whether `v` is `p`-left (or `p`-right) s.i.p. symmetric in its
/// component, with a direction `w` it fails to commute with.
///
/// In an inner-product space `[v, w] = [w, v] = ⟨v, w⟩`, so commuting
/// holds for all `w` iff `p = 2` or the space is a line. Other kinds are
/// searched over a direction grid.
pub fn component_p_sip_symmetric(
    space: &ComponentSpace,
    v: &ComponentVector,
    p: f64,
    side: Side,
    config: &OracleConfig,
) -> Result<(TriBool, Option<ComponentVector>)> {
    let single = SumSpace::single(space.clone());
    let x = lift(v);
    let nv = single.nonzero_norm(&x)?;
    if space.dim() == 1 {
        return Ok((TriBool::Yes, None));
    }
    if space.is_inner_product() {
        if p == 2.0 {
            return Ok((TriBool::Yes, None));
        }
        let c = v.coords();
        let k = (0..c.len())
            .min_by(|&a, &b| c[a].abs().total_cmp(&c[b].abs()))
            .expect("dim >= 2");
        let dot = c[k] / (nv * nv);
        let mut u: Vec<f64> = c.iter().map(|ci| -dot * ci).collect();
        u[k] += 1.0;
        let un = u.iter().map(|t| t * t).sum::<f64>().sqrt();
        let w = ComponentVector(c.iter().zip(&u).map(|(ci, ui)| ci / nv + ui / un).collect());
        return Ok(if p_sip_commuting(&single, &x, &lift(&w), p, side)? {
            (TriBool::Unknown, None)
        } else {
            (TriBool::No, Some(w))
        });
    }
    let mut best: Option<(f64, ComponentVector)> = None;
    for d in directions(space.dim(), config.grid_directions) {
        let w = ComponentVector(d);
        let nw = space.norm(&w)?;
        let gap = commuting_gap(&single, &x, &lift(&w), p, side)? / (nv * nw);
        if best.as_ref().is_none_or(|b| gap > b.0) {
            best = Some((gap, w));
        }
    }
    Ok(match best {
        Some((g, w)) if g > WITNESS_MARGIN => (TriBool::No, Some(w)),
        _ => (TriBool::Unknown, None),
    })
}

fn unit(space: &ComponentSpace, v: &ComponentVector) -> ComponentVector {
    v.scaled(1.0 / space.norm_unchecked(v.coords()))
}

fn build(entries: Vec<(usize, ComponentVector)>) -> SumVector {
    let mut entries = entries;
    entries.sort_by_key(|e| e.0);
    SumVector::new(entries).expect("distinct indices")
}

fn dist(t: f64, iv: Interval) -> f64 {
    (iv.lo - t).max(t - iv.hi).max(0.0)
}

/// `y = (w at n1, α·x_m at m)` breaking the power-law exchange between
/// `x_{n1}` and `w`.
///
/// `x ⊥ y` iff `c1^{p−2}a + α c2^p = 0` for some `a ∈ [x_{n1}, w]`, and
/// `y ⊥ x` iff `‖w‖^{p−2} b + |α|^{p−2}α c2^p = 0` for some `b ∈ [w, x_{n1}]`.
fn mismatch(
    space: &SumSpace,
    x: &SumVector,
    side: Side,
    p: f64,
    n1: usize,
    w: &ComponentVector,
    m: usize,
) -> Result<SumVector> {
    let comp = space.component(n1);
    let single = SumSpace::single(comp.clone());
    let xv = x.get(n1).expect("nonzero entry");
    let xm = x.get(m).expect("nonzero entry");
    let c1 = comp.norm_unchecked(xv.coords());
    let c2 = space.component(m).norm_unchecked(xm.coords());
    let nw = comp.norm_unchecked(w.coords());
    let a = sip_value_interval(&single, &lift(xv), &lift(w))?;
    let b = sip_value_interval(&single, &lift(w), &lift(xv))?;
    let phi = |t: f64| power_map(t, p, c1 * nw);
    let alpha = match side {
        Side::Left => {
            let pick = if dist(phi(a.lo), b) >= dist(phi(a.hi), b) { a.lo } else { a.hi };
            -c1.powf(p - 2.0) * pick / c2.powf(p)
        }
        Side::Right => {
            let phi_a = Interval {
                lo: phi(a.lo),
                hi: phi(a.hi),
            };
            let pick = if dist(b.lo, phi_a) >= dist(b.hi, phi_a) { b.lo } else { b.hi };
            -pick.signum() * (pick.abs() * nw.powf(p - 2.0) / c2.powf(p)).powf(1.0 / (p - 1.0))
        }
    };
    Ok(build(vec![(n1, w.clone()), (m, xm.scaled(alpha))]))
}

/// Left case with two equal-norm entries where `x_{n1}` is not smooth:
/// pair a smooth `w` with an `α` that keeps `x ⊥ y` while missing the unique
/// `α` for which `y ⊥ x`.
fn non_smooth(
    space: &SumSpace,
    x: &SumVector,
    p: f64,
    n1: usize,
    m: usize,
    config: &OracleConfig,
) -> Result<Option<SumVector>> {
    let comp = space.component(n1);
    let xv = x.get(n1).expect("nonzero entry");
    let xm = x.get(m).expect("nonzero entry");
    let mut best: Option<(f64, ComponentVector)> = None;
    for d in directions(comp.dim(), config.grid_directions) {
        let w = ComponentVector(d);
        if !support_set(comp, &w)?.is_singleton() {
            continue;
        }
        let width = value_interval(comp, xv, &w)?.width() / comp.norm_unchecked(w.coords());
        if best.as_ref().is_none_or(|b| width > b.0) {
            best = Some((width, w));
        }
    }
    let Some((width, w)) = best else {
        return Ok(None);
    };
    if width <= WITNESS_MARGIN {
        return Ok(None);
    }
    let single = SumSpace::single(comp.clone());
    let c1 = comp.norm_unchecked(xv.coords());
    let c2 = space.component(m).norm_unchecked(xm.coords());
    let nw = comp.norm_unchecked(w.coords());
    let a = sip_value_interval(&single, &lift(xv), &lift(&w))?;
    let b = sip_value_interval(&single, &lift(&w), &lift(xv))?.midpoint();
    let feasible = a.scale(-c1.powf(p - 2.0) / c2.powf(p));
    let star = -b.signum() * (b.abs() * nw.powf(p - 2.0) / c2.powf(p)).powf(1.0 / (p - 1.0));
    let alpha = if (feasible.lo - star).abs() >= (feasible.hi - star).abs() {
        feasible.lo
    } else {
        feasible.hi
    };
    Ok(Some(build(vec![(n1, w), (m, xm.scaled(alpha))])))
}

fn plan(
    space: &SumSpace,
    x: &SumVector,
    side: Side,
    config: &OracleConfig,
) -> Result<Plan> {
    let norm = space.nonzero_norm(x)?;
    let nz: Vec<(usize, &ComponentVector, f64)> = x
        .entries()
        .iter()
        .map(|(i, v)| (*i, v, space.component(*i).norm_unchecked(v.coords())))
        .filter(|e| e.2 > 0.0)
        .collect();
    let single = nz.len() == 1;
    Ok(match (space.regime()?, side) {
        (Regime::L1, Side::Left) => {
            let zero = (0..space.len()).find(|&i| x.get(i).is_none_or(|v| v.is_zero()));
            if let Some(n) = zero {
                let comp = space.component(n);
                let e = ComponentVector::basis(comp.dim(), 0);
                let big = e.scaled(2.0 * norm / comp.norm_unchecked(e.coords()));
                let mut entries: Vec<(usize, ComponentVector)> = nz
                    .iter()
                    .map(|(i, v, _)| (*i, (*v).clone()))
                    .collect();
                entries.push((n, big));
                Plan::Candidate(Scheme::ZeroCoordinate, build(entries))
            } else if single {
                Plan::Lift(nz[0].0)
            } else {
                let (k_min, min) = nz
                    .iter()
                    .enumerate()
                    .fold((0, f64::INFINITY), |acc, (k, e)| if e.2 < acc.1 { (k, e.2) } else { acc });
                if norm - 2.0 * min > GEOM_TOL * norm {
                    let rest = (nz.len() - 1) as f64;
                    let entries = nz
                        .iter()
                        .enumerate()
                        .map(|(k, (i, v, n))| {
                            let a = if k == k_min { -1.0 } else { 1.0 / rest };
                            (*i, v.scaled(a / n))
                        })
                        .collect();
                    Plan::Candidate(Scheme::UnequalPartition, build(entries))
                } else {
                    Plan::Undecided
                }
            }
        }
        (Regime::L1, Side::Right) => {
            if single {
                Plan::Lift(nz[0].0)
            } else {
                let e = nz
                    .iter()
                    .fold(nz[0], |acc, e| if e.2 < acc.2 { *e } else { acc });
                Plan::Candidate(Scheme::SmallestEntry, SumVector::single(e.0, e.1.clone()))
            }
        }
        (Regime::C0, Side::Right) => {
            let is_max = |n: f64| n >= norm * (1.0 - GEOM_TOL);
            let other = (0..space.len()).find(|&i| {
                x.get(i)
                    .is_none_or(|v| !is_max(space.component(i).norm_unchecked(v.coords())))
            });
            match other {
                Some(m) => {
                    let comp = space.component(m);
                    let ym = match x.get(m).filter(|v| !v.is_zero()) {
                        Some(v) => unit(comp, v).scaled(-1.0),
                        None => unit(comp, &ComponentVector::basis(comp.dim(), 0)),
                    };
                    let mut entries: Vec<(usize, ComponentVector)> = nz
                        .iter()
                        .filter(|e| is_max(e.2))
                        .map(|(i, v, n)| (*i, v.scaled(1.0 / n)))
                        .collect();
                    entries.push((m, ym));
                    Plan::Candidate(Scheme::SignFlip, build(entries))
                }
                None if space.len() == 1 => Plan::Lift(nz[0].0),
                None => Plan::Undecided,
            }
        }
        (Regime::C0, Side::Left) => {
            if single {
                Plan::Lift(nz[0].0)
            } else {
                let (n1, v1, _) = *nz
                    .iter()
                    .find(|e| e.2 >= norm * (1.0 - GEOM_TOL))
                    .expect("max index exists");
                let (m, vm, nm) = *nz.iter().find(|e| e.0 != n1).expect("two entries");
                let comp = space.component(n1);
                let y1 = orthogonal_unit(comp, v1)?;
                Plan::Candidate(
                    Scheme::OrthogonalAndLarge,
                    build(vec![(n1, y1), (m, vm.scaled(2.0 / nm))]),
                )
            }
        }
        (Regime::Lp(_), _) if single => Plan::Lift(nz[0].0),
        (Regime::Lp(p), _) if p == 2.0 => {
            let mut all_yes = true;
            let mut found = None;
            for (i, v, _) in &nz {
                let (t, w) = component_p_sip_symmetric(space.component(*i), v, 2.0, side, config)?;
                match (t, w) {
                    (TriBool::No, Some(w)) => {
                        found = Some((*i, w));
                        break;
                    }
                    (TriBool::Yes, _) => {}
                    _ => all_yes = false,
                }
            }
            match found {
                Some((n1, w)) => {
                    let m = nz.iter().find(|e| e.0 != n1).expect("two entries").0;
                    Plan::Candidate(Scheme::NonCommuting, mismatch(space, x, side, 2.0, n1, &w, m)?)
                }
                None if all_yes => Plan::Verdict(TriBool::Yes),
                None => Plan::Undecided,
            }
        }
        (Regime::Lp(p), _) => {
            let hi = nz.iter().fold(nz[0], |a, e| if e.2 > a.2 { *e } else { a });
            let lo = nz.iter().fold(nz[0], |a, e| if e.2 < a.2 { *e } else { a });
            if hi.2 > lo.2 * (1.0 + GEOM_TOL) {
                let ratio_p = (hi.2 / lo.2).powf(p);
                let alpha = match side {
                    Side::Left => ratio_p,
                    Side::Right => ratio_p.powf(1.0 / (p - 1.0)),
                };
                Plan::Candidate(
                    Scheme::UnequalNorms,
                    build(vec![(hi.0, hi.1.clone()), (lo.0, lo.1.scaled(-alpha))]),
                )
            } else if nz.len() >= 3 {
                let beta = match side {
                    Side::Left => -0.5,
                    Side::Right => -(0.5f64.powf(1.0 / (p - 1.0))),
                };
                Plan::Candidate(
                    Scheme::ThreeEntries,
                    build(vec![
                        (nz[0].0, nz[0].1.clone()),
                        (nz[1].0, nz[1].1.scaled(beta)),
                        (nz[2].0, nz[2].1.scaled(beta)),
                    ]),
                )
            } else {
                two_equal(space, x, side, p, &nz, config)?
            }
        }
    })
}

fn two_equal(
    space: &SumSpace,
    x: &SumVector,
    side: Side,
    p: f64,
    nz: &[(usize, &ComponentVector, f64)],
    config: &OracleConfig,
) -> Result<Plan> {
    let pair = [(nz[0].0, nz[1].0), (nz[1].0, nz[0].0)];
    if side == Side::Left {
        for (n1, m) in pair {
            let v = x.get(n1).expect("entry");
            if !support_set(space.component(n1), v)?.is_singleton() {
                if let Some(y) = non_smooth(space, x, p, n1, m, config)? {
                    if denies(space, x, &y, side)? {
                        return Ok(Plan::Candidate(Scheme::NonSmooth, y));
                    }
                }
            }
        }
    }
    let mut all_yes = true;
    for (n1, m) in pair {
        let v = x.get(n1).expect("entry");
        match component_p_sip_symmetric(space.component(n1), v, p, side, config)? {
            (TriBool::No, Some(w)) => {
                return Ok(Plan::Candidate(
                    Scheme::NonCommuting,
                    mismatch(space, x, side, p, n1, &w, m)?,
                ))
            }
            (TriBool::Yes, _) => {}
            _ => all_yes = false,
        }
    }
    Ok(if all_yes {
        Plan::Verdict(TriBool::Yes)
    } else {
        Plan::Undecided
    })
}

/// A unit vector `u` with `v ⊥_B u`; zero on a line.
fn orthogonal_unit(space: &ComponentSpace, v: &ComponentVector) -> Result<ComponentVector> {
    let d = space.dim();
    if d == 1 {
        return Ok(ComponentVector::zeros(1));
    }
    let single = SumSpace::single(space.clone());
    let c = v.coords();
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| c[a].abs().total_cmp(&c[b].abs()));
    for k in order {
        let w = lift(&ComponentVector::basis(d, k));
        let t = orthogonal_completion(&single, &lift(v), &w)?.t;
        let u = w.axpy(t, &lift(v));
        if let Some(u) = u.get(0).filter(|u| !u.is_zero()) {
            return Ok(unit(space, u));
        }
    }
    Ok(ComponentVector::zeros(d))
}

/// Full symmetry analysis: verdict plus counterexample when one is found.
pub fn analyze_symmetry(
    space: &SumSpace,
    x: &SumVector,
    side: Side,
    config: &OracleConfig,
) -> Result<SymmetryAnalysis> {
    config.validate()?;
    match plan(space, x, side, config)? {
        Plan::Verdict(t) => Ok(SymmetryAnalysis {
            result: t,
            falsification: None,
        }),
        Plan::Candidate(scheme, w) => match confirm(space, x, side, config, scheme, w)? {
            Some(f) => Ok(SymmetryAnalysis::no(f)),
            None => fallback(space, x, side, config),
        },
        Plan::Lift(n0) => {
            let v = x.get(n0).expect("nonzero entry");
            let c = component_symmetric(space.component(n0), v, side, config)?;
            match (c.result, c.falsification) {
                (TriBool::No, Some(f)) => {
                    let w = f.witness.get(0).expect("single entry").clone();
                    match confirm(space, x, side, config, Scheme::Lifted, SumVector::single(n0, w))? {
                        Some(f) => Ok(SymmetryAnalysis::no(f)),
                        None => Ok(SymmetryAnalysis::unknown()),
                    }
                }
                (TriBool::Yes, _) => Ok(SymmetryAnalysis::yes()),
                _ => Ok(SymmetryAnalysis::unknown()),
            }
        }
        Plan::Undecided => fallback(space, x, side, config),
    }
}

fn fallback(
    space: &SumSpace,
    x: &SumVector,
    side: Side,
    config: &OracleConfig,
) -> Result<SymmetryAnalysis> {
    Ok(match grid_falsify(space, x, side, config)? {
        Some(f) => SymmetryAnalysis::no(f),
        None => SymmetryAnalysis::unknown(),
    })
}

/// Whether `x` is a left- (or right-) symmetric point of the sum.
///
/// `No` always comes with a verified counterexample; `Yes` only from a
/// sufficiency clause (inner-product components, lines, or the rank-one
/// reduction to such a component).
pub fn symmetric_point(
    space: &SumSpace,
    x: &SumVector,
    side: Side,
    config: &OracleConfig,
) -> Result<TriBool> {
    Ok(analyze_symmetry(space, x, side, config)?.result)
}

/// A counterexample to symmetry of `x`, when one is constructed.
pub fn falsify_symmetry(
    space: &SumSpace,
    x: &SumVector,
    side: Side,
    config: &OracleConfig,
) -> Result<Option<Falsification>> {
    Ok(analyze_symmetry(space, x, side, config)?.falsification)
}
