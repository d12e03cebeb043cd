use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::sum::{Regime, SumFunctional, SumSpace, SumVector};
use crate::tolerance::GEOM_TOL;

fn slack(space: &SumSpace, y: &SumVector) -> Result<f64> {
    Ok(GEOM_TOL * space.norm(y)?)
}

/// `x ⊥_B y`, decided from the structure of `J(x)`.
///
/// `1 < p < ∞`: `0 ∈ Σ ‖x_n‖^{p−1} {g(y_n) : g ∈ J(x_n)}`.
/// `p = 1`: `min{|t| : t ∈ Σ_{supp x} {g(y_n)}} ≤ Σ_{n ∉ supp x} ‖y_n‖`.
/// `c_0`: `0` lies in the hull of `{g(y_n)}` over the max-attaining `n`.
///
/// `x = 0` is orthogonal to everything.
pub fn bj_orthogonal(space: &SumSpace, x: &SumVector, y: &SumVector) -> Result<bool> {
    space.check_vector(y)?;
    if space.norm(x)? == 0.0 {
        return Ok(true);
    }
    let tol = slack(space, y)?;
    let j = space.support_functionals(x)?;
    let vi_n = |index: usize, set: &crate::component::JDescription| match y.get(index) {
        Some(w) => Interval::hull_of(set.extremes().iter().map(|g| g.apply(w))).expect("nonempty"),
        None => Interval::ZERO,
    };
    Ok(match j.regime {
        Regime::Lp(p) => {
            let total: Interval = j
                .parts
                .iter()
                .map(|part| {
                    let nx = space.component(part.index).norm_unchecked(
                        x.get(part.index).expect("supported").coords(),
                    );
                    vi_n(part.index, &part.set).scale((nx / j.norm).powf(p - 1.0))
                })
                .sum();
            total.contains(0.0, tol)
        }
        Regime::L1 => {
            let total: Interval = j.parts.iter().map(|part| vi_n(part.index, &part.set)).sum();
            let tail: f64 = j
                .free
                .iter()
                .filter_map(|&i| y.get(i).map(|w| space.component(i).norm_unchecked(w.coords())))
                .sum();
            total.min_abs() <= tail + tol
        }
        Regime::C0 => j
            .parts
            .iter()
            .map(|part| vi_n(part.index, &part.set))
            .reduce(Interval::hull)
            .expect("nonempty max set")
            .contains(0.0, tol),
    })
}

/// A member `f ∈ J(x)` with `f(y) = 0`, when `x ⊥_B y`.
///
/// Built as the convex combination of the members minimizing and
/// maximizing `f(y)`.
pub fn orthogonality_witness(
    space: &SumSpace,
    x: &SumVector,
    y: &SumVector,
) -> Result<Option<SumFunctional>> {
    space.check_vector(y)?;
    let j = space.support_functionals(x)?;
    if !bj_orthogonal(space, x, y)? {
        return Ok(None);
    }
    let lo_f = j.extremal(space, y, false);
    let hi_f = j.extremal(space, y, true);
    let (lo, hi) = (lo_f.apply(y), hi_f.apply(y));
    if hi - lo <= 0.0 {
        return Ok(Some(lo_f));
    }
    let theta = (hi / (hi - lo)).clamp(0.0, 1.0);
    Ok(Some(lo_f.scaled(theta).axpy(1.0 - theta, &hi_f)))
}

/// The rank-one reduction for `x` with a single nonzero entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RankOneReport {
    pub x_perp_y: bool,
    pub y_perp_x: bool,
}

fn component_bj(
    space: &SumSpace,
    index: usize,
    v: Option<&crate::component::ComponentVector>,
    w: Option<&crate::component::ComponentVector>,
) -> Result<bool> {
    let single = SumSpace::single(space.component(index).clone());
    let lift = |c: Option<&crate::component::ComponentVector>| match c {
        Some(c) => SumVector::single(0, c.clone()),
        None => SumVector::empty(),
    };
    bj_orthogonal(&single, &lift(v), &lift(w))
}

/// Orthogonality in both directions between `x = x_{n0} e_{n0}` and `y`,
/// reduced to the component `X_{n0}`.
///
/// - `1 < p < ∞`: `x ⊥ y ⇔ x_{n0} ⊥ y_{n0}` and `y ⊥ x ⇔ y_{n0} ⊥ x_{n0}`.
/// - `p = 1`: `x ⊥ y ⇔ inf{|g(y_{n0})| : g ∈ J(x_{n0})} ≤ Σ_{n≠n0} ‖y_n‖`
///   and `y ⊥ x ⇔ y_{n0} ⊥ x_{n0}`.
/// - `c_0`: `x ⊥ y ⇔ x_{n0} ⊥ y_{n0}`; `y ⊥ x` iff `‖y_n‖ = ‖y‖` for some
///   `n ≠ n0` or `y_{n0} ⊥ x_{n0}`.
pub fn rank_one_tests(space: &SumSpace, x: &SumVector, y: &SumVector) -> Result<RankOneReport> {
    space.check_vector(y)?;
    let support = x.support();
    space.check_vector(x)?;
    let [n0] = support[..] else {
        return Err(Error::InvalidArgument(format!(
            "x must have exactly one nonzero entry, found {}",
            support.len()
        )));
    };
    let xn = x.get(n0);
    let yn = y.get(n0);
    let y_norms: Vec<(usize, f64)> = y
        .entries()
        .iter()
        .map(|(i, w)| (*i, space.component(*i).norm_unchecked(w.coords())))
        .collect();
    Ok(match space.regime()? {
        Regime::Lp(_) => RankOneReport {
            x_perp_y: component_bj(space, n0, xn, yn)?,
            y_perp_x: component_bj(space, n0, yn, xn)?,
        },
        Regime::L1 => {
            let comp = space.component(n0);
            let vi = match yn {
                Some(w) => crate::component::value_interval(comp, xn.expect("supported"), w)?,
                None => Interval::ZERO,
            };
            let tail: f64 = y_norms.iter().filter(|e| e.0 != n0).map(|e| e.1).sum();
            RankOneReport {
                x_perp_y: vi.min_abs() <= tail + slack(space, y)?,
                y_perp_x: component_bj(space, n0, yn, xn)?,
            }
        }
        Regime::C0 => {
            let ymax = y_norms.iter().fold(0.0_f64, |m, e| m.max(e.1));
            let escape = ymax > 0.0
                && y_norms
                    .iter()
                    .any(|e| e.0 != n0 && e.1 >= ymax * (1.0 - GEOM_TOL));
            RankOneReport {
                x_perp_y: component_bj(space, n0, xn, yn)?,
                y_perp_x: escape || component_bj(space, n0, yn, xn)?,
            }
        }
    })
}

/// Scalars `t` making `y + t·x` orthogonal to `x` from the left side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Completion {
    /// Midpoint of `feasible`.
    pub t: f64,
    /// Every `t` in this interval gives `x ⊥_B y + t·x`.
    pub feasible: Interval,
}

/// `t` with `x ⊥_B (y + t·x)`.
///
/// For `f ∈ J(x)`, `f(y + t·x) = f(y) + t‖x‖`, so with
/// `[a, b] = {f(y) : f ∈ J(x)}` the feasible set is `[−b/‖x‖, −a/‖x‖]`.
pub fn orthogonal_completion(space: &SumSpace, x: &SumVector, y: &SumVector) -> Result<Completion> {
    let nx = space.nonzero_norm(x)?;
    let vi = space.value_interval(x, y)?;
    let feasible = vi.scale(-1.0 / nx);
    Ok(Completion {
        t: feasible.midpoint(),
        feasible,
    })
}

/// `s` with `(w + s·x) ⊥_B x`: a minimizer of `s ↦ ‖w + s·x‖`.
///
/// The subdifferential of that convex map at `s` is `{f(x) : f ∈ J(w + s·x)}`,
/// which bisection drives to contain `0`.
pub fn reverse_completion(space: &SumSpace, x: &SumVector, w: &SumVector) -> Result<f64> {
    let nx = space.nonzero_norm(x)?;
    let nw = space.norm(w)?;
    let bound = 2.0 * nw / nx + 1.0;
    let (mut lo, mut hi) = (-bound, bound);
    let tol = GEOM_TOL * nx;
    for _ in 0..200 {
        let s = 0.5 * (lo + hi);
        let v = w.axpy(s, x);
        if space.norm(&v)? == 0.0 {
            return Ok(s);
        }
        let vi = space.value_interval(&v, x)?;
        if vi.lo > tol {
            hi = s;
        } else if vi.hi < -tol {
            lo = s;
        } else {
            return Ok(s);
        }
        if hi - lo <= f64::EPSILON * bound {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::component::ComponentSpace;
    use approx::assert_abs_diff_eq;

    fn euclid(n: usize) -> Vec<ComponentSpace> {
        vec![ComponentSpace::euclidean(2).unwrap(); n]
    }

    fn sv(pairs: &[(usize, [f64; 2])]) -> SumVector {
        SumVector::from_pairs(pairs.iter().map(|(i, c)| (*i, c.to_vec()))).unwrap()
    }

    #[test]
    fn disjoint_supports_are_orthogonal_for_lp() {
        for p in [1.5, 2.0, 3.0] {
            let x_space = SumSpace::new(p, euclid(2)).unwrap();
            let x = sv(&[(0, [1.0, 2.0])]);
            let y = sv(&[(1, [3.0, -1.0])]);
            assert!(bj_orthogonal(&x_space, &x, &y).unwrap());
            assert!(bj_orthogonal(&x_space, &y, &x).unwrap());
        }
    }

    #[test]
    fn l1_tail_clause() {
        let x_space = SumSpace::new(1.0, euclid(2)).unwrap();
        let x = sv(&[(0, [1.0, 0.0])]);
        let y = sv(&[(0, [1.0, 0.0]), (1, [0.0, 2.0])]);
        assert!(bj_orthogonal(&x_space, &x, &y).unwrap());
        assert!(!bj_orthogonal(&x_space, &y, &x).unwrap());
        let r = rank_one_tests(&x_space, &x, &y).unwrap();
        assert!(r.x_perp_y && !r.y_perp_x);
        let small = sv(&[(0, [1.0, 0.0]), (1, [0.0, 0.5])]);
        assert!(!bj_orthogonal(&x_space, &x, &small).unwrap());
    }

    #[test]
    fn c0_hull_clause() {
        let x_space = SumSpace::new(0.0, euclid(2)).unwrap();
        let x = sv(&[(0, [1.0, 0.0]), (1, [1.0, 0.0])]);
        let y = sv(&[(0, [1.0, 0.0]), (1, [-1.0, 0.0])]);
        assert!(bj_orthogonal(&x_space, &x, &y).unwrap());
        let e = sv(&[(0, [1.0, 0.0])]);
        let z = sv(&[(0, [5.0, 0.0]), (1, [0.0, 7.0])]);
        let r = rank_one_tests(&x_space, &e, &z).unwrap();
        assert!(!r.x_perp_y && r.y_perp_x);
    }

    #[test]
    fn completion_gram_schmidt() {
        let x_space = SumSpace::new(2.0, euclid(1)).unwrap();
        let x = sv(&[(0, [1.0, 0.0])]);
        let c = orthogonal_completion(&x_space, &x, &sv(&[(0, [1.0, 1.0])])).unwrap();
        assert_eq!(c.t, -1.0);
        let c = orthogonal_completion(&x_space, &x, &sv(&[(0, [0.0, 1.0])])).unwrap();
        assert!(c.feasible.contains(0.0, 0.0));
    }

    #[test]
    fn witness_annihilates_y() {
        let x_space = SumSpace::new(0.0, euclid(2)).unwrap();
        let x = sv(&[(0, [1.0, 0.0]), (1, [1.0, 0.0])]);
        let y = sv(&[(0, [1.0, 0.0]), (1, [-3.0, 0.0])]);
        let f = orthogonality_witness(&x_space, &x, &y).unwrap().unwrap();
        assert!(x_space.is_support(&x, &f).unwrap());
        assert_abs_diff_eq!(f.apply(&y), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn reverse_completion_minimizes() {
        let x_space = SumSpace::new(2.0, euclid(1)).unwrap();
        let x = sv(&[(0, [1.0, 0.0])]);
        let w = sv(&[(0, [2.0, 1.0])]);
        let s = reverse_completion(&x_space, &x, &w).unwrap();
        assert_abs_diff_eq!(s, -2.0, epsilon = 1e-9);
    }

    #[test]
    fn rank_one_rejects_wide_x() {
        let x_space = SumSpace::new(2.0, euclid(2)).unwrap();
        let x = sv(&[(0, [1.0, 0.0]), (1, [1.0, 0.0])]);
        assert!(rank_one_tests(&x_space, &x, &x).is_err());
    }
}
