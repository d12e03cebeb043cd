use serde::Serialize;

use super::space::{ComponentFunctional, ComponentKind, ComponentSpace, ComponentVector};
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::tolerance::{GEOM_TOL, MAX_FREE_COORDS};

/// Exact description of `J(v)` for a nonzero component vector.
///
/// Polytope lists are sorted lexicographically and irredundant; the first
/// entry is the canonical member.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", content = "extremes", rename_all = "snake_case")]
pub enum JDescription {
    Singleton(ComponentFunctional),
    Polytope(Vec<ComponentFunctional>),
}

impl JDescription {
    pub fn extremes(&self) -> &[ComponentFunctional] {
        match self {
            JDescription::Singleton(g) => std::slice::from_ref(g),
            JDescription::Polytope(list) => list,
        }
    }

    /// Canonical support functional: the duality map for smooth kinds, the
    /// lexicographically smallest extreme point otherwise.
    pub fn canonical(&self) -> &ComponentFunctional {
        &self.extremes()[0]
    }

    /// `J(v)` has exactly one element.
    pub fn is_singleton(&self) -> bool {
        self.extremes().len() == 1
    }

    /// Extreme point minimizing (or maximizing) `g(w)`; ties go to the
    /// lexicographically smallest.
    pub fn extremal(&self, w: &ComponentVector, maximize: bool) -> &ComponentFunctional {
        let mut best = &self.extremes()[0];
        let mut best_val = best.apply(w);
        for g in &self.extremes()[1..] {
            let val = g.apply(w);
            if (maximize && val > best_val) || (!maximize && val < best_val) {
                best = g;
                best_val = val;
            }
        }
        best
    }
}

fn nonzero_norm(space: &ComponentSpace, v: &ComponentVector) -> Result<f64> {
    let n = space.norm(v)?;
    if n == 0.0 {
        return Err(Error::degenerate(
            "support functionals are defined only for nonzero vectors",
        ));
    }
    Ok(n)
}

/// The set `J(v)` of norm-one functionals `g` with `g(v) = ‖v‖`.
///
/// On polyhedral kinds the extreme points are the dual-ball vertices that
/// are active at `v` within relative tolerance [`GEOM_TOL`].
pub fn support_set(space: &ComponentSpace, v: &ComponentVector) -> Result<JDescription> {
    let norm = nonzero_norm(space, v)?;
    let c = v.coords();
    let d = space.dim();
    let desc = match space.kind() {
        ComponentKind::Euclidean => {
            JDescription::Singleton(ComponentFunctional(c.iter().map(|x| x / norm).collect()))
        }
        ComponentKind::Lr { r } => JDescription::Singleton(ComponentFunctional(
            c.iter()
                .map(|x| {
                    if *x == 0.0 {
                        0.0
                    } else {
                        x.signum() * (x.abs() / norm).powf(r - 1.0)
                    }
                })
                .collect(),
        )),
        ComponentKind::L1 => {
            // Face of the l_inf cube: fixed signs on the support, free ±1 elsewhere.
            let threshold = GEOM_TOL * norm / (2.0 * d as f64);
            let free: Vec<usize> = (0..d).filter(|&i| c[i].abs() <= threshold).collect();
            if free.len() > MAX_FREE_COORDS {
                return Err(Error::not_enumerable(format!(
                    "{} free coordinates in an l1 support set",
                    free.len()
                )));
            }
            let base: Vec<f64> = c
                .iter()
                .map(|x| if *x < 0.0 { -1.0 } else { 1.0 })
                .collect();
            let list = (0..1usize << free.len())
                .map(|mask| {
                    let mut g = base.clone();
                    for (bit, &i) in free.iter().enumerate() {
                        g[i] = if mask >> bit & 1 == 1 { -1.0 } else { 1.0 };
                    }
                    ComponentFunctional(g)
                })
                .collect();
            JDescription::Polytope(list)
        }
        ComponentKind::Linf => {
            let list = (0..d)
                .filter(|&i| c[i].abs() >= norm * (1.0 - GEOM_TOL))
                .map(|i| ComponentFunctional::basis(d, i).scaled(c[i].signum()))
                .collect();
            JDescription::Polytope(list)
        }
        ComponentKind::Polygon(p) => {
            let list = p
                .polar_vertices()
                .iter()
                .filter(|g| g[0] * c[0] + g[1] * c[1] >= norm * (1.0 - GEOM_TOL))
                .map(|g| ComponentFunctional(g.to_vec()))
                .collect();
            JDescription::Polytope(list)
        }
    };
    Ok(match desc {
        JDescription::Polytope(mut list) => {
            list.sort_by(|a, b| a.lex_cmp(b));
            list.dedup();
            JDescription::Polytope(list)
        }
        single => single,
    })
}

/// Whether `g ∈ J(v)` within relative tolerance `tol`.
pub fn is_component_support(
    space: &ComponentSpace,
    v: &ComponentVector,
    g: &ComponentFunctional,
    tol: f64,
) -> Result<bool> {
    let norm = nonzero_norm(space, v)?;
    let gnorm = space.dual_norm(g)?;
    let val = g.apply(v);
    Ok((gnorm - 1.0).abs() <= tol && val >= norm * (1.0 - tol) && val <= norm * (1.0 + tol))
}

/// `{g(w) : g ∈ J(v)}`, a closed interval spanned by the extreme points.
pub fn value_interval(
    space: &ComponentSpace,
    v: &ComponentVector,
    w: &ComponentVector,
) -> Result<Interval> {
    space.check_vector(w)?;
    let j = support_set(space, v)?;
    Ok(Interval::hull_of(j.extremes().iter().map(|g| g.apply(w))).expect("J(v) is nonempty"))
}

/// Diameter of a finite point set in the dual norm, by pair scan.
pub(crate) fn dual_diameter(space: &ComponentSpace, points: &[ComponentFunctional]) -> f64 {
    let mut best = 0.0_f64;
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            best = best.max(space.dual_norm_unchecked(a.sub(b).coords()));
        }
    }
    best
}

/// `D(v)`: diameter of `J(v)` in the dual norm.
pub fn d_component(space: &ComponentSpace, v: &ComponentVector) -> Result<f64> {
    let j = support_set(space, v)?;
    Ok(dual_diameter(space, j.extremes()))
}

/// `𝒟(S) = sup { D(v) : v ≠ 0 }`.
///
/// Smooth kinds give `0`. For polyhedral kinds the supremum is attained at
/// a vertex of the unit ball, where `J(v)` is a dual face of maximal size.
/// The hyperoctahedral symmetry of `ℓ_1` and `ℓ_∞` makes every vertex
/// equivalent, so one representative is evaluated; polygons scan all
/// vertices.
pub fn cal_d_component(space: &ComponentSpace) -> f64 {
    let d = space.dim();
    let eval = |c: Vec<f64>| {
        d_component(space, &ComponentVector(c)).expect("unit-ball vertices are nonzero")
    };
    match space.kind() {
        ComponentKind::Euclidean | ComponentKind::Lr { .. } => 0.0,
        ComponentKind::L1 => eval(ComponentVector::basis(d, 0).0),
        ComponentKind::Linf => eval(vec![1.0; d]),
        ComponentKind::Polygon(p) => p
            .vertices()
            .iter()
            .map(|v| eval(v.to_vec()))
            .fold(0.0, f64::max),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[f64]) -> ComponentVector {
        ComponentVector(c.to_vec())
    }

    fn f(c: &[f64]) -> ComponentFunctional {
        ComponentFunctional(c.to_vec())
    }

    #[test]
    fn euclidean_support_is_normalized_vector() {
        let s = ComponentSpace::euclidean(2).unwrap();
        assert_eq!(
            support_set(&s, &v(&[0.0, 2.0])).unwrap(),
            JDescription::Singleton(f(&[0.0, 1.0]))
        );
    }

    #[test]
    fn zero_vector_is_degenerate() {
        let s = ComponentSpace::linf(3).unwrap();
        assert!(matches!(
            support_set(&s, &v(&[0.0, 0.0, 0.0])),
            Err(Error::DegenerateInput(_))
        ));
        assert!(matches!(
            d_component(&s, &v(&[0.0, 0.0, 0.0])),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn l1_vertex_has_edge_of_support_functionals() {
        // (1,0) is a vertex of the l1 diamond; J = {(1,t) : |t| <= 1}.
        let s = ComponentSpace::l1(2).unwrap();
        let j = support_set(&s, &v(&[1.0, 0.0])).unwrap();
        assert_eq!(j.extremes(), &[f(&[1.0, -1.0]), f(&[1.0, 1.0])]);
        assert_eq!(d_component(&s, &v(&[1.0, 0.0])).unwrap(), 2.0);
        let iv = value_interval(&s, &v(&[1.0, 0.0]), &v(&[0.0, 1.0])).unwrap();
        assert_eq!(iv, Interval { lo: -1.0, hi: 1.0 });
    }

    #[test]
    fn linf_edge_midpoint_is_smooth() {
        let s = ComponentSpace::linf(2).unwrap();
        for x in [[1.0, 0.0], [1.0, 0.5]] {
            let j = support_set(&s, &v(&x)).unwrap();
            assert_eq!(j.extremes(), &[f(&[1.0, 0.0])]);
            assert_eq!(d_component(&s, &v(&x)).unwrap(), 0.0);
        }
        let iv = value_interval(&s, &v(&[1.0, 0.0]), &v(&[1.0, 0.0])).unwrap();
        assert_eq!(iv, Interval::point(1.0));
    }

    #[test]
    fn linf_vertex_diameter_is_two() {
        let s = ComponentSpace::linf(2).unwrap();
        let j = support_set(&s, &v(&[1.0, -1.0])).unwrap();
        assert_eq!(j.extremes(), &[f(&[0.0, -1.0]), f(&[1.0, 0.0])]);
        assert_eq!(cal_d_component(&s), 2.0);
    }

    #[test]
    fn lr_support_identities() {
        let s = ComponentSpace::lr(2, 3.0).unwrap();
        let x = v(&[1.0, 1.0]);
        let j = support_set(&s, &x).unwrap();
        let g = j.canonical();
        assert!(j.is_singleton());
        // g_i = 2^{-2/3} for v = (1,1), r = 3.
        assert!((g.coords()[0] - 2f64.powf(-2.0 / 3.0)).abs() < 1e-15);
        assert!((g.apply(&x) - s.norm(&x).unwrap()).abs() < 1e-10);
        assert!((s.dual_norm(g).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn one_dimensional_spaces_are_smooth() {
        for s in [
            ComponentSpace::l1(1).unwrap(),
            ComponentSpace::linf(1).unwrap(),
            ComponentSpace::euclidean(1).unwrap(),
        ] {
            assert_eq!(cal_d_component(&s), 0.0);
            assert_eq!(s.dual_ball_extremes().unwrap().len(), 2);
        }
    }

    #[test]
    fn smooth_dual_balls_are_not_enumerable() {
        let s = ComponentSpace::lr(3, 1.5).unwrap();
        assert!(matches!(s.dual_ball_extremes(), Err(Error::NotEnumerable(_))));
        assert_eq!(cal_d_component(&s), 0.0);
    }

    #[test]
    fn extremal_breaks_ties_lexicographically() {
        let s = ComponentSpace::l1(2).unwrap();
        let j = support_set(&s, &v(&[1.0, 0.0])).unwrap();
        assert_eq!(j.extremal(&v(&[1.0, 0.0]), true), &f(&[1.0, -1.0]));
        assert_eq!(j.extremal(&v(&[0.0, 1.0]), true), &f(&[1.0, 1.0]));
        assert_eq!(j.extremal(&v(&[0.0, 1.0]), false), &f(&[1.0, -1.0]));
    }
}
