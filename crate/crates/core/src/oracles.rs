//! Brute-force reference computations.
//!
//! Nothing here calls the closed-form support-set, diameter or
//! orthogonality code. The oracles see a space only through its norm, its
//! dual norm and the list of dual-ball vertices.

use serde::{Deserialize, Serialize};

use crate::component::{ComponentFunctional, ComponentKind, ComponentSpace, ComponentVector};
use crate::error::{Error, Result};
use crate::grid::halton_cube;
use crate::sum::{Exponent, SumFunctional, SumSpace, SumVector};
use crate::tolerance::{GEOM_TOL, GOLDEN_SECTION_WIDTH, GRID_DIRECTIONS};

/// Oracle knobs. All fields must be positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OracleConfig {
    /// Final bracket width of golden-section search, relative to `1 + ‖x‖`.
    pub golden_section_width: f64,
    /// Directions per entry in falsification grids.
    pub grid_directions: usize,
    /// Largest number of extreme functionals the diameter pair scan accepts.
    pub pair_scan_limit: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            golden_section_width: GOLDEN_SECTION_WIDTH,
            grid_directions: GRID_DIRECTIONS,
            pair_scan_limit: 4096,
        }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.golden_section_width > 0.0 && self.golden_section_width.is_finite())
            || self.grid_directions == 0
            || self.pair_scan_limit == 0
        {
            return Err(Error::invalid_argument(
                "oracle configuration values must be strictly positive",
            ));
        }
        Ok(())
    }
}

/// Minimum of `λ ↦ ‖x + λy‖`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MinNorm {
    pub min: f64,
    pub argmin: f64,
}

const MAX_GOLDEN_STEPS: usize = 400;

/// Minimizes `λ ↦ ‖x + λy‖` by golden-section search.
///
/// Outside `[−2‖x‖/‖y‖, 2‖x‖/‖y‖]` the value exceeds `|λ|‖y‖ − ‖x‖ > ‖x‖`,
/// so the bracket holds every minimizer. The endpoints and `λ = 0` are
/// evaluated too, which makes `min ≤ ‖x‖`.
pub fn oracle_min_norm(
    space: &SumSpace,
    x: &SumVector,
    y: &SumVector,
    config: &OracleConfig,
) -> Result<MinNorm> {
    config.validate()?;
    let nx = space.norm(x)?;
    let ny = space.norm(y)?;
    if ny == 0.0 {
        return Err(Error::degenerate("the direction y must be nonzero"));
    }
    if nx == 0.0 {
        return Ok(MinNorm { min: 0.0, argmin: 0.0 });
    }
    // Search over s = λ‖y‖ so the bracket scales with ‖x‖ alone.
    let unit = y.scaled(1.0 / ny);
    let f = |s: f64| space.exponent().combine(norms_of(space, &x.axpy(s, &unit)));
    let bound = 2.0 * nx;
    let width = config.golden_section_width * (1.0 + nx);
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (-bound, bound);
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    let mut steps = 0;
    while b - a > width && steps < MAX_GOLDEN_STEPS {
        steps += 1;
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = f(d);
        }
    }
    let mid = 0.5 * (a + b);
    let mut best = MinNorm { min: nx, argmin: 0.0 };
    for s in [mid, c, d, a, b] {
        let v = f(s);
        if v < best.min {
            best = MinNorm { min: v, argmin: s / ny };
        }
    }
    Ok(best)
}

fn norms_of(space: &SumSpace, v: &SumVector) -> Vec<f64> {
    v.entries()
        .iter()
        .map(|(i, c)| space.component(*i).norm(c).expect("shape checked"))
        .collect()
}

/// `x ⊥_B y` decided numerically: `min_λ ‖x + λy‖ ≥ ‖x‖ − tol`.
pub fn bj_orthogonal_oracle(
    space: &SumSpace,
    x: &SumVector,
    y: &SumVector,
    tol: f64,
    config: &OracleConfig,
) -> Result<bool> {
    if !(tol > 0.0) {
        return Err(Error::invalid_argument("tol must be positive"));
    }
    let nx = space.norm(x)?;
    space.check_vector(y)?;
    if nx == 0.0 || space.norm(y)? == 0.0 {
        return Ok(true);
    }
    Ok(oracle_min_norm(space, x, y, config)?.min >= nx - tol)
}

/// Unit functionals supporting `v` in a component, found without the
/// closed forms: active dual-ball vertices for polyhedral balls, the
/// normalized numerical gradient of the norm for smooth ones.
fn component_face(space: &ComponentSpace, v: &ComponentVector) -> Result<Vec<ComponentFunctional>> {
    let nv = space.norm(v)?;
    let smooth = matches!(space.kind(), ComponentKind::Euclidean | ComponentKind::Lr { .. });
    if smooth && space.dim() > 1 {
        let h = 1e-6 * nv;
        let grad: Vec<f64> = (0..space.dim())
            .map(|k| {
                let e = ComponentVector::basis(space.dim(), k);
                let plus = space.norm(&v.axpy(h, &e)).expect("shape");
                let minus = space.norm(&v.axpy(-h, &e)).expect("shape");
                (plus - minus) / (2.0 * h)
            })
            .collect();
        let g = ComponentFunctional(grad);
        let gn = space.dual_norm(&g)?;
        return Ok(vec![g.scaled(1.0 / gn)]);
    }
    let face: Vec<ComponentFunctional> = space
        .dual_ball_extremes()?
        .into_iter()
        .filter(|g| g.apply(v) >= nv * (1.0 - GEOM_TOL))
        .collect();
    if face.is_empty() {
        return Err(Error::Construction("no active dual vertex".into()));
    }
    Ok(face)
}

/// Candidates at a declared index outside the support for `p = 1`:
/// `±u` for one unit dual functional `u`.
fn free_pair(space: &ComponentSpace) -> Vec<ComponentFunctional> {
    let e = ComponentFunctional::basis(space.dim(), 0);
    let u = e.scaled(1.0 / space.dual_norm(&e).expect("shape"));
    vec![u.clone(), u.scaled(-1.0)]
}

/// `diam J(x)` by a pair scan over independently enumerated extreme points.
///
/// For `p = 1` each undeclared-in-support index contributes `±u`, which
/// already realizes the largest possible distance `2` there.
pub fn oracle_diameter(space: &SumSpace, x: &SumVector, config: &OracleConfig) -> Result<f64> {
    config.validate()?;
    let norms = norms_of(space, x);
    space.check_vector(x)?;
    let total = space.exponent().combine(norms.iter().copied());
    if total == 0.0 {
        return Err(Error::degenerate("diameter needs a nonzero vector"));
    }
    let points: Vec<SumFunctional> = match space.exponent() {
        Exponent::Infinity => return Err(Error::invalid_argument("l_inf sum is a dual container")),
        Exponent::C0 => {
            let mut pts = Vec::new();
            for ((i, v), nv) in x.entries().iter().zip(&norms) {
                if *nv >= total * (1.0 - GEOM_TOL) {
                    for g in component_face(space.component(*i), v)? {
                        pts.push(SumFunctional::single(*i, g));
                    }
                }
            }
            pts
        }
        Exponent::Finite(p) => {
            let mut factors: Vec<(usize, Vec<ComponentFunctional>)> = Vec::new();
            for ((i, v), nv) in x.entries().iter().zip(&norms) {
                if *nv > 0.0 {
                    let w = (nv / total).powf(p - 1.0);
                    let face = component_face(space.component(*i), v)?;
                    factors.push((*i, face.into_iter().map(|g| g.scaled(w)).collect()));
                }
            }
            if p == 1.0 {
                let supported: Vec<usize> = factors.iter().map(|f| f.0).collect();
                for i in 0..space.len() {
                    if !supported.contains(&i) {
                        factors.push((i, free_pair(space.component(i))));
                    }
                }
                factors.sort_by_key(|f| f.0);
            }
            let count = factors
                .iter()
                .fold(1usize, |n, f| n.saturating_mul(f.1.len()));
            if count > config.pair_scan_limit {
                return Err(Error::not_enumerable(format!(
                    "{count} extreme points exceed the pair scan limit {}",
                    config.pair_scan_limit
                )));
            }
            let mut pts: Vec<Vec<(usize, ComponentFunctional)>> = vec![Vec::new()];
            for (i, choices) in &factors {
                let mut next = Vec::with_capacity(pts.len() * choices.len());
                for prefix in &pts {
                    for g in choices {
                        let mut e = prefix.clone();
                        e.push((*i, g.clone()));
                        next.push(e);
                    }
                }
                pts = next;
            }
            pts.into_iter()
                .map(|e| SumFunctional::new(e).expect("ordered"))
                .collect()
        }
    };
    if points.len() > config.pair_scan_limit {
        return Err(Error::not_enumerable("too many extreme points"));
    }
    let mut best = 0.0_f64;
    for (k, a) in points.iter().enumerate() {
        for b in &points[k + 1..] {
            best = best.max(space.dual_norm(&a.axpy(-1.0, b))?);
        }
    }
    Ok(best)
}

/// Lower bound on `‖f‖` from `f(x)/‖x‖` over a Halton grid of `samples`
/// points on the support of `f`, plus the norming element.
pub fn oracle_dual_norm(space: &SumSpace, f: &SumFunctional, samples: usize) -> Result<f64> {
    if samples == 0 {
        return Err(Error::invalid_argument("samples must be at least 1"));
    }
    space.check_functional(f)?;
    if f.is_zero() {
        return Ok(0.0);
    }
    let dims: Vec<(usize, usize)> = f
        .entries()
        .iter()
        .map(|(i, g)| (*i, g.dim()))
        .collect();
    let total_dim: usize = dims.iter().map(|d| d.1).sum();
    let ratio = |x: &SumVector| -> f64 {
        let n = space.exponent().combine(norms_of(space, x));
        if n == 0.0 {
            f64::NEG_INFINITY
        } else {
            f.apply(x) / n
        }
    };
    let mut best = f64::NEG_INFINITY;
    for k in 0..samples {
        let point = halton_cube(k as u64, total_dim);
        let mut offset = 0;
        let entries = dims
            .iter()
            .map(|&(i, d)| {
                let c = point[offset..offset + d].to_vec();
                offset += d;
                (i, ComponentVector(c))
            })
            .collect();
        best = best.max(ratio(&SumVector::new(entries)?));
    }
    if space.regime().is_ok() {
        let y = space.norming_element(f, 1e-8)?;
        best = best.max(ratio(&y));
    }
    Ok(best.max(0.0))
}
