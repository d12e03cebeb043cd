use serde::{Deserialize, Serialize};

use super::polygon::{dot2, Polygon};
use crate::error::{Error, Result};
use crate::tolerance::MAX_FREE_COORDS;

/// A vector of a component space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ComponentVector(pub Vec<f64>);

/// A linear functional on a component space, acting by the coordinate pairing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ComponentFunctional(pub Vec<f64>);

macro_rules! coords_impl {
    ($ty:ident) => {
        impl $ty {
            pub fn new(coords: Vec<f64>) -> Self {
                Self(coords)
            }

            pub fn zeros(dim: usize) -> Self {
                Self(vec![0.0; dim])
            }

            /// Standard basis vector `e_i`.
            pub fn basis(dim: usize, i: usize) -> Self {
                let mut c = vec![0.0; dim];
                c[i] = 1.0;
                Self(c)
            }

            pub fn coords(&self) -> &[f64] {
                &self.0
            }

            pub fn dim(&self) -> usize {
                self.0.len()
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(|&c| c == 0.0)
            }

            pub fn scaled(&self, a: f64) -> Self {
                Self(self.0.iter().map(|c| a * c).collect())
            }

            /// `self + a·other`.
            pub fn axpy(&self, a: f64, other: &Self) -> Self {
                Self(
                    self.0
                        .iter()
                        .zip(&other.0)
                        .map(|(s, o)| s + a * o)
                        .collect(),
                )
            }

            pub fn sub(&self, other: &Self) -> Self {
                self.axpy(-1.0, other)
            }
        }

        impl From<Vec<f64>> for $ty {
            fn from(v: Vec<f64>) -> Self {
                Self(v)
            }
        }
    };
}

coords_impl!(ComponentVector);
coords_impl!(ComponentFunctional);

impl ComponentFunctional {
    /// `f(v)` by the coordinate pairing.
    pub fn apply(&self, v: &ComponentVector) -> f64 {
        self.0.iter().zip(&v.0).map(|(a, b)| a * b).sum()
    }

    /// Total lexicographic order on coordinates, used to make extreme-point
    /// lists deterministic.
    pub(crate) fn lex_cmp(&self, other: &Self) -> std::cmp::Ordering {
        for (a, b) in self.0.iter().zip(&other.0) {
            match a.total_cmp(b) {
                std::cmp::Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ComponentKind {
    Euclidean,
    /// `ℓ_r` with `1 < r < ∞`.
    Lr {
        r: f64,
    },
    L1,
    Linf,
    /// Planar norm whose unit ball is the polygon.
    Polygon(Polygon),
}

/// A finite-dimensional real normed space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SpaceDescriptor", into = "SpaceDescriptor")]
pub struct ComponentSpace {
    kind: ComponentKind,
    dim: usize,
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 {
        Err(Error::invalid_space("dimension must be positive"))
    } else {
        Ok(())
    }
}

/// `(Σ|c_i|^r)^{1/r}`, rescaled by the largest coordinate to avoid overflow.
pub(crate) fn r_norm(c: &[f64], r: f64) -> f64 {
    let m = c.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    if m == 0.0 {
        return 0.0;
    }
    m * c.iter().map(|x| (x.abs() / m).powf(r)).sum::<f64>().powf(1.0 / r)
}

pub(crate) fn l2_norm(c: &[f64]) -> f64 {
    r_norm(c, 2.0)
}

/// Conjugate exponent `r/(r-1)` of `r ∈ (1, ∞)`.
pub fn conjugate(r: f64) -> f64 {
    r / (r - 1.0)
}

impl ComponentSpace {
    pub fn euclidean(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            kind: ComponentKind::Euclidean,
            dim,
        })
    }

    pub fn lr(dim: usize, r: f64) -> Result<Self> {
        check_dim(dim)?;
        if !(r > 1.0 && r.is_finite()) {
            return Err(Error::invalid_space(format!(
                "lr requires 1 < r < ∞, got {r} (use l1 or linf for the endpoints)"
            )));
        }
        Ok(Self {
            kind: ComponentKind::Lr { r },
            dim,
        })
    }

    pub fn l1(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            kind: ComponentKind::L1,
            dim,
        })
    }

    pub fn linf(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            kind: ComponentKind::Linf,
            dim,
        })
    }

    pub fn polygon(vertices: Vec<[f64; 2]>) -> Result<Self> {
        Ok(Self {
            kind: ComponentKind::Polygon(Polygon::new(vertices)?),
            dim: 2,
        })
    }

    pub fn kind(&self) -> &ComponentKind {
        &self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Whether the norm comes from an inner product.
    pub fn is_inner_product(&self) -> bool {
        match self.kind {
            ComponentKind::Euclidean => true,
            ComponentKind::Lr { r } => r == 2.0 || self.dim == 1,
            _ => self.dim == 1,
        }
    }

    /// Whether the unit ball is a polytope (finitely many extreme support functionals).
    pub fn is_polyhedral(&self) -> bool {
        matches!(
            self.kind,
            ComponentKind::L1 | ComponentKind::Linf | ComponentKind::Polygon(_)
        )
    }

    pub(crate) fn check_vector(&self, v: &ComponentVector) -> Result<()> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.dim(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_functional(&self, f: &ComponentFunctional) -> Result<()> {
        if f.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: f.dim(),
            });
        }
        Ok(())
    }

    pub fn norm(&self, v: &ComponentVector) -> Result<f64> {
        self.check_vector(v)?;
        Ok(self.norm_unchecked(v.coords()))
    }

    pub(crate) fn norm_unchecked(&self, c: &[f64]) -> f64 {
        match &self.kind {
            ComponentKind::Euclidean => l2_norm(c),
            ComponentKind::Lr { r } => r_norm(c, *r),
            ComponentKind::L1 => c.iter().map(|x| x.abs()).sum(),
            ComponentKind::Linf => c.iter().fold(0.0, |m, x| m.max(x.abs())),
            ComponentKind::Polygon(p) => p.gauge(c),
        }
    }

    /// Operator norm of `f`, i.e. `sup { f(v) : ‖v‖ ≤ 1 }`.
    pub fn dual_norm(&self, f: &ComponentFunctional) -> Result<f64> {
        self.check_functional(f)?;
        Ok(self.dual_norm_unchecked(f.coords()))
    }

    pub(crate) fn dual_norm_unchecked(&self, c: &[f64]) -> f64 {
        match &self.kind {
            ComponentKind::Euclidean => l2_norm(c),
            ComponentKind::Lr { r } => r_norm(c, conjugate(*r)),
            ComponentKind::L1 => c.iter().fold(0.0, |m, x| m.max(x.abs())),
            ComponentKind::Linf => c.iter().map(|x| x.abs()).sum(),
            ComponentKind::Polygon(p) => p.support(c),
        }
    }

    /// The dual space, realized on the same coordinates.
    pub fn dual_space(&self) -> Self {
        let kind = match &self.kind {
            ComponentKind::Euclidean => ComponentKind::Euclidean,
            ComponentKind::Lr { r } => ComponentKind::Lr { r: conjugate(*r) },
            ComponentKind::L1 => ComponentKind::Linf,
            ComponentKind::Linf => ComponentKind::L1,
            ComponentKind::Polygon(p) => ComponentKind::Polygon(
                p.polar()
                    .expect("polar of a valid symmetric polygon is a valid polygon"),
            ),
        };
        Self {
            kind,
            dim: self.dim,
        }
    }

    /// A unit vector `v` with `f(v) = ‖f‖`.
    ///
    /// Exact for every kind: the supremum defining the dual norm is
    /// attained in finite dimension and each kind has a closed form for the
    /// maximizer.
    pub fn norming_vector(&self, f: &ComponentFunctional) -> Result<ComponentVector> {
        self.check_functional(f)?;
        let fnorm = self.dual_norm_unchecked(f.coords());
        if fnorm == 0.0 {
            return Err(Error::degenerate("zero functional has no norming vector"));
        }
        let c = f.coords();
        let v = match &self.kind {
            ComponentKind::Euclidean => c.iter().map(|x| x / fnorm).collect(),
            ComponentKind::Lr { r } => {
                let s = conjugate(*r);
                c.iter()
                    .map(|x| x.signum() * (x.abs() / fnorm).powf(s - 1.0))
                    .map(|x| if x.is_nan() { 0.0 } else { x })
                    .collect()
            }
            ComponentKind::L1 => {
                let (i, _) = c
                    .iter()
                    .enumerate()
                    .fold((0, -1.0), |(bi, bm), (i, x)| {
                        if x.abs() > bm {
                            (i, x.abs())
                        } else {
                            (bi, bm)
                        }
                    });
                let mut v = vec![0.0; self.dim];
                v[i] = if c[i] < 0.0 { -1.0 } else { 1.0 };
                v
            }
            ComponentKind::Linf => c
                .iter()
                .map(|x| if *x < 0.0 { -1.0 } else { 1.0 })
                .collect(),
            ComponentKind::Polygon(p) => {
                let best = p
                    .vertices()
                    .iter()
                    .copied()
                    .fold(None::<([f64; 2], f64)>, |acc, v| {
                        let val = dot2(v, c);
                        match acc {
                            Some((_, bv)) if bv >= val => acc,
                            _ => Some((v, val)),
                        }
                    })
                    .expect("polygon has vertices");
                best.0.to_vec()
            }
        };
        let v = ComponentVector(v);
        // Lr rounding leaves the norm within a few ulps of one.
        let n = self.norm_unchecked(v.coords());
        Ok(if (n - 1.0).abs() > 0.0 { v.scaled(1.0 / n) } else { v })
    }

    /// Extreme points of the dual unit ball, when there are finitely many.
    ///
    /// For a one-dimensional space the dual sphere is `{±1/‖e_1‖}`.
    pub fn dual_ball_extremes(&self) -> Result<Vec<ComponentFunctional>> {
        let d = self.dim;
        let mut out = match &self.kind {
            _ if d == 1 => {
                let s = 1.0 / self.dual_norm_unchecked(&[1.0]);
                vec![ComponentFunctional(vec![s]), ComponentFunctional(vec![-s])]
            }
            ComponentKind::Euclidean | ComponentKind::Lr { .. } => {
                return Err(Error::not_enumerable(
                    "the dual unit sphere of a smooth space of dimension >= 2 consists of extreme points",
                ))
            }
            ComponentKind::L1 => {
                if d > MAX_FREE_COORDS {
                    return Err(Error::not_enumerable(format!(
                        "l_inf cube in dimension {d} has too many vertices"
                    )));
                }
                (0..1usize << d)
                    .map(|mask| {
                        ComponentFunctional(
                            (0..d)
                                .map(|i| if mask >> i & 1 == 1 { -1.0 } else { 1.0 })
                                .collect(),
                        )
                    })
                    .collect()
            }
            ComponentKind::Linf => (0..d)
                .flat_map(|i| {
                    [1.0, -1.0].map(|s| ComponentFunctional::basis(d, i).scaled(s))
                })
                .collect(),
            ComponentKind::Polygon(p) => p
                .polar_vertices()
                .iter()
                .map(|g| ComponentFunctional(g.to_vec()))
                .collect(),
        };
        out.sort_by(|a, b| a.lex_cmp(b));
        Ok(out)
    }
}

/// JSON shape of a component space:
/// `{"kind": "euclidean"|"lr"|"l1"|"linf"|"polygon", "dim": int, "r": number?, "vertices": [[x,y],...]?}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDescriptor {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<[f64; 2]>>,
}

impl TryFrom<SpaceDescriptor> for ComponentSpace {
    type Error = Error;

    fn try_from(d: SpaceDescriptor) -> Result<Self> {
        let (has_r, has_vertices) = (d.r.is_some(), d.vertices.is_some());
        let need_dim = || {
            d.dim
                .ok_or_else(|| Error::invalid_space(format!("kind {} requires \"dim\"", d.kind)))
        };
        let space = match d.kind.as_str() {
            "euclidean" => ComponentSpace::euclidean(need_dim()?)?,
            "lr" => {
                let r = d
                    .r
                    .ok_or_else(|| Error::invalid_space("kind lr requires \"r\""))?;
                ComponentSpace::lr(need_dim()?, r)?
            }
            "l1" => ComponentSpace::l1(need_dim()?)?,
            "linf" => ComponentSpace::linf(need_dim()?)?,
            "polygon" => {
                if let Some(dim) = d.dim {
                    if dim != 2 {
                        return Err(Error::invalid_space("polygon spaces have dim 2"));
                    }
                }
                let vertices = d
                    .vertices
                    .ok_or_else(|| Error::invalid_space("kind polygon requires \"vertices\""))?;
                ComponentSpace::polygon(vertices)?
            }
            other => return Err(Error::invalid_space(format!("unknown kind {other:?}"))),
        };
        if has_r && !matches!(space.kind, ComponentKind::Lr { .. }) {
            return Err(Error::invalid_space("\"r\" is only valid for kind lr"));
        }
        if has_vertices && !matches!(space.kind, ComponentKind::Polygon(_)) {
            return Err(Error::invalid_space("\"vertices\" is only valid for kind polygon"));
        }
        Ok(space)
    }
}

impl From<ComponentSpace> for SpaceDescriptor {
    fn from(s: ComponentSpace) -> Self {
        let (kind, r, vertices) = match s.kind {
            ComponentKind::Euclidean => ("euclidean", None, None),
            ComponentKind::Lr { r } => ("lr", Some(r), None),
            ComponentKind::L1 => ("l1", None, None),
            ComponentKind::Linf => ("linf", None, None),
            ComponentKind::Polygon(p) => ("polygon", None, Some(p.vertices().to_vec())),
        };
        SpaceDescriptor {
            kind: kind.to_string(),
            dim: Some(s.dim),
            r,
            vertices,
        }
    }
}
