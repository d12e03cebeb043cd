use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::component::{ComponentFunctional, ComponentSpace, ComponentVector};
use crate::error::{Error, Result};

/// Exponent of a direct sum.
///
/// `C0` is the `c_0`-sum with the max norm. `Infinity` only arises as the
/// dual container of an `ℓ_1`-sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    C0,
    Finite(f64),
    Infinity,
}

/// The three cases into which every characterization splits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Regime {
    /// `1 < p < ∞`.
    Lp(f64),
    L1,
    C0,
}

impl Regime {
    /// Conjugate exponent `q` as a number; `∞` for `p = 1`, `1` for `c_0`.
    pub fn q(self) -> f64 {
        match self {
            Regime::Lp(p) => p / (p - 1.0),
            Regime::L1 => f64::INFINITY,
            Regime::C0 => 1.0,
        }
    }
}

impl Exponent {
    /// `0` selects the `c_0`-sum; otherwise `p ≥ 1` (or `+∞`).
    pub fn from_p(p: f64) -> Result<Self> {
        if p == 0.0 {
            Ok(Exponent::C0)
        } else if p == f64::INFINITY {
            Ok(Exponent::Infinity)
        } else if p >= 1.0 && p.is_finite() {
            Ok(Exponent::Finite(p))
        } else {
            Err(Error::invalid_space(format!(
                "exponent must be 0 (c0-sum) or in [1, ∞), got {p}"
            )))
        }
    }

    /// Numeric value: `0` for `c_0`, `∞` for the dual container.
    pub fn value(self) -> f64 {
        match self {
            Exponent::C0 => 0.0,
            Exponent::Finite(p) => p,
            Exponent::Infinity => f64::INFINITY,
        }
    }

    /// Exponent of the dual sum. The `c_0`-sum pairs with `q = 1`.
    pub fn conjugate(self) -> Exponent {
        match self {
            Exponent::C0 | Exponent::Infinity => Exponent::Finite(1.0),
            Exponent::Finite(p) if p == 1.0 => Exponent::Infinity,
            Exponent::Finite(p) => Exponent::Finite(p / (p - 1.0)),
        }
    }

    pub fn regime(self) -> Result<Regime> {
        match self {
            Exponent::C0 => Ok(Regime::C0),
            Exponent::Finite(p) if p == 1.0 => Ok(Regime::L1),
            Exponent::Finite(p) => Ok(Regime::Lp(p)),
            Exponent::Infinity => Err(Error::invalid_argument(
                "the l_inf sum is only available as a dual container",
            )),
        }
    }

    /// Combines component norms into the sum norm.
    pub(crate) fn combine(self, values: impl IntoIterator<Item = f64>) -> f64 {
        let values: Vec<f64> = values.into_iter().collect();
        let m = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        match self {
            Exponent::C0 | Exponent::Infinity => m,
            Exponent::Finite(_) if m == 0.0 => 0.0,
            Exponent::Finite(p) if p == 1.0 => values.iter().map(|v| v.abs()).sum(),
            Exponent::Finite(p) => {
                m * values
                    .iter()
                    .map(|v| (v.abs() / m).powf(p))
                    .sum::<f64>()
                    .powf(1.0 / p)
            }
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Exponent::Infinity => s.serialize_str("inf"),
            other => s.serialize_f64(other.value()),
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        let p = match Raw::deserialize(d)? {
            Raw::Num(p) => p,
            Raw::Str(s) if s == "inf" => f64::INFINITY,
            Raw::Str(s) => {
                return Err(serde::de::Error::custom(format!(
                    "exponent must be a number or \"inf\", got {s:?}"
                )))
            }
        };
        Exponent::from_p(p).map_err(serde::de::Error::custom)
    }
}

/// Coordinate container shared by vectors and functionals.
pub trait Coords: Clone + PartialEq {
    fn coords(&self) -> &[f64];
    fn from_coords(c: Vec<f64>) -> Self;
}

impl Coords for ComponentVector {
    fn coords(&self) -> &[f64] {
        &self.0
    }
    fn from_coords(c: Vec<f64>) -> Self {
        ComponentVector(c)
    }
}

impl Coords for ComponentFunctional {
    fn coords(&self) -> &[f64] {
        &self.0
    }
    fn from_coords(c: Vec<f64>) -> Self {
        ComponentFunctional(c)
    }
}

/// Finitely supported sequence: `(index, coordinates)` pairs with strictly
/// increasing zero-based indices. Entries may hold exact zero vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Sparse<T> {
    entries: Vec<(usize, T)>,
}

/// Element of a direct sum.
pub type SumVector = Sparse<ComponentVector>;
/// Element of the dual of a direct sum.
pub type SumFunctional = Sparse<ComponentFunctional>;

impl<T: Coords> Sparse<T> {
    pub fn new(entries: Vec<(usize, T)>) -> Result<Self> {
        for w in entries.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::UnorderedEntries {
                    previous: w[0].0,
                    next: w[1].0,
                });
            }
        }
        Ok(Self { entries })
    }

    /// Builds from `(index, coords)` pairs.
    pub fn from_pairs<I, C>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, C)>,
        C: Into<Vec<f64>>,
    {
        Self::new(
            pairs
                .into_iter()
                .map(|(i, c)| (i, T::from_coords(c.into())))
                .collect(),
        )
    }

    pub fn empty() -> Self {
        Self {
            entries: Vec::new(),
        }
    }

    pub fn single(index: usize, value: T) -> Self {
        Self {
            entries: vec![(index, value)],
        }
    }

    pub fn entries(&self) -> &[(usize, T)] {
        &self.entries
    }

    pub fn get(&self, index: usize) -> Option<&T> {
        self.entries
            .binary_search_by_key(&index, |(i, _)| *i)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn is_zero(&self) -> bool {
        self.entries
            .iter()
            .all(|(_, t)| t.coords().iter().all(|&c| c == 0.0))
    }

    /// Indices whose entry is not the zero vector.
    pub fn support(&self) -> Vec<usize> {
        self.entries
            .iter()
            .filter(|(_, t)| t.coords().iter().any(|&c| c != 0.0))
            .map(|(i, _)| *i)
            .collect()
    }

    pub fn scaled(&self, a: f64) -> Self {
        Self {
            entries: self
                .entries
                .iter()
                .map(|(i, t)| (*i, T::from_coords(t.coords().iter().map(|c| a * c).collect())))
                .collect(),
        }
    }

    /// `self + a·other`, merging supports.
    pub fn axpy(&self, a: f64, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() || j < other.entries.len() {
            let li = self.entries.get(i).map(|e| e.0);
            let lj = other.entries.get(j).map(|e| e.0);
            match (li, lj) {
                (Some(p), Some(q)) if p == q => {
                    let c = self.entries[i]
                        .1
                        .coords()
                        .iter()
                        .zip(other.entries[j].1.coords())
                        .map(|(s, o)| s + a * o)
                        .collect();
                    out.push((p, T::from_coords(c)));
                    i += 1;
                    j += 1;
                }
                (Some(p), Some(q)) if p < q => {
                    out.push(self.entries[i].clone());
                    i += 1;
                }
                (Some(p), None) => {
                    out.push((p, self.entries[i].1.clone()));
                    i += 1;
                }
                (_, Some(q)) => {
                    let c = other.entries[j].1.coords().iter().map(|o| a * o).collect();
                    out.push((q, T::from_coords(c)));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Self { entries: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.axpy(1.0, other)
    }

    /// First nonzero coordinate in component-then-coordinate order.
    pub fn first_nonzero(&self) -> Option<f64> {
        self.entries
            .iter()
            .flat_map(|(_, t)| t.coords().iter().copied())
            .find(|&c| c != 0.0)
    }
}

impl SumFunctional {
    /// `f(x) = Σ f_n(x_n)` over common indices.
    pub fn apply(&self, x: &SumVector) -> f64 {
        let mut total = 0.0;
        let (mut i, mut j) = (0, 0);
        let (fe, xe) = (&self.entries, &x.entries);
        while i < fe.len() && j < xe.len() {
            match fe[i].0.cmp(&xe[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    total += fe[i].1.apply(&xe[j].1);
                    i += 1;
                    j += 1;
                }
            }
        }
        total
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    index: usize,
    coords: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSparse {
    entries: Vec<RawEntry>,
}

/// JSON: `{"entries": [{"index": 1, "coords": [...]}, ...]}` with one-based indices.
impl<T: Coords> Serialize for Sparse<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawSparse {
            entries: self
                .entries
                .iter()
                .map(|(i, t)| RawEntry {
                    index: i + 1,
                    coords: t.coords().to_vec(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de, T: Coords> Deserialize<'de> for Sparse<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawSparse::deserialize(d)?;
        let mut entries = Vec::with_capacity(raw.entries.len());
        for e in raw.entries {
            if e.index == 0 {
                return Err(serde::de::Error::custom("entry indices are one-based"));
            }
            entries.push((e.index - 1, T::from_coords(e.coords)));
        }
        Sparse::new(entries).map_err(serde::de::Error::custom)
    }
}

/// A direct sum `⊕_p X_n` over a declared, finite list of components.
///
/// Vectors are finitely supported. A declared component without an entry in
/// a vector is a zero coordinate of that vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSumSpace", into = "RawSumSpace")]
pub struct SumSpace {
    exponent: Exponent,
    components: Vec<ComponentSpace>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSumSpace {
    p: Exponent,
    components: Vec<ComponentSpace>,
}

impl TryFrom<RawSumSpace> for SumSpace {
    type Error = Error;
    fn try_from(raw: RawSumSpace) -> Result<Self> {
        SumSpace::with_exponent(raw.p, raw.components)
    }
}

impl From<SumSpace> for RawSumSpace {
    fn from(s: SumSpace) -> Self {
        RawSumSpace {
            p: s.exponent,
            components: s.components,
        }
    }
}

impl SumSpace {
    /// `p = 0` gives the `c_0`-sum; otherwise `p ∈ [1, ∞)`.
    pub fn new(p: f64, components: Vec<ComponentSpace>) -> Result<Self> {
        Self::with_exponent(Exponent::from_p(p)?, components)
    }

    pub fn with_exponent(exponent: Exponent, components: Vec<ComponentSpace>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::invalid_space("a sum needs at least one component"));
        }
        if let Exponent::Finite(p) = exponent {
            Exponent::from_p(p)?;
        }
        Ok(Self {
            exponent,
            components,
        })
    }

    /// A component space viewed as a one-term sum. Any exponent gives the
    /// same norm and support sets; `p = 2` is used.
    pub fn single(component: ComponentSpace) -> Self {
        Self {
            exponent: Exponent::Finite(2.0),
            components: vec![component],
        }
    }

    pub fn exponent(&self) -> Exponent {
        self.exponent
    }

    pub fn regime(&self) -> Result<Regime> {
        self.exponent.regime()
    }

    pub fn components(&self) -> &[ComponentSpace] {
        &self.components
    }

    pub fn component(&self, index: usize) -> &ComponentSpace {
        &self.components[index]
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    fn check_shape<T: Coords>(&self, x: &Sparse<T>) -> Result<()> {
        for (i, t) in x.entries() {
            let comp = self
                .components
                .get(*i)
                .ok_or(Error::IndexOutOfRange {
                    index: *i,
                    len: self.components.len(),
                })?;
            if t.coords().len() != comp.dim() {
                return Err(Error::DimensionMismatch {
                    expected: comp.dim(),
                    found: t.coords().len(),
                });
            }
            if t.coords().iter().any(|c| !c.is_finite()) {
                return Err(Error::invalid_argument("coordinates must be finite"));
            }
        }
        Ok(())
    }

    pub fn check_vector(&self, x: &SumVector) -> Result<()> {
        self.check_shape(x)
    }

    pub fn check_functional(&self, f: &SumFunctional) -> Result<()> {
        self.check_shape(f)
    }

    /// Component norms `‖x_n‖`, aligned with `x.entries()`.
    pub fn component_norms(&self, x: &SumVector) -> Result<Vec<f64>> {
        self.check_vector(x)?;
        Ok(x.entries()
            .iter()
            .map(|(i, v)| self.components[*i].norm_unchecked(v.coords()))
            .collect())
    }

    /// `(Σ‖x_n‖^p)^{1/p}`, or `max ‖x_n‖` for the `c_0`-sum.
    pub fn norm(&self, x: &SumVector) -> Result<f64> {
        Ok(self.exponent.combine(self.component_norms(x)?))
    }

    /// Dual norm `‖f‖_q` built from the component dual norms.
    pub fn dual_norm(&self, f: &SumFunctional) -> Result<f64> {
        self.check_functional(f)?;
        Ok(self.exponent.conjugate().combine(
            f.entries()
                .iter()
                .map(|(i, g)| self.components[*i].dual_norm_unchecked(g.coords())),
        ))
    }

    /// `⊕_q X_n^*`, which the pairing `f(x) = Σ f_n(x_n)` identifies with the dual.
    pub fn dual_space(&self) -> SumSpace {
        SumSpace {
            exponent: self.exponent.conjugate(),
            components: self.components.iter().map(|c| c.dual_space()).collect(),
        }
    }

    /// Validated pairing.
    pub fn apply(&self, f: &SumFunctional, x: &SumVector) -> Result<f64> {
        self.check_functional(f)?;
        self.check_vector(x)?;
        Ok(f.apply(x))
    }

    pub(crate) fn nonzero_norm(&self, x: &SumVector) -> Result<f64> {
        let n = self.norm(x)?;
        if n == 0.0 {
            return Err(Error::degenerate("the operation needs a nonzero vector"));
        }
        Ok(n)
    }
}
