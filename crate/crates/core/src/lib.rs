//! Geometry of `ℓ_p`-direct sums of finite-dimensional real normed spaces.
//!
//! The crate computes, for finitely supported elements of `⊕_p X_n`
//! (`1 ≤ p < ∞`) and of the `c_0`-sum `⊕_0 X_n`:
//!
//! - norms, dual spaces and the dual pairing,
//! - the support-functional set `J(x)` and its extreme points,
//! - the smoothness diameter `D(x) = diam J(x)` and `𝒟(X) = sup D(x)`,
//! - Birkhoff-James orthogonality, semi-inner products, and pointwise
//!   left/right symmetry of orthogonality.
//!
//! Every closed-form route has an independent brute-force counterpart in
//! [`oracles`] so the two can be compared instance by instance.
//!
//! Component spaces ([`ComponentSpace`]) are Euclidean, `ℓ_r`, `ℓ_1`,
//! `ℓ_∞` or a centrally symmetric polygon in the plane. Scalars are real.

pub mod component;
pub mod dgap;
mod error;
mod grid;
pub mod interval;
pub mod oracles;
pub mod orthogonality;
pub mod sum;
pub mod tolerance;

pub use component::{
    cal_d_component, d_component, hexagon_family, polygon_family, support_set, value_interval,
    ComponentFunctional, ComponentKind, ComponentSpace, ComponentVector, JDescription, Polygon,
};
pub use error::{Error, Result};
pub use interval::Interval;
pub use oracles::OracleConfig;
pub use orthogonality::{Side, TriBool};
pub use sum::{
    Exponent, Regime, SmoothnessReport, SumFunctional, SumJDescription, SumSpace, SumVector,
};
