//! `ℓ_p`- and `c_0`-direct sums of component spaces.

mod diameter;
mod norming;
mod space;
mod support;

pub use diameter::SmoothnessReport;
pub use space::{Coords, Exponent, Regime, Sparse, SumFunctional, SumSpace, SumVector};
pub use support::{SumJDescription, SupportPart};
