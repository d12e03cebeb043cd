//! Birkhoff-James orthogonality, semi-inner products and pointwise
//! symmetry of orthogonality in direct sums.
//!
//! Over real scalars `{f(y) : f ∈ J(x)}` is a closed interval, and the
//! convex hull of a sum of independently ranging terms is the sum of their
//! hulls. So every characterization reduces to interval arithmetic on the
//! per-component intervals `{g(y_n) : g ∈ J(x_n)}`.

mod characterization;
mod sip;
mod symmetry;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use characterization::{
    bj_orthogonal, orthogonal_completion, orthogonality_witness, rank_one_tests,
    reverse_completion, Completion, RankOneReport,
};
pub use sip::{
    canonical_unit, collinear_factor, orthogonal_sip_selectors, p_sip_commuting, sip, sip_sum,
    sip_value_interval, CanonicalSelector, ExtremalSelector, PinnedSelector, SipSelector,
};
pub use symmetry::{
    analyze_symmetry, component_p_sip_symmetric, component_symmetric, falsify_symmetry,
    symmetric_point, Falsification, Scheme, SymmetryAnalysis,
};

/// Three-valued answer for predicates without a complete decision procedure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TriBool {
    Yes,
    No,
    Unknown,
}

/// Left: `x ⊥ y ⇒ y ⊥ x` for all `y`. Right: `y ⊥ x ⇒ x ⊥ y` for all `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

impl FromStr for Side {
    type Err = crate::Error;
    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            other => Err(crate::Error::InvalidArgument(format!(
                "side must be \"left\" or \"right\", got {other:?}"
            ))),
        }
    }
}
