//! Numerical tolerances.
//!
//! There is one geometric tolerance. It decides active vertices of
//! polyhedral unit balls, ties between component norms in the `c_0`-sum,
//! membership of support functionals, and whether `0` lies in a value
//! interval. It is applied relative to the natural scale of each
//! comparison.
//!
//! The orthogonality oracle has its own absolute tolerance: it compares a
//! numerically minimized norm against `‖x‖`.

/// Relative tolerance for all geometric predicates.
pub const GEOM_TOL: f64 = 1e-9;

/// Default absolute tolerance of the brute-force orthogonality oracle.
pub const ORACLE_TOL: f64 = 1e-7;

/// Relative width to which golden-section search shrinks its bracket.
pub const GOLDEN_SECTION_WIDTH: f64 = 1e-12;

/// Number of directions in the deterministic falsification grids.
pub const GRID_DIRECTIONS: usize = 1024;

/// Upper bound on the number of extreme functionals an enumeration may build.
pub const EXTREME_LIMIT: usize = 1 << 16;

/// Free coordinates allowed when enumerating faces of the `ℓ_∞` cube.
pub(crate) const MAX_FREE_COORDS: usize = 16;
