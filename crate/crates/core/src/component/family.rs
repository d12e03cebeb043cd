//! Planar polygon spaces with prescribed `𝒟`.
//!
//! The family is the symmetric hexagon
//!
//! ```text
//! H(t) = conv{ ±(1, 0), ±(t, h), ±(-t, h) },   h = √3/2,   1/2 ≤ t < 1.
//! ```
//!
//! `H(1/2)` is the regular hexagon with `𝒟 = 1`. As `t → 1` the vertex
//! `(1, 0)` flattens into the edge of a rectangle and `𝒟 → 2`. Working out
//! the dual faces at the three vertex classes gives
//! `𝒟(H(t)) = max{2(1-t), 1, 2t} = 2t` on the bracket, so the target
//! `2 - 1/n` is reached at `t = 1 - 1/(2n)`. [`polygon_family`] does not
//! use that closed form: it bisects on the generic [`cal_d_component`].

use super::space::ComponentSpace;
use super::support::cal_d_component;
use crate::error::{Error, Result};

const HEIGHT: f64 = 0.866_025_403_784_438_6; // √3/2

/// Lower end of the parameter bracket (regular hexagon).
pub const FAMILY_T_MIN: f64 = 0.5;
/// Upper end of the parameter bracket; the hexagon degenerates at `t = 1`.
pub const FAMILY_T_MAX: f64 = 1.0 - 1e-9;
/// `polygon_family` stops once `|𝒟 - target|` is below this.
pub const FAMILY_BISECTION_TOL: f64 = 1e-12;
/// Acceptance threshold for the constructed space.
pub const FAMILY_TARGET_TOL: f64 = 1e-6;

/// The hexagon `H(t)` as a polygon space.
pub fn hexagon_family(t: f64) -> Result<ComponentSpace> {
    if !(FAMILY_T_MIN..1.0).contains(&t) {
        return Err(Error::invalid_argument(format!(
            "hexagon parameter must lie in [1/2, 1), got {t}"
        )));
    }
    ComponentSpace::polygon(vec![
        [1.0, 0.0],
        [t, HEIGHT],
        [-t, HEIGHT],
        [-1.0, 0.0],
        [-t, -HEIGHT],
        [t, -HEIGHT],
    ])
}

/// A two-dimensional polygon space `X_n` with `𝒟(X_n) = 2 - 1/n` (to 1e-6).
pub fn polygon_family(n: u64) -> Result<ComponentSpace> {
    if n == 0 {
        return Err(Error::invalid_argument("polygon_family needs n >= 1"));
    }
    let target = 2.0 - 1.0 / n as f64;
    let gap = |t: f64| -> Result<f64> { Ok(cal_d_component(&hexagon_family(t)?) - target) };

    let (mut lo, mut hi) = (FAMILY_T_MIN, FAMILY_T_MAX);
    let (g_lo, g_hi) = (gap(lo)?, gap(hi)?);
    if g_lo.abs() <= FAMILY_BISECTION_TOL {
        return hexagon_family(lo);
    }
    if g_lo > 0.0 || g_hi < 0.0 {
        return Err(Error::Construction(format!(
            "target 𝒟 = {target} outside the family bracket [{}, {}]",
            g_lo + target,
            g_hi + target
        )));
    }
    let mut best = (hi, g_hi.abs());
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let g = gap(mid)?;
        if g.abs() < best.1 {
            best = (mid, g.abs());
        }
        if g.abs() <= FAMILY_BISECTION_TOL || hi - lo <= f64::EPSILON {
            break;
        }
        if g < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if best.1 > FAMILY_TARGET_TOL {
        return Err(Error::Construction(format!(
            "bisection ended {} away from 𝒟 = {target}",
            best.1
        )));
    }
    hexagon_family(best.0)
}
