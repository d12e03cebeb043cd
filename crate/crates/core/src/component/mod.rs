//! Finite-dimensional real normed spaces: the components of a direct sum.

mod family;
mod polygon;
mod space;
mod support;

pub use family::{
    hexagon_family, polygon_family, FAMILY_BISECTION_TOL, FAMILY_TARGET_TOL, FAMILY_T_MAX,
    FAMILY_T_MIN,
};
pub use polygon::Polygon;
pub use space::{
    conjugate, ComponentFunctional, ComponentKind, ComponentSpace, ComponentVector,
    SpaceDescriptor,
};
pub(crate) use support::dual_diameter;
pub use support::{
    cal_d_component, d_component, is_component_support, support_set, value_interval, JDescription,
};
