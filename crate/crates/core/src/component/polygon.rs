//! Centrally symmetric convex polygons as unit balls of planar norms.
//!
//! A polygon is stored by its vertices in counterclockwise order together
//! with its polar vertices. Edge `(v_i, v_{i+1})` determines the polar
//! vertex `g_i` as the unique solution of `g·v_i = g·v_{i+1} = 1`. The
//! gauge of the polygon is `max_i g_i·x` and the dual norm is
//! `max_i f·v_i`.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    vertices: Vec<[f64; 2]>,
    polar: Vec<[f64; 2]>,
}

fn cross(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

fn sub(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

pub(crate) fn dot2(a: [f64; 2], b: &[f64]) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

impl Polygon {
    /// Validates the vertex list and precomputes the polar vertices.
    ///
    /// Requirements: an even number (at least four) of finite vertices in
    /// strictly convex position, counterclockwise, winding once around the
    /// origin, with `v_{i+n/2} = -v_i`.
    pub fn new(vertices: Vec<[f64; 2]>) -> Result<Self> {
        let n = vertices.len();
        if n < 4 || !n.is_multiple_of(2) {
            return Err(Error::invalid_space(format!(
                "polygon needs an even number (>= 4) of vertices, got {n}"
            )));
        }
        if vertices.iter().flatten().any(|c| !c.is_finite()) {
            return Err(Error::invalid_space("polygon vertices must be finite"));
        }
        let scale = vertices
            .iter()
            .map(|v| v[0].hypot(v[1]))
            .fold(0.0_f64, f64::max);
        let half = n / 2;
        for i in 0..half {
            let (a, b) = (vertices[i], vertices[i + half]);
            if (a[0] + b[0]).abs() > 1e-9 * scale || (a[1] + b[1]).abs() > 1e-9 * scale {
                return Err(Error::invalid_space(format!(
                    "polygon is not centrally symmetric: vertex {i} has no antipode at position {}",
                    i + half
                )));
            }
        }
        let mut turning = 0.0;
        for i in 0..n {
            let prev = vertices[(i + n - 1) % n];
            let cur = vertices[i];
            let next = vertices[(i + 1) % n];
            if cross(sub(cur, prev), sub(next, cur)) <= 0.0 {
                return Err(Error::invalid_space(format!(
                    "polygon vertex {i} is not in strictly convex counterclockwise position"
                )));
            }
            if cross(cur, next) <= 0.0 {
                return Err(Error::invalid_space(
                    "origin must lie strictly inside the polygon",
                ));
            }
            turning += cross(cur, next).atan2(cur[0] * next[0] + cur[1] * next[1]);
        }
        if (turning - std::f64::consts::TAU).abs() > 1e-6 {
            return Err(Error::invalid_space("polygon must wind exactly once"));
        }
        let polar = (0..n)
            .map(|i| {
                let a = vertices[i];
                let b = vertices[(i + 1) % n];
                let det = cross(a, b);
                [(b[1] - a[1]) / det, (a[0] - b[0]) / det]
            })
            .collect();
        Ok(Self { vertices, polar })
    }

    pub fn vertices(&self) -> &[[f64; 2]] {
        &self.vertices
    }

    /// Polar vertices; entry `i` belongs to edge `(v_i, v_{i+1})`.
    pub fn polar_vertices(&self) -> &[[f64; 2]] {
        &self.polar
    }

    /// Minkowski gauge of the polygon.
    pub fn gauge(&self, x: &[f64]) -> f64 {
        self.polar
            .iter()
            .map(|g| dot2(*g, x))
            .fold(f64::NEG_INFINITY, f64::max)
            .max(0.0)
    }

    /// Dual norm: the support function of the polygon.
    pub fn support(&self, f: &[f64]) -> f64 {
        self.vertices
            .iter()
            .map(|v| dot2(*v, f))
            .fold(f64::NEG_INFINITY, f64::max)
            .max(0.0)
    }

    /// The polar polygon, whose vertices are the polar vertices of `self`.
    pub fn polar(&self) -> Result<Polygon> {
        Polygon::new(self.polar.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Polygon {
        Polygon::new(vec![[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]]).unwrap()
    }

    #[test]
    fn square_polar_is_diamond() {
        // Edge {(1,1),(-1,1)} gives g = (0,1), and so on around the square.
        let polar = square().polar_vertices().to_vec();
        assert_eq!(polar, vec![[0.0, 1.0], [-1.0, 0.0], [0.0, -1.0], [1.0, 0.0]]);
    }

    #[test]
    fn square_gauge_is_max_norm() {
        let sq = square();
        assert_eq!(sq.gauge(&[0.5, -0.25]), 0.5);
        assert_eq!(sq.support(&[0.5, -0.25]), 0.75);
    }

    #[test]
    fn rejects_bad_vertex_lists() {
        // odd count
        assert!(Polygon::new(vec![[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0]]).is_err());
        // clockwise
        assert!(Polygon::new(vec![[1.0, 0.0], [0.0, -1.0], [-1.0, 0.0], [0.0, 1.0]]).is_err());
        // not symmetric
        assert!(Polygon::new(vec![[2.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]]).is_err());
        // collinear vertex
        assert!(Polygon::new(vec![
            [1.0, 0.0],
            [1.0, 1.0],
            [-1.0, 1.0],
            [-1.0, 0.0],
            [-1.0, -1.0],
            [1.0, -1.0]
        ])
        .is_err());
        // symmetric star that winds three times around the origin
        let star: Vec<[f64; 2]> = (0..8)
            .map(|k| {
                let t = 0.75 * std::f64::consts::PI * k as f64;
                [t.cos(), t.sin()]
            })
            .collect();
        assert!(Polygon::new(star).is_err());
    }
}
