//! Deterministic random instances for integration tests.
//!
//! Coordinates live on the half-integer grid in `[-2, 2]`, which keeps
//! active-vertex decisions away from floating-point ties.

#![allow(dead_code)]

use lpsum::{
    hexagon_family, ComponentFunctional, ComponentSpace, ComponentVector, SumFunctional, SumSpace,
    SumVector,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Euclidean,
    Lr,
    L1,
    Linf,
    Polygon,
}

pub const ALL_KINDS: [Kind; 5] = [Kind::Euclidean, Kind::Lr, Kind::L1, Kind::Linf, Kind::Polygon];
pub const POLYHEDRAL: [Kind; 3] = [Kind::L1, Kind::Linf, Kind::Polygon];
pub const SMOOTH: [Kind; 2] = [Kind::Euclidean, Kind::Lr];

pub fn octagon() -> ComponentSpace {
    ComponentSpace::polygon(vec![
        [2.0, 0.0],
        [1.5, 1.0],
        [0.0, 1.5],
        [-1.0, 1.0],
        [-2.0, 0.0],
        [-1.5, -1.0],
        [0.0, -1.5],
        [1.0, -1.0],
    ])
    .unwrap()
}

pub fn square() -> ComponentSpace {
    ComponentSpace::polygon(vec![[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]]).unwrap()
}

pub struct Gen {
    rng: ChaCha8Rng,
    pub max_dim: usize,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_dim: 4,
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn pick<T: Copy>(&mut self, items: &[T]) -> T {
        *items.choose(&mut self.rng).unwrap()
    }

    pub fn component(&mut self, kinds: &[Kind]) -> ComponentSpace {
        let dim = self.rng.gen_range(1..=self.max_dim);
        match self.pick(kinds) {
            Kind::Euclidean => ComponentSpace::euclidean(dim).unwrap(),
            Kind::Lr => {
                let r = self.pick(&[1.5, 3.0, 4.0]);
                ComponentSpace::lr(dim, r).unwrap()
            }
            Kind::L1 => ComponentSpace::l1(dim).unwrap(),
            Kind::Linf => ComponentSpace::linf(dim).unwrap(),
            Kind::Polygon => match self.rng.gen_range(0..4) {
                0 => square(),
                1 => hexagon_family(0.5).unwrap(),
                2 => hexagon_family(0.75).unwrap(),
                _ => octagon(),
            },
        }
    }

    pub fn space(&mut self, p: f64, max_components: usize, kinds: &[Kind]) -> SumSpace {
        let n = self.rng.gen_range(1..=max_components);
        let comps = (0..n).map(|_| self.component(kinds)).collect();
        SumSpace::new(p, comps).unwrap()
    }

    pub fn coord(&mut self) -> f64 {
        f64::from(self.rng.gen_range(-4i32..=4)) * 0.5
    }

    pub fn component_vector(&mut self, dim: usize) -> ComponentVector {
        ComponentVector((0..dim).map(|_| self.coord()).collect())
    }

    fn indices(&mut self, space: &SumSpace, density: f64) -> Vec<usize> {
        (0..space.len()).filter(|_| self.rng.gen_bool(density)).collect()
    }

    /// Each declared index gets an entry with probability `density`.
    pub fn vector(&mut self, space: &SumSpace, density: f64) -> SumVector {
        let entries = self
            .indices(space, density)
            .into_iter()
            .map(|i| (i, self.component_vector(space.component(i).dim())))
            .collect();
        SumVector::new(entries).unwrap()
    }

    pub fn nonzero_vector(&mut self, space: &SumSpace, density: f64) -> SumVector {
        loop {
            let v = self.vector(space, density);
            if space.norm(&v).unwrap() > 0.0 {
                return v;
            }
        }
    }

    pub fn functional(&mut self, space: &SumSpace, density: f64) -> SumFunctional {
        loop {
            let entries: Vec<(usize, ComponentFunctional)> = self
                .indices(space, density)
                .into_iter()
                .map(|i| (i, ComponentFunctional(self.component_vector(space.component(i).dim()).0)))
                .collect();
            let f = SumFunctional::new(entries).unwrap();
            if !f.is_zero() {
                return f;
            }
        }
    }

    /// Continuous coordinates, for tests that want generic (smooth) points.
    pub fn generic_vector(&mut self, space: &SumSpace, density: f64) -> SumVector {
        loop {
            let entries: Vec<(usize, ComponentVector)> = self
                .indices(space, density)
                .into_iter()
                .map(|i| {
                    let d = space.component(i).dim();
                    (i, ComponentVector((0..d).map(|_| self.rng.gen_range(-2.0..2.0)).collect()))
                })
                .collect();
            let v = SumVector::new(entries).unwrap();
            if space.norm(&v).unwrap() > 0.0 {
                return v;
            }
        }
    }
}
