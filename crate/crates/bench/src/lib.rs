//! Fixtures shared by the benchmarks.

use lpsum::{hexagon_family, ComponentSpace, ComponentVector, SumSpace, SumVector};

/// A sum cycling through every component kind.
pub fn mixed_space(p: f64, components: usize) -> SumSpace {
    let kinds = [
        ComponentSpace::euclidean(3).unwrap(),
        ComponentSpace::lr(3, 3.0).unwrap(),
        ComponentSpace::l1(3).unwrap(),
        ComponentSpace::linf(3).unwrap(),
        hexagon_family(0.75).unwrap(),
    ];
    let comps = (0..components).map(|i| kinds[i % kinds.len()].clone()).collect();
    SumSpace::new(p, comps).unwrap()
}

/// A dense vector with deterministic, non-degenerate coordinates.
pub fn dense_vector(space: &SumSpace, phase: f64) -> SumVector {
    let entries = (0..space.len())
        .map(|i| {
            let d = space.component(i).dim();
            let coords = (0..d)
                .map(|k| ((i * 7 + k * 3) as f64 + phase).sin() * 2.0)
                .collect();
            (i, ComponentVector(coords))
        })
        .collect();
    SumVector::new(entries).unwrap()
}
