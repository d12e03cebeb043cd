//! Seedless deterministic point sets.

const PRIMES: [u32; 32] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131,
];

/// Radical inverse of `index` in `base`, in `[0, 1)`.
pub(crate) fn radical_inverse(mut index: u64, base: u32) -> f64 {
    let b = u64::from(base);
    let inv = 1.0 / f64::from(base);
    let mut factor = inv;
    let mut out = 0.0;
    while index > 0 {
        out += (index % b) as f64 * factor;
        index /= b;
        factor *= inv;
    }
    out
}

/// Point `index` of the Halton sequence in `[-1, 1]^dim`.
pub(crate) fn halton_cube(index: u64, dim: usize) -> Vec<f64> {
    (0..dim)
        .map(|k| 2.0 * radical_inverse(index + 1, PRIMES[k % PRIMES.len()]) - 1.0)
        .collect()
}

/// `count` unit directions (Euclidean length one) in `dim` dimensions.
///
/// In the plane these are equally spaced angles offset by half a step, so
/// no direction lies on a coordinate axis. In higher dimension they are
/// normalized Halton points; points too close to the origin are skipped.
pub(crate) fn directions(dim: usize, count: usize) -> Vec<Vec<f64>> {
    match dim {
        0 => Vec::new(),
        1 => vec![vec![1.0], vec![-1.0]],
        2 => (0..count)
            .map(|k| {
                let theta = std::f64::consts::TAU * (k as f64 + 0.5) / count as f64;
                vec![theta.cos(), theta.sin()]
            })
            .collect(),
        _ => {
            let mut out = Vec::with_capacity(count);
            let mut index = 0u64;
            while out.len() < count {
                let p = halton_cube(index, dim);
                index += 1;
                let len = p.iter().map(|c| c * c).sum::<f64>().sqrt();
                if len > 0.25 {
                    out.push(p.into_iter().map(|c| c / len).collect());
                }
            }
            out
        }
    }
}
