//! The `𝒟`-gap: an `ℓ_p`-sum in which every nonzero `x` has `D(x) < 2`
//! while `𝒟 = 2`.
//!
//! Take `X_n` planar polygon spaces with `𝒟(X_n) = 2 − 1/n`. For `x` in the
//! sum, `D(x)` is a weighted `q`-mean of the `D(x_n)` over the support, so
//! it is at most `max D(x_n) < 2`. A vertex of `X_n` placed at coordinate
//! `n` has `D = 𝒟(X_n)`, and these witnesses approach `2`.

use serde::Serialize;

use crate::component::{d_component, polygon_family, ComponentKind, ComponentSpace, ComponentVector};
use crate::error::{Error, Result};
use crate::grid::{halton_cube, radical_inverse};
use crate::oracles::{oracle_diameter, OracleConfig};
use crate::sum::{SumSpace, SumVector};
use crate::tolerance::GEOM_TOL;

/// Tolerance on `𝒟(X_n) = 2 − 1/n` and on the witness lower bound.
pub const DGAP_TOL: f64 = 1e-6;
/// Sampled vectors checked against `D(x) < 2`.
pub const DGAP_SAMPLES: usize = 256;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DgapRow {
    pub n: usize,
    /// `𝒟(X_n)`.
    pub cal_d: f64,
    pub target: f64,
    /// `D` of the vertex witness concentrated at coordinate `n`.
    pub witness_d: f64,
    /// Same quantity from the brute-force pair scan.
    pub witness_d_oracle: f64,
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DgapReport {
    pub components: usize,
    pub p: f64,
    /// `𝒟` of the whole sum.
    pub cal_d_sum: f64,
    pub rows: Vec<DgapRow>,
    pub max_witness_d: f64,
    pub witnesses_monotone: bool,
    pub samples: usize,
    pub sampled_max_d: f64,
    /// Every sampled `D(x)` is `< 2`.
    pub samples_below_two: bool,
    /// Every sampled `D(x)` is at most `max_{n ∈ supp x} (2 − 1/n)`.
    pub samples_within_bound: bool,
    pub all_certified: bool,
}

fn vertices(space: &ComponentSpace) -> &[[f64; 2]] {
    match space.kind() {
        ComponentKind::Polygon(p) => p.vertices(),
        _ => unreachable!("family members are polygons"),
    }
}

/// Builds `X_1, …, X_N`, certifies `𝒟(X_n)`, evaluates the witnesses and
/// checks `D(x) < 2` on a deterministic sample of vectors with vertex
/// entries (smooth entries would contribute nothing).
pub fn dgap_report(n_components: usize, p: f64) -> Result<DgapReport> {
    if n_components < 2 {
        return Err(Error::invalid_argument("dgap_report needs N >= 2"));
    }
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::invalid_argument(format!("p must lie in (1, ∞), got {p}")));
    }
    let comps = (1..=n_components as u64)
        .map(polygon_family)
        .collect::<Result<Vec<_>>>()?;
    let space = SumSpace::new(p, comps)?;
    let config = OracleConfig::default();

    let mut rows = Vec::with_capacity(n_components);
    for (k, comp) in space.components().iter().enumerate() {
        let n = k + 1;
        let target = 2.0 - 1.0 / n as f64;
        let (best_vertex, cal_d) = vertices(comp)
            .iter()
            .map(|v| {
                let v = ComponentVector(v.to_vec());
                let d = d_component(comp, &v).expect("vertices are nonzero");
                (v, d)
            })
            .fold(None::<(ComponentVector, f64)>, |acc, (v, d)| match acc {
                Some((_, bd)) if bd >= d => acc,
                _ => Some((v, d)),
            })
            .expect("polygon has vertices");
        let x = SumVector::single(k, best_vertex);
        let witness_d = space.diameter(&x)?;
        let witness_d_oracle = oracle_diameter(&space, &x, &config)?;
        let certified = (cal_d - target).abs() <= DGAP_TOL
            && witness_d >= target - DGAP_TOL
            && (witness_d - witness_d_oracle).abs() <= GEOM_TOL * witness_d.max(1.0);
        rows.push(DgapRow {
            n,
            cal_d,
            target,
            witness_d,
            witness_d_oracle,
            certified,
        });
    }

    let mut sampled_max_d = 0.0_f64;
    let mut below_two = true;
    let mut within = true;
    for s in 0..DGAP_SAMPLES {
        let s = s as u64;
        let support = 1 + (radical_inverse(s + 1, 2) * 4.0) as usize;
        let weights = halton_cube(s, 2 * support);
        let mut entries: Vec<(usize, ComponentVector)> = Vec::new();
        for j in 0..support {
            let u = 0.5 * (weights[2 * j] + 1.0);
            let idx = ((u * n_components as f64) as usize).min(n_components - 1);
            if entries.iter().any(|e| e.0 == idx) {
                continue;
            }
            let verts = vertices(space.component(idx));
            let vsel = ((0.5 * (weights[2 * j + 1] + 1.0)) * verts.len() as f64) as usize;
            let scale = 0.25 + 0.5 * (weights[2 * j + 1] + 1.0);
            let v = verts[vsel.min(verts.len() - 1)];
            entries.push((idx, ComponentVector(vec![scale * v[0], scale * v[1]])));
        }
        entries.sort_by_key(|e| e.0);
        let bound = entries
            .iter()
            .map(|e| 2.0 - 1.0 / (e.0 + 1) as f64)
            .fold(0.0, f64::max);
        let x = SumVector::new(entries)?;
        let d = space.diameter(&x)?;
        sampled_max_d = sampled_max_d.max(d);
        below_two &= d < 2.0;
        within &= d <= bound + DGAP_TOL;
    }

    let max_witness_d = rows.iter().map(|r| r.witness_d).fold(0.0, f64::max);
    let witnesses_monotone = rows
        .windows(2)
        .all(|w| w[1].witness_d >= w[0].witness_d - DGAP_TOL);
    let all_certified =
        rows.iter().all(|r| r.certified) && below_two && within && witnesses_monotone;
    Ok(DgapReport {
        components: n_components,
        p,
        cal_d_sum: space.cal_d()?,
        rows,
        max_witness_d,
        witnesses_monotone,
        samples: DGAP_SAMPLES,
        sampled_max_d,
        samples_below_two: below_two,
        samples_within_bound: within,
        all_certified,
    })
}
