//! Worked examples with closed-form answers, each cross-checked by an oracle.

use approx::assert_relative_eq;
use lpsum::dgap::dgap_report;
use lpsum::oracles::{bj_orthogonal_oracle, oracle_diameter, oracle_dual_norm, oracle_min_norm};
use lpsum::orthogonality::{
    bj_orthogonal, falsify_symmetry, orthogonal_completion, orthogonality_witness,
    p_sip_commuting, rank_one_tests, sip, sip_value_interval, symmetric_point, CanonicalSelector,
    Scheme, Side,
};
use lpsum::{
    ComponentKind, ComponentSpace, Exponent, OracleConfig, SumFunctional, SumSpace, SumVector,
    TriBool,
};

fn e2() -> ComponentSpace {
    ComponentSpace::euclidean(2).unwrap()
}

fn space(p: f64, comps: Vec<ComponentSpace>) -> SumSpace {
    SumSpace::new(p, comps).unwrap()
}

fn euclid(p: f64, n: usize) -> SumSpace {
    space(p, vec![e2(); n])
}

fn v(pairs: &[(usize, [f64; 2])]) -> SumVector {
    SumVector::from_pairs(pairs.iter().map(|(i, c)| (*i, c.to_vec()))).unwrap()
}

fn f(pairs: &[(usize, [f64; 2])]) -> SumFunctional {
    SumFunctional::from_pairs(pairs.iter().map(|(i, c)| (*i, c.to_vec()))).unwrap()
}

fn cfg() -> OracleConfig {
    OracleConfig::default()
}

fn oracle_orth(s: &SumSpace, x: &SumVector, y: &SumVector) -> bool {
    bj_orthogonal_oracle(s, x, y, 1e-7, &cfg()).unwrap()
}

/// `ℓ_1(2) ⊕_2 ℓ_2(2)` with `x = ((1,0),(1,0))`.
fn sqrt2_instance() -> (SumSpace, SumVector) {
    (
        space(2.0, vec![ComponentSpace::l1(2).unwrap(), e2()]),
        v(&[(0, [1.0, 0.0]), (1, [1.0, 0.0])]),
    )
}

#[test]
fn sum_norms() {
    let x = v(&[(0, [3.0, 0.0]), (1, [4.0, 0.0])]);
    assert_eq!(euclid(2.0, 2).norm(&x).unwrap(), 5.0);
    assert_eq!(euclid(1.0, 2).norm(&x).unwrap(), 7.0);
    assert_eq!(euclid(0.0, 2).norm(&x).unwrap(), 4.0);
    assert_eq!(euclid(0.0, 2).norm(&SumVector::empty()).unwrap(), 0.0);
}

#[test]
fn dual_spaces() {
    let d = euclid(3.0, 2).dual_space();
    assert_relative_eq!(d.exponent().value(), 1.5);
    assert!(d.components().iter().all(|c| *c.kind() == ComponentKind::Euclidean));
    let d = space(1.0, vec![ComponentSpace::linf(2).unwrap(); 2]).dual_space();
    assert_eq!(d.exponent(), Exponent::Infinity);
    assert!(d.components().iter().all(|c| *c.kind() == ComponentKind::L1));
    assert_eq!(euclid(0.0, 3).dual_space().exponent(), Exponent::Finite(1.0));
}

#[test]
fn pairing() {
    let s = euclid(2.0, 2);
    assert_eq!(s.apply(&f(&[(0, [1.0, 0.0])]), &v(&[(0, [2.0, 0.0])])).unwrap(), 2.0);
    assert_eq!(s.apply(&f(&[(0, [1.0, 0.0])]), &v(&[(1, [2.0, 0.0])])).unwrap(), 0.0);
    let both = v(&[(0, [1.0, 0.0]), (1, [0.0, 1.0])]);
    assert_eq!(s.apply(&f(&[(0, [1.0, 0.0]), (1, [0.0, 1.0])]), &both).unwrap(), 2.0);
}

#[test]
fn norming_elements() {
    let s = euclid(2.0, 2);
    let g = f(&[(0, [1.0, 0.0]), (1, [1.0, 0.0])]);
    let y = s.norming_element(&g, 1e-8).unwrap();
    let h = 0.5f64.sqrt();
    for (_, c) in y.entries() {
        assert_relative_eq!(c.0[0], h, max_relative = 1e-15);
        assert_eq!(c.0[1], 0.0);
    }
    assert_relative_eq!(s.apply(&g, &y).unwrap(), 2f64.sqrt(), max_relative = 1e-15);
    assert_relative_eq!(oracle_dual_norm(&s, &g, 64).unwrap(), 2f64.sqrt(), max_relative = 1e-12);

    let s = euclid(3.0, 2);
    let g = f(&[(0, [1.0, 0.0])]);
    let y = s.norming_element(&g, 1e-8).unwrap();
    assert_eq!(y, v(&[(0, [1.0, 0.0])]));
    assert_eq!(s.apply(&g, &y).unwrap(), 1.0);

    let s = euclid(1.5, 3);
    let g = f(&[(0, [0.3, -1.2]), (2, [2.0, 0.7])]);
    let y = s.norming_element(&g, 1e-8).unwrap();
    assert!(s.apply(&g, &y).unwrap() >= s.dual_norm(&g).unwrap() - 1e-8);
}

#[test]
fn support_functionals_p3() {
    let s = euclid(3.0, 2);
    let x = v(&[(0, [2.0, 0.0]), (1, [1.0, 0.0])]);
    let g = s.support_functionals(&x).unwrap().canonical();
    let c = 9f64.powf(2.0 / 3.0);
    let want = f(&[(0, [4.0 / c, 0.0]), (1, [1.0 / c, 0.0])]);
    for ((_, a), (_, b)) in g.entries().iter().zip(want.entries()) {
        assert_relative_eq!(a.0[0], b.0[0], max_relative = 1e-12);
    }
    assert_relative_eq!(s.apply(&g, &x).unwrap(), 9f64.cbrt(), max_relative = 1e-10);
    assert_relative_eq!(s.dual_norm(&g).unwrap(), 1.0, max_relative = 1e-10);
    assert!(s.is_support(&x, &g).unwrap());
    assert!(!s.is_support(&x, &g.scaled(0.5)).unwrap());
}

#[test]
fn support_functionals_p1_free_ball() {
    let s = euclid(1.0, 2);
    let x = v(&[(0, [1.0, 0.0])]);
    let j = s.support_functionals(&x).unwrap();
    assert_eq!(j.free, vec![1]);
    assert_eq!(j.parts.len(), 1);
    assert!(s.is_support(&x, &f(&[(0, [1.0, 0.0]), (1, [0.0, 0.5])])).unwrap());
    assert!(s.is_support(&x, &f(&[(0, [1.0, 0.0]), (1, [0.6, -0.8])])).unwrap());
    assert!(!s.is_support(&x, &f(&[(0, [1.0, 0.0]), (1, [0.0, 1.5])])).unwrap());
}

#[test]
fn support_functionals_c0_simplex() {
    let s = euclid(0.0, 2);
    let x = v(&[(0, [1.0, 0.0]), (1, [1.0, 0.0])]);
    for lambda in [0.0, 0.3, 1.0] {
        let g = f(&[(0, [lambda, 0.0]), (1, [1.0 - lambda, 0.0])]);
        assert!(s.is_support(&x, &g).unwrap());
    }
    let ext = s.support_ext(&x).unwrap();
    assert_eq!(ext, vec![f(&[(0, [1.0, 0.0])]), f(&[(1, [1.0, 0.0])])]);
}

#[test]
fn extreme_points_and_sqrt2_diameter() {
    let (s, x) = sqrt2_instance();
    let ext = s.support_ext(&x).unwrap();
    assert_eq!(ext.len(), 2);
    let h = 0.5f64.sqrt();
    for g in &ext {
        let (a, b) = (g.get(0).unwrap(), g.get(1).unwrap());
        assert_relative_eq!(a.0[0], h, max_relative = 1e-15);
        assert_relative_eq!(a.0[1].abs(), h, max_relative = 1e-15);
        assert_relative_eq!(b.0[0], h, max_relative = 1e-15);
    }
    let d = s.diameter(&x).unwrap();
    assert_relative_eq!(d, 2f64.sqrt(), max_relative = 1e-12);
    assert_relative_eq!(oracle_diameter(&s, &x, &cfg()).unwrap(), d, max_relative = 1e-12);
    let r = s.smoothness_report(&x, 1.5).unwrap();
    assert!(r.eps_smooth && !r.smooth);
}

/// With `ℓ_∞(2)` in place of `ℓ_1(2)`, `(1,0)` is a smooth point and `D = 0`.
#[test]
fn linf_variant_is_smooth() {
    let s = space(2.0, vec![ComponentSpace::linf(2).unwrap(), e2()]);
    let x = v(&[(0, [1.0, 0.0]), (1, [1.0, 0.0])]);
    assert_eq!(s.support_ext(&x).unwrap().len(), 1);
    assert_eq!(s.diameter(&x).unwrap(), 0.0);
}

#[test]
fn diameters_p1_and_c0() {
    let s = euclid(1.0, 2);
    let x = v(&[(0, [1.0, 0.0])]);
    assert_eq!(s.diameter(&x).unwrap(), 2.0);
    assert_relative_eq!(oracle_diameter(&s, &x, &cfg()).unwrap(), 2.0, max_relative = 1e-12);
    let r = s.smoothness_report(&x, 1.999).unwrap();
    assert!(!r.smooth && !r.eps_smooth);
    assert_eq!(r.d, 2.0);

    let s = euclid(0.0, 2);
    let x = v(&[(0, [1.0, 0.0]), (1, [0.5, 0.0])]);
    assert_eq!(s.diameter(&x).unwrap(), 0.0);
    assert_eq!(oracle_diameter(&s, &x, &cfg()).unwrap(), 0.0);

    let s = euclid(2.0, 2);
    let x = v(&[(0, [1.0, 0.0]), (1, [1.0, 0.0])]);
    let r = s.smoothness_report(&x, 0.0).unwrap();
    assert!(r.smooth);
    assert_eq!(r.d, 0.0);
}

#[test]
fn space_level_diameters() {
    assert_eq!(euclid(2.0, 3).cal_d().unwrap(), 0.0);
    let s = space(2.0, vec![e2(), ComponentSpace::linf(2).unwrap()]);
    assert_eq!(s.cal_d().unwrap(), 2.0);
    let (s2, x) = (space(2.0, vec![ComponentSpace::linf(2).unwrap()]), v(&[(0, [1.0, 1.0])]));
    assert_relative_eq!(oracle_diameter(&s2, &x, &cfg()).unwrap(), 2.0, max_relative = 1e-12);
    assert_eq!(euclid(1.0, 3).cal_d().unwrap(), 2.0);
    assert_eq!(euclid(0.0, 3).cal_d().unwrap(), 2.0);
}

#[test]
fn oracle_min_norm_examples() {
    let s = euclid(1.0, 2);
    let x = v(&[(0, [1.0, 0.0])]);
    let y = v(&[(0, [1.0, 0.0]), (1, [0.0, 0.5])]);
    let m = oracle_min_norm(&s, &x, &y, &cfg()).unwrap();
    assert_relative_eq!(m.min, 0.5, epsilon = 1e-10);
    assert_relative_eq!(m.argmin, -1.0, epsilon = 1e-9);
    assert!(!bj_orthogonal(&s, &x, &y).unwrap());
    assert!(!oracle_orth(&s, &x, &y));

    let m = oracle_min_norm(&s, &y, &y, &cfg()).unwrap();
    assert_relative_eq!(m.min, 0.0, epsilon = 1e-10);
    assert_relative_eq!(m.argmin, -1.0, epsilon = 1e-9);
    let m = oracle_min_norm(&s, &SumVector::empty(), &y, &cfg()).unwrap();
    assert_eq!((m.min, m.argmin), (0.0, 0.0));
    assert!(oracle_orth(&s, &SumVector::empty(), &y));
}

#[test]
fn orthogonality_examples() {
    let s = euclid(2.0, 2);
    let (x, y) = (v(&[(0, [1.0, 0.0])]), v(&[(0, [0.0, 1.0])]));
    assert!(bj_orthogonal(&s, &x, &y).unwrap() && oracle_orth(&s, &x, &y));
    let y = v(&[(1, [3.0, -1.0])]);
    assert!(bj_orthogonal(&s, &x, &y).unwrap() && bj_orthogonal(&s, &y, &x).unwrap());

    let s = euclid(1.0, 2);
    let y = v(&[(0, [1.0, 0.0]), (1, [0.0, 2.0])]);
    assert!(bj_orthogonal(&s, &x, &y).unwrap() && oracle_orth(&s, &x, &y));
    let w = orthogonality_witness(&s, &x, &y).unwrap().unwrap();
    assert!(s.is_support(&x, &w).unwrap());
    assert!(w.apply(&y).abs() <= 1e-12);
    let r = rank_one_tests(&s, &x, &y).unwrap();
    assert!(r.x_perp_y && !r.y_perp_x);
    assert!(!oracle_orth(&s, &y, &x));

    let s = euclid(0.0, 2);
    let x = v(&[(0, [1.0, 0.0]), (1, [1.0, 0.0])]);
    let y = v(&[(0, [1.0, 0.0]), (1, [-1.0, 0.0])]);
    assert!(bj_orthogonal(&s, &x, &y).unwrap());
    let m = oracle_min_norm(&s, &x, &y, &cfg()).unwrap();
    assert_relative_eq!(m.min, 1.0, epsilon = 1e-12);
}

#[test]
fn rank_one_c0_escape_clause() {
    let s = euclid(0.0, 2);
    let x = v(&[(0, [1.0, 0.0])]);
    for y0 in [[5.0, 0.0], [-3.0, 1.0], [0.0, 0.0]] {
        let y = v(&[(0, y0), (1, [0.0, 5.0])]);
        let r = rank_one_tests(&s, &x, &y).unwrap();
        assert!(r.y_perp_x);
        assert_eq!(r.y_perp_x, oracle_orth(&s, &y, &x));
    }
    let s = euclid(2.0, 2);
    let y = v(&[(0, [1.0, 1.0]), (1, [2.0, 0.0])]);
    let r = rank_one_tests(&s, &x, &y).unwrap();
    assert!(!r.x_perp_y && !r.y_perp_x);
}

#[test]
fn semi_inner_products() {
    let s = euclid(2.0, 2);
    let x = v(&[(0, [1.0, 2.0]), (1, [-1.0, 0.5])]);
    let y = v(&[(0, [0.5, -1.0]), (1, [3.0, 2.0])]);
    let dot = 0.5 - 2.0 - 3.0 + 1.0;
    assert_relative_eq!(sip(&s, &CanonicalSelector, &x, &y).unwrap(), dot, max_relative = 1e-14);

    let s = euclid(2.0, 1);
    let x = v(&[(0, [1.0, 0.0])]);
    let vi = sip_value_interval(&s, &x, &v(&[(0, [2.0, 3.0])])).unwrap();
    assert_eq!((vi.lo, vi.hi), (2.0, 2.0));
    let x = v(&[(0, [1.0, 2.0])]);
    let vi = sip_value_interval(&s, &x, &x.scaled(-1.0)).unwrap();
    assert_relative_eq!(vi.lo, -5.0, max_relative = 1e-15);
    assert_relative_eq!(vi.hi, -5.0, max_relative = 1e-15);

    let s = space(2.0, vec![ComponentSpace::l1(2).unwrap()]);
    let vi = sip_value_interval(&s, &v(&[(0, [1.0, 0.0])]), &v(&[(0, [0.0, 1.0])])).unwrap();
    assert_eq!((vi.lo, vi.hi), (-1.0, 1.0));
}

#[test]
fn sip_commuting() {
    let s = euclid(2.0, 1);
    let (x, y) = (v(&[(0, [1.0, 0.0])]), v(&[(0, [1.0, 1.0])]));
    for side in [Side::Left, Side::Right] {
        assert!(p_sip_commuting(&s, &x, &y, 2.0, side).unwrap());
        assert!(!p_sip_commuting(&s, &x, &y, 4.0, side).unwrap());
        assert!(p_sip_commuting(&s, &x, &v(&[(0, [0.0, 1.0])]), 3.0, side).unwrap());
    }
}

#[test]
fn completions() {
    let s = euclid(2.0, 1);
    let x = v(&[(0, [1.0, 0.0])]);
    let c = orthogonal_completion(&s, &x, &v(&[(0, [1.0, 1.0])])).unwrap();
    assert_eq!(c.t, -1.0);
    let c = orthogonal_completion(&s, &x, &v(&[(0, [0.0, 1.0])])).unwrap();
    assert!(c.feasible.contains(0.0, 0.0));

    let s = space(1.5, vec![e2(), ComponentSpace::l1(2).unwrap(), ComponentSpace::lr(3, 3.0).unwrap()]);
    let x = SumVector::from_pairs([(0, vec![1.0, -0.5]), (1, vec![0.25, 2.0]), (2, vec![1.0, 1.0, -1.5])]).unwrap();
    let w = SumVector::from_pairs([(0, vec![0.5, 2.0]), (2, vec![-1.0, 0.0, 1.0])]).unwrap();
    let c = orthogonal_completion(&s, &x, &w).unwrap();
    assert!(oracle_orth(&s, &x, &w.axpy(c.t, &x)));
}

#[test]
fn symmetry_verdicts() {
    let x = v(&[(0, [1.0, 0.0]), (1, [0.0, 2.0])]);
    assert_eq!(symmetric_point(&euclid(1.0, 2), &x, Side::Left, &cfg()).unwrap(), TriBool::No);
    assert_eq!(symmetric_point(&euclid(0.0, 2), &x, Side::Right, &cfg()).unwrap(), TriBool::No);
    let x = v(&[(0, [1.0, 0.0]), (1, [2.0, 0.0])]);
    assert_eq!(symmetric_point(&euclid(3.0, 2), &x, Side::Left, &cfg()).unwrap(), TriBool::No);
    let x = v(&[(1, [0.3, -2.0])]);
    assert_eq!(symmetric_point(&euclid(1.0, 3), &x, Side::Right, &cfg()).unwrap(), TriBool::Yes);
    assert_eq!(symmetric_point(&euclid(0.0, 3), &x, Side::Left, &cfg()).unwrap(), TriBool::Yes);
}

#[test]
fn l1_left_counterexample() {
    let s = euclid(1.0, 2);
    let x = v(&[(0, [1.0, 0.0])]);
    let fz = falsify_symmetry(&s, &x, Side::Left, &cfg()).unwrap().unwrap();
    assert_eq!(fz.scheme, Scheme::ZeroCoordinate);
    assert!(fz.oracle_confirmed);
    assert!(oracle_orth(&s, &x, &fz.witness) && !oracle_orth(&s, &fz.witness, &x));

    // ((0,0),(0,2)) alone is orthogonal to x in both directions.
    let z = v(&[(1, [0.0, 2.0])]);
    assert!(oracle_orth(&s, &x, &z) && oracle_orth(&s, &z, &x));
}

#[test]
fn c0_right_counterexample() {
    let s = euclid(0.0, 2);
    let x = v(&[(0, [1.0, 0.0]), (1, [0.5, 0.0])]);
    let fz = falsify_symmetry(&s, &x, Side::Right, &cfg()).unwrap().unwrap();
    assert!(fz.oracle_confirmed);
    assert!(oracle_orth(&s, &fz.witness, &x) && !oracle_orth(&s, &x, &fz.witness));
}

#[test]
fn general_p_counterexample() {
    let s = euclid(3.0, 2);
    let x = v(&[(0, [1.0, 0.0]), (1, [2.0, 0.0])]);
    let fz = falsify_symmetry(&s, &x, Side::Left, &cfg()).unwrap().unwrap();
    assert_eq!(fz.scheme, Scheme::UnequalNorms);
    assert!(fz.oracle_confirmed);
    // ‖x₁‖³ = α‖x₂‖³ gives α = 1/8 and y = (x₁, −αx₂).
    let y = v(&[(0, [1.0, 0.0]), (1, [-0.25, 0.0])]);
    assert!(bj_orthogonal(&s, &x, &y).unwrap() && oracle_orth(&s, &x, &y));
    assert!(!bj_orthogonal(&s, &y, &x).unwrap() && !oracle_orth(&s, &y, &x));
}

#[test]
fn dgap_small_reports() {
    let r = dgap_report(10, 2.0).unwrap();
    assert!(r.all_certified);
    assert!(r.rows.last().unwrap().witness_d >= 1.9 - 1e-6);
    let r = dgap_report(2, 1.5).unwrap();
    assert_eq!(r.rows.len(), 2);
    assert!(r.witnesses_monotone);
    assert!(r.rows[0].witness_d < r.rows[1].witness_d);
    for row in &r.rows {
        assert!((row.witness_d - row.witness_d_oracle).abs() <= 1e-9);
    }
}
