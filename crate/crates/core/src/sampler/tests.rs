use proptest::prelude::*;

use super::*;
use crate::arc::{Series, SeriesOrder, DEFAULT_TRUNCATION};
use crate::closure::{MembershipVerdict, Witness};
use crate::corpus;
use crate::lipschitz::lipschitz_member;
use crate::poly::{parse_polynomial, MonomialOrder};
use crate::variety::PresentedRing;

fn line_branch(names: &[&str], comps: &[&str]) -> (PresentedRing, Branch) {
    let r = PresentedRing::parse(names, &[]).unwrap();
    let series = comps
        .iter()
        .map(|c| {
            let p = parse_polynomial(c, &["t"], MonomialOrder::GrevLex).unwrap();
            Series::from_polynomial(&p, DEFAULT_TRUNCATION, None).unwrap()
        })
        .collect();
    let b = Branch::new("b", &r, series).unwrap();
    (r, b)
}

fn lipschitz_report(ex: &corpus::Example, name: &str) -> RatioReport {
    let q = SaturationQuery::from_example(ex, name);
    sample_lipschitz_ratio(&q, &ex.branches, &EpsilonLadder::default()).unwrap()
}

/// Exact order deficit from the arc witness.
fn deficit(ex: &corpus::Example, name: &str) -> f64 {
    match lipschitz_member(&SaturationQuery::from_example(ex, name)).unwrap() {
        MembershipVerdict::Refuted { witness: Witness::Arc(w) } => match (w.target_order, w.ideal_order) {
            (SeriesOrder::Finite(a), SeriesOrder::Finite(b)) => (b - a) as f64,
            other => panic!("{other:?}"),
        },
        other => panic!("{other:?}"),
    }
}

#[test]
fn divergence_rule() {
    assert!(diverging(&[1.0, 2.0, 10.0]));
    assert!(!diverging(&[1.0, 2.0, 9.0]));
    assert!(!diverging(&[1.0, 20.0, 15.0, 30.0]));
    assert!(!diverging(&[1.0, 1.0, 1.0]));
}

#[test]
fn growth_exponent_of_power_law() {
    let scales: Vec<f64> = (1..=6).map(|k| 10f64.powi(-k)).collect();
    let maxima: Vec<f64> = scales.iter().map(|s| 3.0 * s.powf(-2.5)).collect();
    assert!((growth_exponent(&scales, &maxima) - 2.5).abs() < 1e-9);
}

#[test]
fn ladder_validation() {
    assert_eq!(EpsilonLadder::new(vec![0.1, 0.1], 4, 0), Err(SamplerError::BadScales));
    assert_eq!(EpsilonLadder::new(vec![0.1, 0.01], 0, 0), Err(SamplerError::NoSamples));
    assert_eq!(EpsilonLadder::new(vec![-0.1], 1, 0), Err(SamplerError::BadScales));
    assert!(EpsilonLadder::new(vec![0.1, 0.01], 1, 0).is_ok());
}

#[test]
fn x2_over_x3_diverges_with_exponent_one() {
    let (r, b) = line_branch(&["x"], &["t"]);
    let rep = sample_ideal_ratio(&r.element("x^2").unwrap(), &[r.element("x^3").unwrap()], &[b], &EpsilonLadder::default())
        .unwrap();
    assert_eq!(rep.verdict_hint, VerdictHint::Diverging);
    assert!((rep.growth_exponent_estimate - 1.0).abs() < 0.1);
}

#[test]
fn x3_over_x3_is_bounded_by_one() {
    let (r, b) = line_branch(&["x"], &["t"]);
    let x3 = r.element("x^3").unwrap();
    let rep = sample_ideal_ratio(&x3, &[x3.clone()], &[b], &EpsilonLadder::default()).unwrap();
    assert_eq!(rep.verdict_hint, VerdictHint::Bounded);
    assert!(rep.maxima.iter().all(|m| (m - 1.0).abs() < 1e-12));
}

#[test]
fn x2y_over_x3_y3_on_the_diagonal_is_bounded() {
    let (r, b) = line_branch(&["x", "y"], &["t", "t"]);
    let gens = [r.element("x^3").unwrap(), r.element("y^3").unwrap()];
    let rep = sample_ideal_ratio(&r.element("x^2*y").unwrap(), &gens, &[b], &EpsilonLadder::default()).unwrap();
    assert_eq!(rep.verdict_hint, VerdictHint::Bounded);
}

#[test]
fn vanishing_generators_are_degenerate() {
    let (r, b) = line_branch(&["x", "y"], &["t", "0"]);
    let err = sample_ideal_ratio(&r.element("x").unwrap(), &[r.element("y").unwrap()], &[b], &EpsilonLadder::default());
    assert_eq!(err, Err(SamplerError::DegenerateSample { skipped: 6 * 64 }));
}

#[test]
fn y4x5_y_diverges_with_exponent_near_the_deficit() {
    let ex = corpus::y4_x5();
    let rep = lipschitz_report(&ex, "f1");
    assert_eq!(rep.verdict_hint, VerdictHint::Diverging);
    assert_eq!(deficit(&ex, "f1"), 3.0);
    assert!((rep.growth_exponent_estimate - 3.0).abs() <= 0.5, "{}", rep.growth_exponent_estimate);
}

#[test]
fn y4x5_y6_is_bounded() {
    assert_eq!(lipschitz_report(&corpus::y4_x5(), "f6").verdict_hint, VerdictHint::Bounded);
}

#[test]
fn cusp_t_exponent_matches_arc_deficit() {
    let ex = corpus::cusp();
    let rep = lipschitz_report(&ex, "ft");
    assert_eq!(rep.verdict_hint, VerdictHint::Diverging);
    assert!((rep.growth_exponent_estimate - deficit(&ex, "ft")).abs() <= 0.5);
}

#[test]
fn pulled_back_coordinate_has_constant_at_most_one() {
    for ex in corpus::all() {
        let x = ex.morphism.images()[0].clone();
        let q = SaturationQuery::new(ex.morphism.clone(), x);
        let rep = sample_lipschitz_ratio(&q, &ex.branches, &EpsilonLadder::default()).unwrap();
        assert_eq!(rep.verdict_hint, VerdictHint::Bounded, "{}", ex.name);
        assert!(rep.maxima.iter().all(|m| *m <= 1.0 + 1e-9), "{}", ex.name);
    }
}

#[test]
fn node_minus_point_members_are_bounded() {
    let ex = corpus::node_minus_point();
    for name in ["fy", "fz"] {
        assert_eq!(lipschitz_report(&ex, name).verdict_hint, VerdictHint::Bounded, "{name}");
    }
}

#[test]
fn csv_has_one_row_per_sample() {
    let rep = lipschitz_report(&corpus::y4_x5(), "f6");
    assert_eq!(rep.to_csv().lines().count(), rep.samples.len() + 1);
    assert!(rep.to_table().contains("hint"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn fixed_seed_is_deterministic(seed in any::<u64>()) {
        let ex = corpus::y4_x5();
        let q = SaturationQuery::from_example(&ex, "f1");
        let ladder = EpsilonLadder::new(vec![0.1, 0.01, 0.001], 8, seed).unwrap();
        let a = sample_lipschitz_ratio(&q, &ex.branches, &ladder).unwrap();
        let b = sample_lipschitz_ratio(&q, &ex.branches, &ladder).unwrap();
        prop_assert_eq!(a, b);
    }
}
