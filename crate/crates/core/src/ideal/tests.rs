use proptest::prelude::*;

use super::*;
use crate::poly::{parse_polynomial, Monomial};
use crate::rational::int;

fn p(s: &str, names: &[&str]) -> Polynomial {
    parse_polynomial(s, names, MonomialOrder::GrevLex).unwrap()
}

fn ideal(gens: &[&str], names: &[&str]) -> Ideal {
    Ideal::from_generators(names.len(), gens.iter().map(|g| p(g, names)).collect())
}

const Y: [&str; 2] = ["y1", "y2"];
const NODE_T: [&str; 4] = ["x1", "y1", "x2", "y2"];

#[test]
fn groebner_trivial_cases() {
    let i = ideal(&["x"], &["x"]);
    assert_eq!(i.groebner().elements(), &[p("x", &["x"])]);
    let unit = ideal(&["3"], &["x"]);
    assert!(unit.groebner().is_unit());
    assert!(!unit.is_proper());
    let zero = Ideal::zero(2, MonomialOrder::GrevLex);
    assert!(zero.groebner().is_empty());
    assert!(zero.is_zero_ideal());
}

#[test]
fn y4_x5_kernel_basis_contains_y6_difference() {
    let i = ideal(&["y1^4 - y2^4", "y1^5 - y2^5"], &Y);
    let target = p("y1^6 - y2^6", &Y);
    // independent check: the explicit combination from the example
    let combo = &(&p("y1 + y2", &Y) * &p("y1^5 - y2^5", &Y)) - &(&p("y1*y2", &Y) * &p("y1^4 - y2^4", &Y));
    assert_eq!(combo, target);
    assert!(i.groebner().reduce(&target).is_zero());
    assert!(i.groebner().satisfies_buchberger_criterion());
}

#[test]
fn ideal_member_examples() {
    let (inside, _) = ideal_member(&p("x", &["x"]), &ideal(&["x^2"], &["x"])).unwrap();
    assert!(!inside);

    let i = ideal(&["y1^4 - y2^4", "y1^5 - y2^5"], &Y);
    let target = p("y1^6 - y2^6", &Y);
    let (inside, trace) = ideal_member(&target, &i).unwrap();
    assert!(inside);
    assert!(trace_residual(&target, i.groebner(), &trace).is_zero());
    let cof = i.lift(&target).unwrap().unwrap();
    let rebuilt = &(&cof[0] * &i.generators()[0]) + &(&cof[1] * &i.generators()[1]);
    assert_eq!(rebuilt, target);
}

#[test]
fn node_minus_point_kernel_contains_both_differences() {
    let names = ["x1", "y1", "z1", "x2", "y2", "z2"];
    let i = ideal(
        &[
            "x1 - x2",
            "x1*y1 - x2*y2",
            "y1^2 - x1 - 1",
            "z1*(y1 - 1) - 1",
            "y2^2 - x2 - 1",
            "z2*(y2 - 1) - 1",
        ],
        &names,
    );
    assert!(i.contains(&p("y1 - y2", &names)).unwrap());
    assert!(i.contains(&p("z1 - z2", &names)).unwrap());
}

#[test]
fn radical_member_examples() {
    let x2 = ideal(&["x^2"], &["x"]);
    assert!(radical_member(&p("x", &["x"]), &x2).unwrap());
    assert!(!radical_member(&p("x + 1", &["x"]), &x2).unwrap());

    let node = ideal(&["x1 - x2", "x1*y1 - x2*y2", "y1^2 - x1 - 1", "y2^2 - x2 - 1"], &NODE_T);
    let target = p("y1 - y2", &NODE_T);
    assert!(!radical_member(&target, &node).unwrap());
    // point oracle: every generator vanishes at (0,1,0,-1), the target does not
    let pt = [int(0), int(1), int(0), int(-1)];
    for g in node.generators() {
        assert_eq!(g.evaluate(&pt).unwrap(), int(0));
    }
    assert_eq!(target.evaluate(&pt).unwrap(), int(2));
}

#[test]
fn eliminate_examples() {
    // graph of a function: nothing survives in x alone
    let graph = ideal(&["y - x^2"], &["y", "x"]);
    assert!(graph.eliminate(1).unwrap().is_zero_ideal());

    let param = ideal(&["x - t^2", "y - t^3"], &["t", "x", "y"]);
    let image = param.eliminate(1).unwrap();
    let cusp = ideal(&["y^2 - x^3"], &["x", "y"]);
    assert!(image.contains_ideal(&cusp).unwrap());
    assert!(cusp.contains_ideal(&image).unwrap());
    assert!(ideal_equal(&cusp, &image).unwrap());

    let unit = ideal(&["1"], &["a", "b"]);
    assert!(unit.eliminate(1).unwrap().groebner().is_unit());
}

#[test]
fn eliminating_nothing_is_identity() {
    let i = ideal(&["x*y - 1", "x^2 - y"], &["x", "y"]);
    assert!(i.equals(&i.eliminate(0).unwrap()).unwrap());
}

#[test]
fn saturate_examples() {
    let xy = ["x", "y"];
    let s = ideal(&["x*y"], &xy).saturate(&p("x", &xy)).unwrap();
    assert!(s.equals(&ideal(&["y"], &xy)).unwrap());

    let s = ideal(&["x"], &xy).saturate(&p("y", &xy)).unwrap();
    assert!(s.equals(&ideal(&["x"], &xy)).unwrap());

    // x² ∈ I, so I : x^∞ is the unit ideal; ⟨y − 1, x⟩ is only the one-step quotient I : x
    let s = ideal(&["x*(y - 1)", "x^2"], &xy).saturate(&p("x", &xy)).unwrap();
    assert!(s.contains(&p("1", &xy)).unwrap());
    assert!(ideal(&["x"], &xy).saturate(&Polynomial::zero(2, MonomialOrder::GrevLex)).is_err());
}

#[test]
fn ideal_equal_examples() {
    let xy = ["x", "y"];
    assert!(ideal_equal(&ideal(&["x", "y"], &xy), &ideal(&["y", "x"], &xy)).unwrap());
    assert!(!ideal_equal(&ideal(&["x"], &xy), &ideal(&["x^2"], &xy)).unwrap());
}

#[test]
fn traced_and_plain_bases_agree() {
    let i = ideal(&["x^2*y - z", "x*y^2 - x", "z^2 - y"], &["x", "y", "z"]);
    assert_eq!(i.groebner().elements(), i.traced_groebner().elements());
    let t = i.traced_groebner().transform().unwrap();
    for (g, row) in i.traced_groebner().elements().iter().zip(t) {
        let mut acc = Polynomial::zero(3, MonomialOrder::GrevLex);
        for (c, gen) in row.iter().zip(i.generators()) {
            acc = &acc + &(c * gen);
        }
        assert_eq!(&acc, g);
    }
}

fn arb_poly(nvars: usize) -> impl Strategy<Value = Polynomial> {
    let term = (proptest::collection::vec(0u32..=2, nvars), -3i64..=3);
    proptest::collection::vec(term, 1..4).prop_map(move |ts| {
        Polynomial::from_terms(nvars, MonomialOrder::GrevLex, ts.into_iter().map(|(e, c)| (Monomial::new(e), int(c))))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn bases_satisfy_buchberger_and_are_deterministic(gens in proptest::collection::vec(arb_poly(3), 1..4)) {
        let a = Ideal::from_generators(3, gens.clone());
        let b = Ideal::from_generators(3, gens);
        prop_assert!(a.groebner().satisfies_buchberger_criterion());
        prop_assert_eq!(a.groebner().elements(), b.groebner().elements());
        for g in a.nonzero_generators() {
            prop_assert!(a.groebner().reduce(g).is_zero());
        }
    }

    #[test]
    fn trace_identity_and_member_implies_radical(gens in proptest::collection::vec(arb_poly(3), 1..3), f in arb_poly(3), h in arb_poly(3)) {
        let i = Ideal::from_generators(3, gens.clone());
        let (_, trace) = ideal_member(&f, &i).unwrap();
        prop_assert!(trace_residual(&f, i.groebner(), &trace).is_zero());
        let inside = &h * &gens[0];
        prop_assert!(i.contains(&inside).unwrap());
        prop_assert!(i.radical_contains(&inside).unwrap());
    }
}
