use proptest::prelude::*;

use super::*;
use crate::ideal::ideal_equal;
use crate::rational::int;

fn node_morphism() -> RingMorphism {
    let a = PresentedRing::parse(&["x", "y"], &["y^2 - x^2*(x + 1)"]).unwrap();
    let b = PresentedRing::parse(&["x", "y", "z"], &["y^2 - x - 1", "z*(y - 1) - 1"]).unwrap();
    let images = vec![b.element("x").unwrap(), b.element("x*y").unwrap()];
    make_morphism(a, b, images).unwrap()
}

fn y4x5_morphism() -> RingMorphism {
    let a = PresentedRing::parse(&["x", "y"], &["y^4 - x^5"]).unwrap();
    let b = PresentedRing::parse(&["y"], &[]).unwrap();
    let images = vec![b.element("y^4").unwrap(), b.element("y^5").unwrap()];
    make_morphism(a, b, images).unwrap()
}

#[test]
fn node_normalization_morphism_is_well_defined() {
    let a = PresentedRing::parse(&["x", "y"], &["y^2 - x^2*(x + 1)"]).unwrap();
    let b = PresentedRing::parse(&["x", "y"], &["y^2 - x - 1"]).unwrap();
    // x²y² − x²(x+1) = x²(y² − x − 1)
    let img = a.defining().generators()[0]
        .substitute(&[b.element("x").unwrap(), b.element("x*y").unwrap()])
        .unwrap();
    assert_eq!(img, b.element("x^2*(y^2 - x - 1)").unwrap());
    let images = vec![b.element("x").unwrap(), b.element("x*y").unwrap()];
    assert!(make_morphism(a, b, images).is_ok());
}

#[test]
fn identity_is_well_defined_and_dominant() {
    let r = PresentedRing::parse(&["x", "y"], &["x*y"]).unwrap();
    let id = make_morphism(r.clone(), r.clone(), vec![r.var(0), r.var(1)]).unwrap();
    assert!(id.is_dominant().unwrap());
}

#[test]
fn ill_defined_morphism_is_rejected() {
    let a = PresentedRing::parse(&["x"], &["x^2"]).unwrap();
    let b = PresentedRing::polynomial_ring(vec!["x"]).unwrap();
    let err = make_morphism(a, b.clone(), vec![b.var(0)]).unwrap_err();
    assert_eq!(
        err,
        VarietyError::IllDefinedMorphism { generator: "x^2".into(), normal_form: "x^2".into() }
    );
}

#[test]
fn arity_and_duplicate_names_are_errors() {
    let b = PresentedRing::polynomial_ring(vec!["x"]).unwrap();
    let a = PresentedRing::polynomial_ring(vec!["u", "v"]).unwrap();
    assert!(matches!(make_morphism(a, b, vec![]), Err(VarietyError::Arity { expected: 2, got: 0 })));
    assert!(matches!(PresentedRing::polynomial_ring(vec!["x", "x"]), Err(VarietyError::DuplicateName(_))));
    assert!(matches!(PresentedRing::parse(&["x"], &["x", "x - 1"]), Err(VarietyError::ImproperPresentation)));
}

#[test]
fn dominance_examples() {
    assert!(node_morphism().is_dominant().unwrap());
    assert!(y4x5_morphism().is_dominant().unwrap());
    let a = PresentedRing::polynomial_ring(vec!["x"]).unwrap();
    let point = PresentedRing::polynomial_ring(Vec::<String>::new()).unwrap();
    let constant = make_morphism(a, point, vec![Polynomial::zero(0, MonomialOrder::GrevLex)]).unwrap();
    assert!(!constant.is_dominant().unwrap());
}

#[test]
fn tensor_square_kernels() {
    let ts = tensor_square(&y4x5_morphism()).unwrap();
    let names = ts.ring().names().to_vec();
    assert_eq!(names, vec!["y_1", "y_2"]);
    let expect = Ideal::from_generators(2, vec![
        ts.ring().element("y_1^4 - y_2^4").unwrap(),
        ts.ring().element("y_1^5 - y_2^5").unwrap(),
    ]);
    assert_eq!(ts.phi_kernel().generators(), expect.generators());

    let x = PresentedRing::polynomial_ring(vec!["x"]).unwrap();
    let id = make_morphism(x.clone(), x.clone(), vec![x.var(0)]).unwrap();
    let ts = tensor_square(&id).unwrap();
    assert_eq!(ts.phi_kernel().generators(), &[ts.ring().element("x_1 - x_2").unwrap()]);

    let ts = tensor_square(&node_morphism()).unwrap();
    assert_eq!(ts.phi_kernel().generators().len(), 2);
    assert_eq!(ts.phi_kernel().generators()[1], ts.ring().element("x_1*y_1 - x_2*y_2").unwrap());
    assert_eq!(ts.ring().defining().generators().len(), 4);
}

#[test]
fn diff_element_examples() {
    let m = y4x5_morphism();
    let ts = tensor_square(&m).unwrap();
    let y = m.target().var(0);
    assert_eq!(ts.diff_element(&y), ts.ring().element("y_1 - y_2").unwrap());
    assert!(ts.diff_element(&Polynomial::constant(1, MonomialOrder::GrevLex, int(7))).is_zero());
    assert_eq!(ts.diff_element(&y.pow(6)), ts.ring().element("y_1^6 - y_2^6").unwrap());
}

#[test]
fn swap_fixes_defining_and_negates_kernel_generators() {
    let ts = tensor_square(&node_morphism()).unwrap();
    let swapped = Ideal::from_generators(
        6,
        ts.ring().defining().generators().iter().map(|g| ts.swap(g)).collect(),
    );
    assert!(ideal_equal(&swapped, ts.ring().defining()).unwrap());
    for g in ts.phi_kernel().generators() {
        assert_eq!(ts.swap(g), -g);
    }
}

#[test]
fn preimage_finds_pulled_back_elements() {
    let m = node_morphism();
    let b = m.target();
    let pre = m.preimage(&b.element("x^2*y + x").unwrap()).unwrap().unwrap();
    assert_eq!(m.pull(&pre).unwrap(), b.element("x^2*y + x").unwrap());
    assert!(m.preimage(&b.element("y").unwrap()).unwrap().is_none());
}

#[test]
fn adjoining_an_element_extends_the_source() {
    let m = y4x5_morphism();
    let y6 = m.target().element("y^6").unwrap();
    let ext = m.adjoin_to_source("w", &y6).unwrap();
    assert_eq!(ext.source().nvars(), 3);
    assert!(ext.is_dominant().unwrap());
    // w² = y¹² = x³ must hold in the new source
    let rel = ext.source().element("w^2 - x^3").unwrap();
    assert!(ext.source().is_zero(&rel).unwrap());
}

#[test]
fn free_variable_extension_stays_well_defined() {
    let m = node_morphism().with_free_variable("s").unwrap();
    assert_eq!(m.source().names(), &["x", "y", "s"]);
    assert_eq!(m.images()[2], m.target().var(3));
    assert!(m.is_dominant().unwrap());
}

#[test]
fn composition_preserves_well_definedness() {
    let m = node_morphism();
    let b = m.target().clone();
    let c = PresentedRing::polynomial_ring(vec!["t"]).unwrap();
    let id = make_morphism(b.clone(), b.clone(), (0..3).map(|i| b.var(i)).collect()).unwrap();
    let comp = m.compose(&id).unwrap();
    assert_eq!(comp.images(), m.images());
    let cusp = PresentedRing::parse(&["x", "y"], &["y^2 - x^3"]).unwrap();
    let par = make_morphism(cusp, c.clone(), vec![c.element("t^2").unwrap(), c.element("t^3").unwrap()]).unwrap();
    let sq = make_morphism(c.clone(), c.clone(), vec![c.element("t^2").unwrap()]).unwrap();
    let comp = par.compose(&sq).unwrap();
    assert_eq!(comp.images()[1], c.element("t^6").unwrap());
}

fn arb_target(nvars: usize) -> impl Strategy<Value = Polynomial> {
    let term = (proptest::collection::vec(0u32..=2, nvars), -3i64..=3);
    proptest::collection::vec(term, 1..4).prop_map(move |ts| {
        Polynomial::from_terms(
            nvars,
            MonomialOrder::GrevLex,
            ts.into_iter().map(|(e, c)| (crate::poly::Monomial::new(e), int(c))),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn diff_is_a_derivation(p in arb_target(3), q in arb_target(3)) {
        let ts = tensor_square(&node_morphism()).unwrap();
        let def = ts.ring().defining();
        let lhs = ts.diff_element(&(&p * &q));
        let rhs = &(&ts.diff_element(&p) * &ts.first(&q)) + &(&ts.second(&p) * &ts.diff_element(&q));
        prop_assert!(def.contains(&(&lhs - &rhs)).unwrap());
        let sum = &ts.diff_element(&(&p + &q)) - &(&ts.diff_element(&p) + &ts.diff_element(&q));
        prop_assert!(sum.is_zero());
    }
}
