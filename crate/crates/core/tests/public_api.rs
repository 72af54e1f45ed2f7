use lipsat::{
    chain_report, corpus, lipschitz_member, make_morphism, saturation_member, seminormalization_member,
    MembershipVerdict, PresentedRing, SaturationQuery,
};

#[test]
fn readme_example_runs() {
    let ex = corpus::y4_x5();
    let q = SaturationQuery::from_example(&ex, "f6");
    assert!(lipschitz_member(&q).unwrap().is_proved());
}

#[test]
fn parabola_projection_from_text() {
    // t ↦ t²: t separates the two points of each fibre over x ≠ 0.
    let a = PresentedRing::parse(&["x"], &[]).unwrap();
    let b = PresentedRing::parse(&["t"], &[]).unwrap();
    let img = vec![b.element("t^2").unwrap()];
    let pi = make_morphism(a, b.clone(), img).unwrap();

    let t2 = SaturationQuery::new(pi.clone(), b.element("t^2").unwrap());
    let r = chain_report(&t2).unwrap();
    assert!(r.in_a && r.in_lipschitz.is_proved() && r.in_saturation);

    let t = SaturationQuery::new(pi, b.element("t").unwrap());
    assert!(!saturation_member(&t).unwrap().member);
    assert!(lipschitz_member(&t).unwrap().is_refuted());
    assert!(seminormalization_member(&t).unwrap().is_refuted());
}

#[test]
fn every_corpus_element_respects_the_chain() {
    for ex in corpus::all() {
        for e in &ex.elements {
            let q = SaturationQuery::from_example(&ex, &e.name);
            let r = chain_report(&q).unwrap_or_else(|err| panic!("{} {}: {err}", ex.name, e.name));
            if let MembershipVerdict::Proved { .. } = r.in_lipschitz {
                assert!(r.in_saturation, "{} {}", ex.name, e.name);
            }
        }
    }
}
