//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Criterion 5 contains a sub-check on a certificate whose stated data is
//! wrong (the relation fails on the diagonal × diagonal component). That
//! sub-check is reported as FAIL and listed in `KNOWN_FAILURES`; the run
//! aborts only on unexpected failures or if a known failure starts passing.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lipsat::arc::{Arc, SeriesOrder};
use lipsat::closure::{
    arc_refute, certificate_search, element_integral, newton_member, point_witness, subring_integral,
    verify_certificate, Combo, IntegralCertificate,
};
use lipsat::corpus::{self, Example};
use lipsat::ideal::ideal_member;
use lipsat::lipschitz::{chain_report, lipschitz_member, saturation_member};
use lipsat::rational::int;
use lipsat::sampler::{sample_lipschitz_ratio, EpsilonLadder, VerdictHint};
use lipsat::{Certificate, Ideal, MembershipVerdict, Monomial, MonomialOrder, Polynomial, SaturationQuery, SearchBounds, Witness};

const KNOWN_FAILURES: &[&str] = &["5a"];

struct Outcome {
    id: &'static str,
    title: &'static str,
    pass: bool,
    detail: String,
    elapsed: Duration,
    budget: Duration,
}

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<E: std::fmt::Debug>(err: E) -> String {
    format!("{err:?}")
}

fn run(id: &'static str, title: &'static str, budget_s: u64, f: impl FnOnce() -> Check) -> Outcome {
    let start = Instant::now();
    let res = f();
    let elapsed = start.elapsed();
    let budget = Duration::from_secs(budget_s);
    let (mut pass, mut detail) = match res {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if pass && elapsed > budget {
        pass = false;
        detail = format!("{detail}; over budget");
    }
    Outcome { id, title, pass, detail, elapsed, budget }
}

fn query(ex: &Example, name: &str) -> SaturationQuery {
    SaturationQuery::from_example(ex, name)
}

fn proved_degree(v: &MembershipVerdict) -> Option<u32> {
    match v {
        MembershipVerdict::Proved { certificate } => Some(certificate.degree()),
        _ => None,
    }
}

fn criterion1() -> Check {
    let ex = corpus::node_minus_point();
    let ts = ex.morphism.tensor().map_err(e)?;
    let ideal = ts.kernel_with_defining();
    let mut out = Vec::new();
    for name in ["fy", "fz"] {
        let z = ts.diff_element(&ex.element(name).value);
        ensure(ideal_member(&z, ideal).map_err(e)?.0, format!("{name}: difference not in the kernel ideal"))?;
        let v = lipschitz_member(&query(&ex, name)).map_err(e)?;
        ensure(proved_degree(&v) == Some(1), format!("{name}: {}", v.label()))?;
        out.push(format!("{} proved n=1", ex.morphism.target().show(&ex.element(name).value)));
    }
    Ok(out.join(", "))
}

fn criterion2() -> Check {
    let ex = corpus::node_normalization();
    let out = saturation_member(&query(&ex, "fy")).map_err(e)?;
    ensure(!out.member, "saturation_member(y) is true")?;
    let ts = ex.morphism.tensor().map_err(e)?;
    let z = ts.diff_element(&ex.element("fy").value);
    let pt = vec![int(0), int(1), int(0), int(-1)];
    let w = point_witness(&z, ts.phi_kernel(), ts.ring().defining(), &pt).map_err(e)?.ok_or("no witness at (0,1,0,-1)")?;
    ensure(w.generator_values.iter().all(|g| *g == int(0)), "generator nonzero at the witness")?;
    ensure(w.target_value == int(2), format!("target value {}", w.target_value))?;
    ensure(out.witness.as_ref().map(|w| &w.point) == Some(&pt), "engine reported a different witness")?;
    Ok("saturation false, witness (0,1,0,-1), generators 0, target 2".into())
}

fn criterion3() -> Check {
    let ex = corpus::y4_x5();
    let ts = ex.morphism.tensor().map_err(e)?;
    let v = lipschitz_member(&query(&ex, "f6")).map_err(e)?;
    let cert = match &v {
        MembershipVerdict::Proved { certificate: Certificate::IdealClosure(c) } => c.clone(),
        other => return Err(format!("{}", other.label())),
    };
    ensure(cert.n == 1, format!("n = {}", cert.n))?;
    let z = ts.diff_element(&ex.element("f6").value);
    ensure(verify_certificate(&z, ts.phi_kernel(), ts.ring().defining(), &cert).map_err(e)?, "certificate rejected")?;
    // (y1+y2)(y1^5-y2^5) - y1 y2 (y1^4-y2^4)
    let r = ts.ring();
    let identity = r.element("(y_1 + y_2)*(y_1^5 - y_2^5) - y_1*y_2*(y_1^4 - y_2^4)").map_err(e)?;
    ensure(&identity - &z == Polynomial::zero(z.nvars(), z.order()), "factorization identity")?;
    Ok("proved n=1, certificate re-verified, factorization identity holds".into())
}

fn criterion4() -> Check {
    let ex = corpus::y4_x5();
    let q = query(&ex, "f1");
    let v = lipschitz_member(&q).map_err(e)?;
    let w = match &v {
        MembershipVerdict::Refuted { witness: Witness::Arc(w) } => w.clone(),
        other => return Err(format!("not arc-refuted: {}", other.label())),
    };
    ensure(w.arc.describe() == "(t, 0)", format!("arc {}", w.arc.describe()))?;
    ensure(
        (w.target_order, w.ideal_order) == (SeriesOrder::Finite(1), SeriesOrder::Finite(4)),
        format!("orders ({}, {})", w.target_order, w.ideal_order),
    )?;
    let r = chain_report(&q).map_err(e)?;
    ensure(r.in_saturation, "saturation false")?;
    ensure(proved_degree(&r.integral_over_a) == Some(4), format!("integrality {}", r.integral_over_a.label()))?;
    // z^4 - x∘π = 0 directly in B
    let rel = subring_integral(&ex.morphism, &q.element, SearchBounds::default()).map_err(e)?.ok_or("no relation")?;
    let x = ex.morphism.source().element("x").map_err(e)?;
    let zero = Polynomial::zero(2, MonomialOrder::GrevLex);
    ensure(rel.n == 4 && rel.coefficients[..3].iter().all(Polynomial::is_zero) && &rel.coefficients[3] + &x == zero, "relation is not z^4 - x")?;
    Ok("refuted by arc (t, 0), orders (1, 4); saturation true; integral n=4 (z^4 - x)".into())
}

fn combo(c: &Polynomial, gens: &[usize]) -> Combo {
    Combo { cofactor: c.clone(), generators: gens.to_vec() }
}

/// Stated data: a = gΔy + Δx, b = gΔxΔy with g = e⊗1 − 1⊗e.
fn criterion5a() -> Check {
    let ex = corpus::triple_line();
    let ts = ex.morphism.tensor().map_err(e)?;
    let z = ts.diff_element(&ex.element("f").value);
    let g = ts.diff_element(&ex.element("h").value);
    let one = Polynomial::one(z.nvars(), z.order());
    let stated = IntegralCertificate {
        n: 2,
        coefficient_combos: vec![vec![combo(&g, &[1]), combo(&one, &[0])], vec![combo(&g, &[0, 1])]],
    };
    let ok = verify_certificate(&z, ts.phi_kernel(), ts.ring().defining(), &stated).map_err(e)?;
    ensure(ok, "stated (a, b) rejected: the relation is nonzero on the diagonal × diagonal component")?;
    Ok("stated (a, b) accepted".into())
}

fn criterion5b() -> Check {
    let ex = corpus::triple_line();
    let ts = ex.morphism.tensor().map_err(e)?;
    let z = ts.diff_element(&ex.element("f").value);
    let (i, d) = (ts.phi_kernel(), ts.ring().defining());
    let cert = certificate_search(&z, i, d, SearchBounds::default()).map_err(e)?.ok_or("no certificate found")?;
    ensure(cert.n <= 2, format!("n = {}", cert.n))?;
    ensure(verify_certificate(&z, i, d, &cert).map_err(e)?, "found certificate rejected")?;
    let g = ts.diff_element(&ex.element("h").value);
    let g2 = &g * &g;
    let one = Polynomial::one(z.nvars(), z.order());
    let corrected = IntegralCertificate {
        n: 2,
        coefficient_combos: vec![vec![combo(&-&g2, &[1]), combo(&-&one, &[0])], vec![combo(&g2, &[0, 1])]],
    };
    ensure(verify_certificate(&z, i, d, &corrected).map_err(e)?, "corrected data rejected")?;
    Ok(format!("search found n={}; a = -(g²Δy + Δx), b = g²ΔxΔy verifies", cert.n))
}

fn criterion6() -> Check {
    let ex = corpus::node_normalization();
    let (num, den) = ex.element("fy").representation.clone().ok_or("no representation")?;
    let a = ex.morphism.source();
    let v = element_integral(&num, &den, a.defining(), SearchBounds::default()).map_err(e)?;
    let cert = match &v {
        MembershipVerdict::Proved { certificate: Certificate::IdealClosure(c) } => c.clone(),
        other => return Err(other.label().into()),
    };
    ensure(cert.n == 2, format!("n = {}", cert.n))?;
    let rel = cert.relation(&num, std::slice::from_ref(&den)).map_err(e)?;
    ensure(a.is_zero(&rel).map_err(e)?, "relation not in the defining ideal")?;
    // in B the fraction is y and satisfies y² − x − 1
    let b = ex.morphism.target();
    ensure(b.is_zero(&b.element("y^2 - x - 1").map_err(e)?).map_err(e)?, "f² − x − 1 ≠ 0")?;
    Ok(format!("proved n=2, relation {} ∈ defining ideal", a.show(&rel)))
}

fn random_monomial(rng: &mut ChaCha8Rng, n: usize) -> Vec<u32> {
    (0..n).map(|_| rng.gen_range(0..=4)).collect()
}

fn weight_arcs(n: usize, max_w: u32) -> Vec<Arc> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w: Vec<u32>| (1..=max_w).map(move |k| [w.clone(), vec![k]].concat()))
            .collect();
    }
    out.iter().map(|w| Arc::monomial(w, 128)).collect()
}

struct MonomialCase {
    ideal: Ideal,
    target: Monomial,
}

fn monomial_cases(count: usize) -> Vec<MonomialCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.gen_range(1..=3);
        let r = rng.gen_range(1..=3);
        let gens: Vec<Vec<u32>> = (0..r).map(|_| random_monomial(&mut rng, n)).collect();
        if gens.iter().any(|g| g.iter().all(|&x| x == 0)) {
            continue;
        }
        let polys = gens.iter().map(|g| Polynomial::monomial(Monomial::new(g.clone()), int(1), MonomialOrder::GrevLex)).collect();
        out.push(MonomialCase { ideal: Ideal::from_generators(n, polys), target: Monomial::new(random_monomial(&mut rng, n)) });
    }
    out
}

#[derive(Default)]
struct MonomialTally {
    cases: usize,
    proved: usize,
    refuted: usize,
    unknown: usize,
    contradictions: usize,
    both: usize,
}

fn monomial_suite() -> Result<MonomialTally, String> {
    let bounds = SearchBounds::new(6, 8).map_err(e)?;
    let mut t = MonomialTally::default();
    for case in monomial_cases(200) {
        let n = case.target.nvars();
        let truth = newton_member(&case.target, &case.ideal).map_err(e)?;
        let z = Polynomial::monomial(case.target.clone(), int(1), MonomialOrder::GrevLex);
        let d = Ideal::zero(n, MonomialOrder::GrevLex);
        let refuted = arc_refute(&z, &case.ideal, &d, &weight_arcs(n, 6)).map_err(e)?.is_some();
        // the prover runs regardless, so the two engines are compared head to head
        let proved = certificate_search(&z, &case.ideal, &d, bounds).map_err(e)?.is_some();
        t.cases += 1;
        if proved && refuted {
            t.both += 1;
        }
        if (proved && !truth) || (refuted && truth) {
            t.contradictions += 1;
        }
        match (proved, refuted) {
            (true, _) => t.proved += 1,
            (false, true) => t.refuted += 1,
            _ => t.unknown += 1,
        }
    }
    Ok(t)
}

fn criterion7(t: &MonomialTally) -> Check {
    let summary = format!(
        "{} cases: {} proved, {} refuted, {} unknown, {} contradictions",
        t.cases, t.proved, t.refuted, t.unknown, t.contradictions
    );
    ensure(t.cases >= 200, format!("only {} cases", t.cases))?;
    ensure(t.contradictions == 0, summary.clone())?;
    ensure(t.unknown * 20 <= t.cases, format!("{summary}; residual unknown above 5%"))?;
    Ok(summary)
}

/// Every corpus element plus the first pulled-back coordinate.
fn corpus_queries() -> Vec<(String, SaturationQuery)> {
    let mut out = Vec::new();
    for ex in corpus::all() {
        for el in &ex.elements {
            out.push((format!("{}/{}", ex.name, el.name), query(&ex, &el.name)));
        }
        let x = ex.morphism.images()[0].clone();
        let q = SaturationQuery { branches: ex.branches.clone(), ..SaturationQuery::new(ex.morphism.clone(), x) };
        out.push((format!("{}/π*x", ex.name), q));
    }
    for k in 1..=8 {
        let ex = corpus::y4_x5();
        let b = ex.morphism.target().element(&format!("y^{k}")).unwrap();
        out.push((format!("y4-x5/y^{k}"), query(&ex, "f1").with_element(b)));
    }
    for k in 1..=4 {
        let ex = corpus::cusp();
        let b = ex.morphism.target().element(&format!("t^{k}")).unwrap();
        out.push((format!("cusp/t^{k}"), query(&ex, "ft").with_element(b)));
    }
    out
}

fn criterion8(monomial: &MonomialTally) -> Check {
    let mut checked = 0;
    for (name, q) in corpus_queries() {
        let ts = q.morphism.tensor().map_err(e)?;
        let z = q.target().map_err(e)?;
        let (i, d) = (ts.phi_kernel(), ts.ring().defining());
        // each engine on its own, not short-circuited
        let proved = certificate_search(&z, i, d, q.bounds).map_err(e)?.is_some();
        let arc_ref = match arc_refute(&z, i, d, &q.arc_family().map_err(e)?) {
            Ok(w) => w.is_some(),
            Err(lipsat::closure::ClosureError::TruncationInsufficient { .. }) => false,
            Err(err) => return Err(format!("{name}: {err}")),
        };
        let sat = saturation_member(&q).map_err(e)?;
        let refuted = arc_ref || !sat.member;
        ensure(!(proved && refuted), format!("{name}: both proved and refuted"))?;
        let verdict = lipschitz_member(&q).map_err(e)?;
        ensure(!verdict.is_proved() || sat.member, format!("{name}: Lipschitz member outside the saturation"))?;
        chain_report(&q).map_err(|err| format!("{name}: {err}"))?;
        checked += 1;
    }
    ensure(monomial.both == 0, format!("{} monomial cases both proved and refuted", monomial.both))?;
    Ok(format!("{checked} corpus queries and {} monomial cases, 0 violations", monomial.cases))
}

fn criterion9() -> Check {
    let mut kept = 0;
    for ex in corpus::all() {
        let mut names: Vec<String> = ex.elements.iter().map(|el| el.name.clone()).collect();
        names.sort();
        let proved: Vec<&String> = names
            .iter()
            .filter(|n| lipschitz_member(&query(&ex, n)).map(|v| v.is_proved()).unwrap_or(false))
            .collect();
        for adj in &proved {
            let b = ex.element(adj).value.clone();
            let m2 = ex.morphism.adjoin_to_source("w_adj", &b).map_err(e)?;
            for other in &proved {
                let mut q = query(&ex, other);
                q.morphism = m2.clone();
                q.representation = None;
                let v = lipschitz_member(&q).map_err(e)?;
                ensure(v.is_proved(), format!("{}: {other} lost after adjoining {adj}", ex.name))?;
                kept += 1;
            }
        }
    }
    Ok(format!("{kept} re-run verdicts, 0 regressions"))
}

fn criterion10() -> Check {
    let ex = corpus::y4_x5();
    let ladder = EpsilonLadder::default();
    let r1 = sample_lipschitz_ratio(&query(&ex, "f1"), &ex.branches, &ladder).map_err(e)?;
    ensure(r1.verdict_hint == VerdictHint::Diverging, format!("y: {:?}", r1.verdict_hint))?;
    ensure((r1.growth_exponent_estimate - 3.0).abs() <= 0.5, format!("exponent {:.3}", r1.growth_exponent_estimate))?;
    let r6 = sample_lipschitz_ratio(&query(&ex, "f6"), &ex.branches, &ladder).map_err(e)?;
    ensure(r6.verdict_hint == VerdictHint::Bounded, format!("y^6: {:?}", r6.verdict_hint))?;
    Ok(format!("y diverging, exponent {:.3}; y^6 bounded", r1.growth_exponent_estimate))
}

fn main() {
    // a filter argument (from `cargo test <name>`) that does not mention
    // acceptance skips the run
    let args: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    if !args.is_empty() && !args.iter().any(|a| "acceptance".contains(a.as_str())) {
        return;
    }
    let mut results = vec![
        run("1", "node minus point: y, z degree-one members", 10, criterion1),
        run("2", "node normalization: saturation refuted by point", 5, criterion2),
        run("3", "y⁴−x⁵: y⁶ proved at n = 1", 5, criterion3),
        run("4", "y⁴−x⁵: y refuted by arc, in seminormalization", 5, criterion4),
        run("5a", "triple line: stated certificate verifies", 60, criterion5a),
        run("5b", "triple line: search finds n ≤ 2", 60, criterion5b),
        run("6", "node: y/x integral with n = 2", 5, criterion6),
    ];
    let start = Instant::now();
    let tally = monomial_suite();
    let suite_time = start.elapsed();
    let tally = match tally {
        Ok(t) => t,
        Err(err) => {
            println!("monomial suite error: {err}");
            MonomialTally::default()
        }
    };
    let mut r7 = run("7", "monomial oracle equivalence", 600, || criterion7(&tally));
    r7.elapsed += suite_time;
    if r7.elapsed > r7.budget {
        r7.pass = false;
    }
    results.push(r7);
    results.push(run("8", "soundness exclusion and chain", 600, || criterion8(&tally)));
    results.push(run("9", "idempotence", 300, criterion9));
    results.push(run("10", "sampler concordance", 30, criterion10));

    let mut unexpected = Vec::new();
    for r in &results {
        let known = KNOWN_FAILURES.contains(&r.id);
        let tag = match (r.pass, known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
        };
        println!(
            "criterion {:<3} {:<13} {} [{:.2}s / {}s] {}",
            r.id,
            tag,
            r.title,
            r.elapsed.as_secs_f64(),
            r.budget.as_secs(),
            r.detail
        );
        if r.pass == known {
            unexpected.push(r.id);
        }
    }
    if !unexpected.is_empty() {
        println!("unexpected outcomes: {unexpected:?}");
        std::process::exit(1);
    }
}
