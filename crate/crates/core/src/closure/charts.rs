//! Affine charts of the blow-up of an ideal.

use super::ClosureError;
use crate::ideal::Ideal;
use crate::poly::{MonomialOrder, Polynomial};
use crate::variety::{make_morphism, PresentedRing, RingMorphism};

const ORDER: MonomialOrder = MonomialOrder::GrevLex;

fn fresh_name(taken: &[String], base: String) -> String {
    let mut name = base;
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

/// Chart `i` of the blow-up of `⟨p_1, …, p_n⟩` on `A`: variables of `A`
/// plus `u_j` for `j ≠ i`, relations `p_j − u_j p_i`, saturated by `p_i`.
pub fn blowup_charts(a: &PresentedRing, generators: &[Polynomial]) -> Result<Vec<PresentedRing>, ClosureError> {
    for (k, p) in generators.iter().enumerate() {
        if a.is_zero(p)? {
            return Err(ClosureError::ZeroGenerator(k));
        }
    }
    let n = a.nvars();
    let mut charts = Vec::with_capacity(generators.len());
    for (i, pi) in generators.iter().enumerate() {
        let others: Vec<usize> = (0..generators.len()).filter(|&j| j != i).collect();
        let total = n + others.len();
        let mut names = a.names().to_vec();
        for j in &others {
            let name = fresh_name(&names, format!("u{}", j + 1));
            names.push(name);
        }
        let map: Vec<usize> = (0..n).collect();
        let lift = |p: &Polynomial| p.embed(total, &map, ORDER);
        let mut rels: Vec<Polynomial> = a.defining().nonzero_generators().iter().map(lift).collect();
        let pi_up = lift(pi);
        for (slot, &j) in others.iter().enumerate() {
            let u = Polynomial::var(total, ORDER, n + slot);
            rels.push(&lift(&generators[j]) - &(&u * &pi_up));
        }
        let sat = Ideal::new(total, ORDER, rels)?.saturate(&pi_up)?;
        charts.push(PresentedRing::new_unchecked(names, sat.nonzero_generators().to_vec())?);
    }
    Ok(charts)
}

/// The structure map `A → chart`.
pub fn chart_morphism(a: &PresentedRing, chart: &PresentedRing) -> Result<RingMorphism, ClosureError> {
    let images = (0..a.nvars()).map(|k| chart.var(k)).collect();
    Ok(make_morphism(a.clone(), chart.clone(), images)?)
}

/// `p ∈ p_i · chart`. A `false` on a chart that is not normal is inconclusive
/// for the normalized chart.
pub fn chart_member(
    p: &Polynomial,
    generators: &[Polynomial],
    chart: &PresentedRing,
    i: usize,
) -> Result<bool, ClosureError> {
    let total = chart.nvars();
    let map: Vec<usize> = (0..p.nvars()).collect();
    let pi = generators.get(i).ok_or(ClosureError::ZeroGenerator(i))?;
    let ideal = chart.defining().with_generator(pi.embed(total, &map, ORDER))?;
    Ok(ideal.contains(&p.embed(total, &map, ORDER))?)
}
