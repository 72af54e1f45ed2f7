//! Integral closure of ideals: bounded certificate search, valuative arc
//! refutation, point witnesses, the Newton polyhedron oracle for monomial
//! ideals, integrality of elements and blow-up charts.

mod charts;
mod integral;
mod linear;
mod newton;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

pub use charts::{blowup_charts, chart_member, chart_morphism};
pub use integral::{element_integral, subring_integral, SubringRelation};
pub use newton::{lp_feasible, newton_member, newton_weights};

use crate::arc::{check_arc, order_along, Arc, ArcError, SeriesOrder};
use crate::ideal::{Ideal, IdealError};
use crate::poly::{Monomial, MonomialOrder, Polynomial};
use crate::rational::{int, serde_rational, serde_rational_vec, Rational};
use crate::variety::VarietyError;

const ORDER: MonomialOrder = MonomialOrder::GrevLex;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ClosureError {
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Arc(#[from] ArcError),
    #[error(transparent)]
    Variety(#[from] VarietyError),
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
    #[error("truncation too low to decide along arc {arc}")]
    TruncationInsufficient { arc: String },
    #[error("generator {0} is not a monomial")]
    NonMonomialIdeal(usize),
    #[error("generator {0} is zero in the ring")]
    ZeroGenerator(usize),
    #[error("relation degree bound must be at least 1")]
    BadBounds,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBounds {
    pub max_relation_degree: u32,
    pub max_cofactor_degree: u32,
}

impl SearchBounds {
    pub fn new(max_relation_degree: u32, max_cofactor_degree: u32) -> Result<Self, ClosureError> {
        if max_relation_degree == 0 {
            return Err(ClosureError::BadBounds);
        }
        Ok(SearchBounds { max_relation_degree, max_cofactor_degree })
    }
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds { max_relation_degree: 4, max_cofactor_degree: 6 }
    }
}

/// One summand `cofactor · Π generators[k]` of a coefficient `a_i`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Combo {
    pub cofactor: Polynomial,
    /// Multiset of generator indices, nondecreasing; its size is `i`.
    pub generators: Vec<usize>,
}

/// `z^n + Σ a_i z^{n−i} = 0` with `a_i ∈ I^i` given as combos.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegralCertificate {
    pub n: u32,
    pub coefficient_combos: Vec<Vec<Combo>>,
}

impl IntegralCertificate {
    /// `n = 1` from cofactors `c_k` with `z = Σ c_k g_k` modulo the ambient.
    pub fn degree_one(cofactors: &[Polynomial]) -> IntegralCertificate {
        let combos = cofactors
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| Combo { cofactor: -c, generators: vec![k] })
            .collect();
        IntegralCertificate { n: 1, coefficient_combos: vec![combos] }
    }

    /// `a_i` expanded, `i` starting at 1.
    pub fn coefficient(&self, i: usize, generators: &[Polynomial], nvars: usize) -> Result<Polynomial, ClosureError> {
        let mut acc = Polynomial::zero(nvars, ORDER);
        for combo in &self.coefficient_combos[i - 1] {
            if combo.generators.len() != i {
                return Err(ClosureError::MalformedCertificate(format!(
                    "a_{i} uses a product of {} generators",
                    combo.generators.len()
                )));
            }
            if combo.cofactor.nvars() != nvars {
                return Err(ClosureError::MalformedCertificate(format!("cofactor of a_{i} has wrong arity")));
            }
            let mut term = combo.cofactor.with_order(ORDER);
            for &k in &combo.generators {
                let g = generators.get(k).ok_or_else(|| {
                    ClosureError::MalformedCertificate(format!("generator index {k} out of range"))
                })?;
                term = &term * &g.with_order(ORDER);
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// The polynomial `z^n + Σ a_i z^{n−i}`.
    pub fn relation(&self, z: &Polynomial, generators: &[Polynomial]) -> Result<Polynomial, ClosureError> {
        if self.n == 0 || self.coefficient_combos.len() != self.n as usize {
            return Err(ClosureError::MalformedCertificate(format!(
                "{} coefficient lists for degree {}",
                self.coefficient_combos.len(),
                self.n
            )));
        }
        let z = z.with_order(ORDER);
        let mut acc = z.pow(self.n);
        for i in 1..=self.n as usize {
            let a = self.coefficient(i, generators, z.nvars())?;
            acc = &acc + &(&a * &z.pow(self.n - i as u32));
        }
        Ok(acc)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArcWitness {
    pub arc: Arc,
    pub target_order: SeriesOrder,
    pub ideal_order: SeriesOrder,
    /// `ideal_order − target_order`, infinite when the ideal pulls back to 0.
    pub margin: SeriesOrder,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointWitness {
    #[serde(with = "serde_rational_vec")]
    pub point: Vec<Rational>,
    #[serde(with = "serde_rational_vec")]
    pub generator_values: Vec<Rational>,
    #[serde(with = "serde_rational")]
    pub target_value: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Arc(ArcWitness),
    Point(PointWitness),
    /// The target is not in the radical of the ideal (Rabinowitsch test).
    Radical,
    /// Non-integrality asserted by the caller.
    Declared { reason: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    IdealClosure(IntegralCertificate),
    Subring(SubringRelation),
    /// Both halves of a combined predicate.
    Pair { integral: Box<Certificate>, closure: Box<Certificate> },
}

impl Certificate {
    pub fn degree(&self) -> u32 {
        match self {
            Certificate::IdealClosure(c) => c.n,
            Certificate::Subring(r) => r.n,
            Certificate::Pair { closure, .. } => closure.degree(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum MembershipVerdict {
    Proved { certificate: Certificate },
    Refuted { witness: Witness },
    Unknown { bounds: SearchBounds, arcs_tried: usize },
}

impl MembershipVerdict {
    pub fn is_proved(&self) -> bool {
        matches!(self, MembershipVerdict::Proved { .. })
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, MembershipVerdict::Refuted { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            MembershipVerdict::Proved { .. } => "proved",
            MembershipVerdict::Refuted { .. } => "refuted",
            MembershipVerdict::Unknown { .. } => "unknown",
        }
    }
}

fn check_ambient(z: &Polynomial, ideal: &Ideal, defining: &Ideal) -> Result<(), ClosureError> {
    let n = z.nvars();
    for m in [ideal.nvars(), defining.nvars()] {
        if m != n {
            return Err(IdealError::AmbientMismatch { left: n, right: m }.into());
        }
    }
    Ok(())
}

/// Nondecreasing index vectors of length `size` over `0..r`.
pub(crate) fn multisets(r: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(size);
    fn rec(r: usize, size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for k in start..r {
            cur.push(k);
            rec(r, size, k, cur, out);
            cur.pop();
        }
    }
    rec(r, size, 0, &mut cur, &mut out);
    out
}

/// Monomials of degree at most `d` not divisible by any leading monomial of
/// the basis of `defining`.
pub(crate) fn standard_monomials(defining: &Ideal, d: u32) -> Vec<Monomial> {
    let leads: Vec<Monomial> = defining
        .groebner()
        .elements()
        .iter()
        .filter_map(|g| g.leading_monomial().cloned())
        .collect();
    Monomial::up_to_degree(defining.nvars(), d)
        .into_iter()
        .filter(|m| !leads.iter().any(|l| l.divides(m)))
        .collect()
}

/// A linear system in unknowns `x_j` attached to labelled columns, with
/// duplicate and zero columns removed.
pub(crate) struct ColumnSystem<L> {
    columns: Vec<Vec<(Monomial, Rational)>>,
    labels: Vec<L>,
    seen: HashMap<Vec<(Monomial, Rational)>, usize>,
}

impl<L> ColumnSystem<L> {
    pub(crate) fn new() -> Self {
        ColumnSystem { columns: Vec::new(), labels: Vec::new(), seen: HashMap::new() }
    }

    pub(crate) fn push(&mut self, column: &Polynomial, label: L) {
        if column.is_zero() {
            return;
        }
        let key = column.terms().to_vec();
        if self.seen.contains_key(&key) {
            return;
        }
        self.seen.insert(key.clone(), self.columns.len());
        self.columns.push(key);
        self.labels.push(label);
    }

    /// Solves `Σ x_j column_j = rhs`; returns labelled nonzero unknowns.
    pub(crate) fn solve(self, rhs: &Polynomial) -> Option<Vec<(L, Rational)>> {
        let x = linear::solve(&self.columns, rhs.terms())?;
        Some(self.labels.into_iter().zip(x).filter(|(_, v)| !num_traits::Zero::is_zero(v)).collect())
    }
}

/// Searches `a_i ∈ I^i`, `i ≤ n ≤ n_max`, with `z^n + Σ a_i z^{n−i} ∈ D`.
/// Degree 1 is exact membership in `I + D`; higher degrees solve a linear
/// system over cofactors of degree at most `d_max`. `None` means nothing
/// was found within the bounds.
pub fn certificate_search(
    z: &Polynomial,
    ideal: &Ideal,
    defining: &Ideal,
    bounds: SearchBounds,
) -> Result<Option<IntegralCertificate>, ClosureError> {
    check_ambient(z, ideal, defining)?;
    if bounds.max_relation_degree == 0 {
        return Err(ClosureError::BadBounds);
    }
    let nv = z.nvars();
    let z = z.with_order(ORDER);
    let defining = defining.with_order(ORDER);
    let gens: Vec<Polynomial> = ideal.nonzero_generators().iter().map(|g| g.with_order(ORDER)).collect();
    let r = gens.len();

    let joint_gens: Vec<Polynomial> = gens.iter().chain(defining.nonzero_generators()).cloned().collect();
    let joint = Ideal::new(nv, ORDER, joint_gens)?;
    if defining.contains(&z)? {
        return Ok(Some(IntegralCertificate::degree_one(&[])));
    }
    if let Some(cof) = joint.lift(&z)? {
        let cert = IntegralCertificate::degree_one(&cof[..r.min(cof.len())]);
        return Ok(Some(cert));
    }

    let nf = |p: &Polynomial| defining.groebner().reduce(p);
    let monomials = standard_monomials(&defining, bounds.max_cofactor_degree);
    let mut zpow = vec![Polynomial::one(nv, ORDER)];
    let mut products: HashMap<Vec<usize>, Polynomial> = HashMap::new();
    products.insert(Vec::new(), Polynomial::one(nv, ORDER));
    let one = int(1);
    for n in 1..=bounds.max_relation_degree as usize {
        let next = nf(&(&zpow[n - 1] * &z));
        zpow.push(next);
        if n == 1 {
            continue;
        }
        let mut system = ColumnSystem::new();
        for i in 1..=n {
            for ms in multisets(r, i) {
                let prod = match products.get(&ms) {
                    Some(p) => p.clone(),
                    None => {
                        let p = nf(&(&products[&ms[..i - 1].to_vec()] * &gens[ms[i - 1]]));
                        products.insert(ms.clone(), p.clone());
                        p
                    }
                };
                let q = nf(&(&prod * &zpow[n - i]));
                if q.is_zero() {
                    continue;
                }
                for m in &monomials {
                    system.push(&nf(&q.mul_term(m, &one)), (i, ms.clone(), m.clone()));
                }
            }
        }
        let rhs = -&zpow[n];
        if let Some(sol) = system.solve(&rhs) {
            let cert = assemble(n, sol);
            if verify_certificate(&z, ideal, &defining, &cert)? {
                return Ok(Some(cert));
            }
        }
    }
    Ok(None)
}

fn assemble(n: usize, sol: Vec<((usize, Vec<usize>, Monomial), Rational)>) -> IntegralCertificate {
    let mut groups: Vec<Vec<(Vec<usize>, Polynomial)>> = vec![Vec::new(); n];
    for ((i, ms, m), c) in sol {
        let list = &mut groups[i - 1];
        let term = Polynomial::monomial(m, c, ORDER);
        match list.iter_mut().find(|(k, _)| *k == ms) {
            Some((_, p)) => *p = &*p + &term,
            None => list.push((ms, term)),
        }
    }
    let coefficient_combos = groups
        .into_iter()
        .map(|g| {
            g.into_iter()
                .filter(|(_, p)| !p.is_zero())
                .map(|(generators, cofactor)| Combo { cofactor: cofactor.with_order(ORDER), generators })
                .collect()
        })
        .collect();
    IntegralCertificate { n: n as u32, coefficient_combos }
}

/// Re-checks a certificate from scratch: structure, then the relation
/// modulo the ambient defining ideal.
pub fn verify_certificate(
    z: &Polynomial,
    ideal: &Ideal,
    defining: &Ideal,
    cert: &IntegralCertificate,
) -> Result<bool, ClosureError> {
    check_ambient(z, ideal, defining)?;
    let rel = cert.relation(z, ideal.nonzero_generators())?;
    Ok(defining.contains(&rel.with_order(defining.order()))?)
}

/// Checks a candidate point: every ambient and ideal generator vanishes and
/// the target does not.
pub fn point_witness(
    z: &Polynomial,
    ideal: &Ideal,
    defining: &Ideal,
    point: &[Rational],
) -> Result<Option<PointWitness>, ClosureError> {
    check_ambient(z, ideal, defining)?;
    let eval = |p: &Polynomial| p.evaluate(point).map_err(|e| ClosureError::Variety(e.into()));
    for g in defining.nonzero_generators() {
        if !num_traits::Zero::is_zero(&eval(g)?) {
            return Ok(None);
        }
    }
    let mut values = Vec::new();
    for g in ideal.nonzero_generators() {
        let v = eval(g)?;
        if !num_traits::Zero::is_zero(&v) {
            return Ok(None);
        }
        values.push(v);
    }
    let target_value = eval(z)?;
    if num_traits::Zero::is_zero(&target_value) {
        return Ok(None);
    }
    Ok(Some(PointWitness { point: point.to_vec(), generator_values: values, target_value }))
}

fn min_order(a: SeriesOrder, b: SeriesOrder) -> SeriesOrder {
    use SeriesOrder::*;
    match (a, b) {
        (Infinite, o) | (o, Infinite) => o,
        (Finite(x), Finite(y)) => Finite(x.min(y)),
        (Finite(x), AtLeast(h)) | (AtLeast(h), Finite(x)) => {
            if x < h {
                Finite(x)
            } else {
                AtLeast(h)
            }
        }
        (AtLeast(x), AtLeast(y)) => AtLeast(x.min(y)),
    }
}

/// `Some(true)` when `target < ideal` is certain, `Some(false)` when it is
/// certainly false, `None` when truncation hides the answer.
fn strictly_below(target: SeriesOrder, ideal: SeriesOrder) -> Option<bool> {
    use SeriesOrder::*;
    match (target, ideal) {
        (Infinite, _) => Some(false),
        (Finite(a), Finite(b)) => Some(a < b),
        (Finite(_), Infinite) => Some(true),
        (Finite(a), AtLeast(h)) => (a < h).then_some(true),
        (AtLeast(h), Finite(b)) => (b <= h).then_some(false),
        (AtLeast(_), _) => None,
    }
}

/// Valuative refutation: the first arc along which `z` vanishes to lower
/// order than every generator of `I`. Arcs must lie on the ambient variety.
/// Truncation problems are reported only when no arc refutes.
pub fn arc_refute(
    z: &Polynomial,
    ideal: &Ideal,
    defining: &Ideal,
    arcs: &[Arc],
) -> Result<Option<ArcWitness>, ClosureError> {
    check_ambient(z, ideal, defining)?;
    let mut pending: Option<ClosureError> = None;
    for arc in arcs {
        check_arc(defining, arc)?;
        let target_order = order_along(z, arc.components(), defining)?;
        let mut ideal_order = SeriesOrder::Infinite;
        for g in ideal.nonzero_generators() {
            ideal_order = min_order(ideal_order, order_along(g, arc.components(), defining)?);
        }
        match strictly_below(target_order, ideal_order) {
            Some(true) => {
                let margin = match (target_order, ideal_order) {
                    (SeriesOrder::Finite(a), SeriesOrder::Finite(b)) => SeriesOrder::Finite(b - a),
                    (SeriesOrder::Finite(a), SeriesOrder::AtLeast(h)) => SeriesOrder::AtLeast(h - a),
                    _ => SeriesOrder::Infinite,
                };
                return Ok(Some(ArcWitness { arc: arc.clone(), target_order, ideal_order, margin }));
            }
            Some(false) => {}
            None => {
                pending.get_or_insert(ClosureError::TruncationInsufficient { arc: arc.describe() });
            }
        }
    }
    match pending {
        Some(e) => Err(e),
        None => Ok(None),
    }
}
