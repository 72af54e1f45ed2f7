//! Integrality of elements: fractions over a presented ring, and elements
//! of `B` over the image of `A`.

use serde::{Deserialize, Serialize};

use super::{certificate_search, standard_monomials, Certificate, ClosureError, ColumnSystem, MembershipVerdict, SearchBounds};
use crate::ideal::Ideal;
use crate::poly::{MonomialOrder, Polynomial};
use crate::rational::int;
use crate::variety::RingMorphism;

/// `b^n + Σ π*(c_i) b^{n−i} = 0` in `B`, with `c_i` over the source ring.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubringRelation {
    pub n: u32,
    pub coefficients: Vec<Polynomial>,
}

impl SubringRelation {
    pub fn relation(&self, m: &RingMorphism, b: &Polynomial) -> Result<Polynomial, ClosureError> {
        let mut acc = b.pow(self.n);
        for (i, c) in self.coefficients.iter().enumerate() {
            let pulled = m.pull(c)?;
            acc = &acc + &(&pulled * &b.pow(self.n - 1 - i as u32));
        }
        Ok(acc)
    }

    pub fn verify(&self, m: &RingMorphism, b: &Polynomial) -> Result<bool, ClosureError> {
        if self.n == 0 || self.coefficients.len() != self.n as usize {
            return Err(ClosureError::MalformedCertificate("relation degree and coefficient count differ".into()));
        }
        Ok(m.target().is_zero(&self.relation(m, b)?)?)
    }
}

/// Integrality of `f_num / f_den` over `ℚ[x]/A_defining`: a relation
/// `f_num^n + Σ c_i f_den^i f_num^{n−i} ∈ A_defining`.
pub fn element_integral(
    f_num: &Polynomial,
    f_den: &Polynomial,
    a_defining: &Ideal,
    bounds: SearchBounds,
) -> Result<MembershipVerdict, ClosureError> {
    if a_defining.contains(f_den)? {
        return Err(ClosureError::ZeroGenerator(0));
    }
    let den = Ideal::new(f_den.nvars(), MonomialOrder::GrevLex, vec![f_den.clone()])?;
    Ok(match certificate_search(f_num, &den, a_defining, bounds)? {
        Some(cert) => MembershipVerdict::Proved { certificate: Certificate::IdealClosure(cert) },
        None => MembershipVerdict::Unknown { bounds, arcs_tried: 0 },
    })
}

/// Integrality of `b ∈ B` over `π*(A)`, searched directly in `B`.
pub fn subring_integral(
    m: &RingMorphism,
    b: &Polynomial,
    bounds: SearchBounds,
) -> Result<Option<SubringRelation>, ClosureError> {
    let order = MonomialOrder::GrevLex;
    let source = m.source();
    let target = m.target();
    if let Some(pre) = m.preimage(b)? {
        let rel = SubringRelation { n: 1, coefficients: vec![-&pre] };
        if rel.verify(m, b)? {
            return Ok(Some(rel));
        }
    }
    let nf = |p: &Polynomial| target.defining().groebner().reduce(p);
    let monomials = standard_monomials(source.defining(), bounds.max_cofactor_degree);
    let pulled: Vec<Polynomial> = monomials
        .iter()
        .map(|mono| m.pull(&Polynomial::monomial(mono.clone(), int(1), order)))
        .collect::<Result<_, _>>()?;
    let b = b.with_order(order);
    let mut bpow = vec![Polynomial::one(target.nvars(), order)];
    for n in 1..=bounds.max_relation_degree as usize {
        let next = nf(&(&bpow[n - 1] * &b));
        bpow.push(next);
        if n == 1 {
            continue;
        }
        let mut system = ColumnSystem::new();
        for i in 1..=n {
            for (k, p) in pulled.iter().enumerate() {
                system.push(&nf(&(p * &bpow[n - i])), (i, k));
            }
        }
        if let Some(sol) = system.solve(&-&bpow[n]) {
            let mut coefficients = vec![Polynomial::zero(source.nvars(), order); n];
            for ((i, k), c) in sol {
                let term = Polynomial::monomial(monomials[k].clone(), c, order);
                coefficients[i - 1] = &coefficients[i - 1] + &term;
            }
            let rel = SubringRelation { n: n as u32, coefficients };
            if rel.verify(m, &b)? {
                return Ok(Some(rel));
            }
        }
    }
    Ok(None)
}
