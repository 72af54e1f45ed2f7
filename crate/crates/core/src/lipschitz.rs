//! Membership in the Lipschitz saturation, the saturation, the
//! seminormalization and the Lipschitz seminormalization of `A` in `B`,
//! constancy on fibres, and the inclusion-chain report.

use serde::{Deserialize, Serialize};

use crate::arc::{default_coefficients, standard_arc_family, Arc, ArcError, Branch, DEFAULT_TRUNCATION};
use crate::closure::{
    arc_refute, certificate_search, element_integral, point_witness, subring_integral, Certificate, ClosureError,
    MembershipVerdict, PointWitness, SearchBounds, Witness,
};
use crate::ideal::Ideal;
use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::variety::{RingMorphism, TensorSquare, VarietyError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LipschitzError {
    #[error("the morphism is not dominant")]
    NotDominant,
    #[error("inclusion chain violated: {0}")]
    InconsistentChain(String),
    #[error("representation does not match the element: π*(num) ≠ element · π*(den)")]
    InconsistentRepresentation,
    #[error(transparent)]
    Closure(#[from] ClosureError),
    #[error(transparent)]
    Variety(#[from] VarietyError),
    #[error(transparent)]
    Arc(#[from] ArcError),
}

impl From<crate::ideal::IdealError> for LipschitzError {
    fn from(e: crate::ideal::IdealError) -> Self {
        LipschitzError::Closure(e.into())
    }
}

/// Which arcs to try when none are supplied.
#[derive(Clone, Debug, PartialEq)]
pub struct ArcSettings {
    pub standard: bool,
    pub max_exp: u32,
    pub coeffs: Vec<Rational>,
    pub horizon: u32,
}

impl Default for ArcSettings {
    fn default() -> Self {
        ArcSettings { standard: true, max_exp: 3, coeffs: default_coefficients(), horizon: DEFAULT_TRUNCATION }
    }
}

/// An element of `B` together with everything the engines may use.
#[derive(Clone, Debug)]
pub struct SaturationQuery {
    pub morphism: RingMorphism,
    pub element: Polynomial,
    pub bounds: SearchBounds,
    /// Explicit arcs on the tensor square; replaces the standard family.
    pub arcs: Option<Vec<Arc>>,
    /// Candidate points of the tensor square.
    pub witnesses: Vec<Vec<Rational>>,
    /// Branches on `B`.
    pub branches: Vec<Branch>,
    /// `num / den` over `A`.
    pub representation: Option<(Polynomial, Polynomial)>,
    /// Caller's assertion that the element is not integral over `A`.
    pub declared_nonintegral: bool,
    pub arc_settings: ArcSettings,
}

impl SaturationQuery {
    pub fn new(morphism: RingMorphism, element: Polynomial) -> Self {
        SaturationQuery {
            morphism,
            element,
            bounds: SearchBounds::default(),
            arcs: None,
            witnesses: Vec::new(),
            branches: Vec::new(),
            representation: None,
            declared_nonintegral: false,
            arc_settings: ArcSettings::default(),
        }
    }

    pub fn from_example(ex: &crate::corpus::Example, element: &str) -> Self {
        let e = ex.element(element);
        SaturationQuery {
            branches: ex.branches.clone(),
            representation: e.representation.clone(),
            ..SaturationQuery::new(ex.morphism.clone(), e.value.clone())
        }
    }

    pub fn with_bounds(mut self, bounds: SearchBounds) -> Self {
        self.bounds = bounds;
        self
    }

    pub fn with_element(&self, element: Polynomial) -> Self {
        SaturationQuery { element, representation: None, declared_nonintegral: false, ..self.clone() }
    }

    fn tensor(&self) -> Result<&TensorSquare, LipschitzError> {
        Ok(self.morphism.tensor()?)
    }

    fn require_dominant(&self) -> Result<(), LipschitzError> {
        if !self.morphism.is_dominant()? {
            return Err(LipschitzError::NotDominant);
        }
        Ok(())
    }

    /// `b ⊗ 1 − 1 ⊗ b`.
    pub fn target(&self) -> Result<Polynomial, LipschitzError> {
        Ok(self.tensor()?.diff_element(&self.element.with_order(crate::poly::MonomialOrder::GrevLex)))
    }

    /// Supplied points, then pairs of branch centres.
    fn candidate_points(&self) -> Vec<Vec<Rational>> {
        let mut pts = self.witnesses.clone();
        for b1 in &self.branches {
            for b2 in &self.branches {
                let mut p = b1.centre();
                p.extend(b2.centre());
                if !pts.contains(&p) {
                    pts.push(p);
                }
            }
        }
        pts
    }

    /// Supplied arcs, or the standard family over the branches.
    pub fn arc_family(&self) -> Result<Vec<Arc>, LipschitzError> {
        if let Some(arcs) = &self.arcs {
            return Ok(arcs.clone());
        }
        if !self.arc_settings.standard || self.branches.is_empty() {
            return Ok(Vec::new());
        }
        let s = &self.arc_settings;
        Ok(standard_arc_family(self.tensor()?, &self.branches, s.max_exp, &s.coeffs, s.horizon)?)
    }

    fn find_point(&self, z: &Polynomial, ideal: &Ideal, defining: &Ideal) -> Result<Option<PointWitness>, LipschitzError> {
        for pt in self.candidate_points() {
            if pt.len() != z.nvars() {
                continue;
            }
            if let Some(w) = point_witness(z, ideal, defining, &pt)? {
                return Ok(Some(w));
            }
        }
        Ok(None)
    }
}

/// `b ∈ A^L_B`: point witnesses, then arcs, then certificate search, then
/// the radical test as a last refuter.
pub fn lipschitz_member(q: &SaturationQuery) -> Result<MembershipVerdict, LipschitzError> {
    q.require_dominant()?;
    let ts = q.tensor()?;
    let z = q.target()?;
    let (ideal, defining) = (ts.phi_kernel(), ts.ring().defining());
    if let Some(w) = q.find_point(&z, ideal, defining)? {
        return Ok(MembershipVerdict::Refuted { witness: Witness::Point(w) });
    }
    let arcs = q.arc_family()?;
    let mut deferred = None;
    match arc_refute(&z, ideal, defining, &arcs) {
        Ok(Some(w)) => return Ok(MembershipVerdict::Refuted { witness: Witness::Arc(w) }),
        Ok(None) => {}
        Err(e @ ClosureError::TruncationInsufficient { .. }) => deferred = Some(e),
        Err(e) => return Err(e.into()),
    }
    if let Some(cert) = certificate_search(&z, ideal, defining, q.bounds)? {
        return Ok(MembershipVerdict::Proved { certificate: Certificate::IdealClosure(cert) });
    }
    if !ts.kernel_with_defining().radical_contains(&z)? {
        return Ok(MembershipVerdict::Refuted { witness: Witness::Radical });
    }
    if let Some(e) = deferred {
        return Err(e.into());
    }
    Ok(MembershipVerdict::Unknown { bounds: q.bounds, arcs_tried: arcs.len() })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SaturationOutcome {
    pub member: bool,
    /// A point separating the target from the kernel ideal, when one of
    /// the candidates works.
    pub witness: Option<PointWitness>,
}

fn radical_outcome(q: &SaturationQuery) -> Result<SaturationOutcome, LipschitzError> {
    let ts = q.tensor()?;
    let z = q.target()?;
    let member = ts.kernel_with_defining().radical_contains(&z)?;
    let witness = if member { None } else { q.find_point(&z, ts.phi_kernel(), ts.ring().defining())? };
    Ok(SaturationOutcome { member, witness })
}

/// `b ⊗ 1 − 1 ⊗ b` nilpotent in `B ⊗_A B`.
pub fn saturation_member(q: &SaturationQuery) -> Result<SaturationOutcome, LipschitzError> {
    q.require_dominant()?;
    radical_outcome(q)
}

/// `p` takes equal values at points with equal image.
pub fn constant_on_fibers(m: &RingMorphism, p: &Polynomial) -> Result<bool, LipschitzError> {
    Ok(radical_outcome(&SaturationQuery::new(m.clone(), p.clone()))?.member)
}

/// Integrality over `A`: through the fraction representative when given,
/// otherwise directly in `B`. A declared non-integral element is refuted
/// unless a relation is found.
pub fn integral_over_source(q: &SaturationQuery) -> Result<MembershipVerdict, LipschitzError> {
    let m = &q.morphism;
    let found = match &q.representation {
        Some((num, den)) => {
            let lhs = m.pull(num)?;
            let rhs = &q.element.with_order(lhs.order()) * &m.pull(den)?;
            if !m.target().is_zero(&(&lhs - &rhs))? {
                return Err(LipschitzError::InconsistentRepresentation);
            }
            element_integral(num, den, m.source().defining(), q.bounds)?
        }
        None => match subring_integral(m, &q.element, q.bounds)? {
            Some(rel) => MembershipVerdict::Proved { certificate: Certificate::Subring(rel) },
            None => MembershipVerdict::Unknown { bounds: q.bounds, arcs_tried: 0 },
        },
    };
    if !found.is_proved() && q.declared_nonintegral {
        let reason = "declared not integral over the source ring".to_string();
        return Ok(MembershipVerdict::Refuted { witness: Witness::Declared { reason } });
    }
    Ok(found)
}

fn refuted_by(outcome: SaturationOutcome) -> MembershipVerdict {
    let witness = match outcome.witness {
        Some(w) => Witness::Point(w),
        None => Witness::Radical,
    };
    MembershipVerdict::Refuted { witness }
}

/// `b ∈ A⁺_B`: integral over `A` and in the saturation.
pub fn seminormalization_member(q: &SaturationQuery) -> Result<MembershipVerdict, LipschitzError> {
    let sat = saturation_member(q)?;
    if !sat.member {
        return Ok(refuted_by(sat));
    }
    integral_over_source(q)
}

/// `b ∈ A^{L,+}_B`: integral over `A` and in the Lipschitz saturation.
pub fn lipschitz_seminormalization_member(q: &SaturationQuery) -> Result<MembershipVerdict, LipschitzError> {
    let integral = integral_over_source(q)?;
    if integral.is_refuted() {
        return Ok(integral);
    }
    let lip = lipschitz_member(q)?;
    Ok(match (integral, lip) {
        (_, r @ MembershipVerdict::Refuted { .. }) => r,
        (MembershipVerdict::Proved { certificate: i }, MembershipVerdict::Proved { certificate: c }) => {
            MembershipVerdict::Proved { certificate: Certificate::Pair { integral: Box::new(i), closure: Box::new(c) } }
        }
        _ => MembershipVerdict::Unknown { bounds: q.bounds, arcs_tried: 0 },
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainReport {
    pub in_a: bool,
    pub in_lipschitz: MembershipVerdict,
    pub in_saturation: bool,
    pub integral_over_a: MembershipVerdict,
}

/// All four predicates, checked against `A ⊆ A^L_B ⊆ Â_B`.
pub fn chain_report(q: &SaturationQuery) -> Result<ChainReport, LipschitzError> {
    q.require_dominant()?;
    let in_a = q.morphism.preimage(&q.element)?.is_some();
    let in_lipschitz = lipschitz_member(q)?;
    let in_saturation = saturation_member(q)?.member;
    let integral_over_a = integral_over_source(q)?;
    let report = ChainReport { in_a, in_lipschitz, in_saturation, integral_over_a };
    check_chain(&report)?;
    Ok(report)
}

pub fn check_chain(r: &ChainReport) -> Result<(), LipschitzError> {
    let fail = |s: &str| Err(LipschitzError::InconsistentChain(s.to_string()));
    if r.in_a && !r.in_lipschitz.is_proved() {
        return fail("element of A not proved in the Lipschitz saturation");
    }
    if r.in_a && r.integral_over_a.is_refuted() {
        return fail("element of A refuted as integral over A");
    }
    if r.in_lipschitz.is_proved() && !r.in_saturation {
        return fail("Lipschitz member outside the saturation");
    }
    Ok(())
}
