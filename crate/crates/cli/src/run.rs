//! Builds the declared objects and executes the commands of a session.

use std::collections::HashMap;
use std::time::Instant;

use serde::Serialize;

use lipsat::arc::{Branch, Series};
use lipsat::closure::{ClosureError, PointWitness};
use lipsat::ideal::{ideal_member, radical_member};
use lipsat::lipschitz::{
    check_chain, constant_on_fibers, integral_over_source, lipschitz_member, lipschitz_seminormalization_member,
    saturation_member, seminormalization_member, ChainReport, LipschitzError,
};
use lipsat::poly::parse_polynomial;
use lipsat::sampler::{sample_ideal_ratio, sample_lipschitz_ratio, EpsilonLadder, RatioReport, VerdictHint};
use lipsat::{
    make_morphism, Certificate, MembershipVerdict, MonomialOrder, Polynomial, PresentedRing, RingMorphism,
    SaturationQuery, SearchBounds, Witness,
};

use crate::dsl::{ArcMode, Command, Decl, Kind, Session};

/// Engine settings taken from the command line; per-command flags win.
#[derive(Clone, Debug)]
pub struct Settings {
    pub bounds: SearchBounds,
    pub trunc: u32,
    pub arcs: ArcMode,
    pub ladder: EpsilonLadder,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            bounds: SearchBounds::default(),
            trunc: lipsat::arc::DEFAULT_TRUNCATION,
            arcs: ArcMode::Standard,
            ladder: EpsilonLadder::default(),
        }
    }
}

#[derive(Debug, thiserror::Error)]
#[error("{name}: {message}")]
pub struct BuildError {
    pub name: String,
    pub message: String,
}

fn build_err(name: &str, e: impl std::fmt::Display) -> BuildError {
    BuildError { name: name.to_string(), message: e.to_string() }
}

/// Rings, maps and branches of a session as engine objects.
pub struct Model {
    rings: HashMap<String, PresentedRing>,
    maps: HashMap<String, RingMorphism>,
    branches: HashMap<String, Vec<Branch>>,
}

impl Model {
    pub fn build(s: &Session, trunc: u32) -> Result<Model, BuildError> {
        let mut m = Model { rings: HashMap::new(), maps: HashMap::new(), branches: HashMap::new() };
        for (name, d) in &s.declarations {
            match d {
                Decl::Ring(r) => {
                    let ring = PresentedRing::new(r.vars.clone(), r.relations.clone()).map_err(|e| build_err(name, e))?;
                    m.rings.insert(name.clone(), ring);
                }
                Decl::Map(md) => {
                    let (a, b) = (m.rings[&md.source].clone(), m.rings[&md.target].clone());
                    let mor = make_morphism(a, b, md.images.clone()).map_err(|e| build_err(name, e))?;
                    m.maps.insert(name.clone(), mor);
                }
                Decl::Branch(bd) => {
                    let ring = &m.rings[&bd.ring];
                    let comps = bd
                        .components
                        .iter()
                        .map(|(p, k)| Series::from_polynomial(p, trunc, *k))
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|e| build_err(name, e))?;
                    let br = Branch::new(name, ring, comps).map_err(|e| build_err(name, e))?;
                    m.branches.entry(bd.ring.clone()).or_default().push(br);
                }
                Decl::Elem(_) => {}
            }
        }
        Ok(m)
    }

    fn branches_on(&self, ring: &str) -> Vec<Branch> {
        self.branches.get(ring).cloned().unwrap_or_default()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerdictDocument {
    pub command: String,
    pub kind: &'static str,
    /// `proved`, `refuted`, `unknown`, `true` or `false`.
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub summary: String,
    pub bounds: SearchBounds,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<RatioReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub timing_ms: f64,
    #[serde(skip)]
    pub soundness_violation: bool,
}

impl VerdictDocument {
    fn new(command: String, kind: Kind, bounds: SearchBounds) -> Self {
        VerdictDocument {
            command,
            kind: kind.keyword(),
            verdict: "unknown",
            certificate: None,
            witness: None,
            summary: String::new(),
            bounds,
            report: None,
            error: None,
            timing_ms: 0.0,
            soundness_violation: false,
        }
    }

    fn boolean(&mut self, b: bool, summary: impl Into<String>) {
        self.verdict = if b { "true" } else { "false" };
        self.summary = summary.into();
    }

    fn membership(&mut self, v: MembershipVerdict) {
        self.verdict = v.label();
        match v {
            MembershipVerdict::Proved { certificate } => {
                self.summary = describe_certificate(&certificate);
                self.certificate = Some(certificate);
            }
            MembershipVerdict::Refuted { witness } => {
                self.summary = describe_witness(&witness);
                self.witness = Some(witness);
            }
            MembershipVerdict::Unknown { bounds, arcs_tried } => {
                self.summary = format!(
                    "inconclusive at relation degree ≤ {}, cofactor degree ≤ {}, {arcs_tried} arcs",
                    bounds.max_relation_degree, bounds.max_cofactor_degree
                );
            }
        }
    }

    fn ratio(&mut self, r: RatioReport) {
        self.verdict = match r.verdict_hint {
            VerdictHint::Bounded => "true",
            VerdictHint::Diverging => "false",
            VerdictHint::Inconclusive => "unknown",
        };
        self.summary = format!("{:?}, growth exponent {:.3}", r.verdict_hint, r.growth_exponent_estimate).to_lowercase();
        self.report = Some(r);
    }
}

fn describe_certificate(c: &Certificate) -> String {
    match c {
        Certificate::IdealClosure(ic) => format!("integral dependence of degree {}", ic.n),
        Certificate::Subring(r) => format!("monic relation of degree {} over the source", r.n),
        Certificate::Pair { integral, closure } => {
            format!("{}; {}", describe_certificate(integral), describe_certificate(closure))
        }
    }
}

fn show_point(p: &PointWitness) -> String {
    let parts: Vec<String> = p.point.iter().map(|r| r.to_string()).collect();
    format!("point ({}): generators vanish, target = {}", parts.join(", "), p.target_value)
}

fn describe_witness(w: &Witness) -> String {
    match w {
        Witness::Arc(a) => {
            format!("arc {}: target order {}, ideal order {}", a.arc.describe(), a.target_order, a.ideal_order)
        }
        Witness::Point(p) => show_point(p),
        Witness::Radical => "not in the radical of the kernel ideal".into(),
        Witness::Declared { reason } => reason.clone(),
    }
}

struct Failure {
    message: String,
    soundness: bool,
}

impl From<LipschitzError> for Failure {
    fn from(e: LipschitzError) -> Self {
        let soundness = matches!(e, LipschitzError::InconsistentChain(_));
        Failure { message: e.to_string(), soundness }
    }
}

macro_rules! impl_failure {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure { message: e.to_string(), soundness: false }
            }
        }
    )*};
}
impl_failure!(&str, ClosureError, lipsat::VarietyError, lipsat::IdealError, lipsat::sampler::SamplerError, lipsat::poly::ParseError, String);

struct Context<'a> {
    session: &'a Session,
    model: &'a Model,
    settings: &'a Settings,
}

impl Context<'_> {
    fn bounds(&self, c: &Command) -> Result<SearchBounds, Failure> {
        let b = self.settings.bounds;
        Ok(SearchBounds::new(
            c.flags.max_relation_degree.unwrap_or(b.max_relation_degree),
            c.flags.max_cofactor_degree.unwrap_or(b.max_cofactor_degree),
        )?)
    }

    fn element(&self, c: &Command) -> Result<(Polynomial, Option<(String, String)>), Failure> {
        let name = c.element.as_deref().ok_or("missing element")?;
        match self.session.get(name) {
            Some(Decl::Elem(e)) => Ok((e.value.clone(), e.representation.clone())),
            _ => Err(format!("undeclared elem `{name}`").into()),
        }
    }

    fn query(&self, c: &Command) -> Result<SaturationQuery, Failure> {
        let m = self.model.maps.get(&c.target).ok_or(format!("`{}` is not a map", c.target))?;
        let (value, rep) = self.element(c)?;
        let mut q = SaturationQuery::new(m.clone(), value);
        q.bounds = self.bounds(c)?;
        let target_name = match self.session.get(&c.target) {
            Some(Decl::Map(md)) => md.target.clone(),
            _ => unreachable!("checked above"),
        };
        q.branches = self.model.branches_on(&target_name);
        q.arc_settings.horizon = self.settings.trunc;
        q.arc_settings.standard = c.flags.arcs.unwrap_or(self.settings.arcs) == ArcMode::Standard;
        let width = 2 * m.target().nvars();
        for w in &c.flags.witnesses {
            if w.len() != width {
                return Err(format!("witness has {} coordinates, the tensor square has {width}", w.len()).into());
            }
        }
        q.witnesses = c.flags.witnesses.clone();
        q.declared_nonintegral = c.flags.nonintegral;
        if let Some((num, den)) = rep {
            let names = m.source().names();
            let order = MonomialOrder::GrevLex;
            q.representation = Some((parse_polynomial(&num, names, order)?, parse_polynomial(&den, names, order)?));
        }
        Ok(q)
    }

    fn execute(&self, c: &Command, doc: &mut VerdictDocument) -> Result<(), Failure> {
        match c.kind {
            Kind::Lipschitz => {
                let q = self.query(c)?;
                let v = lipschitz_member(&q)?;
                if v.is_proved() {
                    let sat = saturation_member(&q)?;
                    let report = ChainReport {
                        in_a: false,
                        in_lipschitz: v.clone(),
                        in_saturation: sat.member,
                        integral_over_a: MembershipVerdict::Unknown { bounds: q.bounds, arcs_tried: 0 },
                    };
                    check_chain(&report)?;
                }
                doc.membership(v);
            }
            Kind::Saturation => {
                let out = saturation_member(&self.query(c)?)?;
                let summary = match &out.witness {
                    Some(w) => show_point(w),
                    None if out.member => "difference is nilpotent in the tensor product".into(),
                    None => "not in the radical of the kernel ideal".into(),
                };
                doc.boolean(out.member, summary);
                doc.witness = out.witness.map(Witness::Point);
            }
            Kind::Seminormal => doc.membership(seminormalization_member(&self.query(c)?)?),
            Kind::LipschitzSeminormal => doc.membership(lipschitz_seminormalization_member(&self.query(c)?)?),
            Kind::Integral => doc.membership(integral_over_source(&self.query(c)?)?),
            Kind::Member | Kind::RadicalMember => {
                let (value, _) = self.element(c)?;
                let radical = c.kind == Kind::RadicalMember;
                let (b, ideal_name) = if let Some(m) = self.model.maps.get(&c.target) {
                    let ts = m.tensor()?;
                    let z = ts.diff_element(&value);
                    let ideal = ts.kernel_with_defining();
                    let b = if radical { radical_member(&z, ideal)? } else { ideal_member(&z, ideal)?.0 };
                    (b, "the kernel ideal")
                } else {
                    let ring = &self.model.rings[&c.target];
                    let b = if radical { radical_member(&value, ring.defining())? } else { ring.is_zero(&value)? };
                    (b, "the defining ideal")
                };
                let verb = if b { "lies in" } else { "does not lie in" };
                let summary = format!("{verb} {}{ideal_name}", if radical { "the radical of " } else { "" });
                doc.boolean(b, summary);
            }
            Kind::Dominant => {
                let m = self.model.maps.get(&c.target).ok_or("not a map")?;
                let b = m.is_dominant()?;
                doc.boolean(b, if b { "injective on coordinate rings" } else { "kernel is nonzero" });
            }
            Kind::Fibers => {
                let q = self.query(c)?;
                let b = constant_on_fibers(&q.morphism, &q.element)?;
                doc.boolean(b, if b { "constant on fibres" } else { "separates points of some fibre" });
            }
            Kind::SampleLipschitz => {
                let q = self.query(c)?;
                doc.ratio(sample_lipschitz_ratio(&q, &q.branches, &self.settings.ladder)?);
            }
            Kind::SampleIdeal => {
                let (value, _) = self.element(c)?;
                if c.flags.gens.is_empty() {
                    return Err("`sample-ideal` needs `gens(...)`".to_string().into());
                }
                let ring = match self.session.get(&c.target) {
                    Some(Decl::Map(md)) => md.target.clone(),
                    _ => c.target.clone(),
                };
                let branches = self.model.branches_on(&ring);
                doc.ratio(sample_ideal_ratio(&value, &c.flags.gens, &branches, &self.settings.ladder)?);
            }
        }
        Ok(())
    }
}

fn ring_vars(s: &Session, target: &str) -> Vec<String> {
    let ring = match s.get(target) {
        Some(Decl::Map(m)) => m.target.as_str(),
        _ => target,
    };
    s.ring(ring).map(|r| r.vars.clone()).unwrap_or_default()
}

/// Runs every command; documents come back in command order. Commands
/// share only immutable declarations and run on scoped threads.
pub fn run(session: &Session, model: &Model, settings: &Settings) -> Vec<VerdictDocument> {
    let ctx = Context { session, model, settings };
    std::thread::scope(|scope| {
        let handles: Vec<_> = session
            .commands
            .iter()
            .map(|c| {
                let ctx = &ctx;
                scope.spawn(move || {
                    let start = Instant::now();
                    let echo = c.show(&ring_vars(session, &c.target));
                    let mut doc = VerdictDocument::new(echo, c.kind, ctx.bounds(c).unwrap_or(settings.bounds));
                    if let Err(f) = ctx.execute(c, &mut doc) {
                        doc.verdict = "unknown";
                        doc.summary = "error".into();
                        doc.error = Some(f.message);
                        doc.soundness_violation = f.soundness;
                    }
                    doc.timing_ms = start.elapsed().as_secs_f64() * 1e3;
                    doc
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("command thread")).collect()
    })
}

/// 0 when every command completed, 1 on input or engine errors, 2 on a
/// soundness violation.
pub fn exit_code(docs: &[VerdictDocument]) -> i32 {
    if docs.iter().any(|d| d.soundness_violation) {
        2
    } else if docs.iter().any(|d| d.error.is_some()) {
        1
    } else {
        0
    }
}

pub fn to_json(docs: &[VerdictDocument]) -> serde_json::Value {
    serde_json::json!({ "results": docs })
}

pub fn to_text(docs: &[VerdictDocument]) -> String {
    let mut out = String::new();
    for d in docs {
        out += &format!("{}\n  {}: {}\n", d.command, d.verdict, d.summary);
        if let Some(e) = &d.error {
            out += &format!("  error: {e}\n");
        }
        if let Some(r) = &d.report {
            for line in r.to_table().lines() {
                out += &format!("  {line}\n");
            }
        }
    }
    out
}
