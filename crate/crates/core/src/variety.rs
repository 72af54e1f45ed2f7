//! Presented coordinate rings, morphisms between them, and the tensor square
//! `B ⊗ B` with the kernel ideal of `B ⊗_ℚ B → B ⊗_A B`.

use std::collections::HashSet;
use std::sync::OnceLock;

use crate::ideal::{Ideal, IdealError};
use crate::poly::{parse_polynomial, MonomialOrder, ParseError, PolyError, Polynomial};

const ORDER: MonomialOrder = MonomialOrder::GrevLex;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum VarietyError {
    #[error("duplicate variable name `{0}`")]
    DuplicateName(String),
    #[error("expected {expected} images, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("ill-defined morphism: relation `{generator}` maps to `{normal_form}`, not zero in the target")]
    IllDefinedMorphism { generator: String, normal_form: String },
    #[error("the defining ideal is the unit ideal")]
    ImproperPresentation,
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// `ℚ[x₁,…,xₙ]/I`. Radicality of `I` is the caller's responsibility.
#[derive(Clone, Debug)]
pub struct PresentedRing {
    names: Vec<String>,
    defining: Ideal,
}

impl PresentedRing {
    pub fn new<S: Into<String>>(names: Vec<S>, relations: Vec<Polynomial>) -> Result<Self, VarietyError> {
        let ring = Self::new_unchecked(names, relations)?;
        if !ring.defining.is_proper() {
            return Err(VarietyError::ImproperPresentation);
        }
        Ok(ring)
    }

    /// The zero ring (defining ideal may be the unit ideal).
    pub fn new_unchecked<S: Into<String>>(names: Vec<S>, relations: Vec<Polynomial>) -> Result<Self, VarietyError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut seen = HashSet::new();
        for n in &names {
            if !seen.insert(n.as_str()) {
                return Err(VarietyError::DuplicateName(n.clone()));
            }
        }
        let defining = Ideal::new(names.len(), ORDER, relations)?;
        Ok(PresentedRing { names, defining })
    }

    pub fn polynomial_ring<S: Into<String>>(names: Vec<S>) -> Result<Self, VarietyError> {
        Self::new(names, Vec::new())
    }

    /// Parses relations written over `names`.
    pub fn parse(names: &[&str], relations: &[&str]) -> Result<Self, VarietyError> {
        let rels = relations
            .iter()
            .map(|r| parse_polynomial(r, names, ORDER))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(names.to_vec(), rels)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn defining(&self) -> &Ideal {
        &self.defining
    }

    pub fn element(&self, text: &str) -> Result<Polynomial, VarietyError> {
        Ok(parse_polynomial(text, &self.names, ORDER)?)
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(self.nvars(), ORDER, i)
    }

    /// Canonical representative modulo the defining ideal.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial, VarietyError> {
        Ok(self.defining.reduce(f)?)
    }

    pub fn is_zero(&self, f: &Polynomial) -> Result<bool, VarietyError> {
        Ok(self.defining.contains(f)?)
    }

    pub fn show(&self, f: &Polynomial) -> String {
        f.to_string_with(&self.names)
    }

    /// Same ring with one more free variable appended.
    pub fn with_free_variable(&self, name: &str) -> Result<PresentedRing, VarietyError> {
        let mut names = self.names.clone();
        names.push(name.to_string());
        let n = names.len();
        let map: Vec<usize> = (0..self.nvars()).collect();
        let rels = self.defining.nonzero_generators().iter().map(|g| g.embed(n, &map, ORDER)).collect();
        PresentedRing::new(names, rels)
    }
}

/// A ring map `π* : A → B` given by the images of the generators of `A`.
#[derive(Clone, Debug)]
pub struct RingMorphism {
    source: PresentedRing,
    target: PresentedRing,
    images: Vec<Polynomial>,
    dominant: OnceLock<bool>,
    tensor: OnceLock<TensorSquare>,
}

impl RingMorphism {
    pub fn source(&self) -> &PresentedRing {
        &self.source
    }

    pub fn target(&self) -> &PresentedRing {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    /// `π*(f)` for `f` written in the source variables.
    pub fn pull(&self, f: &Polynomial) -> Result<Polynomial, VarietyError> {
        Ok(f.substitute_in(&self.images, self.target.nvars(), ORDER)?)
    }

    /// Graph ideal in the variables `(target…, source…)`:
    /// target relations plus `x_i − π*(x_i)`.
    fn graph_ideal(&self, extra: &[Polynomial]) -> Ideal {
        let m = self.target.nvars();
        let n = self.source.nvars();
        let total = m + n + extra.len();
        let tmap: Vec<usize> = (0..m).collect();
        let mut gens: Vec<Polynomial> = self
            .target
            .defining()
            .nonzero_generators()
            .iter()
            .map(|g| g.embed(total, &tmap, ORDER))
            .collect();
        for (i, img) in self.images.iter().chain(extra).enumerate() {
            let x = Polynomial::var(total, ORDER, m + i);
            gens.push(&x - &img.embed(total, &tmap, ORDER));
        }
        Ideal::new(total, MonomialOrder::Block(m), gens).expect("graph ambient")
    }

    /// Ideal of relations among the images, in the source variables.
    pub fn kernel(&self) -> Result<Ideal, VarietyError> {
        let elim = self.graph_ideal(&[]).eliminate(self.target.nvars())?;
        Ok(elim.with_order(ORDER))
    }

    /// `π*` injective, i.e. `π` dominant. Computed once.
    pub fn is_dominant(&self) -> Result<bool, VarietyError> {
        if let Some(d) = self.dominant.get() {
            return Ok(*d);
        }
        let k = self.kernel()?;
        let d = self.source.defining().contains_ideal(&k)?;
        Ok(*self.dominant.get_or_init(|| d))
    }

    /// A preimage of `b` under `π*` when `b` lies in the image, found by
    /// reducing modulo the graph ideal in an order eliminating the target.
    pub fn preimage(&self, b: &Polynomial) -> Result<Option<Polynomial>, VarietyError> {
        let m = self.target.nvars();
        let g = self.graph_ideal(&[]);
        let total = g.nvars();
        let map: Vec<usize> = (0..m).collect();
        let nf = g.reduce(&b.embed(total, &map, MonomialOrder::Block(m)))?;
        Ok(nf.drop_leading_vars(m, ORDER))
    }

    /// The tensor square of the target, built once.
    pub fn tensor(&self) -> Result<&TensorSquare, VarietyError> {
        if let Some(ts) = self.tensor.get() {
            return Ok(ts);
        }
        let ts = tensor_square(self)?;
        Ok(self.tensor.get_or_init(|| ts))
    }

    /// `self` followed by `next`: `A → B → C`.
    pub fn compose(&self, next: &RingMorphism) -> Result<RingMorphism, VarietyError> {
        let images = self
            .images
            .iter()
            .map(|img| next.pull(img))
            .collect::<Result<Vec<_>, _>>()?;
        make_morphism(self.source.clone(), next.target.clone(), images)
    }

    /// Extends `A` by a new generator `v ↦ b`, presenting `A[b] ⊆ B`.
    pub fn adjoin_to_source(&self, name: &str, b: &Polynomial) -> Result<RingMorphism, VarietyError> {
        let m = self.target.nvars();
        let n = self.source.nvars();
        let g = self.graph_ideal(std::slice::from_ref(b));
        let rel = g.eliminate(m)?.with_order(ORDER);
        let smap: Vec<usize> = (0..n).collect();
        let mut gens: Vec<Polynomial> = self
            .source
            .defining()
            .nonzero_generators()
            .iter()
            .map(|p| p.embed(n + 1, &smap, ORDER))
            .collect();
        gens.extend(rel.nonzero_generators().iter().cloned());
        let mut names = self.source.names().to_vec();
        names.push(name.to_string());
        let source = PresentedRing::new(names, gens)?;
        let mut images = self.images.clone();
        images.push(b.with_order(ORDER));
        make_morphism(source, self.target.clone(), images)
    }

    /// `A[t] → B[t]`, extending `π*` by the identity on the new variable.
    pub fn with_free_variable(&self, name: &str) -> Result<RingMorphism, VarietyError> {
        let source = self.source.with_free_variable(name)?;
        let target = self.target.with_free_variable(name)?;
        let m = target.nvars();
        let map: Vec<usize> = (0..m - 1).collect();
        let mut images: Vec<Polynomial> = self.images.iter().map(|p| p.embed(m, &map, ORDER)).collect();
        images.push(Polynomial::var(m, ORDER, m - 1));
        make_morphism(source, target, images)
    }
}

/// Builds `π*`, checking that every source relation maps into the target
/// defining ideal.
pub fn make_morphism(
    source: PresentedRing,
    target: PresentedRing,
    images: Vec<Polynomial>,
) -> Result<RingMorphism, VarietyError> {
    if images.len() != source.nvars() {
        return Err(VarietyError::Arity { expected: source.nvars(), got: images.len() });
    }
    if let Some(bad) = images.iter().find(|p| p.nvars() != target.nvars()) {
        return Err(VarietyError::Poly(PolyError::AmbientMismatch { left: target.nvars(), right: bad.nvars() }));
    }
    let images: Vec<Polynomial> = images.into_iter().map(|p| p.with_order(ORDER)).collect();
    for g in source.defining().nonzero_generators() {
        let img = g.substitute_in(&images, target.nvars(), ORDER)?;
        let nf = target.normal_form(&img)?;
        if !nf.is_zero() {
            return Err(VarietyError::IllDefinedMorphism {
                generator: source.show(g),
                normal_form: target.show(&nf),
            });
        }
    }
    Ok(RingMorphism { source, target, images, dominant: OnceLock::new(), tensor: OnceLock::new() })
}

/// `B ⊗_ℚ B` on two copies of the target variables, with the ideal
/// generated by `π*(x_i) ⊗ 1 − 1 ⊗ π*(x_i)`.
#[derive(Clone, Debug)]
pub struct TensorSquare {
    ring: PresentedRing,
    phi_kernel: Ideal,
    full: Ideal,
    copy_vars: usize,
}

impl TensorSquare {
    pub fn ring(&self) -> &PresentedRing {
        &self.ring
    }

    pub fn phi_kernel(&self) -> &Ideal {
        &self.phi_kernel
    }

    /// Kernel ideal plus the defining relations of both copies.
    pub fn kernel_with_defining(&self) -> &Ideal {
        &self.full
    }

    /// Number of variables in one copy of the target.
    pub fn copy_vars(&self) -> usize {
        self.copy_vars
    }

    pub fn first(&self, f: &Polynomial) -> Polynomial {
        let map: Vec<usize> = (0..self.copy_vars).collect();
        f.embed(2 * self.copy_vars, &map, ORDER)
    }

    pub fn second(&self, f: &Polynomial) -> Polynomial {
        let map: Vec<usize> = (self.copy_vars..2 * self.copy_vars).collect();
        f.embed(2 * self.copy_vars, &map, ORDER)
    }

    /// `f ⊗ 1 − 1 ⊗ f`.
    pub fn diff_element(&self, f: &Polynomial) -> Polynomial {
        &self.first(f) - &self.second(f)
    }

    /// Exchanges the two copies.
    pub fn swap(&self, f: &Polynomial) -> Polynomial {
        let m = self.copy_vars;
        let map: Vec<usize> = (0..2 * m).map(|i| if i < m { i + m } else { i - m }).collect();
        f.embed(2 * m, &map, ORDER)
    }

    pub fn show(&self, f: &Polynomial) -> String {
        self.ring.show(f)
    }
}

/// Tensor square of the target of `m`, with the kernel ideal of `φ_B`.
pub fn tensor_square(m: &RingMorphism) -> Result<TensorSquare, VarietyError> {
    let k = m.target().nvars();
    let names: Vec<String> = m
        .target()
        .names()
        .iter()
        .map(|n| format!("{n}_1"))
        .chain(m.target().names().iter().map(|n| format!("{n}_2")))
        .collect();
    let first: Vec<usize> = (0..k).collect();
    let second: Vec<usize> = (k..2 * k).collect();
    let rels: Vec<Polynomial> = m
        .target()
        .defining()
        .nonzero_generators()
        .iter()
        .flat_map(|g| [g.embed(2 * k, &first, ORDER), g.embed(2 * k, &second, ORDER)])
        .collect();
    let ring = PresentedRing::new_unchecked(names, rels)?;
    let diffs: Vec<Polynomial> = m
        .images()
        .iter()
        .map(|img| &img.embed(2 * k, &first, ORDER) - &img.embed(2 * k, &second, ORDER))
        .collect();
    let phi_kernel = Ideal::new(2 * k, ORDER, diffs)?;
    let full = phi_kernel.sum(ring.defining())?;
    Ok(TensorSquare { ring, phi_kernel, full, copy_vars: k })
}

#[cfg(test)]
mod tests;
