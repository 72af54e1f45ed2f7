//! Ideals of polynomial rings: membership with cofactor traces, radical
//! membership, elimination, saturation and equality.

mod groebner;

use std::sync::OnceLock;

pub use groebner::{buchberger, GroebnerBasis, ReductionTrace};

use crate::poly::{MonomialOrder, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IdealError {
    #[error("ambient mismatch: {left} variables vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("cannot eliminate {k} of {nvars} variables")]
    TooManyEliminated { k: usize, nvars: usize },
    #[error("saturation by the zero polynomial")]
    ZeroSaturator,
}

/// A finitely generated ideal. The zero ideal is stored as the generator
/// list `[0]`. The Gröbner basis slots are write-once caches.
#[derive(Clone, Debug)]
pub struct Ideal {
    nvars: usize,
    order: MonomialOrder,
    generators: Vec<Polynomial>,
    basis: OnceLock<GroebnerBasis>,
    traced: OnceLock<GroebnerBasis>,
}

impl Ideal {
    pub fn new(nvars: usize, order: MonomialOrder, generators: Vec<Polynomial>) -> Result<Self, IdealError> {
        if let Some(bad) = generators.iter().find(|g| g.nvars() != nvars) {
            return Err(IdealError::AmbientMismatch { left: nvars, right: bad.nvars() });
        }
        let mut gens: Vec<Polynomial> = generators
            .into_iter()
            .filter(|g| !g.is_zero())
            .map(|g| g.with_order(order))
            .collect();
        if gens.is_empty() {
            gens.push(Polynomial::zero(nvars, order));
        }
        Ok(Ideal { nvars, order, generators: gens, basis: OnceLock::new(), traced: OnceLock::new() })
    }

    /// Panicking convenience constructor; all generators must share `nvars`.
    pub fn from_generators(nvars: usize, generators: Vec<Polynomial>) -> Self {
        Self::new(nvars, MonomialOrder::GrevLex, generators).expect("generator ambient")
    }

    pub fn zero(nvars: usize, order: MonomialOrder) -> Self {
        Self::new(nvars, order, Vec::new()).unwrap()
    }

    pub fn unit(nvars: usize, order: MonomialOrder) -> Self {
        Self::new(nvars, order, vec![Polynomial::one(nvars, order)]).unwrap()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Nonzero generators (empty for the zero ideal).
    pub fn nonzero_generators(&self) -> &[Polynomial] {
        if self.is_zero_ideal() {
            &[]
        } else {
            &self.generators
        }
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_zero()
    }

    pub fn groebner(&self) -> &GroebnerBasis {
        self.basis.get_or_init(|| {
            if let Some(t) = self.traced.get() {
                return t.clone();
            }
            buchberger(self.nonzero_generators(), self.nvars, self.order, false)
        })
    }

    /// Basis whose elements carry their expression in the generators.
    pub fn traced_groebner(&self) -> &GroebnerBasis {
        self.traced
            .get_or_init(|| buchberger(&self.generators, self.nvars, self.order, true))
    }

    fn check(&self, f: &Polynomial) -> Result<(), IdealError> {
        if f.nvars() != self.nvars {
            return Err(IdealError::AmbientMismatch { left: self.nvars, right: f.nvars() });
        }
        Ok(())
    }

    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial, IdealError> {
        self.check(f)?;
        Ok(self.groebner().reduce(f))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool, IdealError> {
        Ok(self.reduce(f)?.is_zero())
    }

    /// Membership together with the reduction trace against the basis.
    pub fn member_with_trace(&self, f: &Polynomial) -> Result<(bool, ReductionTrace), IdealError> {
        self.check(f)?;
        let trace = self.groebner().reduce_with_trace(f);
        Ok((trace.normal_form.is_zero(), trace))
    }

    /// Cofactors `c_k` with `f = Σ c_k * generator_k`, when `f` is a member.
    pub fn lift(&self, f: &Polynomial) -> Result<Option<Vec<Polynomial>>, IdealError> {
        self.check(f)?;
        let basis = self.traced_groebner();
        let trace = basis.reduce_with_trace(f);
        if !trace.normal_form.is_zero() {
            return Ok(None);
        }
        Ok(basis.lift(&trace.cofactors))
    }

    pub fn is_proper(&self) -> bool {
        !self.groebner().is_unit()
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal, IdealError> {
        if other.nvars != self.nvars {
            return Err(IdealError::AmbientMismatch { left: self.nvars, right: other.nvars });
        }
        let gens = self
            .nonzero_generators()
            .iter()
            .chain(other.nonzero_generators())
            .cloned()
            .collect();
        Ideal::new(self.nvars, self.order, gens)
    }

    pub fn with_generator(&self, g: Polynomial) -> Result<Ideal, IdealError> {
        self.check(&g)?;
        let mut gens = self.nonzero_generators().to_vec();
        gens.push(g);
        Ideal::new(self.nvars, self.order, gens)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Ideal {
        Ideal::new(self.nvars, order, self.generators.clone()).unwrap()
    }

    /// Image under the variable embedding `i ↦ map[i]` into `nvars` variables.
    pub fn embed(&self, nvars: usize, map: &[usize], order: MonomialOrder) -> Ideal {
        let gens = self.generators.iter().map(|g| g.embed(nvars, map, order)).collect();
        Ideal::new(nvars, order, gens).unwrap()
    }

    /// `f ∈ √I`, via `1 ∈ I + ⟨1 − w f⟩` with a fresh variable `w`.
    pub fn radical_contains(&self, f: &Polynomial) -> Result<bool, IdealError> {
        self.check(f)?;
        if f.is_zero() {
            return Ok(true);
        }
        let n = self.nvars + 1;
        let map: Vec<usize> = (0..self.nvars).collect();
        let order = MonomialOrder::GrevLex;
        let w = Polynomial::var(n, order, self.nvars);
        let rabinowitsch = &Polynomial::one(n, order) - &(&w * &f.embed(n, &map, order));
        let mut gens: Vec<Polynomial> = self.nonzero_generators().iter().map(|g| g.embed(n, &map, order)).collect();
        gens.push(rabinowitsch);
        Ok(buchberger(&gens, n, order, false).is_unit())
    }

    /// `I ∩ ℚ[x_{k+1}, …, x_n]`, returned over the last `n − k` variables.
    pub fn eliminate(&self, k: usize) -> Result<Ideal, IdealError> {
        if k > self.nvars {
            return Err(IdealError::TooManyEliminated { k, nvars: self.nvars });
        }
        let out_order = match self.order {
            MonomialOrder::Block(_) => MonomialOrder::GrevLex,
            o => o,
        };
        if k == 0 {
            return Ok(self.with_order(out_order));
        }
        let block = MonomialOrder::Block(k);
        let basis = if self.order == block {
            self.groebner().clone()
        } else {
            buchberger(self.nonzero_generators(), self.nvars, block, false)
        };
        let kept: Vec<Polynomial> = basis
            .elements()
            .iter()
            .filter_map(|g| g.drop_leading_vars(k, out_order))
            .collect();
        Ideal::new(self.nvars - k, out_order, kept)
    }

    /// `I : p^∞`, computed as the elimination of `w` from `I + ⟨1 − w p⟩`.
    pub fn saturate(&self, p: &Polynomial) -> Result<Ideal, IdealError> {
        self.check(p)?;
        if p.is_zero() {
            return Err(IdealError::ZeroSaturator);
        }
        let n = self.nvars + 1;
        let map: Vec<usize> = (1..n).collect();
        let order = MonomialOrder::Block(1);
        let w = Polynomial::var(n, order, 0);
        let mut gens: Vec<Polynomial> = self.nonzero_generators().iter().map(|g| g.embed(n, &map, order)).collect();
        gens.push(&Polynomial::one(n, order) - &(&w * &p.embed(n, &map, order)));
        let lifted = Ideal::new(n, order, gens)?;
        let out = lifted.eliminate(1)?;
        Ok(out.with_order(self.order))
    }

    /// Every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool, IdealError> {
        for g in other.nonzero_generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Ideal) -> Result<bool, IdealError> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }
}

/// `f ∈ I`, with the trace against the basis of `I`.
pub fn ideal_member(f: &Polynomial, ideal: &Ideal) -> Result<(bool, ReductionTrace), IdealError> {
    ideal.member_with_trace(f)
}

pub fn radical_member(f: &Polynomial, ideal: &Ideal) -> Result<bool, IdealError> {
    ideal.radical_contains(f)
}

pub fn ideal_equal(a: &Ideal, b: &Ideal) -> Result<bool, IdealError> {
    a.equals(b)
}

/// `input − Σ cofactor_i · basis_i − normal_form`, which must vanish.
pub fn trace_residual(input: &Polynomial, basis: &GroebnerBasis, trace: &ReductionTrace) -> Polynomial {
    let mut acc = input.with_order(basis.order());
    for (c, g) in trace.cofactors.iter().zip(basis.elements()) {
        acc = &acc - &(c * g);
    }
    &acc - &trace.normal_form
}

#[cfg(test)]
mod tests;
