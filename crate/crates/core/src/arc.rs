//! Truncated power series in one parameter `t`, branch parametrizations of
//! curves and arcs on tensor squares.

use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::ideal::Ideal;
use crate::poly::Polynomial;
use crate::rational::{fmt_rational, int, serde_rational_vec, to_f64, Rational};
use crate::variety::{PresentedRing, TensorSquare};

pub const DEFAULT_TRUNCATION: u32 = 32;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ArcError {
    #[error("arc leaves the variety: `{generator}` composes to order {order}")]
    ArcOffVariety { generator: String, order: u32 },
    #[error("expected {expected} series, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("substitution must have zero constant term")]
    NonzeroConstantTerm,
    #[error("branch data must be univariate in t")]
    NotUnivariate,
}

/// t-adic order of a series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesOrder {
    Finite(u32),
    Infinite,
    /// Every known coefficient vanishes; the order is at least this horizon.
    AtLeast(u32),
}

impl SeriesOrder {
    /// Lower bound usable in truncation bookkeeping.
    fn lower(self) -> Option<u32> {
        match self {
            SeriesOrder::Finite(k) | SeriesOrder::AtLeast(k) => Some(k),
            SeriesOrder::Infinite => None,
        }
    }
}

impl fmt::Display for SeriesOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesOrder::Finite(k) => write!(f, "{k}"),
            SeriesOrder::Infinite => write!(f, "inf"),
            SeriesOrder::AtLeast(k) => write!(f, ">={k}"),
        }
    }
}

/// `Σ coeffs[k] t^k`. An exact series is a polynomial in `t`; an inexact one
/// is known only below `trunc`. For exact series `trunc` is the working
/// horizon: products reaching past it lose exactness.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Series {
    #[serde(with = "serde_rational_vec")]
    coeffs: Vec<Rational>,
    trunc: u32,
    exact: bool,
}

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

impl Series {
    /// Known coefficients below `trunc`, unknown beyond.
    pub fn truncated(coeffs: Vec<Rational>, trunc: u32) -> Series {
        let mut coeffs = coeffs;
        coeffs.truncate(trunc as usize);
        Series { coeffs: trim(coeffs), trunc, exact: false }
    }

    /// A polynomial in `t`, with `horizon` as working precision.
    pub fn exact(coeffs: Vec<Rational>, horizon: u32) -> Series {
        let coeffs = trim(coeffs);
        if coeffs.len() > horizon as usize {
            return Series::truncated(coeffs, horizon);
        }
        Series { coeffs, trunc: horizon, exact: true }
    }

    pub fn zero(trunc: u32) -> Series {
        Series::truncated(Vec::new(), trunc)
    }

    pub fn exact_zero(horizon: u32) -> Series {
        Series::exact(Vec::new(), horizon)
    }

    pub fn constant(c: Rational, horizon: u32) -> Series {
        Series::exact(vec![c], horizon)
    }

    /// `c t^m`.
    pub fn monomial(c: Rational, m: u32, horizon: u32) -> Series {
        let mut v = vec![Rational::zero(); m as usize + 1];
        v[m as usize] = c;
        Series::exact(v, horizon)
    }

    pub fn t(horizon: u32) -> Series {
        Series::monomial(int(1), 1, horizon)
    }

    /// From a polynomial in one variable; `known_below` marks a trailing
    /// `O(t^k)` term.
    pub fn from_polynomial(p: &Polynomial, horizon: u32, known_below: Option<u32>) -> Result<Series, ArcError> {
        if p.nvars() > 1 {
            return Err(ArcError::NotUnivariate);
        }
        let deg = p.total_degree().unwrap_or(0) as usize;
        let mut v = vec![Rational::zero(); deg + 1];
        for (m, c) in p.terms() {
            v[m.degree() as usize] = c.clone();
        }
        Ok(match known_below {
            Some(k) => Series::truncated(v, k.min(horizon)),
            None => Series::exact(v, horizon),
        })
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn truncation(&self) -> u32 {
        self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Precision: `None` for exact series.
    fn precision(&self) -> Option<u32> {
        if self.exact {
            None
        } else {
            Some(self.trunc)
        }
    }

    pub fn order(&self) -> SeriesOrder {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(k) => SeriesOrder::Finite(k as u32),
            None if self.exact => SeriesOrder::Infinite,
            None => SeriesOrder::AtLeast(self.trunc),
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(0)
    }

    /// Forgets everything at exponent `h` and beyond.
    pub fn truncate_to(&self, h: u32) -> Series {
        if !self.exact && self.trunc <= h {
            return self.clone();
        }
        if self.exact && self.coeffs.len() <= h as usize {
            return self.clone();
        }
        Series::truncated(self.coeffs.clone(), h.min(self.trunc))
    }

    fn combine(&self, other: &Series, sign: bool) -> Series {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut v = Vec::with_capacity(len);
        for k in 0..len {
            let b = other.coeff(k);
            v.push(if sign { self.coeff(k) + b } else { self.coeff(k) - b });
        }
        match (self.precision(), other.precision()) {
            (None, None) => Series::exact(v, self.trunc.max(other.trunc)),
            (a, b) => Series::truncated(v, a.unwrap_or(u32::MAX).min(b.unwrap_or(u32::MAX))),
        }
    }

    pub fn add(&self, other: &Series) -> Series {
        self.combine(other, true)
    }

    pub fn sub(&self, other: &Series) -> Series {
        self.combine(other, false)
    }

    pub fn neg(&self) -> Series {
        self.scale(&-int(1))
    }

    pub fn scale(&self, c: &Rational) -> Series {
        if c.is_zero() {
            return match self.exact {
                true => Series::exact_zero(self.trunc),
                false => Series::zero(self.trunc),
            };
        }
        Series { coeffs: self.coeffs.iter().map(|a| a * c).collect(), ..self.clone() }
    }

    pub fn mul(&self, other: &Series) -> Series {
        let horizon = self.trunc.max(other.trunc);
        // the unknown tail of one factor meets the other factor at its order
        let reach = |s: &Series, r: &Series| match (s.precision(), r.order().lower()) {
            (None, _) | (_, None) => u64::MAX,
            (Some(p), Some(v)) => p as u64 + v as u64,
        };
        let known = reach(self, other).min(reach(other, self));
        let exact = known == u64::MAX;
        let limit = known.min(horizon as u64) as usize;
        let full = if self.coeffs.is_empty() || other.coeffs.is_empty() {
            0
        } else {
            self.coeffs.len() + other.coeffs.len() - 1
        };
        let len = full.min(limit);
        let mut v = vec![Rational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= len {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        if exact && full <= horizon as usize {
            Series::exact(v, horizon)
        } else {
            Series::truncated(v, limit as u32)
        }
    }

    pub fn pow(&self, k: u32) -> Series {
        let mut acc = Series::constant(int(1), self.trunc);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `self(u(t))` for a substitution `u` with zero constant term.
    pub fn compose(&self, u: &Series) -> Result<Series, ArcError> {
        if !u.constant_term().is_zero() {
            return Err(ArcError::NonzeroConstantTerm);
        }
        let horizon = self.trunc.max(u.trunc);
        let mut acc = Series::exact_zero(horizon);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(u).add(&Series::constant(c.clone(), horizon));
        }
        // when u ≡ 0 the unknown tail of self vanishes
        if let (Some(p), Some(v)) = (self.precision(), u.order().lower()) {
            acc = acc.truncate_to((p as u64 * v as u64).min(u32::MAX as u64) as u32);
        }
        Ok(acc)
    }

    /// Value of the known part at a complex parameter.
    pub fn eval_complex(&self, t: Complex64) -> Complex64 {
        let mut acc = Complex64::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + Complex64::new(to_f64(c), 0.0);
        }
        acc
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (k, abs.is_one()) {
                (0, _) => write!(f, "{}", fmt_rational(&abs))?,
                (_, true) => {}
                _ => write!(f, "{}*", fmt_rational(&abs))?,
            }
            match k {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        if !self.exact {
            if first {
                return write!(f, "O(t^{})", self.trunc);
            }
            write!(f, " + O(t^{})", self.trunc)?;
        } else if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `f(values)` expanded as a series.
pub fn series_compose(f: &Polynomial, values: &[Series]) -> Result<Series, ArcError> {
    if values.len() != f.nvars() {
        return Err(ArcError::Arity { expected: f.nvars(), got: values.len() });
    }
    let horizon = values.iter().map(|s| s.trunc).max().unwrap_or(DEFAULT_TRUNCATION);
    let mut powers: Vec<Vec<Series>> = values
        .iter()
        .map(|s| vec![Series::constant(int(1), horizon), s.clone()])
        .collect();
    let mut acc = Series::exact_zero(horizon);
    for (m, c) in f.terms() {
        let mut term = Series::constant(c.clone(), horizon);
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            while powers[i].len() <= e as usize {
                let next = powers[i].last().unwrap().mul(&powers[i][1]);
                powers[i].push(next);
            }
            term = term.mul(&powers[i][e as usize]);
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// Order of `f` along `values`, with the exactly-zero tag: a polynomial that
/// vanishes modulo `defining` has order ∞ whatever the truncation.
pub fn order_along(f: &Polynomial, values: &[Series], defining: &Ideal) -> Result<SeriesOrder, ArcError> {
    if f.is_zero() || defining.contains(f).unwrap_or(false) {
        return Ok(SeriesOrder::Infinite);
    }
    Ok(series_compose(f, values)?.order())
}

fn check_on(ring: &PresentedRing, components: &[Series]) -> Result<(), ArcError> {
    check_relations(ring.defining(), components, |g| ring.show(g))
}

fn check_relations(
    defining: &Ideal,
    components: &[Series],
    show: impl Fn(&Polynomial) -> String,
) -> Result<(), ArcError> {
    if components.len() != defining.nvars() {
        return Err(ArcError::Arity { expected: defining.nvars(), got: components.len() });
    }
    for g in defining.nonzero_generators() {
        let s = series_compose(g, components)?;
        if let SeriesOrder::Finite(k) = s.order() {
            return Err(ArcError::ArcOffVariety { generator: show(g), order: k });
        }
    }
    Ok(())
}

/// A parametrized curve germ `t ↦ (s_1(t), …, s_n(t))` on a presented ring.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Branch {
    pub name: String,
    components: Vec<Series>,
}

impl Branch {
    pub fn new(name: &str, ring: &PresentedRing, components: Vec<Series>) -> Result<Branch, ArcError> {
        check_on(ring, &components)?;
        Ok(Branch { name: name.to_string(), components })
    }

    pub fn components(&self) -> &[Series] {
        &self.components
    }

    /// Centre of the branch, `t = 0`.
    pub fn centre(&self) -> Vec<Rational> {
        self.components.iter().map(Series::constant_term).collect()
    }

    pub fn reparametrize(&self, sub: &Series) -> Result<Branch, ArcError> {
        let components = self.components.iter().map(|s| s.compose(sub)).collect::<Result<_, _>>()?;
        Ok(Branch { name: self.name.clone(), components })
    }

    pub fn eval_complex(&self, t: Complex64) -> Vec<Complex64> {
        self.components.iter().map(|s| s.eval_complex(t)).collect()
    }

    /// Image branch under a ring map given by polynomial images.
    pub fn push_forward(&self, name: &str, images: &[Polynomial], ring: &PresentedRing) -> Result<Branch, ArcError> {
        let comps = images
            .iter()
            .map(|p| series_compose(p, &self.components))
            .collect::<Result<Vec<_>, _>>()?;
        Branch::new(name, ring, comps)
    }
}

/// Where an arc came from, for reports.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArcOrigin {
    /// First copy from `first(sub1)`, second copy from `second(sub2)`.
    Pair { first: String, second: String, sub1: String, sub2: String },
    /// `t ↦ (t^{w_1}, …, t^{w_n})`.
    Weights(Vec<u32>),
    Given,
}

/// A `ℚ[[t]]`-point of an ambient ring, typically a tensor square.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Arc {
    pub origin: ArcOrigin,
    components: Vec<Series>,
}

impl Arc {
    pub fn new(components: Vec<Series>) -> Arc {
        Arc { origin: ArcOrigin::Given, components }
    }

    pub fn monomial(weights: &[u32], horizon: u32) -> Arc {
        let components = weights.iter().map(|&w| Series::monomial(int(1), w, horizon)).collect();
        Arc { origin: ArcOrigin::Weights(weights.to_vec()), components }
    }

    pub fn components(&self) -> &[Series] {
        &self.components
    }

    /// Components rendered as series, for reports.
    pub fn describe(&self) -> String {
        let parts: Vec<String> = self.components.iter().map(|s| s.to_string()).collect();
        format!("({})", parts.join(", "))
    }

    /// The substitution pair, when the arc was built from branches.
    pub fn substitutions(&self) -> Option<(&str, &str)> {
        match &self.origin {
            ArcOrigin::Pair { sub1, sub2, .. } => Some((sub1, sub2)),
            _ => None,
        }
    }

    pub fn branch_names(&self) -> Option<(&str, &str)> {
        match &self.origin {
            ArcOrigin::Pair { first, second, .. } => Some((first, second)),
            _ => None,
        }
    }
}

pub fn pair_arc(ts: &TensorSquare, b1: &Branch, b2: &Branch, sub1: &Series, sub2: &Series) -> Result<Arc, ArcError> {
    let first = b1.reparametrize(sub1)?;
    let second = b2.reparametrize(sub2)?;
    let components: Vec<Series> = first.components.into_iter().chain(second.components).collect();
    check_on(ts.ring(), &components)?;
    let origin = ArcOrigin::Pair {
        first: b1.name.clone(),
        second: b2.name.clone(),
        sub1: sub1.to_string(),
        sub2: sub2.to_string(),
    };
    Ok(Arc { origin, components })
}

/// Fails with `ArcOffVariety` when some relation composes to a known
/// nonzero series.
pub fn check_arc(defining: &Ideal, arc: &Arc) -> Result<(), ArcError> {
    check_relations(defining, &arc.components, |g| format!("{g:?}"))
}

/// Substitution pairs `(t, 0)`, `(t, t)` and `(t, c t^m)`, without repeats.
pub fn standard_substitutions(max_exp: u32, coeffs: &[Rational], horizon: u32) -> Vec<(Series, Series)> {
    let t = Series::t(horizon);
    let mut seconds = vec![Series::exact_zero(horizon), t.clone()];
    for c in coeffs {
        for m in 1..=max_exp {
            let s = Series::monomial(c.clone(), m, horizon);
            if !s.coeffs.is_empty() && !seconds.contains(&s) {
                seconds.push(s);
            }
        }
    }
    seconds.into_iter().map(|s| (t.clone(), s)).collect()
}

pub fn default_coefficients() -> Vec<Rational> {
    vec![int(1), int(-1), int(2)]
}

/// Pair arcs over all ordered branch pairs and the standard substitutions,
/// skipping the diagonal arcs `(b, b, t, t)`.
pub fn standard_arc_family(
    ts: &TensorSquare,
    branches: &[Branch],
    max_exp: u32,
    coeffs: &[Rational],
    horizon: u32,
) -> Result<Vec<Arc>, ArcError> {
    let subs = standard_substitutions(max_exp, coeffs, horizon);
    let t = Series::t(horizon);
    let mut out = Vec::new();
    for (i, b1) in branches.iter().enumerate() {
        for (j, b2) in branches.iter().enumerate() {
            for (s1, s2) in &subs {
                if i == j && *s2 == t {
                    continue;
                }
                out.push(pair_arc(ts, b1, b2, s1, s2)?);
            }
        }
    }
    Ok(out)
}
