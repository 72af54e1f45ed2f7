//! Buchberger's algorithm with the normal selection strategy and the
//! Gebauer–Möller installation of the product and chain criteria.
//!
//! When tracking is requested every basis element carries its
//! representation in terms of the input generators, which is what lets a
//! reduction to zero be turned into an explicit ideal combination.

use num_traits::One;

use crate::poly::{Monomial, MonomialOrder, Polynomial};
use crate::rational::Rational;

/// Reduced Gröbner basis: interreduced, monic, sorted by ascending leading
/// monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    nvars: usize,
    order: MonomialOrder,
    elements: Vec<Polynomial>,
    /// `transform[i][k]` is the coefficient of generator `k` in element `i`.
    transform: Option<Vec<Vec<Polynomial>>>,
}

/// `input = Σ cofactors[i] * basis[i] + normal_form`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub normal_form: Polynomial,
    pub cofactors: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The basis of the unit ideal is `{1}`.
    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_unit()
    }

    pub fn transform(&self) -> Option<&[Vec<Polynomial>]> {
        self.transform.as_deref()
    }

    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        let refs: Vec<&Polynomial> = self.elements.iter().collect();
        reduce_full(&f.with_order(self.order), &refs, false).0
    }

    pub fn reduce_with_trace(&self, f: &Polynomial) -> ReductionTrace {
        let refs: Vec<&Polynomial> = self.elements.iter().collect();
        let (normal_form, cofactors) = reduce_full(&f.with_order(self.order), &refs, true);
        ReductionTrace { normal_form, cofactors }
    }

    /// Rewrites basis cofactors as cofactors of the original generators.
    /// Requires a tracked basis.
    pub fn lift(&self, cofactors: &[Polynomial]) -> Option<Vec<Polynomial>> {
        let t = self.transform.as_ref()?;
        let ngens = t.first().map(|r| r.len()).unwrap_or(0);
        let mut out = vec![Polynomial::zero(self.nvars, self.order); ngens];
        for (c, row) in cofactors.iter().zip(t) {
            if c.is_zero() {
                continue;
            }
            for (k, r) in row.iter().enumerate() {
                if !r.is_zero() {
                    out[k] = &out[k] + &(c * r);
                }
            }
        }
        Some(out)
    }

    /// Every S-polynomial of a pair of basis elements reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let refs: Vec<&Polynomial> = self.elements.iter().collect();
        for j in 0..self.elements.len() {
            for i in 0..j {
                let (s, _) = s_polynomial(&self.elements[i], &self.elements[j]);
                if !reduce_full(&s, &refs, false).0.is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

fn lm(p: &Polynomial) -> &Monomial {
    p.leading_monomial().expect("nonzero polynomial")
}

/// S-polynomial of two monic polynomials, with the two multipliers.
fn s_polynomial(f: &Polynomial, g: &Polynomial) -> (Polynomial, (Monomial, Monomial)) {
    let l = lm(f).lcm(lm(g));
    let mf = l.div(lm(f)).unwrap();
    let mg = l.div(lm(g)).unwrap();
    let cf = f.leading_coeff().unwrap().recip();
    let cg = g.leading_coeff().unwrap().recip();
    let s = &f.mul_term(&mf, &cf) - &g.mul_term(&mg, &cg);
    (s, (mf, mg))
}

/// Full reduction (head and tail). Returns the normal form and, when asked,
/// the quotient attached to each divisor.
pub(crate) fn reduce_full(f: &Polynomial, divisors: &[&Polynomial], track: bool) -> (Polynomial, Vec<Polynomial>) {
    let nvars = f.nvars();
    let order = f.order();
    let mut quotients: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); if track { divisors.len() } else { 0 }];
    let mut p = f.clone();
    let mut rest: Vec<(Monomial, Rational)> = Vec::new();
    while let Some((m, c)) = p.terms().first().cloned() {
        let hit = divisors.iter().enumerate().find(|(_, g)| !g.is_zero() && lm(g).divides(&m));
        match hit {
            Some((i, g)) => {
                let q = m.div(lm(g)).unwrap();
                let qc = &c / g.leading_coeff().unwrap();
                p.sub_scaled(&qc, &q, g);
                if track {
                    quotients[i].push((q, qc));
                }
            }
            None => {
                rest.push((m.clone(), c.clone()));
                p.sub_scaled(&c, &Monomial::one(nvars), &Polynomial::monomial(m, Rational::one(), order));
            }
        }
    }
    let nf = Polynomial::from_terms(nvars, order, rest);
    let quotients = quotients.into_iter().map(|q| Polynomial::from_terms(nvars, order, q)).collect();
    (nf, quotients)
}

struct Element {
    poly: Polynomial,
    rep: Option<Vec<Polynomial>>,
    active: bool,
}

#[derive(Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Builder {
    nvars: usize,
    order: MonomialOrder,
    ngens: usize,
    elems: Vec<Element>,
    pairs: Vec<Pair>,
    track: bool,
}

impl Builder {
    fn active(&self) -> Vec<usize> {
        (0..self.elems.len()).filter(|&i| self.elems[i].active).collect()
    }

    fn reduce(&self, f: &Polynomial, rep: Option<Vec<Polynomial>>) -> (Polynomial, Option<Vec<Polynomial>>) {
        let idx = self.active();
        let divisors: Vec<&Polynomial> = idx.iter().map(|&i| &self.elems[i].poly).collect();
        let (nf, quots) = reduce_full(f, &divisors, self.track);
        let rep = rep.map(|mut r| {
            for (q, &i) in quots.iter().zip(&idx) {
                if q.is_zero() {
                    continue;
                }
                let gi = self.elems[i].rep.as_ref().unwrap();
                for (k, rk) in r.iter_mut().enumerate() {
                    if !gi[k].is_zero() {
                        *rk = &*rk - &(q * &gi[k]);
                    }
                }
            }
            r
        });
        (nf, rep)
    }

    fn insert(&mut self, p: Polynomial, rep: Option<Vec<Polynomial>>) {
        let inv = p.leading_coeff().unwrap().recip();
        let poly = p.scale(&inv);
        let rep = rep.map(|r| r.iter().map(|x| x.scale(&inv)).collect());
        let h = self.elems.len();
        self.elems.push(Element { poly, rep, active: false });
        self.update(h);
    }

    /// Gebauer–Möller update for a new element `h`.
    fn update(&mut self, h: usize) {
        let lh = lm(&self.elems[h].poly).clone();
        let active = self.active();

        let mut cands: Vec<(usize, Monomial)> = active
            .iter()
            .map(|&g| (g, lh.lcm(lm(&self.elems[g].poly))))
            .collect();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        while let Some((g1, l1)) = (!cands.is_empty()).then(|| cands.remove(0)) {
            let coprime = lh.is_coprime(lm(&self.elems[g1].poly));
            let dominated = cands.iter().chain(kept.iter()).any(|(_, l2)| l2.divides(&l1));
            if coprime || !dominated {
                kept.push((g1, l1));
            }
        }
        let fresh: Vec<Pair> = kept
            .into_iter()
            .filter(|(g, _)| !lh.is_coprime(lm(&self.elems[*g].poly)))
            .map(|(g, l)| Pair { i: g, j: h, lcm: l })
            .collect();

        let elems = &self.elems;
        self.pairs.retain(|p| {
            let li = lm(&elems[p.i].poly);
            let lj = lm(&elems[p.j].poly);
            !lh.divides(&p.lcm) || li.lcm(&lh) == p.lcm || lh.lcm(lj) == p.lcm
        });
        self.pairs.extend(fresh);

        for &g in &active {
            if lh.divides(lm(&self.elems[g].poly)) {
                self.elems[g].active = false;
            }
        }
        self.elems[h].active = true;
    }

    fn select(&mut self) -> Option<Pair> {
        let order = self.order;
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                order
                    .cmp(&a.lcm, &b.lcm)
                    .then(a.j.cmp(&b.j))
                    .then(a.i.cmp(&b.i))
            })
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }

    fn spoly_rep(&self, p: &Pair, mults: &(Monomial, Monomial)) -> Option<Vec<Polynomial>> {
        if !self.track {
            return None;
        }
        let (ei, ej) = (&self.elems[p.i], &self.elems[p.j]);
        let ci = ei.poly.leading_coeff().unwrap().recip();
        let cj = ej.poly.leading_coeff().unwrap().recip();
        let (ri, rj) = (ei.rep.as_ref().unwrap(), ej.rep.as_ref().unwrap());
        Some(
            ri.iter()
                .zip(rj)
                .map(|(a, b)| &a.mul_term(&mults.0, &ci) - &b.mul_term(&mults.1, &cj))
                .collect(),
        )
    }
}

/// Computes the reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger(gens: &[Polynomial], nvars: usize, order: MonomialOrder, track: bool) -> GroebnerBasis {
    let ngens = gens.len();
    let mut b = Builder { nvars, order, ngens, elems: Vec::new(), pairs: Vec::new(), track };

    for (k, g) in gens.iter().enumerate() {
        let g = g.with_order(order);
        let rep = track.then(|| unit_vector(ngens, k, nvars, order));
        let (nf, rep) = b.reduce(&g, rep);
        if !nf.is_zero() {
            b.insert(nf, rep);
        }
    }

    while let Some(pair) = b.select() {
        let (s, mults) = s_polynomial(&b.elems[pair.i].poly, &b.elems[pair.j].poly);
        let rep = b.spoly_rep(&pair, &mults);
        let (h, rep) = b.reduce(&s, rep);
        if !h.is_zero() {
            b.insert(h, rep);
        }
    }

    finish(b)
}

fn unit_vector(n: usize, k: usize, nvars: usize, order: MonomialOrder) -> Vec<Polynomial> {
    (0..n)
        .map(|i| if i == k { Polynomial::one(nvars, order) } else { Polynomial::zero(nvars, order) })
        .collect()
}

/// Interreduces the active elements into the reduced basis.
fn finish(b: Builder) -> GroebnerBasis {
    let Builder { nvars, order, ngens, elems, track, .. } = b;
    let mut basis: Vec<(Polynomial, Option<Vec<Polynomial>>)> = elems
        .into_iter()
        .filter(|e| e.active)
        .map(|e| (e.poly, e.rep))
        .collect();
    basis.sort_by(|a, b| order.cmp(lm(&a.0), lm(&b.0)));

    if basis.iter().any(|(p, _)| p.is_unit()) {
        // unit ideal: keep the element equal to 1 and its representation
        let (p, rep) = basis.into_iter().find(|(p, _)| p.is_unit()).unwrap();
        let c = p.leading_coeff().unwrap().recip();
        return GroebnerBasis {
            nvars,
            order,
            elements: vec![p.scale(&c)],
            transform: track.then(|| rep.unwrap().iter().map(|r| r.scale(&c)).collect::<Vec<_>>()).map(|r| vec![r]),
        };
    }

    for i in 0..basis.len() {
        let others: Vec<&Polynomial> = basis
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, (p, _))| p)
            .collect();
        let (nf, quots) = reduce_full(&basis[i].0, &others, track);
        let rep = if track {
            let mut r = basis[i].1.clone().unwrap();
            let other_idx: Vec<usize> = (0..basis.len()).filter(|&j| j != i).collect();
            for (q, &j) in quots.iter().zip(&other_idx) {
                if q.is_zero() {
                    continue;
                }
                let gj = basis[j].1.as_ref().unwrap();
                for (k, rk) in r.iter_mut().enumerate() {
                    if !gj[k].is_zero() {
                        *rk = &*rk - &(q * &gj[k]);
                    }
                }
            }
            Some(r)
        } else {
            None
        };
        debug_assert!(!nf.is_zero(), "minimal basis element reduced to zero");
        let c = nf.leading_coeff().unwrap().recip();
        basis[i] = (nf.scale(&c), rep.map(|r| r.iter().map(|x| x.scale(&c)).collect()));
    }
    basis.sort_by(|a, b| order.cmp(lm(&a.0), lm(&b.0)));

    let transform = if track {
        Some(basis.iter().map(|(_, r)| r.clone().unwrap_or_else(|| vec![Polynomial::zero(nvars, order); ngens])).collect())
    } else {
        None
    };
    GroebnerBasis { nvars, order, elements: basis.into_iter().map(|(p, _)| p).collect(), transform }
}
