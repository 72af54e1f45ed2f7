//! Newton polyhedron membership for monomial ideals, decided by an exact
//! phase-one simplex.

use num_traits::{One, Signed, Zero};

use super::ClosureError;
use crate::ideal::Ideal;
use crate::poly::Monomial;
use crate::rational::Rational;

/// A point `x ≥ 0` with `A x = b`, or `None` when there is none.
/// Phase one of the simplex method with Bland's rule, in exact arithmetic.
pub fn lp_feasible(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let m = a.len();
    let nx = a.first().map_or(0, |r| r.len());
    let ncols = nx + m;
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut rhs: Vec<Rational> = Vec::with_capacity(m);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        let flip = bi.is_negative();
        let mut r: Vec<Rational> = row.iter().map(|v| if flip { -v } else { v.clone() }).collect();
        r.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
        rows.push(r);
        rhs.push(bi.abs());
    }
    let mut basis: Vec<usize> = (nx..ncols).collect();
    let mut cost: Vec<Rational> = (0..ncols)
        .map(|j| if j < nx { -rows.iter().map(|r| r[j].clone()).sum::<Rational>() } else { Rational::zero() })
        .collect();
    let mut value: Rational = rhs.iter().sum();
    while let Some(j) = (0..ncols).find(|&j| cost[j].is_negative()) {
        let mut pick: Option<(usize, Rational)> = None;
        for i in 0..m {
            if rows[i][j].is_positive() {
                let ratio = &rhs[i] / &rows[i][j];
                let better = match &pick {
                    None => true,
                    Some((k, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*k]),
                };
                if better {
                    pick = Some((i, ratio));
                }
            }
        }
        // an unbounded direction cannot occur: the objective is bounded below by 0
        let (r, _) = pick?;
        let p = rows[r][j].clone();
        for v in rows[r].iter_mut() {
            *v = &*v / &p;
        }
        rhs[r] = &rhs[r] / &p;
        let pivot_row = rows[r].clone();
        let pivot_rhs = rhs[r].clone();
        for i in 0..m {
            if i == r || rows[i][j].is_zero() {
                continue;
            }
            let f = rows[i][j].clone();
            for (v, pv) in rows[i].iter_mut().zip(&pivot_row) {
                *v -= &f * pv;
            }
            rhs[i] -= &f * &pivot_rhs;
        }
        let d = cost[j].clone();
        for (v, pv) in cost.iter_mut().zip(&pivot_row) {
            *v -= &d * pv;
        }
        value += &d * &pivot_rhs;
        basis[r] = j;
    }
    if !value.is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); nx];
    for (i, &j) in basis.iter().enumerate() {
        if j < nx {
            x[j] = rhs[i].clone();
        }
    }
    Some(x)
}

fn exponent_vectors(ideal: &Ideal) -> Result<Vec<Vec<u32>>, ClosureError> {
    ideal
        .nonzero_generators()
        .iter()
        .enumerate()
        .map(|(k, g)| match g.terms() {
            [(m, _)] => Ok(m.exponents().to_vec()),
            _ => Err(ClosureError::NonMonomialIdeal(k)),
        })
        .collect()
}

/// Convex weights `λ` on the generators with `Σ λ_j a_j ≤ m`, when they exist.
pub fn newton_weights(m: &Monomial, ideal: &Ideal) -> Result<Option<Vec<Rational>>, ClosureError> {
    let gens = exponent_vectors(ideal)?;
    if gens.is_empty() {
        return Ok(None);
    }
    let n = m.nvars();
    let r = gens.len();
    let mut a = Vec::with_capacity(n + 1);
    let mut b = Vec::with_capacity(n + 1);
    for k in 0..n {
        let mut row: Vec<Rational> = gens.iter().map(|g| Rational::from_integer(g[k].into())).collect();
        row.extend((0..n).map(|s| if s == k { Rational::one() } else { Rational::zero() }));
        a.push(row);
        b.push(Rational::from_integer(m.exponents()[k].into()));
    }
    let mut last = vec![Rational::one(); r];
    last.extend((0..n).map(|_| Rational::zero()));
    a.push(last);
    b.push(Rational::one());
    Ok(lp_feasible(&a, &b).map(|x| x[..r].to_vec()))
}

/// `m` lies in the Newton polyhedron `conv(a_j) + ℝⁿ₊` of a monomial ideal,
/// i.e. in its integral closure.
pub fn newton_member(m: &Monomial, ideal: &Ideal) -> Result<bool, ClosureError> {
    Ok(newton_weights(m, ideal)?.is_some())
}
