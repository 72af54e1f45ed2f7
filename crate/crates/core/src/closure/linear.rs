//! Sparse fraction-free Gaussian elimination over the integers, used to
//! solve the certificate systems exactly.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// A row `Σ coeffs[j] x_j = rhs`, entries sorted by column.
#[derive(Clone, Debug)]
struct Row {
    entries: Vec<(usize, BigInt)>,
    rhs: BigInt,
}

impl Row {
    fn from_rational(entries: &[(usize, Rational)], rhs: &Rational) -> Row {
        let mut den = rhs.denom().clone();
        for (_, c) in entries {
            den = den.lcm(c.denom());
        }
        let scale = |c: &Rational| c.numer() * (&den / c.denom());
        let mut e: Vec<(usize, BigInt)> = entries
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (*j, scale(c)))
            .collect();
        e.sort_by_key(|(j, _)| *j);
        let mut row = Row { entries: e, rhs: scale(rhs) };
        row.normalize();
        row
    }

    fn lead(&self) -> Option<usize> {
        self.entries.first().map(|(j, _)| *j)
    }

    /// Divides out the content and makes the leading entry positive.
    fn normalize(&mut self) {
        let mut g = self.rhs.abs();
        for (_, c) in &self.entries {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        let neg = self.entries.first().is_some_and(|(_, c)| c.is_negative());
        if !g.is_zero() && !g.is_one() {
            for (_, c) in &mut self.entries {
                *c = &*c / &g;
            }
            self.rhs = &self.rhs / &g;
        }
        if neg {
            for (_, c) in &mut self.entries {
                *c = -&*c;
            }
            self.rhs = -&self.rhs;
        }
    }

    /// `p * self − a * pivot`, where `p` is the pivot's leading entry and
    /// `a` is this row's entry in the pivot column.
    fn eliminate(&mut self, pivot: &Row, a: &BigInt) {
        let p = &pivot.entries[0].1;
        let mut out = Vec::with_capacity(self.entries.len() + pivot.entries.len());
        let (mut i, mut k) = (0, 0);
        while i < self.entries.len() || k < pivot.entries.len() {
            let si = self.entries.get(i).map(|e| e.0).unwrap_or(usize::MAX);
            let pk = pivot.entries.get(k).map(|e| e.0).unwrap_or(usize::MAX);
            let (col, v) = if si < pk {
                i += 1;
                (si, p * &self.entries[i - 1].1)
            } else if pk < si {
                k += 1;
                (pk, -(a * &pivot.entries[k - 1].1))
            } else {
                i += 1;
                k += 1;
                (si, p * &self.entries[i - 1].1 - a * &pivot.entries[k - 1].1)
            };
            if !v.is_zero() {
                out.push((col, v));
            }
        }
        self.entries = out;
        self.rhs = p * &self.rhs - a * &pivot.rhs;
        self.normalize();
    }

    fn entry(&self, col: usize) -> Option<&BigInt> {
        self.entries
            .binary_search_by_key(&col, |(j, _)| *j)
            .ok()
            .map(|idx| &self.entries[idx].1)
    }
}

/// Solves `Σ_j columns[j] x_j = rhs`, where rows are indexed by arbitrary
/// keys. Returns the solution with free variables set to zero, or `None`
/// when the system is inconsistent.
pub(crate) fn solve<K: Ord + Clone>(
    columns: &[Vec<(K, Rational)>],
    rhs: &[(K, Rational)],
) -> Option<Vec<Rational>> {
    let mut rows: BTreeMap<K, (Vec<(usize, Rational)>, Rational)> = BTreeMap::new();
    for (j, col) in columns.iter().enumerate() {
        for (k, c) in col {
            rows.entry(k.clone()).or_insert_with(|| (Vec::new(), Rational::zero())).0.push((j, c.clone()));
        }
    }
    for (k, c) in rhs {
        rows.entry(k.clone()).or_insert_with(|| (Vec::new(), Rational::zero())).1 = c.clone();
    }
    let mut pivots: BTreeMap<usize, Row> = BTreeMap::new();
    for (entries, b) in rows.values() {
        let mut row = Row::from_rational(entries, b);
        loop {
            match row.lead() {
                None => {
                    if !row.rhs.is_zero() {
                        return None;
                    }
                    break;
                }
                Some(c) => match pivots.get(&c) {
                    Some(p) => {
                        let a = row.entries[0].1.clone();
                        row.eliminate(p, &a);
                    }
                    None => {
                        pivots.insert(c, row);
                        break;
                    }
                },
            }
        }
    }
    let mut x = vec![Rational::zero(); columns.len()];
    for (&c, row) in pivots.iter().rev() {
        let mut acc = Rational::from_integer(row.rhs.clone());
        for (j, v) in &row.entries[1..] {
            if !x[*j].is_zero() {
                acc -= &x[*j] * Rational::from_integer(v.clone());
            }
        }
        x[c] = acc / Rational::from_integer(row.entry(c).unwrap().clone());
    }
    Some(x)
}
