//! Floating-point ratio checks along declared branches. Heuristic only:
//! nothing here feeds a symbolic verdict.

use std::fmt::Write as _;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arc::Branch;
use crate::lipschitz::SaturationQuery;
use crate::poly::Polynomial;
use crate::rational::to_f64;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SamplerError {
    #[error("scales must be positive and strictly decreasing")]
    BadScales,
    #[error("samples_per_scale must be at least 1")]
    NoSamples,
    #[error("no branches to sample")]
    NoBranches,
    #[error("branch {branch} has {got} components, ring has {expected} variables")]
    Arity { branch: String, expected: usize, got: usize },
    #[error("every sample was degenerate ({skipped} skipped)")]
    DegenerateSample { skipped: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EpsilonLadder {
    pub scales: Vec<f64>,
    pub samples_per_scale: usize,
    pub seed: u64,
}

impl Default for EpsilonLadder {
    fn default() -> Self {
        EpsilonLadder { scales: (1..=6).map(|k| 10f64.powi(-k)).collect(), samples_per_scale: 64, seed: 0 }
    }
}

impl EpsilonLadder {
    pub fn new(scales: Vec<f64>, samples_per_scale: usize, seed: u64) -> Result<Self, SamplerError> {
        let l = EpsilonLadder { scales, samples_per_scale, seed };
        l.validate()?;
        Ok(l)
    }

    fn validate(&self) -> Result<(), SamplerError> {
        if self.samples_per_scale == 0 {
            return Err(SamplerError::NoSamples);
        }
        let ok = !self.scales.is_empty()
            && self.scales.iter().all(|s| s.is_finite() && *s > 0.0)
            && self.scales.windows(2).all(|w| w[0] > w[1]);
        if !ok {
            return Err(SamplerError::BadScales);
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictHint {
    Bounded,
    Diverging,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub scale: usize,
    pub pair: String,
    pub t_re: f64,
    pub t_im: f64,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioReport {
    pub scales: Vec<f64>,
    pub maxima: Vec<f64>,
    pub verdict_hint: VerdictHint,
    pub growth_exponent_estimate: f64,
    /// Points skipped because the denominator vanished.
    pub degenerate_samples: usize,
    /// Degenerate points where the numerator did not vanish.
    pub saturation_failure_hints: usize,
    #[serde(skip)]
    pub samples: Vec<SampleRecord>,
}

impl RatioReport {
    fn from_maxima(scales: &[f64], maxima: Vec<f64>, degenerate: usize, hints: usize, samples: Vec<SampleRecord>) -> Self {
        let growth = growth_exponent(scales, &maxima);
        let verdict_hint = if diverging(&maxima) {
            VerdictHint::Diverging
        } else if growth < 0.25 {
            VerdictHint::Bounded
        } else {
            VerdictHint::Inconclusive
        };
        RatioReport {
            scales: scales.to_vec(),
            maxima,
            verdict_hint,
            growth_exponent_estimate: growth,
            degenerate_samples: degenerate,
            saturation_failure_hints: hints,
            samples,
        }
    }

    pub fn to_table(&self) -> String {
        let mut s = String::from("scale        max ratio\n");
        for (e, m) in self.scales.iter().zip(&self.maxima) {
            let _ = writeln!(s, "{e:<12.3e} {m:.6e}");
        }
        let _ = writeln!(s, "hint: {:?}, exponent ≈ {:.3}", self.verdict_hint, self.growth_exponent_estimate);
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("scale_index,scale,pair,t_re,t_im,ratio\n");
        for r in &self.samples {
            let _ = writeln!(s, "{},{},{},{},{},{}", r.scale, self.scales[r.scale], r.pair, r.t_re, r.t_im, r.ratio);
        }
        s
    }
}

/// Three consecutive strictly increasing maxima with at least a tenfold
/// rise from first to last.
pub fn diverging(maxima: &[f64]) -> bool {
    maxima.windows(3).any(|w| w[0] < w[1] && w[1] < w[2] && w[2] >= 10.0 * w[0])
}

/// Least-squares slope of `ln max` against `ln(1/scale)`.
pub fn growth_exponent(scales: &[f64], maxima: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = scales
        .iter()
        .zip(maxima)
        .filter(|(_, m)| m.is_finite() && **m > 0.0)
        .map(|(s, m)| (-s.ln(), m.ln()))
        .collect();
    if pts.len() < 2 {
        return 0.0;
    }
    let n = pts.len() as f64;
    let (mx, my) = (pts.iter().map(|p| p.0).sum::<f64>() / n, pts.iter().map(|p| p.1).sum::<f64>() / n);
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

fn eval(p: &Polynomial, pt: &[Complex64]) -> Complex64 {
    p.evaluate_with(pt, |c| Complex64::new(to_f64(c), 0.0))
}

fn sample_t(rng: &mut ChaCha8Rng, scale: f64) -> Complex64 {
    let r = rng.gen_range(scale / 2.0..=scale);
    let phase = rng.gen_range(0.0..std::f64::consts::TAU);
    Complex64::from_polar(r, phase)
}

fn check_branches(branches: &[Branch], nvars: usize) -> Result<(), SamplerError> {
    if branches.is_empty() {
        return Err(SamplerError::NoBranches);
    }
    for b in branches {
        if b.components().len() != nvars {
            return Err(SamplerError::Arity { branch: b.name.clone(), expected: nvars, got: b.components().len() });
        }
    }
    Ok(())
}

const DEGENERATE: f64 = 1e-300;

/// `|p| / maxᵢ |pᵢ|` at branch points, maxima per scale.
pub fn sample_ideal_ratio(
    p: &Polynomial,
    gens: &[Polynomial],
    branches: &[Branch],
    ladder: &EpsilonLadder,
) -> Result<RatioReport, SamplerError> {
    ladder.validate()?;
    check_branches(branches, p.nvars())?;
    let mut rng = ChaCha8Rng::seed_from_u64(ladder.seed);
    let (mut maxima, mut samples, mut skipped, mut taken) = (Vec::new(), Vec::new(), 0, 0);
    for (k, &s) in ladder.scales.iter().enumerate() {
        let mut best = 0f64;
        for b in branches {
            for _ in 0..ladder.samples_per_scale {
                let t = sample_t(&mut rng, s);
                let pt = b.eval_complex(t);
                let den = gens.iter().map(|g| eval(g, &pt).norm()).fold(0.0, f64::max);
                if den <= DEGENERATE {
                    skipped += 1;
                    continue;
                }
                let ratio = eval(p, &pt).norm() / den;
                taken += 1;
                best = best.max(ratio);
                samples.push(SampleRecord { scale: k, pair: b.name.clone(), t_re: t.re, t_im: t.im, ratio });
            }
        }
        maxima.push(best);
    }
    if taken == 0 {
        return Err(SamplerError::DegenerateSample { skipped });
    }
    Ok(RatioReport::from_maxima(&ladder.scales, maxima, skipped, 0, samples))
}

/// `|f(y₁) − f(y₂)| / ‖π(y₁) − π(y₂)‖∞` over pairs `(bᵢ(t), bⱼ(0))` and,
/// for distinct branches, `(bᵢ(t), bⱼ(t))`.
pub fn sample_lipschitz_ratio(
    q: &SaturationQuery,
    branches: &[Branch],
    ladder: &EpsilonLadder,
) -> Result<RatioReport, SamplerError> {
    ladder.validate()?;
    let target = q.morphism.target();
    check_branches(branches, target.nvars())?;
    let f = q.element.clone();
    let images = q.morphism.images();
    let zero = Complex64::new(0.0, 0.0);
    let mut rng = ChaCha8Rng::seed_from_u64(ladder.seed);
    let (mut maxima, mut samples) = (Vec::new(), Vec::new());
    let (mut skipped, mut hints, mut taken) = (0, 0, 0);
    for (k, &s) in ladder.scales.iter().enumerate() {
        let mut best = 0f64;
        for (i, bi) in branches.iter().enumerate() {
            for (j, bj) in branches.iter().enumerate() {
                let pairs: &[bool] = if i == j { &[true] } else { &[true, false] };
                for &anchored in pairs {
                    let label = format!("{}:{}{}", bi.name, bj.name, if anchored { "@0" } else { "" });
                    for _ in 0..ladder.samples_per_scale {
                        let t = sample_t(&mut rng, s);
                        let p1 = bi.eval_complex(t);
                        let p2 = bj.eval_complex(if anchored { zero } else { t });
                        let num = (eval(&f, &p1) - eval(&f, &p2)).norm();
                        let den = images.iter().map(|g| (eval(g, &p1) - eval(g, &p2)).norm()).fold(0.0, f64::max);
                        if den <= DEGENERATE {
                            skipped += 1;
                            if num > 1e-9 * (1.0 + eval(&f, &p1).norm()) {
                                hints += 1;
                            }
                            continue;
                        }
                        let ratio = num / den;
                        taken += 1;
                        best = best.max(ratio);
                        samples.push(SampleRecord { scale: k, pair: label.clone(), t_re: t.re, t_im: t.im, ratio });
                    }
                }
            }
        }
        maxima.push(best);
    }
    if taken == 0 {
        return Err(SamplerError::DegenerateSample { skipped });
    }
    Ok(RatioReport::from_maxima(&ladder.scales, maxima, skipped, hints, samples))
}

#[cfg(test)]
mod tests;
