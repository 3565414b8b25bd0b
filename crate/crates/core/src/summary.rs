//! Sample summaries: moments, type-7 quantiles, equal-tailed credible
//! intervals, fixed-bin histograms on `[0, 1]`, and the two-sample
//! Kolmogorov–Smirnov distance.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryReport {
    pub mean: f64,
    /// Unbiased (n − 1) sample variance; zero for a single value.
    pub variance: f64,
    pub interval_low: f64,
    pub interval_high: f64,
    pub credible_level: f64,
    pub n: usize,
}

fn sorted(values: &[f64]) -> Vec<f64> {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Type-7 quantile: linear interpolation at index `h = (n − 1)·q` of the
/// sorted sample.
pub fn quantile(values: &[f64], q: f64) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptySample);
    }
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::invalid(format!(
            "quantile level must lie in [0, 1], got {q}"
        )));
    }
    Ok(quantile_sorted(&sorted(values), q))
}

pub fn summarize(values: &[f64], level: f64) -> Result<SummaryReport> {
    if values.is_empty() {
        return Err(Error::EmptySample);
    }
    if !(level > 0.0 && level <= 1.0) {
        return Err(Error::invalid(format!(
            "credible level must lie in (0, 1], got {level}"
        )));
    }
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    let variance = if n > 1 {
        values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64
    } else {
        0.0
    };
    let s = sorted(values);
    let tail = (1.0 - level) / 2.0;
    Ok(SummaryReport {
        mean,
        variance,
        interval_low: quantile_sorted(&s, tail),
        interval_high: quantile_sorted(&s, 1.0 - tail),
        credible_level: level,
        n,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram {
    /// `n_bins + 1` uniform edges from 0 to 1.
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub densities: Vec<f64>,
}

impl Histogram {
    pub fn n_bins(&self) -> usize {
        self.counts.len()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Uniform bins over `[0, 1]`. Bins are `[lo, hi)` except the last, which is
/// closed so that a value of exactly 1 is counted.
pub fn histogram(values: &[f64], n_bins: usize) -> Result<Histogram> {
    if values.is_empty() {
        return Err(Error::EmptySample);
    }
    if n_bins == 0 {
        return Err(Error::invalid("histogram needs at least one bin"));
    }
    let mut counts = vec![0u64; n_bins];
    for &v in values {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::invalid(format!("value {v} outside [0, 1]")));
        }
        let bin = ((v * n_bins as f64) as usize).min(n_bins - 1);
        counts[bin] += 1;
    }
    let width = 1.0 / n_bins as f64;
    let n = values.len() as f64;
    let edges = (0..=n_bins).map(|i| i as f64 / n_bins as f64).collect();
    let densities = counts.iter().map(|&c| c as f64 / (n * width)).collect();
    Ok(Histogram {
        edges,
        counts,
        densities,
    })
}

/// Supremum distance between the empirical CDFs of `a` and `b`.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySample);
    }
    let a = sorted(a);
    let b = sorted(b);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        // step past every copy of x in both samples before comparing
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(d)
}
