//! Random variates for beta and binomial draws.
//!
//! Beta variates are built as `G₁ / (G₁ + G₂)` from two independent unit-scale
//! gamma draws. Gamma draws use the Marsaglia–Tsang squeeze for shape ≥ 1 and
//! the boost `G(a) = G(a + 1) · U^{1/a}` for shape < 1. The gammas are carried
//! in log space, so very small shapes (where `G` underflows to zero) still
//! produce a well-defined ratio.

use rand::Rng;
use rand_distr::{Binomial, Distribution, Open01, StandardNormal};

use crate::beta::BetaParams;
use crate::error::{Error, Result};

/// `ln G` for `G ~ Gamma(shape, 1)`, `shape ≥ 1`.
fn ln_gamma_variate_large<R: Rng + ?Sized>(rng: &mut R, shape: f64) -> f64 {
    let d = shape - 1.0 / 3.0;
    let c = 1.0 / (9.0 * d).sqrt();
    loop {
        let x: f64 = rng.sample(StandardNormal);
        let t = 1.0 + c * x;
        if t <= 0.0 {
            continue;
        }
        let v = t * t * t;
        let u: f64 = rng.sample(Open01);
        let x2 = x * x;
        if u < 1.0 - 0.0331 * x2 * x2 || u.ln() < 0.5 * x2 + d * (1.0 - v + v.ln()) {
            return d.ln() + v.ln();
        }
    }
}

/// `ln G` for `G ~ Gamma(shape, 1)`, any `shape > 0`.
pub fn sample_ln_gamma<R: Rng + ?Sized>(rng: &mut R, shape: f64) -> f64 {
    if shape >= 1.0 {
        ln_gamma_variate_large(rng, shape)
    } else {
        let boosted = ln_gamma_variate_large(rng, shape + 1.0);
        let u: f64 = rng.sample(Open01);
        boosted + u.ln() / shape
    }
}

pub fn sample_gamma<R: Rng + ?Sized>(rng: &mut R, shape: f64) -> f64 {
    sample_ln_gamma(rng, shape).exp()
}

/// One `Beta(α, β)` draw in `[0, 1]`.
pub fn sample_beta<R: Rng + ?Sized>(rng: &mut R, p: &BetaParams) -> f64 {
    let ln_a = sample_ln_gamma(rng, p.alpha());
    let ln_b = sample_ln_gamma(rng, p.beta());
    // G₁/(G₁+G₂) = 1/(1 + exp(ln G₂ − ln G₁))
    1.0 / (1.0 + (ln_b - ln_a).exp())
}

/// One `Binomial(n, θ)` draw.
pub fn sample_binomial<R: Rng + ?Sized>(rng: &mut R, n: u64, theta: f64) -> Result<u64> {
    if !(0.0..=1.0).contains(&theta) {
        return Err(Error::invalid(format!(
            "theta must lie in [0, 1], got {theta}"
        )));
    }
    let dist = Binomial::new(n, theta).map_err(|e| Error::invalid(e.to_string()))?;
    Ok(dist.sample(rng))
}
