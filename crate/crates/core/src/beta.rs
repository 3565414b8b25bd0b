//! Beta priors over a survival probability and their binomial updates.
//!
//! A `Beta(α, β)` prior combined with `x` successes in `n` pass/fail trials
//! yields the posterior `Beta(α + x, β + n − x)`. Normalizing constants are
//! evaluated through log-gamma so that shapes in the hundreds stay finite.

use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

/// Shape pair of a beta distribution. Both shapes are finite and strictly
/// positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawBeta")]
pub struct BetaParams {
    alpha: f64,
    beta: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBeta {
    alpha: f64,
    beta: f64,
}

impl TryFrom<RawBeta> for BetaParams {
    type Error = Error;

    fn try_from(raw: RawBeta) -> Result<Self> {
        BetaParams::new(raw.alpha, raw.beta)
    }
}

impl BetaParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::invalid(format!(
                "alpha must be finite and > 0, got {alpha}"
            )));
        }
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::invalid(format!(
                "beta must be finite and > 0, got {beta}"
            )));
        }
        Ok(Self { alpha, beta })
    }

    /// The flat prior `Beta(1, 1)`.
    pub fn uniform() -> Self {
        Self {
            alpha: 1.0,
            beta: 1.0,
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn mean(&self) -> f64 {
        beta_mean(self)
    }

    pub fn variance(&self) -> f64 {
        beta_variance(self)
    }

    /// `E[θ²] = α(α+1) / ((α+β)(α+β+1))`.
    pub fn second_moment(&self) -> f64 {
        let s = self.alpha + self.beta;
        self.alpha * (self.alpha + 1.0) / (s * (s + 1.0))
    }
}

/// Outcome of `n` pass/fail trials with `x` successes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawRecord")]
pub struct TestRecord {
    n: u64,
    x: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRecord {
    n: u64,
    x: u64,
}

impl TryFrom<RawRecord> for TestRecord {
    type Error = Error;

    fn try_from(raw: RawRecord) -> Result<Self> {
        TestRecord::new(raw.n, raw.x)
    }
}

impl TestRecord {
    pub fn new(n: u64, x: u64) -> Result<Self> {
        if x > n {
            return Err(Error::invalid(format!(
                "successes x = {x} exceed trials n = {n}"
            )));
        }
        Ok(Self { n, x })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn x(&self) -> u64 {
        self.x
    }

    pub fn failures(&self) -> u64 {
        self.n - self.x
    }
}

/// A prior point estimate together with the pseudo-count of trials that
/// backs it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawElicitation")]
pub struct PriorElicitation {
    theta_hat: f64,
    n_pr: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawElicitation {
    theta_hat: f64,
    n_pr: f64,
}

impl TryFrom<RawElicitation> for PriorElicitation {
    type Error = Error;

    fn try_from(raw: RawElicitation) -> Result<Self> {
        PriorElicitation::new(raw.theta_hat, raw.n_pr)
    }
}

impl PriorElicitation {
    pub fn new(theta_hat: f64, n_pr: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&theta_hat) {
            return Err(Error::invalid(format!(
                "theta_hat must lie in [0, 1], got {theta_hat}"
            )));
        }
        if !(n_pr.is_finite() && n_pr >= 0.0) {
            return Err(Error::invalid(format!(
                "n_pr must be finite and >= 0, got {n_pr}"
            )));
        }
        Ok(Self { theta_hat, n_pr })
    }

    pub fn theta_hat(&self) -> f64 {
        self.theta_hat
    }

    pub fn n_pr(&self) -> f64 {
        self.n_pr
    }
}

/// `α = n_pr·θ̂ + 1`, `β = n_pr·(1 − θ̂) + 1`. With `n_pr = 0` this is the
/// flat prior.
pub fn elicit_prior(e: &PriorElicitation) -> BetaParams {
    BetaParams {
        alpha: e.n_pr * e.theta_hat + 1.0,
        beta: e.n_pr * (1.0 - e.theta_hat) + 1.0,
    }
}

pub fn beta_mean(p: &BetaParams) -> f64 {
    p.alpha / (p.alpha + p.beta)
}

pub fn beta_variance(p: &BetaParams) -> f64 {
    let s = p.alpha + p.beta;
    p.alpha * p.beta / (s * s * (s + 1.0))
}

/// `ln B(a, b) = ln Γ(a) + ln Γ(b) − ln Γ(a + b)`.
pub fn ln_beta(a: f64, b: f64) -> f64 {
    // B(1, b) = 1/b exactly
    if a == 1.0 {
        return -b.ln();
    }
    if b == 1.0 {
        return -a.ln();
    }
    ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)
}

fn ln_choose(n: u64, k: u64) -> f64 {
    if k == 0 || k == n {
        return 0.0;
    }
    ln_gamma(n as f64 + 1.0) - ln_gamma(k as f64 + 1.0) - ln_gamma((n - k) as f64 + 1.0)
}

/// Beta density at `theta`.
///
/// Where the density diverges (θ = 0 with α < 1, θ = 1 with β < 1) this
/// returns [`Error::InfiniteDensity`] instead of an infinite value.
pub fn beta_pdf(p: &BetaParams, theta: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&theta) {
        return Err(Error::invalid(format!(
            "theta must lie in [0, 1], got {theta}"
        )));
    }
    let ln_norm = -ln_beta(p.alpha, p.beta);
    // boundary terms: 0^0 is taken as 1
    let ln_left = if theta == 0.0 {
        match p.alpha.partial_cmp(&1.0) {
            Some(std::cmp::Ordering::Less) => return Err(Error::InfiniteDensity { theta }),
            Some(std::cmp::Ordering::Equal) => 0.0,
            _ => return Ok(0.0),
        }
    } else {
        (p.alpha - 1.0) * theta.ln()
    };
    let ln_right = if theta == 1.0 {
        match p.beta.partial_cmp(&1.0) {
            Some(std::cmp::Ordering::Less) => return Err(Error::InfiniteDensity { theta }),
            Some(std::cmp::Ordering::Equal) => 0.0,
            _ => return Ok(0.0),
        }
    } else {
        (p.beta - 1.0) * (-theta).ln_1p()
    };
    Ok((ln_norm + ln_left + ln_right).exp())
}

pub fn conjugate_update(prior: &BetaParams, data: &TestRecord) -> BetaParams {
    BetaParams {
        alpha: prior.alpha + data.x as f64,
        beta: prior.beta + data.failures() as f64,
    }
}

/// Prior predictive probability of `x` successes in `n` trials:
/// `C(n, x) · B(α + x, β + n − x) / B(α, β)`.
pub fn beta_binomial_pmf(p: &BetaParams, n: u64, x: u64) -> Result<f64> {
    if x > n {
        return Err(Error::invalid(format!("x = {x} exceeds n = {n}")));
    }
    let ln_p = ln_choose(n, x) + ln_beta(p.alpha + x as f64, p.beta + (n - x) as f64)
        - ln_beta(p.alpha, p.beta);
    Ok(ln_p.exp())
}
