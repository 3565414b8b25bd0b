mod common;

use relcalc_core::{
    beta_binomial_pmf, beta_pdf, histogram, sample_beta, summarize, BetaParams, RngStream,
};

fn bp(a: f64, b: f64) -> BetaParams {
    BetaParams::new(a, b).unwrap()
}

#[test]
fn quadrature_oracle_self_check() {
    assert!((common::integrate(|x| x * x, 0.0, 1.0, 1e-14) - 1.0 / 3.0).abs() < 1e-14);
    // B(1/2, 1/2) = π
    assert!((common::beta_fn(0.5, 0.5) - std::f64::consts::PI).abs() < 1e-9);
    // B(2, 3) = 1/12
    assert!((common::beta_fn(2.0, 3.0) - 1.0 / 12.0).abs() < 1e-14);
    assert!((common::beta_quantile(1.0, 1.0, 0.3) - 0.3).abs() < 1e-12);
    assert_eq!(common::choose(10, 3), 120.0);
}

#[test]
fn pdf_integrates_to_one_on_grid() {
    let grid = [0.5, 1.0, 2.0, 7.0, 20.0];
    for &a in &grid {
        for &b in &grid {
            let p = bp(a, b);
            let total = common::integrate_unit(|t| beta_pdf(&p, t).unwrap(), 1e-12);
            assert!(
                (total - 1.0).abs() < 1e-6,
                "({a}, {b}) integrates to {total}"
            );
        }
    }
}

#[test]
fn pdf_matches_normalized_kernel() {
    for (a, b, t) in [
        (2.0, 2.0, 0.5),
        (2.0, 10.0, 0.1),
        (7.0, 3.0, 0.8),
        (0.5, 0.8, 0.3),
    ] {
        let want = common::beta_kernel(a, b)(t) / common::beta_fn(a, b);
        let got = beta_pdf(&bp(a, b), t).unwrap();
        assert!(
            (got - want).abs() < 1e-9 * want.max(1.0),
            "({a},{b},{t}): {got} vs {want}"
        );
    }
    assert!((beta_pdf(&bp(2.0, 2.0), 0.5).unwrap() - 1.5).abs() < 1e-12);
}

#[test]
fn beta_binomial_matches_quadrature() {
    let want = common::beta_binomial_quadrature(2.0, 10.0, 10, 1);
    let got = beta_binomial_pmf(&bp(2.0, 10.0), 10, 1).unwrap();
    assert!((got - want).abs() < 1e-6, "{got} vs {want}");

    for x in 0..=10 {
        let q = common::beta_binomial_quadrature(1.0, 1.0, 10, x);
        assert!((q - 1.0 / 11.0).abs() < 1e-9);
        assert!((beta_binomial_pmf(&BetaParams::uniform(), 10, x).unwrap() - q).abs() < 1e-9);
    }

    for (a, b, n, x) in [(7.0, 3.0, 10, 2), (0.5, 0.8, 4, 4), (5.0, 2.0, 7, 5)] {
        let want = common::beta_binomial_quadrature(a, b, n, x);
        let got = beta_binomial_pmf(&bp(a, b), n, x).unwrap();
        assert!(
            (got - want).abs() < 1e-6,
            "({a},{b},{n},{x}): {got} vs {want}"
        );
    }
}

#[test]
fn summary_of_beta_draws_matches_quantile_oracle() {
    let p = bp(3.0, 19.0);
    let mut rng = RngStream::new(21);
    let draws: Vec<f64> = (0..100_000).map(|_| sample_beta(&mut rng, &p)).collect();
    let r = summarize(&draws, 0.95).unwrap();
    assert!((r.mean - 3.0 / 22.0).abs() < 0.004);
    let lo = common::beta_quantile(3.0, 19.0, 0.025);
    let hi = common::beta_quantile(3.0, 19.0, 0.975);
    assert!(
        (r.interval_low - lo).abs() < 0.01,
        "{} vs {lo}",
        r.interval_low
    );
    assert!(
        (r.interval_high - hi).abs() < 0.01,
        "{} vs {hi}",
        r.interval_high
    );
}

#[test]
fn histogram_of_beta_draws_matches_bin_integrals() {
    let (a, b) = (2.0, 10.0);
    let p = bp(a, b);
    let n = 100_000usize;
    let bins = 50;
    let mut rng = RngStream::new(22);
    let draws: Vec<f64> = (0..n).map(|_| sample_beta(&mut rng, &p)).collect();
    let h = histogram(&draws, bins).unwrap();
    let norm = common::beta_fn(a, b);
    let kernel = common::beta_kernel(a, b);
    let width = 1.0 / bins as f64;
    for k in 0..bins {
        let prob = common::integrate_range(&kernel, h.edges[k], h.edges[k + 1], 1e-13) / norm;
        // per-bin density: count / (n·width); count ~ Binomial(n, prob)
        let expected = prob / width;
        let sigma = (n as f64 * prob * (1.0 - prob)).sqrt() / (n as f64 * width);
        assert!(
            (h.densities[k] - expected).abs() <= 4.0 * sigma + 1e-12,
            "bin {k}: {} vs {expected} (σ = {sigma})",
            h.densities[k]
        );
    }
}
