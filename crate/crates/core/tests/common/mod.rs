//! Reference computations used only by tests. Nothing here goes through the
//! library's log-gamma path: beta normalizers are obtained by integrating the
//! unnormalized kernel numerically.

#![allow(dead_code, clippy::excessive_precision)]

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Gauss–Kronrod 7/15 on one panel: (kronrod estimate, |kronrod − gauss|).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let dx = h * XGK[i];
        let s = f(c - dx) + f(c + dx);
        kronrod += WGK[i] * s;
        if i % 2 == 1 {
            gauss += WG[i / 2] * s;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

const MAX_PANELS: usize = 4000;

/// Globally adaptive Gauss–Kronrod quadrature: bisects the panel with the
/// largest error estimate until the summed estimate is below `tol` (or a
/// roundoff floor), capped at `MAX_PANELS`. Endpoints are never evaluated.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    let (est, err) = gk15(&f, a, b);
    let mut panels = vec![(a, b, est, err)];
    loop {
        let total: f64 = panels.iter().map(|p| p.2).sum();
        let total_err: f64 = panels.iter().map(|p| p.3).sum();
        if total_err <= tol.max(50.0 * f64::EPSILON * total.abs()) || panels.len() >= MAX_PANELS {
            return total;
        }
        let worst = (0..panels.len())
            .max_by(|&i, &j| panels[i].3.total_cmp(&panels[j].3))
            .unwrap();
        let (lo, hi, _, _) = panels.swap_remove(worst);
        let m = 0.5 * (lo + hi);
        let (e1, r1) = gk15(&f, lo, m);
        let (e2, r2) = gk15(&f, m, hi);
        panels.push((lo, m, e1, r1));
        panels.push((m, hi, e2, r2));
    }
}

/// `∫₀¹ g(θ) dθ` for integrands with integrable endpoint singularities of
/// the form θ^(a−1), a ≥ 1/2: substitutes θ = u² on [0, ½] and 1 − θ = u²
/// on [½, 1].
pub fn integrate_unit(g: impl Fn(f64) -> f64, tol: f64) -> f64 {
    integrate_range(&g, 0.0, 1.0, tol)
}

/// `∫ₐᵇ g` on a subinterval of [0, 1] with the same endpoint treatment.
pub fn integrate_range(g: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    integrate_range_split(&|t, _| g(t), a, b, tol)
}

/// As `integrate_range`, but `g` receives `(θ, 1 − θ)` with the complement
/// computed without cancellation near θ = 1.
pub fn integrate_range_split(g: &impl Fn(f64, f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let mut total = 0.0;
    let left = (a.min(0.5), b.min(0.5));
    if left.0 < left.1 {
        total += integrate(
            |u| g(u * u, 1.0 - u * u) * 2.0 * u,
            left.0.sqrt(),
            left.1.sqrt(),
            tol,
        );
    }
    let right = (a.max(0.5), b.max(0.5));
    if right.0 < right.1 {
        // 1 − θ = u², θ from right.0 to right.1 ⇒ u from √(1 − right.1) to √(1 − right.0)
        total += integrate(
            |u| g(1.0 - u * u, u * u) * 2.0 * u,
            (1.0 - right.1).sqrt(),
            (1.0 - right.0).sqrt(),
            tol,
        );
    }
    total
}

pub fn beta_kernel(a: f64, b: f64) -> impl Fn(f64) -> f64 {
    move |t: f64| t.powf(a - 1.0) * (1.0 - t).powf(b - 1.0)
}

fn kernel_split(a: f64, b: f64) -> impl Fn(f64, f64) -> f64 {
    move |t: f64, s: f64| t.powf(a - 1.0) * s.powf(b - 1.0)
}

/// Beta function by quadrature.
pub fn beta_fn(a: f64, b: f64) -> f64 {
    integrate_range_split(&kernel_split(a, b), 0.0, 1.0, 1e-14)
}

pub fn beta_cdf(a: f64, b: f64, x: f64) -> f64 {
    integrate_range_split(&kernel_split(a, b), 0.0, x, 1e-14) / beta_fn(a, b)
}

/// Inverts `beta_cdf` by bisection.
pub fn beta_quantile(a: f64, b: f64, q: f64) -> f64 {
    let norm = beta_fn(a, b);
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        let c = integrate_range_split(&kernel_split(a, b), 0.0, mid, 1e-13) / norm;
        if c < q {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn choose(n: u64, k: u64) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `C(n, x) ∫ θ^x (1−θ)^(n−x) π(θ) dθ` with π normalized by quadrature.
pub fn beta_binomial_quadrature(a: f64, b: f64, n: u64, x: u64) -> f64 {
    let kernel = kernel_split(a, b);
    let num = integrate_range_split(
        &|t, s| kernel(t, s) * t.powi(x as i32) * s.powi((n - x) as i32),
        0.0,
        1.0,
        1e-14,
    );
    choose(n, x) * num / beta_fn(a, b)
}

pub fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

/// Unbiased sample variance.
pub fn variance(v: &[f64]) -> f64 {
    let m = mean(v);
    v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (v.len() - 1) as f64
}

/// Standard error of the sample variance, from the fourth central moment.
pub fn variance_se(v: &[f64]) -> f64 {
    let m = mean(v);
    let n = v.len() as f64;
    let m2 = v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / n;
    let m4 = v.iter().map(|x| (x - m).powi(4)).sum::<f64>() / n;
    ((m4 - m2 * m2) / n).sqrt()
}

/// Asymptotic two-sample KS critical value: c(α)·√((n+m)/(nm)).
pub fn ks_critical(c_alpha: f64, n: usize, m: usize) -> f64 {
    let (n, m) = (n as f64, m as f64);
    c_alpha * ((n + m) / (n * m)).sqrt()
}
