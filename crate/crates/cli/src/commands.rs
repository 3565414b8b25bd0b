use std::fs;
use std::num::NonZeroUsize;
use std::path::Path;

use relcalc_core::{
    beta_pdf, condition_on_system_tests_chunked, discrete_conditional_rejection, elicit_prior,
    histogram, propagate_chunked, summarize, BetaParams, DiscretePmfTable, ModelFile,
    PriorElicitation, RngStream, SampleSet, DEFAULT_ATTEMPTS_PER_SAMPLE,
};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::args::RunArgs;
use crate::error::CliError;
use crate::output::{fmt_sig17, histogram_csv, samples_csv, write_atomic};

/// Observed column of the built-in discrete example.
pub const DEMO_Z: i64 = 2;

pub fn load_model(path: &Path) -> Result<ModelFile, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::config(format!("cannot read model {}: {e}", path.display())))?;
    Ok(ModelFile::from_json(&text)?)
}

fn default_attempts(n_sim: usize, given: Option<u64>) -> u64 {
    given.unwrap_or((n_sim as u64).saturating_mul(DEFAULT_ATTEMPTS_PER_SAMPLE))
}

pub fn elicit(theta_hat: f64, n_pr: f64) -> Result<Value, CliError> {
    let p = elicit_prior(&PriorElicitation::new(theta_hat, n_pr)?);
    Ok(json!({
        "alpha": p.alpha(),
        "beta": p.beta(),
        "mean": p.mean(),
        "variance": p.variance(),
    }))
}

pub fn update(model: &ModelFile, out: Option<&Path>, grid: u32) -> Result<Value, CliError> {
    let mut map = Map::new();
    for c in &model.components {
        let post = c.posterior();
        map.insert(
            c.id.clone(),
            json!({"alpha_post": post.alpha(), "beta_post": post.beta()}),
        );
    }
    if let Some(dir) = out {
        create_dir(dir)?;
        write_atomic(dir, "densities.csv", &densities_csv(model, grid))?;
    }
    Ok(Value::Object(map))
}

/// Prior and posterior densities of every component on `grid` equally
/// spaced points of [0, 1]. Cells where a density diverges are left empty.
pub fn densities_csv(model: &ModelFile, grid: u32) -> String {
    let curves: Vec<(String, BetaParams)> = model
        .components
        .iter()
        .flat_map(|c| {
            [
                (format!("{}_prior", c.id), c.prior.to_beta()),
                (format!("{}_post", c.id), c.posterior()),
            ]
        })
        .collect();
    let mut s = String::from("theta");
    for (name, _) in &curves {
        s.push(',');
        s.push_str(name);
    }
    s.push('\n');
    let last = f64::from(grid - 1);
    for i in 0..grid {
        let theta = f64::from(i) / last;
        s.push_str(&fmt_sig17(theta));
        for (_, p) in &curves {
            s.push(',');
            if let Ok(d) = beta_pdf(p, theta) {
                s.push_str(&fmt_sig17(d));
            }
        }
        s.push('\n');
    }
    s
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunSummary {
    pub mean: f64,
    pub variance: f64,
    pub interval: [f64; 2],
    pub level: f64,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub acceptance_rate: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub attempts: Option<u64>,
    pub seed: u64,
    pub chunks: usize,
}

fn check_run_args(a: &RunArgs) -> Result<(), CliError> {
    if a.nsim == 0 {
        return Err(CliError::config("--nsim must be positive"));
    }
    if a.bins == 0 {
        return Err(CliError::config("--bins must be positive"));
    }
    if !(a.level > 0.0 && a.level <= 1.0) {
        return Err(CliError::config(format!(
            "--level must lie in (0, 1], got {}",
            a.level
        )));
    }
    Ok(())
}

fn create_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(format!("creating {}", dir.display()), e))
}

fn emit(a: &RunArgs, samples: &SampleSet, conditioned: bool) -> Result<RunSummary, CliError> {
    let report = summarize(samples.values(), a.level)?;
    let hist = histogram(samples.values(), a.bins)?;
    let summary = RunSummary {
        mean: report.mean,
        variance: report.variance,
        interval: [report.interval_low, report.interval_high],
        level: report.credible_level,
        n: report.n,
        acceptance_rate: if conditioned {
            samples.acceptance_rate()
        } else {
            None
        },
        attempts: conditioned.then_some(samples.meta().attempts),
        seed: a.seed.seed,
        chunks: a.chunks.get(),
    };
    create_dir(&a.out)?;
    write_atomic(&a.out, "samples.csv", &samples_csv(samples.values()))?;
    write_atomic(&a.out, "histogram.csv", &histogram_csv(&hist))?;
    let mut json = serde_json::to_string_pretty(&summary).expect("summary serializes");
    json.push('\n');
    write_atomic(&a.out, "summary.json", &json)?;
    Ok(summary)
}

pub fn propagate(a: &RunArgs) -> Result<RunSummary, CliError> {
    check_run_args(a)?;
    let model = load_model(&a.model)?;
    let (node, post) = model
        .structure_posteriors()
        .ok_or_else(|| CliError::config("no structure defined"))?;
    let rng = RngStream::new(a.seed.seed);
    let samples = propagate_chunked(node, &post, a.nsim, &rng, a.chunks)?;
    emit(a, &samples, false)
}

pub fn condition(a: &RunArgs) -> Result<RunSummary, CliError> {
    check_run_args(a)?;
    let model = load_model(&a.model)?;
    let (node, post) = model
        .structure_posteriors()
        .ok_or_else(|| CliError::config("no structure defined"))?;
    let data = model
        .system_tests
        .ok_or_else(|| CliError::config("no system_tests defined"))?;
    let max_attempts = default_attempts(a.nsim, a.max_attempts);
    let rng = RngStream::new(a.seed.seed);
    let samples = condition_on_system_tests_chunked(
        node,
        &post,
        &data,
        a.nsim,
        &rng,
        max_attempts,
        a.chunks,
    )?;
    emit(a, &samples, true)
}

pub fn demo_discrete(
    seed: u64,
    n_sim: usize,
    max_attempts: Option<u64>,
) -> Result<Value, CliError> {
    let table = DiscretePmfTable::worked_example();
    let exact = table.conditional_y(DEMO_Z)?;
    let mut rng = RngStream::new(seed);
    let run = discrete_conditional_rejection(
        &table,
        DEMO_Z,
        n_sim,
        &mut rng,
        default_attempts(n_sim, max_attempts),
    )?;
    Ok(json!({
        "z": DEMO_Z,
        "y": table.y_labels(),
        "exact": exact,
        "empirical": run.frequencies(table.y_labels()),
        "n": run.samples.len(),
        "attempts": run.attempts,
        "acceptance_rate": run.acceptance_rate(),
        "seed": seed,
    }))
}

/// Propagation or conditioning as a library call, bypassing file output.
pub fn run_samples(
    model: &ModelFile,
    seed: u64,
    n_sim: usize,
    chunks: NonZeroUsize,
    conditioned: bool,
) -> Result<SampleSet, CliError> {
    let (node, post) = model
        .structure_posteriors()
        .ok_or_else(|| CliError::config("no structure defined"))?;
    let rng = RngStream::new(seed);
    if conditioned {
        let data = model
            .system_tests
            .ok_or_else(|| CliError::config("no system_tests defined"))?;
        let max = default_attempts(n_sim, None);
        Ok(condition_on_system_tests_chunked(
            node, &post, &data, n_sim, &rng, max, chunks,
        )?)
    } else {
        Ok(propagate_chunked(node, &post, n_sim, &rng, chunks)?)
    }
}
