//! Monte Carlo propagation of component posteriors through a block diagram,
//! and exact conditioning on whole-system test outcomes by rejection.
//!
//! # Reproducibility
//!
//! Draws are laid out in blocks of [`BLOCK_LEN`] consecutive samples. Block
//! `b` is generated from `rng.derive_substream(b)`, and within a block each
//! candidate draws every leaf in canonical tree order before anything else
//! (the binomial test, when conditioning). With `chunks = k`, the blocks are
//! split into `k` contiguous runs that execute on separate threads and are
//! concatenated in block order. The output is therefore a function of
//! `(seed, n_sim)` only; `chunks` affects wall time, never values.

use std::collections::BTreeMap;
use std::num::NonZeroUsize;

use rand::distr::weighted::WeightedIndex;
use rand::Rng;
use rand_distr::Distribution;
use serde::Serialize;

use crate::beta::{conjugate_update, BetaParams, TestRecord};
use crate::error::{Error, Result};
use crate::rbd::{BlockNode, IndexedTree};
use crate::rng::RngStream;
use crate::sampling::{sample_beta, sample_binomial};

/// Samples per substream block.
pub const BLOCK_LEN: usize = 1024;

/// Candidate budget per requested sample when the caller does not set one.
pub const DEFAULT_ATTEMPTS_PER_SAMPLE: u64 = 1000;

pub type ParamMap = BTreeMap<String, BetaParams>;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleMeta {
    pub seed: u64,
    pub n_sim: usize,
    /// Total candidates drawn, accepted or not.
    pub attempts: u64,
    pub label: String,
}

/// Monte Carlo draws of a reliability value.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    values: Vec<f64>,
    meta: SampleMeta,
}

impl SampleSet {
    pub fn new(values: Vec<f64>, meta: SampleMeta) -> Result<Self> {
        if values.len() != meta.n_sim {
            return Err(Error::invalid(format!(
                "sample has {} values but n_sim = {}",
                values.len(),
                meta.n_sim
            )));
        }
        if meta.attempts < meta.n_sim as u64 {
            return Err(Error::invalid("attempts must be at least n_sim"));
        }
        if let Some(v) = values.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(Error::invalid(format!("sample value {v} outside [0, 1]")));
        }
        Ok(Self { values, meta })
    }

    /// Wraps raw values with `attempts = n_sim`.
    pub fn from_values(values: Vec<f64>, seed: u64, label: impl Into<String>) -> Result<Self> {
        let n = values.len();
        Self::new(
            values,
            SampleMeta {
                seed,
                n_sim: n,
                attempts: n as u64,
                label: label.into(),
            },
        )
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn meta(&self) -> &SampleMeta {
        &self.meta
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `n_sim / attempts`, the running estimate of the prior predictive mass
    /// of the conditioning event. `None` when nothing was attempted.
    pub fn acceptance_rate(&self) -> Option<f64> {
        (self.meta.attempts > 0).then(|| self.meta.n_sim as f64 / self.meta.attempts as f64)
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

/// Whole-system test outcome: `x_ts_star` successes in `n_ts` trials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(try_from = "RawSystemTests")]
pub struct SystemTestData {
    n_ts: u64,
    #[serde(rename = "x_ts")]
    x_ts_star: u64,
}

#[derive(serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSystemTests {
    n_ts: u64,
    x_ts: u64,
}

impl TryFrom<RawSystemTests> for SystemTestData {
    type Error = Error;

    fn try_from(raw: RawSystemTests) -> Result<Self> {
        SystemTestData::new(raw.n_ts, raw.x_ts)
    }
}

impl SystemTestData {
    pub fn new(n_ts: u64, x_ts_star: u64) -> Result<Self> {
        if x_ts_star > n_ts {
            return Err(Error::invalid(format!(
                "system successes x_ts = {x_ts_star} exceed system trials n_ts = {n_ts}"
            )));
        }
        Ok(Self { n_ts, x_ts_star })
    }

    pub fn n_ts(&self) -> u64 {
        self.n_ts
    }

    pub fn x_ts_star(&self) -> u64 {
        self.x_ts_star
    }
}

fn block_lengths(n_sim: usize) -> Vec<usize> {
    let full = n_sim / BLOCK_LEN;
    let mut lens = vec![BLOCK_LEN; full];
    if !n_sim.is_multiple_of(BLOCK_LEN) {
        lens.push(n_sim % BLOCK_LEN);
    }
    lens
}

/// Runs `work(block_index, block_len)` for every block, spreading contiguous
/// runs of blocks over `chunks` threads. Results come back in block order.
fn run_blocks<T, F>(n_sim: usize, chunks: NonZeroUsize, work: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64, usize) -> T + Sync,
{
    let lens = block_lengths(n_sim);
    let indexed: Vec<(u64, usize)> = lens
        .into_iter()
        .enumerate()
        .map(|(b, l)| (b as u64, l))
        .collect();
    let chunks = chunks.get().min(indexed.len().max(1));
    if chunks == 1 {
        return indexed.into_iter().map(|(b, l)| work(b, l)).collect();
    }
    let per_chunk = indexed.len().div_ceil(chunks);
    let work = &work;
    std::thread::scope(|scope| {
        let handles: Vec<_> = indexed
            .chunks(per_chunk)
            .map(|run| {
                scope.spawn(move || run.iter().map(|&(b, l)| work(b, l)).collect::<Vec<T>>())
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("sampling worker panicked"))
            .collect()
    })
}

struct BoundTree {
    tree: IndexedTree,
    params: Vec<BetaParams>,
}

impl BoundTree {
    fn new(node: &BlockNode, posteriors: &ParamMap) -> Result<Self> {
        let tree = IndexedTree::new(node)?;
        let params = tree.bind(posteriors)?;
        Ok(Self { tree, params })
    }

    /// One system-reliability candidate; leaves drawn in tree order.
    #[inline]
    fn draw<R: Rng + ?Sized>(&self, rng: &mut R, scratch: &mut [f64]) -> f64 {
        for (slot, p) in scratch.iter_mut().zip(&self.params) {
            *slot = sample_beta(rng, p);
        }
        self.tree.evaluate(scratch)
    }
}

/// Draws `n_sim` values of system reliability with every component
/// reliability sampled independently from its posterior. Equivalent to
/// [`propagate_chunked`] with one chunk.
pub fn propagate(
    node: &BlockNode,
    posteriors: &ParamMap,
    n_sim: usize,
    rng: &RngStream,
) -> Result<SampleSet> {
    propagate_chunked(node, posteriors, n_sim, rng, NonZeroUsize::MIN)
}

pub fn propagate_chunked(
    node: &BlockNode,
    posteriors: &ParamMap,
    n_sim: usize,
    rng: &RngStream,
    chunks: NonZeroUsize,
) -> Result<SampleSet> {
    let bound = BoundTree::new(node, posteriors)?;
    let blocks = run_blocks(n_sim, chunks, |b, len| {
        let mut stream = rng.derive_substream(b);
        let mut scratch = vec![0.0; bound.params.len()];
        (0..len)
            .map(|_| bound.draw(&mut stream, &mut scratch))
            .collect::<Vec<f64>>()
    });
    let values: Vec<f64> = blocks.into_iter().flatten().collect();
    SampleSet::new(
        values,
        SampleMeta {
            seed: rng.seed(),
            n_sim,
            attempts: n_sim as u64,
            label: "propagate".into(),
        },
    )
}

struct BlockOutcome {
    accepted: Vec<f64>,
    attempts: u64,
    exhausted: bool,
}

/// Draws `n_sim` exact samples of system reliability conditioned on the
/// whole-system test outcome.
///
/// Each candidate is a full draw from the propagated posterior; a binomial
/// count of simulated system successes is then drawn and the candidate is
/// kept only when that count equals the observed one. `max_attempts` bounds
/// the total number of candidates and is split across blocks in proportion
/// to block length so the guard fires identically for every chunk count.
pub fn condition_on_system_tests(
    node: &BlockNode,
    posteriors: &ParamMap,
    data: &SystemTestData,
    n_sim: usize,
    rng: &RngStream,
    max_attempts: u64,
) -> Result<SampleSet> {
    condition_on_system_tests_chunked(
        node,
        posteriors,
        data,
        n_sim,
        rng,
        max_attempts,
        NonZeroUsize::MIN,
    )
}

pub fn condition_on_system_tests_chunked(
    node: &BlockNode,
    posteriors: &ParamMap,
    data: &SystemTestData,
    n_sim: usize,
    rng: &RngStream,
    max_attempts: u64,
    chunks: NonZeroUsize,
) -> Result<SampleSet> {
    if max_attempts < n_sim as u64 {
        return Err(Error::invalid(format!(
            "max_attempts ({max_attempts}) must be at least n_sim ({n_sim})"
        )));
    }
    let bound = BoundTree::new(node, posteriors)?;
    let (n_ts, target) = (data.n_ts, data.x_ts_star);

    let blocks = run_blocks(n_sim, chunks, |b, len| {
        let budget = ((max_attempts as u128 * len as u128).div_ceil(n_sim as u128)) as u64;
        let mut stream = rng.derive_substream(b);
        let mut scratch = vec![0.0; bound.params.len()];
        let mut accepted = Vec::with_capacity(len);
        let mut attempts = 0u64;
        while accepted.len() < len {
            if attempts == budget {
                return BlockOutcome {
                    accepted,
                    attempts,
                    exhausted: true,
                };
            }
            attempts += 1;
            let candidate = bound.draw(&mut stream, &mut scratch);
            let simulated = sample_binomial(&mut stream, n_ts, candidate)
                .expect("system reliability lies in [0, 1]");
            if simulated == target {
                accepted.push(candidate);
            }
        }
        BlockOutcome {
            accepted,
            attempts,
            exhausted: false,
        }
    });

    let attempts: u64 = blocks.iter().map(|b| b.attempts).sum();
    if blocks.iter().any(|b| b.exhausted) {
        let accepted: usize = blocks.iter().map(|b| b.accepted.len()).sum();
        return Err(Error::AttemptsExhausted {
            requested: n_sim,
            accepted,
            attempts,
            predictive_mass: if attempts > 0 {
                accepted as f64 / attempts as f64
            } else {
                0.0
            },
        });
    }
    let values: Vec<f64> = blocks.into_iter().flat_map(|b| b.accepted).collect();
    SampleSet::new(
        values,
        SampleMeta {
            seed: rng.seed(),
            n_sim,
            attempts,
            label: "condition".into(),
        },
    )
}

/// For a pure-series system, `n_ts` whole-system successes imply `n_ts`
/// successes of every component, so each component posterior can be updated
/// directly. Rejects diagrams with any parallel node.
pub fn all_success_series_shortcut(
    node: &BlockNode,
    posteriors: &ParamMap,
    n_ts: u64,
) -> Result<ParamMap> {
    node.validate()?;
    if node.contains_parallel() {
        return Err(Error::ParallelInShortcut);
    }
    let tree = IndexedTree::new(node)?;
    tree.bind(posteriors)?;
    let record = TestRecord::new(n_ts, n_ts)?;
    Ok(posteriors
        .iter()
        .map(|(id, p)| (id.clone(), conjugate_update(p, &record)))
        .collect())
}

/// Joint probability mass function over two labelled discrete variables,
/// rows indexed by `y`, columns by `z`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscretePmfTable {
    y_labels: Vec<i64>,
    z_labels: Vec<i64>,
    probs: Vec<Vec<f64>>,
}

impl DiscretePmfTable {
    pub fn new(y_labels: Vec<i64>, z_labels: Vec<i64>, probs: Vec<Vec<f64>>) -> Result<Self> {
        if probs.len() != y_labels.len() || probs.iter().any(|r| r.len() != z_labels.len()) {
            return Err(Error::invalid("table shape does not match its labels"));
        }
        if y_labels.is_empty() || z_labels.is_empty() {
            return Err(Error::invalid(
                "table must have at least one row and column",
            ));
        }
        if probs
            .iter()
            .flatten()
            .any(|p| !(p.is_finite() && *p >= 0.0))
        {
            return Err(Error::invalid(
                "table entries must be finite and nonnegative",
            ));
        }
        let total: f64 = probs.iter().flatten().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::invalid(format!(
                "table entries sum to {total}, not 1"
            )));
        }
        Ok(Self {
            y_labels,
            z_labels,
            probs,
        })
    }

    /// The 4×4 joint table of the worked conditional-sampling example,
    /// with `y, z ∈ {1, 2, 3, 4}`.
    pub fn worked_example() -> Self {
        Self::new(
            vec![1, 2, 3, 4],
            vec![1, 2, 3, 4],
            vec![
                vec![0.12, 0.03, 0.14, 0.09],
                vec![0.01, 0.06, 0.08, 0.04],
                vec![0.05, 0.09, 0.03, 0.05],
                vec![0.07, 0.12, 0.01, 0.01],
            ],
        )
        .expect("built-in table is valid")
    }

    pub fn y_labels(&self) -> &[i64] {
        &self.y_labels
    }

    pub fn z_labels(&self) -> &[i64] {
        &self.z_labels
    }

    pub fn probs(&self) -> &[Vec<f64>] {
        &self.probs
    }

    fn z_index(&self, z: i64) -> Result<usize> {
        self.z_labels
            .iter()
            .position(|&l| l == z)
            .ok_or(Error::UnknownLabel(z))
    }

    pub fn marginal_y(&self) -> Vec<f64> {
        self.probs.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn column_mass(&self, z: i64) -> Result<f64> {
        let j = self.z_index(z)?;
        Ok(self.probs.iter().map(|r| r[j]).sum())
    }

    /// Exact `p(y | z)` in row order.
    pub fn conditional_y(&self, z: i64) -> Result<Vec<f64>> {
        let j = self.z_index(z)?;
        let mass = self.column_mass(z)?;
        if mass <= 0.0 {
            return Err(Error::ZeroColumnMass(z));
        }
        Ok(self.probs.iter().map(|r| r[j] / mass).collect())
    }
}

/// Two-stage sampler: `y` from its marginal, then `z` from `p(z | y)`.
/// Yields row and column indices.
#[derive(Debug, Clone)]
pub struct JointSampler {
    marginal: WeightedIndex<f64>,
    given_y: Vec<Option<WeightedIndex<f64>>>,
}

impl JointSampler {
    pub fn new(table: &DiscretePmfTable) -> Result<Self> {
        let marginal =
            WeightedIndex::new(table.marginal_y()).map_err(|e| Error::invalid(e.to_string()))?;
        let given_y = table
            .probs
            .iter()
            .map(|row| WeightedIndex::new(row.iter().copied()).ok())
            .collect();
        Ok(Self { marginal, given_y })
    }

    pub fn sample_y<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        self.marginal.sample(rng)
    }

    pub fn sample_z_given_y<R: Rng + ?Sized>(&self, rng: &mut R, y: usize) -> usize {
        self.given_y[y]
            .as_ref()
            .expect("rows drawn from the marginal have positive mass")
            .sample(rng)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscreteRejection {
    /// Accepted `y` labels in draw order.
    pub samples: Vec<i64>,
    pub attempts: u64,
}

impl DiscreteRejection {
    pub fn acceptance_rate(&self) -> Option<f64> {
        (self.attempts > 0).then(|| self.samples.len() as f64 / self.attempts as f64)
    }

    /// Empirical frequency of each label; empty when nothing was accepted.
    pub fn frequencies(&self, labels: &[i64]) -> Vec<f64> {
        if self.samples.is_empty() {
            return Vec::new();
        }
        let n = self.samples.len() as f64;
        labels
            .iter()
            .map(|l| self.samples.iter().filter(|s| *s == l).count() as f64 / n)
            .collect()
    }
}

/// Samples `y` from `p(y | z = observed_z)` by drawing `(y, z)` from the joint
/// and keeping `y` whenever the simulated `z` matches.
pub fn discrete_conditional_rejection(
    table: &DiscretePmfTable,
    observed_z: i64,
    n_sim: usize,
    rng: &mut RngStream,
    max_attempts: u64,
) -> Result<DiscreteRejection> {
    let target = table.z_index(observed_z)?;
    if table.column_mass(observed_z)? <= 0.0 {
        return Err(Error::ZeroColumnMass(observed_z));
    }
    if max_attempts < n_sim as u64 {
        return Err(Error::invalid(format!(
            "max_attempts ({max_attempts}) must be at least n_sim ({n_sim})"
        )));
    }
    let sampler = JointSampler::new(table)?;
    let mut samples = Vec::with_capacity(n_sim);
    let mut attempts = 0u64;
    while samples.len() < n_sim {
        if attempts == max_attempts {
            return Err(Error::AttemptsExhausted {
                requested: n_sim,
                accepted: samples.len(),
                attempts,
                predictive_mass: samples.len() as f64 / attempts as f64,
            });
        }
        attempts += 1;
        let y = sampler.sample_y(rng);
        if sampler.sample_z_given_y(rng, y) == target {
            samples.push(table.y_labels[y]);
        }
    }
    Ok(DiscreteRejection { samples, attempts })
}
