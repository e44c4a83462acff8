//! Seeded multi-trial runs of the maximizers on the revenue objective.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use drmax_core::maximize::{maximize, RunOptions};
use drmax_core::objectives::{RevenueObjective, WeightedGraph, DEFAULT_ADVOCACY_P};
use drmax_core::rng::element_stream;
use drmax_core::{Algorithm, BoxConstraint, RunReport};
use rand::Rng;
use rayon::prelude::*;

use crate::error::{BenchError, Result};
use crate::graph::load_graph;
use crate::report::ReportFormat;

/// Where the graph comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum InputSpec {
    File(PathBuf),
    Synthetic(Synthetic),
}

/// Generated graphs with unit weights.
#[derive(Debug, Clone, PartialEq)]
pub enum Synthetic {
    /// `n` vertices, each pair joined with probability `prob`, generated
    /// from `seed`.
    Gnp { n: usize, prob: f64, seed: u64 },
    /// `n` vertices in a line.
    Path { n: usize },
}

impl InputSpec {
    pub fn load(&self) -> Result<WeightedGraph> {
        match self {
            InputSpec::File(path) => load_graph(path),
            InputSpec::Synthetic(s) => s.generate(),
        }
    }
}

impl Synthetic {
    pub fn generate(&self) -> Result<WeightedGraph> {
        let edges: Vec<(usize, usize, f64)> = match *self {
            Synthetic::Gnp { n, prob, seed } => {
                let mut rng = element_stream(seed, 0);
                let mut edges = Vec::new();
                for u in 0..n {
                    for v in u + 1..n {
                        if rng.random::<f64>() < prob {
                            edges.push((u, v, 1.0));
                        }
                    }
                }
                edges
            }
            Synthetic::Path { n } => (1..n).map(|v| (v - 1, v, 1.0)).collect(),
        };
        let n = match *self {
            Synthetic::Gnp { n, .. } | Synthetic::Path { n } => n,
        };
        Ok(WeightedGraph::undirected(n, &edges)?)
    }
}

impl FromStr for InputSpec {
    type Err = BenchError;

    /// A file path, or `synthetic:gnp:<n>:<prob>[:<seed>]` /
    /// `synthetic:path:<n>`.
    fn from_str(s: &str) -> Result<Self> {
        let Some(rest) = s.strip_prefix("synthetic:") else {
            return Ok(InputSpec::File(PathBuf::from(s)));
        };
        let bad = || BenchError::Config(format!("cannot parse synthetic input {s:?}"));
        let parts: Vec<&str> = rest.split(':').collect();
        let count = |tok: &str| -> Result<usize> {
            match tok.parse::<usize>() {
                Ok(n) if n >= 1 => Ok(n),
                _ => Err(bad()),
            }
        };
        let synthetic = match parts.as_slice() {
            ["gnp", n, prob] | ["gnp", n, prob, _] => {
                let prob: f64 = prob.parse().map_err(|_| bad())?;
                if !(0.0..=1.0).contains(&prob) {
                    return Err(bad());
                }
                let seed = match parts.get(3) {
                    Some(t) => t.parse().map_err(|_| bad())?,
                    None => 0,
                };
                Synthetic::Gnp {
                    n: count(n)?,
                    prob,
                    seed,
                }
            }
            ["path", n] => Synthetic::Path { n: count(n)? },
            _ => return Err(bad()),
        };
        Ok(InputSpec::Synthetic(synthetic))
    }
}

impl fmt::Display for InputSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputSpec::File(p) => write!(f, "{}", p.display()),
            InputSpec::Synthetic(Synthetic::Gnp { n, prob, seed }) => write!(f, "synthetic:gnp:{n}:{prob}:{seed}"),
            InputSpec::Synthetic(Synthetic::Path { n }) => write!(f, "synthetic:path:{n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputSpec {
    pub path: PathBuf,
    pub format: ReportFormat,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub input: InputSpec,
    pub algorithms: Vec<Algorithm>,
    /// Used by the algorithms that take one; the others run once per trial.
    pub epsilons: Vec<f64>,
    /// Uniform bound `B` on every vertex.
    pub bound: u64,
    /// Advocacy probability of the revenue objective.
    pub p: f64,
    pub trials: u32,
    pub base_seed: u64,
    pub shuffle: bool,
    pub skip_dr_check: bool,
    /// `None` writes to standard output.
    pub output: Option<OutputSpec>,
}

impl ExperimentConfig {
    pub fn new(input: InputSpec, algorithms: Vec<Algorithm>, bound: u64) -> Self {
        ExperimentConfig {
            input,
            algorithms,
            epsilons: Vec::new(),
            bound,
            p: DEFAULT_ADVOCACY_P,
            trials: 1,
            base_seed: 0,
            shuffle: false,
            skip_dr_check: false,
            output: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(BenchError::Config(m));
        if self.algorithms.is_empty() {
            return bad("no algorithm selected".into());
        }
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.bound == 0 {
            return bad("bound must be at least 1".into());
        }
        if !(self.p > 0.0 && self.p < 1.0) {
            return bad(format!("p must lie in (0, 1), got {}", self.p));
        }
        if let Some(&e) = self.epsilons.iter().find(|e| !(e.is_finite() && **e > 0.0)) {
            return bad(format!("epsilon must be positive and finite, got {e}"));
        }
        if self.epsilons.is_empty() {
            if let Some(a) = self.algorithms.iter().find(|a| a.uses_epsilon()) {
                return bad(format!("{a} needs at least one epsilon"));
            }
        }
        Ok(())
    }

    /// Every `(algorithm, epsilon, trial)` triple, in canonical order.
    pub fn jobs(&self) -> Vec<Job> {
        let mut algorithms = self.algorithms.clone();
        algorithms.sort();
        algorithms.dedup();
        let mut epsilons = self.epsilons.clone();
        epsilons.sort_by(f64::total_cmp);
        epsilons.dedup();
        let mut jobs = Vec::new();
        for alg in algorithms {
            let eps: Vec<Option<f64>> = if alg.uses_epsilon() {
                epsilons.iter().copied().map(Some).collect()
            } else {
                vec![None]
            };
            for epsilon in eps {
                for trial in 0..self.trials {
                    jobs.push(Job {
                        algorithm: alg,
                        epsilon,
                        trial,
                        seed: run_seed(self.base_seed, alg, epsilon, trial),
                    });
                }
            }
        }
        jobs
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Job {
    pub algorithm: Algorithm,
    pub epsilon: Option<f64>,
    pub trial: u32,
    pub seed: u64,
}

/// One finished trial.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialReport {
    pub trial: u32,
    pub bound: u64,
    pub report: RunReport,
}

/// `base ⊕ hash(algorithm, epsilon, trial)`, stable across platforms and
/// releases.
pub fn run_seed(base: u64, algorithm: Algorithm, epsilon: Option<f64>, trial: u32) -> u64 {
    let mut h = 0x243f_6a88_85a3_08d3u64;
    for byte in algorithm.name().bytes() {
        h = mix(h ^ u64::from(byte));
    }
    h = mix(h ^ epsilon.map_or(u64::MAX, f64::to_bits));
    h = mix(h ^ u64::from(trial));
    base ^ h
}

/// splitmix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Load the graph named by `config` and run every job on it.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<TrialReport>> {
    config.validate()?;
    let graph = config.input.load()?;
    run_on_graph(config, graph)
}

/// Run every job of `config` on `graph`, in parallel; the result is in
/// canonical `(algorithm, epsilon, trial)` order.
pub fn run_on_graph(config: &ExperimentConfig, graph: WeightedGraph) -> Result<Vec<TrialReport>> {
    config.validate()?;
    let bounds = BoxConstraint::uniform(graph.vertex_count(), config.bound)?;
    let objective = RevenueObjective::new(graph, config.p)?;
    config
        .jobs()
        .into_par_iter()
        .map(|job| {
            let opts = RunOptions {
                seed: job.seed,
                shuffle: config.shuffle,
                skip_dr_check: config.skip_dr_check,
            };
            let start = Instant::now();
            let mut report = maximize(&objective, &bounds, job.algorithm, job.epsilon, &opts)?;
            report.wall_time = start.elapsed();
            Ok(TrialReport {
                trial: job.trial,
                bound: config.bound,
                report,
            })
        })
        .collect()
}
