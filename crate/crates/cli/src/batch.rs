//! Seeded trials on a worker pool, merged in seed order.

use mustafin_core::groebner::budget::{with_budget, Budget};
use mustafin_core::{Error, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// A resource cap was hit.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialResult<T> {
    pub seed: u64,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BatchReport<C, T> {
    pub config: C,
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    pub inconclusive: usize,
    /// Passed over completed trials; null when none completed.
    pub pass_rate: Option<f64>,
    pub failing_seeds: Vec<u64>,
    pub results: Vec<TrialResult<T>>,
}

impl<C, T> BatchReport<C, T> {
    pub fn new(config: C, results: Vec<TrialResult<T>>) -> Self {
        let count = |v: Verdict| results.iter().filter(|r| r.verdict == v).count();
        let (passed, failed, inconclusive) = (count(Verdict::Pass), count(Verdict::Fail), count(Verdict::Inconclusive));
        let done = passed + failed;
        BatchReport {
            config,
            trials: results.len(),
            passed,
            failed,
            inconclusive,
            pass_rate: (done > 0).then(|| passed as f64 / done as f64),
            failing_seeds: results.iter().filter(|r| r.verdict == Verdict::Fail).map(|r| r.seed).collect(),
            results,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct BatchOptions {
    pub threads: Option<usize>,
    pub budget: Budget,
    pub verbose: u8,
}

/// Runs `trial` once per seed, each under its own budget.
pub fn run_trials<T, F>(seeds: &[u64], opts: &BatchOptions, trial: F) -> Vec<TrialResult<T>>
where
    T: Send,
    F: Fn(u64) -> Result<(T, bool)> + Sync,
{
    let one = |&seed: &u64| {
        let out = with_budget(opts.budget, || trial(seed));
        let r = match out {
            Ok((v, ok)) => TrialResult {
                seed,
                verdict: if ok { Verdict::Pass } else { Verdict::Fail },
                result: Some(v),
                error: None,
            },
            Err(e @ Error::ResourceCapped(_)) => {
                TrialResult { seed, verdict: Verdict::Inconclusive, result: None, error: Some(e.to_string()) }
            }
            Err(e) => TrialResult { seed, verdict: Verdict::Fail, result: None, error: Some(e.to_string()) },
        };
        if opts.verbose > 0 {
            eprintln!("seed {seed}: {:?}", r.verdict);
        }
        r
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(opts.threads.unwrap_or(0)).build();
    match pool {
        Ok(pool) => pool.install(|| seeds.par_iter().map(one).collect()),
        Err(_) => seeds.iter().map(one).collect(),
    }
}
