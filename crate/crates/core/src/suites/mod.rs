//! Seeded randomized property suites.
//!
//! Each suite draws small instances, evaluates one or more inequalities on
//! them and reports every violation together with the inputs that produced
//! it. Trial `t` uses the seed `seed ^ t`, so results do not depend on how
//! trials are scheduled across threads.

mod cases;
pub mod oracle;
pub mod random;

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

pub use random::{perturb, random_permutation, RandomInstanceSpec};

/// Names accepted by [`run_suite`].
pub const SUITE_NAMES: [&str; 13] = [
    "gh-oracle",
    "gh-triangle",
    "m5-m3-forward",
    "m5-m3-backward",
    "separate-bounds",
    "lip-gh-class",
    "level-preservation",
    "norm-axioms",
    "lemmsep",
    "pnm-radius",
    "perm-distortion-chain",
    "game-duality",
    "hl-phi2",
];

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SuiteError {
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

/// One evaluated inequality `observed <= bound`.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub inputs: Value,
    pub observed: f64,
    pub bound: f64,
    pub holds: bool,
}

impl Check {
    /// `observed <= bound + tol`.
    pub fn le(name: &'static str, inputs: Value, observed: f64, bound: f64, tol: f64) -> Self {
        Check {
            name,
            inputs,
            observed,
            bound,
            holds: observed <= bound + tol,
        }
    }

    /// A check decided by the caller (exact comparisons).
    pub fn exact(
        name: &'static str,
        inputs: Value,
        observed: f64,
        bound: f64,
        holds: bool,
    ) -> Self {
        Check {
            name,
            inputs,
            observed,
            bound,
            holds,
        }
    }

    pub fn margin(&self) -> f64 {
        self.bound - self.observed
    }
}

/// What one trial produced.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Trial {
    pub checks: Vec<Check>,
    /// Checks that could not be decided within the search budget.
    pub unverified: Vec<Value>,
}

impl Trial {
    fn push(&mut self, check: Check) {
        self.checks.push(check);
    }
}

/// A violated check.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteFailure {
    pub trial: usize,
    pub check: Check,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: String,
    pub trials: usize,
    pub seed: u64,
    /// Number of checks evaluated.
    pub checks: usize,
    pub failures: Vec<SuiteFailure>,
    /// Inputs whose check exhausted the search budget.
    pub unverified: Vec<Value>,
    /// Smallest `bound − observed` over all checks.
    pub worst_margin: Option<f64>,
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let failures: Vec<Value> = self
            .failures
            .iter()
            .map(|f| {
                json!({
                    "trial": f.trial,
                    "check": f.check.name,
                    "inputs": f.check.inputs,
                    "observed": f.check.observed,
                    "bound": f.check.bound,
                    "margin": f.check.margin(),
                })
            })
            .collect();
        json!({
            "suite": self.suite,
            "trials": self.trials,
            "seed": self.seed,
            "checks": self.checks,
            "failures": failures,
            "unverified": self.unverified,
            "worstMargin": self.worst_margin,
            "elapsed": self.elapsed.as_secs_f64(),
        })
    }
}

type TrialFn = fn(&mut ChaCha8Rng, usize) -> Trial;

fn lookup(name: &str) -> Option<TrialFn> {
    Some(match name {
        "gh-oracle" => cases::gh_oracle,
        "gh-triangle" => cases::gh_triangle,
        "m5-m3-forward" => cases::m5_m3_forward,
        "m5-m3-backward" => cases::m5_m3_backward,
        "separate-bounds" => cases::separate_bounds,
        "lip-gh-class" => cases::lip_gh_class,
        "level-preservation" => cases::level_preservation,
        "norm-axioms" => cases::norm_axioms,
        "lemmsep" => cases::lemmsep,
        "pnm-radius" => cases::pnm_radius,
        "perm-distortion-chain" => cases::perm_distortion_chain,
        "game-duality" => cases::game_duality,
        "hl-phi2" => cases::hl_phi2,
        _ => return None,
    })
}

/// Runs `trials` trials of the named suite.
pub fn run_suite(name: &str, trials: usize, seed: u64) -> Result<SuiteReport, SuiteError> {
    let f = lookup(name).ok_or_else(|| SuiteError::UnknownSuite(name.to_string()))?;
    let start = Instant::now();
    let results: Vec<Trial> = (0..trials)
        .into_par_iter()
        .map(|t| f(&mut ChaCha8Rng::seed_from_u64(seed ^ t as u64), t))
        .collect();
    let mut report = SuiteReport {
        suite: name.to_string(),
        trials,
        seed,
        checks: 0,
        failures: Vec::new(),
        unverified: Vec::new(),
        worst_margin: None,
        elapsed: Duration::ZERO,
    };
    for (trial, result) in results.into_iter().enumerate() {
        report.checks += result.checks.len();
        report.unverified.extend(result.unverified);
        for check in result.checks {
            let m = check.margin();
            report.worst_margin = Some(report.worst_margin.map_or(m, |w: f64| w.min(m)));
            if !check.holds {
                report.failures.push(SuiteFailure { trial, check });
            }
        }
    }
    report.elapsed = start.elapsed();
    Ok(report)
}
