//! Verification reports and the tuple-sweep driver shared by all validators.

use std::fmt;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Seed used whenever a sweep is sampled instead of run exhaustively.
pub const SAMPLE_SEED: u64 = 0x00C0_102E_D5EE_D001;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub identity: String,
    pub witness: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityResult {
    pub name: String,
    /// Number of tuples evaluated.
    pub checks: u64,
    pub failures: u64,
    /// Size of the full tuple space when only a sample was evaluated.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sampled_from: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub name: String,
    pub checks_run: u64,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sample_seed: Option<u64>,
    pub identities: Vec<IdentityResult>,
    pub counterexamples: Vec<Counterexample>,
}

impl VerificationReport {
    pub fn new(name: impl Into<String>) -> Self {
        VerificationReport {
            name: name.into(),
            checks_run: 0,
            status: Status::Pass,
            sample_seed: None,
            identities: Vec::new(),
            counterexamples: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn is_sampled(&self) -> bool {
        self.sample_seed.is_some()
    }

    /// Appends the outcome of one identity sweep.
    pub fn record(&mut self, outcome: SweepOutcome) {
        self.checks_run += outcome.result.checks;
        if outcome.result.sampled_from.is_some() {
            self.sample_seed = Some(SAMPLE_SEED);
        }
        if let Some(c) = outcome.counterexample {
            self.counterexamples.push(c);
            self.status = Status::Fail;
        }
        self.identities.push(outcome.result);
    }

    /// Records a single, non-swept check.
    pub fn record_single(&mut self, identity: &str, failure: Option<Counterexample>) {
        let failed = failure.is_some();
        self.record(SweepOutcome {
            result: IdentityResult {
                name: identity.to_string(),
                checks: 1,
                failures: failed as u64,
                sampled_from: None,
            },
            counterexample: failure,
        });
    }

    /// Folds another report's identities into this one.
    pub fn merge(&mut self, other: VerificationReport) {
        self.checks_run += other.checks_run;
        if other.sample_seed.is_some() {
            self.sample_seed = other.sample_seed;
        }
        if other.status == Status::Fail {
            self.status = Status::Fail;
        }
        self.identities.extend(other.identities);
        self.counterexamples.extend(other.counterexamples);
    }

    pub fn identity(&self, name: &str) -> Option<&IdentityResult> {
        self.identities.iter().find(|r| r.name == name)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        writeln!(f, "{}: {status} ({} checks)", self.name, self.checks_run)?;
        if let Some(seed) = self.sample_seed {
            writeln!(f, "  sampled with seed {seed:#x}")?;
        }
        for r in &self.identities {
            let mark = if r.failures == 0 { "ok" } else { "FAILED" };
            write!(f, "  {:<40} {:>9} checks  {mark}", r.name, r.checks)?;
            if let Some(total) = r.sampled_from {
                write!(f, "  (sample of {total})")?;
            }
            if r.failures > 0 {
                write!(f, "  {} failures", r.failures)?;
            }
            writeln!(f)?;
        }
        for c in &self.counterexamples {
            writeln!(f, "  counterexample for {}: [{}]", c.identity, c.witness.join(", "))?;
            writeln!(f, "    lhs = {}", c.lhs)?;
            writeln!(f, "    rhs = {}", c.rhs)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub result: IdentityResult,
    pub counterexample: Option<Counterexample>,
}

/// A failed check: the two sides that should have agreed.
pub struct Mismatch {
    pub lhs: String,
    pub rhs: String,
}

/// Evaluates `check` on every tuple of the mixed-radix space `radices`.
///
/// Tuples are visited in parallel, but the outcome is deterministic: the
/// reported witness is the lexicographically first failing tuple. When the
/// space exceeds `budget`, a fixed-seed sample of `budget` tuples is checked
/// instead.
pub fn sweep<F, W>(identity: &str, radices: &[usize], budget: Option<u64>, check: F, witness: W) -> SweepOutcome
where
    F: Fn(&[usize]) -> Option<Mismatch> + Sync,
    W: Fn(&[usize]) -> Vec<String>,
{
    let total: u64 = radices.iter().map(|&r| r as u64).product();
    let decode = |mut idx: u64| -> Vec<usize> {
        let mut t = vec![0usize; radices.len()];
        for (slot, &r) in t.iter_mut().zip(radices).rev() {
            *slot = (idx % r as u64) as usize;
            idx /= r as u64;
        }
        t
    };
    let run = |idx: u64| -> Option<(u64, Mismatch)> { check(&decode(idx)).map(|m| (idx, m)) };
    type Acc = (u64, Option<(u64, Mismatch)>);
    let fold = |mut acc: Acc, hit: Option<(u64, Mismatch)>| -> Acc {
        if let Some(h) = hit {
            acc.0 += 1;
            if acc.1.as_ref().is_none_or(|(i, _)| h.0 < *i) {
                acc.1 = Some(h);
            }
        }
        acc
    };
    let merge = |a: Acc, b: Acc| -> Acc {
        let first = match (a.1, b.1) {
            (Some(x), Some(y)) => Some(if x.0 <= y.0 { x } else { y }),
            (x, y) => x.or(y),
        };
        (a.0 + b.0, first)
    };

    let (checks, sampled_from, (failures, first)) = match budget {
        Some(b) if total > b => {
            let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
            let mut picks: Vec<u64> = if total <= usize::MAX as u64 {
                index::sample(&mut rng, total as usize, b as usize)
                    .into_iter()
                    .map(|i| i as u64)
                    .collect()
            } else {
                use rand::Rng;
                (0..b).map(|_| rng.gen_range(0..total)).collect()
            };
            picks.sort_unstable();
            let acc = picks
                .par_iter()
                .map(|&i| run(i))
                .fold(|| (0, None), fold)
                .reduce(|| (0, None), merge);
            (b, Some(total), acc)
        }
        _ => {
            let acc = (0..total)
                .into_par_iter()
                .map(run)
                .fold(|| (0, None), fold)
                .reduce(|| (0, None), merge);
            (total, None, acc)
        }
    };

    let counterexample = first.map(|(idx, m)| Counterexample {
        identity: identity.to_string(),
        witness: witness(&decode(idx)),
        lhs: m.lhs,
        rhs: m.rhs,
    });
    SweepOutcome {
        result: IdentityResult {
            name: identity.to_string(),
            checks,
            failures,
            sampled_from,
        },
        counterexample,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(t: &[usize]) -> Vec<String> {
        t.iter().map(|i| i.to_string()).collect()
    }

    #[test]
    fn first_witness_is_lexicographic() {
        let out = sweep(
            "sum",
            &[5, 5, 5],
            None,
            |t| (t[0] + t[1] + t[2] == 7).then(|| Mismatch { lhs: "7".into(), rhs: "?".into() }),
            labels,
        );
        assert_eq!(out.result.checks, 125);
        let c = out.counterexample.unwrap();
        assert_eq!(c.witness, vec!["0", "3", "4"]);
        assert_eq!(out.result.failures, 18);
    }

    #[test]
    fn sampling_is_reproducible() {
        let run = || {
            sweep(
                "odd",
                &[100, 100, 100],
                Some(500),
                |t| (t[2] % 7 == 3).then(|| Mismatch { lhs: String::new(), rhs: String::new() }),
                labels,
            )
        };
        let a = run();
        let b = run();
        assert_eq!(a.result, b.result);
        assert_eq!(a.result.checks, 500);
        assert_eq!(a.result.sampled_from, Some(1_000_000));
        assert_eq!(a.counterexample, b.counterexample);
    }

    #[test]
    fn empty_space_passes() {
        let out = sweep("none", &[3, 0], None, |_| Some(Mismatch { lhs: String::new(), rhs: String::new() }), labels);
        assert_eq!(out.result.checks, 0);
        assert!(out.counterexample.is_none());
    }
}
