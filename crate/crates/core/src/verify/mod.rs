//! Seeded verification suites with deterministic, self-contained replay.
//!
//! A suite draws each case from its own stream of the suite seed, so cases can
//! run in any order. A case is stored as a [`CaseInput`]: the complexes and
//! maps it was built from plus a salt for any further choices, so a failure
//! payload re-runs without the suite seed.

mod case;
mod suites;

use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::random::{seeded, SeededRng};

pub use case::{CaseInput, Checker, Outcome};
pub use suites::SUITES;

/// A named family of properties over generated cases.
pub struct Suite {
    pub name: &'static str,
    pub about: &'static str,
    pub default_cases: usize,
    pub generate: fn(&mut SeededRng, usize) -> CaseInput,
    pub check: fn(&CaseInput, &mut Checker) -> Result<()>,
}

impl std::fmt::Debug for Suite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Suite").field("name", &self.name).finish()
    }
}

pub fn suite(name: &str) -> Result<&'static Suite> {
    SUITES.iter().find(|s| s.name == name).ok_or_else(|| {
        let names: Vec<&str> = SUITES.iter().map(|s| s.name).collect();
        Error::Parse(format!("unknown suite `{name}`; available: {}", names.join(", ")))
    })
}

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.name).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyTally {
    pub name: String,
    /// Informational properties are counted but never fail a run.
    pub required: bool,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub suite: String,
    pub case: usize,
    pub property: String,
    pub lhs: String,
    pub rhs: String,
    pub context: String,
    pub input: CaseInput,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub cases: usize,
    pub properties: Vec<PropertyTally>,
    pub counterexamples: Vec<Counterexample>,
}

/// Counterexamples kept per property.
const KEEP: usize = 3;

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(|p| !p.required || p.failed == 0)
    }

    pub fn property(&self, name: &str) -> Option<&PropertyTally> {
        self.properties.iter().find(|p| p.name == name)
    }

    pub fn summary(&self) -> String {
        let mut s = format!("suite {} seed {} cases {}\n", self.suite, self.seed, self.cases);
        for p in &self.properties {
            let tag = match (p.required, p.failed) {
                (false, _) => "INFO",
                (true, 0) => "ok",
                (true, _) => "FAIL",
            };
            s.push_str(&format!("  {:<4} {:<28} {} passed, {} failed\n", tag, p.name, p.passed, p.failed));
        }
        s
    }
}

fn case_rng(seed: u64, index: usize) -> SeededRng {
    let mut rng = seeded(seed);
    rng.set_stream(index as u64 + 1);
    rng
}

/// Runs one case; a library error is recorded as a failure of `error`.
pub fn run_case(suite: &Suite, input: &CaseInput) -> Vec<Outcome> {
    let mut ck = Checker::default();
    if let Err(e) = (suite.check)(input, &mut ck) {
        ck.fail("error", e.to_string(), String::new(), String::new());
    }
    ck.outcomes
}

pub fn generate_case(suite: &Suite, seed: u64, index: usize) -> CaseInput {
    let mut rng = case_rng(seed, index);
    let mut input = (suite.generate)(&mut rng, index);
    input.salt = rng.gen();
    input
}

pub fn run_suite(suite: &Suite, seed: u64, cases: usize) -> VerificationReport {
    let results: Vec<(usize, CaseInput, Vec<Outcome>)> = (0..cases)
        .into_par_iter()
        .map(|k| {
            let input = generate_case(suite, seed, k);
            let out = run_case(suite, &input);
            (k, input, out)
        })
        .collect();
    let mut tallies: BTreeMap<String, PropertyTally> = BTreeMap::new();
    let mut counterexamples = Vec::new();
    for (k, input, outcomes) in results {
        let mut per: BTreeMap<&str, (bool, Option<&Outcome>)> = BTreeMap::new();
        for o in &outcomes {
            let e = per.entry(o.property.as_str()).or_insert((o.required, None));
            if !o.passed && e.1.is_none() {
                e.1 = Some(o);
            }
        }
        for (name, (required, fail)) in per {
            let t = tallies.entry(name.to_string()).or_insert(PropertyTally {
                name: name.to_string(),
                required,
                passed: 0,
                failed: 0,
            });
            match fail {
                None => t.passed += 1,
                Some(o) => {
                    t.failed += 1;
                    if required && t.failed <= KEEP {
                        counterexamples.push(Counterexample {
                            suite: suite.name.to_string(),
                            case: k,
                            property: o.property.clone(),
                            lhs: o.lhs.clone(),
                            rhs: o.rhs.clone(),
                            context: o.context.clone(),
                            input: input.clone(),
                        });
                    }
                }
            }
        }
    }
    VerificationReport {
        suite: suite.name.to_string(),
        seed,
        cases,
        properties: tallies.into_values().collect(),
        counterexamples,
    }
}

/// Re-runs a stored counterexample. Returns the matching failure if it
/// reproduces.
pub fn replay(c: &Counterexample) -> Result<Option<Outcome>> {
    let s = suite(&c.suite)?;
    Ok(run_case(s, &c.input)
        .into_iter()
        .find(|o| !o.passed && o.property == c.property))
}

#[cfg(test)]
mod tests;
