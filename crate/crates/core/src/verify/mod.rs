//! Acceptance suites: each criterion runs a family of exact checks against
//! the brute-force oracles and reports one line per check.
//!
//! Every check is deterministic given the seed. Cases run on a rayon pool
//! of `jobs` threads and results are collected in input order.

mod algebra;
mod forms;
mod steps;

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::encodings::{nbool_proof, slist_proof};
use crate::logic::Formula;
use crate::machine::{Configuration, TuringMachine};
use crate::semantics::{denote, Value};

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    pub jobs: usize,
}

impl Default for VerifyOptions {
    fn default() -> VerifyOptions {
        VerifyOptions { seed: 0, jobs: 1 }
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("unknown suite {0:?}; expected all, 1-8 or one of {1}")]
    UnknownSuite(String, String),
}

/// Failures kept verbatim per check; later ones are only counted.
const KEPT_FAILURES: usize = 3;

/// The outcome of one family of cases.
#[derive(Clone, Debug)]
pub struct Check {
    pub label: String,
    pub cases: usize,
    pub failed: usize,
    pub failures: Vec<String>,
}

impl Check {
    pub fn new(label: impl Into<String>) -> Check {
        Check {
            label: label.into(),
            cases: 0,
            failed: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    /// Records one case; `what` describes it when it fails or errors.
    pub fn case(&mut self, outcome: Result<bool, String>, what: impl FnOnce() -> String) {
        self.cases += 1;
        let msg = match outcome {
            Ok(true) => return,
            Ok(false) => what(),
            Err(e) => format!("{}: error: {e}", what()),
        };
        self.failed += 1;
        if self.failures.len() < KEPT_FAILURES {
            self.failures.push(msg);
        }
    }

    pub fn merge(&mut self, other: Check) {
        self.cases += other.cases;
        self.failed += other.failed;
        for f in other.failures {
            if self.failures.len() < KEPT_FAILURES {
                self.failures.push(f);
            }
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "  ok    {} ({} cases)", self.label, self.cases)
        } else {
            write!(f, "  FAIL  {} ({} of {} cases failed)", self.label, self.failed, self.cases)?;
            for m in &self.failures {
                write!(f, "\n          {m}")?;
            }
            Ok(())
        }
    }
}

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub checks: Vec<Check>,
    pub elapsed: Duration,
}

impl CriterionResult {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn cases(&self) -> usize {
        self.checks.iter().map(|c| c.cases).sum()
    }

    /// `criterion N name: PASS|FAIL (k cases)`.
    pub fn headline(&self) -> String {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        format!("criterion {} {}: {verdict} ({} cases)", self.id, self.name, self.cases())
    }
}

/// Headline then one line per check; no timings, so output is reproducible.
impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.headline())?;
        for c in &self.checks {
            write!(f, "\n{c}")?;
        }
        Ok(())
    }
}

pub const CRITERIA: [(usize, &str); 8] = [
    (1, "step"),
    (2, "iteration"),
    (3, "boolstep"),
    (4, "direct-steps"),
    (5, "closed-forms"),
    (6, "polynomials"),
    (7, "bint-algebra"),
    (8, "ket-laws"),
];

pub fn run_criterion(id: usize, opts: &VerifyOptions) -> Option<CriterionResult> {
    let (_, name) = *CRITERIA.iter().find(|(i, _)| *i == id)?;
    let start = Instant::now();
    let checks = match id {
        1 => steps::criterion_step(opts),
        2 => steps::criterion_iteration(opts),
        3 => steps::criterion_boolstep(opts),
        4 => steps::criterion_direct(opts),
        5 => forms::criterion_closed(opts),
        6 => forms::criterion_polynomials(opts),
        7 => algebra::criterion_bint(opts),
        _ => algebra::criterion_kets(opts),
    };
    Some(CriterionResult {
        id,
        name,
        checks,
        elapsed: start.elapsed(),
    })
}

/// Resolves `all`, a criterion number or a criterion name.
pub fn suite_ids(suite: &str) -> Result<Vec<usize>, VerifyError> {
    if suite == "all" {
        return Ok(CRITERIA.iter().map(|(i, _)| *i).collect());
    }
    CRITERIA
        .iter()
        .find(|(i, n)| suite == *n || suite.parse::<usize>().ok() == Some(*i))
        .map(|(i, _)| vec![*i])
        .ok_or_else(|| {
            let names: Vec<&str> = CRITERIA.iter().map(|(_, n)| *n).collect();
            VerifyError::UnknownSuite(suite.to_string(), names.join(", "))
        })
}

pub fn run_suite(suite: &str, opts: &VerifyOptions) -> Result<Vec<CriterionResult>, VerifyError> {
    Ok(suite_ids(suite)?
        .into_iter()
        .filter_map(|id| run_criterion(id, opts))
        .collect())
}

/// Maps `f` over `items` on `jobs` threads, keeping input order.
pub(crate) fn par_map<T: Send, U: Send>(jobs: usize, items: Vec<T>, f: impl Fn(T) -> U + Sync + Send) -> Vec<U> {
    if jobs <= 1 {
        return items.into_iter().map(f).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(|| items.into_par_iter().map(f).collect()),
        Err(_) => items.into_iter().map(f).collect(),
    }
}

/// Independent per-case generators derived from the suite seed.
pub(crate) fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

pub(crate) fn err(e: impl fmt::Display) -> String {
    e.to_string()
}

/// Cached vacuum embeddings of words and booleans over one base formula.
pub(crate) struct Vacuums {
    base: Formula,
    cache: Mutex<HashMap<(bool, usize, Vec<usize>), Value>>,
}

impl Vacuums {
    pub fn new(base: &Formula) -> Vacuums {
        Vacuums {
            base: base.clone(),
            cache: Mutex::new(HashMap::new()),
        }
    }

    fn get(&self, key: (bool, usize, Vec<usize>)) -> Result<Value, String> {
        if let Some(v) = self.cache.lock().expect("vacuum cache").get(&key) {
            return Ok(v.clone());
        }
        let (is_word, n, w) = &key;
        let p = if *is_word {
            slist_proof(*n, w, &self.base)
        } else {
            nbool_proof(w[0], *n, &self.base)
        }
        .map_err(err)?;
        let v = Value::vacuum(denote(&p).map_err(err)?);
        self.cache.lock().expect("vacuum cache").insert(key, v.clone());
        Ok(v)
    }

    pub fn word(&self, s: usize, w: &[usize]) -> Result<Value, String> {
        self.get((true, s, w.to_vec()))
    }

    pub fn boolean(&self, i: usize, n: usize) -> Result<Value, String> {
        self.get((false, n, vec![i]))
    }

    pub fn booleans(&self, xs: &[usize], n: usize) -> Result<Vec<Value>, String> {
        xs.iter().map(|&x| self.boolean(x, n)).collect()
    }

    /// `|∅⟩_S ⊗ |∅⟩_T ⊗ |∅⟩_q`.
    pub fn config(&self, m: &TuringMachine, c: &Configuration) -> Result<Value, String> {
        Ok(Value::tensor_all(vec![
            self.word(m.alphabet(), &c.left)?,
            self.word(m.alphabet(), &c.right)?,
            self.boolean(c.state, m.states())?,
        ]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_resolve() {
        assert_eq!(suite_ids("all").unwrap().len(), 8);
        assert_eq!(suite_ids("3").unwrap(), vec![3]);
        assert_eq!(suite_ids("ket-laws").unwrap(), vec![8]);
        assert!(suite_ids("nine").is_err());
    }

    #[test]
    fn check_keeps_first_failures() {
        let mut c = Check::new("x");
        for i in 0..5 {
            c.case(Ok(i % 2 == 0), || format!("case {i}"));
        }
        c.case(Err("boom".into()), || "case 5".into());
        assert_eq!((c.cases, c.failed), (6, 3));
        assert_eq!(c.failures, vec!["case 1", "case 3", "case 5: error: boom"]);
    }

    #[test]
    fn par_map_keeps_order() {
        assert_eq!(par_map(3, (0..20).collect(), |x: i32| x * 2), (0..20).map(|x| x * 2).collect::<Vec<_>>());
    }
}
