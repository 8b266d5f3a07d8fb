//! Seeded differential suites comparing automaton constructions against
//! brute-force oracles. Reports are deterministic given the seed.

use std::collections::HashMap;
use std::fmt;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::fo::toy::{sentence_catalogue, ToyStructure};
use crate::fo::{Compiler, Formula};
use crate::oracle;
use crate::random;
use crate::structures::{antichain_oracle, build_antichain_automaton, build_no_antichain_automaton, AntichainVerdict};
use crate::word::DEFAULT_BUDGET;

pub const SUITES: [&str; 5] = ["complementation", "antichain", "parity", "muller", "toy-fo"];

/// Lassos checked per automaton by the complementation suite.
pub const LASSOS_PER_AUTOMATON: usize = 50;

/// Failures kept verbatim in a report; later ones are only counted.
const KEPT_FAILURES: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub cases: usize,
    pub failed: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(suite: &str, seed: u64) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            seed,
            cases: 0,
            failed: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < KEPT_FAILURES {
                self.failures.push(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "pass" } else { "fail" };
        write!(
            f,
            "{} seed={} cases={} failed={} {status}",
            self.suite, self.seed, self.cases, self.failed
        )
    }
}

/// Runs the named suite on `count` random instances.
pub fn run_suite(name: &str, seed: u64, count: usize) -> Result<SuiteReport> {
    match name {
        "complementation" => complement_suite(seed, count),
        "antichain" => antichain_suite(seed, count),
        "parity" => parity_suite(seed, count),
        "muller" => muller_suite(seed, count),
        "toy-fo" => toy_fo_suite(seed, count),
        _ => Err(Error::Malformed(format!(
            "unknown suite {name:?}; expected one of {}",
            SUITES.join(", ")
        ))),
    }
}

/// Random Büchi automata (at most 5 states, binary) against their
/// complements on random lassos with stem and loop of length at most 6.
pub fn complement_suite(seed: u64, count: usize) -> Result<SuiteReport> {
    let mut rng = random::seeded(seed);
    let b = Alphabet::binary();
    let mut report = SuiteReport::new("complementation", seed);
    for i in 0..count {
        let a = random::buchi(&mut rng, &b, 5, 0.3);
        let c = a.complement()?;
        for _ in 0..LASSOS_PER_AUTOMATON {
            let w = random::lasso(&mut rng, &b, 6, 6);
            let ok = a.accepts(&w)? != c.accepts(&w)?;
            report.record(ok, || format!("automaton {i}: {}", w.display(&b)));
        }
    }
    Ok(report)
}

/// T and T_I against the antichain oracle on random regular trees with at
/// most 6 nodes.
pub fn antichain_suite(seed: u64, count: usize) -> Result<SuiteReport> {
    let mut rng = random::seeded(seed);
    let b = Alphabet::binary();
    let t_aut = build_antichain_automaton().to_parity()?;
    let ti_aut = build_no_antichain_automaton().to_parity()?;
    let mut report = SuiteReport::new("antichain", seed);
    for i in 0..count {
        let t = random::regular_tree(&mut rng, &b, 6);
        let infinite = antichain_oracle(&t)? == AntichainVerdict::Infinite;
        let in_t = t_aut.accepts(&t)?;
        let in_ti = ti_aut.accepts(&t)?;
        report.record(in_t == infinite && in_ti == !infinite, || {
            format!("tree {i}: oracle infinite={infinite} T={in_t} T_I={in_ti}")
        });
    }
    Ok(report)
}

/// The game solver against the naive fixpoint oracle on games with at most
/// 8 vertices and 4 priorities; each solution's strategies are verified.
pub fn parity_suite(seed: u64, count: usize) -> Result<SuiteReport> {
    let mut rng = random::seeded(seed);
    let mut report = SuiteReport::new("parity", seed);
    for i in 0..count {
        let g = random::parity_game(&mut rng, 8, 4);
        let sol = g.solve();
        let want = oracle::parity_winners_fixpoint(&g);
        let agree = (0..g.num_vertices()).all(|v| sol.winner(v) == want[v]);
        let verified = sol.verify(&g);
        report.record(agree && verified.is_ok(), || match verified {
            Err(e) => format!("game {i}: {e}"),
            Ok(()) => format!("game {i}: winners differ from the oracle"),
        });
    }
    Ok(report)
}

/// Muller tree automaton membership through the parity conversion against
/// the direct Muller oracle.
pub fn muller_suite(seed: u64, count: usize) -> Result<SuiteReport> {
    let mut rng = random::seeded(seed);
    let b = Alphabet::binary();
    let mut report = SuiteReport::new("muller", seed);
    for i in 0..count {
        let a = random::muller(&mut rng, &b, 3, 0.25);
        let t = random::regular_tree(&mut rng, &b, 4);
        let got = a.accepts(&t)?;
        let want = oracle::muller_membership(&a, &t);
        report.record(got == want, || format!("case {i}: automaton says {got}, oracle {want}"));
    }
    Ok(report)
}

/// Sentences of quantifier depth at most 2 decided over random 3-element
/// toy structures, against brute-force evaluation.
pub fn toy_fo_suite(seed: u64, count: usize) -> Result<SuiteReport> {
    use rand::Rng;
    let mut rng = random::seeded(seed);
    let catalogue = sentence_catalogue();
    let mut report = SuiteReport::new("toy-fo", seed);
    let per_structure = 10;
    let mut done = 0;
    while done < count {
        let toy = ToyStructure::random(&mut rng, 3);
        let p = toy.presentation()?;
        let mut c = Compiler::new(&p, DEFAULT_BUDGET);
        for _ in 0..per_structure.min(count - done) {
            let s: &Formula = &catalogue[rng.gen_range(0..catalogue.len())];
            let want = toy.eval(s, &mut HashMap::new())?;
            let got = c.decide(s)?.holds;
            report.record(got == want, || format!("{toy:?}: {s} decided {got}, brute force {want}"));
            done += 1;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_runs_pass_and_repeat() {
        for name in SUITES {
            let a = run_suite(name, 3, 8).unwrap();
            assert!(a.passed(), "{a} {:?}", a.failures);
            assert_eq!(a, run_suite(name, 3, 8).unwrap());
        }
        assert!(run_suite("nope", 0, 1).is_err());
    }
}
