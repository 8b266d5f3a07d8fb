//! The nine acceptance criteria, each run at its stated size and time
//! limit. Prints one `PASS`/`FAIL` line per criterion and exits non-zero if
//! any fails.

use std::collections::{HashMap, HashSet};
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use omega_automatic::fo::toy::{sentence_catalogue, ToyStructure};
use omega_automatic::fo::{
    apply_interpretation, decide_sentence, matrix_interpretation, ring_interpretation,
    unitriangular_interpretation, Compiler, Formula,
};
use omega_automatic::presentation::{validate_tree, validate_word, Mode, DEFAULT_SAMPLES};
use omega_automatic::random;
use omega_automatic::structures::boolean::run_instance_catalogue;
use omega_automatic::structures::fin::included;
use omega_automatic::structures::{
    antichain_tree, build_antichain_automaton, build_b1_presentation, build_b2_presentation,
    build_fin_automaton, build_fin_k_automaton, build_no_antichain_automaton, chain_tree, in_layer,
    node_index, node_unindex, truncation_probe, NodeAddress,
};
use omega_automatic::suite::{antichain_suite, complement_suite, parity_suite};
use omega_automatic::word::DEFAULT_BUDGET;
use omega_automatic::{Alphabet, Error, LassoWord, Result};

const SEED: u64 = 7;

type Verdict = Result<std::result::Result<String, String>>;

type Criterion = (&'static str, Duration, fn() -> Verdict);

fn require(ok: bool, what: impl Into<String>) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn complementation() -> Verdict {
    let r = complement_suite(SEED, 200)?;
    Ok(require(r.passed(), format!("{} {:?}", r, r.failures)).map(|()| format!("{} cases agree", r.cases)))
}

fn parity_games() -> Verdict {
    let r = parity_suite(SEED, 100)?;
    Ok(require(r.passed(), format!("{} {:?}", r, r.failures)).map(|()| format!("{} games agree", r.cases)))
}

fn antichain_automata() -> Verdict {
    let r = antichain_suite(SEED, 500)?;
    let t = build_antichain_automaton();
    let ti = build_no_antichain_automaton();
    if !r.passed() {
        return Ok(Err(format!("{r} {:?}", r.failures)));
    }
    if !t.product(&ti)?.is_empty()? {
        return Ok(Err("T ∩ T_I is not empty".into()));
    }
    for n in 0..=5 {
        if !ti.accepts(&chain_tree(n))? {
            return Ok(Err(format!("chain_tree({n}) not in T_I")));
        }
    }
    if !t.accepts(&antichain_tree())? {
        return Ok(Err("antichain_tree() not in T".into()));
    }
    Ok(Ok(format!("{} trees agree, product empty, witnesses placed", r.cases)))
}

fn enumeration() -> Verdict {
    let want = ["ε", "l", "r", "ll", "lr", "rl", "rr", "lll", "llr", "lrl", "lrr", "rll", "rlr", "rrl", "rrr"];
    let got: Vec<String> = (0..15).map(|i| node_unindex(i).to_string()).collect();
    if got != want {
        return Ok(Err(format!("first values {got:?}")));
    }
    let all: Vec<NodeAddress> = NodeAddress::up_to(8).collect();
    let indices: HashSet<u64> = all.iter().map(node_index).collect();
    let expected = (1u64 << 9) - 1;
    let ok = all.len() as u64 == expected
        && indices.len() as u64 == expected
        && indices.iter().all(|&i| i < expected)
        && all.iter().all(|u| node_unindex(node_index(u)) == *u)
        && all.windows(2).all(|p| (p[0].len(), &p[0].0) < (p[1].len(), &p[1].0));
    Ok(require(ok, "not a monotone bijection up to length 8").map(|()| format!("{expected} addresses")))
}

const BOOLEAN_AXIOMS: [&str; 8] = [
    "forall x y z. cap(cap(x,y),z) = cap(x,cap(y,z))",
    "forall x y z. cup(cup(x,y),z) = cup(x,cup(y,z))",
    "forall x y. cap(x,y) = cap(y,x)",
    "forall x y. cup(x,y) = cup(y,x)",
    "forall x y. cup(x,cap(x,y)) = x",
    "forall x y. cap(x,cup(x,y)) = x",
    "forall x. cup(x,neg(x)) = one",
    "forall x. cap(x,neg(x)) = zero",
];

fn b1() -> Verdict {
    let p = build_b1_presentation()?;
    let report = validate_word(&p)?;
    if let Some(c) = report.checks.iter().find(|c| !(c.passed && c.mode == Mode::Exact)) {
        return Ok(Err(format!("check {} not exact-pass", c.name)));
    }
    let holds = |s: &str| -> Result<bool> { Ok(decide_sentence(&p, &Formula::parse(s)?, DEFAULT_BUDGET)?.holds) };
    for a in BOOLEAN_AXIOMS {
        if !holds(a)? {
            return Ok(Err(format!("axiom fails: {a}")));
        }
    }
    if !holds("forall x. !x = zero -> exists z. !z = zero & subset(z,x) & !z = x")? {
        return Ok(Err("atomlessness fails".into()));
    }
    if holds("exists x. !x = zero & forall z. subset(z,x) -> z = zero | z = x")? {
        return Ok(Err("an atom exists".into()));
    }
    Ok(Ok(format!("{} checks exact-pass, 8 axioms, atomless", report.checks.len())))
}

fn b2() -> Verdict {
    let p = build_b2_presentation()?;
    let report = validate_tree(&p)?;
    let mode_of = |name: &str| report.check(name).map(|c| (c.mode, c.passed));
    if mode_of("reflexivity") != Some((Mode::Exact, true)) || mode_of("symmetry") != Some((Mode::Exact, true)) {
        return Ok(Err("reflexivity or symmetry not exact-pass".into()));
    }
    if mode_of("transitivity") != Some((Mode::Sampled, true)) || report.samples != DEFAULT_SAMPLES {
        return Ok(Err("transitivity not sampled-pass on 200 tuples".into()));
    }
    if !report.all_passed() {
        return Ok(Err(format!("validation:\n{report}")));
    }
    let outcomes = run_instance_catalogue()?;
    if outcomes.len() != 20 {
        return Ok(Err(format!("catalogue has {} checks", outcomes.len())));
    }
    if let Some(o) = outcomes.iter().find(|o| !o.passed()) {
        return Ok(Err(format!("instance fails: {}", o.check)));
    }
    Ok(Ok("validation modes as required, 20 instance checks pass".into()))
}

fn layers() -> Verdict {
    let fin = build_fin_automaton();
    for k in 0..=5 {
        let (a, b) = (build_fin_k_automaton(k), build_fin_k_automaton(k + 1));
        if !included(&a, &b)? || !included(&b, &fin)? || included(&b, &a)? {
            return Ok(Err(format!("Fin_{k} ⊆ Fin_{} ⊆ Fin fails", k + 1)));
        }
    }
    let bin = Alphabet::binary();
    let mut rng = random::seeded(SEED);
    let mut trees: Vec<_> = (0..500).map(|_| random::regular_tree(&mut rng, &bin, 6)).collect();
    trees.extend((0..=5).map(chain_tree));
    trees.push(antichain_tree());
    for (i, t) in trees.iter().enumerate() {
        for k in 0..8 {
            if in_layer(t, k)? && !in_layer(t, k + 1)? {
                return Ok(Err(format!("tree {i}: in I_{k} but not I_{}", k + 1)));
            }
        }
        if !truncation_probe(t, 6)? {
            return Ok(Err(format!("tree {i}: truncation probe fails")));
        }
    }
    Ok(Ok(format!("k ≤ 5 inclusions exact, {} trees probed", trees.len())))
}

fn toy_fo() -> Verdict {
    let toy = ToyStructure::standard();
    let p = toy.presentation()?;
    let mut c = Compiler::new(&p, DEFAULT_BUDGET);
    let catalogue = sentence_catalogue();
    for s in &catalogue {
        let want = toy.eval(s, &mut HashMap::new())?;
        if c.decide(s)?.holds != want {
            return Ok(Err(format!("disagreement on {s}")));
        }
    }
    Ok(Ok(format!("{} sentences agree", catalogue.len())))
}

fn interpretations() -> Verdict {
    let b1 = build_b1_presentation()?;
    let ring = apply_interpretation(&b1, &ring_interpretation(), DEFAULT_BUDGET)?;
    for s in [
        "forall x y. add(x,y) = add(y,x)",
        "forall x y z. add(add(x,y),z) = add(x,add(y,z))",
        "forall x. add(x,x) = zero",
        "forall x y z. mul(x, add(y,z)) = add(mul(x,y), mul(x,z))",
    ] {
        if !decide_sentence(&ring, &Formula::parse(s)?, DEFAULT_BUDGET)?.holds {
            return Ok(Err(format!("ring law fails: {s}")));
        }
    }
    let ut = unitriangular_interpretation(3)?;
    let dom = Compiler::new(&ring, DEFAULT_BUDGET).compile_on(&ut.domain.body, &ut.domain.vars)?;
    let b = Alphabet::binary();
    let (zero, one) = (LassoWord::parse("|0", &b)?, LassoWord::parse("|1", &b)?);
    let at = |m: [[&LassoWord; 3]; 3]| -> Result<bool> {
        let elems: Vec<&LassoWord> = m.iter().flatten().copied().collect();
        dom.accepts(&ring.zip(&elems)?)
    };
    if !at([[&one, &zero, &zero], [&zero, &one, &zero], [&zero, &zero, &one]])? {
        return Ok(Err("identity rejected by the UT_3 domain".into()));
    }
    if at([[&one, &zero, &zero], [&one, &one, &zero], [&zero, &zero, &one]])? {
        return Ok(Err("lower-triangular entry accepted by the UT_3 domain".into()));
    }
    let m3 = match apply_interpretation(&ring, &matrix_interpretation(3)?, DEFAULT_BUDGET) {
        Ok(_) => "M_3 compiled".to_string(),
        Err(Error::Capacity { what, budget }) => format!("M_3 aborted: {what} over {budget}"),
        Err(e) => return Ok(Err(format!("M_3 failed with {e}"))),
    };
    Ok(Ok(format!("ring laws hold, UT_3 domain correct, {m3}")))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 Büchi complementation", Duration::from_secs(300), complementation),
        ("2 parity games", Duration::from_secs(60), parity_games),
        ("3 antichain automata", Duration::from_secs(600), antichain_automata),
        ("4 node enumeration", Duration::from_secs(60), enumeration),
        ("5 B1 presentation", Duration::from_secs(300), b1),
        ("6 B2 presentation", Duration::from_secs(600), b2),
        ("7 layers and truncations", Duration::from_secs(600), layers),
        ("8 toy FO equivalence", Duration::from_secs(600), toy_fo),
        ("9 interpretations", Duration::from_secs(600), interpretations),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run));
        let took = start.elapsed();
        let verdict = match outcome {
            Ok(Ok(Ok(detail))) if took <= limit => Ok(detail),
            Ok(Ok(Ok(_))) => Err(format!("over the {}s limit", limit.as_secs())),
            Ok(Ok(Err(why))) => Err(why),
            Ok(Err(e)) => Err(format!("error: {e}")),
            Err(_) => Err("panicked".into()),
        };
        match verdict {
            Ok(detail) => println!("PASS criterion {name} ({:.1}s): {detail}", took.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name} ({:.1}s): {why}", took.as_secs_f64());
            }
        }
    }
    println!("acceptance: {} of 9 criteria pass", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
