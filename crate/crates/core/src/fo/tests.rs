use std::collections::HashMap;

use super::toy::{sentence_catalogue, ToyStructure};
use super::*;
use crate::alphabet::{Alphabet, Letter};
use crate::error::Error;
use crate::presentation::{validate_word, WordPresentation};
use crate::random;
use crate::structures::{
    antichain_oracle, antichain_tree, build_b1_presentation, build_b2_presentation, chain_tree,
    AntichainVerdict,
};
use crate::tree::RegularTree;
use crate::word::{LassoWord, DEFAULT_BUDGET};

fn decide(p: &WordPresentation, s: &str) -> bool {
    decide_sentence(p, &Formula::parse(s).unwrap(), DEFAULT_BUDGET).unwrap().holds
}

pub(crate) const BOOLEAN_AXIOMS: [&str; 8] = [
    "forall x y z. cap(cap(x,y),z) = cap(x,cap(y,z))",
    "forall x y z. cup(cup(x,y),z) = cup(x,cup(y,z))",
    "forall x y. cap(x,y) = cap(y,x)",
    "forall x y. cup(x,y) = cup(y,x)",
    "forall x y. cup(x,cap(x,y)) = x",
    "forall x y. cap(x,cup(x,y)) = x",
    "forall x. cup(x,neg(x)) = one",
    "forall x. cap(x,neg(x)) = zero",
];

#[test]
fn boolean_axioms_hold_in_b1() {
    let p = build_b1_presentation().unwrap();
    for a in BOOLEAN_AXIOMS {
        assert!(decide(&p, a), "{a}");
    }
    assert!(decide(&p, "forall x y z. cap(x, cup(y,z)) = cup(cap(x,y), cap(x,z))"));
    assert!(!decide(&p, "forall x y. cup(x,y) = x"));
}

#[test]
fn b1_is_atomless() {
    let p = build_b1_presentation().unwrap();
    assert!(decide(&p, "forall x. !x = zero -> exists z. !z = zero & subset(z,x) & !z = x"));
    assert!(!decide(&p, "exists x. !x = zero & forall z. subset(z,x) -> z = zero | z = x"));
}

#[test]
fn formula_examples_over_b1() {
    let p = build_b1_presentation().unwrap();
    let b = Alphabet::binary();
    let c = compile_formula(&p, &Formula::parse("x = x").unwrap(), DEFAULT_BUDGET).unwrap();
    assert_eq!(c.vars, vec!["x".to_string()]);
    let mut rng = random::seeded(3);
    for _ in 0..30 {
        let w = random::lasso(&mut rng, &b, 5, 5);
        assert!(c.automaton.accepts(&w).unwrap());
    }
    let f = Formula::parse("exists z. subset(z,x) & !z = x & !z = zero").unwrap();
    let ones = LassoWord::parse("|1", &b).unwrap();
    assert!(holds_at(&p, &f, &[("x", &ones)], DEFAULT_BUDGET).unwrap());
    let finite = LassoWord::parse("1 1|0", &b).unwrap();
    assert!(!holds_at(&p, &f, &[("x", &finite)], DEFAULT_BUDGET).unwrap());
}

#[test]
fn tree_fragment_over_b2() {
    let p = build_b2_presentation().unwrap();
    let zero = RegularTree::constant(Letter(0));
    let ne = Formula::parse("!(x = y)").unwrap();
    assert!(!holds_at(&p, &ne, &[("x", &chain_tree(1)), ("y", &zero)], DEFAULT_BUDGET).unwrap());
    assert!(holds_at(&p, &ne, &[("x", &antichain_tree()), ("y", &zero)], DEFAULT_BUDGET).unwrap());

    let d = decide_sentence(&p, &Formula::parse("exists x. !(x = zero)").unwrap(), DEFAULT_BUDGET).unwrap();
    assert!(d.holds);
    let (name, w) = &d.witnesses[0];
    assert_eq!(name, "x");
    assert_eq!(antichain_oracle(w).unwrap(), AntichainVerdict::Infinite);

    let nested = Formula::parse("exists x. forall y. subset(y, x)").unwrap();
    assert!(matches!(
        decide_sentence(&p, &nested, DEFAULT_BUDGET),
        Err(Error::Unsupported(_))
    ));
    // an outer universal block is decided through the negated matrix
    let d = decide_sentence(&p, &Formula::parse("forall x. subset(zero, x)").unwrap(), DEFAULT_BUDGET).unwrap();
    assert!(d.holds);
}

#[test]
fn toy_structure_agrees_with_brute_force() {
    let toy = ToyStructure::standard();
    let p = toy.presentation().unwrap();
    let catalogue = sentence_catalogue();
    assert!(catalogue.len() > 1000);
    let mut c = Compiler::new(&p, DEFAULT_BUDGET);
    for s in catalogue.iter().step_by(7) {
        let want = toy.eval(s, &mut HashMap::new()).unwrap();
        let got = c.decide(s).unwrap();
        assert_eq!(got.holds, want, "{s}");
        let negated = c.decide(&Formula::not(s.clone())).unwrap();
        assert_eq!(negated.holds, !want, "{s}");
    }
}

#[test]
fn witnesses_are_members() {
    let toy = ToyStructure::standard();
    let p = toy.presentation().unwrap();
    let s = Formula::parse("exists x y. r(x,y) & !r(y,x) & p(x)").unwrap();
    let d = decide_sentence(&p, &s, DEFAULT_BUDGET).unwrap();
    assert!(d.holds);
    let x = &d.witnesses[0].1;
    let y = &d.witnesses[1].1;
    assert!(p.holds("r", &[x, y]).unwrap());
    assert!(!p.holds("r", &[y, x]).unwrap());
    let s = Formula::parse("forall x. p(x)").unwrap();
    let d = decide_sentence(&p, &s, DEFAULT_BUDGET).unwrap();
    assert!(!d.holds);
    assert!(!p.holds("p", &[&d.witnesses[0].1]).unwrap());
}

#[test]
fn compiled_formulas_respect_equality() {
    let toy = ToyStructure::standard();
    let p = toy.presentation().unwrap();
    let f = Formula::parse("exists z. r(x,z) & (r(z,y) | x = y)").unwrap();
    let c = compile_formula(&p, &f, DEFAULT_BUDGET).unwrap();
    for x in 0..3 {
        for y in 0..3 {
            let mut env = HashMap::from([("x".to_string(), x), ("y".to_string(), y)]);
            let want = toy.eval(&f, &mut env).unwrap();
            for salt in 0..4 {
                let (a, b) = (toy.element(x, salt), toy.element(y, salt + 1));
                assert_eq!(c.automaton.accepts(&p.zip(&[&a, &b]).unwrap()).unwrap(), want);
            }
        }
    }
    // words outside the domain satisfy nothing
    let junk = LassoWord::parse("|0 1", &toy.base()).unwrap();
    let one = toy.element(1, 0);
    let any = compile_formula(&p, &Formula::parse("!r(x,y)").unwrap(), DEFAULT_BUDGET).unwrap();
    assert!(!any.automaton.accepts(&p.zip(&[&junk, &one]).unwrap()).unwrap());
}

#[test]
fn identity_interpretation_preserves_sentences() {
    let p = ToyStructure::standard().presentation().unwrap();
    let id = Interpretation::new(
        1,
        Definition::parse(&["x"], "true").unwrap(),
        Definition::parse(&["x", "y"], "x = y").unwrap(),
        vec![
            ("p".into(), 1, Definition::parse(&["x"], "p(x)").unwrap()),
            ("r".into(), 2, Definition::parse(&["x", "y"], "r(x,y)").unwrap()),
        ],
    )
    .unwrap();
    let q = apply_interpretation(&p, &id, DEFAULT_BUDGET).unwrap();
    for s in sentence_catalogue().iter().step_by(71).take(20) {
        let a = decide_sentence(&p, s, DEFAULT_BUDGET).unwrap().holds;
        let b = decide_sentence(&q, s, DEFAULT_BUDGET).unwrap().holds;
        assert_eq!(a, b, "{s}");
    }
}

#[test]
fn pairing_interpretation_matches_brute_force_and_translation() {
    let toy = ToyStructure {
        p: vec![true, false],
        r: vec![vec![false, true], vec![true, true]],
    };
    let p = toy.presentation().unwrap();
    let i = pairing_interpretation("p", "r");
    let q = apply_interpretation(&p, &i, DEFAULT_BUDGET).unwrap();
    assert!(validate_word(&q).unwrap().all_passed());
    // the interpreted structure, built by hand: pairs (a, b) ↦ 2a + b
    let hand = ToyStructure {
        p: (0..4).map(|e| toy.p[e / 2]).collect(),
        r: (0..4)
            .map(|e| (0..4).map(|f| toy.r[e / 2][f / 2] && toy.r[e % 2][f % 2]).collect())
            .collect(),
    };
    let mut c = Compiler::new(&q, DEFAULT_BUDGET);
    for s in sentence_catalogue().iter().step_by(5) {
        let want = hand.eval(s, &mut HashMap::new()).unwrap();
        assert_eq!(c.decide(s).unwrap().holds, want, "{s}");
    }
    for s in sentence_catalogue().iter().step_by(97) {
        let direct = decide_sentence(&q, s, DEFAULT_BUDGET).unwrap().holds;
        let translated = decide_sentence(&p, &i.translate(s).unwrap(), DEFAULT_BUDGET).unwrap().holds;
        assert_eq!(direct, translated, "{s}");
    }
}

#[test]
fn ring_over_b1() {
    let b1 = build_b1_presentation().unwrap();
    let ring = apply_interpretation(&b1, &ring_interpretation(), DEFAULT_BUDGET).unwrap();
    for s in [
        "forall x y. add(x,y) = add(y,x)",
        "forall x y z. add(add(x,y),z) = add(x,add(y,z))",
        "forall x. add(x,x) = zero",
        "forall x y z. mul(x, add(y,z)) = add(mul(x,y), mul(x,z))",
        "forall x. mul(x, one) = x",
    ] {
        assert!(decide(&ring, s), "{s}");
    }
    assert!(!decide(&ring, "forall x y. add(x,y) = mul(x,y)"));
    let translated = ring_interpretation()
        .translate(&Formula::parse("forall x. add(x,x) = zero").unwrap())
        .unwrap();
    assert!(decide(&b1, &translated.to_string()));
}

#[test]
fn unitriangular_domain_over_ring() {
    let b1 = build_b1_presentation().unwrap();
    let ring = apply_interpretation(&b1, &ring_interpretation(), DEFAULT_BUDGET).unwrap();
    let ut = unitriangular_interpretation(3).unwrap();
    let dom = Compiler::new(&ring, DEFAULT_BUDGET)
        .compile_on(&ut.domain.body, &ut.domain.vars)
        .unwrap();
    let b = Alphabet::binary();
    let zero = LassoWord::parse("|0", &b).unwrap();
    let one = LassoWord::parse("|1", &b).unwrap();
    let odd = LassoWord::parse("|0 1", &b).unwrap();
    let at = |m: [[&LassoWord; 3]; 3]| {
        let elems: Vec<&LassoWord> = m.iter().flatten().copied().collect();
        dom.accepts(&ring.zip(&elems).unwrap()).unwrap()
    };
    assert!(at([[&one, &zero, &zero], [&zero, &one, &zero], [&zero, &zero, &one]]));
    assert!(at([[&one, &odd, &one], [&zero, &one, &odd], [&zero, &zero, &one]]));
    assert!(!at([[&one, &zero, &zero], [&odd, &one, &zero], [&zero, &zero, &one]]));
    assert!(!at([[&one, &zero, &zero], [&zero, &odd, &zero], [&zero, &zero, &one]]));
}

#[test]
fn matrix_ring_compiles_or_reports_capacity() {
    assert!(matrix_interpretation(1).is_err());
    assert!(unitriangular_interpretation(2).is_err());
    let b1 = build_b1_presentation().unwrap();
    let ring = apply_interpretation(&b1, &ring_interpretation(), DEFAULT_BUDGET).unwrap();
    match apply_interpretation(&ring, &matrix_interpretation(3).unwrap(), DEFAULT_BUDGET) {
        Ok(_) | Err(Error::Capacity { .. }) => {}
        Err(e) => panic!("unexpected error {e}"),
    }
}

#[test]
fn interpretation_files_round_trip() {
    let all = [
        ring_interpretation(),
        matrix_interpretation(2).unwrap(),
        unitriangular_interpretation(3).unwrap(),
        pairing_interpretation("p", "r"),
    ];
    for i in all {
        let text = write_interpretation(&i);
        assert_eq!(parse_interpretation(&text).unwrap(), i, "{text}");
    }
    let bad = "interpretation\ndimension: 1\ndomain: x | true\nequality: x y | x = \n";
    assert!(matches!(parse_interpretation(bad), Err(Error::Parse { line: 4, .. })));
    let short = "interpretation\ndimension: 2\ndomain: x | true\nequality: x y | x = y\n";
    assert!(parse_interpretation(short).is_err());
}
