use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use omega_automatic::fo::{
    matrix_interpretation, parse_interpretation, ring_interpretation, unitriangular_interpretation,
};
use omega_automatic::format;
use omega_automatic::presentation::EQUALITY;
use omega_automatic::structures::{
    antichain_tree, build_antichain_automaton, build_b1_presentation, build_fin_automaton,
    build_fin_k_automaton, build_no_antichain_automaton, chain_tree,
};
use omega_automatic::{Alphabet, LassoWord};
use omega_cli::bundle::{self, Bundle, Manifest, MANIFEST};

fn omega(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_omega"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn build_b1_then_validate() {
    let dir = tempfile::tempdir().unwrap();
    let b1 = dir.path().join("b1");
    assert_eq!(omega(&["build", "B1", path(&b1)]).status.code(), Some(0));
    let o = omega(&["validate", path(&b1)]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.starts_with("status: ok\n"));
    for check in ["reflexivity", "symmetry", "transitivity"] {
        assert!(text.contains(&format!("check name={check} mode=exact status=pass")), "{text}");
    }
}

#[test]
fn decide_idempotence_over_b1() {
    let dir = tempfile::tempdir().unwrap();
    let b1 = dir.path().join("b1");
    omega(&["build", "B1", path(&b1)]);
    let o = omega(&["decide", path(&b1), "forall x. eq(cap(x,x),x)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict holds=true"));
    let file = dir.path().join("atom.fo");
    fs::write(&file, "exists x. !(x = zero) & forall z. (subset(z,x) -> z = zero | z = x)\n").unwrap();
    let o = omega(&["decide", path(&b1), path(&file)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict holds=false"));
}

#[test]
fn decide_through_an_interpretation_file() {
    let dir = tempfile::tempdir().unwrap();
    let b1 = dir.path().join("b1");
    let ring = dir.path().join("ring.interp");
    omega(&["build", "B1", path(&b1)]);
    omega(&["build", "ring", path(&ring)]);
    let o = omega(&["decide", path(&b1), "--interpret", path(&ring), "forall x. add(x,x) = zero"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("verdict holds=true"));
}

#[test]
fn antichain_suite_passes() {
    let o = omega(&["difftest", "antichain", "--seed", "7", "--count", "500"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("suite name=antichain seed=7 cases=500 failed=0 status=pass"));
}

#[test]
fn identical_invocations_give_identical_reports() {
    let dir = tempfile::tempdir().unwrap();
    let b2 = dir.path().join("b2");
    omega(&["build", "B2", path(&b2)]);
    for args in [
        vec!["--seed", "11", "validate", path(&b2)],
        vec!["--seed", "11", "--format", "structured", "validate", path(&b2)],
        vec!["--seed", "3", "difftest", "all", "--count", "20"],
    ] {
        let a = omega(&args);
        let b = omega(&args);
        assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn b2_validation_is_exact_then_sampled() {
    let dir = tempfile::tempdir().unwrap();
    let b2 = dir.path().join("b2");
    omega(&["build", "B2", path(&b2)]);
    let o = omega(&["--format", "structured", "validate", path(&b2)]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "ok");
    let checks = v["records"].as_array().unwrap();
    let mode = |name: &str| checks.iter().find(|c| c["name"] == name).unwrap()["mode"].clone();
    assert_eq!(mode("reflexivity"), "exact");
    assert_eq!(mode("symmetry"), "exact");
    assert_eq!(mode("transitivity"), "sampled");
}

#[test]
fn broken_equality_fails_with_witness_files() {
    let dir = tempfile::tempdir().unwrap();
    let b1 = dir.path().join("b1");
    omega(&["build", "B1", path(&b1)]);
    // almost inclusion as the equality, with no registered complements
    fs::copy(b1.join("subset.buchi"), b1.join("eq.buchi")).unwrap();
    let mut m: Manifest = toml::from_str(&fs::read_to_string(b1.join(MANIFEST)).unwrap()).unwrap();
    m.complements.clear();
    fs::write(b1.join(MANIFEST), toml::to_string(&m).unwrap()).unwrap();

    let o = omega(&["validate", path(&b1)]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("reason:"));
    let line = text.lines().find(|l| l.contains("name=symmetry")).unwrap();
    assert!(line.contains("mode=exact status=fail"), "{line}");
    let b = Alphabet::binary();
    let read = |i: usize| {
        let f = b1.join(format!("symmetry.{i}.lasso"));
        LassoWord::parse(fs::read_to_string(f).unwrap().trim(), &b).unwrap()
    };
    let (x, y) = (read(0), read(1));
    let Bundle::Word(p) = bundle::load(&b1).unwrap() else {
        panic!("word bundle")
    };
    assert!(p.holds(EQUALITY, &[&x, &y]).unwrap());
    assert!(!p.holds(EQUALITY, &[&y, &x]).unwrap());
}

#[test]
fn member_and_empty() {
    let dir = tempfile::tempdir().unwrap();
    let fin = dir.path().join("fin.buchi");
    omega(&["build", "fin", path(&fin)]);
    let w = dir.path().join("w.lasso");
    fs::write(&w, "1 1|0\n").unwrap();
    assert!(stdout(&omega(&["member", path(&fin), path(&w)])).contains("accepted=true"));
    fs::write(&w, "|1\n").unwrap();
    assert!(stdout(&omega(&["member", path(&fin), path(&w)])).contains("accepted=false"));

    let o = omega(&["empty", path(&fin)]);
    assert!(stdout(&o).contains("empty=false"));
    let witness = fs::read_to_string(dir.path().join("fin.buchi.witness")).unwrap();
    let x = LassoWord::parse(witness.trim(), &Alphabet::binary()).unwrap();
    assert!(build_fin_automaton().accepts(&x).unwrap());

    let t = dir.path().join("t.muller");
    let ti = dir.path().join("ti.muller");
    let chain = dir.path().join("chain.rtree");
    let anti = dir.path().join("anti.rtree");
    omega(&["build", "T", path(&t)]);
    omega(&["build", "T_I", path(&ti)]);
    omega(&["build", "chain", path(&chain), "--n", "3"]);
    omega(&["build", "antichain", path(&anti)]);
    assert!(stdout(&omega(&["member", path(&ti), path(&chain)])).contains("accepted=true"));
    assert!(stdout(&omega(&["member", path(&t), path(&anti)])).contains("accepted=true"));
    assert!(stdout(&omega(&["member", path(&t), path(&chain)])).contains("accepted=false"));
    let w = dir.path().join("t.rtree");
    let o = omega(&["empty", path(&t), "--witness", path(&w)]);
    assert!(stdout(&o).contains("empty=false"));
    let tree = format::parse_rtree(&fs::read_to_string(&w).unwrap(), &Alphabet::binary()).unwrap();
    assert!(build_antichain_automaton().accepts(&tree).unwrap());
}

#[test]
fn bad_input_exits_with_two_and_a_line_number() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.buchi");
    fs::write(&bad, "buchi\nalphabet: 0,1\nstates: 1\ninitial: 0\naccepting: 0\ntrans: 0 x 0\n").unwrap();
    let o = omega(&["empty", path(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("line 6"), "{}", stdout(&o));
    let o = omega(&["build", "chain", path(&dir.path().join("c.rtree"))]);
    assert_eq!(o.status.code(), Some(2));
    let o = omega(&["difftest", "nothing"]);
    assert_eq!(o.status.code(), Some(2));
    let o = omega(&["decide", path(dir.path()), "forall x. x = x"]);
    assert_eq!(o.status.code(), Some(2));
    let o = omega(&["--format", "structured", "decide", path(dir.path()), "forall x. x ="]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "error");
    assert!(v["reason"].as_str().unwrap().contains("parse error"));
}

#[test]
fn builder_outputs_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = |name: &str| dir.path().join(name);
    let read = |name: &str| fs::read_to_string(out(name)).unwrap();
    let build = |args: &[&str]| assert_eq!(omega(args).status.code(), Some(0), "{args:?}");
    let b = Alphabet::binary();

    build(&["build", "fin", path(&out("fin"))]);
    assert_eq!(format::parse_buchi(&read("fin")).unwrap(), build_fin_automaton());
    for k in 0..=5 {
        let name = format!("fin{k}");
        build(&["build", "fin_k", path(&out(&name)), "--n", &k.to_string()]);
        assert_eq!(format::parse_buchi(&read(&name)).unwrap(), build_fin_k_automaton(k));
    }
    build(&["build", "T", path(&out("T"))]);
    assert_eq!(format::parse_muller(&read("T")).unwrap(), build_antichain_automaton());
    build(&["build", "T_I", path(&out("TI"))]);
    assert_eq!(format::parse_muller(&read("TI")).unwrap(), build_no_antichain_automaton());
    for n in 0..=5 {
        let name = format!("chain{n}");
        build(&["build", "chain", path(&out(&name)), "--n", &n.to_string()]);
        let t = format::parse_rtree(&read(&name), &b).unwrap();
        assert_eq!(t.canonical(), chain_tree(n).canonical());
    }
    build(&["build", "antichain", path(&out("anti"))]);
    assert_eq!(format::parse_rtree(&read("anti"), &b).unwrap().canonical(), antichain_tree().canonical());
    build(&["build", "ring", path(&out("ring"))]);
    assert_eq!(parse_interpretation(&read("ring")).unwrap(), ring_interpretation());
    build(&["build", "matrix", path(&out("m2")), "--n", "2"]);
    assert_eq!(parse_interpretation(&read("m2")).unwrap(), matrix_interpretation(2).unwrap());
    build(&["build", "ut", path(&out("ut3")), "--n", "3"]);
    assert_eq!(parse_interpretation(&read("ut3")).unwrap(), unitriangular_interpretation(3).unwrap());

    build(&["build", "B1", path(&out("b1"))]);
    let Bundle::Word(p) = bundle::load(&out("b1")).unwrap() else {
        panic!("word bundle")
    };
    let q = build_b1_presentation().unwrap();
    assert_eq!(p.domain(), q.domain());
    assert_eq!(p.equality(), q.equality());
    for (a, b) in p.relations().iter().zip(q.relations()) {
        assert_eq!((&a.name, a.arity, &a.automaton), (&b.name, b.arity, &b.automaton));
    }
    assert_eq!(p.complements(), q.complements());

    build(&["build", "manifest", path(&out("builders.toml"))]);
    let listing: toml::Value = toml::from_str(&read("builders.toml")).unwrap();
    assert_eq!(listing["builder"].as_array().unwrap().len(), 12);
}
