use super::*;
use crate::alphabet::LetterMap;
use crate::oracle::muller_membership;
use crate::random;
use crate::word::tests::fin_ones;
use crate::word::BuchiAutomaton;

fn bin() -> Alphabet {
    Alphabet::binary()
}

fn single_loop(designated: Vec<Vec<State>>) -> MullerTreeAutomaton {
    let b = bin();
    let t: Vec<_> = b.letters().map(|a| (0, a, 0, 0)).collect();
    MullerTreeAutomaton::new(b, 1, 0, t, Designated::Sets(designated)).unwrap()
}

#[test]
fn single_state_conversion_agrees_with_muller_game() {
    let a = single_loop(vec![vec![0]]);
    let p = a.to_parity().unwrap();
    assert_eq!(p.num_states(), 1);
    let mut rng = random::seeded(31);
    for _ in 0..50 {
        let t = random::regular_tree(&mut rng, &bin(), 4);
        assert_eq!(p.accepts(&t).unwrap(), muller_membership(&a, &t));
        assert!(p.accepts(&t).unwrap());
    }
}

#[test]
fn empty_designation_is_empty() {
    let a = single_loop(vec![]);
    assert!(a.to_parity().unwrap().find_accepted().unwrap().is_none());
    assert!(a.is_empty().unwrap());
    assert!(MullerTreeAutomaton::empty(bin()).is_empty().unwrap());
}

#[test]
fn conversion_agrees_with_muller_game_on_random_automata() {
    let b = bin();
    let mut rng = random::seeded(32);
    for _ in 0..150 {
        let a = random::muller(&mut rng, &b, 3, 0.25);
        let p = a.to_parity().unwrap();
        for _ in 0..10 {
            let t = random::regular_tree(&mut rng, &b, 4);
            assert_eq!(p.accepts(&t).unwrap(), muller_membership(&a, &t));
        }
    }
}

#[test]
fn universal_accepts_everything() {
    let u = MullerTreeAutomaton::universal(bin());
    let mut rng = random::seeded(33);
    for _ in 0..50 {
        assert!(u.accepts(&random::regular_tree(&mut rng, &bin(), 5)).unwrap());
    }
}

#[test]
fn membership_rejects_foreign_labels() {
    let t = RegularTree::constant(Letter(5));
    assert!(matches!(
        MullerTreeAutomaton::universal(bin()).accepts(&t),
        Err(Error::AlphabetMismatch(_))
    ));
}

#[test]
fn product_is_conjunction() {
    let b = bin();
    let mut rng = random::seeded(34);
    for _ in 0..200 {
        let x = random::muller(&mut rng, &b, 3, 0.3);
        let y = random::muller(&mut rng, &b, 3, 0.3);
        let t = random::regular_tree(&mut rng, &b, 4);
        let xy = x.product(&y).unwrap();
        assert_eq!(
            xy.accepts(&t).unwrap(),
            muller_membership(&x, &t) && muller_membership(&y, &t)
        );
    }
}

#[test]
fn union_is_disjunction() {
    let b = bin();
    let mut rng = random::seeded(35);
    for _ in 0..100 {
        let x = random::muller(&mut rng, &b, 3, 0.3);
        let y = random::muller(&mut rng, &b, 3, 0.3);
        let t = random::regular_tree(&mut rng, &b, 4);
        let expected = muller_membership(&x, &t) || muller_membership(&y, &t);
        assert_eq!(x.union(&y).unwrap().accepts(&t).unwrap(), expected);
        // mixed designation kinds go through the parity forms
        let yp = y.to_parity().unwrap().to_muller();
        assert_eq!(x.union(&yp).unwrap().accepts(&t).unwrap(), expected);
    }
}

#[test]
fn neutral_elements() {
    let b = bin();
    let mut rng = random::seeded(36);
    let empty = MullerTreeAutomaton::empty(b.clone());
    let univ = MullerTreeAutomaton::universal(b.clone());
    for _ in 0..40 {
        let a = random::muller(&mut rng, &b, 3, 0.3);
        let ae = a.union(&empty).unwrap();
        let au = a.product(&univ).unwrap();
        for _ in 0..5 {
            let t = random::regular_tree(&mut rng, &b, 4);
            let m = muller_membership(&a, &t);
            assert_eq!(ae.accepts(&t).unwrap(), m);
            assert_eq!(au.accepts(&t).unwrap(), m);
        }
    }
}

#[test]
fn emptiness_witnesses_and_verdicts() {
    let b = bin();
    let mut rng = random::seeded(37);
    let mut nonempty = 0;
    for _ in 0..120 {
        let a = random::muller(&mut rng, &b, 3, 0.3);
        match a.find_accepted().unwrap() {
            Some(t) => {
                nonempty += 1;
                assert!(muller_membership(&a, &t));
            }
            None => {
                for _ in 0..100 {
                    let t = random::regular_tree(&mut rng, &b, 4);
                    assert!(!muller_membership(&a, &t));
                }
            }
        }
    }
    assert!(nonempty > 10);
}

#[test]
fn lift_examples() {
    let lifted = MullerTreeAutomaton::lift_leftmost(&fin_ones());
    assert!(lifted.accepts(&RegularTree::constant(Letter(0))).unwrap());
    assert!(!lifted.accepts(&RegularTree::constant(Letter(1))).unwrap());
}

#[test]
fn lift_agrees_with_word_membership_on_leftmost_branch() {
    let b = bin();
    let mut rng = random::seeded(38);
    for _ in 0..100 {
        let w = random::buchi(&mut rng, &b, 4, 0.35);
        let t = random::regular_tree(&mut rng, &b, 5);
        let lifted = MullerTreeAutomaton::lift_leftmost(&w);
        assert_eq!(
            lifted.accepts(&t).unwrap(),
            w.accepts(&t.leftmost_lasso()).unwrap()
        );
    }
    let none = MullerTreeAutomaton::lift_leftmost(&BuchiAutomaton::empty(b));
    assert!(none.is_empty().unwrap());
}

#[test]
fn projection_cylindrification_relabel() {
    let b = bin();
    let pair = Alphabet::binary_tracks(2).unwrap();
    let mut rng = random::seeded(39);
    for _ in 0..40 {
        let a = random::muller(&mut rng, &b, 3, 0.3);
        for pos in 0..2 {
            let c = a.cylindrify(pos, &b).unwrap();
            let back = c.project(pos).unwrap();
            let t = random::regular_tree(&mut rng, &b, 4);
            let other = random::regular_tree(&mut rng, &b, 4);
            let z = if pos == 0 {
                RegularTree::zip(&[&other, &t], &[&b, &b], &pair)
            } else {
                RegularTree::zip(&[&t, &other], &[&b, &b], &pair)
            };
            let m = muller_membership(&a, &t);
            assert_eq!(c.accepts(&z).unwrap(), m);
            assert_eq!(back.accepts(&t).unwrap(), m);
        }
        // relabel by negation equals membership of the negated tree
        let neg = LetterMap::from_fn(b.clone(), |l| Letter(1 - l.0));
        let r = a.relabel(&neg).unwrap();
        let t = random::regular_tree(&mut rng, &b, 4);
        assert_eq!(
            r.accepts(&t).unwrap(),
            muller_membership(&a, &t.map_labels(|l| Letter(1 - l.0)))
        );
    }
    assert!(matches!(
        MullerTreeAutomaton::universal(b).project(1),
        Err(Error::BadTrack { .. })
    ));
}

#[test]
fn operations_are_deterministic() {
    let b = bin();
    let mut rng = random::seeded(40);
    let x = random::muller(&mut rng, &b, 3, 0.3);
    let y = random::muller(&mut rng, &b, 3, 0.3);
    assert_eq!(x.product(&y).unwrap(), x.product(&y).unwrap());
    assert_eq!(x.to_parity().unwrap(), x.to_parity().unwrap());
}
