use super::*;
use crate::alphabet::LetterMap;
use crate::random;

pub(crate) fn bin() -> Alphabet {
    Alphabet::binary()
}

pub(crate) fn lasso(alphabet: &Alphabet, s: &str) -> LassoWord {
    LassoWord::parse(s, alphabet).unwrap()
}

/// Finitely many positions carry a letter satisfying `bad`.
pub(crate) fn finitely_many(alphabet: &Alphabet, bad: impl Fn(Letter) -> bool) -> BuchiAutomaton {
    let mut t = Vec::new();
    for a in alphabet.letters() {
        t.push((0, a, 0));
        if !bad(a) {
            t.push((0, a, 1));
            t.push((1, a, 1));
        }
    }
    BuchiAutomaton::new(alphabet.clone(), 2, [0], [1], t).unwrap()
}

/// Infinitely many positions carry a letter satisfying `good` (deterministic).
pub(crate) fn infinitely_many(alphabet: &Alphabet, good: impl Fn(Letter) -> bool) -> BuchiAutomaton {
    let mut t = Vec::new();
    for q in 0..2 {
        for a in alphabet.letters() {
            t.push((q, a, usize::from(good(a))));
        }
    }
    BuchiAutomaton::new(alphabet.clone(), 2, [0], [1], t).unwrap()
}

pub(crate) fn fin_ones() -> BuchiAutomaton {
    finitely_many(&bin(), |a| a == Letter(1))
}

pub(crate) fn inf_ones() -> BuchiAutomaton {
    infinitely_many(&bin(), |a| a == Letter(1))
}

fn inf_zeros() -> BuchiAutomaton {
    infinitely_many(&bin(), |a| a == Letter(0))
}

/// `u ⊆* v`: almost everywhere `u(i) <= v(i)`.
fn almost_subset() -> BuchiAutomaton {
    let pair = Alphabet::binary_tracks(2).unwrap();
    let p = pair.clone();
    finitely_many(&pair, move |a| p.decode(a) == vec![1, 0])
}

#[test]
fn membership_examples() {
    let b = bin();
    assert!(fin_ones().accepts(&lasso(&b, "1|0")).unwrap());
    assert!(!fin_ones().accepts(&lasso(&b, "|1")).unwrap());
    let pair = Alphabet::binary_tracks(2).unwrap();
    assert!(almost_subset().accepts(&lasso(&pair, "(1,0)|(0,1)")).unwrap());
    assert!(!almost_subset().accepts(&lasso(&pair, "|(1,0) (0,1)")).unwrap());
}

#[test]
fn membership_rejects_foreign_letters() {
    let w = LassoWord::new(vec![], vec![Letter(7)]).unwrap();
    assert!(matches!(fin_ones().accepts(&w), Err(Error::AlphabetMismatch(_))));
}

#[test]
fn emptiness_examples() {
    let no_acc = BuchiAutomaton::new(bin(), 1, [0], [], [(0, Letter(0), 0)]).unwrap();
    assert!(no_acc.find_accepted().is_none());
    let w = fin_ones().find_accepted().unwrap();
    assert!(fin_ones().accepts(&w).unwrap());
    assert_eq!(w, lasso(&bin(), "|0"));
    let contradiction = fin_ones().product(&fin_ones().complement().unwrap()).unwrap();
    assert!(contradiction.is_empty());
    assert!(BuchiAutomaton::empty(bin()).is_empty());
}

#[test]
fn product_examples() {
    let b = bin();
    let both = fin_ones().product(&inf_zeros()).unwrap();
    assert!(both.accepts(&lasso(&b, "1|0")).unwrap());
    assert!(fin_ones().product(&inf_ones()).unwrap().is_empty());
    let mut rng = random::seeded(11);
    let a = random::buchi(&mut rng, &b, 4, 0.35);
    let aa = a.product(&a).unwrap();
    for _ in 0..50 {
        let w = random::lasso(&mut rng, &b, 5, 5);
        assert_eq!(aa.accepts(&w).unwrap(), a.accepts(&w).unwrap());
    }
}

#[test]
fn product_rejects_alphabet_mismatch() {
    let pair = Alphabet::binary_tracks(2).unwrap();
    assert!(fin_ones().product(&BuchiAutomaton::universal(pair.clone())).is_err());
    assert!(fin_ones().union(&BuchiAutomaton::universal(pair)).is_err());
}

#[test]
fn union_examples() {
    let b = bin();
    let mut rng = random::seeded(12);
    let u = fin_ones().union(&inf_ones()).unwrap();
    let e = fin_ones().union(&BuchiAutomaton::empty(b.clone())).unwrap();
    for _ in 0..50 {
        let w = random::lasso(&mut rng, &b, 6, 6);
        assert!(u.accepts(&w).unwrap());
        assert_eq!(e.accepts(&w).unwrap(), fin_ones().accepts(&w).unwrap());
    }
    for _ in 0..100 {
        let a = random::buchi(&mut rng, &b, 4, 0.3);
        let c = random::buchi(&mut rng, &b, 4, 0.3);
        let w = random::lasso(&mut rng, &b, 5, 5);
        assert_eq!(
            a.union(&c).unwrap().accepts(&w).unwrap(),
            a.accepts(&w).unwrap() || c.accepts(&w).unwrap()
        );
    }
}

#[test]
fn complement_examples() {
    let b = bin();
    let c = fin_ones().complement().unwrap();
    assert!(c.accepts(&lasso(&b, "|1")).unwrap());
    assert!(!c.accepts(&lasso(&b, "|0")).unwrap());
    assert!(BuchiAutomaton::universal(b.clone()).complement().unwrap().is_empty());
    let all = BuchiAutomaton::empty(b).complement().unwrap();
    assert!(all.accepts(&lasso(&bin(), "1 0|0 1")).unwrap());
}

#[test]
fn rank_based_route_agrees_with_membership() {
    let b = bin();
    let mut rng = random::seeded(13);
    for _ in 0..60 {
        let a = random::buchi(&mut rng, &b, 4, 0.3);
        let c = a.complement_rank_based(DEFAULT_BUDGET).unwrap();
        for _ in 0..20 {
            let w = random::lasso(&mut rng, &b, 5, 5);
            assert_ne!(a.accepts(&w).unwrap(), c.accepts(&w).unwrap());
        }
    }
}

#[test]
fn deterministic_route_agrees_with_membership() {
    let b = bin();
    let mut rng = random::seeded(14);
    let mut checked = 0;
    while checked < 40 {
        let a = random::buchi(&mut rng, &b, 5, 0.3);
        if !a.is_deterministic() {
            continue;
        }
        checked += 1;
        let c = a.complement_deterministic();
        for _ in 0..20 {
            let w = random::lasso(&mut rng, &b, 5, 5);
            assert_ne!(a.accepts(&w).unwrap(), c.accepts(&w).unwrap());
        }
    }
}

#[test]
fn complement_budget_is_a_capacity_error() {
    let b = bin();
    let mut rng = random::seeded(15);
    let a = loop {
        let a = random::buchi(&mut rng, &b, 5, 0.5);
        if !a.reduce().is_deterministic() && a.reduce().num_states() >= 3 {
            break a;
        }
    };
    assert!(matches!(
        a.complement_with_budget(2),
        Err(Error::Capacity { .. })
    ));
}

#[test]
fn double_complement_preserves_membership() {
    let b = bin();
    let mut rng = random::seeded(16);
    for _ in 0..20 {
        let a = random::buchi(&mut rng, &b, 3, 0.35);
        let cc = a.complement().unwrap().complement().unwrap();
        for _ in 0..20 {
            let w = random::lasso(&mut rng, &b, 4, 4);
            assert_eq!(a.accepts(&w).unwrap(), cc.accepts(&w).unwrap());
        }
    }
}

#[test]
fn projection_examples() {
    let b = bin();
    let pair = Alphabet::binary_tracks(2).unwrap();
    let p = almost_subset().project(1).unwrap();
    let mut rng = random::seeded(17);
    for _ in 0..50 {
        assert!(p.accepts(&random::lasso(&mut rng, &b, 6, 6)).unwrap());
    }
    assert!(BuchiAutomaton::empty(pair.clone()).project(0).unwrap().is_empty());
    assert!(matches!(almost_subset().project(2), Err(Error::BadTrack { .. })));
    // one-sided: any accepted completion implies membership of the projection
    let sub = almost_subset();
    let proj0 = sub.project(1).unwrap();
    for _ in 0..100 {
        let u = random::lasso(&mut rng, &b, 4, 4);
        let v = random::lasso(&mut rng, &b, 4, 4);
        let z = LassoWord::zip(&[&u, &v], &[&b, &b], &pair);
        if sub.accepts(&z).unwrap() {
            assert!(proj0.accepts(&u).unwrap());
        }
    }
}

#[test]
fn cylindrify_examples() {
    let b = bin();
    let pair = Alphabet::binary_tracks(2).unwrap();
    let mut rng = random::seeded(18);
    let a = random::buchi(&mut rng, &b, 4, 0.35);
    for pos in 0..2 {
        let c = a.cylindrify(pos, &b).unwrap();
        let back = c.project(pos).unwrap();
        for _ in 0..50 {
            let w = random::lasso(&mut rng, &b, 5, 5);
            let other = random::lasso(&mut rng, &b, 5, 5);
            let z = if pos == 0 {
                LassoWord::zip(&[&other, &w], &[&b, &b], &pair)
            } else {
                LassoWord::zip(&[&w, &other], &[&b, &b], &pair)
            };
            assert_eq!(c.accepts(&z).unwrap(), a.accepts(&w).unwrap());
            assert_eq!(back.accepts(&w).unwrap(), a.accepts(&w).unwrap());
        }
    }
    assert!(BuchiAutomaton::empty(b.clone()).cylindrify(0, &b).unwrap().is_empty());
    assert!(a.cylindrify(3, &b).is_err());
}

#[test]
fn relabel_examples() {
    let b = bin();
    let pair = Alphabet::binary_tracks(2).unwrap();
    let p = pair.clone();
    let xor = LetterMap::from_fn(pair.clone(), |l| {
        let c = p.decode(l);
        Letter((c[0] ^ c[1]) as u32)
    });
    let eq = fin_ones().relabel(&xor).unwrap();
    assert!(eq.accepts(&lasso(&pair, "(1,1)|(0,0)")).unwrap());

    let p2 = pair.clone();
    let diff = LetterMap::from_fn(pair.clone(), |l| {
        let c = p2.decode(l);
        Letter(u32::from(c[0] == 1 && c[1] == 0))
    });
    let sub = fin_ones().relabel(&diff).unwrap();
    let direct = almost_subset();
    let mut rng = random::seeded(19);
    for _ in 0..100 {
        let w = random::lasso(&mut rng, &pair, 5, 5);
        assert_eq!(sub.accepts(&w).unwrap(), direct.accepts(&w).unwrap());
    }
    let id = LetterMap::from_fn(b.clone(), |l| l);
    assert_eq!(fin_ones().relabel(&id).unwrap(), fin_ones());
    assert!(matches!(
        LetterMap::from_pairs(pair, [(Letter(0), Letter(0))]),
        Err(Error::PartialMap(_))
    ));
}

#[test]
fn operations_are_deterministic() {
    let a = fin_ones().complement().unwrap();
    let b = fin_ones().complement().unwrap();
    assert_eq!(a, b);
    assert_eq!(
        fin_ones().product(&inf_zeros()).unwrap(),
        fin_ones().product(&inf_zeros()).unwrap()
    );
}
