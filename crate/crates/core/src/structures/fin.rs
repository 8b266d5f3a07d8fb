//! Automata for the ideal Fin of finite subsets of ℕ and its layers Finₖ.

use crate::alphabet::{Alphabet, Letter};
use crate::word::BuchiAutomaton;

/// ω-words over {0,1} with finitely many 1s.
pub fn build_fin_automaton() -> BuchiAutomaton {
    BuchiAutomaton::new(
        Alphabet::binary(),
        2,
        [0],
        [1],
        [
            (0, Letter(0), 0),
            (0, Letter(1), 0),
            (0, Letter(0), 1),
            (1, Letter(0), 1),
        ],
    )
    .expect("well-formed")
}

/// ω-words over {0,1} with at most `k` letters 1 (deterministic; state `i`
/// has read `i` ones).
pub fn build_fin_k_automaton(k: usize) -> BuchiAutomaton {
    let mut t = Vec::new();
    for i in 0..=k {
        t.push((i, Letter(0), i));
        if i < k {
            t.push((i, Letter(1), i + 1));
        }
    }
    BuchiAutomaton::new(Alphabet::binary(), k + 1, [0], 0..=k, t).expect("well-formed")
}

/// Whether `L(a) ⊆ L(b)`, decided as emptiness of `a ∩ ¬b`.
pub fn included(a: &BuchiAutomaton, b: &BuchiAutomaton) -> crate::error::Result<bool> {
    Ok(a.product(&b.complement()?)?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::LassoWord;

    #[test]
    fn examples() {
        let b = Alphabet::binary();
        let w = LassoWord::parse("1 1 1|0", &b).unwrap();
        assert!(build_fin_automaton().accepts(&w).unwrap());
        assert!(!build_fin_k_automaton(2).accepts(&w).unwrap());
        assert!(build_fin_k_automaton(3).accepts(&w).unwrap());
    }

    #[test]
    fn layers_are_nested() {
        let fin = build_fin_automaton();
        for k in 0..=5 {
            let a = build_fin_k_automaton(k);
            let b = build_fin_k_automaton(k + 1);
            assert!(included(&a, &b).unwrap());
            assert!(!included(&b, &a).unwrap());
            assert!(included(&b, &fin).unwrap());
        }
        assert!(!included(&fin, &build_fin_k_automaton(5)).unwrap());
    }
}
