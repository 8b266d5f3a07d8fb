//! Seeded generators for differential testing.
//!
//! All generators draw from a caller-supplied RNG; the suites use
//! `ChaCha8Rng::seed_from_u64(seed)` so every run is reproducible.

use rand::Rng;

use crate::alphabet::{Alphabet, Letter};
use crate::game::{ParityGame, Player};
use crate::tree::{Designated, MullerTreeAutomaton, RegularTree};
use crate::word::{BuchiAutomaton, LassoWord};

pub use rand_chacha::ChaCha8Rng as SuiteRng;

pub fn seeded(seed: u64) -> SuiteRng {
    use rand::SeedableRng;
    SuiteRng::seed_from_u64(seed)
}

pub fn letter<R: Rng>(rng: &mut R, alphabet: &Alphabet) -> Letter {
    Letter(rng.gen_range(0..alphabet.size() as u32))
}

/// Random Büchi automaton with `1..=max_states` states; each possible
/// transition is present with probability `density`.
pub fn buchi<R: Rng>(rng: &mut R, alphabet: &Alphabet, max_states: usize, density: f64) -> BuchiAutomaton {
    let n = rng.gen_range(1..=max_states);
    let mut trans = Vec::new();
    for p in 0..n {
        for a in alphabet.letters() {
            for q in 0..n {
                if rng.gen_bool(density) {
                    trans.push((p, a, q));
                }
            }
        }
    }
    let initial: Vec<usize> = (0..n).filter(|&q| q == 0 || rng.gen_bool(0.15)).collect();
    let accepting: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
    BuchiAutomaton::new(alphabet.clone(), n, initial, accepting, trans).expect("well-formed")
}

pub fn lasso<R: Rng>(rng: &mut R, alphabet: &Alphabet, max_stem: usize, max_loop: usize) -> LassoWord {
    let stem_len = rng.gen_range(0..=max_stem);
    let loop_len = rng.gen_range(1..=max_loop.max(1));
    let stem = (0..stem_len).map(|_| letter(rng, alphabet)).collect();
    let cycle = (0..loop_len).map(|_| letter(rng, alphabet)).collect();
    LassoWord::new(stem, cycle).expect("non-empty loop")
}

/// Random parity game with `1..=max_vertices` vertices and priorities in
/// `0..max_priority`; every vertex has between one and three successors.
pub fn parity_game<R: Rng>(rng: &mut R, max_vertices: usize, max_priority: u32) -> ParityGame {
    let n = rng.gen_range(1..=max_vertices);
    let owner = (0..n)
        .map(|_| if rng.gen_bool(0.5) { Player::Even } else { Player::Odd })
        .collect();
    let priority = (0..n).map(|_| rng.gen_range(0..max_priority.max(1))).collect();
    let edges = (0..n)
        .map(|_| {
            let k = rng.gen_range(1..=3.min(n));
            (0..k).map(|_| rng.gen_range(0..n)).collect()
        })
        .collect();
    ParityGame::new(owner, priority, edges, 0).expect("well-formed")
}

/// Random Muller tree automaton with `1..=max_states` states; each tree
/// transition is present with probability `density` and each non-empty
/// state set is designated with probability one third.
pub fn muller<R: Rng>(rng: &mut R, alphabet: &Alphabet, max_states: usize, density: f64) -> MullerTreeAutomaton {
    let n = rng.gen_range(1..=max_states);
    let mut trans = Vec::new();
    for p in 0..n {
        for a in alphabet.letters() {
            for l in 0..n {
                for r in 0..n {
                    if rng.gen_bool(density) {
                        trans.push((p, a, l, r));
                    }
                }
            }
        }
    }
    let sets = (1u32..1 << n)
        .filter(|_| rng.gen_bool(1.0 / 3.0))
        .map(|mask| (0..n).filter(|&q| mask >> q & 1 == 1).collect())
        .collect();
    MullerTreeAutomaton::new(alphabet.clone(), n, 0, trans, Designated::Sets(sets)).expect("well-formed")
}

/// Uniformly random graph with `1..=max_nodes` nodes, i.i.d. labels and
/// root 0.
pub fn regular_tree<R: Rng>(rng: &mut R, alphabet: &Alphabet, max_nodes: usize) -> RegularTree {
    let n = rng.gen_range(1..=max_nodes.max(1));
    let nodes = (0..n)
        .map(|_| (letter(rng, alphabet), rng.gen_range(0..n), rng.gen_range(0..n)))
        .collect();
    RegularTree::new(nodes, 0).expect("well-formed")
}
