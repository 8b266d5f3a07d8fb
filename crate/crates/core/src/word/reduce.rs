//! Language-preserving size reductions.

use super::{BuchiAutomaton, State};
use crate::alphabet::Letter;
use crate::graph;

/// Simulation quotients are skipped above this many states.
const SIMULATION_LIMIT: usize = 3000;

impl BuchiAutomaton {
    /// Keeps only states that are reachable and from which an accepting cycle
    /// is reachable; renumbers in breadth-first order from the initial states.
    pub fn trim(&self) -> BuchiAutomaton {
        let adj = self.adjacency();
        let reach = graph::reachable(&adj, self.initial.iter().copied());
        let (comp, ncomp) = graph::scc_ids(&adj);
        let cyclic = graph::on_cycle(&adj, &comp, ncomp);
        let good: Vec<bool> = (0..self.num_states())
            .map(|q| self.accepting[q] && cyclic[q])
            .collect();
        let useful = graph::coreachable(&adj, &good);
        let keep: Vec<bool> = (0..self.num_states()).map(|q| reach[q] && useful[q]).collect();
        self.restrict_to(&keep)
    }

    fn restrict_to(&self, keep: &[bool]) -> BuchiAutomaton {
        const NONE: usize = usize::MAX;
        let mut new_id = vec![NONE; self.num_states()];
        let mut order = Vec::new();
        for &q in &self.initial {
            if keep[q] && new_id[q] == NONE {
                new_id[q] = order.len();
                order.push(q);
            }
        }
        let mut head = 0;
        while head < order.len() {
            let p = order[head];
            head += 1;
            for &(_, q) in &self.trans[p] {
                if keep[q] && new_id[q] == NONE {
                    new_id[q] = order.len();
                    order.push(q);
                }
            }
        }
        let trans = order
            .iter()
            .map(|&p| {
                self.trans[p]
                    .iter()
                    .filter(|&&(_, q)| new_id[q] != NONE)
                    .map(|&(a, q)| (a, new_id[q]))
                    .collect()
            })
            .collect();
        let accepting = order.iter().map(|&q| self.accepting[q]).collect();
        let mut initial: Vec<State> = self
            .initial
            .iter()
            .filter(|&&q| new_id[q] != NONE)
            .map(|&q| new_id[q])
            .collect();
        initial.sort_unstable();
        initial.dedup();
        BuchiAutomaton::from_parts(self.alphabet.clone(), initial, accepting, trans)
    }

    /// Every strongly connected component is entirely accepting or entirely
    /// rejecting.
    pub fn is_weak(&self) -> bool {
        let adj = self.adjacency();
        let (comp, ncomp) = graph::scc_ids(&adj);
        let mut kind: Vec<Option<bool>> = vec![None; ncomp];
        let cyclic = graph::on_cycle(&adj, &comp, ncomp);
        for q in 0..self.num_states() {
            if !cyclic[q] {
                continue;
            }
            match kind[comp[q]] {
                None => kind[comp[q]] = Some(self.accepting[q]),
                Some(k) if k != self.accepting[q] => return false,
                _ => {}
            }
        }
        true
    }

    /// Direct simulation preorder: `sim[q][p]` iff `p` simulates `q`.
    fn direct_simulation(&self) -> Vec<Vec<bool>> {
        let n = self.num_states();
        let mut sim: Vec<Vec<bool>> = (0..n)
            .map(|q| (0..n).map(|p| !self.accepting[q] || self.accepting[p]).collect())
            .collect();
        let mut changed = true;
        while changed {
            changed = false;
            for q in 0..n {
                for p in 0..n {
                    if q == p || !sim[q][p] {
                        continue;
                    }
                    let ok = self.trans[q].iter().all(|&(a, q2)| {
                        self.successors(p, a).any(|p2| sim[q2][p2])
                    });
                    if !ok {
                        sim[q][p] = false;
                        changed = true;
                    }
                }
            }
        }
        sim
    }

    /// Merges simulation-equivalent states and drops transitions to strictly
    /// simulated siblings. Both preserve the language under direct simulation.
    pub fn reduce(&self) -> BuchiAutomaton {
        let a = self.trim();
        let n = a.num_states();
        if n <= 1 || n > SIMULATION_LIMIT {
            return a;
        }
        let sim = a.direct_simulation();
        let mut class = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for q in 0..n {
            if class[q] != usize::MAX {
                continue;
            }
            class[q] = reps.len();
            for p in q + 1..n {
                if class[p] == usize::MAX && sim[q][p] && sim[p][q] {
                    class[p] = reps.len();
                }
            }
            reps.push(q);
        }
        let strictly_below = |x: State, y: State| sim[x][y] && !sim[y][x];
        let trans: Vec<Vec<(Letter, State)>> = reps
            .iter()
            .map(|&r| {
                let ts = &a.trans[r];
                ts.iter()
                    .filter(|&&(l, q)| {
                        !ts.iter()
                            .any(|&(l2, q2)| l2 == l && strictly_below(q, q2))
                    })
                    .map(|&(l, q)| (l, class[q]))
                    .collect()
            })
            .collect();
        let accepting = reps.iter().map(|&r| a.accepting[r]).collect();
        let mut initial: Vec<State> = a.initial.iter().map(|&q| class[q]).collect();
        initial.sort_unstable();
        initial.dedup();
        // drop initial states simulated by another initial state
        let init_reps: Vec<State> = initial.clone();
        initial.retain(|&c| {
            !init_reps
                .iter()
                .any(|&d| d != c && strictly_below(reps[c], reps[d]))
        });
        BuchiAutomaton::from_parts(a.alphabet.clone(), initial, accepting, trans).trim()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;

    #[test]
    fn trim_drops_useless_states() {
        // 0 -a-> 1 (accepting, loop), 0 -b-> 2 (dead end), 3 unreachable
        let a = Alphabet::binary();
        let aut = BuchiAutomaton::new(
            a,
            4,
            [0],
            [1, 3],
            [(0, Letter(0), 1), (1, Letter(0), 1), (0, Letter(1), 2), (3, Letter(1), 3)],
        )
        .unwrap();
        let t = aut.trim();
        assert_eq!(t.num_states(), 2);
        assert_eq!(t.num_transitions(), 2);
    }

    #[test]
    fn weakness_detection() {
        let a = Alphabet::binary();
        // finitely many 1s: 0 loops on all, 0 -0-> 1, 1 -0-> 1 accepting
        let fin = BuchiAutomaton::new(
            a.clone(),
            2,
            [0],
            [1],
            [(0, Letter(0), 0), (0, Letter(1), 0), (0, Letter(0), 1), (1, Letter(0), 1)],
        )
        .unwrap();
        assert!(fin.is_weak());
        // infinitely many 1s (deterministic, mixed component)
        let inf = BuchiAutomaton::new(
            a,
            2,
            [0],
            [1],
            [(0, Letter(0), 0), (0, Letter(1), 1), (1, Letter(0), 0), (1, Letter(1), 1)],
        )
        .unwrap();
        assert!(!inf.is_weak());
    }

    #[test]
    fn quotient_merges_duplicate_states() {
        let a = Alphabet::binary();
        // two identical accepting loops reachable on different letters
        let aut = BuchiAutomaton::new(
            a,
            3,
            [0],
            [1, 2],
            [
                (0, Letter(0), 1),
                (0, Letter(1), 2),
                (1, Letter(0), 1),
                (1, Letter(1), 1),
                (2, Letter(0), 2),
                (2, Letter(1), 2),
            ],
        )
        .unwrap();
        let r = aut.reduce();
        assert_eq!(r.num_states(), 2);
    }
}
