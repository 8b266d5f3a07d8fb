//! Parity games and Zielonka's recursive algorithm.
//!
//! Convention: max-parity. A play is won by [`Player::Even`] iff the largest
//! priority seen infinitely often is even.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Player {
    Even,
    Odd,
}

impl Player {
    pub fn of_priority(p: u32) -> Player {
        if p.is_multiple_of(2) {
            Player::Even
        } else {
            Player::Odd
        }
    }

    pub fn opponent(self) -> Player {
        match self {
            Player::Even => Player::Odd,
            Player::Odd => Player::Even,
        }
    }

    fn index(self) -> usize {
        match self {
            Player::Even => 0,
            Player::Odd => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityGame {
    owner: Vec<Player>,
    priority: Vec<u32>,
    edges: Vec<Vec<usize>>,
    start: usize,
}

impl ParityGame {
    /// Every vertex needs at least one successor.
    pub fn new(
        owner: Vec<Player>,
        priority: Vec<u32>,
        mut edges: Vec<Vec<usize>>,
        start: usize,
    ) -> Result<Self> {
        let n = owner.len();
        if priority.len() != n || edges.len() != n {
            return Err(Error::Malformed("parity game vectors differ in length".into()));
        }
        if n > 0 && start >= n {
            return Err(Error::Malformed(format!("start vertex {start} out of range")));
        }
        for (v, succ) in edges.iter_mut().enumerate() {
            succ.sort_unstable();
            succ.dedup();
            if succ.is_empty() {
                return Err(Error::Malformed(format!("vertex {v} has no successor")));
            }
            if let Some(&w) = succ.iter().find(|&&w| w >= n) {
                return Err(Error::Malformed(format!("edge {v} -> {w} out of range")));
            }
        }
        Ok(ParityGame {
            owner,
            priority,
            edges,
            start,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.owner.len()
    }

    pub fn owner(&self, v: usize) -> Player {
        self.owner[v]
    }

    pub fn priority(&self, v: usize) -> u32 {
        self.priority[v]
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.edges[v]
    }

    pub fn start(&self) -> usize {
        self.start
    }

    fn predecessors(&self) -> Vec<Vec<usize>> {
        let mut pred = vec![Vec::new(); self.num_vertices()];
        for (v, succ) in self.edges.iter().enumerate() {
            for &w in succ {
                pred[w].push(v);
            }
        }
        pred
    }

    pub fn solve(&self) -> Solution {
        let mut solver = Zielonka {
            game: self,
            pred: self.predecessors(),
            strategy: vec![None; self.num_vertices()],
        };
        let all = vec![true; self.num_vertices()];
        let regions = solver.solve(&all);
        let mut winner = vec![Player::Even; self.num_vertices()];
        for (v, w) in winner.iter_mut().enumerate() {
            if regions[1][v] {
                *w = Player::Odd;
            }
        }
        Solution {
            winner,
            strategy: solver.strategy,
        }
    }
}

/// Winning regions and positional winning strategies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    winner: Vec<Player>,
    /// For each vertex won by its owner, the chosen successor.
    strategy: Vec<Option<usize>>,
}

impl Solution {
    pub fn winner(&self, v: usize) -> Player {
        self.winner[v]
    }

    pub fn region(&self, p: Player) -> Vec<usize> {
        (0..self.winner.len()).filter(|&v| self.winner[v] == p).collect()
    }

    pub fn strategy(&self, v: usize) -> Option<usize> {
        self.strategy[v]
    }

    /// Checks that each player's strategy keeps plays from its region inside
    /// the region and that every cycle the opponent can then close has the
    /// player's parity.
    pub fn verify(&self, game: &ParityGame) -> Result<()> {
        for player in [Player::Even, Player::Odd] {
            let region: Vec<bool> = self.winner.iter().map(|&w| w == player).collect();
            let mut adj = vec![Vec::new(); game.num_vertices()];
            for v in (0..game.num_vertices()).filter(|&v| region[v]) {
                if game.owner(v) == player {
                    let s = self.strategy[v].ok_or_else(|| {
                        Error::Invariant(format!("no strategy at vertex {v} for {player:?}"))
                    })?;
                    if !game.successors(v).contains(&s) || !region[s] {
                        return Err(Error::Invariant(format!(
                            "strategy at {v} leaves the winning region"
                        )));
                    }
                    adj[v].push(s);
                } else {
                    for &w in game.successors(v) {
                        if !region[w] {
                            return Err(Error::Invariant(format!(
                                "opponent escapes the region of {player:?} at {v}"
                            )));
                        }
                        adj[v].push(w);
                    }
                }
            }
            if let Some(v) = losing_cycle(game, &adj, &region, player) {
                return Err(Error::Invariant(format!(
                    "{player:?} strategy admits a losing cycle through {v}"
                )));
            }
        }
        Ok(())
    }
}

/// A vertex of `mask` on a cycle (within `adj`) whose maximal priority has
/// the parity of `player`'s opponent.
pub(crate) fn losing_cycle(
    game: &ParityGame,
    adj: &[Vec<usize>],
    mask: &[bool],
    player: Player,
) -> Option<usize> {
    let bad_parity = player.opponent();
    let mut prios: Vec<u32> = (0..game.num_vertices())
        .filter(|&v| mask[v])
        .map(|v| game.priority(v))
        .filter(|&p| Player::of_priority(p) == bad_parity)
        .collect();
    prios.sort_unstable();
    prios.dedup();
    for p in prios {
        let sub: Vec<Vec<usize>> = (0..game.num_vertices())
            .map(|v| {
                if !mask[v] || game.priority(v) > p {
                    Vec::new()
                } else {
                    adj[v]
                        .iter()
                        .copied()
                        .filter(|&w| mask[w] && game.priority(w) <= p)
                        .collect()
                }
            })
            .collect();
        let (comp, ncomp) = graph::scc_ids(&sub);
        let cyclic = graph::on_cycle(&sub, &comp, ncomp);
        if let Some(v) =
            (0..game.num_vertices()).find(|&v| mask[v] && game.priority(v) == p && cyclic[v])
        {
            return Some(v);
        }
    }
    None
}

struct Zielonka<'a> {
    game: &'a ParityGame,
    pred: Vec<Vec<usize>>,
    strategy: Vec<Option<usize>>,
}

impl Zielonka<'_> {
    /// Attractor of `target` for `player` inside `mask`, recording attractor
    /// strategy choices for the player's vertices outside the target.
    fn attract(&mut self, mask: &[bool], player: Player, target: &[bool]) -> Vec<bool> {
        let game = self.game;
        let n = game.num_vertices();
        let mut attr = vec![false; n];
        let mut count: Vec<usize> = (0..n)
            .map(|v| {
                if mask[v] {
                    game.successors(v).iter().filter(|&&w| mask[w]).count()
                } else {
                    0
                }
            })
            .collect();
        let mut queue = VecDeque::new();
        for v in (0..n).filter(|&v| mask[v] && target[v]) {
            attr[v] = true;
            queue.push_back(v);
        }
        while let Some(w) = queue.pop_front() {
            for &v in &self.pred[w] {
                if !mask[v] || attr[v] {
                    continue;
                }
                if game.owner(v) == player {
                    attr[v] = true;
                    self.strategy[v] = Some(w);
                    queue.push_back(v);
                } else {
                    count[v] -= 1;
                    if count[v] == 0 {
                        attr[v] = true;
                        queue.push_back(v);
                    }
                }
            }
        }
        attr
    }

    fn solve(&mut self, mask: &[bool]) -> [Vec<bool>; 2] {
        let game = self.game;
        let n = game.num_vertices();
        let Some(top) = (0..n).filter(|&v| mask[v]).map(|v| game.priority(v)).max() else {
            return [vec![false; n], vec![false; n]];
        };
        let player = Player::of_priority(top);
        let opp = player.opponent();
        let target: Vec<bool> = (0..n).map(|v| mask[v] && game.priority(v) == top).collect();
        let attr = self.attract(mask, player, &target);
        let rest: Vec<bool> = (0..n).map(|v| mask[v] && !attr[v]).collect();
        let sub = self.solve(&rest);

        if !sub[opp.index()].iter().any(|&b| b) {
            for v in (0..n).filter(|&v| target[v] && game.owner(v) == player) {
                self.strategy[v] = game.successors(v).iter().copied().find(|&w| mask[w]);
            }
            let mut won = [vec![false; n], vec![false; n]];
            won[player.index()] = mask.to_vec();
            return won;
        }

        let opp_won = sub[opp.index()].clone();
        let back = self.attract(mask, opp, &opp_won);
        let rest2: Vec<bool> = (0..n).map(|v| mask[v] && !back[v]).collect();
        let mut won = self.solve(&rest2);
        for v in (0..n).filter(|&v| back[v]) {
            won[opp.index()][v] = true;
        }
        won
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use crate::random;

    #[test]
    fn self_loops() {
        let even = ParityGame::new(vec![Player::Odd], vec![2], vec![vec![0]], 0).unwrap();
        assert_eq!(even.solve().winner(0), Player::Even);
        let odd = ParityGame::new(vec![Player::Even], vec![3], vec![vec![0]], 0).unwrap();
        let s = odd.solve();
        assert_eq!(s.winner(0), Player::Odd);
        s.verify(&odd).unwrap();
    }

    #[test]
    fn dead_ends_are_rejected() {
        assert!(ParityGame::new(vec![Player::Even], vec![0], vec![vec![]], 0).is_err());
    }

    #[test]
    fn choice_matters() {
        // Even at 0 may go to 1 (prio 1 loop) or 2 (prio 2 loop)
        let g = ParityGame::new(
            vec![Player::Even, Player::Odd, Player::Odd],
            vec![0, 1, 2],
            vec![vec![1, 2], vec![1], vec![2]],
            0,
        )
        .unwrap();
        let s = g.solve();
        assert_eq!(s.winner(0), Player::Even);
        assert_eq!(s.strategy(0), Some(2));
        s.verify(&g).unwrap();
    }

    #[test]
    fn agrees_with_oracles_on_random_games() {
        let mut rng = random::seeded(21);
        for _ in 0..60 {
            let g = random::parity_game(&mut rng, 7, 4);
            let s = g.solve();
            s.verify(&g).unwrap();
            let fix = oracle::parity_winners_fixpoint(&g);
            let enumerated = oracle::parity_winners_by_strategies(&g);
            for v in 0..g.num_vertices() {
                assert_eq!(s.winner(v), fix[v]);
                assert_eq!(s.winner(v), enumerated[v]);
            }
        }
    }
}
