//! Brute-force reference procedures. They favour obviousness over speed and
//! are only meant for the small instances of the differential suites.

use std::collections::HashMap;

use crate::game::{losing_cycle, ParityGame, Player};
use crate::tree::{MullerTreeAutomaton, RegularTree};

/// Winners by naive evaluation of the nested fixpoint
/// `σ_d X_d … σ_0 X_0. ⋃_i (P_i ∩ CPre(X_i))` where `σ_i` is a greatest
/// fixpoint for even `i` and a least one for odd `i`.
pub fn parity_winners_fixpoint(game: &ParityGame) -> Vec<Player> {
    let n = game.num_vertices();
    let d = (0..n).map(|v| game.priority(v) as usize).max().unwrap_or(0);
    let mut vals = vec![vec![false; n]; d + 1];
    let even = eval(game, d as isize, &mut vals);
    even.into_iter()
        .map(|b| if b { Player::Even } else { Player::Odd })
        .collect()
}

fn eval(game: &ParityGame, level: isize, vals: &mut Vec<Vec<bool>>) -> Vec<bool> {
    let n = game.num_vertices();
    if level < 0 {
        return (0..n)
            .map(|v| {
                let x = &vals[game.priority(v) as usize];
                match game.owner(v) {
                    Player::Even => game.successors(v).iter().any(|&w| x[w]),
                    Player::Odd => game.successors(v).iter().all(|&w| x[w]),
                }
            })
            .collect();
    }
    let i = level as usize;
    vals[i] = vec![i.is_multiple_of(2); n];
    loop {
        let next = eval(game, level - 1, vals);
        if next == vals[i] {
            return next;
        }
        vals[i] = next;
    }
}

/// Winners by enumerating every positional strategy of Even: Even wins `v`
/// iff some strategy leaves no reachable cycle with odd maximal priority.
pub fn parity_winners_by_strategies(game: &ParityGame) -> Vec<Player> {
    let n = game.num_vertices();
    let even: Vec<usize> = (0..n).filter(|&v| game.owner(v) == Player::Even).collect();
    let mut won = vec![false; n];
    let mut choice = vec![0usize; even.len()];
    loop {
        let mut adj: Vec<Vec<usize>> = (0..n).map(|v| game.successors(v).to_vec()).collect();
        for (k, &v) in even.iter().enumerate() {
            adj[v] = vec![game.successors(v)[choice[k]]];
        }
        for (v, w) in won.iter_mut().enumerate().filter(|(_, w)| !**w) {
            let reach = crate::graph::reachable(&adj, [v]);
            *w = losing_cycle(game, &adj, &reach, Player::Even).is_none();
        }
        // odometer step
        let mut k = 0;
        loop {
            if k == even.len() {
                return won
                    .into_iter()
                    .map(|b| if b { Player::Even } else { Player::Odd })
                    .collect();
            }
            choice[k] += 1;
            if choice[k] < game.successors(even[k]).len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// Membership of a regular tree in a Muller automaton, decided on the Muller
/// game itself (automaton picks a transition, pathfinder picks a direction)
/// by the recursive algorithm over colour sets, without any conversion to
/// parity form.
pub fn muller_membership(aut: &MullerTreeAutomaton, t: &RegularTree) -> bool {
    #[derive(Clone, Copy, PartialEq, Eq, Hash)]
    enum V {
        Auto(usize, usize),
        Path(usize, usize, usize),
        Dead,
    }
    let mut ids: HashMap<V, usize> = HashMap::new();
    let mut verts = vec![V::Auto(aut.initial(), t.root())];
    ids.insert(verts[0], 0);
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < verts.len() {
        let succ: Vec<V> = match verts[i] {
            V::Auto(q, v) => {
                let ts = aut.transitions_on(q, t.label(v));
                if ts.is_empty() {
                    vec![V::Dead]
                } else {
                    ts.iter().map(|&(_, l, r)| V::Path(l, r, v)).collect()
                }
            }
            V::Path(l, r, v) => vec![V::Auto(l, t.left(v)), V::Auto(r, t.right(v))],
            V::Dead => vec![V::Dead],
        };
        let mut out = Vec::new();
        for s in succ {
            let id = *ids.entry(s).or_insert_with(|| {
                verts.push(s);
                verts.len() - 1
            });
            out.push(id);
        }
        edges.push(out);
        i += 1;
    }
    let dead = aut.num_states();
    let owner: Vec<Player> = verts
        .iter()
        .map(|v| if matches!(v, V::Auto(..)) { Player::Even } else { Player::Odd })
        .collect();
    let color: Vec<Option<usize>> = verts
        .iter()
        .map(|v| match *v {
            V::Auto(q, _) => Some(q),
            V::Path(..) => None,
            V::Dead => Some(dead),
        })
        .collect();
    let accept = |set: &[usize]| !set.contains(&dead) && aut.designated().contains(set);
    let game = MullerGame { owner, edges, color, accept: &accept };
    let all = vec![true; verts.len()];
    game.solve(&all)[0][0]
}

struct MullerGame<'a> {
    owner: Vec<Player>,
    edges: Vec<Vec<usize>>,
    color: Vec<Option<usize>>,
    accept: &'a dyn Fn(&[usize]) -> bool,
}

impl MullerGame<'_> {
    fn attractor(&self, mask: &[bool], player: Player, target: &[bool]) -> Vec<bool> {
        let mut attr: Vec<bool> = (0..mask.len()).map(|v| mask[v] && target[v]).collect();
        let mut changed = true;
        while changed {
            changed = false;
            for v in 0..mask.len() {
                if !mask[v] || attr[v] {
                    continue;
                }
                let mut inside = self.edges[v].iter().filter(|&&w| mask[w]);
                let pulled = if self.owner[v] == player {
                    inside.any(|&w| attr[w])
                } else {
                    inside.all(|&w| attr[w])
                };
                if pulled {
                    attr[v] = true;
                    changed = true;
                }
            }
        }
        attr
    }

    /// Winning regions `[even, odd]` of the subgame on `mask`.
    fn solve(&self, mask: &[bool]) -> [Vec<bool>; 2] {
        let n = mask.len();
        let mut colors: Vec<usize> = (0..n).filter(|&v| mask[v]).filter_map(|v| self.color[v]).collect();
        colors.sort_unstable();
        colors.dedup();
        if !mask.iter().any(|&b| b) {
            return [vec![false; n], vec![false; n]];
        }
        let player = if (self.accept)(&colors) { Player::Even } else { Player::Odd };
        let (me, opp) = match player {
            Player::Even => (0, 1),
            Player::Odd => (1, 0),
        };
        for &c in &colors {
            let target: Vec<bool> = (0..n).map(|v| self.color[v] == Some(c)).collect();
            let attr = self.attractor(mask, player, &target);
            let rest: Vec<bool> = (0..n).map(|v| mask[v] && !attr[v]).collect();
            let sub = self.solve(&rest);
            if sub[opp].iter().any(|&b| b) {
                let back = self.attractor(mask, player.opponent(), &sub[opp]);
                let rest: Vec<bool> = (0..n).map(|v| mask[v] && !back[v]).collect();
                let mut won = self.solve(&rest);
                for v in (0..n).filter(|&v| back[v]) {
                    won[opp][v] = true;
                }
                return won;
            }
        }
        let mut won = [vec![false; n], vec![false; n]];
        won[me] = mask.to_vec();
        won
    }
}
