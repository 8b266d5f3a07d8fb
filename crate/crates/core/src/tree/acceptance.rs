//! Membership and emptiness through parity games.
//!
//! Even plays the automaton (choosing transitions), Odd plays the
//! pathfinder (choosing a direction). Vertices where the automaton has no
//! move lead to a sink won by Odd.

use std::collections::HashMap;

use super::{ParityTreeAutomaton, RegularTree};
use crate::alphabet::Letter;
use crate::error::{Error, Result};
use crate::game::{ParityGame, Player};
use crate::word::State;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Vertex {
    /// Automaton state at a tree node (the node is unused for emptiness).
    Auto(State, usize),
    /// Pathfinder to choose between the two children.
    Path(State, State, usize),
    Sink,
}

#[derive(Default)]
struct GameBuilder {
    ids: HashMap<Vertex, usize>,
    vertices: Vec<Vertex>,
    edges: Vec<Vec<usize>>,
}

impl GameBuilder {
    fn intern(&mut self, v: Vertex) -> usize {
        if let Some(&id) = self.ids.get(&v) {
            return id;
        }
        let id = self.vertices.len();
        self.ids.insert(v, id);
        self.vertices.push(v);
        self.edges.push(Vec::new());
        id
    }

    fn finish(self, aut: &ParityTreeAutomaton) -> (ParityGame, Vec<Vertex>) {
        let owner = self
            .vertices
            .iter()
            .map(|v| match v {
                Vertex::Auto(..) => Player::Even,
                _ => Player::Odd,
            })
            .collect();
        let priority = self
            .vertices
            .iter()
            .map(|v| match *v {
                Vertex::Auto(q, _) => aut.priority(q),
                Vertex::Path(..) => 0,
                Vertex::Sink => 1,
            })
            .collect();
        let game = ParityGame::new(owner, priority, self.edges, 0).expect("every vertex has a move");
        (game, self.vertices)
    }
}

impl ParityTreeAutomaton {
    pub fn accepts(&self, t: &RegularTree) -> Result<bool> {
        t.check_alphabet(&self.alphabet)?;
        let mut b = GameBuilder::default();
        b.intern(Vertex::Auto(self.initial, t.root()));
        let mut next = 0;
        while next < b.vertices.len() {
            let id = next;
            next += 1;
            let succ: Vec<Vertex> = match b.vertices[id] {
                Vertex::Auto(q, v) => {
                    let ts = self.transitions_on(q, t.label(v));
                    if ts.is_empty() {
                        vec![Vertex::Sink]
                    } else {
                        ts.iter().map(|&(_, l, r)| Vertex::Path(l, r, v)).collect()
                    }
                }
                Vertex::Path(l, r, v) => vec![Vertex::Auto(l, t.left(v)), Vertex::Auto(r, t.right(v))],
                Vertex::Sink => vec![Vertex::Sink],
            };
            for s in succ {
                let w = b.intern(s);
                b.edges[id].push(w);
            }
        }
        let (game, _) = b.finish(self);
        Ok(game.solve().winner(0) == Player::Even)
    }

    /// A regular tree read by the positional winning strategy of the
    /// automaton player, or `None` if the language is empty. The witness is
    /// re-checked by membership before being returned.
    pub fn find_accepted(&self) -> Result<Option<RegularTree>> {
        let mut b = GameBuilder::default();
        b.intern(Vertex::Auto(self.initial, 0));
        // smallest letter realizing each automaton-to-pathfinder edge
        let mut edge_letter: HashMap<(usize, usize), Letter> = HashMap::new();
        let mut next = 0;
        while next < b.vertices.len() {
            let id = next;
            next += 1;
            match b.vertices[id] {
                Vertex::Auto(q, _) => {
                    let ts = self.transitions_from(q);
                    if ts.is_empty() {
                        let w = b.intern(Vertex::Sink);
                        b.edges[id].push(w);
                    }
                    for &(a, l, r) in ts {
                        let w = b.intern(Vertex::Path(l, r, 0));
                        b.edges[id].push(w);
                        edge_letter.entry((id, w)).or_insert(a);
                    }
                }
                Vertex::Path(l, r, _) => {
                    let wl = b.intern(Vertex::Auto(l, 0));
                    let wr = b.intern(Vertex::Auto(r, 0));
                    b.edges[id].extend([wl, wr]);
                }
                Vertex::Sink => b.edges[id].push(id),
            }
        }
        let ids = b.ids.clone();
        let (game, vertices) = b.finish(self);
        let solution = game.solve();
        if solution.winner(0) != Player::Even {
            return Ok(None);
        }

        // tree nodes are the automaton vertices reached under the strategy
        let mut node_of: HashMap<usize, usize> = HashMap::new();
        let mut order = vec![0usize];
        node_of.insert(0, 0);
        let mut nodes = Vec::new();
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            let choice = solution
                .strategy(v)
                .ok_or_else(|| Error::Invariant("winning vertex without a strategy".into()))?;
            let Vertex::Path(l, r, _) = vertices[choice] else {
                return Err(Error::Invariant("strategy leads to the sink".into()));
            };
            let mut kids = [0; 2];
            for (k, q) in [l, r].into_iter().enumerate() {
                let w = ids[&Vertex::Auto(q, 0)];
                let n = node_of.len();
                kids[k] = *node_of.entry(w).or_insert_with(|| {
                    order.push(w);
                    n
                });
            }
            nodes.push((edge_letter[&(v, choice)], kids[0], kids[1]));
        }
        let tree = RegularTree::new(nodes, 0)?;
        if !self.accepts(&tree)? {
            return Err(Error::Invariant("emptiness witness rejected by membership".into()));
        }
        Ok(Some(tree))
    }
}
