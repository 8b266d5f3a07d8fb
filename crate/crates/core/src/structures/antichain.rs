//! Trees over {0,1} read as subsets `B ⊆ {l,r}*` (the nodes labelled 1),
//! automata for "B has an infinite antichain" and its complement, and a
//! graph-based oracle for both.
//!
//! B has an infinite antichain iff some infinite branch departs infinitely
//! often from a subtree containing an element of B: at a branch node `u`
//! the branch takes one child while the other child's subtree meets B.

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};
use crate::graph;
use crate::tree::{Designated, Dir, MullerTreeAutomaton, RegularTree};

use super::nodes::NodeAddress;

/// Largest antichain width the oracle's fixpoint is allowed to reach.
pub const MAX_ORACLE_WIDTH: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AntichainVerdict {
    Infinite,
    /// Maximum cardinality of an antichain inside the set.
    Finite(usize),
}

const B0: usize = 0;
const B1: usize = 1;
const OWED: usize = 2;
const TOP: usize = 3;

/// Trees whose 1-set has an infinite antichain.
///
/// `B0`/`B1` follow a guessed branch (`B1` right after a departure), `OWED`
/// searches for a 1 below an abandoned child, `TOP` accepts anything.
pub fn build_antichain_automaton() -> MullerTreeAutomaton {
    let b = Alphabet::binary();
    let mut t = Vec::new();
    for a in b.letters() {
        for from in [B0, B1] {
            t.extend([(from, a, B0, TOP), (from, a, TOP, B0), (from, a, B1, OWED), (from, a, OWED, B1)]);
        }
        t.push((TOP, a, TOP, TOP));
    }
    t.push((OWED, Letter(1), TOP, TOP));
    t.push((OWED, Letter(0), OWED, TOP));
    t.push((OWED, Letter(0), TOP, OWED));
    MullerTreeAutomaton::new(b, 4, B0, t, Designated::Sets(vec![vec![TOP], vec![B1], vec![B0, B1]]))
        .expect("well-formed")
}

const C0: usize = 0;
const C1: usize = 1;
const Z0: usize = 2;
const Z1: usize = 3;

/// Trees whose 1-set has no infinite antichain.
///
/// Each node guesses whether its subtree is 1-free (`Z`, verified) or not
/// (`C`, unverified). The flag marks a child whose sibling was guessed `C`;
/// a path may carry the flag only finitely often. A wrong `C` guess only
/// adds flags, so it never helps acceptance.
pub fn build_no_antichain_automaton() -> MullerTreeAutomaton {
    let b = Alphabet::binary();
    let mut t = Vec::new();
    for a in b.letters() {
        for from in [C0, C1] {
            for gl in [false, true] {
                for gr in [false, true] {
                    let state = |contains: bool, flagged: bool| match (contains, flagged) {
                        (true, false) => C0,
                        (true, true) => C1,
                        (false, false) => Z0,
                        (false, true) => Z1,
                    };
                    t.push((from, a, state(gl, gr), state(gr, gl)));
                }
            }
        }
    }
    for from in [Z0, Z1] {
        t.push((from, Letter(0), Z0, Z0));
    }
    MullerTreeAutomaton::new(
        b,
        4,
        C0,
        t,
        Designated::Sets(vec![vec![C0], vec![Z0], vec![C0, Z0]]),
    )
    .expect("well-formed")
}

/// Per node: whether its subtree contains a node labelled 1.
fn contains_one(t: &RegularTree) -> Vec<bool> {
    let adj: Vec<Vec<usize>> = (0..t.num_nodes()).map(|v| vec![t.left(v), t.right(v)]).collect();
    let ones: Vec<bool> = (0..t.num_nodes()).map(|v| t.label(v) == Letter(1)).collect();
    graph::coreachable(&adj, &ones)
}

/// Decides whether the 1-set of `t` has an infinite antichain by graph
/// analysis alone, and otherwise computes its width.
pub fn antichain_oracle(t: &RegularTree) -> Result<AntichainVerdict> {
    let n = t.num_nodes();
    if let Some(a) = (0..n).map(|v| t.label(v)).find(|a| a.0 > 1) {
        return Err(Error::AlphabetMismatch(format!("label {} is not 0 or 1", a.0)));
    }
    let adj: Vec<Vec<usize>> = (0..n).map(|v| vec![t.left(v), t.right(v)]).collect();
    let reach = graph::reachable(&adj, [t.root()]);
    let (comp, _) = graph::scc_ids(&adj);
    let one = contains_one(t);
    for u in (0..n).filter(|&u| reach[u]) {
        for (next, sibling) in [(t.left(u), t.right(u)), (t.right(u), t.left(u))] {
            if comp[next] == comp[u] && one[sibling] {
                return Ok(AntichainVerdict::Infinite);
            }
        }
    }
    let mut width = vec![0usize; n];
    let cap = n * (1 + MAX_ORACLE_WIDTH);
    for _ in 0..cap {
        let next: Vec<usize> = (0..n)
            .map(|u| {
                if !reach[u] {
                    return 0;
                }
                let below = width[t.left(u)].saturating_add(width[t.right(u)]);
                below.max(usize::from(t.label(u) == Letter(1)))
            })
            .collect();
        if next == width {
            return Ok(AntichainVerdict::Finite(width[t.root()]));
        }
        width = next;
    }
    Err(Error::Invariant(format!(
        "antichain width fixpoint did not converge within {cap} rounds although no departure cycle exists"
    )))
}

/// The 1-set `{lⁿ rᵏ | k ≥ 1}`, a chain.
pub fn chain_tree(n: usize) -> RegularTree {
    // nodes 0..=n walk down the l-spine; then the r-chain and the zero node
    let chain = n + 1;
    let zero = n + 2;
    let mut nodes = Vec::with_capacity(n + 3);
    for i in 0..n {
        nodes.push((Letter(0), i + 1, zero));
    }
    nodes.push((Letter(0), zero, chain));
    nodes.push((Letter(1), zero, chain));
    nodes.push((Letter(0), zero, zero));
    RegularTree::new(nodes, 0).expect("well-formed")
}

/// The 1-set `{lⁿ r | n ≥ 0}`, an infinite antichain.
pub fn antichain_tree() -> RegularTree {
    RegularTree::new(
        vec![(Letter(0), 0, 1), (Letter(1), 2, 2), (Letter(0), 2, 2)],
        0,
    )
    .expect("well-formed")
}

/// Addresses of length at most `depth` labelled 1.
pub fn ones_up_to(t: &RegularTree, depth: usize) -> Vec<NodeAddress> {
    NodeAddress::up_to(depth)
        .filter(|u| t.label_at(&u.0) == Letter(1))
        .collect()
}

/// Width of the 1-set truncated at `depth`, by recursion over the explicit
/// finite unfolding (no graph sharing).
pub fn truncated_width(t: &RegularTree, depth: usize) -> usize {
    fn go(t: &RegularTree, v: usize, left: usize) -> usize {
        let own = usize::from(t.label(v) == Letter(1));
        if left == 0 {
            return own;
        }
        let below = go(t, t.child(v, Dir::L), left - 1) + go(t, t.child(v, Dir::R), left - 1);
        own.max(below)
    }
    go(t, t.root(), depth)
}

/// Whether the 1-set lies in the layer `I_k` (no antichain of more than
/// `k` elements).
pub fn in_layer(t: &RegularTree, k: usize) -> Result<bool> {
    Ok(matches!(antichain_oracle(t)?, AntichainVerdict::Finite(w) if w <= k))
}

/// For a finite verdict `k`: every truncation of the 1-set at depth at
/// most `max_depth` has width at most `k`, and widths grow with depth.
/// Infinite verdicts pass vacuously.
pub fn truncation_probe(t: &RegularTree, max_depth: usize) -> Result<bool> {
    let AntichainVerdict::Finite(k) = antichain_oracle(t)? else {
        return Ok(true);
    };
    let widths: Vec<usize> = (0..=max_depth).map(|d| truncated_width(t, d)).collect();
    Ok(widths.iter().all(|&w| w <= k) && widths.windows(2).all(|p| p[0] <= p[1]))
}
