//! Strongly connected components and reachability over adjacency lists.

use std::collections::VecDeque;

/// Tarjan's algorithm, iterative. Returns the component id of every vertex;
/// ids are assigned in reverse topological order (sinks first).
pub fn scc_ids(adj: &[Vec<usize>]) -> (Vec<usize>, usize) {
    const UNSEEN: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut next_comp = 0;
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        while let Some(&mut (v, ref mut edge)) = call.last_mut() {
            if *edge == 0 && index[v] == UNSEEN {
                index[v] = next_index;
                low[v] = next_index;
                next_index += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if *edge < adj[v].len() {
                let w = adj[v][*edge];
                *edge += 1;
                if index[w] == UNSEEN {
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp[w] = next_comp;
                    if w == v {
                        break;
                    }
                }
                next_comp += 1;
            }
        }
    }
    (comp, next_comp)
}

/// Whether each vertex lies on a cycle (non-trivial component or self loop).
pub fn on_cycle(adj: &[Vec<usize>], comp: &[usize], ncomp: usize) -> Vec<bool> {
    let mut size = vec![0usize; ncomp];
    for &c in comp {
        size[c] += 1;
    }
    (0..adj.len())
        .map(|v| size[comp[v]] > 1 || adj[v].contains(&v))
        .collect()
}

pub fn reachable(adj: &[Vec<usize>], sources: impl IntoIterator<Item = usize>) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    let mut queue = VecDeque::new();
    for s in sources {
        if !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen
}

/// Vertices from which some vertex in `targets` is reachable.
pub fn coreachable(adj: &[Vec<usize>], targets: &[bool]) -> Vec<bool> {
    let mut rev = vec![Vec::new(); adj.len()];
    for (v, succ) in adj.iter().enumerate() {
        for &w in succ {
            rev[w].push(v);
        }
    }
    reachable(&rev, (0..adj.len()).filter(|&v| targets[v]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn components_of_a_small_graph() {
        // 0 -> 1 -> 2 -> 0, 2 -> 3, 3 -> 3, 4 isolated
        let adj = vec![vec![1], vec![2], vec![0, 3], vec![3], vec![]];
        let (comp, n) = scc_ids(&adj);
        assert_eq!(n, 3);
        assert_eq!(comp[0], comp[1]);
        assert_eq!(comp[1], comp[2]);
        assert_ne!(comp[2], comp[3]);
        assert!(comp[3] < comp[0], "sinks get smaller ids");
        let cyc = on_cycle(&adj, &comp, n);
        assert_eq!(cyc, vec![true, true, true, true, false]);
        let r = reachable(&adj, [1]);
        assert_eq!(r, vec![true, true, true, true, false]);
        let co = coreachable(&adj, &[false, false, false, true, false]);
        assert_eq!(co, vec![true, true, true, true, false]);
    }

    #[test]
    fn deep_chain_does_not_overflow() {
        let n = 200_000;
        let adj: Vec<Vec<usize>> = (0..n).map(|v| vec![(v + 1) % n]).collect();
        let (_, k) = scc_ids(&adj);
        assert_eq!(k, 1);
    }
}
