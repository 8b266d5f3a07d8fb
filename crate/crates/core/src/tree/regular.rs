//! Regular infinite binary trees given as finite graphs.

use std::collections::HashMap;
use std::fmt;

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};
use crate::word::LassoWord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dir {
    L,
    R,
}

/// The unfolding from `root` of a finite graph whose nodes all have a left
/// and a right successor. Equality is bisimilarity of the rooted graphs.
#[derive(Clone, Debug)]
pub struct RegularTree {
    label: Vec<Letter>,
    left: Vec<usize>,
    right: Vec<usize>,
    root: usize,
}

impl RegularTree {
    /// Nodes are given as `(label, left, right)`.
    pub fn new(nodes: Vec<(Letter, usize, usize)>, root: usize) -> Result<Self> {
        let n = nodes.len();
        if root >= n {
            return Err(Error::Malformed(format!("root {root} out of range")));
        }
        if let Some((v, _)) = nodes.iter().enumerate().find(|(_, &(_, l, r))| l >= n || r >= n) {
            return Err(Error::Malformed(format!("node {v} has a successor out of range")));
        }
        Ok(RegularTree {
            label: nodes.iter().map(|t| t.0).collect(),
            left: nodes.iter().map(|t| t.1).collect(),
            right: nodes.iter().map(|t| t.2).collect(),
            root,
        })
    }

    /// The tree labelled `a` everywhere.
    pub fn constant(a: Letter) -> Self {
        RegularTree {
            label: vec![a],
            left: vec![0],
            right: vec![0],
            root: 0,
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.label.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn label(&self, v: usize) -> Letter {
        self.label[v]
    }

    pub fn left(&self, v: usize) -> usize {
        self.left[v]
    }

    pub fn right(&self, v: usize) -> usize {
        self.right[v]
    }

    pub fn child(&self, v: usize, d: Dir) -> usize {
        match d {
            Dir::L => self.left[v],
            Dir::R => self.right[v],
        }
    }

    /// Graph node reached from the root along `path`.
    pub fn node_at(&self, path: &[Dir]) -> usize {
        path.iter().fold(self.root, |v, &d| self.child(v, d))
    }

    pub fn label_at(&self, path: &[Dir]) -> Letter {
        self.label[self.node_at(path)]
    }

    /// The same graph rooted at `v`.
    pub fn subtree(&self, v: usize) -> RegularTree {
        RegularTree {
            root: v,
            ..self.clone()
        }
    }

    pub fn check_alphabet(&self, alphabet: &Alphabet) -> Result<()> {
        match self.label.iter().find(|&&a| !alphabet.contains(a)) {
            Some(a) => Err(Error::AlphabetMismatch(format!(
                "tree label {} outside alphabet of size {}",
                a.0,
                alphabet.size()
            ))),
            None => Ok(()),
        }
    }

    /// Labels at ε, l, ll, lll, … as a lasso.
    pub fn leftmost_lasso(&self) -> LassoWord {
        let mut seen = vec![usize::MAX; self.num_nodes()];
        let mut seq = Vec::new();
        let mut v = self.root;
        while seen[v] == usize::MAX {
            seen[v] = seq.len();
            seq.push(v);
            v = self.left[v];
        }
        let start = seen[v];
        let stem = seq[..start].iter().map(|&u| self.label[u]).collect();
        let cycle = seq[start..].iter().map(|&u| self.label[u]).collect();
        LassoWord::new(stem, cycle).expect("cycle is non-empty")
    }

    /// Graph restricted to nodes reachable from the root, merged up to
    /// bisimilarity and numbered breadth-first (left before right).
    pub fn canonical(&self) -> RegularTree {
        let n = self.num_nodes();
        let mut class: Vec<usize> = {
            let mut ids = HashMap::new();
            self.label
                .iter()
                .map(|&a| {
                    let k = ids.len();
                    *ids.entry(a).or_insert(k)
                })
                .collect()
        };
        let mut count = class.iter().copied().max().map_or(0, |m| m + 1);
        loop {
            let mut ids = HashMap::new();
            let next: Vec<usize> = (0..n)
                .map(|v| {
                    let key = (class[v], class[self.left[v]], class[self.right[v]]);
                    let k = ids.len();
                    *ids.entry(key).or_insert(k)
                })
                .collect();
            let new_count = ids.len();
            class = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }
        let mut order = vec![usize::MAX; count];
        let mut reps = Vec::new();
        order[class[self.root]] = 0;
        reps.push(self.root);
        let mut head = 0;
        while head < reps.len() {
            let v = reps[head];
            head += 1;
            for w in [self.left[v], self.right[v]] {
                if order[class[w]] == usize::MAX {
                    order[class[w]] = reps.len();
                    reps.push(w);
                }
            }
        }
        RegularTree {
            label: reps.iter().map(|&v| self.label[v]).collect(),
            left: reps.iter().map(|&v| order[class[self.left[v]]]).collect(),
            right: reps.iter().map(|&v| order[class[self.right[v]]]).collect(),
            root: 0,
        }
    }

    /// Convolution: the node at each address carries the tuple of the
    /// labels of `trees` there. `parts[i]` is the alphabet of `trees[i]`.
    pub fn zip(trees: &[&RegularTree], parts: &[&Alphabet], target: &Alphabet) -> RegularTree {
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut tuples: Vec<Vec<usize>> = Vec::new();
        let root: Vec<usize> = trees.iter().map(|t| t.root).collect();
        ids.insert(root.clone(), 0);
        tuples.push(root);
        let mut nodes = Vec::new();
        let mut head = 0;
        while head < tuples.len() {
            let tuple = tuples[head].clone();
            head += 1;
            let mut comps = Vec::new();
            for ((t, &v), part) in trees.iter().zip(&tuple).zip(parts) {
                comps.extend(part.decode(t.label[v]));
            }
            let mut succ = [0; 2];
            for (k, d) in [Dir::L, Dir::R].into_iter().enumerate() {
                let next: Vec<usize> = trees.iter().zip(&tuple).map(|(t, &v)| t.child(v, d)).collect();
                let id = match ids.get(&next) {
                    Some(&id) => id,
                    None => {
                        let id = tuples.len();
                        ids.insert(next.clone(), id);
                        tuples.push(next);
                        id
                    }
                };
                succ[k] = id;
            }
            nodes.push((target.encode(&comps), succ[0], succ[1]));
        }
        RegularTree::new(nodes, 0).expect("well-formed convolution")
    }

    /// Keeps the listed tracks of each label.
    pub fn project_tracks(&self, from: &Alphabet, tracks: &[usize], to: &Alphabet) -> RegularTree {
        self.map_labels(|a| from.restrict(a, tracks, to))
    }

    pub fn map_labels(&self, f: impl Fn(Letter) -> Letter) -> RegularTree {
        RegularTree {
            label: self.label.iter().map(|&a| f(a)).collect(),
            ..self.clone()
        }
    }

    /// The tree with the labels at the given addresses replaced. Nodes on
    /// the paths to those addresses are copied so the rest is shared.
    pub fn with_labels(&self, changes: &[(Vec<Dir>, Letter)]) -> RegularTree {
        let mut out = self.clone();
        let mut copies: HashMap<Vec<Dir>, usize> = HashMap::new();
        let mut copy_of = |path: &[Dir], out: &mut RegularTree| -> usize {
            if let Some(&id) = copies.get(path) {
                return id;
            }
            let v = self.node_at(path);
            out.label.push(self.label[v]);
            out.left.push(self.left[v]);
            out.right.push(self.right[v]);
            let id = out.label.len() - 1;
            copies.insert(path.to_vec(), id);
            id
        };
        for (path, a) in changes {
            let mut parent = copy_of(&[], &mut out);
            for k in 1..=path.len() {
                let id = copy_of(&path[..k], &mut out);
                match path[k - 1] {
                    Dir::L => out.left[parent] = id,
                    Dir::R => out.right[parent] = id,
                }
                parent = id;
            }
            out.label[parent] = *a;
        }
        if let Some(&r) = copies.get(&Vec::new()) {
            out.root = r;
        }
        out
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        TreeDisplay {
            tree: self,
            alphabet,
        }
    }

    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<RegularTree> {
        crate::format::parse_rtree(text, alphabet)
    }
}

impl PartialEq for RegularTree {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = (self.canonical(), other.canonical());
        a.label == b.label && a.left == b.left && a.right == b.right
    }
}

impl Eq for RegularTree {}

struct TreeDisplay<'a> {
    tree: &'a RegularTree,
    alphabet: &'a Alphabet,
}

impl fmt::Display for TreeDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.tree;
        writeln!(f, "rtree")?;
        writeln!(f, "alphabet: {}", self.alphabet)?;
        writeln!(f, "root: {}", t.root)?;
        for v in 0..t.num_nodes() {
            writeln!(
                f,
                "node: {} {} {} {}",
                v,
                self.alphabet.letter_name(t.label[v]),
                t.left[v],
                t.right[v]
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bin_tree(nodes: &[(u32, usize, usize)], root: usize) -> RegularTree {
        RegularTree::new(nodes.iter().map(|&(a, l, r)| (Letter(a), l, r)).collect(), root).unwrap()
    }

    #[test]
    fn bisimilar_graphs_are_equal() {
        let one = RegularTree::constant(Letter(1));
        let two = bin_tree(&[(1, 1, 0), (1, 0, 1)], 0);
        assert_eq!(one, two);
        assert_ne!(one, RegularTree::constant(Letter(0)));
        // same nodes, different root
        let t = bin_tree(&[(0, 1, 1), (1, 1, 1)], 0);
        assert_ne!(t, t.subtree(1));
        assert_eq!(t.subtree(1), one);
    }

    #[test]
    fn canonical_form_is_minimal() {
        let t = bin_tree(&[(0, 1, 2), (0, 2, 1), (0, 0, 0), (1, 3, 3)], 0);
        let c = t.canonical();
        assert_eq!(c.num_nodes(), 1);
    }

    #[test]
    fn leftmost_lasso_follows_left_edges() {
        // root 1, then 0 1 0 1 ...
        let t = bin_tree(&[(1, 1, 0), (0, 2, 0), (1, 1, 0)], 0);
        let w = t.leftmost_lasso();
        assert_eq!(w.stem(), &[Letter(1)]);
        assert_eq!(w.cycle(), &[Letter(0), Letter(1)]);
    }

    #[test]
    fn zip_and_project_round_trip() {
        let b = Alphabet::binary();
        let pair = Alphabet::binary_tracks(2).unwrap();
        let s = bin_tree(&[(1, 1, 0), (0, 1, 0)], 0);
        let t = bin_tree(&[(0, 0, 1), (1, 0, 0)], 0);
        let z = RegularTree::zip(&[&s, &t], &[&b, &b], &pair);
        assert_eq!(z.project_tracks(&pair, &[0], &b), s);
        assert_eq!(z.project_tracks(&pair, &[1], &b), t);
        assert_eq!(pair.decode(z.label_at(&[Dir::R])), vec![1, 1]);
        assert_eq!(pair.decode(z.label_at(&[Dir::L])), vec![0, 0]);
    }

    #[test]
    fn finite_relabelling() {
        let zeros = RegularTree::constant(Letter(0));
        let t = zeros.with_labels(&[(vec![Dir::L, Dir::R], Letter(1)), (vec![], Letter(1))]);
        assert_eq!(t.label_at(&[]), Letter(1));
        assert_eq!(t.label_at(&[Dir::L, Dir::R]), Letter(1));
        assert_eq!(t.label_at(&[Dir::L, Dir::L]), Letter(0));
        assert_eq!(t.label_at(&[Dir::R, Dir::R, Dir::R]), Letter(0));
        assert_eq!(zeros.with_labels(&[]), zeros);
    }
}
