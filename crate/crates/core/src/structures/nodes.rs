//! Finite addresses in the full binary tree `{l,r}*` and their enumeration
//! in length-then-lexicographic order.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::tree::Dir;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeAddress(pub Vec<Dir>);

impl NodeAddress {
    pub fn root() -> Self {
        NodeAddress(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_prefix_of(&self, other: &NodeAddress) -> bool {
        other.0.starts_with(&self.0)
    }

    /// Neither address is a prefix of the other.
    pub fn incomparable(&self, other: &NodeAddress) -> bool {
        !self.is_prefix_of(other) && !other.is_prefix_of(self)
    }

    pub fn child(&self, d: Dir) -> NodeAddress {
        let mut v = self.0.clone();
        v.push(d);
        NodeAddress(v)
    }

    /// Position in the order ε, l, r, ll, lr, rl, rr, lll, …
    pub fn index(&self) -> u64 {
        let n = self.0.len() as u32;
        let offset = self
            .0
            .iter()
            .fold(0u64, |acc, &d| 2 * acc + u64::from(d == Dir::R));
        (1u64 << n) - 1 + offset
    }

    /// Inverse of [`NodeAddress::index`].
    pub fn from_index(i: u64) -> NodeAddress {
        // addresses of length n occupy [2^n - 1, 2^(n+1) - 1)
        let n = 63 - (i + 1).leading_zeros();
        let offset = i + 1 - (1u64 << n);
        NodeAddress(
            (0..n)
                .rev()
                .map(|b| if offset >> b & 1 == 1 { Dir::R } else { Dir::L })
                .collect(),
        )
    }

    /// All addresses of length at most `depth`, in enumeration order.
    pub fn up_to(depth: usize) -> impl Iterator<Item = NodeAddress> {
        (0..(1u64 << (depth + 1)) - 1).map(NodeAddress::from_index)
    }
}

pub fn node_index(u: &NodeAddress) -> u64 {
    u.index()
}

pub fn node_unindex(n: u64) -> NodeAddress {
    NodeAddress::from_index(n)
}

impl fmt::Display for NodeAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        for d in &self.0 {
            write!(f, "{}", if *d == Dir::L { 'l' } else { 'r' })?;
        }
        Ok(())
    }
}

impl FromStr for NodeAddress {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "ε" || s.is_empty() {
            return Ok(NodeAddress::root());
        }
        s.chars()
            .map(|c| match c {
                'l' => Ok(Dir::L),
                'r' => Ok(Dir::R),
                _ => Err(Error::Malformed(format!("bad address character {c:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(NodeAddress)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_fifteen_addresses() {
        let shown: Vec<String> = (0..15).map(|i| node_unindex(i).to_string()).collect();
        assert_eq!(
            shown,
            [
                "ε", "l", "r", "ll", "lr", "rl", "rr", "lll", "llr", "lrl", "lrr", "rll", "rlr",
                "rrl", "rrr"
            ]
        );
        for (s, i) in [("ε", 0), ("l", 1), ("r", 2), ("ll", 3), ("lr", 4)] {
            assert_eq!(node_index(&s.parse().unwrap()), i);
        }
    }

    #[test]
    fn enumeration_is_a_monotone_bijection() {
        let all: Vec<NodeAddress> = NodeAddress::up_to(8).collect();
        assert_eq!(all.len(), (1 << 9) - 1);
        for (i, u) in all.iter().enumerate() {
            assert_eq!(node_index(u), i as u64);
            assert_eq!(node_unindex(node_index(u)), *u);
        }
        for w in all.windows(2) {
            assert!((w[0].len(), &w[0].0) < (w[1].len(), &w[1].0));
        }
    }
}
