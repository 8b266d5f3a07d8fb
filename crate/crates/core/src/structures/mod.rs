//! The concrete objects: node enumeration, the ideals Fin and I through
//! their automata and oracles, and the boolean algebras presented with them.

pub mod antichain;
pub mod boolean;
pub mod fin;
pub mod nodes;

pub use antichain::{
    antichain_oracle, antichain_tree, build_antichain_automaton, build_no_antichain_automaton,
    chain_tree, in_layer, truncated_width, truncation_probe, AntichainVerdict,
};
pub use boolean::{
    atomless_split_tree, atomless_split_word, build_b1_presentation, build_b2_presentation,
};
pub use fin::{build_fin_automaton, build_fin_k_automaton};
pub use nodes::{node_index, node_unindex, NodeAddress};
