//! Permutations, generated groups, and stabilizer-chain machinery.

mod group;
mod perm;

pub use group::{
    orbit, orbit_transversal, orbits_on, transporter, BaseChain, GeneratedGroup,
};
pub use perm::{parse_cycles, parse_generator_file, Permutation};

/// The group actions used throughout: on points, on ordered pairs of points,
/// and on unordered pairs of points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ActionKind {
    OnPoints,
    OnOrderedPairs,
    OnUnorderedPairs,
}

/// Applies a permutation to an unordered pair, keeping it sorted.
pub fn apply_set2(g: &Permutation, pair: [u32; 2]) -> [u32; 2] {
    let a = g.apply(pair[0]);
    let b = g.apply(pair[1]);
    if a < b {
        [a, b]
    } else {
        [b, a]
    }
}
