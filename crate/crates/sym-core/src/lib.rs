//! Symmetric-group substrate: exact rationals, ħ-series, integer partitions,
//! permutations and irreducible characters.

pub mod character;
pub mod hbar;
pub mod partition;
pub mod permutation;
pub mod rational;

pub use character::{character, character_table, content_polynomial, CharacterTable};
pub use hbar::{HbarSeries, TruncationError, EXACT};
pub use partition::{partitions, partitions_with_length, Partition};
pub use permutation::Permutation;
pub use rational::{factorial, falling, int, parse_rational, rat, Rational, Ring};
