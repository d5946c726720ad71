//! The game of best choice on pattern-avoiding interview orders.
//!
//! Interview orders are permutations; a class is the set of permutations
//! avoiding some patterns. The crate computes exact win probabilities for
//! strike, trigger, positional and threshold strategies, either by counting
//! over a materialized prefix tree or through ballot-number closed forms.

pub mod bijections;
pub mod class;
pub mod closed_form;
pub mod error;
pub mod numbers;
pub mod optimize;
pub mod perm;
pub mod strategy;
pub mod tally;
pub mod tree;

pub use class::{KnownClass, Limits, PatternClass};
pub use error::{Error, Result};
pub use perm::Permutation;
pub use tally::{ExactRational, Tally};
pub use tree::{PrefixTree, StrikeSet};
