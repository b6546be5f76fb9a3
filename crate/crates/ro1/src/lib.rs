//! Exact analysis of rank-one measure-preserving transformations described by
//! cutting and spacer parameters.
//!
//! A transformation is given by a cutting parameter `q_n > 1` and spacer
//! parameter `a_{n,i} >= 0` (`0 < i < q_n`), encoded here as a finite prefix of
//! stages plus an optional repeating tail ([`params::ParamSpec`]). On top of
//! that description the crate provides:
//!
//! - the generating-sequence word calculus over `{0,1}` ([`words`]): expansion,
//!   deterministic block parsing, the built-from relations, and occurrence
//!   counting without materialization;
//! - enumeration of the family of words the infinite rank-one word is built
//!   from, lattice meet/join, and the canonical generating sequence
//!   ([`lattice`]);
//! - decision procedures with machine-checkable certificates for trivial
//!   centralizer, total ergodicity, weak mixing and minimal self-joinings
//!   ([`decide`]);
//! - an exact-rational model of the cutting-and-stacking tower: base measures,
//!   return levels, level classification and the shift-overlap defect bound
//!   ([`tower`]).
//!
//! All integer arithmetic is arbitrary precision and all measures are exact
//! rationals; nothing is ever rounded. Every operation is a pure function of
//! immutable inputs and is safe to call concurrently.

pub mod decide;
pub mod fixtures;
pub mod lattice;
pub mod params;
pub mod tower;
pub mod words;

/// Default materialization cap, in symbols. Operations that would need to
/// materialize a longer word fail with a `CapExceeded` error reporting the
/// required length.
pub const DEFAULT_CAP: usize = 1 << 24;

pub use params::{HeightTable, ParamError, ParamSpec, RawSpec, RawStage, StageSpec};
pub use words::{Decomposition, Word, WordError, WordHandle, WordRelation};
