//! Deciding density of languages accepted by one-way nondeterministic Turing
//! machines whose read/write worktape is reversal-bounded.
//!
//! A language `L` over `Σ` is *dense* when every word of `Σ*` occurs as an
//! infix of some word of `L`. The decision runs through the *store language*
//! of the machine (all `state · tape` snapshots that occur on accepting
//! computations), which is regular for reversal-bounded worktapes.
//!
//! Module map:
//!
//! - [`alphabet`], [`nfa`]: finite automata over explicit alphabets.
//! - [`tm`]: the worktape machine, its step relation and bounded engines.
//! - [`aux`]: pushdown, queue, stack, flip-pushdown and multi-stack machines.
//! - [`text`]: the line-oriented machine description format.
//! - [`compile`]: translations of the auxiliary models into worktape machines.
//! - [`store`]: store-language construction and its oracle harness.
//! - [`density`]: the density decision itself.
//! - [`gadgets`]: undecidability reduction gadgets as executable fixtures.
//! - [`fixtures`]: small machines with analytically known behaviour.

pub mod alphabet;
pub mod aux;
pub mod compile;
pub mod density;
pub mod error;
pub mod fixtures;
pub mod gadgets;
pub mod nfa;
pub mod store;
pub mod text;
pub mod tm;

pub use alphabet::{Alphabet, Sym, Word};
pub use error::{Error, Result};
pub use nfa::{Dfa, Nfa};
pub use tm::{Configuration, Limits, Move, Outcome, WorktapeTm};

/// Blank tape symbol.
pub const BLANK: &str = "_";
/// Head marker written into tape words.
pub const HEAD: &str = "^";
