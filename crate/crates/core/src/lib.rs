//! Enumeration of generalized numerical semigroups (finite-complement
//! submonoids of ℕ^d) up to coordinate-permutation isomorphism.
//!
//! The crate is organised bottom-up:
//!
//! - [`point`] and [`order`]: points of ℕ^d, the permutation action and the
//!   relaxed monomial orders `lex`, `glex` and `order1`;
//! - [`gns`]: gap-set semigroups with generators, pseudo-Frobenius
//!   elements, special gaps and order statistics;
//! - [`canonical`]: representatives, equivariance and isomorphism tests;
//! - [`trees`]: the four child rules and a level-synchronous traversal
//!   engine with parallel expansion and checkpoints;
//! - [`counting`]: count tables and the span/stabilization identities;
//! - [`oracle`]: brute-force references for small genus.

pub mod canonical;
mod clock;
pub mod counting;
pub mod error;
pub mod gns;
pub mod oracle;
pub mod order;
pub mod point;
pub mod trees;

pub use canonical::{RepFilter, RepVerdict};
pub use error::{GnsError, Result};
pub use gns::GapSemigroup;
pub use order::{BaseOrder, OrderSpec};
pub use point::{Permutation, Point, MAX_DIM};
