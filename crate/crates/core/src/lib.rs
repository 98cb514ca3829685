//! Decision procedures for the Trotter-Weil hierarchy of finite monoids.
//!
//! The crate decides membership of finite monoids (and, through their
//! syntactic monoids, of regular languages) in the corners `R_m`, `L_m`, the
//! join levels `R_m ∨ L_m` and the intersection levels `R_m ∩ L_m`. Join
//! levels are decided by a single omega-term identity per level; corners are
//! decided both by identities and by towers of Mal'cev quotients, and the two
//! routes are cross-checked. Condensed rankers and unambiguous interval
//! temporal logic provide the combinatorial side.

pub mod error;
pub mod itl;
pub mod lang;
pub mod limits;
pub mod monoid;
pub mod omega;
pub mod ranker;
pub mod variety;
pub mod witness;

pub use error::{Error, Result};
pub use limits::Limits;
pub use monoid::{
    content, transition_monoid, Congruence, ElementId, MonFile, Monoid, Morphism, Transformation,
};
