//! Exact computational algebra for odd form rings, their unitary groups and
//! Steinberg-type presentations over small finite rings.
//!
//! The crate builds the concrete symplectic and orthogonal odd form rings
//! attached to two-sorted coefficient pairs, the root-system bookkeeping of
//! type BC/B/C/F4, and relation-suite verifiers that evaluate every relation
//! family of the unitary and doubly laced Steinberg presentations inside
//! faithful finite targets.

pub mod zmod;
pub mod ring;
pub mod rootsys;
pub mod oddform;
pub mod pairs;
pub mod ofa;
pub mod checks;

#[cfg(test)]
mod smoke {
    #[test]
    fn workspace_builds() {}
}
