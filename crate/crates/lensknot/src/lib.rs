//! Combinatorics of grid number one Legendrian knots in lens spaces.
//!
//! Starting from the triple (p, q, h) describing a grid number one diagram
//! for a knot in L(p,q), this crate builds the labeled Lagrangian diagram
//! of its special front — crossings, exact chord lengths, complementary
//! regions with areas and defects, capping paths and gradings — models the
//! lifted diagram in the covering three-sphere, enumerates the N- and
//! S-loops that carry the b-only boundary words of the differential, and
//! decides augmentation existence by the even-special-disc criterion.
//!
//! Everything is exact: lengths, areas, defects, and gradings are rationals
//! with denominator dividing p, and loop counts are verified against both a
//! closed recursion and a brute-force subsequence oracle.
//!
//! The headline results it reproduces, for odd p:
//!
//! * K(p, p-1, 1) has vanishing differential and exactly two augmentations;
//! * K(p, p-1, 2) admits an augmentation iff p ≡ 3 or 9 (mod 12).

pub mod dga;
pub mod error;
pub mod lagrangian;
pub mod lens_arith;
pub mod loops;
pub mod rational;
pub mod selftest;

pub use error::{KnotError, Result};
pub use lens_arith::{ChordKind, GridOneSpec, LensParams};
pub use rational::Frac;
