//! Torsion width for finitely presented groups.
//!
//! The pipeline: a group presentation plus a cohomology class is twisted by a
//! finite-image representation, Fox calculus turns the presentation into a
//! matrix over the group ring, and Reidemeister torsion comes out as a ratio
//! of Laurent polynomial determinants over an exact field. The width of that
//! ratio (top exponent minus bottom exponent) bounds the Thurston norm of the
//! class from below, and equality is a certified detection.
//!
//! All arithmetic is exact: prime fields `F_q` or cyclotomic fields
//! `Q(zeta_n)` with rational coefficients. Nothing here floats.

pub mod algebra;
pub mod certificate;
pub mod graph;
pub mod group;
pub mod job;
pub mod rep;
pub mod run;
pub mod search;
pub mod torsion;
