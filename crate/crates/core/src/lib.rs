//! Finite tense distributive lattices: algebras, dualities, congruence
//! theory, a degree-preserving sequent calculus, and Kripke-style frame
//! semantics, all constructive and exhaustively checkable at small scale.

pub mod algebra;
pub mod congruence;
pub mod duality;
pub mod kripke;
pub mod logic;
pub mod order;
pub mod samples;
