//! Exact construction and verification of color Lie (super)algebras, Lie
//! algebras of order F and color Lie algebras of order 3.
//!
//! All arithmetic happens in cyclotomic fields Q(ζ_L), so every identity is
//! checked exactly.

pub mod algebra;
pub mod constructions;
pub mod factor;
pub mod grading;
pub mod oscillator;
pub mod report;
pub mod scalar;
pub mod spec_file;
