//! Complements of the congruence kernel `1 + J(R)` in the unit group of
//! `R = Mat_n(Z/p^k)`.
//!
//! The crate decides, for every `(n, p, k)`, whether reduction mod `p`
//! splits, and backs each answer with a machine-checkable object: an
//! explicit section (images of generators of `GL_n(F_p)` that generate a
//! complement) or an obstruction certificate (an inconsistent affine system
//! over `F_p`, with multipliers, plus the size/exponent reduction that
//! carries it to the requested parameters).

pub mod certificate;
pub mod decide;
pub mod error;
pub mod fixtures;
pub mod group;
pub mod matrix;
pub mod presentation;
pub mod residue;
pub mod selftest;
pub mod solver;

pub use error::{Error, Result};
pub use group::{
    closure, default_generators, find_complement_brute, gl_order, is_complement, unit_group_order,
    verify_section, MatrixGroup, SectionWitness,
};
pub use matrix::MatrixZ;
pub use presentation::{evaluate_word, todd_coxeter, verify_presentation, Presentation, Word};
pub use residue::{hensel_root, order_p_minus_1_element, ResidueInt, RingParams};
