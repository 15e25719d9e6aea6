//! The lifting obstruction machine: affine systems over `F_p`, first-order
//! lifting of sections, and the block-corner reduction.

mod lemma;
mod lift;
mod linear;

pub use lemma::reduce_witness_lemma;
pub use lift::{
    build_obstruction_system, build_relation_system, explicit_section_gl3_z2, identity_section,
    lift_section_step, lift_to_level, relator_as_relation, solve_lift, CertificateFailure,
    LiftOutcome, LiftVariables, ObstructionCertificate,
};
pub use linear::{minimize_certificate, solve_affine_fp, AffineSystemFp, Row, SolveOutcome};
