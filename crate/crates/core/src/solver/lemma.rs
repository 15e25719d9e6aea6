//! Transport of sections to smaller matrix size and exponent.

use crate::error::{Error, Result};
use crate::group::{default_generators, section_group, verify_section, SectionWitness};
use crate::matrix::MatrixZ;

/// Turns a section at `(n, p, k)`, `k >= 2`, into a section at `(m, p, 2)`:
/// reduce the images mod `p^2`, embed each generator `g` of `GL_m(F_p)` as
/// `g (+) I`, take its unique preimage in the reduced complement, and project
/// that preimage onto its top-left `m x m` corner.
pub fn reduce_witness_lemma(witness: &SectionWitness, m: usize) -> Result<SectionWitness> {
    let params = witness.params;
    let n = params.n();
    if m == 0 || m > n {
        return Err(Error::InvalidParams(format!(
            "need 1 <= m <= n = {n}, got m = {m}"
        )));
    }
    if params.k() < 2 {
        return Err(Error::InvalidParams("lemma reduction needs k >= 2".into()));
    }
    let check = verify_section(witness)?;
    if !check.valid {
        return Err(Error::BadGenerators(format!(
            "input witness does not verify: {:?}",
            check.reason
        )));
    }
    let reduced = SectionWitness {
        params: params.with_k(2)?,
        base_generators: witness.base_generators.clone(),
        generator_images: witness
            .generator_images
            .iter()
            .map(|g| g.reduce_modulus(2))
            .collect::<Result<_>>()?,
        presentation: witness.presentation.clone(),
    };
    if m == n {
        return Ok(reduced);
    }
    let complement = section_group(&reduced)?;
    let base_generators = default_generators(m, params.p())?;
    let generator_images = base_generators
        .iter()
        .map(|g| {
            let target = g.block_embed(n)?;
            let preimage = complement
                .elements()
                .iter()
                .find(|h| h.reduce_modulus(1).is_ok_and(|r| r == target))
                .ok_or_else(|| Error::Internal("complement misses a residue class".into()))?;
            preimage.corner_project(m).map_err(|e| match e {
                Error::NotInHPrime { row, col } => Error::Internal(format!(
                    "preimage of an embedded generator leaves H' at ({row}, {col})"
                )),
                other => other,
            })
        })
        .collect::<Result<Vec<MatrixZ>>>()?;
    Ok(SectionWitness {
        params: params.with_k(2)?.with_n(m)?,
        base_generators,
        generator_images,
        presentation: None,
    })
}
