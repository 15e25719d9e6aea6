//! Nonexistence certificates: an obstruction at `(m, p, 2)` carried to
//! `(n, p, k)` by the block-corner reduction.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fixtures::{fixture, obstruction_fixture};
use crate::residue::RingParams;
use crate::solver::{solve_lift, CertificateFailure, ObstructionCertificate};

/// A section at `to` would restrict to a section at `from`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaStep {
    pub from: RingParams,
    pub to: RingParams,
}

impl LemmaStep {
    /// Same prime, `from` is `(m, p, 2)` with `m <= n`, and `to` has `k >= 2`.
    pub fn is_valid(&self) -> bool {
        self.from.p() == self.to.p()
            && self.from.k() == 2
            && self.from.n() <= self.to.n()
            && self.to.k() >= 2
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NoComplementCertificate {
    pub params: RingParams,
    /// Name of the relator fixture the obstruction was built from. Not
    /// trusted by [`NoComplementCertificate::check`].
    pub fixture: String,
    pub lemma: LemmaStep,
    pub obstruction: ObstructionCertificate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NoComplementFailure {
    Obstruction(CertificateFailure),
    /// The reduction chain does not connect the obstruction to `params`.
    BadLemmaStep,
}

impl NoComplementCertificate {
    pub fn check(&self) -> Result<(), NoComplementFailure> {
        if !self.lemma.is_valid()
            || self.lemma.to != self.params
            || self.lemma.from != self.obstruction.params
        {
            return Err(NoComplementFailure::BadLemmaStep);
        }
        self.obstruction
            .check()
            .map_err(NoComplementFailure::Obstruction)
    }
}

/// Builds the obstruction at `(m, p, 2)` from `fixture_name` (or the
/// shipped fixture for `p`) and attaches the reduction to `params`.
pub fn build_no_complement_certificate(
    params: &RingParams,
    fixture_name: Option<&str>,
) -> Result<NoComplementCertificate> {
    let fx = match fixture_name {
        Some(name) => fixture(name)?,
        None => obstruction_fixture(params.p()).ok_or_else(|| Error::NotCertifiable {
            n: params.n(),
            p: params.p(),
            k: params.k(),
            citation: crate::decide::PRIOR_WORK_CITATION.into(),
        })?,
    };
    let base = fx.params();
    if base.p() != params.p() || base.n() > params.n() || params.k() < 2 {
        return Err(Error::InvalidParams(format!(
            "fixture {} lives in GL_{}(F_{}) and cannot reach (n, p, k) = ({}, {}, {})",
            fx.name,
            base.n(),
            base.p(),
            params.n(),
            params.p(),
            params.k()
        )));
    }
    let lifts = fx
        .generators
        .iter()
        .map(|g| g.lift_entries(2))
        .collect::<Result<Vec<_>>>()?;
    match solve_lift(&lifts, fx.relators.relators(), 1)? {
        Ok(_) => Err(Error::Internal(format!(
            "fixture {} does not obstruct lifting",
            fx.name
        ))),
        Err(obstruction) => Ok(NoComplementCertificate {
            params: *params,
            fixture: fx.name.to_string(),
            lemma: LemmaStep {
                from: obstruction.params,
                to: *params,
            },
            obstruction,
        }),
    }
}
