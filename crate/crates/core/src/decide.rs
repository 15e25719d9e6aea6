//! Existence decisions with attached, independently checkable evidence.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::certificate::{build_no_complement_certificate, NoComplementCertificate};
use crate::error::{Error, Result};
use crate::fixtures::gl_presentation;
use crate::group::{
    default_generators, find_complement_brute_with_budget, kernel_order, verify_section,
    SectionWitness, DEFAULT_SEARCH_BUDGET,
};
use crate::matrix::MatrixZ;
use crate::presentation::{verify_presentation, Presentation, DEFAULT_MAX_COSETS};
use crate::residue::{order_p_minus_1_element, primitive_root, RingParams};
use crate::solver::{explicit_section_gl3_z2, lift_to_level, LiftOutcome};

pub const PRIOR_WORK_CITATION: &str =
    "Coleman and Easdown: no complement when p > 3, n >= 2, k >= 2";

/// The closed-form answer: a complement exists iff `k = 1`, `n = 1`,
/// `p = 2` with `n <= 3`, or `p = 3` with `n <= 2`.
pub fn complement_exists(n: usize, p: u64, k: u32) -> bool {
    k == 1 || n == 1 || (p == 2 && n <= 3) || (p == 3 && n <= 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Justification {
    TrivialK1,
    ScalarTeichmuller,
    ExplicitSection,
    BruteWitness,
    #[serde(rename = "ObstructionUNSAT+LemmaReduction")]
    ObstructionUnsatLemma,
    TheoremTable,
}

impl Justification {
    pub fn code(&self) -> &'static str {
        match self {
            Justification::TrivialK1 => "TrivialK1",
            Justification::ScalarTeichmuller => "ScalarTeichmuller",
            Justification::ExplicitSection => "ExplicitSection",
            Justification::BruteWitness => "BruteWitness",
            Justification::ObstructionUnsatLemma => "ObstructionUNSAT+LemmaReduction",
            Justification::TheoremTable => "TheoremTable",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// At `k = 1` the kernel is trivial, so the whole group is a complement.
    TrivialKernel {
        kernel_order: u128,
    },
    Witness {
        witness: SectionWitness,
    },
    Certificate {
        certificate: NoComplementCertificate,
    },
}

impl Evidence {
    /// Re-checks the evidence against `params` from scratch.
    pub fn verify(&self, params: &RingParams) -> Result<bool> {
        Ok(match self {
            Evidence::TrivialKernel {
                kernel_order: claimed,
            } => *claimed == 1 && kernel_order(params)? == 1,
            Evidence::Witness { witness } => {
                witness.params == *params && verify_section(witness)?.valid
            }
            Evidence::Certificate { certificate } => {
                certificate.params == *params && certificate.check().is_ok()
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decision {
    pub params: RingParams,
    pub exists: bool,
    pub justification: Justification,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub citation: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub evidence: Option<Evidence>,
}

impl Decision {
    pub fn summary(&self) -> String {
        format!(
            "n={} p={} k={}: {} ({})",
            self.params.n(),
            self.params.p(),
            self.params.k(),
            if self.exists {
                "complement exists"
            } else {
                "no complement"
            },
            self.justification.code()
        )
    }
}

/// Search and enumeration limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProverConfig {
    pub max_cosets: usize,
    pub search_budget: u64,
}

impl Default for ProverConfig {
    fn default() -> Self {
        ProverConfig {
            max_cosets: DEFAULT_MAX_COSETS,
            search_budget: DEFAULT_SEARCH_BUDGET,
        }
    }
}

/// Builds witnesses and certificates, caching brute-force witnesses per
/// `(n, p)` and the certified presentations they are lifted along.
#[derive(Debug, Default)]
pub struct Prover {
    config: ProverConfig,
    brute: HashMap<(usize, u64), SectionWitness>,
    presentations: HashMap<(usize, u64), Presentation>,
}

impl Prover {
    pub fn new(config: ProverConfig) -> Self {
        Prover {
            config,
            ..Prover::default()
        }
    }

    pub fn config(&self) -> &ProverConfig {
        &self.config
    }

    pub fn decide(&mut self, params: &RingParams) -> Result<Decision> {
        let (n, p, k) = (params.n(), params.p(), params.k());
        let exists = complement_exists(n, p, k);
        let mut decision = Decision {
            params: *params,
            exists,
            justification: Justification::TheoremTable,
            citation: None,
            evidence: None,
        };
        if k == 1 {
            decision.justification = Justification::TrivialK1;
            decision.evidence = Some(Evidence::TrivialKernel {
                kernel_order: kernel_order(params)?,
            });
        } else if exists {
            let witness = self.witness(params)?;
            decision.justification = match (n, p) {
                (1, _) => Justification::ScalarTeichmuller,
                (3, 2) => Justification::ExplicitSection,
                _ => Justification::BruteWitness,
            };
            decision.evidence = Some(Evidence::Witness { witness });
        } else if p <= 3 {
            decision.justification = Justification::ObstructionUnsatLemma;
            decision.evidence = Some(Evidence::Certificate {
                certificate: build_no_complement_certificate(params, None)?,
            });
        } else {
            decision.citation = Some(PRIOR_WORK_CITATION.into());
        }
        Ok(decision)
    }

    /// A verified section for `params`, or `NoComplement`.
    pub fn witness(&mut self, params: &RingParams) -> Result<SectionWitness> {
        let (n, p, k) = (params.n(), params.p(), params.k());
        if !complement_exists(n, p, k) {
            return Err(Error::NoComplement { n, p, k });
        }
        if n == 1 {
            return scalar_witness(params);
        }
        if k == 1 {
            let gens = default_generators(n, p)?;
            return Ok(SectionWitness {
                params: *params,
                base_generators: gens.clone(),
                generator_images: gens,
                presentation: None,
            });
        }
        if (n, p) == (3, 2) {
            return explicit_section_gl3_z2(k);
        }
        let base = self.brute_witness(n, p)?;
        if k == 2 {
            return Ok(base);
        }
        let pres = self.presentation(n, p)?;
        match lift_to_level(&base, &pres, k)? {
            LiftOutcome::Lifted(w) => Ok(w),
            LiftOutcome::Obstructed(cert) => Err(Error::Internal(format!(
                "lifting a section of GL_{n}(F_{p}) was obstructed at level {}",
                cert.level()
            ))),
        }
    }

    pub fn certify_no(
        &mut self,
        params: &RingParams,
        fixture: Option<&str>,
    ) -> Result<NoComplementCertificate> {
        let (n, p, k) = (params.n(), params.p(), params.k());
        if complement_exists(n, p, k) {
            return Err(Error::ComplementExists { n, p, k });
        }
        if p > 3 && fixture.is_none() {
            return Err(Error::NotCertifiable {
                n,
                p,
                k,
                citation: PRIOR_WORK_CITATION.into(),
            });
        }
        build_no_complement_certificate(params, fixture)
    }

    /// Decisions for every `1 <= n <= n_max`, `p` in `primes`,
    /// `1 <= k <= k_max`, in that nesting order.
    pub fn table(&mut self, n_max: usize, primes: &[u64], k_max: u32) -> Result<Vec<Decision>> {
        let cells: Vec<RingParams> = primes
            .iter()
            .flat_map(|&p| (1..=n_max).flat_map(move |n| (1..=k_max).map(move |k| (p, n, k))))
            .map(|(p, n, k)| RingParams::new(p, n, k))
            .collect::<Result<_>>()?;
        // Warm the per-(n, p) caches serially so cells can run in parallel.
        for c in &cells {
            let (n, p) = (c.n(), c.p());
            if c.k() >= 2 && n >= 2 && complement_exists(n, p, 2) && (n, p) != (3, 2) {
                self.brute_witness(n, p)?;
                self.presentation(n, p)?;
            }
        }
        let shared = &*self;
        cells
            .par_iter()
            .map(|c| shared.clone_caches().decide(c))
            .collect()
    }

    fn clone_caches(&self) -> Prover {
        Prover {
            config: self.config,
            brute: self.brute.clone(),
            presentations: self.presentations.clone(),
        }
    }

    fn brute_witness(&mut self, n: usize, p: u64) -> Result<SectionWitness> {
        if let Some(w) = self.brute.get(&(n, p)) {
            return Ok(w.clone());
        }
        let params = RingParams::new(p, n, 2)?;
        let gens = match gl_presentation(n, p) {
            Some(f) => f.generators,
            None => default_generators(n, p)?,
        };
        let w = find_complement_brute_with_budget(&params, &gens, self.config.search_budget)?
            .ok_or_else(|| {
                Error::Internal(format!("brute search found no section for ({n}, {p}, 2)"))
            })?;
        self.brute.insert((n, p), w.clone());
        Ok(w)
    }

    fn presentation(&mut self, n: usize, p: u64) -> Result<Presentation> {
        if let Some(pres) = self.presentations.get(&(n, p)) {
            return Ok(pres.clone());
        }
        let fx = gl_presentation(n, p).ok_or_else(|| {
            Error::BadPresentation(format!("no presentation of GL_{n}(F_{p}) ships"))
        })?;
        if !verify_presentation(&fx.relators, &fx.generators, self.config.max_cosets)? {
            return Err(Error::Internal(format!(
                "fixture {} is not faithful",
                fx.name
            )));
        }
        self.presentations.insert((n, p), fx.relators.clone());
        Ok(fx.relators)
    }
}

/// `[[g]]` over `Z/p^k` for a primitive root `g` mod `p`, mapped to its
/// `g^(p^(k-1))`, the Teichmuller lift.
fn scalar_witness(params: &RingParams) -> Result<SectionWitness> {
    let residue = params.with_k(1)?;
    let g = primitive_root(params.p());
    let t = order_p_minus_1_element(params);
    Ok(SectionWitness {
        params: *params,
        base_generators: vec![MatrixZ::from_fn(residue, |_, _| g as i128)],
        generator_images: vec![MatrixZ::from_fn(*params, |_, _| t.value() as i128)],
        presentation: None,
    })
}

pub fn decide(params: &RingParams) -> Result<Decision> {
    Prover::default().decide(params)
}

pub fn witness(params: &RingParams) -> Result<SectionWitness> {
    Prover::default().witness(params)
}

pub fn certify_no(params: &RingParams) -> Result<NoComplementCertificate> {
    Prover::default().certify_no(params, None)
}

pub fn table(n_max: usize, primes: &[u64], k_max: u32) -> Result<Vec<Decision>> {
    Prover::default().table(n_max, primes, k_max)
}

/// What a JSON artifact turned out to be, and whether it checks out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub kind: ArtifactKind,
    pub valid: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArtifactKind {
    Witness,
    ObstructionCertificate,
    NoComplementCertificate,
    Decision,
}

/// Parses a witness, an obstruction certificate, a no-complement
/// certificate or a decision, and re-checks it without trusting any stored
/// verdict.
pub fn verify_artifact(json: &str) -> Result<VerifyReport> {
    let value: serde_json::Value = serde_json::from_str(json)?;
    let has = |key: &str| value.get(key).is_some();
    let report = |kind, failure: Option<String>| VerifyReport {
        kind,
        valid: failure.is_none(),
        reason: failure,
    };
    if has("generator_images") {
        let w: SectionWitness = serde_json::from_value(value)?;
        let check = verify_section(&w)?;
        Ok(report(
            ArtifactKind::Witness,
            check.reason.map(|r| format!("{r:?}")),
        ))
    } else if has("obstruction") {
        let c: NoComplementCertificate = serde_json::from_value(value)?;
        Ok(report(
            ArtifactKind::NoComplementCertificate,
            c.check().err().map(|r| format!("{r:?}")),
        ))
    } else if has("multipliers") {
        let c: crate::solver::ObstructionCertificate = serde_json::from_value(value)?;
        Ok(report(
            ArtifactKind::ObstructionCertificate,
            c.check().err().map(|r| format!("{r:?}")),
        ))
    } else if has("justification") {
        let d: Decision = serde_json::from_value(value)?;
        let (n, p, k) = (d.params.n(), d.params.p(), d.params.k());
        let failure = if d.exists != complement_exists(n, p, k) {
            Some("exists disagrees with the closed-form answer".to_string())
        } else {
            match &d.evidence {
                Some(e) if !e.verify(&d.params)? => Some("attached evidence fails".into()),
                Some(Evidence::Witness { .. }) if !d.exists => {
                    Some("witness attached to a negative answer".into())
                }
                Some(Evidence::Certificate { .. }) if d.exists => {
                    Some("certificate attached to a positive answer".into())
                }
                None if d.justification != Justification::TheoremTable => {
                    Some("computational justification without evidence".into())
                }
                _ => None,
            }
        };
        Ok(report(ArtifactKind::Decision, failure))
    } else {
        Err(Error::Parse(
            "expected a witness, certificate or decision object".into(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: usize, p: u64, k: u32) -> RingParams {
        RingParams::new(p, n, k).unwrap()
    }

    #[test]
    fn closed_form() {
        assert!(complement_exists(7, 7, 1));
        assert!(complement_exists(1, 7, 9));
        assert!(complement_exists(3, 2, 5));
        assert!(!complement_exists(4, 2, 2));
        assert!(complement_exists(2, 3, 2));
        assert!(!complement_exists(3, 3, 2));
        assert!(!complement_exists(2, 5, 2));
    }

    #[test]
    fn decide_examples() {
        let d = decide(&params(3, 2, 5)).unwrap();
        assert!(d.exists);
        assert_eq!(d.justification, Justification::ExplicitSection);
        let d = decide(&params(2, 3, 2)).unwrap();
        assert!(d.exists);
        assert_eq!(d.justification, Justification::BruteWitness);
        let d = decide(&params(7, 3, 4)).unwrap();
        assert!(!d.exists);
        assert_eq!(d.justification, Justification::ObstructionUnsatLemma);
        let Some(Evidence::Certificate { certificate }) = &d.evidence else {
            panic!("expected a certificate");
        };
        assert_eq!(certificate.lemma.from, params(3, 3, 2));
        assert!(d.evidence.as_ref().unwrap().verify(&d.params).unwrap());
        let d = decide(&params(2, 5, 2)).unwrap();
        assert!(!d.exists);
        assert_eq!(d.justification, Justification::TheoremTable);
        assert!(d.citation.is_some() && d.evidence.is_none());
    }

    #[test]
    fn witness_examples() {
        let w = witness(&params(3, 2, 3)).unwrap();
        assert_eq!(w.generator_images[0].get(0, 1), 5);
        let w = witness(&params(1, 5, 2)).unwrap();
        assert_eq!(w.generator_images[0].rows(), vec![vec![7]]);
        assert!(verify_section(&w).unwrap().valid);
        assert_eq!(
            witness(&params(4, 2, 2)),
            Err(Error::NoComplement { n: 4, p: 2, k: 2 })
        );
    }

    #[test]
    fn certify_no_examples() {
        let c = certify_no(&params(3, 3, 2)).unwrap();
        assert_eq!(c.fixture, "prop1-p3");
        assert_eq!(c.check(), Ok(()));
        let c = certify_no(&params(4, 2, 2)).unwrap();
        assert_eq!(c.obstruction.core_rows().len(), 8);
        assert_eq!(
            certify_no(&params(2, 2, 2)),
            Err(Error::ComplementExists { n: 2, p: 2, k: 2 })
        );
        assert!(matches!(
            certify_no(&params(3, 5, 2)),
            Err(Error::NotCertifiable { .. })
        ));
    }

    #[test]
    fn verify_round_trips() {
        let w = witness(&params(3, 2, 4)).unwrap();
        let json = serde_json::to_string(&w).unwrap();
        assert!(verify_artifact(&json).unwrap().valid);

        let mut bad = w;
        let m = &bad.generator_images[0];
        bad.generator_images[0] = MatrixZ::from_fn(*m.params(), |i, j| {
            m.get(i, j) as i128 + ((i, j) == (0, 1)) as i128
        });
        let report = verify_artifact(&serde_json::to_string(&bad).unwrap()).unwrap();
        assert!(!report.valid);

        let c = certify_no(&params(3, 3, 5)).unwrap();
        let report = verify_artifact(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(report.kind, ArtifactKind::NoComplementCertificate);
        assert!(report.valid);
        let report = verify_artifact(&serde_json::to_string(&c.obstruction).unwrap()).unwrap();
        assert_eq!(report.kind, ArtifactKind::ObstructionCertificate);
        assert!(report.valid);

        let d = decide(&params(2, 2, 3)).unwrap();
        assert!(
            verify_artifact(&serde_json::to_string(&d).unwrap())
                .unwrap()
                .valid
        );
        let mut lie = d;
        lie.exists = false;
        assert!(
            !verify_artifact(&serde_json::to_string(&lie).unwrap())
                .unwrap()
                .valid
        );

        assert!(matches!(
            verify_artifact("{\"x\": 1}"),
            Err(Error::Parse(_))
        ));
        assert!(matches!(verify_artifact("not json"), Err(Error::Parse(_))));
    }

    #[test]
    fn small_table() {
        let rows = table(4, &[2, 3, 5], 3).unwrap();
        assert_eq!(rows.len(), 36);
        for d in &rows {
            let (n, p, k) = (d.params.n(), d.params.p(), d.params.k());
            assert_eq!(d.exists, complement_exists(n, p, k));
            if let Some(e) = &d.evidence {
                assert!(e.verify(&d.params).unwrap(), "{}", d.summary());
            }
        }
        let ones = table(1, &[2, 3, 5], 3).unwrap();
        assert!(ones.iter().all(|d| d.exists));
        let k1 = table(4, &[2, 3, 5], 1).unwrap();
        assert!(k1
            .iter()
            .all(|d| d.exists && d.justification == Justification::TrivialK1));
    }
}
