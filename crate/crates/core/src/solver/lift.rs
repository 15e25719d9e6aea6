//! First-order lifting of approximate sections.
//!
//! A candidate lift of generator `g` from level `j` to level `j + 1` is
//! `A_g + p^j X_g` with `X_g` unknown over `F_p`. Because `p^(2j)` vanishes
//! mod `p^(j+1)`, every word in the lifts is affine in the unknowns, so each
//! relator contributes `n^2` affine equations over `F_p`.

use serde::{Deserialize, Serialize};

use super::linear::{minimize_certificate, solve_affine_fp, AffineSystemFp, Row, SolveOutcome};
use crate::error::{Error, Result};
use crate::fixtures::fixture;
use crate::group::{default_generators, SectionWitness};
use crate::matrix::MatrixZ;
use crate::presentation::{Presentation, Word};
use crate::residue::{add_mod, hensel_root, mul_mod, sub_mod, RingParams};

/// Column layout of the unknowns: one per generator per matrix entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LiftVariables {
    pub num_generators: usize,
    pub n: usize,
    pub p: u64,
}

impl LiftVariables {
    pub fn index(&self, generator: usize, row: usize, col: usize) -> usize {
        debug_assert!(generator < self.num_generators && row < self.n && col < self.n);
        generator * self.n * self.n + row * self.n + col
    }

    pub fn locate(&self, index: usize) -> (usize, usize, usize) {
        let n2 = self.n * self.n;
        (index / n2, (index % n2) / self.n, index % self.n)
    }

    pub fn len(&self) -> usize {
        self.num_generators * self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// `constant + p^j * linear(X)`, where `linear` holds one coefficient
/// vector over `F_p` per matrix entry.
#[derive(Clone)]
struct AffineMatrix {
    constant: MatrixZ,
    linear: Vec<Vec<u64>>,
}

struct Expander<'a> {
    vars: LiftVariables,
    forward: Vec<AffineMatrix>,
    backward: Vec<AffineMatrix>,
    identity: &'a MatrixZ,
}

impl<'a> Expander<'a> {
    fn new(base_lifts: &[MatrixZ], identity: &'a MatrixZ) -> Result<Self> {
        let n = identity.n();
        let p = identity.params().p();
        let vars = LiftVariables {
            num_generators: base_lifts.len(),
            n,
            p,
        };
        let mut forward = Vec::new();
        let mut backward = Vec::new();
        for (g, a) in base_lifts.iter().enumerate() {
            let mut x = vec![vec![0u64; vars.len()]; n * n];
            for (entry, coeffs) in x.iter_mut().enumerate() {
                coeffs[vars.index(g, entry / n, entry % n)] = 1;
            }
            let inv = a.inverse()?;
            // (A + p^j X)^-1 = A^-1 - p^j A^-1 X A^-1.
            let inv_p = inv.reduce_modulus(1)?;
            let neg = mul_linear_left(&inv_p, &mul_linear_right(&x, &inv_p, p), p)
                .into_iter()
                .map(|v| v.into_iter().map(|c| sub_mod(0, c, p)).collect())
                .collect();
            forward.push(AffineMatrix {
                constant: a.clone(),
                linear: x,
            });
            backward.push(AffineMatrix {
                constant: inv,
                linear: neg,
            });
        }
        Ok(Expander {
            vars,
            forward,
            backward,
            identity,
        })
    }

    fn evaluate(&self, w: &Word) -> Result<AffineMatrix> {
        let n = self.vars.n;
        let p = self.vars.p;
        let mut acc = AffineMatrix {
            constant: self.identity.clone(),
            linear: vec![vec![0u64; self.vars.len()]; n * n],
        };
        for &l in w.letters() {
            let g = l.unsigned_abs() as usize - 1;
            if g >= self.forward.len() {
                return Err(Error::BadPresentation(format!(
                    "relator {w} uses generator {} of {}",
                    g + 1,
                    self.forward.len()
                )));
            }
            let f = if l > 0 {
                &self.forward[g]
            } else {
                &self.backward[g]
            };
            // (M1 + p^j L1)(M2 + p^j L2) = M1 M2 + p^j (L1 M2 + M1 L2).
            let left = mul_linear_right(&acc.linear, &f.constant.reduce_modulus(1)?, p);
            let right = mul_linear_left(&acc.constant.reduce_modulus(1)?, &f.linear, p);
            acc = AffineMatrix {
                constant: acc.constant.mul(&f.constant)?,
                linear: add_linear(&left, &right, p),
            };
        }
        Ok(acc)
    }
}

/// `L * M` for `L` a matrix of coefficient vectors and `M` over `F_p`.
fn mul_linear_right(l: &[Vec<u64>], m: &MatrixZ, p: u64) -> Vec<Vec<u64>> {
    let n = m.n();
    let width = l[0].len();
    let mut out = vec![vec![0u64; width]; n * n];
    for i in 0..n {
        for j in 0..n {
            let dst = &mut out[i * n + j];
            for t in 0..n {
                let c = m.get(t, j) % p;
                if c == 0 {
                    continue;
                }
                for (d, &s) in dst.iter_mut().zip(&l[i * n + t]) {
                    *d = add_mod(*d, mul_mod(c, s, p), p);
                }
            }
        }
    }
    out
}

/// `M * L` for `M` over `F_p` and `L` a matrix of coefficient vectors.
fn mul_linear_left(m: &MatrixZ, l: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = m.n();
    let width = l[0].len();
    let mut out = vec![vec![0u64; width]; n * n];
    for i in 0..n {
        for j in 0..n {
            let dst = &mut out[i * n + j];
            for t in 0..n {
                let c = m.get(i, t) % p;
                if c == 0 {
                    continue;
                }
                for (d, &s) in dst.iter_mut().zip(&l[t * n + j]) {
                    *d = add_mod(*d, mul_mod(c, s, p), p);
                }
            }
        }
    }
    out
}

fn add_linear(a: &[Vec<u64>], b: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.iter().zip(y).map(|(&s, &t)| add_mod(s, t, p)).collect())
        .collect()
}

/// Equations over `F_p` for lifts `base_lifts[g] + p^level X_g` (entries of
/// `base_lifts` live mod `p^(level+1)`) to satisfy `lhs = rhs` for every
/// listed relation mod `p^(level+1)`. Rows are tagged with the relation
/// index and the matrix entry.
pub fn build_relation_system(
    base_lifts: &[MatrixZ],
    relations: &[(Word, Word)],
    level: u32,
) -> Result<AffineSystemFp> {
    let first = base_lifts
        .first()
        .ok_or_else(|| Error::BadGenerators("no base lifts".into()))?;
    let params = *first.params();
    if level == 0 || params.k() != level + 1 {
        return Err(Error::InvalidParams(format!(
            "base lifts must live mod p^(level+1); level {level}, k = {}",
            params.k()
        )));
    }
    if base_lifts.iter().any(|b| b.params() != &params) {
        return Err(Error::DimensionMismatch(
            "base lifts disagree in shape".into(),
        ));
    }
    let p = params.p();
    let n = params.n();
    let step = params.modulus() / p;
    let identity = MatrixZ::identity(params);
    let expander = Expander::new(base_lifts, &identity)?;
    let mut sys = AffineSystemFp::new(p, expander.vars.len());
    for (idx, (lhs, rhs)) in relations.iter().enumerate() {
        let u = expander.evaluate(lhs)?;
        let v = expander.evaluate(rhs)?;
        let diff = u.constant.sub(&v.constant)?;
        if diff.entries().iter().any(|&d| d % step != 0) {
            return Err(Error::BaseNotApproximateSection {
                relator: idx,
                level,
            });
        }
        for entry in 0..n * n {
            let c = diff.entries()[entry] / step;
            let coeffs = u.linear[entry]
                .iter()
                .zip(&v.linear[entry])
                .map(|(&a, &b)| sub_mod(a, b, p))
                .collect();
            sys.rows.push(Row {
                coeffs,
                rhs: sub_mod(0, c, p),
                relator: idx,
                entry: [entry / n, entry % n],
            });
        }
    }
    Ok(sys)
}

/// Reads a relator `w` as the relation `u = v` with `w = u v^-1`, where
/// `v^-1` is the trailing run of inverse letters. `a b a^-1 b^-1` becomes
/// `a b = b a`; a relator without inverse letters becomes `w = 1`.
pub fn relator_as_relation(w: &Word) -> (Word, Word) {
    let letters = w.letters();
    let split = letters.iter().rposition(|&l| l > 0).map_or(0, |i| i + 1);
    if split == 0 {
        return (w.clone(), Word::identity());
    }
    let u = Word::new(letters[..split].iter().copied()).expect("subword of a reduced word");
    let tail = Word::new(letters[split..].iter().copied()).expect("subword of a reduced word");
    (u, tail.inverse())
}

/// The lifting obstruction for a list of relators, each read through
/// [`relator_as_relation`]. The solution set equals that of
/// `w(lifts) = I` for every `w`.
pub fn build_obstruction_system(
    base_lifts: &[MatrixZ],
    relators: &[Word],
    level: u32,
) -> Result<AffineSystemFp> {
    let relations: Vec<(Word, Word)> = relators.iter().map(relator_as_relation).collect();
    build_relation_system(base_lifts, &relations, level)
}

/// A self-contained record of an inconsistent obstruction system: anyone can
/// rebuild the rows from `relators` and `base_lifts` and check the
/// multipliers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionCertificate {
    /// Ring of the base lifts; the unknowns sit at level `k - 1`.
    pub params: RingParams,
    pub relators: Vec<Word>,
    pub base_lifts: Vec<MatrixZ>,
    pub rows: Vec<Row>,
    pub multipliers: Vec<u64>,
}

/// Why a stored obstruction certificate was rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertificateFailure {
    /// Base lifts are malformed or a relator fails below the lifting level.
    BadBase,
    /// Stored rows differ from the rows rebuilt from relators and lifts.
    RowMismatch,
    /// The multipliers do not combine the rows into `0 = nonzero`.
    BadMultipliers,
}

impl ObstructionCertificate {
    pub fn level(&self) -> u32 {
        self.params.k() - 1
    }

    pub fn system(&self) -> AffineSystemFp {
        AffineSystemFp {
            p: self.params.p(),
            num_vars: self.base_lifts.len() * self.params.n() * self.params.n(),
            rows: self.rows.clone(),
        }
    }

    /// Rows with a nonzero multiplier.
    pub fn core_rows(&self) -> Vec<usize> {
        self.multipliers
            .iter()
            .enumerate()
            .filter(|(_, &m)| m % self.params.p() != 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// Re-derives every row and re-checks the multipliers. Stored rows are
    /// never trusted.
    pub fn check(&self) -> Result<(), CertificateFailure> {
        if self.params.k() < 2 || self.base_lifts.iter().any(|b| b.params() != &self.params) {
            return Err(CertificateFailure::BadBase);
        }
        let rebuilt = build_obstruction_system(&self.base_lifts, &self.relators, self.level())
            .map_err(|_| CertificateFailure::BadBase)?;
        if rebuilt.rows != self.rows {
            return Err(CertificateFailure::RowMismatch);
        }
        if !rebuilt.is_refuted_by(&self.multipliers) {
            return Err(CertificateFailure::BadMultipliers);
        }
        Ok(())
    }
}

/// Builds and solves the obstruction for `relators` on `base_lifts`.
/// Returns the solution's lifted images, or a minimized certificate.
pub fn solve_lift(
    base_lifts: &[MatrixZ],
    relators: &[Word],
    level: u32,
) -> Result<std::result::Result<Vec<MatrixZ>, ObstructionCertificate>> {
    let sys = build_obstruction_system(base_lifts, relators, level)?;
    let params = *base_lifts[0].params();
    match solve_affine_fp(&sys) {
        SolveOutcome::Solution(x) => {
            let n = params.n();
            let n2 = n * n;
            let step = params.modulus() / params.p();
            let lifted = base_lifts
                .iter()
                .enumerate()
                .map(|(g, base)| {
                    let offset = MatrixZ::from_fn(params, |i, j| {
                        (x[g * n2 + i * n + j] as i128) * step as i128
                    });
                    base.add(&offset)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Ok(lifted))
        }
        SolveOutcome::Inconsistency(m) => {
            let multipliers = minimize_certificate(&sys, &m);
            Ok(Err(ObstructionCertificate {
                params,
                relators: relators.to_vec(),
                base_lifts: base_lifts.to_vec(),
                rows: sys.rows,
                multipliers,
            }))
        }
    }
}

#[derive(Debug, Clone)]
pub enum LiftOutcome {
    Lifted(SectionWitness),
    Obstructed(ObstructionCertificate),
}

/// Lifts a witness from `Z/p^k` to `Z/p^(k+1)`, using the entrywise
/// representatives of the current images as base lifts. When `pres`
/// presents the group generated by the base generators, a solution is a
/// homomorphism again.
pub fn lift_section_step(witness: &SectionWitness, pres: &Presentation) -> Result<LiftOutcome> {
    let k = witness.params.k();
    let base_lifts = witness
        .generator_images
        .iter()
        .map(|m| m.lift_entries(k + 1))
        .collect::<Result<Vec<_>>>()?;
    if pres.num_generators() != base_lifts.len() {
        return Err(Error::BadPresentation(format!(
            "presentation has {} generators, witness has {}",
            pres.num_generators(),
            base_lifts.len()
        )));
    }
    Ok(match solve_lift(&base_lifts, pres.relators(), k)? {
        Ok(images) => LiftOutcome::Lifted(SectionWitness {
            params: witness.params.with_k(k + 1)?,
            base_generators: witness.base_generators.clone(),
            generator_images: images,
            presentation: Some(pres.clone()),
        }),
        Err(cert) => LiftOutcome::Obstructed(cert),
    })
}

/// Repeats [`lift_section_step`] until the witness reaches `Z/p^k_target`.
pub fn lift_to_level(
    witness: &SectionWitness,
    pres: &Presentation,
    k_target: u32,
) -> Result<LiftOutcome> {
    let mut current = witness.clone();
    while current.params.k() < k_target {
        match lift_section_step(&current, pres)? {
            LiftOutcome::Lifted(next) => current = next,
            obstructed => return Ok(obstructed),
        }
    }
    Ok(LiftOutcome::Lifted(current))
}

/// The section of `GL_3(F_2)` into `GL_3(Z/2^k)` sending the transvection
/// to `[[1, a, -a-1], [0, -1, 0], [0, 0, -1]]` and the 3-cycle to itself,
/// where `a` is the odd root of `a^2 + a + 2` mod `2^k`.
pub fn explicit_section_gl3_z2(k: u32) -> Result<SectionWitness> {
    let params = RingParams::new(2, 3, k)?;
    let a = hensel_root(2, 1, 1, 1, &params)?.value() as i64;
    let alpha = MatrixZ::from_rows(params, &[[1, a, -a - 1], [0, -1, 0], [0, 0, -1]])?;
    let beta = MatrixZ::from_rows(params, &[[0, 0, 1], [1, 0, 0], [0, 1, 0]])?;
    let fx = fixture("gl3z2")?;
    Ok(SectionWitness {
        params,
        base_generators: fx.generators,
        generator_images: vec![alpha, beta],
        presentation: Some(fx.relators),
    })
}

/// The trivial section at `k = 1` on the default generators.
pub fn identity_section(n: usize, p: u64) -> Result<SectionWitness> {
    let gens = default_generators(n, p)?;
    Ok(SectionWitness {
        params: RingParams::new(p, n, 1)?,
        base_generators: gens.clone(),
        generator_images: gens,
        presentation: None,
    })
}
