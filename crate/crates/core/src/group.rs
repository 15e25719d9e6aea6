//! Finite matrix groups inside `GL_n(Z/p^k)`: closure, orders, complement
//! predicates, section witnesses and brute-force section search.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::MatrixZ;
use crate::presentation::{evaluate_word, Presentation};
use crate::residue::{checked_pow, multiplicative_order, primitive_root, RingParams};

/// Largest group the closure routines will materialise.
pub const MAX_CLOSURE: usize = 1 << 22;

/// Hash key of a matrix: its entries packed into a `u128` as fixed-width
/// base-`2^b` digits, or the raw entries when they do not fit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) enum ElementKey {
    Packed(u128),
    Wide(Box<[u64]>),
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct KeyPacker {
    bits: u32,
    fits: bool,
}

impl KeyPacker {
    pub(crate) fn new(params: &RingParams) -> Self {
        let bits = 64 - (params.modulus() - 1).leading_zeros().min(63);
        let total = bits * (params.n() * params.n()) as u32;
        KeyPacker {
            bits,
            fits: total <= 128,
        }
    }

    pub(crate) fn pack(&self, m: &MatrixZ) -> ElementKey {
        if self.fits {
            ElementKey::Packed(
                m.entries()
                    .iter()
                    .fold(0u128, |acc, &e| (acc << self.bits) | e as u128),
            )
        } else {
            ElementKey::Wide(m.entries().into())
        }
    }
}

/// A finite subgroup of `GL_n(Z/p^k)` with all elements materialised.
#[derive(Debug, Clone)]
pub struct MatrixGroup {
    params: RingParams,
    generators: Vec<MatrixZ>,
    elements: Vec<MatrixZ>,
    index: HashMap<ElementKey, usize>,
    packer: KeyPacker,
}

impl MatrixGroup {
    pub fn params(&self) -> &RingParams {
        &self.params
    }

    pub fn generators(&self) -> &[MatrixZ] {
        &self.generators
    }

    /// Elements in breadth-first discovery order; the identity comes first.
    pub fn elements(&self) -> &[MatrixZ] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, m: &MatrixZ) -> bool {
        m.params() == &self.params && self.index.contains_key(&self.packer.pack(m))
    }

    /// Elements other than `I` lying in `1 + J(R)`.
    pub fn kernel_elements(&self) -> impl Iterator<Item = &MatrixZ> {
        self.elements
            .iter()
            .filter(|m| m.in_kernel_subgroup() && !m.is_identity())
    }
}

/// Result of a closure run that may stop early.
#[derive(Debug, Clone)]
pub enum ClosureOutcome {
    Complete(MatrixGroup),
    /// The running element count passed the bound.
    Aborted {
        reached: usize,
    },
    /// The guard predicate rejected an element.
    Rejected {
        element: MatrixZ,
    },
}

impl ClosureOutcome {
    pub fn complete(self) -> Option<MatrixGroup> {
        match self {
            ClosureOutcome::Complete(g) => Some(g),
            _ => None,
        }
    }
}

/// The subgroup generated by `generators`, or `Aborted` once more than
/// `abort_above` elements have been found.
pub fn closure(generators: &[MatrixZ], abort_above: Option<usize>) -> Result<ClosureOutcome> {
    closure_guarded(generators, abort_above, |_| false)
}

/// Breadth-first orbit of `I` under right multiplication by the generators.
/// `reject` is checked on every new element.
pub fn closure_guarded(
    generators: &[MatrixZ],
    abort_above: Option<usize>,
    reject: impl Fn(&MatrixZ) -> bool,
) -> Result<ClosureOutcome> {
    let first = generators
        .first()
        .ok_or_else(|| Error::BadGenerators("empty generating set".into()))?;
    let params = *first.params();
    if let Some(g) = generators.iter().find(|g| g.params() != &params) {
        return Err(Error::DimensionMismatch(format!(
            "{} vs {}",
            params,
            g.params()
        )));
    }
    if !generators.iter().all(MatrixZ::is_invertible) {
        return Err(Error::NotInvertible);
    }
    let packer = KeyPacker::new(&params);
    let limit = abort_above.unwrap_or(MAX_CLOSURE).min(MAX_CLOSURE);

    let identity = MatrixZ::identity(params);
    let mut index = HashMap::new();
    index.insert(packer.pack(&identity), 0);
    let mut elements = vec![identity];
    let mut head = 0;
    while head < elements.len() {
        for g in generators {
            let next = elements[head].mul_unchecked(g);
            let key = packer.pack(&next);
            if index.contains_key(&key) {
                continue;
            }
            if reject(&next) {
                return Ok(ClosureOutcome::Rejected { element: next });
            }
            index.insert(key, elements.len());
            elements.push(next);
            if elements.len() > limit {
                if abort_above.is_none() {
                    return Err(Error::Overflow("closure size"));
                }
                return Ok(ClosureOutcome::Aborted {
                    reached: elements.len(),
                });
            }
        }
        head += 1;
    }
    Ok(ClosureOutcome::Complete(MatrixGroup {
        params,
        generators: generators.to_vec(),
        elements,
        index,
        packer,
    }))
}

/// `|GL_n(F_p)| = prod_{i<n} (p^n - p^i)`.
pub fn gl_order(n: usize, p: u64) -> Result<u128> {
    let pn = checked_pow(p, n as u32).ok_or(Error::Overflow("p^n"))? as u128;
    (0..n).try_fold(1u128, |acc, i| {
        let pi = checked_pow(p, i as u32).ok_or(Error::Overflow("p^i"))? as u128;
        acc.checked_mul(pn - pi)
            .ok_or(Error::Overflow("|GL_n(F_p)|"))
    })
}

/// `|1 + J(R)| = p^((k-1) n^2)`.
pub fn kernel_order(params: &RingParams) -> Result<u128> {
    let exp = (params.k() - 1) as u128 * (params.n() * params.n()) as u128;
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc
            .checked_mul(params.p() as u128)
            .ok_or(Error::Overflow("|1 + J(R)|"))?;
    }
    Ok(acc)
}

/// `|G(R)| = |1 + J(R)| * |GL_n(F_p)|`, since reduction mod `p` is onto with
/// kernel `1 + J(R)`.
pub fn unit_group_order(params: &RingParams) -> Result<u128> {
    kernel_order(params)?
        .checked_mul(gl_order(params.n(), params.p())?)
        .ok_or(Error::Overflow("|G(R)|"))
}

/// Complement test via the order criterion: `H` meets the kernel trivially
/// and `|H| = |GL_n(F_p)|`.
pub fn is_complement(h: &MatrixGroup) -> bool {
    let Ok(target) = gl_order(h.params().n(), h.params().p()) else {
        return false;
    };
    h.order() as u128 == target && h.kernel_elements().next().is_none()
}

/// Every invertible matrix of `Mat_n(Z/p^k)`, by exhaustive scan.
pub fn enumerate_unit_group(params: &RingParams) -> Result<Vec<MatrixZ>> {
    let total = checked_pow(params.modulus(), (params.n() * params.n()) as u32)
        .filter(|&t| t <= 1 << 26)
        .ok_or(Error::Overflow("matrix ring size"))?;
    let n2 = params.n() * params.n();
    let m = params.modulus();
    let units: Vec<MatrixZ> = (0..total)
        .into_par_iter()
        .filter_map(|mut code| {
            let mut entries = vec![0u64; n2];
            for e in entries.iter_mut().rev() {
                *e = code % m;
                code /= m;
            }
            let a = MatrixZ::from_raw(*params, entries);
            a.is_invertible().then_some(a)
        })
        .collect();
    Ok(units)
}

/// Complement test by full enumeration of `G(R)`: every unit `g` must
/// factor uniquely as `h * j` with `h` in `H` and `j` in `1 + J(R)`, which
/// holds iff exactly one element of `H` reduces to `g mod p`.
pub fn is_complement_exhaustive(h: &MatrixGroup) -> Result<bool> {
    let params = *h.params();
    let residue_params = params.with_k(1)?;
    let packer = KeyPacker::new(&residue_params);
    let mut fibres: HashMap<ElementKey, usize> = HashMap::new();
    for x in h.elements() {
        *fibres
            .entry(packer.pack(&x.reduce_modulus(1)?))
            .or_default() += 1;
    }
    let units = enumerate_unit_group(&params)?;
    let all_unique = units.iter().all(|g| {
        let key = packer.pack(&g.reduce_modulus(1).expect("k >= 1"));
        fibres.get(&key) == Some(&1)
    });
    Ok(all_unique && fibres.len() as u128 == gl_order(params.n(), params.p())?)
}

/// A candidate section: images in `GL_n(Z/p^k)` of generators of `GL_n(F_p)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionWitness {
    pub params: RingParams,
    pub base_generators: Vec<MatrixZ>,
    pub generator_images: Vec<MatrixZ>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presentation: Option<Presentation>,
}

/// Why a witness failed to verify.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SectionFailure {
    /// An image does not reduce to its base generator, or shapes disagree.
    BadReduction,
    /// An attached relator does not vanish on the images.
    RelatorFailure,
    /// The generated group contains a non-identity kernel element.
    KernelIntersection,
    /// The generated group does not have order `|GL_n(F_p)|`.
    WrongOrder,
}

/// Outcome of [`verify_section`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionCheck {
    pub valid: bool,
    pub reason: Option<SectionFailure>,
    /// Order of the generated group when the closure completed.
    pub order: Option<usize>,
}

impl SectionCheck {
    fn fail(reason: SectionFailure) -> Self {
        SectionCheck {
            valid: false,
            reason: Some(reason),
            order: None,
        }
    }
}

/// Checks that the images generate a complement of `1 + J(R)` lifting the
/// base generators.
pub fn verify_section(w: &SectionWitness) -> Result<SectionCheck> {
    use SectionFailure::*;
    let params = w.params;
    let residue = params.with_k(1)?;
    if w.generator_images.is_empty()
        || w.generator_images.len() != w.base_generators.len()
        || w.generator_images.iter().any(|g| g.params() != &params)
        || w.base_generators.iter().any(|g| g.params() != &residue)
    {
        return Ok(SectionCheck::fail(BadReduction));
    }
    for (img, base) in w.generator_images.iter().zip(&w.base_generators) {
        if &img.reduce_modulus(1)? != base {
            return Ok(SectionCheck::fail(BadReduction));
        }
    }
    if let Some(pres) = &w.presentation {
        if pres.num_generators() != w.generator_images.len() {
            return Ok(SectionCheck::fail(RelatorFailure));
        }
        for r in pres.relators() {
            if !evaluate_word(r, &w.generator_images)?.is_identity() {
                return Ok(SectionCheck::fail(RelatorFailure));
            }
        }
    }
    let target = gl_order(params.n(), params.p())?;
    if target > MAX_CLOSURE as u128 {
        return Err(Error::Overflow("closure size"));
    }
    let outcome = closure_guarded(&w.generator_images, Some(target as usize), |m| {
        m.in_kernel_subgroup()
    })?;
    Ok(match outcome {
        ClosureOutcome::Rejected { .. } => SectionCheck::fail(KernelIntersection),
        ClosureOutcome::Aborted { .. } => SectionCheck::fail(WrongOrder),
        ClosureOutcome::Complete(g) if g.order() as u128 != target => SectionCheck {
            valid: false,
            reason: Some(WrongOrder),
            order: Some(g.order()),
        },
        ClosureOutcome::Complete(g) => SectionCheck {
            valid: true,
            reason: None,
            order: Some(g.order()),
        },
    })
}

/// The generated group of a verified witness.
pub fn section_group(w: &SectionWitness) -> Result<MatrixGroup> {
    closure(&w.generator_images, None)?
        .complete()
        .ok_or(Error::Overflow("closure size"))
}

/// A generating set of `GL_n(F_p)`: the transvection `I + E_12` and the
/// cyclic permutation `e_i -> e_(i+1)` generate `SL_n` together with a
/// matrix of determinant `-1`; a diagonal `diag(g, 1, ...)` is added when the
/// permutation's determinant does not already generate `F_p^*`. For
/// `(n, p) = (3, 2)` this is the standard pair of order-2 and order-3
/// elements.
pub fn default_generators(n: usize, p: u64) -> Result<Vec<MatrixZ>> {
    let params = RingParams::new(p, n, 1)?;
    let g = primitive_root(p);
    if n == 1 {
        return Ok(vec![MatrixZ::from_fn(params, |_, _| g as i128)]);
    }
    let transvection = MatrixZ::from_fn(params, |i, j| (i == j || (i, j) == (0, 1)) as i128);
    let cycle = MatrixZ::from_fn(params, |i, j| (i == (j + 1) % n) as i128);
    let mut gens = vec![transvection, cycle.clone()];
    let det_generates = p == 2 || multiplicative_order(&cycle.det()) == Some(p - 1);
    if !det_generates {
        gens.push(MatrixZ::from_fn(params, |i, j| match (i, j) {
            (0, 0) => g as i128,
            _ => (i == j) as i128,
        }));
    }
    Ok(gens)
}

fn element_order(m: &MatrixZ) -> u64 {
    let mut acc = m.clone();
    let mut ord = 1;
    while !acc.is_identity() {
        acc = acc.mul_unchecked(m);
        ord += 1;
    }
    ord
}

/// Brute-force search for a complement at `k = 2`: tries every lift
/// `base + p X` of every generator. Returns `None` only after exhausting the
/// space, which proves no complement exists.
pub fn find_complement_brute(
    params: &RingParams,
    base_generators: &[MatrixZ],
) -> Result<Option<SectionWitness>> {
    find_complement_brute_with_budget(params, base_generators, DEFAULT_SEARCH_BUDGET)
}

/// [`find_complement_brute`] with an explicit cap on the candidate space.
pub fn find_complement_brute_with_budget(
    params: &RingParams,
    base_generators: &[MatrixZ],
    budget: u64,
) -> Result<Option<SectionWitness>> {
    let target = gl_order(params.n(), params.p())?;
    let base_group = closure(base_generators, Some(target as usize))?;
    match base_group {
        ClosureOutcome::Complete(g) if g.order() as u128 == target => {}
        _ => {
            return Err(Error::BadGenerators(format!(
                "generators do not generate GL_{}(F_{})",
                params.n(),
                params.p()
            )))
        }
    }
    find_section_brute_with_budget(params, base_generators, budget)
}

/// Default cap on the number of candidate generator tuples in a brute
/// search.
pub const DEFAULT_SEARCH_BUDGET: u64 = 1 << 30;

/// Searches lifts of `base_generators` to `Z/p^2` that generate a group
/// mapping isomorphically onto the group they generate mod `p`. With a
/// generating set of `GL_n(F_p)` this is [`find_complement_brute`]; with a
/// smaller set it is the restricted search used to cross-check obstruction
/// certificates.
pub fn find_section_brute(
    params: &RingParams,
    base_generators: &[MatrixZ],
) -> Result<Option<SectionWitness>> {
    find_section_brute_with_budget(params, base_generators, DEFAULT_SEARCH_BUDGET)
}

/// [`find_section_brute`] with an explicit cap on the candidate space.
pub fn find_section_brute_with_budget(
    params: &RingParams,
    base_generators: &[MatrixZ],
    budget: u64,
) -> Result<Option<SectionWitness>> {
    if params.k() != 2 {
        return Err(Error::InvalidParams(format!(
            "brute-force search runs at k = 2, got k = {}",
            params.k()
        )));
    }
    let residue = params.with_k(1)?;
    if base_generators.is_empty() || base_generators.iter().any(|g| g.params() != &residue) {
        return Err(Error::BadGenerators(format!(
            "generators must be {}x{} over F_{}",
            params.n(),
            params.n(),
            params.p()
        )));
    }
    let n2 = (params.n() * params.n()) as u64;
    let exponent = n2 * base_generators.len() as u64;
    let space = (0..exponent).try_fold(1u64, |acc, _| {
        acc.checked_mul(params.p()).filter(|&s| s <= budget)
    });
    if space.is_none() {
        return Err(Error::SearchSpaceTooLarge { exponent });
    }
    let target = closure(base_generators, None)?
        .complete()
        .ok_or(Error::Overflow("closure size"))?
        .order();

    // Any section sends g to an element of the same order, so lifts whose
    // order differs are discarded up front.
    let lifts: Vec<Vec<MatrixZ>> = base_generators
        .iter()
        .map(|base| {
            let ord = element_order(base);
            let lifted = base.lift_entries(2).expect("k = 2 >= 1");
            all_kernel_offsets(params)
                .filter_map(|offset| {
                    let cand = lifted.add(&offset).expect("same params");
                    cand.pow(ord).is_identity().then_some(cand)
                })
                .collect()
        })
        .collect();
    if lifts.iter().any(Vec::is_empty) {
        return Ok(None);
    }
    // Lifts of commuting generators must commute: their commutator reduces
    // to 1, so it is a kernel element.
    let commuting: Vec<(usize, usize)> = (0..base_generators.len())
        .flat_map(|i| (i + 1..base_generators.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| {
            let (a, b) = (&base_generators[i], &base_generators[j]);
            a.mul_unchecked(b) == b.mul_unchecked(a)
        })
        .collect();
    let total: u64 = lifts.iter().map(|l| l.len() as u64).product();
    let found = (0..total).into_par_iter().find_map_first(|mut code| {
        let picks: Vec<&MatrixZ> = lifts
            .iter()
            .map(|choices| {
                let pick = (code % choices.len() as u64) as usize;
                code /= choices.len() as u64;
                &choices[pick]
            })
            .collect();
        let commute = |&(i, j): &(usize, usize)| {
            picks[i].mul_unchecked(picks[j]) == picks[j].mul_unchecked(picks[i])
        };
        if !commuting.iter().all(commute) {
            return None;
        }
        let images: Vec<MatrixZ> = picks.into_iter().cloned().collect();
        match closure_guarded(&images, Some(target), |m| m.in_kernel_subgroup()) {
            Ok(ClosureOutcome::Complete(g)) if g.order() == target => Some(images),
            _ => None,
        }
    });
    Ok(found.map(|generator_images| SectionWitness {
        params: *params,
        base_generators: base_generators.to_vec(),
        generator_images,
        presentation: None,
    }))
}

/// All matrices `p X` with `X` ranging over `Mat_n(F_p)`, at `k = 2`.
fn all_kernel_offsets(params: &RingParams) -> impl Iterator<Item = MatrixZ> + '_ {
    let n2 = params.n() * params.n();
    let p = params.p();
    let count = p.pow(n2 as u32);
    (0..count).map(move |mut code| {
        let entries = (0..n2)
            .map(|_| {
                let d = code % p;
                code /= p;
                d * p
            })
            .collect();
        MatrixZ::from_raw(*params, entries)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: u64, n: usize, k: u32) -> RingParams {
        RingParams::new(p, n, k).unwrap()
    }

    fn mat(p: u64, k: u32, rows: &[&[i64]]) -> MatrixZ {
        MatrixZ::from_rows(params(p, rows.len(), k), rows).unwrap()
    }

    #[test]
    fn closure_orders() {
        let gens = default_generators(3, 2).unwrap();
        let g = closure(&gens, None).unwrap().complete().unwrap();
        assert_eq!(g.order(), 168);
        let id = MatrixZ::identity(params(2, 3, 1));
        assert_eq!(closure(&[id], None).unwrap().complete().unwrap().order(), 1);
        let alpha = gens[0].clone();
        assert_eq!(
            closure(&[alpha], None).unwrap().complete().unwrap().order(),
            2
        );
        assert!(matches!(
            closure(&gens, Some(100)).unwrap(),
            ClosureOutcome::Aborted { reached: 101 }
        ));
    }

    #[test]
    fn closure_rejects_singular_generators() {
        let z = MatrixZ::zero(params(2, 2, 1));
        assert!(matches!(closure(&[z], None), Err(Error::NotInvertible)));
        assert!(closure(&[], None).is_err());
    }

    #[test]
    fn gl_orders() {
        assert_eq!(gl_order(2, 2).unwrap(), 6);
        assert_eq!(gl_order(3, 2).unwrap(), 168);
        assert_eq!(gl_order(2, 3).unwrap(), 48);
        assert_eq!(gl_order(1, 7).unwrap(), 6);
        assert!(gl_order(8, (1 << 31) - 1).is_err());
    }

    #[test]
    fn gl_order_matches_exhaustive_count() {
        for (n, p) in [(2usize, 2u64), (3, 2), (2, 3), (2, 5)] {
            let units = enumerate_unit_group(&params(p, n, 1)).unwrap();
            assert_eq!(units.len() as u128, gl_order(n, p).unwrap());
        }
    }

    #[test]
    fn unit_group_orders() {
        assert_eq!(unit_group_order(&params(2, 2, 2)).unwrap(), 96);
        assert_eq!(enumerate_unit_group(&params(2, 2, 2)).unwrap().len(), 96);
        assert_eq!(unit_group_order(&params(2, 3, 2)).unwrap(), 86016);
        for (p, n) in [(2u64, 3usize), (3, 2), (5, 2)] {
            assert_eq!(
                unit_group_order(&params(p, n, 1)).unwrap(),
                gl_order(n, p).unwrap()
            );
        }
    }

    #[test]
    fn complements() {
        let full = closure(&default_generators(2, 3).unwrap(), None)
            .unwrap()
            .complete()
            .unwrap();
        assert!(is_complement(&full));

        let eight = closure(&[mat(3, 2, &[&[8]])], None)
            .unwrap()
            .complete()
            .unwrap();
        assert_eq!(eight.order(), 2);
        assert!(is_complement(&eight));
        assert!(is_complement_exhaustive(&eight).unwrap());

        let four = closure(&[mat(3, 2, &[&[4]])], None)
            .unwrap()
            .complete()
            .unwrap();
        assert!(!is_complement(&four));
        assert!(!is_complement_exhaustive(&four).unwrap());
    }

    #[test]
    fn default_generators_generate() {
        for (n, p) in [
            (1usize, 2u64),
            (1, 7),
            (2, 2),
            (2, 3),
            (2, 5),
            (3, 2),
            (3, 3),
            (4, 2),
        ] {
            let gens = default_generators(n, p).unwrap();
            let g = closure(&gens, None).unwrap().complete().unwrap();
            assert_eq!(g.order() as u128, gl_order(n, p).unwrap(), "n={n} p={p}");
        }
        let gens = default_generators(2, 3).unwrap();
        assert_eq!(gens.len(), 2);
        assert_eq!(gens[0], mat(3, 1, &[&[1, 1], &[0, 1]]));
        assert_eq!(gens[1], mat(3, 1, &[&[0, 1], &[1, 0]]));
    }

    #[test]
    fn teichmuller_witness_verifies() {
        let w = SectionWitness {
            params: params(5, 1, 3),
            base_generators: vec![mat(5, 1, &[&[2]])],
            generator_images: vec![mat(5, 3, &[&[57]])], // 2^25 mod 125
            presentation: None,
        };
        let check = verify_section(&w).unwrap();
        assert!(check.valid, "{check:?}");
        assert_eq!(check.order, Some(4));
    }

    #[test]
    fn verify_section_failure_reasons() {
        let base = vec![mat(3, 1, &[&[2]])];
        let mk = |v: i64| SectionWitness {
            params: params(3, 1, 2),
            base_generators: base.clone(),
            generator_images: vec![mat(3, 2, &[&[v]])],
            presentation: None,
        };
        assert!(verify_section(&mk(8)).unwrap().valid);
        assert_eq!(
            verify_section(&mk(7)).unwrap().reason,
            Some(SectionFailure::BadReduction)
        );
        // 2 has order 6 mod 9, so 2^2 = 4 is a kernel element.
        assert_eq!(
            verify_section(&mk(2)).unwrap().reason,
            Some(SectionFailure::KernelIntersection)
        );
    }

    #[test]
    fn brute_search_small_cases() {
        let w = find_complement_brute(&params(2, 2, 2), &default_generators(2, 2).unwrap())
            .unwrap()
            .expect("complement exists for (2,2,2)");
        assert!(verify_section(&w).unwrap().valid);
        let h = section_group(&w).unwrap();
        assert!(is_complement(&h));
        assert!(is_complement_exhaustive(&h).unwrap());
    }

    #[test]
    fn brute_search_rejects_bad_input() {
        let gens = default_generators(2, 2).unwrap();
        assert!(matches!(
            find_complement_brute(&params(2, 2, 2), &gens[..1]),
            Err(Error::BadGenerators(_))
        ));
        assert!(find_complement_brute(&params(2, 2, 3), &gens).is_err());
        let gens = default_generators(4, 3).unwrap();
        assert!(matches!(
            find_section_brute(&params(3, 4, 2), &gens),
            Err(Error::SearchSpaceTooLarge { .. })
        ));
    }
}
