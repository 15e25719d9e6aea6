//! Finitely presented groups: words, evaluation in matrix groups, and
//! Todd-Coxeter enumeration over the trivial subgroup.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::closure;
use crate::matrix::MatrixZ;

/// Default coset budget for [`todd_coxeter`].
pub const DEFAULT_MAX_COSETS: usize = 100_000;

/// A freely reduced word: `+i` is generator `i` (1-based), `-i` its inverse.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<i32>);

impl Word {
    /// Builds a word, cancelling adjacent `x x^-1` pairs. Zero letters are
    /// rejected.
    pub fn new(letters: impl IntoIterator<Item = i32>) -> Result<Self> {
        let mut out: Vec<i32> = Vec::new();
        for l in letters {
            if l == 0 {
                return Err(Error::BadPresentation("letter 0 is not a generator".into()));
            }
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Ok(Word(out))
    }

    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&l| -l).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::new(self.0.iter().chain(&other.0).copied()).expect("letters already nonzero")
    }

    pub fn pow(&self, e: usize) -> Word {
        Word::new(self.0.iter().copied().cycle().take(self.0.len() * e))
            .expect("letters already nonzero")
    }

    /// Cyclic rotation by `shift` letters (same normal-closure element).
    pub fn rotate(&self, shift: usize) -> Word {
        if self.0.is_empty() {
            return self.clone();
        }
        let mut v = self.0.clone();
        let len = v.len();
        v.rotate_left(shift % len);
        Word::new(v).expect("letters already nonzero")
    }

    fn max_generator(&self) -> usize {
        self.0
            .iter()
            .map(|l| l.unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&l| {
                if l > 0 {
                    format!("x{l}")
                } else {
                    format!("x{}^-1", -l)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Generators `1..=num_generators` and a list of relators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PresentationJson", into = "PresentationJson")]
pub struct Presentation {
    num_generators: usize,
    relators: Vec<Word>,
}

#[derive(Serialize, Deserialize)]
struct PresentationJson {
    generators: usize,
    relators: Vec<Vec<i32>>,
}

impl TryFrom<PresentationJson> for Presentation {
    type Error = Error;

    fn try_from(raw: PresentationJson) -> Result<Self> {
        let relators = raw
            .relators
            .into_iter()
            .map(Word::new)
            .collect::<Result<Vec<_>>>()?;
        Presentation::new(raw.generators, relators)
    }
}

impl From<Presentation> for PresentationJson {
    fn from(p: Presentation) -> Self {
        PresentationJson {
            generators: p.num_generators,
            relators: p.relators.into_iter().map(|w| w.0).collect(),
        }
    }
}

impl Presentation {
    pub fn new(num_generators: usize, relators: Vec<Word>) -> Result<Self> {
        if num_generators == 0 {
            return Err(Error::BadPresentation("need at least one generator".into()));
        }
        if let Some(w) = relators.iter().find(|w| w.max_generator() > num_generators) {
            return Err(Error::BadPresentation(format!(
                "relator {w} uses a generator beyond {num_generators}"
            )));
        }
        Ok(Presentation {
            num_generators,
            relators,
        })
    }

    /// Convenience constructor from raw signed-index lists.
    pub fn from_lists(num_generators: usize, relators: &[&[i32]]) -> Result<Self> {
        let words = relators
            .iter()
            .map(|r| Word::new(r.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Presentation::new(num_generators, words)
    }

    pub fn num_generators(&self) -> usize {
        self.num_generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }
}

/// The product of images (or their inverses) in word order.
pub fn evaluate_word(w: &Word, images: &[MatrixZ]) -> Result<MatrixZ> {
    if w.max_generator() > images.len() {
        return Err(Error::BadPresentation(format!(
            "word {w} needs {} images, got {}",
            w.max_generator(),
            images.len()
        )));
    }
    let first = images
        .first()
        .ok_or_else(|| Error::BadPresentation("no images supplied".into()))?;
    let mut inverses: Vec<Option<MatrixZ>> = vec![None; images.len()];
    let mut acc = MatrixZ::identity(*first.params());
    for &l in w.letters() {
        let g = l.unsigned_abs() as usize - 1;
        let factor = if l > 0 {
            &images[g]
        } else {
            if inverses[g].is_none() {
                inverses[g] = Some(images[g].inverse()?);
            }
            inverses[g].as_ref().expect("just filled")
        };
        acc = acc.mul(factor)?;
    }
    Ok(acc)
}

const UNDEF: u32 = u32::MAX;

/// Coset table for enumeration over the trivial subgroup. Column `2i` is
/// generator `i+1`, column `2i+1` its inverse.
struct CosetTable {
    cols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    max_cosets: usize,
    queue: Vec<u32>,
}

impl CosetTable {
    fn new(num_generators: usize, max_cosets: usize) -> Self {
        let cols = 2 * num_generators;
        CosetTable {
            cols,
            table: vec![UNDEF; cols],
            parent: vec![0],
            max_cosets,
            queue: Vec::new(),
        }
    }

    fn len(&self) -> usize {
        self.parent.len()
    }

    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.cols + x]
    }

    fn set(&mut self, c: u32, x: usize, v: u32) {
        self.table[c as usize * self.cols + x] = v;
    }

    fn alive(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, x: usize) -> Result<()> {
        if self.len() >= self.max_cosets {
            return Err(Error::CosetOverflow {
                max_cosets: self.max_cosets,
            });
        }
        let new = self.len() as u32;
        self.parent.push(new);
        self.table.extend(std::iter::repeat_n(UNDEF, self.cols));
        self.set(c, x, new);
        self.set(new, x ^ 1, c);
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = c;
        while self.parent[cur as usize] != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra != rb {
            let (keep, kill) = (ra.min(rb), ra.max(rb));
            self.parent[kill as usize] = keep;
            self.queue.push(kill);
        }
    }

    /// Identifies cosets `a` and `b` and processes every consequence.
    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let dead = self.queue[i];
            i += 1;
            for x in 0..self.cols {
                let target = self.get(dead, x);
                if target == UNDEF {
                    continue;
                }
                self.set(target, x ^ 1, UNDEF);
                let mu = self.rep(dead);
                let nu = self.rep(target);
                let mu_x = self.get(mu, x);
                if mu_x != UNDEF {
                    self.merge(nu, mu_x);
                } else {
                    let nu_inv = self.get(nu, x ^ 1);
                    if nu_inv != UNDEF {
                        self.merge(mu, nu_inv);
                    } else {
                        self.set(mu, x, nu);
                        self.set(nu, x ^ 1, mu);
                    }
                }
            }
        }
    }

    /// Traces `relator` from `coset` in both directions, defining new cosets
    /// until the cycle closes.
    fn scan_and_fill(&mut self, coset: u32, relator: &[usize]) -> Result<()> {
        if relator.is_empty() {
            return Ok(());
        }
        let mut f = coset;
        let mut b = coset;
        let mut i: isize = 0;
        let mut j: isize = relator.len() as isize - 1;
        loop {
            while i <= j && self.get(f, relator[i as usize]) != UNDEF {
                f = self.get(f, relator[i as usize]);
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i && self.get(b, relator[j as usize] ^ 1) != UNDEF {
                b = self.get(b, relator[j as usize] ^ 1);
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            let x = relator[i as usize];
            if j == i {
                self.set(f, x, b);
                self.set(b, x ^ 1, f);
                return Ok(());
            }
            self.define(f, x)?;
        }
    }
}

fn column(letter: i32) -> usize {
    let g = letter.unsigned_abs() as usize - 1;
    2 * g + (letter < 0) as usize
}

/// Order of the presented group, by HLT coset enumeration over the trivial
/// subgroup. Coset numbering is deterministic (first undefined entry first).
/// `CosetOverflow` means the order was not determined within budget.
pub fn todd_coxeter(pres: &Presentation, max_cosets: usize) -> Result<usize> {
    let relators: Vec<Vec<usize>> = pres
        .relators()
        .iter()
        .filter(|w| !w.is_empty())
        .map(|w| w.letters().iter().map(|&l| column(l)).collect())
        .collect();
    let mut table = CosetTable::new(pres.num_generators(), max_cosets.max(1));
    let mut c = 0u32;
    while (c as usize) < table.len() {
        if table.alive(c) {
            for r in &relators {
                table.scan_and_fill(c, r)?;
                if !table.alive(c) {
                    break;
                }
            }
            if table.alive(c) {
                for x in 0..table.cols {
                    if table.get(c, x) == UNDEF {
                        table.define(c, x)?;
                    }
                }
            }
        }
        c += 1;
    }
    Ok((0..table.len() as u32).filter(|&c| table.alive(c)).count())
}

/// Checks that the images satisfy every relator and that they generate a
/// group of exactly the enumerated order, so the presentation is faithful
/// on them.
pub fn verify_presentation(
    pres: &Presentation,
    images: &[MatrixZ],
    max_cosets: usize,
) -> Result<bool> {
    if images.len() != pres.num_generators() {
        return Ok(false);
    }
    for r in pres.relators() {
        if !evaluate_word(r, images)?.is_identity() {
            return Ok(false);
        }
    }
    let order = todd_coxeter(pres, max_cosets)?;
    let group = closure(images, Some(order))?;
    Ok(group.complete().is_some_and(|g| g.order() == order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::residue::RingParams;

    fn mat(p: u64, k: u32, rows: &[&[i64]]) -> MatrixZ {
        MatrixZ::from_rows(RingParams::new(p, rows.len(), k).unwrap(), rows).unwrap()
    }

    fn gl3z2() -> Presentation {
        let ab = Word::new([1, 2]).unwrap();
        let abab_ = Word::new([1, 2, 1, -2]).unwrap();
        Presentation::new(
            2,
            vec![
                Word::new([1, 1]).unwrap(),
                Word::new([2, 2, 2]).unwrap(),
                ab.pow(7),
                abab_.pow(4),
            ],
        )
        .unwrap()
    }

    #[test]
    fn words_reduce() {
        let w = Word::new([1, 2, -2, -1, 3]).unwrap();
        assert_eq!(w.letters(), &[3]);
        assert!(Word::new([1, 0]).is_err());
        let u = Word::new([1, 2]).unwrap();
        assert!(u.concat(&u.inverse()).is_empty());
        assert_eq!(
            Word::new([1, -2]).unwrap().pow(2).letters(),
            &[1, -2, 1, -2]
        );
        assert_eq!(
            Word::new([1, 2, 3]).unwrap().rotate(1).letters(),
            &[2, 3, 1]
        );
    }

    #[test]
    fn presentation_validation() {
        assert!(Presentation::from_lists(2, &[&[3]]).is_err());
        assert!(Presentation::from_lists(0, &[]).is_err());
        let p: Presentation =
            serde_json::from_str(r#"{"generators":2,"relators":[[1,1],[2,2,2]]}"#).unwrap();
        assert_eq!(p.relators().len(), 2);
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"{"generators":2,"relators":[[1,1],[2,2,2]]}"#
        );
        assert!(
            serde_json::from_str::<Presentation>(r#"{"generators":1,"relators":[[2]]}"#).is_err()
        );
    }

    #[test]
    fn evaluation() {
        let alpha = mat(2, 1, &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
        let beta = mat(2, 1, &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        let images = [alpha.clone(), beta.clone()];
        assert!(evaluate_word(&Word::identity(), &images)
            .unwrap()
            .is_identity());
        assert!(evaluate_word(&Word::new([1, 1]).unwrap(), &images)
            .unwrap()
            .is_identity());
        for r in gl3z2().relators() {
            assert!(evaluate_word(r, &images).unwrap().is_identity());
        }
        let a5 = mat(2, 3, &[&[1, 5, -6], &[0, -1, 0], &[0, 0, -1]]);
        let b3 = mat(2, 3, &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        let ab7 = Word::new([1, 2]).unwrap().pow(7);
        assert!(evaluate_word(&ab7, &[a5, b3]).unwrap().is_identity());
        assert!(evaluate_word(&Word::new([3]).unwrap(), &images).is_err());
    }

    #[test]
    fn enumeration_small() {
        let cyclic2 = Presentation::from_lists(1, &[&[1, 1]]).unwrap();
        assert_eq!(todd_coxeter(&cyclic2, DEFAULT_MAX_COSETS).unwrap(), 2);
        let s3 = Presentation::from_lists(2, &[&[1, 1], &[2, 2, 2], &[1, 2, 1, 2]]).unwrap();
        assert_eq!(todd_coxeter(&s3, DEFAULT_MAX_COSETS).unwrap(), 6);
        let trivial = Presentation::from_lists(1, &[&[1]]).unwrap();
        assert_eq!(todd_coxeter(&trivial, DEFAULT_MAX_COSETS).unwrap(), 1);
        // Q8 = <i, j | i^4, i^2 j^-2, i j i j^-1>.
        let q8 =
            Presentation::from_lists(2, &[&[1, 1, 1, 1], &[1, 1, -2, -2], &[1, 2, 1, -2]]).unwrap();
        assert_eq!(todd_coxeter(&q8, DEFAULT_MAX_COSETS).unwrap(), 8);
    }

    #[test]
    fn enumeration_gl3z2() {
        assert_eq!(todd_coxeter(&gl3z2(), DEFAULT_MAX_COSETS).unwrap(), 168);
    }

    #[test]
    fn enumeration_overflow() {
        let z = Presentation::from_lists(1, &[]).unwrap();
        assert!(matches!(
            todd_coxeter(&z, 50),
            Err(Error::CosetOverflow { max_cosets: 50 })
        ));
    }

    #[test]
    fn presentation_verification() {
        let alpha = mat(2, 1, &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
        let beta = mat(2, 1, &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        assert!(verify_presentation(&gl3z2(), &[alpha.clone(), beta], DEFAULT_MAX_COSETS).unwrap());
        assert!(
            !verify_presentation(&gl3z2(), &[alpha.clone(), alpha], DEFAULT_MAX_COSETS).unwrap()
        );

        let s3 = Presentation::from_lists(2, &[&[1, 1], &[2, 2, 2], &[1, 2, 1, 2]]).unwrap();
        let swap = mat(2, 1, &[&[0, 1], &[1, 0]]);
        let rot = mat(2, 1, &[&[0, 1], &[1, 1]]);
        assert!(verify_presentation(&s3, &[swap, rot], DEFAULT_MAX_COSETS).unwrap());
    }
}
