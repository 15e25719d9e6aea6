//! Built-in generator sets and relator lists.
//!
//! `gl3z2`, `gl2z2` and `gl2z3` are full presentations of `GL_n(F_p)` on the
//! listed matrices (each is certified by coset enumeration in the tests).
//! `prop1-p3` and `prop1-p2` are not presentations: they are relations
//! satisfied by a pair of commuting elements, enough to obstruct lifting.

use crate::error::{Error, Result};
use crate::matrix::MatrixZ;
use crate::presentation::{Presentation, Word};
use crate::residue::RingParams;

pub const FIXTURE_NAMES: [&str; 5] = ["gl3z2", "gl2z2", "gl2z3", "prop1-p3", "prop1-p2"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub name: &'static str,
    /// Matrices over `F_p`, one per generator of `relators`.
    pub generators: Vec<MatrixZ>,
    pub relators: Presentation,
    /// True when `relators` presents the whole group `GL_n(F_p)`.
    pub presents_gl: bool,
}

impl Fixture {
    pub fn params(&self) -> &RingParams {
        self.generators[0].params()
    }
}

fn words(lists: &[Vec<i32>]) -> Vec<Word> {
    lists
        .iter()
        .map(|l| Word::new(l.iter().copied()).expect("fixture letters are nonzero"))
        .collect()
}

fn mats(p: u64, rows: &[&[&[i64]]]) -> Vec<MatrixZ> {
    rows.iter()
        .map(|r| {
            let params = RingParams::new(p, r.len(), 1).expect("fixture params are valid");
            MatrixZ::from_rows(params, r).expect("fixture rows are square")
        })
        .collect()
}

fn power(w: &[i32], e: usize) -> Vec<i32> {
    w.iter().copied().cycle().take(w.len() * e).collect()
}

pub fn fixture(name: &str) -> Result<Fixture> {
    let (name, generators, relators, presents_gl) = match name {
        "gl3z2" => (
            "gl3z2",
            mats(
                2,
                &[
                    &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]],
                    &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]],
                ],
            ),
            words(&[
                vec![1, 1],
                vec![2, 2, 2],
                power(&[1, 2], 7),
                power(&[1, 2, 1, -2], 4),
            ]),
            true,
        ),
        "gl2z2" => (
            "gl2z2",
            mats(2, &[&[&[1, 1], &[0, 1]], &[&[0, 1], &[1, 0]]]),
            words(&[vec![1, 1], vec![2, 2], power(&[1, 2], 3)]),
            true,
        ),
        // (ab)^4 = -I is central; modulo it the relations present S_4.
        "gl2z3" => (
            "gl2z3",
            mats(3, &[&[&[1, 1], &[0, 1]], &[&[0, 1], &[1, 0]]]),
            words(&[
                vec![1, 1, 1],
                vec![2, 2],
                power(&[1, 2], 8),
                [power(&[1, 2], 4), vec![1], power(&[-2, -1], 4), vec![-1]].concat(),
            ]),
            true,
        ),
        "prop1-p3" => (
            "prop1-p3",
            mats(
                3,
                &[
                    &[&[1, 2, 0], &[0, 1, 0], &[0, 0, 1]],
                    &[&[1, 0, 2], &[0, 1, 0], &[0, 0, 1]],
                ],
            ),
            words(&[vec![1, 1, 1], vec![1, 2, -1, -2]]),
            false,
        ),
        "prop1-p2" => (
            "prop1-p2",
            mats(
                2,
                &[
                    &[&[1, 0, 1, 0], &[0, 1, 1, 1], &[0, 0, 1, 0], &[0, 0, 0, 1]],
                    &[&[1, 0, 0, 1], &[0, 1, 1, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]],
                ],
            ),
            words(&[vec![1, 1], vec![2, 2], vec![1, 2, -1, -2]]),
            false,
        ),
        other => return Err(Error::UnknownFixture(other.to_string())),
    };
    Ok(Fixture {
        name,
        generators,
        relators: Presentation::new(2, relators)?,
        presents_gl,
    })
}

/// The presentation fixture for `GL_n(F_p)`, when one ships.
pub fn gl_presentation(n: usize, p: u64) -> Option<Fixture> {
    match (n, p) {
        (3, 2) => fixture("gl3z2").ok(),
        (2, 2) => fixture("gl2z2").ok(),
        (2, 3) => fixture("gl2z3").ok(),
        _ => None,
    }
}

/// The relator fixture that obstructs complements for prime `p`, when one
/// ships.
pub fn obstruction_fixture(p: u64) -> Option<Fixture> {
    match p {
        2 => fixture("prop1-p2").ok(),
        3 => fixture("prop1-p3").ok(),
        _ => None,
    }
}
