//! Quick reproduction checks behind the `selftest` subcommand.

use serde::Serialize;

use crate::decide::{complement_exists, Prover};
use crate::fixtures::fixture;
use crate::group::{closure, find_complement_brute, verify_section};
use crate::presentation::todd_coxeter;
use crate::residue::{hensel_root, RingParams};
use crate::solver::{explicit_section_gl3_z2, reduce_witness_lemma};
use crate::Result;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, f: impl FnOnce() -> Result<(bool, String)>) -> Check {
    match f() {
        Ok((passed, detail)) => Check {
            name,
            passed,
            detail,
        },
        Err(e) => Check {
            name,
            passed: false,
            detail: format!("error: {e}"),
        },
    }
}

pub fn run(prover: &mut Prover) -> Vec<Check> {
    let max_cosets = prover.config().max_cosets;
    vec![
        check("gl3z2 presentation", || {
            let f = fixture("gl3z2")?;
            let order = todd_coxeter(&f.relators, max_cosets)?;
            let closed = closure(&f.generators, None)?
                .complete()
                .map_or(0, |g| g.order());
            Ok((
                order == 168 && closed == 168,
                format!("enumerated {order}, closure {closed}"),
            ))
        }),
        check("explicit section k=2..8", || {
            for k in 2..=8 {
                if !verify_section(&explicit_section_gl3_z2(k)?)?.valid {
                    return Ok((false, format!("fails at k={k}")));
                }
            }
            Ok((true, "all verify".into()))
        }),
        check("hensel root of x^2+x+2", || {
            for k in 1..=12 {
                let params = RingParams::new(2, 1, k)?;
                let m = params.modulus();
                let a = hensel_root(2, 1, 1, 1, &params)?.value();
                let odd: Vec<u64> = (0..m)
                    .filter(|&x| x % 2 == 1 && (x * x + x + 2) % m == 0)
                    .collect();
                if odd != [a] {
                    return Ok((false, format!("k={k}: {a} vs {odd:?}")));
                }
            }
            Ok((true, "k <= 12 match exhaustive scan".into()))
        }),
        check("obstruction certificates", || {
            let mut sizes = Vec::new();
            for (n, p) in [(3, 3), (4, 2)] {
                let c = prover.certify_no(&RingParams::new(p, n, 2)?, None)?;
                if c.check().is_err() {
                    return Ok((false, format!("({n},{p},2) certificate fails")));
                }
                sizes.push(c.obstruction.core_rows().len());
            }
            Ok((sizes[1] <= 8, format!("core rows {sizes:?}")))
        }),
        check("brute witness (2,2,2)", || {
            let f = fixture("gl2z2")?;
            let w = find_complement_brute(&RingParams::new(2, 2, 2)?, &f.generators)?;
            Ok(match w {
                Some(w) => (verify_section(&w)?.valid, "found".into()),
                None => (false, "none found".into()),
            })
        }),
        check("lemma reduction", || {
            let w = explicit_section_gl3_z2(2)?;
            for m in [1, 2] {
                if !verify_section(&reduce_witness_lemma(&w, m)?)?.valid {
                    return Ok((false, format!("m={m} fails")));
                }
            }
            Ok((true, "m = 1, 2 verify".into()))
        }),
        check("decision grid n<=4, p in {2,3,5}, k<=3", || {
            let rows = prover.table(4, &[2, 3, 5], 3)?;
            for d in &rows {
                let (n, p, k) = (d.params.n(), d.params.p(), d.params.k());
                let backed = match &d.evidence {
                    Some(e) => e.verify(&d.params)?,
                    None => d.citation.is_some(),
                };
                if d.exists != complement_exists(n, p, k) || !backed {
                    return Ok((false, d.summary()));
                }
            }
            Ok((true, format!("{} cells", rows.len())))
        }),
    ]
}
