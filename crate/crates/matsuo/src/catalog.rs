//! The built-in case list for the classification of Jordan factors of
//! Matsuo algebras at `eta = 1/2`, with expected dimensions and verdicts.

use std::time::Instant;

use matsuo_core::constructions::{ConstructionError, Family};
use matsuo_core::exact::rat;
use matsuo_core::fischer::Sign;
use matsuo_core::jordan::jordan_modulo_radical;
use matsuo_core::matsuo::{build_matsuo, radical_dim_via_spectrum};
use serde::{Deserialize, Serialize};

use crate::parallel::jordan_modulo_radical_parallel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Scope {
    /// Parametric families at their smallest member only.
    Quick,
    /// Parametric families over their full desk-scale range.
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub class_size: usize,
    /// `None` where no closed form is recorded; the spectral count is then
    /// the only cross-check.
    pub radical_dim: Option<usize>,
    pub quotient_dim: Option<usize>,
    pub jordan: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Case {
    pub family: Family,
    pub expected: Expected,
}

fn case(
    family: Family,
    class_size: usize,
    radical: Option<usize>,
    quotient: Option<usize>,
    jordan: bool,
) -> Case {
    Case {
        family,
        expected: Expected {
            class_size,
            radical_dim: radical,
            quotient_dim: quotient,
            jordan,
        },
    }
}

/// Cases with zero radical, where the Matsuo algebra itself is Jordan.
fn radical_free(family: Family, class_size: usize) -> Case {
    case(family, class_size, Some(0), Some(class_size), true)
}

pub fn theorem1_cases(scope: Scope) -> Vec<Case> {
    let (sym, wreath) = match scope {
        Scope::Quick => (4..=4, 4..=4),
        Scope::Full => (3..=6, 4..=8),
    };
    let mut cases: Vec<Case> = sym
        .map(|m| radical_free(Family::Sym { m }, (m * (m - 1) / 2) as usize))
        .collect();
    cases.push(radical_free(Family::Frob { h: 2 }, 9));
    for n in wreath.clone() {
        let n_ = n as usize;
        let rad = n_ * (n_ - 3) / 2;
        cases.push(case(
            Family::Wr2 { n },
            n_ * (n_ - 1),
            Some(rad),
            Some(n_ * (n_ + 1) / 2),
            true,
        ));
    }
    for n in wreath {
        let n_ = n as usize;
        let rad = n_ * (n_ - 3) / 2;
        cases.push(case(
            Family::Wr3 { n },
            3 * n_ * (n_ - 1) / 2,
            Some(rad),
            Some(n_ * n_),
            true,
        ));
    }
    cases.extend([
        case(
            Family::Orthogonal {
                m: 4,
                eps: Sign::Plus,
            },
            120,
            Some(84),
            Some(36),
            true,
        ),
        case(
            Family::Orthogonal {
                m: 3,
                eps: Sign::Minus,
            },
            36,
            Some(15),
            Some(21),
            true,
        ),
        case(Family::Sp { m: 3 }, 63, Some(35), Some(28), true),
        case(
            Family::Omega3 {
                m: 6,
                eps: Sign::Minus,
            },
            126,
            Some(90),
            Some(36),
            true,
        ),
        case(Family::Unitary { m: 4 }, 45, Some(20), Some(25), true),
        case(Family::Unitary { m: 5 }, 165, Some(120), Some(45), true),
        case(Family::PerpDerived, 36, Some(8), Some(28), true),
        case(Family::WrAlt4 { n: 4 }, 72, None, None, false),
    ]);
    if scope == Scope::Full {
        // Isomorphic to O6-(2) and 2 x SU4(2) respectively.
        cases.extend([
            case(
                Family::Omega3 {
                    m: 5,
                    eps: Sign::Plus,
                },
                36,
                Some(15),
                Some(21),
                true,
            ),
            case(
                Family::Omega3 {
                    m: 5,
                    eps: Sign::Minus,
                },
                45,
                Some(20),
                Some(25),
                true,
            ),
        ]);
    }
    cases
}

/// Computed values for one case.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseRow {
    pub family: String,
    pub class_size: usize,
    pub radical_dim: usize,
    pub radical_dim_spectral: usize,
    pub quotient_dim: usize,
    pub jordan: bool,
    pub counterexample: Option<[usize; 4]>,
    pub quadruples_checked: u64,
    pub expected: Expected,
    pub pass: bool,
    pub timing_seconds: f64,
}

/// Builds the algebra, computes the radical twice (Gram nullspace and the
/// `-4` multiplicity) and sweeps the quotient with symmetry reduction.
pub fn run_case(case: &Case, parallel: bool) -> Result<CaseRow, ConstructionError> {
    let start = Instant::now();
    let class = case.family.build_class()?;
    let m = build_matsuo(&class, rat(1, 2)).expect("eta = 1/2 is admissible");
    let radical_dim = m.radical_basis().len();
    let radical_dim_spectral = radical_dim_via_spectrum(&m).expect("eta = 1/2");
    let verdict = if parallel {
        jordan_modulo_radical_parallel(&m, true)
    } else {
        jordan_modulo_radical(&m, true)
    };
    let quotient_dim = m.dim() - radical_dim;
    let e = &case.expected;
    let pass = class.len() == e.class_size
        && radical_dim == radical_dim_spectral
        && e.radical_dim.map_or(true, |r| r == radical_dim)
        && e.quotient_dim.map_or(true, |q| q == quotient_dim)
        && verdict.is_jordan == e.jordan;
    Ok(CaseRow {
        family: case.family.label(),
        class_size: class.len(),
        radical_dim,
        radical_dim_spectral,
        quotient_dim,
        jordan: verdict.is_jordan,
        counterexample: verdict.counterexample,
        quadruples_checked: verdict.quadruples_checked,
        expected: case.expected,
        pass,
        timing_seconds: start.elapsed().as_secs_f64(),
    })
}

pub fn render_rows(rows: &[CaseRow], format: crate::report::Format) -> String {
    use crate::report::Format;
    let show = |v: Option<usize>| v.map_or_else(|| String::from("-"), |v| v.to_string());
    match format {
        Format::Json => serde_json::to_string_pretty(rows).expect("rows serialize") + "\n",
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "family",
                "class_size",
                "radical_dim",
                "radical_dim_spectral",
                "quotient_dim",
                "jordan",
                "expected_class_size",
                "expected_radical_dim",
                "expected_quotient_dim",
                "expected_jordan",
                "quadruples_checked",
                "pass",
                "timing_seconds",
            ])
            .expect("in-memory csv");
            for r in rows {
                w.write_record([
                    r.family.clone(),
                    r.class_size.to_string(),
                    r.radical_dim.to_string(),
                    r.radical_dim_spectral.to_string(),
                    r.quotient_dim.to_string(),
                    r.jordan.to_string(),
                    r.expected.class_size.to_string(),
                    show(r.expected.radical_dim),
                    show(r.expected.quotient_dim),
                    r.expected.jordan.to_string(),
                    r.quadruples_checked.to_string(),
                    r.pass.to_string(),
                    format!("{:.3}", r.timing_seconds),
                ])
                .expect("in-memory csv");
            }
            String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8")
        }
        Format::Text => {
            let mut out = format!(
                "{:<16} {:>5} {:>5} {:>5} {:>7}   {:<22} {}\n",
                "case", "|D|", "rad", "dim J", "jordan", "expected", "status"
            );
            for r in rows {
                let e = &r.expected;
                out += &format!(
                    "{:<16} {:>5} {:>5} {:>5} {:>7}   {:<22} {}\n",
                    r.family,
                    r.class_size,
                    r.radical_dim,
                    r.quotient_dim,
                    r.jordan,
                    format!(
                        "({}, {}, {}, {})",
                        e.class_size,
                        show(e.radical_dim),
                        show(e.quotient_dim),
                        e.jordan
                    ),
                    if r.pass { "ok" } else { "DEVIATES" }
                );
            }
            out
        }
    }
}
