//! Command implementations behind the `matsuo` binary.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, ValueEnum};
use matsuo_core::albert::{expected_abs_det, verify_albert_axial, AlbertReport};
use matsuo_core::constructions::{ConstructionError, Family};
use matsuo_core::exact::{format_rational, parse_rational, rat, Rational};
use matsuo_core::fischer::{diagram, expected_spectrum, is_connected, spectrum, table1_row, Sign};
use matsuo_core::group::TranspositionClass;
use matsuo_core::jordan::{eta_not_half_analysis, jordan_modulo_radical, EtaCase};
use matsuo_core::matsuo::{build_matsuo, radical_dim_via_spectrum, MatsuoAlgebra};
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{render_rows, run_case, theorem1_cases, CaseRow, Scope};
use crate::export::{edge_list, AlgebraDump};
use crate::groupfile::load_group_file;
use crate::parallel::jordan_modulo_radical_parallel;
use crate::report::{Format, JordanReport, OracleReport, Params, RunReport};

/// Failure of a command, carrying its exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Construction or parse failure (exit code 2).
    #[error("{name}: {message}")]
    Input { name: &'static str, message: String },
    /// A computed value disagrees with its reference (exit code 3).
    #[error("oracle mismatch: {0}")]
    Oracle(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input { .. } => 2,
            CliError::Oracle(_) => 3,
        }
    }
}

impl From<ConstructionError> for CliError {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::OracleMismatch { .. } => CliError::Oracle(e.to_string()),
            ConstructionError::Group(_) => CliError::Input {
                name: "GroupError",
                message: e.to_string(),
            },
            ConstructionError::BadBaseGroup { .. } => CliError::Input {
                name: "BadBaseGroup",
                message: e.to_string(),
            },
            ConstructionError::BadParams(_) => CliError::Input {
                name: "BadParams",
                message: e.to_string(),
            },
        }
    }
}

fn bad_params(message: impl Into<String>) -> CliError {
    CliError::Input {
        name: "BadParams",
        message: message.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    Sym,
    Wr2,
    Wr3,
    Wralt4,
    /// `3^h:2` (needs `--h`).
    Frob,
    /// `3^2:2`.
    Frob9,
    Sp,
    /// Orthogonal group over GF(2) (needs `--eps`).
    Orthogonal,
    Oplus,
    Ominus,
    Su,
    /// `+Omega^eps_m(3)` (needs `--eps`).
    Omega3,
    Omegaplus3,
    Omegaminus3,
    /// The size-36 class commuting with one transvection of `SU5(2)`.
    Perp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EpsArg {
    Plus,
    Minus,
}

impl From<EpsArg> for Sign {
    fn from(e: EpsArg) -> Sign {
        match e {
            EpsArg::Plus => Sign::Plus,
            EpsArg::Minus => Sign::Minus,
        }
    }
}

/// Selects a group: a built-in family or a group file.
#[derive(Debug, Clone, Default, Args)]
pub struct GroupArgs {
    #[arg(long, value_enum, required_unless_present = "file")]
    pub family: Option<FamilyName>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub h: Option<u32>,
    #[arg(long, value_enum)]
    pub eps: Option<EpsArg>,
    /// Group file (see the crate documentation for the format).
    #[arg(long, conflicts_with = "family")]
    pub file: Option<PathBuf>,
}

impl GroupArgs {
    pub fn family(&self) -> Result<Option<Family>, CliError> {
        let Some(name) = self.family else {
            return Ok(None);
        };
        let need = |v: Option<u32>, flag: &str| {
            v.ok_or_else(|| bad_params(format!("--{flag} is required")))
        };
        let eps = || -> Result<Sign, CliError> {
            self.eps
                .map(Sign::from)
                .ok_or_else(|| bad_params("--eps is required"))
        };
        Ok(Some(match name {
            FamilyName::Sym => Family::Sym {
                m: need(self.m, "m")?,
            },
            FamilyName::Wr2 => Family::Wr2 {
                n: need(self.n.or(self.m), "n")?,
            },
            FamilyName::Wr3 => Family::Wr3 {
                n: need(self.n.or(self.m), "n")?,
            },
            FamilyName::Wralt4 => Family::WrAlt4 {
                n: need(self.n.or(self.m), "n")?,
            },
            FamilyName::Frob => Family::Frob {
                h: need(self.h, "h")?,
            },
            FamilyName::Frob9 => Family::Frob { h: 2 },
            FamilyName::Sp => Family::Sp {
                m: need(self.m, "m")?,
            },
            FamilyName::Orthogonal => Family::Orthogonal {
                m: need(self.m, "m")?,
                eps: eps()?,
            },
            FamilyName::Oplus => Family::Orthogonal {
                m: need(self.m, "m")?,
                eps: Sign::Plus,
            },
            FamilyName::Ominus => Family::Orthogonal {
                m: need(self.m, "m")?,
                eps: Sign::Minus,
            },
            FamilyName::Su => Family::Unitary {
                m: need(self.m, "m")?,
            },
            FamilyName::Omega3 => Family::Omega3 {
                m: need(self.m, "m")?,
                eps: eps()?,
            },
            FamilyName::Omegaplus3 => Family::Omega3 {
                m: need(self.m, "m")?,
                eps: Sign::Plus,
            },
            FamilyName::Omegaminus3 => Family::Omega3 {
                m: need(self.m, "m")?,
                eps: Sign::Minus,
            },
            FamilyName::Perp => Family::PerpDerived,
        }))
    }

    fn params(&self, eta: Option<&Rational>) -> Params {
        Params {
            m: self.m,
            n: self.n,
            h: self.h,
            eps: self.eps.map(|e| Sign::from(e).to_string()),
            eta: eta.map(format_rational),
            file: self.file.as_ref().map(|p| p.display().to_string()),
        }
    }

    /// Closes the conjugacy class, returning it with the family (if built in).
    pub fn class(&self) -> Result<(TranspositionClass, Option<Family>), CliError> {
        if let Some(path) = &self.file {
            let spec = load_group_file(path).map_err(|e| CliError::Input {
                name: e.name(),
                message: e.to_string(),
            })?;
            let class = TranspositionClass::closure(&spec).map_err(ConstructionError::from)?;
            return Ok((class, None));
        }
        let family = self
            .family()?
            .ok_or_else(|| bad_params("--family or --file is required"))?;
        Ok((family.build_class()?, Some(family)))
    }
}

/// Parses `eta` as an exact rational (`"p/q"` or an integer).
pub fn parse_eta(text: &str) -> Result<Rational, String> {
    parse_rational(text).map_err(|e| e.to_string())
}

fn base_report(
    args: &GroupArgs,
    class: &TranspositionClass,
    family: Option<Family>,
    eta: Option<&Rational>,
    with_spectrum: bool,
) -> RunReport {
    let g = diagram(class);
    let mut report = RunReport {
        family: family.map_or_else(|| class.label().to_string(), |f| f.label()),
        params: args.params(eta),
        class_size: class.len(),
        connected: is_connected(&g),
        spectrum: None,
        spectrum_unaccounted: None,
        radical_dim: None,
        radical_dim_spectral: None,
        quotient_dim: None,
        jordan: None,
        oracle: None,
        timing_seconds: 0.0,
    };
    if with_spectrum {
        let s = spectrum(&g);
        report.spectrum_unaccounted = (s.unaccounted > 0).then_some(s.unaccounted);
        report.oracle = family.and_then(|f| f.pr_type()).map(|pr| {
            let row = table1_row(pr).expect("pr_type only returns valid rows");
            let expected = expected_spectrum(&row);
            OracleReport {
                family_type: pr.to_string(),
                expected_class_size: row.size,
                expected_spectrum: expected.pairs.clone(),
                matches: expected == s && row.size == class.len(),
            }
        });
        report.spectrum = Some(s.pairs);
    }
    report
}

fn finish(mut report: RunReport, start: Instant) -> Result<RunReport, CliError> {
    report.timing_seconds = start.elapsed().as_secs_f64();
    Ok(report)
}

pub fn cmd_build(args: &GroupArgs) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let (class, family) = args.class()?;
    finish(base_report(args, &class, family, None, true), start)
}

/// Same report as [`cmd_build`]; [`check_report`] compares the spectrum
/// with its closed form.
pub fn cmd_spectrum(args: &GroupArgs) -> Result<RunReport, CliError> {
    cmd_build(args)
}

/// Oracle failure (exit code 3) when a reference comparison in `report` failed.
pub fn check_report(report: &RunReport) -> Result<(), CliError> {
    if report.oracle_ok() {
        Ok(())
    } else {
        Err(CliError::Oracle(format!(
            "{}: radical or spectrum differs from its reference",
            report.family
        )))
    }
}

fn jordan_on(m: &MatsuoAlgebra, parallel: bool) -> JordanReport {
    let v = if parallel {
        jordan_modulo_radical_parallel(m, true)
    } else {
        jordan_modulo_radical(m, true)
    };
    JordanReport {
        verdict: v.is_jordan,
        counterexample: v.counterexample,
        quadruples_checked: Some(v.quadruples_checked),
        symmetry_reduction_used: Some(v.symmetry_reduction_used),
        case: None,
    }
}

/// Builds `M_eta`, its radical and quotient, and decides whether the
/// quotient is Jordan (sweep for `eta = 1/2`, case analysis otherwise).
pub fn cmd_jordan(args: &GroupArgs, eta: &Rational, parallel: bool) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let (class, family) = args.class()?;
    let half = eta == &rat(1, 2);
    let mut report = base_report(args, &class, family, Some(eta), half);
    let m = build_matsuo(&class, eta.clone()).map_err(|e| CliError::Input {
        name: "BadEta",
        message: e.to_string(),
    })?;
    let radical = m.radical_basis().len();
    report.radical_dim = Some(radical);
    if half {
        report.radical_dim_spectral = Some(radical_dim_via_spectrum(&m).expect("eta = 1/2"));
        report.quotient_dim = Some(m.dim() - radical);
        report.jordan = Some(jordan_on(&m, parallel));
    } else {
        let case = eta_not_half_analysis(&m).map_err(|e| CliError::Oracle(e.to_string()))?;
        let (verdict, quotient, name) = match case {
            EtaCase::SingleElement { quotient_dim } => (true, Some(quotient_dim), "single element"),
            EtaCase::CompleteDiagram { quotient_dim } => {
                (true, Some(quotient_dim), "complete diagram")
            }
            EtaCase::NoJordanFactor => (false, None, "no Jordan factor"),
        };
        report.quotient_dim = quotient;
        report.jordan = Some(JordanReport {
            verdict,
            counterexample: None,
            quadruples_checked: None,
            symmetry_reduction_used: None,
            case: Some(String::from(name)),
        });
    }
    finish(report, start)
}

/// Runs every case of the catalog.
pub fn cmd_theorem1(scope: Scope, parallel: bool) -> Result<Vec<CaseRow>, CliError> {
    theorem1_cases(scope)
        .iter()
        .map(|case| run_case(case, parallel).map_err(CliError::from))
        .collect()
}

/// Oracle failure when any case deviates from its expected row.
pub fn check_rows(rows: &[CaseRow]) -> Result<(), CliError> {
    let bad: Vec<&str> = rows
        .iter()
        .filter(|r| !r.pass)
        .map(|r| r.family.as_str())
        .collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(CliError::Oracle(format!(
            "cases deviating from the expected table: {}",
            bad.join(", ")
        )))
    }
}

pub fn render_theorem1(rows: &[CaseRow], format: Format) -> String {
    render_rows(rows, format)
}

/// Printable summary of the Albert algebra certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlbertSummary {
    pub abs_det: String,
    pub det_matches: bool,
    pub rank: usize,
    pub reference_products_match: bool,
    pub reference_error: Option<String>,
    pub axes_primitive: [bool; 4],
    pub peirce_dims: [[usize; 3]; 4],
    pub jordan: bool,
    pub quadruples_checked: u64,
    pub composition_on_units: bool,
    pub passed: bool,
}

impl AlbertSummary {
    pub fn from_report(r: &AlbertReport) -> Self {
        let composition = matsuo_core::albert::composition_on_units();
        AlbertSummary {
            abs_det: format_rational(&r.determinant.abs()),
            det_matches: r.determinant.abs() == expected_abs_det(),
            rank: r.rank,
            reference_products_match: r.reference_check.is_ok(),
            reference_error: r.reference_check.as_ref().err().map(ToString::to_string),
            axes_primitive: r.axes_primitive,
            peirce_dims: r.peirce_dims,
            jordan: r.jordan.is_jordan,
            quadruples_checked: r.jordan.quadruples_checked,
            composition_on_units: composition,
            passed: r.passed() && composition,
        }
    }

    pub fn render(&self, format: Format) -> String {
        let pass = |b: bool| if b { "PASS" } else { "FAIL" };
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("summary serializes") + "\n",
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(["check", "value", "status"])
                    .expect("in-memory csv");
                for (check, value, ok) in self.lines() {
                    w.write_record([check, value.as_str(), pass(ok)])
                        .expect("in-memory csv");
                }
                String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8")
            }
            Format::Text => {
                let mut out = String::new();
                out += &format!(
                    "|det| = {}  [{}]\n",
                    if self.det_matches {
                        String::from("1/(2^78 * 3^36)")
                    } else {
                        self.abs_det.clone()
                    },
                    pass(self.det_matches)
                );
                out += &format!(
                    "rank of the 27 generated elements: {}  [{}]\n",
                    self.rank,
                    pass(self.rank == 27)
                );
                out += &format!(
                    "27 recomputed products vs reference: [{}]\n",
                    pass(self.reference_products_match)
                );
                if let Some(e) = &self.reference_error {
                    out += &format!("  {e}\n");
                }
                let primitive = self.axes_primitive.iter().filter(|&&p| p).count();
                out += &format!(
                    "{primitive} primitive axes, eta = 1/2  [{}]\n",
                    pass(primitive == 4)
                );
                out += &format!("Peirce dimensions (1, 0, 1/2): {:?}\n", self.peirce_dims);
                out += &format!(
                    "linearized Jordan identity: {} ({} quadruples)\n",
                    pass(self.jordan),
                    self.quadruples_checked
                );
                out += &format!(
                    "octonion norm composition on 64 unit pairs: {}\n",
                    pass(self.composition_on_units)
                );
                out + &format!("overall: {}\n", pass(self.passed))
            }
        }
    }

    fn lines(&self) -> Vec<(&'static str, String, bool)> {
        vec![
            ("abs_det", self.abs_det.clone(), self.det_matches),
            ("rank", self.rank.to_string(), self.rank == 27),
            (
                "reference_products",
                String::from("27"),
                self.reference_products_match,
            ),
            (
                "primitive_axes",
                format!("{:?}", self.axes_primitive),
                self.axes_primitive.iter().all(|&p| p),
            ),
            (
                "jordan_identity",
                self.quadruples_checked.to_string(),
                self.jordan,
            ),
            (
                "norm_composition",
                String::from("64"),
                self.composition_on_units,
            ),
        ]
    }
}

pub fn cmd_albert() -> Result<AlbertSummary, CliError> {
    let report = verify_albert_axial().map_err(|e| CliError::Oracle(e.to_string()))?;
    Ok(AlbertSummary::from_report(&report))
}

pub fn check_albert(summary: &AlbertSummary) -> Result<(), CliError> {
    if summary.passed {
        Ok(())
    } else {
        Err(CliError::Oracle(String::from("Albert certificate failed")))
    }
}

/// Diagram edge list of the selected group.
pub fn cmd_edges(args: &GroupArgs) -> Result<String, CliError> {
    let (class, _) = args.class()?;
    Ok(edge_list(&diagram(&class)))
}

/// JSON structure constants of `M_eta` for the selected group.
pub fn cmd_dump(args: &GroupArgs, eta: &Rational) -> Result<String, CliError> {
    let (class, _) = args.class()?;
    let m = build_matsuo(&class, eta.clone()).map_err(|e| CliError::Input {
        name: "BadEta",
        message: e.to_string(),
    })?;
    let dump = AlgebraDump::new(m.algebra(), Some(eta));
    Ok(serde_json::to_string_pretty(&dump).expect("dump serializes") + "\n")
}
