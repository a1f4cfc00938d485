//! Serializable run reports and their JSON / CSV / text renderings.

use serde::{Deserialize, Serialize};

/// Output format shared by every command.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Family parameters as given on the command line.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<String>,
    /// `"p/q"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub file: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JordanReport {
    pub verdict: bool,
    /// `(x, y, z, w)` basis indices.
    #[serde(default)]
    pub counterexample: Option<[usize; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quadruples_checked: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetry_reduction_used: Option<bool>,
    /// Outcome of the analysis for `eta != 1/2`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub family_type: String,
    pub expected_class_size: usize,
    pub expected_spectrum: Vec<(i64, usize)>,
    #[serde(rename = "match")]
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub family: String,
    pub params: Params,
    pub class_size: usize,
    pub connected: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<Vec<(i64, usize)>>,
    /// Dimension not accounted for by integer eigenvalues.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectrum_unaccounted: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radical_dim: Option<usize>,
    /// Multiplicity of `-4` in the spectrum (an independent radical count
    /// when `eta = 1/2`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radical_dim_spectral: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quotient_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jordan: Option<JordanReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
    pub timing_seconds: f64,
}

pub fn format_spectrum(pairs: &[(i64, usize)]) -> String {
    pairs
        .iter()
        .map(|(e, m)| format!("[{e}]^{m}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(String::new, ToString::to_string)
}

impl RunReport {
    /// `false` when an oracle comparison was made and failed.
    pub fn oracle_ok(&self) -> bool {
        let spectrum_ok = self.oracle.as_ref().map_or(true, |o| o.matches);
        let radical_ok = match (
            &self.params.eta,
            self.radical_dim,
            self.radical_dim_spectral,
        ) {
            (Some(eta), Some(a), Some(b)) if eta == "1/2" => a == b,
            _ => true,
        };
        spectrum_ok && radical_ok
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("reports serialize") + "\n",
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record([
                    "family",
                    "params",
                    "class_size",
                    "connected",
                    "spectrum",
                    "radical_dim",
                    "radical_dim_spectral",
                    "quotient_dim",
                    "jordan",
                    "counterexample",
                    "oracle_match",
                    "timing_seconds",
                ])
                .expect("in-memory csv");
                let j = self.jordan.as_ref();
                w.write_record([
                    self.family.clone(),
                    serde_json::to_string(&self.params).expect("params serialize"),
                    self.class_size.to_string(),
                    self.connected.to_string(),
                    opt(&self.spectrum.as_deref().map(format_spectrum)),
                    opt(&self.radical_dim),
                    opt(&self.radical_dim_spectral),
                    opt(&self.quotient_dim),
                    opt(&j.map(|j| j.verdict)),
                    opt(&j.and_then(|j| j.counterexample).map(|c| format!("{c:?}"))),
                    opt(&self.oracle.as_ref().map(|o| o.matches)),
                    format!("{:.3}", self.timing_seconds),
                ])
                .expect("in-memory csv");
                String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8")
            }
            Format::Text => {
                let mut out = format!(
                    "family: {}\nclass size: {}\nconnected: {}\n",
                    self.family, self.class_size, self.connected
                );
                if let Some(s) = &self.spectrum {
                    out += &format!("spectrum: {}\n", format_spectrum(s));
                }
                if let Some(o) = &self.oracle {
                    out += &format!(
                        "expected ({}): size {}, spectrum {} -> {}\n",
                        o.family_type,
                        o.expected_class_size,
                        format_spectrum(&o.expected_spectrum),
                        if o.matches { "match" } else { "MISMATCH" }
                    );
                }
                if let Some(r) = self.radical_dim {
                    out += &format!("radical dim: {r}");
                    if let Some(s) = self.radical_dim_spectral {
                        out += &format!(" (multiplicity of -4: {s})");
                    }
                    out += "\n";
                }
                if let Some(q) = self.quotient_dim {
                    out += &format!("quotient dim: {q}\n");
                }
                if let Some(j) = &self.jordan {
                    out += &format!("jordan: {}", j.verdict);
                    if let Some(c) = &j.case {
                        out += &format!(" ({c})");
                    }
                    if let Some(c) = j.counterexample {
                        out += &format!(", counterexample (x,y,z,w) = {c:?}");
                    }
                    if let Some(q) = j.quadruples_checked {
                        out += &format!(", {q} quadruples checked");
                    }
                    out += "\n";
                }
                out + &format!("time: {:.3} s\n", self.timing_seconds)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> RunReport {
        RunReport {
            family: String::from("Sp6(2)"),
            params: Params {
                m: Some(3),
                eta: Some(String::from("1/2")),
                ..Params::default()
            },
            class_size: 63,
            connected: true,
            spectrum: Some(vec![(32, 1), (4, 27), (-4, 35)]),
            spectrum_unaccounted: None,
            radical_dim: Some(35),
            radical_dim_spectral: Some(35),
            quotient_dim: Some(28),
            jordan: Some(JordanReport {
                verdict: true,
                counterexample: None,
                quadruples_checked: Some(41664),
                symmetry_reduction_used: Some(true),
                case: None,
            }),
            oracle: Some(OracleReport {
                family_type: String::from("PR4(h=0,m=3)"),
                expected_class_size: 63,
                expected_spectrum: vec![(32, 1), (4, 27), (-4, 35)],
                matches: true,
            }),
            timing_seconds: 0.25,
        }
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        let json = r.render(Format::Json);
        assert!(json.contains("\"match\": true"));
        let back: RunReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn csv_has_header_and_row() {
        let text = sample().render(Format::Csv);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].starts_with("family,params,class_size"));
        assert!(lines[1].starts_with("Sp6(2),"));
    }

    #[test]
    fn oracle_flags() {
        let mut r = sample();
        assert!(r.oracle_ok());
        r.radical_dim_spectral = Some(34);
        assert!(!r.oracle_ok());
    }
}
