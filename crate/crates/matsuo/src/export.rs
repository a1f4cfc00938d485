//! Flat file formats: diagram edge lists and algebra dumps.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use matsuo_core::exact::{format_rational, parse_rational, Rational};
use matsuo_core::fischer::Diagram;
use matsuo_core::matsuo::{Algebra, SparseVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExportError {
    #[error("malformed edge list at line {line}: {message}")]
    EdgeList { line: usize, message: String },
    #[error("malformed algebra dump: {0}")]
    Dump(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// `n m` header, then one `i j` line per edge (0-based, `i < j`, sorted).
pub fn edge_list(g: &Diagram) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.n(), edges.len());
    for (i, j) in edges {
        let _ = writeln!(out, "{i} {j}");
    }
    out
}

pub fn parse_edge_list(text: &str) -> Result<Diagram, ExportError> {
    let err = |line: usize, message: &str| ExportError::EdgeList {
        line,
        message: message.to_string(),
    };
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let pair = |k: usize, l: &str| -> Result<(usize, usize), ExportError> {
        let v: Vec<usize> = l
            .split_whitespace()
            .map(|w| w.parse().map_err(|_| err(k + 1, "expected two integers")))
            .collect::<Result<_, _>>()?;
        match v[..] {
            [a, b] => Ok((a, b)),
            _ => Err(err(k + 1, "expected two integers")),
        }
    };
    let (k, header) = lines.next().ok_or_else(|| err(1, "missing header"))?;
    let (n, m) = pair(k, header)?;
    let mut edges = Vec::with_capacity(m);
    for (k, l) in lines {
        let (i, j) = pair(k, l)?;
        if i >= j || j >= n {
            return Err(err(k + 1, "edges need i < j < n"));
        }
        edges.push((i, j));
    }
    if edges.len() != m {
        return Err(err(1, "edge count differs from header"));
    }
    Ok(Diagram::from_edges(n, &edges))
}

/// JSON form of an algebra: structure constants keyed by `"i,j"` (`i <= j`
/// for commutative algebras, all pairs otherwise) as `[k, "p/q"]` lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDump {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<String>,
    pub labels: Vec<String>,
    pub products: BTreeMap<String, Vec<(usize, String)>>,
}

impl AlgebraDump {
    pub fn new(a: &Algebra, eta: Option<&Rational>) -> Self {
        let n = a.dim();
        let commutative = a.is_commutative();
        let mut products = BTreeMap::new();
        for i in 0..n {
            for j in if commutative { i..n } else { 0..n } {
                let p = a.product(i, j);
                if !p.is_empty() {
                    let entry = p.iter().map(|(k, c)| (*k, format_rational(c))).collect();
                    products.insert(format!("{i},{j}"), entry);
                }
            }
        }
        AlgebraDump {
            dim: n,
            eta: eta.map(format_rational),
            labels: a.labels().to_vec(),
            products,
        }
    }

    pub fn to_algebra(&self) -> Result<Algebra, ExportError> {
        let n = self.dim;
        let bad = |m: String| ExportError::Dump(m);
        let mut table: Vec<Option<SparseVector>> = vec![None; n * n];
        for (key, entries) in &self.products {
            let (i, j) = key
                .split_once(',')
                .and_then(|(a, b)| Some((a.parse::<usize>().ok()?, b.parse::<usize>().ok()?)))
                .filter(|&(i, j)| i < n && j < n)
                .ok_or_else(|| bad(format!("bad key {key:?}")))?;
            let v: SparseVector = entries
                .iter()
                .map(|(k, c)| {
                    let c = parse_rational(c).map_err(|_| bad(format!("bad rational {c:?}")))?;
                    if *k >= n {
                        return Err(bad(format!("index {k} out of range")));
                    }
                    Ok((*k, c))
                })
                .collect::<Result<_, _>>()?;
            table[j * n + i].get_or_insert_with(|| v.clone());
            table[i * n + j] = Some(v);
        }
        let products = table.into_iter().map(Option::unwrap_or_default).collect();
        Algebra::new(self.labels.clone(), products).map_err(|e| bad(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use matsuo_core::constructions::Family;
    use matsuo_core::exact::rat;
    use matsuo_core::fischer::diagram;
    use matsuo_core::matsuo::build_matsuo;

    #[test]
    fn edge_list_round_trip() {
        let g = diagram(&Family::Sym { m: 4 }.build_class().unwrap());
        let text = edge_list(&g);
        assert!(text.starts_with("6 12\n"));
        assert_eq!(parse_edge_list(&text).unwrap().edges(), g.edges());
        assert!(parse_edge_list("3 1\n2 1\n").is_err());
    }

    #[test]
    fn dump_round_trip() {
        let m = build_matsuo(&Family::Sym { m: 4 }.build_class().unwrap(), rat(1, 3)).unwrap();
        let dump = AlgebraDump::new(m.algebra(), Some(m.eta()));
        let json = serde_json::to_string(&dump).unwrap();
        assert!(json.contains("\"eta\":\"1/3\""));
        let back: AlgebraDump = serde_json::from_str(&json).unwrap();
        assert_eq!(back, dump);
        let a = back.to_algebra().unwrap();
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(a.product(i, j), m.algebra().product(i, j));
            }
        }
    }
}
