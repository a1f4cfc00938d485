//! Diagrams of 3-transposition classes, Fischer-space lines, exact integer
//! spectra, and closed-form spectra of the classified families.

mod table;

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{self, Write};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::{RatMatrix, Rational};
use crate::group::TranspositionClass;

pub use table::{table1_row, PrType, Sign, SpectrumEntry, Table1Row};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FischerError {
    #[error("third point of the line through {i} and {j} is not in the class")]
    InconsistentLine { i: usize, j: usize },
    #[error("parameters outside the declared range: {0}")]
    BadParams(String),
}

/// The commuting graph complement: vertices are class elements, `i ~ j` iff
/// `|D_i D_j| = 3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    n: usize,
    words: usize,
    bits: Vec<u64>,
    neighbors: Vec<Vec<u32>>,
}

impl Diagram {
    /// Builds a diagram from an undirected edge list; loops are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let words = n.div_ceil(64).max(1);
        let mut bits = vec![0u64; n * words];
        for &(i, j) in edges {
            assert!(i != j && i < n && j < n, "invalid edge ({i}, {j})");
            bits[i * words + j / 64] |= 1 << (j % 64);
            bits[j * words + i / 64] |= 1 << (i % 64);
        }
        let neighbors = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| bits[i * words + j / 64] >> (j % 64) & 1 == 1)
                    .map(|j| j as u32)
                    .collect()
            })
            .collect();
        Diagram {
            n,
            words,
            bits,
            neighbors,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn neighbors(&self, i: usize) -> &[u32] {
        &self.neighbors[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors[i].len()
    }

    /// Edges `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for &j in &self.neighbors[i] {
                if i < j as usize {
                    out.push((i, j as usize));
                }
            }
        }
        out
    }

    /// The common degree, if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.neighbors.first().map_or(0, Vec::len);
        self.neighbors.iter().all(|v| v.len() == d).then_some(d)
    }

    pub fn is_complete(&self) -> bool {
        self.regular_degree() == Some(self.n.saturating_sub(1))
    }

    pub fn adjacency_matrix(&self) -> RatMatrix {
        RatMatrix::from_fn(self.n, self.n, |i, j| {
            if self.adjacent(i, j) {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    /// Number of triangles through each vertex.
    pub fn triangle_counts(&self) -> Vec<usize> {
        (0..self.n)
            .map(|v| {
                let row = &self.bits[v * self.words..(v + 1) * self.words];
                let twice: u32 = self.neighbors[v]
                    .iter()
                    .map(|&u| {
                        let other = &self.bits[u as usize * self.words..][..self.words];
                        row.iter()
                            .zip(other)
                            .map(|(a, b)| (a & b).count_ones())
                            .sum::<u32>()
                    })
                    .sum();
                twice as usize / 2
            })
            .collect()
    }
}

/// Diagram of a class: adjacency from the pair-order table.
pub fn diagram(class: &TranspositionClass) -> Diagram {
    let n = class.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if class.adjacent(i, j) {
                edges.push((i, j));
            }
        }
    }
    Diagram::from_edges(n, &edges)
}

pub fn is_connected(g: &Diagram) -> bool {
    if g.n == 0 {
        return true;
    }
    let mut seen = vec![false; g.n];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    let mut count = 1;
    while let Some(v) = queue.pop_front() {
        for &u in g.neighbors(v) {
            if !core::mem::replace(&mut seen[u as usize], true) {
                count += 1;
                queue.push_back(u as usize);
            }
        }
    }
    count == g.n
}

/// All lines `{c, d, c^d}` through adjacent pairs, as sorted index triples in
/// ascending order.
pub fn lines(class: &TranspositionClass) -> Result<Vec<[usize; 3]>, FischerError> {
    let n = class.len();
    let mut out = BTreeSet::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if !class.adjacent(i, j) {
                continue;
            }
            let k = class
                .third_point(i, j)
                .ok_or(FischerError::InconsistentLine { i, j })?;
            if class.third_point(j, i) != Some(k) || k == i || k == j {
                return Err(FischerError::InconsistentLine { i, j });
            }
            let mut t = [i, j, k];
            t.sort_unstable();
            out.insert(t);
        }
    }
    Ok(out.into_iter().collect())
}

/// Integer eigenvalues with multiplicities, in descending order (the degree
/// of a connected regular graph comes first), plus the dimension not
/// accounted for by integer eigenvalues.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SpectrumReport {
    pub pairs: Vec<(i64, usize)>,
    pub unaccounted: usize,
}

impl SpectrumReport {
    /// Merges equal eigenvalues, drops zero multiplicities and sorts
    /// descending.
    pub fn canonical(pairs: impl IntoIterator<Item = (i64, usize)>, unaccounted: usize) -> Self {
        let mut merged: BTreeMap<i64, usize> = BTreeMap::new();
        for (e, m) in pairs {
            *merged.entry(e).or_default() += m;
        }
        SpectrumReport {
            pairs: merged.into_iter().rev().filter(|&(_, m)| m > 0).collect(),
            unaccounted,
        }
    }

    pub fn multiplicity(&self, eigenvalue: i64) -> usize {
        self.pairs
            .iter()
            .find(|&&(e, _)| e == eigenvalue)
            .map_or(0, |&(_, m)| m)
    }

    pub fn total(&self) -> usize {
        self.pairs.iter().map(|&(_, m)| m).sum::<usize>() + self.unaccounted
    }
}

impl fmt::Display for SpectrumReport {
    /// `((k; [e]^m, ...))` with the largest eigenvalue before the semicolon
    /// (its multiplicity is shown only when it exceeds one).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "((")?;
        for (idx, &(e, m)) in self.pairs.iter().enumerate() {
            match idx {
                0 if m == 1 => write!(f, "{e}")?,
                0 => write!(f, "[{e}]^{m}")?,
                1 => write!(f, "; [{e}]^{m}")?,
                _ => write!(f, ", [{e}]^{m}")?,
            }
        }
        if self.unaccounted > 0 {
            write!(f, " + {} non-integer", self.unaccounted)?;
        }
        write!(f, "))")
    }
}

/// Exact integer spectrum of the adjacency matrix.
pub fn spectrum(g: &Diagram) -> SpectrumReport {
    let s = g
        .adjacency_matrix()
        .integer_spectrum()
        .expect("adjacency matrices are square");
    SpectrumReport::canonical(s.eigenvalues, s.unaccounted)
}

/// The closed-form spectrum of a Table 1 row.
pub fn expected_spectrum(row: &Table1Row) -> SpectrumReport {
    row.spectrum()
}

/// Isomorphism invariant: vertex count, sorted degrees, spectrum and sorted
/// per-vertex triangle counts, serialized canonically. Equal fingerprints are
/// necessary (not sufficient) for isomorphic diagrams.
pub fn diagram_fingerprint(g: &Diagram) -> String {
    let mut degrees: Vec<usize> = (0..g.n()).map(|i| g.degree(i)).collect();
    degrees.sort_unstable();
    let mut triangles = g.triangle_counts();
    triangles.sort_unstable();
    let mut out = String::new();
    let _ = write!(
        out,
        "n={};degrees={};spectrum={};triangles={}",
        g.n(),
        run_length(&degrees),
        spectrum(g),
        run_length(&triangles)
    );
    out
}

fn run_length(sorted: &[usize]) -> String {
    let mut out = String::new();
    let mut k = 0;
    while k < sorted.len() {
        let v = sorted[k];
        let run = sorted[k..].iter().take_while(|&&x| x == v).count();
        if !out.is_empty() {
            out.push(',');
        }
        let _ = write!(out, "{v}x{run}");
        k += run;
    }
    out
}
