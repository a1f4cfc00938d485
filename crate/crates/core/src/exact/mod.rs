//! Exact rational scalars, dense rational matrices and the linear-algebra
//! kernels shared by the rest of the crate.
//!
//! Nothing in here touches floating point. Rank and determinant go through
//! fraction-free Bareiss elimination; kernels and echelon forms go through a
//! content-normalized Gauss–Jordan pass. Both run on `i128` first and fall
//! back to big integers only when an intermediate value overflows.

mod elim;

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use elim::{bareiss, charpoly_mod_p, gauss_jordan, root_multiplicity_mod_p, IntEchelon, Ring};

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Dense coordinate vector over the rationals.
pub type RatVector = Vec<Rational>;

/// Shorthand for `n/d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`. No decimal or float syntax is accepted.
pub fn parse_rational(text: &str) -> Result<Rational, ExactError> {
    let bad = || ExactError::BadRational(text.to_string());
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Renders a rational as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("cannot parse rational from {0:?}")]
    BadRational(String),
    #[error("matrix is singular")]
    Singular,
}

/// Mersenne prime 2^31 - 1, used for the modular eigenvalue prefilter.
const FILTER_PRIME: u64 = (1 << 31) - 1;

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for v in self.row(i) {
                write!(f, "{v} ")?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// A reduced row echelon basis of a row space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    /// Nonzero rows; row `k` has a 1 in column `pivots[k]` and zeros in every
    /// other pivot column.
    pub rows: Vec<RatVector>,
    /// Pivot columns, strictly ascending.
    pub pivots: Vec<usize>,
    pub cols: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; the result is zero iff `v` lies in the
    /// row space.
    pub fn reduce(&self, v: &[Rational]) -> RatVector {
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let f = out[p].clone();
            for (o, r) in out.iter_mut().zip(row) {
                if !r.is_zero() {
                    *o -= &f * r;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Columns that carry no pivot, ascending.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols).filter(|&c| !is_pivot[c]).collect()
    }
}

/// Integer eigenvalues of a square matrix with their exact multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerSpectrum {
    /// `(eigenvalue, multiplicity)` in descending eigenvalue order, only
    /// eigenvalues with nonzero multiplicity.
    pub eigenvalues: Vec<(i64, usize)>,
    /// Dimension not accounted for by integer eigenvalues.
    pub unaccounted: usize,
}

fn lcm_of_denominators<'a>(values: impl Iterator<Item = &'a Rational>) -> BigInt {
    let mut l = BigInt::one();
    for v in values {
        if !v.denom().is_one() {
            l = l.lcm(v.denom());
        }
    }
    l
}

fn to_i128_rows(rows: &[Vec<BigInt>]) -> Option<Vec<Vec<i128>>> {
    rows.iter()
        .map(|r| r.iter().map(|v| v.to_i128()).collect::<Option<Vec<_>>>())
        .collect()
}

fn echelon_from_int<R: Ring + Into<BigInt>>(e: IntEchelon<R>, cols: usize) -> Echelon {
    let rows = e
        .rows
        .into_iter()
        .zip(&e.pivots)
        .map(|(row, &p)| {
            let row: Vec<BigInt> = row.into_iter().map(Into::into).collect();
            let pivot = row[p].clone();
            row.into_iter()
                .map(|v| Rational::new(v, pivot.clone()))
                .collect()
        })
        .collect();
    Echelon {
        rows,
        pivots: e.pivots,
        cols,
    }
}

/// Rational RREF of a list of rows of length `cols`.
pub fn echelon_of_rows(rows: &[RatVector], cols: usize) -> Echelon {
    let int_rows: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let l = lcm_of_denominators(r.iter());
            r.iter()
                .map(|v| (v * Rational::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect();
    if let Some(small) = to_i128_rows(&int_rows) {
        if let Some(e) = gauss_jordan(small, cols) {
            return echelon_from_int(e, cols);
        }
    }
    let e = gauss_jordan(int_rows, cols).expect("big integer elimination cannot overflow");
    echelon_from_int(e, cols)
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self, ExactError> {
        if entries.len() != rows * cols {
            return Err(ExactError::ShapeMismatch(alloc::format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(RatMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        RatMatrix {
            rows,
            cols,
            entries,
        }
    }

    /// Builds a matrix from rows, which must all have length `cols`.
    pub fn from_rows(rows: &[RatVector], cols: usize) -> Result<Self, ExactError> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(ExactError::ShapeMismatch(alloc::format!(
                "row of length {} in a matrix with {cols} columns",
                bad.len()
            )));
        }
        Ok(RatMatrix {
            rows: rows.len(),
            cols,
            entries: rows.iter().flatten().cloned().collect(),
        })
    }

    pub fn from_i64(rows: usize, cols: usize, values: &[i64]) -> Result<Self, ExactError> {
        Self::new(rows, cols, values.iter().map(|&v| int(v)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn to_rows(&self) -> Vec<RatVector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix, ExactError> {
        if self.cols != other.rows {
            return Err(ExactError::ShapeMismatch(alloc::format!(
                "{}x{} times {}x{}",
                self.rows,
                self.cols,
                other.rows,
                other.cols
            )));
        }
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> RatVector {
        assert_eq!(v.len(), self.cols, "vector length must match column count");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    /// `self - t*I` for a square matrix.
    pub fn shifted(&self, t: &Rational) -> Result<RatMatrix, ExactError> {
        self.require_square()?;
        let mut m = self.clone();
        for i in 0..self.rows {
            let v = m.get(i, i) - t;
            m.set(i, i, v);
        }
        Ok(m)
    }

    fn require_square(&self) -> Result<(), ExactError> {
        if self.is_square() {
            Ok(())
        } else {
            Err(ExactError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Each row scaled by the lcm of its denominators, plus the product of
    /// those scale factors.
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let mut total = BigInt::one();
        let rows = (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = lcm_of_denominators(row.iter());
                let lr = Rational::from_integer(l.clone());
                total *= &l;
                row.iter().map(|v| (v * &lr).to_integer()).collect()
            })
            .collect();
        (rows, total)
    }

    fn is_integral(&self) -> bool {
        self.entries.iter().all(|v| v.is_integer())
    }

    /// Row rank over the rationals.
    pub fn rank(&self) -> usize {
        let (rows, _) = self.integer_rows();
        if let Some(small) = to_i128_rows(&rows) {
            if let Some(b) = bareiss(small, self.cols) {
                return b.rank;
            }
        }
        bareiss(rows, self.cols)
            .expect("big integer elimination cannot overflow")
            .rank
    }

    /// Exact determinant; rejects non-square input.
    pub fn det(&self) -> Result<Rational, ExactError> {
        self.require_square()?;
        if self.rows == 0 {
            return Ok(Rational::one());
        }
        let (rows, scale) = self.integer_rows();
        let det = match to_i128_rows(&rows).and_then(|small| bareiss(small, self.cols)) {
            Some(b) => BigInt::from(b.det),
            None => {
                bareiss(rows, self.cols)
                    .expect("big integer elimination cannot overflow")
                    .det
            }
        };
        Ok(Rational::new(det, scale))
    }

    /// Exact inverse via reduction of `[A | I]`.
    pub fn inverse(&self) -> Result<RatMatrix, ExactError> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(RatMatrix::zeros(0, 0));
        }
        let rows: Vec<RatVector> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                }));
                r
            })
            .collect();
        let e = echelon_of_rows(&rows, 2 * n);
        if e.pivots.len() < n || e.pivots[n - 1] != n - 1 {
            return Err(ExactError::Singular);
        }
        Ok(RatMatrix::from_fn(n, n, |i, j| e.rows[i][n + j].clone()))
    }

    /// Reduced row echelon form of the row space.
    pub fn rref(&self) -> Echelon {
        echelon_of_rows(&self.to_rows(), self.cols)
    }

    /// Basis of the right kernel, in reduced row echelon form with ascending
    /// pivots. Empty iff the matrix has full column rank.
    pub fn nullspace_basis(&self) -> Vec<RatVector> {
        let e = self.rref();
        let free = e.free_columns();
        if free.is_empty() {
            return Vec::new();
        }
        let kernel: Vec<RatVector> = free
            .iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &p) in e.rows.iter().zip(&e.pivots) {
                    if !row[f].is_zero() {
                        v[p] = -row[f].clone();
                    }
                }
                v
            })
            .collect();
        echelon_of_rows(&kernel, self.cols).rows
    }

    /// Nullity of `self - t*I`. For the symmetric matrices handled here this
    /// is the multiplicity of `t` as an eigenvalue.
    pub fn integer_eigen_multiplicity(&self, t: i64) -> Result<usize, ExactError> {
        let shifted = self.shifted(&int(t))?;
        Ok(self.cols - shifted.rank())
    }

    /// Largest absolute row sum, rounded up; no eigenvalue exceeds it in
    /// absolute value.
    fn gershgorin_bound(&self) -> i64 {
        (0..self.rows)
            .map(|i| {
                let s: Rational = self.row(i).iter().map(|v| v.abs()).sum();
                s.ceil().to_integer().to_i64().unwrap_or(i64::MAX)
            })
            .max()
            .unwrap_or(0)
    }

    /// Sweeps integer candidates `t` in `[-n, n]` and returns every integer
    /// eigenvalue with its exact multiplicity.
    ///
    /// Candidates outside the Gershgorin disc are skipped. For integral input
    /// the characteristic polynomial is first computed modulo a prime `p`:
    /// an integer eigenvalue of multiplicity `k` is a root of multiplicity at
    /// least `k` modulo `p`, so candidates that are not roots modulo `p` are
    /// certified non-eigenvalues and only the survivors pay for exact
    /// elimination.
    pub fn integer_spectrum(&self) -> Result<IntegerSpectrum, ExactError> {
        self.require_square()?;
        let n = self.rows as i64;
        let bound = self.gershgorin_bound().min(n);
        let p = FILTER_PRIME;
        let charpoly = self.is_integral().then(|| {
            let reduced = (0..self.rows)
                .map(|i| {
                    self.row(i)
                        .iter()
                        .map(|v| {
                            let r = v.numer().mod_floor(&BigInt::from(p));
                            r.to_u64().expect("residue fits in u64")
                        })
                        .collect()
                })
                .collect();
            charpoly_mod_p(reduced, p)
        });
        let mut eigenvalues = Vec::new();
        let mut total = 0usize;
        for t in (-bound..=bound).rev() {
            if total == self.rows {
                break;
            }
            if let Some(poly) = &charpoly {
                let residue = t.rem_euclid(p as i64) as u64;
                if root_multiplicity_mod_p(poly, residue, p) == 0 {
                    continue;
                }
            }
            let mult = self.integer_eigen_multiplicity(t)?;
            if mult > 0 {
                eigenvalues.push((t, mult));
                total += mult;
            }
        }
        Ok(IntegerSpectrum {
            eigenvalues,
            unaccounted: self.rows - total.min(self.rows),
        })
    }
}

/// `sum_i a_i * b_i` over exact rationals.
pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Least common multiple of the denominators in `values`.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    lcm_of_denominators(values.into_iter())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: usize, cols: usize, v: &[i64]) -> RatMatrix {
        RatMatrix::from_i64(rows, cols, v).unwrap()
    }

    #[test]
    fn rank_of_identity_and_zero() {
        assert_eq!(RatMatrix::identity(2).rank(), 2);
        assert_eq!(RatMatrix::zeros(3, 3).rank(), 0);
    }

    #[test]
    fn nullspace_examples() {
        assert!(RatMatrix::identity(4).nullspace_basis().is_empty());
        let k = m(1, 2, &[1, -1]).nullspace_basis();
        assert_eq!(k, vec![vec![int(1), int(1)]]);
    }

    #[test]
    fn nullspace_is_reduced_echelon() {
        // rank 1, kernel of dimension 2
        let a = m(2, 3, &[1, 2, 3, 2, 4, 6]);
        let k = a.nullspace_basis();
        assert_eq!(k.len(), 2);
        assert_eq!(k[0], vec![int(1), int(0), rat(-1, 3)]);
        assert_eq!(k[1], vec![int(0), int(1), rat(-2, 3)]);
        for v in &k {
            assert!(is_zero_vector(&a.mul_vec(v)));
        }
    }

    #[test]
    fn determinants() {
        assert_eq!(RatMatrix::identity(27).det().unwrap(), int(1));
        let d = RatMatrix::new(2, 2, vec![rat(1, 2), int(0), int(0), rat(1, 3)]).unwrap();
        assert_eq!(d.det().unwrap(), rat(1, 6));
        let swap = m(2, 2, &[0, 1, 1, 0]);
        assert_eq!(swap.det().unwrap(), int(-1));
        assert_eq!(
            m(2, 3, &[1, 2, 3, 4, 5, 6]).det(),
            Err(ExactError::NotSquare { rows: 2, cols: 3 })
        );
    }

    #[test]
    fn eigen_multiplicity_of_complete_graph() {
        let n = 9;
        let k9 = RatMatrix::from_fn(n, n, |i, j| if i == j { int(0) } else { int(1) });
        assert_eq!(k9.integer_eigen_multiplicity(-1).unwrap(), 8);
        assert_eq!(k9.integer_eigen_multiplicity(8).unwrap(), 1);
        assert_eq!(k9.integer_eigen_multiplicity(3).unwrap(), 0);
        let spec = k9.integer_spectrum().unwrap();
        assert_eq!(spec.eigenvalues, vec![(8, 1), (-1, 8)]);
        assert_eq!(spec.unaccounted, 0);
    }

    #[test]
    fn non_integer_spectrum_is_reported() {
        // path on 3 vertices: eigenvalues 0, +-sqrt(2)
        let p3 = m(3, 3, &[0, 1, 0, 1, 0, 1, 0, 1, 0]);
        let spec = p3.integer_spectrum().unwrap();
        assert_eq!(spec.eigenvalues, vec![(0, 1)]);
        assert_eq!(spec.unaccounted, 2);
    }

    #[test]
    fn non_square_rejected() {
        let a = m(1, 2, &[1, 1]);
        assert!(a.integer_eigen_multiplicity(0).is_err());
        assert!(a.integer_spectrum().is_err());
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("1/2").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-3").unwrap(), int(-3));
        assert_eq!(parse_rational(" 4 / 6 ").unwrap(), rat(2, 3));
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1/0").is_err());
        assert_eq!(format_rational(&rat(-1, 3)), "-1/3");
        assert_eq!(format_rational(&int(2)), "2");
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(3, 3, &[2, 1, 0, 1, 3, 1, 0, 1, 4]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), RatMatrix::identity(3));
        assert_eq!(m(2, 2, &[1, 2, 2, 4]).inverse(), Err(ExactError::Singular));
    }

    #[test]
    fn echelon_membership() {
        let e = echelon_of_rows(
            &[vec![int(1), int(1), int(0)], vec![int(0), int(1), int(1)]],
            3,
        );
        assert!(e.contains(&[int(1), int(2), int(1)]));
        assert!(!e.contains(&[int(1), int(0), int(0)]));
        assert_eq!(e.free_columns(), vec![2]);
    }

    #[test]
    fn big_integer_fallback_agrees() {
        // Hilbert-like matrix whose Bareiss minors overflow i128 quickly
        let n = 30;
        let h = RatMatrix::from_fn(n, n, |i, j| rat(1, (i + j + 1) as i64));
        assert_eq!(h.rank(), n);
        assert!(!h.det().unwrap().is_zero());
    }
}
