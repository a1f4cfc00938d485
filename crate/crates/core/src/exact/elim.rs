//! Integer elimination kernels.
//!
//! Every routine is generic over [`Ring`], which is implemented for `i128`
//! (checked, returns `None` on overflow) and for `BigInt` (never overflows).
//! Callers try the machine-word path first and rerun on big integers only
//! when it reports overflow.

use alloc::vec::Vec;
use core::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) trait Ring: Clone + PartialEq + Debug {
    fn r_zero() -> Self;
    fn r_one() -> Self;
    fn r_is_zero(&self) -> bool;
    fn r_is_negative(&self) -> bool;
    fn neg(&self) -> Self;
    /// `a*b - c*d`, or `None` on overflow.
    fn mul_sub(a: &Self, b: &Self, c: &Self, d: &Self) -> Option<Self>;
    fn exact_div(&self, d: &Self) -> Self;
    fn gcd(&self, other: &Self) -> Self;
}

impl Ring for i128 {
    fn r_zero() -> Self {
        0
    }
    fn r_one() -> Self {
        1
    }
    fn r_is_zero(&self) -> bool {
        *self == 0
    }
    fn r_is_negative(&self) -> bool {
        *self < 0
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn mul_sub(a: &Self, b: &Self, c: &Self, d: &Self) -> Option<Self> {
        a.checked_mul(*b)?.checked_sub(c.checked_mul(*d)?)
    }
    fn exact_div(&self, d: &Self) -> Self {
        debug_assert_eq!(self % d, 0);
        self / d
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
}

impl Ring for BigInt {
    fn r_zero() -> Self {
        Zero::zero()
    }
    fn r_one() -> Self {
        One::one()
    }
    fn r_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn r_is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul_sub(a: &Self, b: &Self, c: &Self, d: &Self) -> Option<Self> {
        Some(a * b - c * d)
    }
    fn exact_div(&self, d: &Self) -> Self {
        self / d
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
}

/// Result of a fraction-free forward elimination.
pub(crate) struct Bareiss<R> {
    pub rank: usize,
    /// Determinant of the matrix when it is square, otherwise unspecified.
    pub det: R,
}

/// Fraction-free (Bareiss) forward elimination with row pivoting.
///
/// Columns without a pivot are skipped, so this also yields the rank of
/// rectangular or singular input.
pub(crate) fn bareiss<R: Ring>(mut m: Vec<Vec<R>>, cols: usize) -> Option<Bareiss<R>> {
    let rows = m.len();
    let mut prev = R::r_one();
    let mut rank = 0;
    let mut negate = false;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !m[i][c].r_is_zero()) else {
            continue;
        };
        if p != rank {
            m.swap(p, rank);
            negate = !negate;
        }
        let (head, tail) = m.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let pivot = &pivot_row[c];
        for row in tail.iter_mut() {
            let lead = row[c].clone();
            for j in (c + 1)..cols {
                let v = R::mul_sub(&row[j], pivot, &lead, &pivot_row[j])?;
                row[j] = v.exact_div(&prev);
            }
            row[c] = R::r_zero();
        }
        prev = pivot.clone();
        rank += 1;
    }
    let det = if rank == rows && rows == cols {
        if negate {
            prev.neg()
        } else {
            prev
        }
    } else {
        R::r_zero()
    };
    Some(Bareiss { rank, det })
}

fn make_primitive<R: Ring>(row: &mut [R], pivot_col: Option<usize>) {
    let mut g = R::r_zero();
    for v in row.iter() {
        if !v.r_is_zero() {
            g = g.gcd(v);
        }
    }
    if g.r_is_zero() {
        return;
    }
    let flip = pivot_col.is_some_and(|c| row[c].r_is_negative());
    let g = if flip { g.neg() } else { g };
    if g != R::r_one() {
        for v in row.iter_mut() {
            if !v.r_is_zero() {
                *v = v.exact_div(&g);
            }
        }
    }
}

/// Integer reduced row echelon form.
///
/// Rows are kept primitive (content 1) with a positive pivot; every pivot
/// column is zero outside its pivot row. Dividing each row by its pivot gives
/// the rational RREF.
pub(crate) struct IntEchelon<R> {
    pub rows: Vec<Vec<R>>,
    pub pivots: Vec<usize>,
}

pub(crate) fn gauss_jordan<R: Ring>(mut m: Vec<Vec<R>>, cols: usize) -> Option<IntEchelon<R>> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].r_is_zero()) else {
            continue;
        };
        m.swap(p, r);
        make_primitive(&mut m[r], Some(c));
        let pivot_row = m[r].clone();
        let pivot = &pivot_row[c];
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].r_is_zero() {
                continue;
            }
            let lead = row[c].clone();
            for j in 0..cols {
                if pivot_row[j].r_is_zero() && row[j].r_is_zero() {
                    continue;
                }
                row[j] = R::mul_sub(&row[j], pivot, &lead, &pivot_row[j])?;
            }
            make_primitive(row, None);
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    for (row, &c) in m.iter_mut().zip(&pivots) {
        make_primitive(row, Some(c));
    }
    Some(IntEchelon { rows: m, pivots })
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn invmod(a: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let mut base = a;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod(result, base, p);
        }
        base = mulmod(base, base, p);
        e >>= 1;
    }
    result
}

/// Characteristic polynomial `det(xI - M)` over `GF(p)` of a square matrix
/// already reduced modulo the prime `p`, via reduction to upper Hessenberg
/// form. Coefficients are listed from the constant term up; the result is
/// monic of degree `n`.
pub(crate) fn charpoly_mod_p(mut h: Vec<Vec<u64>>, p: u64) -> Vec<u64> {
    let n = h.len();
    for m in 1..n.saturating_sub(1) {
        let Some(piv) = (m..n).find(|&i| h[i][m - 1] != 0) else {
            continue;
        };
        if piv != m {
            h.swap(piv, m);
            for row in h.iter_mut() {
                row.swap(piv, m);
            }
        }
        let inv = invmod(h[m][m - 1], p);
        for i in (m + 1)..n {
            let u = mulmod(h[i][m - 1], inv, p);
            if u == 0 {
                continue;
            }
            let (top, bottom) = h.split_at_mut(i);
            for (hij, &hmj) in bottom[0].iter_mut().zip(&top[m]) {
                let v = mulmod(u, hmj, p);
                *hij = (*hij + p - v) % p;
            }
            for row in h.iter_mut() {
                let v = mulmod(u, row[i], p);
                row[m] = (row[m] + v) % p;
            }
        }
    }
    // polys[k] = characteristic polynomial of the leading k x k block
    let mut polys: Vec<Vec<u64>> = Vec::with_capacity(n + 1);
    polys.push(alloc::vec![1]);
    for k in 1..=n {
        let prev = &polys[k - 1];
        let mut next = alloc::vec![0u64; k + 1];
        let diag = h[k - 1][k - 1];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = (next[d + 1] + c) % p;
            next[d] = (next[d] + p - mulmod(diag, c, p)) % p;
        }
        let mut sub = 1u64;
        for i in 1..k {
            sub = mulmod(sub, h[k - i][k - i - 1], p);
            if sub == 0 {
                break;
            }
            let coef = mulmod(h[k - 1 - i][k - 1], sub, p);
            if coef == 0 {
                continue;
            }
            for (d, &c) in polys[k - 1 - i].iter().enumerate() {
                next[d] = (next[d] + p - mulmod(coef, c, p)) % p;
            }
        }
        polys.push(next);
    }
    polys.pop().expect("at least the empty product")
}

/// Multiplicity of `t` as a root of `poly` over `GF(p)`.
pub(crate) fn root_multiplicity_mod_p(poly: &[u64], t: u64, p: u64) -> usize {
    let mut q = poly.to_vec();
    let mut mult = 0;
    while q.len() > 1 {
        // synthetic division by (x - t)
        let mut quotient = alloc::vec![0u64; q.len() - 1];
        let mut carry = 0u64;
        for d in (0..q.len()).rev() {
            let v = (q[d] + mulmod(carry, t, p)) % p;
            if d == 0 {
                carry = v;
            } else {
                quotient[d - 1] = v;
                carry = v;
            }
        }
        if carry != 0 {
            break;
        }
        mult += 1;
        q = quotient;
    }
    mult
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    const P: u64 = 101;

    #[test]
    fn charpoly_of_small_matrices() {
        // [[2, 1], [1, 2]]: x^2 - 4x + 3 = (x - 1)(x - 3)
        let c = charpoly_mod_p(vec![vec![2, 1], vec![1, 2]], P);
        assert_eq!(c, vec![3, P - 4, 1]);
        assert_eq!(root_multiplicity_mod_p(&c, 1, P), 1);
        assert_eq!(root_multiplicity_mod_p(&c, 2, P), 0);
        // 3x3 all-ones: x^2 (x - 3)
        let ones = charpoly_mod_p(vec![vec![1; 3]; 3], P);
        assert_eq!(ones, vec![0, 0, P - 3, 1]);
        assert_eq!(root_multiplicity_mod_p(&ones, 0, P), 2);
    }

    #[test]
    fn charpoly_needs_row_swap() {
        // companion-like matrix whose first subdiagonal entry is zero
        let m = vec![vec![0, 0, 1], vec![0, 0, 0], vec![1, 0, 0]];
        // eigenvalues 1, -1, 0
        let c = charpoly_mod_p(m, P);
        assert_eq!(c, vec![0, P - 1, 0, 1]);
    }

    #[test]
    fn bareiss_det_and_rank() {
        let b = bareiss(vec![vec![0i128, 1], vec![1, 0]], 2).unwrap();
        assert_eq!((b.rank, b.det), (2, -1));
        let b = bareiss(vec![vec![1i128, 2, 3], vec![2, 4, 6]], 3).unwrap();
        assert_eq!(b.rank, 1);
    }
}
