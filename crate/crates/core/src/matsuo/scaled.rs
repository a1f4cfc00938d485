//! Integer-scaled copies of sparse structure constants and projections.
//!
//! Hot loops (ideal checks, Jordan sweeps) run on integers: every rational
//! table is multiplied by a common denominator, and the machine width is
//! chosen from an a-priori magnitude bound so that no intermediate value can
//! overflow.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Algebra;
use crate::exact::{common_denominator, RatMatrix, Rational};

/// Accumulator type for scaled integer kernels.
pub(crate) trait Acc: Clone + Send + Sync + PartialEq + Zero {
    fn from_big(b: &BigInt) -> Self;
    /// `self += a * b`; callers guarantee the result fits.
    fn mac(&mut self, a: &Self, b: &Self);
    fn to_big(&self) -> BigInt;
    fn negated(&self) -> Self;
}

impl Acc for i64 {
    fn from_big(b: &BigInt) -> Self {
        b.to_i64().expect("value within the selected width")
    }
    #[inline]
    fn mac(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn negated(&self) -> Self {
        -*self
    }
}

impl Acc for i128 {
    fn from_big(b: &BigInt) -> Self {
        b.to_i128().expect("value within the selected width")
    }
    #[inline]
    fn mac(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn negated(&self) -> Self {
        -*self
    }
}

impl Acc for BigInt {
    fn from_big(b: &BigInt) -> Self {
        b.clone()
    }
    fn mac(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn negated(&self) -> Self {
        -self
    }
}

/// Machine width able to hold every intermediate of a kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Width {
    I64,
    I128,
    Big,
}

impl Width {
    pub fn for_bound(bound: &BigInt) -> Width {
        match bound.bits() {
            0..=61 => Width::I64,
            62..=125 => Width::I128,
            _ => Width::Big,
        }
    }
}

/// Runs `$body` with the type alias `$t` bound to the integer type of `$w`.
macro_rules! with_width {
    ($w:expr, $t:ident => $body:expr) => {
        match $w {
            $crate::matsuo::scaled::Width::I64 => {
                type $t = i64;
                $body
            }
            $crate::matsuo::scaled::Width::I128 => {
                type $t = i128;
                $body
            }
            $crate::matsuo::scaled::Width::Big => {
                type $t = ::num_bigint::BigInt;
                $body
            }
        }
    };
}
pub(crate) use with_width;

fn scaled(v: &Rational, scale: &BigInt) -> BigInt {
    (v * Rational::from_integer(scale.clone())).to_integer()
}

/// Structure constants times `scale`, as integers.
#[derive(Debug, Clone)]
pub(crate) struct IntProducts {
    pub n: usize,
    pub prod: Vec<Vec<(u32, BigInt)>>,
    pub scale: BigInt,
    /// Largest `sum_t |c_{k,l,t}|` over all pairs.
    pub row_bound: BigInt,
}

impl IntProducts {
    pub fn new(a: &Algebra) -> Self {
        let n = a.dim();
        let scale = common_denominator(a.products.iter().flatten().map(|(_, c)| c));
        let mut row_bound = BigInt::zero();
        let prod = a
            .products
            .iter()
            .map(|p| {
                let row: Vec<(u32, BigInt)> = p
                    .iter()
                    .map(|(k, c)| (*k as u32, scaled(c, &scale)))
                    .collect();
                let s: BigInt = row.iter().map(|(_, c)| c.abs()).sum();
                if s > row_bound {
                    row_bound = s;
                }
                row
            })
            .collect();
        IntProducts {
            n,
            prod,
            scale,
            row_bound,
        }
    }

    pub fn typed<T: Acc>(&self) -> Vec<Vec<(u32, T)>> {
        self.prod
            .iter()
            .map(|p| p.iter().map(|(k, c)| (*k, T::from_big(c))).collect())
            .collect()
    }
}

/// Columns of a `q x n` projection matrix times `scale`, as integers.
#[derive(Debug, Clone)]
pub(crate) struct IntProjection {
    pub q: usize,
    /// Column `k` occupies `cols[k*q..(k+1)*q]`.
    pub cols: Vec<BigInt>,
    pub scale: BigInt,
    pub max_entry: BigInt,
}

impl IntProjection {
    pub fn new(p: &RatMatrix) -> Self {
        let (q, n) = (p.rows(), p.cols());
        let scale = common_denominator(p.entries());
        let mut cols = vec![BigInt::zero(); q * n];
        let mut max_entry = BigInt::zero();
        for j in 0..q {
            for k in 0..n {
                let v = scaled(p.get(j, k), &scale);
                if v.abs() > max_entry {
                    max_entry = v.abs();
                }
                cols[k * q + j] = v;
            }
        }
        IntProjection {
            q,
            cols,
            scale,
            max_entry,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut cols = vec![BigInt::zero(); n * n];
        for k in 0..n {
            cols[k * n + k] = BigInt::one();
        }
        IntProjection {
            q: n,
            cols,
            scale: BigInt::one(),
            max_entry: BigInt::one(),
        }
    }

    pub fn typed<T: Acc>(&self) -> Vec<T> {
        self.cols.iter().map(T::from_big).collect()
    }
}

/// `pp[(k*n + l)*q ..][..q] = P(e_k e_l)`, scaled by `prod.scale * proj.scale`.
pub(crate) fn projected_products<T: Acc>(
    prod: &[Vec<(u32, T)>],
    cols: &[T],
    n: usize,
    q: usize,
) -> Vec<T> {
    let mut pp = vec![T::zero(); n * n * q];
    for (kl, p) in prod.iter().enumerate() {
        let out = &mut pp[kl * q..(kl + 1) * q];
        for (v, c) in p {
            let col = &cols[*v as usize * q..][..q];
            for (o, x) in out.iter_mut().zip(col) {
                o.mac(c, x);
            }
        }
    }
    pp
}

/// Bound on `|P(e_k e_l)|` entries in scaled units.
pub(crate) fn pp_bound(prod: &IntProducts, proj: &IntProjection) -> BigInt {
    &prod.row_bound * &proj.max_entry
}
