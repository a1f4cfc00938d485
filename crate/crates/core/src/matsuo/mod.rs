//! Commutative algebras given by structure constants, Matsuo algebras of
//! 3-transposition classes, their Frobenius form, radical and quotients.

pub(crate) mod scaled;

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::{echelon_of_rows, int, rat, RatMatrix, RatVector, Rational};
use crate::group::TranspositionClass;
use scaled::{projected_products, with_width, Acc, IntProducts, IntProjection, Width};

/// Sparse vector: `(basis index, coefficient)` pairs, sorted by index, with
/// no zero coefficients.
pub type SparseVector = Vec<(usize, Rational)>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatsuoError {
    #[error("eta must differ from 0 and 1, got {0}")]
    BadEta(String),
    #[error("operation requires eta = 1/2, got {0}")]
    WrongEta(String),
    #[error("class has no wreath point labels over Z_2 or Z_3")]
    MissingLabels,
    #[error("basis element {basis} times ideal vector {ideal_vector} leaves the ideal")]
    NotAnIdeal { basis: usize, ideal_vector: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
}

fn normalize(v: impl IntoIterator<Item = (usize, Rational)>) -> SparseVector {
    let mut merged: alloc::collections::BTreeMap<usize, Rational> = Default::default();
    for (k, c) in v {
        *merged.entry(k).or_insert_with(Rational::zero) += c;
    }
    merged.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// A finite-dimensional algebra over the rationals given by the products of
/// its basis elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    dim: usize,
    labels: Vec<String>,
    pub(crate) products: Vec<SparseVector>,
}

impl Algebra {
    /// `products[i * dim + j]` is `b_i b_j`; entries are normalized.
    pub fn new(labels: Vec<String>, products: Vec<SparseVector>) -> Result<Self, MatsuoError> {
        let dim = labels.len();
        if products.len() != dim * dim {
            return Err(MatsuoError::ShapeMismatch(format!(
                "{} products for dimension {dim}",
                products.len()
            )));
        }
        if products.iter().flatten().any(|(k, _)| *k >= dim) {
            return Err(MatsuoError::ShapeMismatch(String::from(
                "basis index out of range",
            )));
        }
        Ok(Algebra {
            dim,
            labels,
            products: products.into_iter().map(normalize).collect(),
        })
    }

    /// Builds an algebra from dense products `f(i, j)`.
    pub fn from_dense(
        labels: Vec<String>,
        mut f: impl FnMut(usize, usize) -> RatVector,
    ) -> Result<Self, MatsuoError> {
        let dim = labels.len();
        let mut products = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = f(i, j);
                if v.len() != dim {
                    return Err(MatsuoError::ShapeMismatch(format!(
                        "product ({i}, {j}) has length {}",
                        v.len()
                    )));
                }
                products.push(v.into_iter().enumerate().collect());
            }
        }
        Algebra::new(labels, products)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `b_i b_j` as a sparse vector.
    pub fn product(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.products[i * self.dim + j]
    }

    /// Coefficient of `b_k` in `b_i b_j`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Rational {
        self.product(i, j)
            .iter()
            .find(|(t, _)| *t == k)
            .map_or_else(Rational::zero, |(_, c)| c.clone())
    }

    /// Sets the coefficient of `b_k` in both `b_i b_j` and `b_j b_i`.
    pub fn set_structure_constant(&mut self, i: usize, j: usize, k: usize, value: Rational) {
        for (a, b) in [(i, j), (j, i)] {
            let slot = &mut self.products[a * self.dim + b];
            let rest = slot.iter().filter(|(t, _)| *t != k).cloned();
            *slot = normalize(rest.chain([(k, value.clone())]).collect::<Vec<_>>());
        }
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.product(i, j) == self.product(j, i)))
    }

    pub fn basis_vector(&self, i: usize) -> RatVector {
        let mut v = vec![Rational::zero(); self.dim];
        v[i] = Rational::one();
        v
    }

    /// Product of two dense vectors.
    pub fn mul(&self, x: &[Rational], y: &[Rational]) -> RatVector {
        let mut out = vec![Rational::zero(); self.dim];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (k, c) in self.product(i, j) {
                    out[*k] += &ab * c;
                }
            }
        }
        out
    }

    /// Quotient by the ideal spanned by `ideal`; the complement is spanned by
    /// the standard basis vectors off the pivot columns of the reduced ideal
    /// basis, in basis order.
    pub fn quotient(&self, ideal: &[RatVector]) -> Result<QuotientAlgebra, MatsuoError> {
        let n = self.dim;
        if ideal.iter().any(|v| v.len() != n) {
            return Err(MatsuoError::ShapeMismatch(String::from(
                "ideal vector length",
            )));
        }
        let ech = echelon_of_rows(ideal, n);
        let section = ech.free_columns();
        let q = section.len();
        let mut projection = RatMatrix::zeros(q, n);
        for (j, &c) in section.iter().enumerate() {
            projection.set(j, c, Rational::one());
            for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
                if !row[c].is_zero() {
                    projection.set(j, p, -row[c].clone());
                }
            }
        }
        let prod = IntProducts::new(self);
        let proj = IntProjection::new(&projection);
        let ideal_int: Vec<Vec<(usize, BigInt)>> = ideal
            .iter()
            .map(|v| {
                let d = crate::exact::common_denominator(v.iter());
                v.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(t, c)| (t, (c * Rational::from_integer(d.clone())).to_integer()))
                    .collect()
            })
            .collect();
        let ideal_bound = ideal_int
            .iter()
            .map(|v| v.iter().map(|(_, c)| c.abs()).sum::<BigInt>())
            .max()
            .unwrap_or_else(BigInt::zero);
        let bound = scaled::pp_bound(&prod, &proj) * (ideal_bound + 1u32);
        let (pp, witness) = with_width!(Width::for_bound(&bound), T => {
            quotient_tables::<T>(&prod, &proj, &ideal_int)
        });
        if let Some((basis, ideal_vector)) = witness {
            return Err(MatsuoError::NotAnIdeal {
                basis,
                ideal_vector,
            });
        }
        let denom = Rational::from_integer(&prod.scale * &proj.scale);
        let mut products = Vec::with_capacity(q * q);
        for &a in &section {
            for &b in &section {
                let cell = &pp[(a * n + b) * q..][..q];
                products.push(
                    cell.iter()
                        .enumerate()
                        .filter(|(_, v)| !v.is_zero())
                        .map(|(j, v)| (j, Rational::from_integer(v.clone()) / &denom))
                        .collect(),
                );
            }
        }
        let labels = section
            .iter()
            .map(|&c| format!("[{}]", self.labels[c]))
            .collect();
        Ok(QuotientAlgebra {
            algebra: Algebra::new(labels, products)?,
            projection,
            section,
        })
    }
}

/// Projected products as big integers plus the first `(basis, ideal vector)`
/// pair whose product leaves the ideal.
fn quotient_tables<T: Acc>(
    prod: &IntProducts,
    proj: &IntProjection,
    ideal: &[Vec<(usize, BigInt)>],
) -> (Vec<BigInt>, Option<(usize, usize)>) {
    let (n, q) = (prod.n, proj.q);
    let pp = projected_products(&prod.typed::<T>(), &proj.typed::<T>(), n, q);
    let ideal: Vec<Vec<(usize, T)>> = ideal
        .iter()
        .map(|v| v.iter().map(|(t, c)| (*t, T::from_big(c))).collect())
        .collect();
    let mut acc = vec![T::zero(); q];
    let mut witness = None;
    'outer: for (iv, r) in ideal.iter().enumerate() {
        for d in 0..n {
            acc.iter_mut().for_each(|a| *a = T::zero());
            for (t, c) in r {
                for (a, x) in acc.iter_mut().zip(&pp[(d * n + t) * q..][..q]) {
                    a.mac(c, x);
                }
            }
            if acc.iter().any(|a| !a.is_zero()) {
                witness = Some((d, iv));
                break 'outer;
            }
        }
    }
    (pp.iter().map(Acc::to_big).collect(), witness)
}

/// `A / I` with its projection and section.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientAlgebra {
    pub algebra: Algebra,
    /// `q x n` matrix from coordinates of `A` to coordinates of `A / I`.
    pub projection: RatMatrix,
    /// Basis elements of `A` whose images form the basis of `A / I`.
    pub section: Vec<usize>,
}

impl QuotientAlgebra {
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn project(&self, v: &[Rational]) -> RatVector {
        self.projection.mul_vec(v)
    }
}

/// The Matsuo algebra `M_eta(G, D)` with its Frobenius form.
#[derive(Debug, Clone)]
pub struct MatsuoAlgebra {
    algebra: Algebra,
    class: TranspositionClass,
    eta: Rational,
    gram: RatMatrix,
    radical_basis: Vec<RatVector>,
}

/// Builds `M_eta(G, D)`: `c.c = c`, `c.d = 0` when `|cd| = 2`,
/// `c.d = (eta/2)(c + d - c^d)` when `|cd| = 3`; the form is `(c,c) = 1`,
/// `(c,d) = 0` or `eta/2`.
pub fn build_matsuo(
    class: &TranspositionClass,
    eta: Rational,
) -> Result<MatsuoAlgebra, MatsuoError> {
    if eta.is_zero() || eta.is_one() {
        return Err(MatsuoError::BadEta(crate::exact::format_rational(&eta)));
    }
    let n = class.len();
    let half = &eta / int(2);
    let mut products = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let p = if i == j {
                vec![(i, Rational::one())]
            } else if let Some(e) = class.third_point(i, j) {
                normalize([(i, half.clone()), (j, half.clone()), (e, -half.clone())])
            } else {
                Vec::new()
            };
            products.push(p);
        }
    }
    let labels = class.elements().iter().map(|g| format!("{g:?}")).collect();
    let algebra = Algebra::new(labels, products)?;
    let gram = expected_gram(class, &eta);
    let radical_basis = gram.nullspace_basis();
    Ok(MatsuoAlgebra {
        algebra,
        class: class.clone(),
        eta,
        gram,
        radical_basis,
    })
}

fn expected_gram(class: &TranspositionClass, eta: &Rational) -> RatMatrix {
    let half = eta / int(2);
    RatMatrix::from_fn(class.len(), class.len(), |i, j| {
        if i == j {
            Rational::one()
        } else if class.adjacent(i, j) {
            half.clone()
        } else {
            Rational::zero()
        }
    })
}

impl MatsuoAlgebra {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    /// Mutable access to the structure constants (for fault injection).
    pub fn algebra_mut(&mut self) -> &mut Algebra {
        &mut self.algebra
    }

    pub fn class(&self) -> &TranspositionClass {
        &self.class
    }

    pub fn eta(&self) -> &Rational {
        &self.eta
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    /// Sets a symmetric pair of Gram entries (for fault injection).
    pub fn set_gram_entry(&mut self, i: usize, j: usize, value: Rational) {
        self.gram.set(i, j, value.clone());
        self.gram.set(j, i, value);
    }

    /// Reduced echelon basis of the radical of the form, computed at build.
    pub fn radical_basis(&self) -> &[RatVector] {
        &self.radical_basis
    }

    /// Form value `(u, v)`.
    pub fn form(&self, u: &[Rational], v: &[Rational]) -> Rational {
        crate::exact::dot(u, &self.gram.mul_vec(v))
    }

    /// True iff `(v, d) = 0` for every basis element `d`.
    pub fn in_radical(&self, v: &[Rational]) -> bool {
        crate::exact::is_zero_vector(&self.gram.mul_vec(v))
    }

    /// `M / M^perp`.
    pub fn quotient_by_radical(&self) -> QuotientAlgebra {
        self.algebra
            .quotient(&self.radical_basis)
            .expect("the radical of an associating form is an ideal")
    }
}

/// True iff the Gram matrix equals `I + (eta/2) A` for the diagram adjacency
/// matrix `A`.
pub fn check_gram_identity(m: &MatsuoAlgebra) -> bool {
    m.gram == expected_gram(&m.class, &m.eta)
}

/// True iff `(b_i b_j, b_k) = (b_i, b_j b_k)` for all basis triples.
///
/// Equivalently `G L_j` is symmetric for every left multiplication `L_j`.
pub fn check_frobenius(m: &MatsuoAlgebra) -> bool {
    let n = m.dim();
    let alg = &m.algebra;
    let g_scale = crate::exact::common_denominator(m.gram.entries());
    let g_int: Vec<Vec<(usize, BigInt)>> = (0..n)
        .map(|t| {
            (0..n)
                .filter(|&i| !m.gram.get(i, t).is_zero())
                .map(|i| {
                    let v = m.gram.get(i, t) * Rational::from_integer(g_scale.clone());
                    (i, v.to_integer())
                })
                .collect()
        })
        .collect();
    let prod = IntProducts::new(alg);
    let g_max = g_int
        .iter()
        .flatten()
        .map(|(_, v)| v.abs())
        .max()
        .unwrap_or_else(BigInt::zero);
    let bound = &prod.row_bound * g_max * BigInt::from(n + 1);
    with_width!(Width::for_bound(&bound), T => frobenius_kernel::<T>(&prod, &g_int))
}

fn frobenius_kernel<T: Acc>(prod: &IntProducts, g_cols: &[Vec<(usize, BigInt)>]) -> bool {
    let n = prod.n;
    let p = prod.typed::<T>();
    let g: Vec<Vec<(usize, T)>> = g_cols
        .iter()
        .map(|c| c.iter().map(|(i, v)| (*i, T::from_big(v))).collect())
        .collect();
    let mut gl = vec![T::zero(); n * n];
    for j in 0..n {
        gl.iter_mut().for_each(|x| *x = T::zero());
        // gl[i][k] = (b_i, b_j b_k)
        for k in 0..n {
            for (t, c) in &p[j * n + k] {
                for (i, v) in &g[*t as usize] {
                    gl[*i * n + k].mac(c, v);
                }
            }
        }
        for i in 0..n {
            for k in 0..i {
                if gl[i * n + k] != gl[k * n + i] {
                    return false;
                }
            }
        }
    }
    true
}

/// Nullspace basis of the Gram matrix (recomputed from the current form).
pub fn radical(m: &MatsuoAlgebra) -> Vec<RatVector> {
    m.gram.nullspace_basis()
}

/// Multiplicity of `-4` in the diagram spectrum, which equals the radical
/// dimension when `eta = 1/2`.
pub fn radical_dim_via_spectrum(m: &MatsuoAlgebra) -> Result<usize, MatsuoError> {
    if m.eta != rat(1, 2) {
        return Err(MatsuoError::WrongEta(crate::exact::format_rational(&m.eta)));
    }
    let a = crate::fischer::diagram(&m.class).adjacency_matrix();
    Ok(a.integer_eigen_multiplicity(-4)
        .expect("adjacency matrices are square"))
}

/// True iff `(c.d)^g = c^g . d^g` for every generator `g` and basis pair.
pub fn check_equivariance(m: &MatsuoAlgebra) -> bool {
    let n = m.dim();
    m.class.generator_actions().iter().all(|perm| {
        (0..n).all(|i| {
            (0..n).all(|j| {
                let image = normalize(
                    m.algebra
                        .product(i, j)
                        .iter()
                        .map(|(k, c)| (perm[*k] as usize, c.clone())),
                );
                image == m.algebra.product(perm[i] as usize, perm[j] as usize)
            })
        })
    })
}

/// Quotient by an explicit ideal.
pub fn quotient(
    m: &MatsuoAlgebra,
    ideal_basis: &[RatVector],
) -> Result<QuotientAlgebra, MatsuoError> {
    m.algebra.quotient(ideal_basis)
}

/// The explicit radical basis of `M_{1/2}(Wr(p, n))` for `p` in `{2, 3}`:
/// the elements `r(i,j)(n-1,n)` for `i < j < n-1` followed by
/// `r(1,n-1)(i,n)` for `1 < i < n-1` (1-based block indices), where
///
/// `r(i,j)(k,l) = b_ij - b_il - b_jk + b_kl + c_ij - c_il - c_jk + c_kl`
/// plus `c_ji - c_li - c_kj + c_lk` when `p = 3`.
pub fn wr_radical_basis(m: &MatsuoAlgebra) -> Result<Vec<RatVector>, MatsuoError> {
    let shape = m
        .class
        .spec()
        .wreath
        .as_ref()
        .ok_or(MatsuoError::MissingLabels)?;
    let p = shape.base.order();
    let n = shape.blocks;
    let labels = m.class.wreath_labels().ok_or(MatsuoError::MissingLabels)?;
    if !(p == 2 || p == 3) || n < 4 {
        return Err(MatsuoError::MissingLabels);
    }
    let index: alloc::collections::BTreeMap<(u32, u32, u32), usize> = labels
        .iter()
        .enumerate()
        .map(|(k, l)| ((l.t, l.i, l.j), k))
        .collect();
    // 0-based block indices; b_ab and (for p = 2) c_ab are symmetric in a, b.
    let b = |x: usize, y: usize| index[&(0, x.min(y) as u32, x.max(y) as u32)];
    let c = |x: usize, y: usize| {
        let t = if p == 2 || x < y { 1 } else { 2 };
        index[&(t, x.min(y) as u32, x.max(y) as u32)]
    };
    let r = |i: usize, j: usize, k: usize, l: usize| {
        let mut terms = vec![
            (b(i, j), 1),
            (b(i, l), -1),
            (b(j, k), -1),
            (b(k, l), 1),
            (c(i, j), 1),
            (c(i, l), -1),
            (c(j, k), -1),
            (c(k, l), 1),
        ];
        if p == 3 {
            terms.extend([(c(j, i), 1), (c(l, i), -1), (c(k, j), -1), (c(l, k), 1)]);
        }
        let mut v = vec![Rational::zero(); m.dim()];
        for (idx, s) in terms {
            v[idx] += int(s);
        }
        v
    };
    let mut out = Vec::new();
    for i in 0..n - 2 {
        for j in (i + 1)..n - 2 {
            out.push(r(i, j, n - 2, n - 1));
        }
    }
    for i in 1..n - 2 {
        out.push(r(0, n - 2, i, n - 1));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::Family;

    fn sym(m: u32) -> TranspositionClass {
        Family::Sym { m }.build_class().unwrap()
    }

    fn idx(class: &TranspositionClass, cycle: &[usize]) -> usize {
        let degree = match class.spec().backend {
            crate::group::Backend::Perm { degree } => degree,
            _ => unreachable!(),
        };
        let g = crate::group::GroupElement::from_cycles(degree, &[cycle]).unwrap();
        class.index_of(&g).unwrap()
    }

    #[test]
    fn single_element_algebra() {
        let m = build_matsuo(&sym(2), rat(1, 2)).unwrap();
        assert_eq!(m.dim(), 1);
        assert_eq!(m.algebra().product(0, 0), &[(0, int(1))]);
    }

    #[test]
    fn product_rule_in_sym3_and_sym4() {
        let d = sym(3);
        let m = build_matsuo(&d, rat(1, 2)).unwrap();
        let (c, e, f) = (idx(&d, &[1, 2]), idx(&d, &[2, 3]), idx(&d, &[1, 3]));
        let mut expected = vec![(c, rat(1, 4)), (e, rat(1, 4)), (f, rat(-1, 4))];
        expected.sort_by_key(|x| x.0);
        assert_eq!(m.algebra().product(c, e), expected.as_slice());
        let d = sym(4);
        let m = build_matsuo(&d, rat(1, 2)).unwrap();
        assert!(m
            .algebra()
            .product(idx(&d, &[1, 2]), idx(&d, &[3, 4]))
            .is_empty());
    }

    #[test]
    fn eta_zero_and_one_rejected() {
        for eta in [int(0), int(1)] {
            assert!(matches!(
                build_matsuo(&sym(3), eta),
                Err(MatsuoError::BadEta(_))
            ));
        }
    }

    #[test]
    fn gram_and_frobenius_checks() {
        let m = build_matsuo(&sym(4), rat(1, 2)).unwrap();
        assert!(check_gram_identity(&m));
        assert!(check_frobenius(&m));
        assert!(check_equivariance(&m));
        let m2 = build_matsuo(&sym(3), int(2)).unwrap();
        assert!(check_frobenius(&m2));
        let mut bad = m.clone();
        bad.set_gram_entry(0, 1, rat(1, 3));
        assert!(!check_gram_identity(&bad));
        let mut bad = m.clone();
        let c = bad.algebra().structure_constant(0, 1, 0);
        bad.algebra_mut()
            .set_structure_constant(0, 1, 0, c + int(1));
        assert!(!check_frobenius(&bad));
    }

    #[test]
    fn sym_radicals_vanish() {
        for m in 3..=6 {
            let a = build_matsuo(&sym(m), rat(1, 2)).unwrap();
            assert!(a.radical_basis().is_empty());
            assert_eq!(radical_dim_via_spectrum(&a).unwrap(), 0);
        }
    }

    #[test]
    fn wrong_eta_for_spectral_radical() {
        let a = build_matsuo(&sym(4), int(2)).unwrap();
        assert!(matches!(
            radical_dim_via_spectrum(&a),
            Err(MatsuoError::WrongEta(_))
        ));
    }

    #[test]
    fn wreath_radical_basis() {
        let d = Family::Wr3 { n: 5 }.build_class().unwrap();
        let m = build_matsuo(&d, rat(1, 2)).unwrap();
        let basis = wr_radical_basis(&m).unwrap();
        assert_eq!(basis.len(), 5);
        for v in &basis {
            assert_eq!(v.iter().filter(|c| !c.is_zero()).count(), 12);
            assert!(m.in_radical(v));
        }
        assert!(matches!(
            wr_radical_basis(&build_matsuo(&sym(4), rat(1, 2)).unwrap()),
            Err(MatsuoError::MissingLabels)
        ));
    }

    #[test]
    fn quotients() {
        let d = Family::Wr2 { n: 5 }.build_class().unwrap();
        let m = build_matsuo(&d, rat(1, 2)).unwrap();
        assert_eq!(m.radical_basis().len(), 5);
        let j = m.quotient_by_radical();
        assert_eq!(j.dim(), 15);
        assert!(j.algebra.is_commutative());
        for r in m.radical_basis() {
            assert!(crate::exact::is_zero_vector(&j.project(r)));
        }
        let same = quotient(&m, &[]).unwrap();
        assert_eq!(same.algebra.products, m.algebra().products);
    }

    #[test]
    fn non_ideal_is_rejected() {
        let d = sym(3);
        let m = build_matsuo(&d, rat(1, 2)).unwrap();
        let err = quotient(&m, &[m.algebra().basis_vector(0)]).unwrap_err();
        assert!(matches!(
            err,
            MatsuoError::NotAnIdeal {
                ideal_vector: 0,
                ..
            }
        ));
    }
}
