//! Built-in group specifications for the 3-transposition groups used in the
//! classification sweep.
//!
//! Classical groups are built from standard transvection/reflection formulas
//! over explicit forms; every built class is checked against the closed-form
//! class size of its family.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::fischer::{table1_row, PrType, Sign};
use crate::group::{
    greedy_generators, Backend, CayleyTable, Field, GroupElement, GroupError, GroupSpec,
    TranspositionClass, WreathShape, CLASS_CAP,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("base group has an element of order {order} > 3")]
    BadBaseGroup { order: usize },
    #[error("parameters outside the supported range: {0}")]
    BadParams(String),
    #[error("{family}: expected class size {expected}, constructed {found}")]
    OracleMismatch {
        family: String,
        expected: usize,
        found: usize,
    },
}

/// A built-in family with its size parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `Sym(m)` on its transpositions, `m >= 2`.
    Sym { m: u32 },
    /// `Wr(2, n)`.
    Wr2 { n: u32 },
    /// `Wr(3, n)`.
    Wr3 { n: u32 },
    /// `Wr(Alt(4), n)`.
    WrAlt4 { n: u32 },
    /// The Frobenius group `3^h:2` acting on `Z_3^h` by `x -> -x + v`.
    Frob { h: u32 },
    /// `Sp_{2m}(2)` on symplectic transvections.
    Sp { m: u32 },
    /// `O^eps_{2m}(2)` on orthogonal transvections.
    Orthogonal { m: u32, eps: Sign },
    /// `SU_m(2)` on unitary transvections.
    Unitary { m: u32 },
    /// `+Omega^eps_m(3)` on reflections with square norm 1.
    Omega3 { m: u32, eps: Sign },
    /// The class commuting with one transvection of `SU_5(2)`, of size 36;
    /// the candidate realization of type `4^{.1}SU_3(2)'`.
    PerpDerived,
}

impl Family {
    pub fn label(&self) -> String {
        match *self {
            Family::Sym { m } => format!("Sym({m})"),
            Family::Wr2 { n } => format!("Wr(2,{n})"),
            Family::Wr3 { n } => format!("Wr(3,{n})"),
            Family::WrAlt4 { n } => format!("Wr(Alt4,{n})"),
            Family::Frob { h } => format!("3^{h}:2"),
            Family::Sp { m } => format!("Sp{}(2)", 2 * m),
            Family::Orthogonal { m, eps } => format!("O{}{eps}(2)", 2 * m),
            Family::Unitary { m } => format!("SU{m}(2)"),
            Family::Omega3 { m, eps } => format!("+Omega{m}{eps}(3)"),
            Family::PerpDerived => String::from("perp(SU5(2))"),
        }
    }

    /// The family label and parameters used for the closed-form oracle, if
    /// the parameters fall in a classified range.
    pub fn pr_type(&self) -> Option<PrType> {
        let pr = match *self {
            Family::Sym { m: 2 } => PrType::Trivial,
            Family::Sym { m: 3 } => PrType::Pr1 { h: 1 },
            Family::Sym { m } => PrType::Pr2a { h: 0, m },
            Family::Wr2 { n } => PrType::Pr2a { h: 1, m: n },
            Family::Wr3 { n } => PrType::Pr2b { h: 1, m: n },
            Family::WrAlt4 { n } => PrType::Pr2d { h: 1, m: n },
            Family::Frob { h } => PrType::Pr1 { h },
            Family::Sp { m } => PrType::Pr4 { h: 0, m },
            Family::Orthogonal { m, eps } => PrType::Pr3 { h: 0, m, eps },
            Family::Unitary { m } => PrType::Pr6 { h: 0, m },
            Family::Omega3 { m, eps } => PrType::Pr5 { h: 0, m, eps },
            Family::PerpDerived => PrType::Pr6 { h: 1, m: 3 },
        };
        table1_row(pr).is_ok().then_some(pr)
    }

    pub fn build(&self) -> Result<GroupSpec, ConstructionError> {
        match *self {
            Family::Sym { m } => build_sym(m as usize),
            Family::Wr2 { n } => build_wr2(n as usize),
            Family::Wr3 { n } => build_wr3(n as usize),
            Family::WrAlt4 { n } => build_wr_alt4(n as usize),
            Family::Frob { h } => build_frob(h as usize),
            Family::Sp { m } => build_sp(m as usize),
            Family::Orthogonal { m, eps } => build_orthogonal2(m as usize, eps),
            Family::Unitary { m } => build_su(m as usize),
            Family::Omega3 { m, eps } => build_omega3(m as usize, eps),
            Family::PerpDerived => build_perp_derived(),
        }
    }

    /// Builds the spec, closes the class and checks its size against the
    /// closed form of the family.
    pub fn build_class(&self) -> Result<TranspositionClass, ConstructionError> {
        let spec = self.build()?;
        let class = TranspositionClass::closure(&spec)?;
        if let Some(pr) = self.pr_type() {
            let expected = table1_row(pr)
                .expect("pr_type only returns valid rows")
                .size;
            if expected != class.len() {
                return Err(ConstructionError::OracleMismatch {
                    family: self.label(),
                    expected,
                    found: class.len(),
                });
            }
        }
        Ok(class)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

fn bad(msg: impl Into<String>) -> ConstructionError {
    ConstructionError::BadParams(msg.into())
}

/// `Sym(m)`: adjacent transpositions as generators, seed `(1 2)`.
pub fn build_sym(m: usize) -> Result<GroupSpec, ConstructionError> {
    if m < 2 {
        return Err(bad("Sym(m) needs m >= 2"));
    }
    let gens = (1..m)
        .map(|i| GroupElement::from_cycles(m, &[&[i, i + 1]]))
        .collect::<Result<Vec<_>, _>>()?;
    let seed = GroupElement::from_cycles(m, &[&[1, 2]])?;
    Ok(GroupSpec::new(
        Backend::Perm { degree: m },
        gens,
        seed,
        format!("Sym({m})"),
    )?)
}

/// `t.(i,j)` in the imprimitive action of `T wr Sym(n)` on `|T| n` points:
/// `(x, i) -> (x t, j)`, `(x, j) -> (x t^-1, i)`.
fn wreath_element(base: &CayleyTable, n: usize, t: u32, i: usize, j: usize) -> GroupElement {
    let k = base.order();
    let mut images: Vec<u32> = (0..(k * n) as u32).collect();
    for x in 0..k as u32 {
        images[i * k + x as usize] = (j * k) as u32 + base.mul(x, t);
        images[j * k + x as usize] = (i * k) as u32 + base.mul(x, base.inv(t));
    }
    GroupElement::Perm(images)
}

/// `Wr(T, n)` generated by the class of `e.(1,2)`, built as a permutation
/// group on `|T| n` points. Class elements carry `t.(i,j)` labels.
pub fn build_wreath(
    base: Arc<CayleyTable>,
    n: usize,
    label: impl Into<String>,
) -> Result<GroupSpec, ConstructionError> {
    if n < 2 {
        return Err(bad("wreath products need n >= 2"));
    }
    let k = base.order();
    if let Some(order) = (0..k as u32)
        .map(|t| base.element_order(t))
        .find(|&o| o > 3)
    {
        return Err(ConstructionError::BadBaseGroup { order });
    }
    // Greedy generating set of T.
    let mut base_gens = Vec::new();
    let mut generated = vec![false; k];
    generated[base.identity() as usize] = true;
    for t in 0..k as u32 {
        if generated[t as usize] {
            continue;
        }
        base_gens.push(t);
        let mut frontier: Vec<u32> = (0..k as u32).filter(|&x| generated[x as usize]).collect();
        while let Some(x) = frontier.pop() {
            for &g in &base_gens {
                let y = base.mul(x, g);
                if !core::mem::replace(&mut generated[y as usize], true) {
                    frontier.push(y);
                }
            }
        }
    }
    let e = base.identity();
    let mut gens: Vec<GroupElement> = (0..n - 1)
        .map(|i| wreath_element(&base, n, e, i, i + 1))
        .collect();
    gens.extend(base_gens.iter().map(|&t| wreath_element(&base, n, t, 0, 1)));
    let seed = wreath_element(&base, n, e, 0, 1);
    let mut spec = GroupSpec::new(Backend::Perm { degree: k * n }, gens, seed, label)?;
    spec.wreath = Some(WreathShape { base, blocks: n });
    Ok(spec)
}

/// `Wr(2, n)`; labels `t = 0` are the points `b_{i,j}`, `t = 1` are `c_{i,j}`.
pub fn build_wr2(n: usize) -> Result<GroupSpec, ConstructionError> {
    build_wreath(Arc::new(CayleyTable::cyclic(2)), n, format!("Wr(2,{n})"))
}

/// `Wr(3, n)`; labels `t = 0, 1, 2` are `b_{i,j}`, `c_{i,j}`, `c_{j,i}`.
pub fn build_wr3(n: usize) -> Result<GroupSpec, ConstructionError> {
    build_wreath(Arc::new(CayleyTable::cyclic(3)), n, format!("Wr(3,{n})"))
}

pub fn build_wr_alt4(n: usize) -> Result<GroupSpec, ConstructionError> {
    build_wreath(Arc::new(CayleyTable::alt4()), n, format!("Wr(Alt4,{n})"))
}

/// The Frobenius group `3^h:2` on the `3^h` points of `Z_3^h`, class of the
/// maps `x -> -x + v`.
pub fn build_frob(h: usize) -> Result<GroupSpec, ConstructionError> {
    if !(1..=6).contains(&h) {
        return Err(bad("3^h:2 supported for 1 <= h <= 6"));
    }
    let size = 3usize.pow(h as u32);
    let digits = |mut x: usize| {
        let mut d = vec![0usize; h];
        for slot in d.iter_mut() {
            *slot = x % 3;
            x /= 3;
        }
        d
    };
    let encode = |d: &[usize]| d.iter().rev().fold(0, |acc, &v| acc * 3 + v);
    let target: Vec<GroupElement> = (0..size)
        .map(|v| {
            let dv = digits(v);
            let images = (0..size)
                .map(|x| {
                    let dx = digits(x);
                    let img: Vec<usize> =
                        dx.iter().zip(&dv).map(|(a, b)| (6 - a + b) % 3).collect();
                    encode(&img) as u32
                })
                .collect();
            GroupElement::Perm(images)
        })
        .collect();
    let backend = Backend::Perm { degree: size };
    let gens = greedy_generators(&backend, &target[0], &target, CLASS_CAP)?;
    Ok(GroupSpec::new(
        backend,
        gens,
        target[0].clone(),
        format!("3^{h}:2"),
    )?)
}

pub fn build_frob9() -> Result<GroupSpec, ConstructionError> {
    build_frob(2)
}

/// All vectors of `F^dim` in lexicographic order (first coordinate most
/// significant), excluding zero.
fn nonzero_vectors(field: Field, dim: usize) -> Vec<Vec<u8>> {
    let q = field.order() as usize;
    let total = q.pow(dim as u32);
    (1..total)
        .map(|mut x| {
            let mut v = vec![0u8; dim];
            for slot in v.iter_mut().rev() {
                *slot = (x % q) as u8;
                x /= q;
            }
            v
        })
        .collect()
}

/// The matrix `I + u^T v` acting on row vectors, i.e. `x -> x + (x.u) v`.
fn rank_one_update(field: Field, u: &[u8], v: &[u8]) -> GroupElement {
    let n = u.len();
    let mut entries = vec![0u8; n * n];
    for r in 0..n {
        for c in 0..n {
            let id = u8::from(r == c);
            entries[r * n + c] = field.add(id, field.mul(u[r], v[c]));
        }
    }
    GroupElement::Matrix {
        field,
        dim: n,
        entries,
    }
}

/// Vector `w` with `b(x, v) = x . w` for the standard alternating form
/// pairing coordinate `i` with `m + i`.
fn symplectic_dual(v: &[u8]) -> Vec<u8> {
    let m = v.len() / 2;
    (0..2 * m)
        .map(|r| if r < m { v[r + m] } else { v[r - m] })
        .collect()
}

fn class_spec(
    backend: Backend,
    seed: GroupElement,
    target: &[GroupElement],
    label: String,
) -> Result<GroupSpec, ConstructionError> {
    let gens = greedy_generators(&backend, &seed, target, CLASS_CAP)?;
    Ok(GroupSpec::new(backend, gens, seed, label)?)
}

/// `Sp_{2m}(2)`: transvections `x -> x + b(x,v) v` for the standard
/// alternating form; seed `t_{e_1}`.
pub fn build_sp(m: usize) -> Result<GroupSpec, ConstructionError> {
    if !(2..=4).contains(&m) {
        return Err(bad("Sp_{2m}(2) supported for 2 <= m <= 4"));
    }
    let f = Field::GF2;
    let target: Vec<GroupElement> = nonzero_vectors(f, 2 * m)
        .iter()
        .map(|v| rank_one_update(f, &symplectic_dual(v), v))
        .collect();
    let mut e1 = vec![0u8; 2 * m];
    e1[0] = 1;
    let seed = rank_one_update(f, &symplectic_dual(&e1), &e1);
    class_spec(
        Backend::Matrix {
            field: f,
            dim: 2 * m,
        },
        seed,
        &target,
        format!("Sp{}(2)", 2 * m),
    )
}

/// `O^eps_{2m}(2)`: transvections `x -> x + b(x,v) v` for the nonsingular
/// vectors (`Q(v) = 1`) of
/// `Q(x) = sum_i x_i x_{m+i}` (plus type) or the same form with the last
/// hyperbolic pair replaced by the anisotropic `x^2 + xy + y^2` (minus
/// type). Seed `t_{e_1 + e_{m+1}}`.
pub fn build_orthogonal2(m: usize, eps: Sign) -> Result<GroupSpec, ConstructionError> {
    if !(2..=4).contains(&m) {
        return Err(bad("O^eps_{2m}(2) supported for 2 <= m <= 4"));
    }
    let f = Field::GF2;
    let q = |v: &[u8]| -> u8 {
        let mut s = 0u8;
        for i in 0..m {
            s ^= v[i] & v[m + i];
        }
        if eps == Sign::Minus {
            s ^= v[m - 1] ^ v[2 * m - 1];
        }
        s
    };
    let target: Vec<GroupElement> = nonzero_vectors(f, 2 * m)
        .iter()
        .filter(|v| q(v) == 1)
        .map(|v| rank_one_update(f, &symplectic_dual(v), v))
        .collect();
    let mut v0 = vec![0u8; 2 * m];
    v0[0] = 1;
    v0[m] = 1;
    let seed = rank_one_update(f, &symplectic_dual(&v0), &v0);
    class_spec(
        Backend::Matrix {
            field: f,
            dim: 2 * m,
        },
        seed,
        &target,
        format!("O{}{eps}(2)", 2 * m),
    )
}

/// `SU_m(2)` for the Hermitian form `h(x, y) = sum_i x_i y_i^2` over GF(4).
///
/// Every map `x -> x + l h(x,v) v` with `v` isotropic is an involution; the
/// ones preserving `h` (the unitary transvections) form the class. They are
/// sorted canonically and the first one is the seed.
pub fn build_su(m: usize) -> Result<GroupSpec, ConstructionError> {
    if !(4..=5).contains(&m) {
        return Err(bad("SU_m(2) supported for m in {4, 5}"));
    }
    let f = Field::GF4;
    let backend = Backend::Matrix { field: f, dim: m };
    let mut candidates = Vec::new();
    for v in nonzero_vectors(f, m) {
        let norm = v
            .iter()
            .fold(0u8, |acc, &x| f.add(acc, f.mul(x, f.conj(x))));
        if norm != 0 {
            continue;
        }
        let vbar: Vec<u8> = v.iter().map(|&x| f.conj(x)).collect();
        for lambda in 1..4u8 {
            let u: Vec<u8> = vbar.iter().map(|&x| f.mul(lambda, x)).collect();
            let t = rank_one_update(f, &u, &v);
            if is_unitary(&t) && backend.small_product_order(&t, &t) == Some(1) {
                candidates.push(t);
            }
        }
    }
    candidates.sort();
    candidates.dedup();
    let seed = candidates[0].clone();
    class_spec(backend, seed, &candidates, format!("SU{m}(2)"))
}

/// `M conj(M)^T = I`, i.e. `M` preserves the identity Hermitian form on row
/// vectors.
fn is_unitary(g: &GroupElement) -> bool {
    let GroupElement::Matrix {
        field,
        dim,
        entries,
    } = g
    else {
        return false;
    };
    let n = *dim;
    (0..n).all(|r| {
        (0..n).all(|c| {
            let s = (0..n).fold(0u8, |acc, k| {
                field.add(
                    acc,
                    field.mul(entries[r * n + k], field.conj(entries[c * n + k])),
                )
            });
            s == u8::from(r == c)
        })
    })
}

/// Reflections `y -> y + b(y,x) x` for `b(x,x) = 1` with the diagonal form
/// `diag`, one per `+-x` pair.
fn reflections(diag: &[u8]) -> Vec<GroupElement> {
    let f = Field::GF3;
    nonzero_vectors(f, diag.len())
        .into_iter()
        .filter(|x| x.iter().find(|&&c| c != 0) == Some(&1))
        .filter(|x| {
            x.iter()
                .zip(diag)
                .fold(0u8, |acc, (&c, &d)| f.add(acc, f.mul(d, f.mul(c, c))))
                == 1
        })
        .map(|x| {
            let u: Vec<u8> = x.iter().zip(diag).map(|(&c, &d)| f.mul(c, d)).collect();
            rank_one_update(f, &u, &x)
        })
        .collect()
}

/// `+Omega^eps_m(3)` for `m` in `{5, 6}`.
///
/// For `m = 6` the form is whichever of `diag(1,...,1)` and `diag(2,1,...,1)`
/// yields the closed-form class size for `eps`. For `m = 5` the class is the
/// set of reflections commuting with one reflection of the 6-dimensional
/// group of the same sign.
pub fn build_omega3(m: usize, eps: Sign) -> Result<GroupSpec, ConstructionError> {
    match m {
        6 => {
            let expected = table1_row(PrType::Pr5 { h: 0, m: 6, eps })
                .expect("valid row")
                .size;
            let label = format!("+Omega6{eps}(3)");
            for first in [1u8, 2] {
                let mut diag = vec![1u8; 6];
                diag[0] = first;
                let target = reflections(&diag);
                if target.len() == expected {
                    let backend = Backend::Matrix {
                        field: Field::GF3,
                        dim: 6,
                    };
                    return class_spec(backend, target[0].clone(), &target, label);
                }
            }
            Err(ConstructionError::OracleMismatch {
                family: label,
                expected,
                found: 0,
            })
        }
        5 => {
            let big = TranspositionClass::closure(&build_omega3(6, eps)?)?;
            let sub = big.perp_subclass(0)?;
            let mut spec = sub.spec().clone();
            spec.label = format!("+Omega5{eps}(3)");
            Ok(spec)
        }
        _ => Err(bad("+Omega^eps_m(3) supported for m in {5, 6}")),
    }
}

/// The class of transvections of `SU_5(2)` commuting with the seed
/// transvection.
pub fn build_perp_derived() -> Result<GroupSpec, ConstructionError> {
    let su5 = TranspositionClass::closure(&build_su(5)?)?;
    let sub = su5.perp_subclass(0)?;
    let mut spec = sub.spec().clone();
    spec.label = String::from("perp(SU5(2))");
    Ok(spec)
}
