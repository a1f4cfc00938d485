//! Finite group elements behind three interchangeable backends, and the
//! conjugacy-class machinery for 3-transposition groups.
//!
//! Conventions: groups act on the right. For permutations `p * q` means
//! "apply `p`, then `q`"; matrices act on row vectors, so `v(AB) = (vA)B`.
//! Conjugation is `c^d = d^-1 c d`.

mod class;
mod field;

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

pub(crate) use class::greedy_generators;
pub use class::{
    conjugacy_closure, perp_subclass, verify_3transpositions, TranspositionClass, WreathLabel,
    CLASS_CAP,
};
pub use field::Field;

/// Iteration bound for [`element_order`].
pub const ORDER_BOUND: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("conjugacy class grew past the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("elements {i} and {j} of the class have product of order {order} > 3")]
    NotThreeTransposition { i: usize, j: usize, order: usize },
    #[error("no class element commutes with element {0}")]
    EmptyPerp(usize),
    #[error("element order exceeds {0}")]
    OrderBoundExceeded(usize),
    #[error("seed has order {0}, expected an involution")]
    NotInvolution(usize),
    #[error("element does not belong to the backend: {0}")]
    InvalidElement(String),
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("multiplication table is not a group table: {0}")]
    BadTable(String),
}

/// A group element. Equality, ordering and hashing are structural and
/// canonical for each backend.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    /// One-line form: `images[x]` is the image of point `x` (0-based).
    Perm(Vec<u32>),
    /// Square matrix over a small field, row-major.
    Matrix {
        field: Field,
        dim: usize,
        entries: Vec<u8>,
    },
    /// Index into a multiplication table.
    Table(u32),
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Perm(p) => {
                let cycles = cycles_of(p);
                if cycles.is_empty() {
                    return write!(f, "()");
                }
                for c in cycles {
                    write!(f, "(")?;
                    for (k, x) in c.iter().enumerate() {
                        if k > 0 {
                            write!(f, ",")?;
                        }
                        write!(f, "{}", x + 1)?;
                    }
                    write!(f, ")")?;
                }
                Ok(())
            }
            GroupElement::Matrix { dim, entries, .. } => {
                write!(f, "[")?;
                for r in 0..*dim {
                    if r > 0 {
                        write!(f, "; ")?;
                    }
                    for c in 0..*dim {
                        write!(f, "{}", entries[r * dim + c])?;
                    }
                }
                write!(f, "]")
            }
            GroupElement::Table(i) => write!(f, "#{i}"),
        }
    }
}

/// Nontrivial cycles of a permutation, each starting at its least point.
fn cycles_of(p: &[u32]) -> Vec<Vec<u32>> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for start in 0..p.len() {
        if seen[start] || p[start] as usize == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push(x as u32);
            x = p[x] as usize;
        }
        out.push(cycle);
    }
    out
}

impl GroupElement {
    /// Builds a permutation of `{1..degree}` from cycles written with 1-based
    /// points, e.g. `&[&[1, 2], &[3, 4]]` for `(1,2)(3,4)`.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self, GroupError> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for &x in cycle.iter() {
                if x == 0 || x > degree {
                    return Err(GroupError::InvalidElement(alloc::format!(
                        "point {x} outside 1..{degree}"
                    )));
                }
                if core::mem::replace(&mut used[x - 1], true) {
                    return Err(GroupError::InvalidElement(alloc::format!(
                        "point {x} repeated in cycles"
                    )));
                }
            }
            for k in 0..cycle.len() {
                images[cycle[k] - 1] = (cycle[(k + 1) % cycle.len()] - 1) as u32;
            }
        }
        Ok(GroupElement::Perm(images))
    }

    pub fn perm(images: Vec<u32>) -> Result<Self, GroupError> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            let x = x as usize;
            if x >= images.len() || core::mem::replace(&mut seen[x], true) {
                return Err(GroupError::InvalidElement(String::from(
                    "images are not a permutation",
                )));
            }
        }
        Ok(GroupElement::Perm(images))
    }

    pub fn matrix(field: Field, dim: usize, entries: Vec<u8>) -> Result<Self, GroupError> {
        if entries.len() != dim * dim || entries.iter().any(|&v| v >= field.order()) {
            return Err(GroupError::InvalidElement(String::from(
                "matrix entries have the wrong count or lie outside the field",
            )));
        }
        let m = GroupElement::Matrix {
            field,
            dim,
            entries,
        };
        if matrix_inverse(&m).is_none() {
            return Err(GroupError::InvalidElement(String::from(
                "matrix is singular",
            )));
        }
        Ok(m)
    }
}

fn mat_parts(m: &GroupElement) -> (Field, usize, &[u8]) {
    match m {
        GroupElement::Matrix {
            field,
            dim,
            entries,
        } => (*field, *dim, entries),
        _ => unreachable!("caller checked the backend"),
    }
}

fn matrix_mul(a: &GroupElement, b: &GroupElement) -> GroupElement {
    let (f, n, x) = mat_parts(a);
    let (_, _, y) = mat_parts(b);
    let mut out = vec![0u8; n * n];
    for i in 0..n {
        for k in 0..n {
            let v = x[i * n + k];
            if v == 0 {
                continue;
            }
            for j in 0..n {
                let w = y[k * n + j];
                if w != 0 {
                    out[i * n + j] = f.add(out[i * n + j], f.mul(v, w));
                }
            }
        }
    }
    GroupElement::Matrix {
        field: f,
        dim: n,
        entries: out,
    }
}

fn matrix_inverse(a: &GroupElement) -> Option<GroupElement> {
    let (f, n, x) = mat_parts(a);
    let w = 2 * n;
    let mut m = vec![0u8; n * w];
    for i in 0..n {
        m[i * w..i * w + n].copy_from_slice(&x[i * n..(i + 1) * n]);
        m[i * w + n + i] = 1;
    }
    for c in 0..n {
        let p = (c..n).find(|&r| m[r * w + c] != 0)?;
        if p != c {
            for j in 0..w {
                m.swap(p * w + j, c * w + j);
            }
        }
        let inv = f.inv(m[c * w + c])?;
        for j in 0..w {
            m[c * w + j] = f.mul(m[c * w + j], inv);
        }
        for r in 0..n {
            let lead = m[r * w + c];
            if r == c || lead == 0 {
                continue;
            }
            for j in 0..w {
                let v = f.mul(lead, m[c * w + j]);
                m[r * w + j] = f.sub(m[r * w + j], v);
            }
        }
    }
    let mut out = vec![0u8; n * n];
    for i in 0..n {
        out[i * n..(i + 1) * n].copy_from_slice(&m[i * w + n..(i + 1) * w]);
    }
    Some(GroupElement::Matrix {
        field: f,
        dim: n,
        entries: out,
    })
}

/// Multiplication table of a small finite group on `{0..k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyTable {
    order: usize,
    /// `table[a * order + b] = a * b`.
    table: Vec<u32>,
    identity: u32,
    inverses: Vec<u32>,
}

impl CayleyTable {
    /// Validates that `table` (row-major, `k x k`) is a group table: closed,
    /// has an identity and inverses, and is associative.
    pub fn new(order: usize, table: Vec<u32>) -> Result<Self, GroupError> {
        let bad = |m: &str| Err(GroupError::BadTable(String::from(m)));
        if order == 0 || table.len() != order * order {
            return bad("table must be k x k with k >= 1");
        }
        if table.iter().any(|&v| v as usize >= order) {
            return bad("entry outside 0..k");
        }
        let at = |a: usize, b: usize| table[a * order + b] as usize;
        let Some(e) = (0..order).find(|&e| (0..order).all(|x| at(e, x) == x && at(x, e) == x))
        else {
            return bad("no identity element");
        };
        let mut inverses = Vec::with_capacity(order);
        for a in 0..order {
            match (0..order).find(|&b| at(a, b) == e) {
                Some(b) if at(b, a) == e => inverses.push(b as u32),
                _ => return bad("element without a two-sided inverse"),
            }
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return bad("multiplication is not associative");
                    }
                }
            }
        }
        Ok(CayleyTable {
            order,
            table,
            identity: e as u32,
            inverses,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.order + b as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inverses[a as usize]
    }

    pub fn element_order(&self, a: u32) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Cyclic group `Z_k`, elements `0..k` under addition mod `k`.
    pub fn cyclic(k: usize) -> Self {
        let table = (0..k * k).map(|i| ((i / k + i % k) % k) as u32).collect();
        CayleyTable::new(k, table).expect("cyclic table is a group")
    }

    /// The alternating group of degree 4, elements listed in lexicographic
    /// order of their one-line images, composed left to right.
    pub fn alt4() -> Self {
        let mut perms: Vec<[u8; 4]> = Vec::new();
        for a in 0..4u8 {
            for b in 0..4u8 {
                for c in 0..4u8 {
                    for d in 0..4u8 {
                        let p = [a, b, c, d];
                        let distinct = (0..4).all(|i| (0..i).all(|j| p[i] != p[j]));
                        if distinct && inversions(&p) % 2 == 0 {
                            perms.push(p);
                        }
                    }
                }
            }
        }
        let idx = |p: &[u8; 4]| perms.iter().position(|q| q == p).unwrap() as u32;
        let mut table = Vec::with_capacity(144);
        for p in &perms {
            for q in &perms {
                let r = [
                    q[p[0] as usize],
                    q[p[1] as usize],
                    q[p[2] as usize],
                    q[p[3] as usize],
                ];
                table.push(idx(&r));
            }
        }
        CayleyTable::new(12, table).expect("Alt(4) table is a group")
    }
}

fn inversions(p: &[u8; 4]) -> usize {
    (0..4)
        .map(|i| (i + 1..4).filter(|&j| p[i] > p[j]).count())
        .sum()
}

/// How elements of a group are represented and multiplied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Backend {
    Perm { degree: usize },
    Matrix { field: Field, dim: usize },
    Table(Arc<CayleyTable>),
}

impl Backend {
    pub fn identity(&self) -> GroupElement {
        match self {
            Backend::Perm { degree } => GroupElement::Perm((0..*degree as u32).collect()),
            Backend::Matrix { field, dim } => {
                let mut entries = vec![0u8; dim * dim];
                for i in 0..*dim {
                    entries[i * dim + i] = 1;
                }
                GroupElement::Matrix {
                    field: *field,
                    dim: *dim,
                    entries,
                }
            }
            Backend::Table(t) => GroupElement::Table(t.identity()),
        }
    }

    /// Checks that `g` is a valid element of this backend.
    pub fn validate(&self, g: &GroupElement) -> Result<(), GroupError> {
        let ok = match (self, g) {
            (Backend::Perm { degree }, GroupElement::Perm(p)) => {
                p.len() == *degree && GroupElement::perm(p.clone()).is_ok()
            }
            (
                Backend::Matrix { field, dim },
                GroupElement::Matrix {
                    field: f,
                    dim: d,
                    entries,
                },
            ) => field == f && dim == d && GroupElement::matrix(*f, *d, entries.clone()).is_ok(),
            (Backend::Table(t), GroupElement::Table(i)) => (*i as usize) < t.order(),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(GroupError::InvalidElement(alloc::format!(
                "{g:?} is not an element of {self:?}"
            )))
        }
    }

    /// Product `a * b`. Both arguments must belong to this backend.
    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        match (self, a, b) {
            (Backend::Perm { .. }, GroupElement::Perm(p), GroupElement::Perm(q)) => {
                GroupElement::Perm(p.iter().map(|&x| q[x as usize]).collect())
            }
            (Backend::Matrix { .. }, GroupElement::Matrix { .. }, GroupElement::Matrix { .. }) => {
                matrix_mul(a, b)
            }
            (Backend::Table(t), GroupElement::Table(x), GroupElement::Table(y)) => {
                GroupElement::Table(t.mul(*x, *y))
            }
            _ => panic!("element does not belong to backend {self:?}"),
        }
    }

    pub fn inv(&self, a: &GroupElement) -> GroupElement {
        match (self, a) {
            (Backend::Perm { .. }, GroupElement::Perm(p)) => {
                let mut out = vec![0u32; p.len()];
                for (x, &y) in p.iter().enumerate() {
                    out[y as usize] = x as u32;
                }
                GroupElement::Perm(out)
            }
            (Backend::Matrix { .. }, GroupElement::Matrix { .. }) => {
                matrix_inverse(a).expect("group matrices are invertible")
            }
            (Backend::Table(t), GroupElement::Table(x)) => GroupElement::Table(t.inv(*x)),
            _ => panic!("element does not belong to backend {self:?}"),
        }
    }

    pub fn is_identity(&self, a: &GroupElement) -> bool {
        match a {
            GroupElement::Perm(p) => p.iter().enumerate().all(|(i, &x)| i == x as usize),
            GroupElement::Matrix { dim, entries, .. } => entries
                .iter()
                .enumerate()
                .all(|(k, &v)| v == u8::from(k / dim == k % dim)),
            GroupElement::Table(x) => match self {
                Backend::Table(t) => *x == t.identity(),
                _ => false,
            },
        }
    }

    /// `c^d = d^-1 c d`.
    pub fn conjugate(&self, c: &GroupElement, d: &GroupElement) -> GroupElement {
        self.mul(&self.mul(&self.inv(d), c), d)
    }

    /// Order of `c * d` if it is 1, 2 or 3, otherwise `None`; at most three
    /// multiplications.
    pub fn small_product_order(&self, c: &GroupElement, d: &GroupElement) -> Option<u8> {
        let p = self.mul(c, d);
        if self.is_identity(&p) {
            return Some(1);
        }
        let p2 = self.mul(&p, &p);
        if self.is_identity(&p2) {
            return Some(2);
        }
        if self.is_identity(&self.mul(&p2, &p)) {
            return Some(3);
        }
        None
    }
}

/// Least `k >= 1` with `g^k = 1`, bounded by [`ORDER_BOUND`].
pub fn element_order(backend: &Backend, g: &GroupElement) -> Result<usize, GroupError> {
    element_order_bounded(backend, g, ORDER_BOUND)
}

pub fn element_order_bounded(
    backend: &Backend,
    g: &GroupElement,
    bound: usize,
) -> Result<usize, GroupError> {
    let mut x = g.clone();
    for k in 1..=bound {
        if backend.is_identity(&x) {
            return Ok(k);
        }
        x = backend.mul(&x, g);
    }
    Err(GroupError::OrderBoundExceeded(bound))
}

/// Input data for a conjugacy-class closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    pub backend: Backend,
    pub generators: Vec<GroupElement>,
    pub seed: GroupElement,
    pub label: String,
    /// Set for wreath-product groups built in their imprimitive permutation
    /// representation; used to recover `t.(i,j)` point labels.
    pub wreath: Option<WreathShape>,
}

/// Shape of the imprimitive action of `T wr Sym(n)`: point `(x, k)` with
/// `x` in `T` and block `k` is numbered `k * |T| + x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WreathShape {
    pub base: Arc<CayleyTable>,
    pub blocks: usize,
}

impl GroupSpec {
    /// Validates every element against the backend and checks that the seed
    /// is an involution.
    pub fn new(
        backend: Backend,
        generators: Vec<GroupElement>,
        seed: GroupElement,
        label: impl Into<String>,
    ) -> Result<Self, GroupError> {
        for g in &generators {
            backend.validate(g)?;
        }
        backend.validate(&seed)?;
        let order = element_order(&backend, &seed)?;
        if order != 2 {
            return Err(GroupError::NotInvolution(order));
        }
        Ok(GroupSpec {
            backend,
            generators,
            seed,
            label: label.into(),
            wreath: None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, c: &[&[usize]]) -> GroupElement {
        GroupElement::from_cycles(n, c).unwrap()
    }

    #[test]
    fn orders_of_small_permutations() {
        let b = Backend::Perm { degree: 4 };
        assert_eq!(element_order(&b, &b.identity()).unwrap(), 1);
        assert_eq!(element_order(&b, &cyc(4, &[&[1, 2]])).unwrap(), 2);
        let p = b.mul(&cyc(4, &[&[1, 2]]), &cyc(4, &[&[2, 3]]));
        assert_eq!(element_order(&b, &p).unwrap(), 3);
        assert_eq!(element_order(&b, &cyc(4, &[&[1, 2, 3, 4]])).unwrap(), 4);
    }

    #[test]
    fn order_bound_aborts() {
        let b = Backend::Perm { degree: 5 };
        let g = cyc(5, &[&[1, 2, 3, 4, 5]]);
        assert_eq!(
            element_order_bounded(&b, &g, 3),
            Err(GroupError::OrderBoundExceeded(3))
        );
    }

    #[test]
    fn right_action_convention() {
        let b = Backend::Perm { degree: 3 };
        // (1,2) then (2,3): 1 -> 2 -> 3
        let p = b.mul(&cyc(3, &[&[1, 2]]), &cyc(3, &[&[2, 3]]));
        assert_eq!(p, cyc(3, &[&[1, 3, 2]]));
        assert_eq!(
            b.conjugate(&cyc(3, &[&[1, 2]]), &cyc(3, &[&[2, 3]])),
            cyc(3, &[&[1, 3]])
        );
    }

    #[test]
    fn cycle_parsing_rejects_bad_input() {
        assert!(GroupElement::from_cycles(3, &[&[1, 4]]).is_err());
        assert!(GroupElement::from_cycles(3, &[&[1, 2], &[2, 3]]).is_err());
        assert_eq!(
            alloc::format!("{:?}", cyc(4, &[&[3, 4], &[1, 2]])),
            "(1,2)(3,4)"
        );
    }

    #[test]
    fn matrix_inverse_and_order() {
        let f = Field::GF3;
        let b = Backend::Matrix { field: f, dim: 2 };
        let m = GroupElement::matrix(f, 2, vec![1, 1, 0, 1]).unwrap();
        assert_eq!(element_order(&b, &m).unwrap(), 3);
        assert!(b.is_identity(&b.mul(&m, &b.inv(&m))));
        assert!(GroupElement::matrix(f, 2, vec![1, 1, 1, 1]).is_err());
    }

    #[test]
    fn tables() {
        let a4 = CayleyTable::alt4();
        assert_eq!(a4.order(), 12);
        let mut orders: Vec<usize> = (0..12).map(|a| a4.element_order(a)).collect();
        orders.sort();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 3, 3, 3, 3, 3, 3, 3]);
        let z3 = CayleyTable::cyclic(3);
        assert_eq!(z3.mul(2, 2), 1);
        assert!(CayleyTable::new(2, vec![0, 0, 0, 0]).is_err());
    }

    #[test]
    fn spec_requires_involution_seed() {
        let b = Backend::Perm { degree: 3 };
        let err = GroupSpec::new(b, vec![], cyc(3, &[&[1, 2, 3]]), "bad").unwrap_err();
        assert_eq!(err, GroupError::NotInvolution(3));
    }
}
