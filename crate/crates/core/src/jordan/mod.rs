//! Peirce decompositions and fusion laws of idempotents, the linearized
//! Jordan identity, and Jordan-ness of Matsuo quotients.

mod sweep;

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::{format_rational, int, is_zero_vector, rat, RatMatrix, RatVector, Rational};
use crate::fischer::diagram;
use crate::matsuo::{Algebra, MatsuoAlgebra};

pub use sweep::{JordanSweep, JordanVerdict, TaskOutcome, YTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JordanError {
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("eigenspaces span {found} of {dim} dimensions")]
    NotSemisimple { found: usize, dim: usize },
    #[error("operation not defined for eta = {0}")]
    WrongEta(String),
    #[error("consistency check failed: {0}")]
    CheckFailed(String),
}

/// Matrix of `v -> x v`; column `i` is `x b_i`.
pub fn adjoint_matrix(a: &Algebra, x: &[Rational]) -> RatMatrix {
    let n = a.dim();
    let mut m = RatMatrix::zeros(n, n);
    for (j, c) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        for i in 0..n {
            for (k, s) in a.product(j, i) {
                let v = m.get(*k, i) + c * s;
                m.set(*k, i, v);
            }
        }
    }
    m
}

/// `(x, y, z) = (xy)z - x(yz)`.
pub fn associator(a: &Algebra, x: &[Rational], y: &[Rational], z: &[Rational]) -> RatVector {
    let left = a.mul(&a.mul(x, y), z);
    let right = a.mul(x, &a.mul(y, z));
    left.iter().zip(&right).map(|(l, r)| l - r).collect()
}

/// `(xz, y, w) + (zw, y, x) + (wx, y, z)`: vanishes identically iff a
/// commutative algebra in characteristic 0 is Jordan.
pub fn w_element(
    a: &Algebra,
    x: &[Rational],
    y: &[Rational],
    z: &[Rational],
    w: &[Rational],
) -> RatVector {
    let mut out = vec![Rational::zero(); a.dim()];
    for (p, q, r) in [(x, z, w), (z, w, x), (w, x, z)] {
        for (o, v) in out.iter_mut().zip(associator(a, &a.mul(p, q), y, r)) {
            *o += v;
        }
    }
    out
}

/// Eigenspace decomposition of `ad_e` for the expected eigenvalues.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeirceReport {
    pub eigenvalues: Vec<Rational>,
    pub dims: Vec<usize>,
    /// `(lambda, mu, nu)`: a product of `lambda`- and `mu`-eigenvectors has a
    /// nonzero `nu`-component forbidden by the Jordan-type fusion law.
    pub fusion_violations: Vec<(Rational, Rational, Rational)>,
}

impl PeirceReport {
    pub fn dim_of(&self, lambda: &Rational) -> usize {
        self.eigenvalues
            .iter()
            .position(|l| l == lambda)
            .map_or(0, |i| self.dims[i])
    }
}

/// Eigenvalues allowed in `A_lambda A_mu` by the fusion law of Jordan type
/// `eta`: `1*1 = 1`, `1*0 = {}`, `0*0 = 0`, `1*eta = 0*eta = eta`,
/// `eta*eta = {1, 0}`. `None` for eigenvalues outside `{1, 0, eta}`.
pub fn jordan_fusion(lambda: &Rational, mu: &Rational, eta: &Rational) -> Option<Vec<Rational>> {
    let (one, zero) = (Rational::one(), Rational::zero());
    let kind = |v: &Rational| {
        if *v == one {
            Some(1)
        } else if *v == zero {
            Some(0)
        } else if v == eta {
            Some(2)
        } else {
            None
        }
    };
    let (a, b) = (kind(lambda)?, kind(mu)?);
    let (a, b) = (a.min(b), a.max(b));
    Some(match (a, b) {
        (1, 1) => vec![one],
        (0, 1) => vec![],
        (0, 0) => vec![zero],
        (1, 2) | (0, 2) => vec![eta.clone()],
        _ => vec![one, zero],
    })
}

/// Peirce decomposition of the idempotent `e` and check of the Jordan-type
/// fusion law (with `eta` the expected eigenvalue outside `{0, 1}`, if any).
pub fn peirce(
    a: &Algebra,
    e: &[Rational],
    expected: &[Rational],
) -> Result<PeirceReport, JordanError> {
    if a.mul(e, e) != e {
        return Err(JordanError::NotIdempotent);
    }
    let n = a.dim();
    let ad = adjoint_matrix(a, e);
    let spaces: Vec<Vec<RatVector>> = expected
        .iter()
        .map(|l| ad.shifted(l).expect("square").nullspace_basis())
        .collect();
    let found: usize = spaces.iter().map(Vec::len).sum();
    if found < n {
        return Err(JordanError::NotSemisimple { found, dim: n });
    }
    let eta = expected.iter().find(|l| !l.is_zero() && !l.is_one());
    let mut violations = Vec::new();
    if let Some(eta) = eta {
        // Lagrange projectors onto each eigenspace.
        let project = |v: &RatVector, nu: usize| -> RatVector {
            let mut out = v.clone();
            for (k, kappa) in expected.iter().enumerate() {
                if k != nu {
                    let shifted = ad.mul_vec(&out);
                    let scale = Rational::one() / (&expected[nu] - kappa);
                    out = shifted
                        .iter()
                        .zip(&out)
                        .map(|(s, o)| (s - kappa * o) * &scale)
                        .collect();
                }
            }
            out
        };
        for (li, lambda) in expected.iter().enumerate() {
            for (mi, mu) in expected.iter().enumerate().skip(li) {
                let Some(allowed) = jordan_fusion(lambda, mu, eta) else {
                    continue;
                };
                let forbidden: Vec<usize> = (0..expected.len())
                    .filter(|&k| !allowed.contains(&expected[k]))
                    .collect();
                'pair: for u in &spaces[li] {
                    for v in &spaces[mi] {
                        let uv = a.mul(u, v);
                        for &nu in &forbidden {
                            if !is_zero_vector(&project(&uv, nu)) {
                                violations.push((lambda.clone(), mu.clone(), expected[nu].clone()));
                                break 'pair;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(PeirceReport {
        eigenvalues: expected.to_vec(),
        dims: spaces.iter().map(Vec::len).collect(),
        fusion_violations: violations,
    })
}

/// True iff `x` is an idempotent whose adjoint is semisimple with
/// eigenvalues in `{1, 0, eta}`, `dim A_1(x) = 1`, and the Jordan-type
/// fusion law holds.
pub fn is_primitive_axis(a: &Algebra, x: &[Rational], eta: &Rational) -> bool {
    match peirce(a, x, &[Rational::one(), Rational::zero(), eta.clone()]) {
        Ok(r) => r.dims[0] == 1 && r.fusion_violations.is_empty(),
        Err(_) => false,
    }
}

/// Decides the linearized Jordan identity on all basis quadruples.
pub fn jordan_check(a: &Algebra) -> JordanVerdict {
    JordanSweep::new(a, None, None).run()
}

/// Sweep deciding whether `M / M^perp` is Jordan, i.e. whether every
/// `w(a,b,c,d)` over class elements lies in the radical. With symmetry the
/// middle argument is the class seed (index 0), which is sound because the
/// product is equivariant under a group transitive on the class.
pub fn jordan_modulo_radical_sweep(m: &MatsuoAlgebra, use_symmetry: bool) -> JordanSweep {
    let q = m.quotient_by_radical();
    JordanSweep::new(m.algebra(), Some(&q.projection), use_symmetry.then_some(0))
}

pub fn jordan_modulo_radical(m: &MatsuoAlgebra, use_symmetry: bool) -> JordanVerdict {
    jordan_modulo_radical_sweep(m, use_symmetry).run()
}

/// Possible Jordan factors of `M_eta` when `eta != 1/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EtaCase {
    /// `|D| = 1`: `M` itself is the 1-dimensional Jordan algebra.
    SingleElement {
        quotient_dim: usize,
    },
    /// `eta = 2` on a complete diagram: the differences `d - e` span an
    /// ideal inside the radical with 1-dimensional quotient.
    CompleteDiagram {
        quotient_dim: usize,
    },
    NoJordanFactor,
}

pub fn eta_not_half_analysis(m: &MatsuoAlgebra) -> Result<EtaCase, JordanError> {
    if *m.eta() == rat(1, 2) {
        return Err(JordanError::WrongEta(format_rational(m.eta())));
    }
    let n = m.dim();
    if n == 1 {
        return Ok(EtaCase::SingleElement { quotient_dim: 1 });
    }
    if *m.eta() != int(2) || !diagram(m.class()).is_complete() {
        return Ok(EtaCase::NoJordanFactor);
    }
    let diffs: Vec<RatVector> = (1..n)
        .map(|i| {
            let mut v = vec![Rational::zero(); n];
            v[0] = Rational::one();
            v[i] = -Rational::one();
            v
        })
        .collect();
    if let Some(i) = diffs.iter().position(|v| !m.in_radical(v)) {
        return Err(JordanError::CheckFailed(alloc::format!(
            "difference d_0 - d_{} is not in the radical",
            i + 1
        )));
    }
    let q = m
        .algebra()
        .quotient(&diffs)
        .map_err(|e| JordanError::CheckFailed(alloc::format!("{e}")))?;
    if q.dim() != 1 {
        return Err(JordanError::CheckFailed(alloc::format!(
            "quotient by differences has dimension {}",
            q.dim()
        )));
    }
    Ok(EtaCase::CompleteDiagram { quotient_dim: 1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::Family;
    use crate::matsuo::build_matsuo;

    fn matsuo(f: Family, eta: Rational) -> MatsuoAlgebra {
        build_matsuo(&f.build_class().unwrap(), eta).unwrap()
    }

    #[test]
    fn adjoint_of_zero_and_of_basis_idempotent() {
        let m = matsuo(Family::Sym { m: 4 }, rat(1, 2));
        let a = m.algebra();
        assert_eq!(
            adjoint_matrix(a, &vec![Rational::zero(); 6]),
            RatMatrix::zeros(6, 6)
        );
        let ad = adjoint_matrix(a, &a.basis_vector(2));
        assert_eq!(*ad.get(2, 2), int(1));
    }

    #[test]
    fn class_elements_are_primitive_axes() {
        for (f, eta) in [
            (Family::Sym { m: 4 }, rat(1, 2)),
            (Family::Sym { m: 5 }, rat(1, 3)),
            (Family::Frob { h: 2 }, int(2)),
            (Family::Wr3 { n: 4 }, rat(1, 2)),
        ] {
            let m = matsuo(f, eta.clone());
            for d in 0..m.dim() {
                assert!(
                    is_primitive_axis(m.algebra(), &m.algebra().basis_vector(d), &eta),
                    "{f} {d}"
                );
            }
        }
    }

    #[test]
    fn peirce_dims_of_axis() {
        let m = matsuo(Family::Sym { m: 4 }, rat(1, 2));
        let r = peirce(
            m.algebra(),
            &m.algebra().basis_vector(0),
            &[int(1), int(0), rat(1, 2)],
        )
        .unwrap();
        assert_eq!(r.dims.iter().sum::<usize>(), 6);
        assert_eq!(r.dims[0], 1);
        // one eta-eigenvector c - c^d per line through the axis
        let degree = diagram(m.class()).degree(0);
        assert_eq!(r.dims[2], degree / 2);
        assert_eq!(r.dims[1], 6 - 1 - degree / 2);
        assert!(r.fusion_violations.is_empty());
    }

    #[test]
    fn sum_of_commuting_axes_is_not_primitive() {
        let m = matsuo(Family::Sym { m: 4 }, rat(1, 2));
        let a = m.algebra();
        let (i, j) = (0..6)
            .flat_map(|i| (0..6).map(move |j| (i, j)))
            .find(|&(i, j)| i != j && m.class().commute(i, j))
            .unwrap();
        let x: RatVector = a
            .basis_vector(i)
            .iter()
            .zip(a.basis_vector(j))
            .map(|(p, q)| p + q)
            .collect();
        assert!(!is_primitive_axis(a, &x, &rat(1, 2)));
        let r = peirce(a, &x, &[int(1), int(0), rat(1, 2)]).unwrap();
        assert!(r.dims[0] >= 2);
    }

    #[test]
    fn non_idempotent_rejected() {
        let m = matsuo(Family::Sym { m: 3 }, rat(1, 2));
        let x = vec![int(2), int(0), int(0)];
        assert_eq!(
            peirce(m.algebra(), &x, &[int(1)]),
            Err(JordanError::NotIdempotent)
        );
    }

    #[test]
    fn w_vanishes_on_idempotent() {
        let m = matsuo(Family::Wr2 { n: 4 }, rat(1, 2));
        let e = m.algebra().basis_vector(3);
        assert!(is_zero_vector(&w_element(m.algebra(), &e, &e, &e, &e)));
    }

    #[test]
    fn small_jordan_algebras() {
        for f in [Family::Sym { m: 4 }, Family::Frob { h: 2 }] {
            let m = matsuo(f, rat(1, 2));
            let v = jordan_check(m.algebra());
            assert!(v.is_jordan, "{f}");
            let n = m.dim() as u64;
            assert_eq!(v.quadruples_checked, n * n * (n + 1) * (n + 2) / 6);
        }
    }

    #[test]
    fn sweep_agrees_with_direct_evaluation() {
        let m = matsuo(Family::Sym { m: 4 }, rat(1, 3));
        let v = jordan_check(m.algebra());
        assert!(!v.is_jordan);
        let [x, y, z, w] = v.counterexample.unwrap();
        let a = m.algebra();
        let b = |i| a.basis_vector(i);
        assert!(!is_zero_vector(&w_element(a, &b(x), &b(y), &b(z), &b(w))));
    }

    #[test]
    fn eta_analysis() {
        let single = matsuo(Family::Sym { m: 2 }, int(3));
        assert_eq!(
            eta_not_half_analysis(&single),
            Ok(EtaCase::SingleElement { quotient_dim: 1 })
        );
        let k9 = matsuo(Family::Frob { h: 2 }, int(2));
        assert_eq!(
            eta_not_half_analysis(&k9),
            Ok(EtaCase::CompleteDiagram { quotient_dim: 1 })
        );
        let s4 = matsuo(Family::Sym { m: 4 }, int(3));
        assert_eq!(eta_not_half_analysis(&s4), Ok(EtaCase::NoJordanFactor));
        let half = matsuo(Family::Sym { m: 4 }, rat(1, 2));
        assert!(matches!(
            eta_not_half_analysis(&half),
            Err(JordanError::WrongEta(_))
        ));
    }
}
