//! Exhaustive evaluation of the linearized Jordan identity on basis
//! quadruples, optionally modulo an ideal.
//!
//! For fixed `y` the defect is linear in the product `pq` of each term:
//! `w(x,y,z,w) = sum over (p,q,r) in {(x,z,w),(z,w,x),(w,x,z)} of
//! sum_k (pq)_k D_y[k][r]` with `D_y[k][r] = P((e_k y) e_r - e_k (y e_r))`,
//! where `P` projects onto the quotient. Tables are integer-scaled.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::exact::RatMatrix;
use crate::matsuo::scaled::{
    pp_bound, projected_products, with_width, Acc, IntProducts, IntProjection, Width,
};
use crate::matsuo::Algebra;

/// Outcome of a Jordan-identity sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanVerdict {
    pub is_jordan: bool,
    /// First violating basis quadruple `(x, y, z, w)` in sweep order.
    pub counterexample: Option<[usize; 4]>,
    pub quadruples_checked: u64,
    /// True when `y` was fixed to a single class representative.
    pub symmetry_reduction_used: bool,
}

#[derive(Debug, Clone)]
struct Tables<T> {
    prod: Vec<Vec<(u32, T)>>,
    pp: Vec<T>,
}

#[derive(Debug, Clone)]
enum AnyTables {
    I64(Tables<i64>),
    I128(Tables<i128>),
    Big(Tables<BigInt>),
}

/// Precomputed `D_y` for one middle argument.
#[derive(Debug, Clone)]
pub struct YTable {
    y: usize,
    data: AnyYTable,
}

#[derive(Debug, Clone)]
enum AnyYTable {
    I64(Vec<i64>),
    I128(Vec<i128>),
    Big(Vec<BigInt>),
}

impl YTable {
    pub fn y(&self) -> usize {
        self.y
    }
}

/// Violation found by one task, and the number of quadruples it examined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TaskOutcome {
    /// `(z, w)` of the first violating quadruple of the task.
    pub hit: Option<(usize, usize)>,
    pub checked: u64,
}

/// A sweep over quadruples `(x, y, z, w)` with `y` in [`JordanSweep::y_values`],
/// `x <= z <= w`. Tasks are indexed by `(y, x)`; sequential order is `y`,
/// then `x`, then `z`, then `w`.
#[derive(Debug, Clone)]
pub struct JordanSweep {
    n: usize,
    q: usize,
    ys: Vec<usize>,
    symmetry: bool,
    tables: AnyTables,
}

impl JordanSweep {
    /// Sweep of `A / I` where `projection` maps `A` onto the quotient.
    /// With `fixed_y`, only that middle argument is used.
    pub fn new(a: &Algebra, projection: Option<&RatMatrix>, fixed_y: Option<usize>) -> Self {
        let n = a.dim();
        let prod = IntProducts::new(a);
        let proj = match projection {
            Some(p) => IntProjection::new(p),
            None => IntProjection::identity(n),
        };
        let q = proj.q;
        let a_bound = &prod.row_bound;
        let bound = pp_bound(&prod, &proj) * a_bound * a_bound * 6u32;
        let tables = with_width!(Width::for_bound(&bound), T => {
            let p = prod.typed::<T>();
            let pp = projected_products(&p, &proj.typed::<T>(), n, q);
            T::wrap(Tables { prod: p, pp })
        });
        JordanSweep {
            n,
            q,
            ys: fixed_y.map_or_else(|| (0..n).collect(), |y| vec![y]),
            symmetry: fixed_y.is_some(),
            tables,
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn quotient_dim(&self) -> usize {
        self.q
    }

    pub fn y_values(&self) -> &[usize] {
        &self.ys
    }

    pub fn symmetry_reduction_used(&self) -> bool {
        self.symmetry
    }

    /// Number of quadruples in task `(y, x)`.
    pub fn task_size(&self, x: usize) -> u64 {
        let m = (self.n - x) as u64;
        m * (m + 1) / 2
    }

    pub fn prepare(&self, y: usize) -> YTable {
        let data = match &self.tables {
            AnyTables::I64(t) => AnyYTable::I64(build_y(t, self.n, self.q, y)),
            AnyTables::I128(t) => AnyYTable::I128(build_y(t, self.n, self.q, y)),
            AnyTables::Big(t) => AnyYTable::Big(build_y(t, self.n, self.q, y)),
        };
        YTable { y, data }
    }

    pub fn run_task(&self, table: &YTable, x: usize) -> TaskOutcome {
        match (&self.tables, &table.data) {
            (AnyTables::I64(t), AnyYTable::I64(d)) => scan(t, d, self.n, self.q, x),
            (AnyTables::I128(t), AnyYTable::I128(d)) => scan(t, d, self.n, self.q, x),
            (AnyTables::Big(t), AnyYTable::Big(d)) => scan(t, d, self.n, self.q, x),
            _ => unreachable!("table built by a different sweep"),
        }
    }

    /// Combines the outcomes of every task of one `y` (in `x` order; tasks
    /// after the first hit may be omitted) into the running verdict.
    /// Returns true when the sweep is decided.
    pub fn absorb(
        &self,
        verdict: &mut JordanVerdict,
        y: usize,
        outcomes: &[Option<TaskOutcome>],
    ) -> bool {
        for (x, o) in outcomes.iter().enumerate() {
            let o = o.expect("every task before the first hit must run");
            verdict.quadruples_checked += o.checked;
            if let Some((z, w)) = o.hit {
                verdict.is_jordan = false;
                verdict.counterexample = Some([x, y, z, w]);
                return true;
            }
        }
        false
    }

    pub fn empty_verdict(&self) -> JordanVerdict {
        JordanVerdict {
            is_jordan: true,
            counterexample: None,
            quadruples_checked: 0,
            symmetry_reduction_used: self.symmetry,
        }
    }

    /// Sequential sweep.
    pub fn run(&self) -> JordanVerdict {
        let mut verdict = self.empty_verdict();
        for &y in &self.ys {
            let table = self.prepare(y);
            let mut outcomes = Vec::with_capacity(self.n);
            for x in 0..self.n {
                let o = self.run_task(&table, x);
                outcomes.push(Some(o));
                if o.hit.is_some() {
                    break;
                }
            }
            if self.absorb(&mut verdict, y, &outcomes) {
                break;
            }
        }
        verdict
    }
}

trait Wrap: Sized {
    fn wrap(t: Tables<Self>) -> AnyTables;
}

impl Wrap for i64 {
    fn wrap(t: Tables<Self>) -> AnyTables {
        AnyTables::I64(t)
    }
}

impl Wrap for i128 {
    fn wrap(t: Tables<Self>) -> AnyTables {
        AnyTables::I128(t)
    }
}

impl Wrap for BigInt {
    fn wrap(t: Tables<Self>) -> AnyTables {
        AnyTables::Big(t)
    }
}

fn build_y<T: Acc>(t: &Tables<T>, n: usize, q: usize, y: usize) -> Vec<T> {
    let mut d = vec![T::zero(); n * n * q];
    for k in 0..n {
        let ky = &t.prod[k * n + y];
        for r in 0..n {
            let out = &mut d[(k * n + r) * q..][..q];
            for (u, c) in ky {
                let src = &t.pp[(*u as usize * n + r) * q..][..q];
                for (o, s) in out.iter_mut().zip(src) {
                    o.mac(c, s);
                }
            }
            for (u, c) in &t.prod[y * n + r] {
                let c = c.negated();
                let src = &t.pp[(k * n + *u as usize) * q..][..q];
                for (o, s) in out.iter_mut().zip(src) {
                    o.mac(&c, s);
                }
            }
        }
    }
    d
}

fn scan<T: Acc>(t: &Tables<T>, d: &[T], n: usize, q: usize, x: usize) -> TaskOutcome {
    let mut acc = vec![T::zero(); q];
    let mut checked = 0;
    for z in x..n {
        for w in z..n {
            checked += 1;
            acc.iter_mut().for_each(|a| *a = T::zero());
            for (p, pq, r) in [(x, z, w), (z, w, x), (w, x, z)] {
                for (k, c) in &t.prod[p * n + pq] {
                    let src = &d[(*k as usize * n + r) * q..][..q];
                    for (a, s) in acc.iter_mut().zip(src) {
                        a.mac(c, s);
                    }
                }
            }
            if acc.iter().any(|a| !a.is_zero()) {
                return TaskOutcome {
                    hit: Some((z, w)),
                    checked,
                };
            }
        }
    }
    TaskOutcome { hit: None, checked }
}
