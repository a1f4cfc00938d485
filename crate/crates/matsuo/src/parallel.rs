//! Data-parallel Jordan sweeps with the same verdict, counterexample and
//! quadruple count as the sequential sweep.

use std::sync::atomic::{AtomicUsize, Ordering};

use matsuo_core::jordan::{jordan_modulo_radical_sweep, JordanSweep, JordanVerdict};
use matsuo_core::matsuo::{Algebra, MatsuoAlgebra};
use rayon::prelude::*;

/// Runs `sweep` with tasks `(y, x)` spread over the current rayon pool.
///
/// Middle arguments are processed in order; within one `y` every task `x`
/// runs unless a task with smaller `x` has already found a violation, so the
/// reduction always sees every task up to the first hit.
pub fn run_parallel(sweep: &JordanSweep) -> JordanVerdict {
    let n = sweep.dim();
    let mut verdict = sweep.empty_verdict();
    if n == 0 {
        return verdict;
    }
    for &y in sweep.y_values() {
        let table = sweep.prepare(y);
        let first_hit = AtomicUsize::new(usize::MAX);
        let outcomes: Vec<_> = (0..n)
            .into_par_iter()
            .map(|x| {
                if x > first_hit.load(Ordering::Relaxed) {
                    return None;
                }
                let o = sweep.run_task(&table, x);
                if o.hit.is_some() {
                    first_hit.fetch_min(x, Ordering::Relaxed);
                }
                Some(o)
            })
            .collect();
        let cut = first_hit.load(Ordering::Relaxed).min(n - 1);
        if sweep.absorb(&mut verdict, y, &outcomes[..=cut]) {
            break;
        }
    }
    verdict
}

/// Parallel [`matsuo_core::jordan::jordan_check`].
pub fn jordan_check_parallel(a: &Algebra) -> JordanVerdict {
    run_parallel(&JordanSweep::new(a, None, None))
}

/// Parallel [`matsuo_core::jordan::jordan_modulo_radical`].
pub fn jordan_modulo_radical_parallel(m: &MatsuoAlgebra, use_symmetry: bool) -> JordanVerdict {
    run_parallel(&jordan_modulo_radical_sweep(m, use_symmetry))
}

/// Runs `f` on a pool with `threads` workers (`None`: rayon's default).
pub fn with_threads<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    match threads {
        None => f(),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .expect("thread pool")
            .install(f),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use matsuo_core::constructions::Family;
    use matsuo_core::exact::rat;
    use matsuo_core::jordan::{jordan_check, jordan_modulo_radical};
    use matsuo_core::matsuo::build_matsuo;

    #[test]
    fn matches_sequential_on_negative_case() {
        let m = build_matsuo(&Family::Sym { m: 4 }.build_class().unwrap(), rat(1, 3)).unwrap();
        let seq = jordan_check(m.algebra());
        assert!(!seq.is_jordan);
        for t in [1, 2, 4] {
            assert_eq!(
                with_threads(Some(t), || jordan_check_parallel(m.algebra())),
                seq
            );
        }
    }

    #[test]
    fn matches_sequential_modulo_radical() {
        for fam in [Family::Wr2 { n: 5 }, Family::WrAlt4 { n: 4 }] {
            let m = build_matsuo(&fam.build_class().unwrap(), rat(1, 2)).unwrap();
            for sym in [true, false] {
                let seq = jordan_modulo_radical(&m, sym);
                for t in [1, 3] {
                    assert_eq!(
                        with_threads(Some(t), || jordan_modulo_radical_parallel(&m, sym)),
                        seq,
                        "{fam} symmetry={sym} threads={t}"
                    );
                }
            }
        }
    }
}
