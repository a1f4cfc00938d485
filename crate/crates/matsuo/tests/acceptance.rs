//! Acceptance gate: one PASS/FAIL line per criterion; exits non-zero if any
//! criterion fails.

use std::time::Instant;

use matsuo::parallel::{jordan_check_parallel, jordan_modulo_radical_parallel};
use matsuo_core::albert::{
    check_against_reference, generated_basis_27, oct_mul, oct_norm, verify_albert_axial, Octonion,
};
use matsuo_core::constructions::Family;
use matsuo_core::exact::{echelon_of_rows, int, rat, RatVector, Rational};
use matsuo_core::fischer::{diagram, is_connected, spectrum, table1_row, Sign};
use matsuo_core::jordan::{
    eta_not_half_analysis, jordan_check, jordan_modulo_radical, w_element, EtaCase,
};
use matsuo_core::matsuo::{
    build_matsuo, check_equivariance, check_frobenius, check_gram_identity,
    radical_dim_via_spectrum, wr_radical_basis, MatsuoAlgebra,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn matsuo(f: Family, eta: Rational) -> Result<MatsuoAlgebra, String> {
    let class = f.build_class().map_err(|e| format!("{f}: {e}"))?;
    build_matsuo(&class, eta).map_err(|e| format!("{f}: {e}"))
}

fn half() -> Rational {
    rat(1, 2)
}

/// Desk-scale members of every built-in family.
fn table_families() -> Vec<Family> {
    let mut v: Vec<Family> = (2..=8).map(|m| Family::Sym { m }).collect();
    v.extend((4..=8).map(|n| Family::Wr2 { n }));
    v.extend((4..=8).map(|n| Family::Wr3 { n }));
    v.extend([
        Family::WrAlt4 { n: 4 },
        Family::Frob { h: 2 },
        Family::Sp { m: 3 },
        Family::Orthogonal {
            m: 4,
            eps: Sign::Plus,
        },
        Family::Orthogonal {
            m: 3,
            eps: Sign::Minus,
        },
        Family::Unitary { m: 4 },
        Family::Unitary { m: 5 },
        Family::Omega3 {
            m: 5,
            eps: Sign::Plus,
        },
        Family::Omega3 {
            m: 5,
            eps: Sign::Minus,
        },
        Family::Omega3 {
            m: 6,
            eps: Sign::Minus,
        },
    ]);
    v
}

fn criterion_1() -> Outcome {
    let families = table_families();
    for f in &families {
        let class = f.build_class().map_err(|e| format!("{f}: {e}"))?;
        let row = table1_row(f.pr_type().ok_or_else(|| format!("{f}: no closed form"))?)
            .map_err(|e| e.to_string())?;
        let g = diagram(&class);
        ensure(class.len() == row.size, || {
            format!("{f}: size {} != {}", class.len(), row.size)
        })?;
        ensure(is_connected(&g), || format!("{f}: diagram disconnected"))?;
        let s = spectrum(&g);
        ensure(s.unaccounted == 0, || {
            format!("{f}: non-integer eigenvalues")
        })?;
        ensure(s == row.spectrum(), || {
            format!("{f}: spectrum {s} != {}", row.spectrum())
        })?;
    }
    Ok(format!(
        "{} families: class sizes and integer spectra match",
        families.len()
    ))
}

fn criterion_2() -> Outcome {
    let mut cases = vec![
        (Family::Sp { m: 3 }, 35),
        (
            Family::Orthogonal {
                m: 4,
                eps: Sign::Plus,
            },
            84,
        ),
        (
            Family::Orthogonal {
                m: 3,
                eps: Sign::Minus,
            },
            15,
        ),
        (Family::Unitary { m: 4 }, 20),
        (Family::Unitary { m: 5 }, 120),
        (
            Family::Omega3 {
                m: 6,
                eps: Sign::Minus,
            },
            90,
        ),
        (Family::PerpDerived, 8),
    ];
    for n in 4..=8u32 {
        let r = (n * (n - 3) / 2) as usize;
        cases.push((Family::Wr2 { n }, r));
        cases.push((Family::Wr3 { n }, r));
    }
    for (f, expected) in &cases {
        let m = matsuo(*f, half())?;
        let nullspace = m.radical_basis().len();
        let spectral = radical_dim_via_spectrum(&m).map_err(|e| e.to_string())?;
        ensure(nullspace == *expected && spectral == *expected, || {
            format!("{f}: nullspace {nullspace}, -4 multiplicity {spectral}, expected {expected}")
        })?;
    }
    Ok(format!(
        "{} radicals: Gram nullspace = -4 multiplicity = expected",
        cases.len()
    ))
}

fn criterion_3() -> Outcome {
    let mut cases: Vec<(Family, usize, bool)> = Vec::new();
    for m in 4..=8u32 {
        let m_ = m as usize;
        cases.push((Family::Wr2 { n: m }, m_ * (m_ + 1) / 2, true));
        cases.push((Family::Wr3 { n: m }, m_ * m_, true));
    }
    cases.extend([
        (
            Family::Orthogonal {
                m: 4,
                eps: Sign::Plus,
            },
            36,
            true,
        ),
        (
            Family::Orthogonal {
                m: 3,
                eps: Sign::Minus,
            },
            21,
            true,
        ),
        (Family::Sp { m: 3 }, 28, true),
        (
            Family::Omega3 {
                m: 6,
                eps: Sign::Minus,
            },
            36,
            true,
        ),
        (Family::Unitary { m: 4 }, 25, true),
        (Family::Unitary { m: 5 }, 45, true),
        (Family::PerpDerived, 28, true),
        (Family::WrAlt4 { n: 4 }, 60, false),
    ]);
    for (f, q, jordan) in &cases {
        let m = matsuo(*f, half())?;
        let quotient = m.quotient_by_radical();
        ensure(quotient.dim() == *q, || {
            format!("{f}: quotient dim {} != {q}", quotient.dim())
        })?;
        let v = jordan_modulo_radical_parallel(&m, true);
        ensure(v.is_jordan == *jordan, || {
            format!("{f}: jordan = {}", v.is_jordan)
        })?;
        if let Some(c) = v.counterexample {
            // Replay the witness directly in the quotient algebra.
            let e = |i: usize| quotient.project(&m.algebra().basis_vector(i));
            let w = w_element(&quotient.algebra, &e(c[0]), &e(c[1]), &e(c[2]), &e(c[3]));
            ensure(w.iter().any(|x| !x.is_zero()), || {
                format!("{f}: counterexample does not replay")
            })?;
        }
    }
    // The symmetry reduction agrees with the unreduced sweep on a small case.
    let m = matsuo(Family::Wr3 { n: 5 }, half())?;
    ensure(jordan_modulo_radical(&m, false).is_jordan, || {
        String::from("Wr(3,5) without symmetry")
    })?;
    Ok(format!(
        "{} quotients: dimensions and verdicts as expected",
        cases.len()
    ))
}

fn rank(rows: &[RatVector], n: usize) -> usize {
    echelon_of_rows(rows, n).rank()
}

fn criterion_4() -> Outcome {
    for n in 4..=8u32 {
        for f in [Family::Wr2 { n }, Family::Wr3 { n }] {
            let m = matsuo(f, half())?;
            let dim = m.dim();
            let basis = wr_radical_basis(&m).map_err(|e| format!("{f}: {e}"))?;
            let expected = (n * (n - 3) / 2) as usize;
            let nullspace = m.gram().nullspace_basis();
            ensure(
                basis.len() == expected && rank(&basis, dim) == expected,
                || {
                    format!(
                        "{f}: closed-form basis has {} vectors of rank {}",
                        basis.len(),
                        rank(&basis, dim)
                    )
                },
            )?;
            ensure(nullspace.len() == expected, || {
                format!("{f}: nullspace dim {}", nullspace.len())
            })?;
            for v in &basis {
                ensure(m.gram().mul_vec(v).iter().all(Zero::is_zero), || {
                    format!("{f}: basis vector outside nullspace")
                })?;
            }
            let union: Vec<RatVector> = basis.iter().chain(&nullspace).cloned().collect();
            ensure(rank(&union, dim) == expected, || {
                format!("{f}: nullspace not spanned by closed-form basis")
            })?;
        }
    }
    Ok(String::from(
        "p in {2,3}, 4 <= n <= 8: closed-form basis spans the Gram nullspace exactly",
    ))
}

fn criterion_5() -> Outcome {
    let mut fams: Vec<Family> = (2..=6).map(|m| Family::Sym { m }).collect();
    fams.push(Family::Frob { h: 2 });
    for f in &fams {
        let m = matsuo(*f, half())?;
        ensure(m.radical_basis().is_empty(), || {
            format!("{f}: nonzero radical")
        })?;
        ensure(jordan_check(m.algebra()).is_jordan, || {
            format!("{f}: not Jordan")
        })?;
    }
    Ok(format!(
        "{} radical-free algebras pass jordan_check",
        fams.len()
    ))
}

fn criterion_6() -> Outcome {
    let complete = [
        Family::Sym { m: 3 },
        Family::Frob { h: 1 },
        Family::Frob { h: 2 },
        Family::Frob { h: 3 },
    ];
    for f in complete {
        let m = matsuo(f, int(2))?;
        let case = eta_not_half_analysis(&m).map_err(|e| format!("{f}: {e}"))?;
        ensure(case == EtaCase::CompleteDiagram { quotient_dim: 1 }, || {
            format!("{f}: {case:?}")
        })?;
    }
    for eta in [int(3), int(-1), rat(1, 3)] {
        let m = matsuo(Family::Sym { m: 4 }, eta.clone())?;
        let case = eta_not_half_analysis(&m).map_err(|e| e.to_string())?;
        ensure(case == EtaCase::NoJordanFactor, || {
            format!("Sym(4), eta {eta}: {case:?}")
        })?;
        // Independent witness: with zero radical, M itself would have to be Jordan.
        ensure(
            m.radical_basis().is_empty() && !jordan_check(m.algebra()).is_jordan,
            || format!("Sym(4), eta {eta}: expected a nondegenerate non-Jordan algebra"),
        )?;
    }
    Ok(String::from("eta = 2 on complete diagrams gives a 1-dim quotient; Sym(4) at 3, -1, 1/3 has no Jordan factor"))
}

fn random_octonion(rng: &mut ChaCha8Rng) -> Octonion {
    Octonion {
        coords: core::array::from_fn(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=5))),
    }
}

fn criterion_7() -> Outcome {
    let report = verify_albert_axial().map_err(|e| e.to_string())?;
    let expected = Rational::new(
        BigInt::one(),
        BigInt::from(2).pow(78) * BigInt::from(3).pow(36),
    );
    ensure(report.determinant.abs() == expected, || {
        format!("|det| = {}", report.determinant.abs())
    })?;
    ensure(report.rank == 27, || format!("rank {}", report.rank))?;
    let basis = generated_basis_27().map_err(|e| e.to_string())?;
    check_against_reference(&basis).map_err(|e| e.to_string())?;
    ensure(report.axes_primitive == [true; 4], || {
        format!("axes primitive: {:?}", report.axes_primitive)
    })?;
    ensure(report.jordan.is_jordan, || {
        format!("jordan_check: {:?}", report.jordan)
    })?;
    for a in 0..8 {
        for b in 0..8 {
            let (x, y) = (Octonion::unit(a), Octonion::unit(b));
            let lhs = oct_norm(&oct_mul(&x, &y)).map_err(|e| e.to_string())?;
            ensure(lhs == int(1), || format!("N(u{a} u{b}) = {lhs}"))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x0c70);
    for _ in 0..100 {
        let (x, y) = (random_octonion(&mut rng), random_octonion(&mut rng));
        // Sum of squares computed directly from coordinates.
        let sq = |o: &Octonion| o.coords.iter().map(|c| c * c).sum::<Rational>();
        let lhs = sq(&oct_mul(&x, &y));
        ensure(lhs == sq(&x) * sq(&y), || {
            format!("composition fails for {x:?}, {y:?}")
        })?;
        ensure(oct_norm(&x).map_err(|e| e.to_string())? == sq(&x), || {
            String::from("norm is not the sum of squares")
        })?;
    }
    Ok(String::from(
        "|det| = 1/(2^78 3^36), 27 products match, 4 primitive axes, Jordan, composition on 64 + 100 pairs",
    ))
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> RatVector {
    (0..n)
        .map(|_| rat(rng.gen_range(-4..=4), rng.gen_range(1..=3)))
        .collect()
}

fn criterion_8() -> Outcome {
    let families = table_families();
    let mut algebras = 0;
    for f in families.iter().copied().chain([Family::PerpDerived]) {
        for eta in [half(), rat(1, 3)] {
            let m = matsuo(f, eta.clone())?;
            ensure(check_frobenius(&m), || {
                format!("{f}, eta {eta}: Frobenius fails")
            })?;
            ensure(check_equivariance(&m), || {
                format!("{f}, eta {eta}: not equivariant")
            })?;
            algebras += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let m = matsuo(Family::Sym { m: 5 }, rat(1, 3))?;
    let a = m.algebra();
    let n = a.dim();
    for _ in 0..20 {
        let v: Vec<RatVector> = (0..5).map(|_| random_vector(&mut rng, n)).collect();
        let r = rat(rng.gen_range(-5..=5), rng.gen_range(1..=4));
        let base = w_element(a, &v[0], &v[1], &v[2], &v[3]);
        ensure(
            base == w_element(a, &v[2], &v[1], &v[0], &v[3])
                && base == w_element(a, &v[3], &v[1], &v[2], &v[0]),
            || String::from("w is not symmetric in x, z, w"),
        )?;
        let mixed: RatVector = v[0].iter().zip(&v[4]).map(|(p, q)| p + q * &r).collect();
        let lhs = w_element(a, &mixed, &v[1], &v[2], &v[3]);
        let other = w_element(a, &v[4], &v[1], &v[2], &v[3]);
        let rhs: RatVector = base.iter().zip(&other).map(|(p, q)| p + q * &r).collect();
        ensure(lhs == rhs, || String::from("w is not linear in x"))?;
    }
    for f in [
        Family::Sym { m: 6 },
        Family::Wr3 { n: 5 },
        Family::Omega3 {
            m: 6,
            eps: Sign::Minus,
        },
    ] {
        let a = f.build_class().map_err(|e| e.to_string())?;
        let b = f.build_class().map_err(|e| e.to_string())?;
        ensure(a.elements() == b.elements(), || {
            format!("{f}: class enumeration is not deterministic")
        })?;
    }
    Ok(format!("Frobenius + equivariance on {algebras} algebras; w symmetric and multilinear; deterministic classes"))
}

/// A mutant is detected when any of the three checks rejects it.
fn detected(m: &MatsuoAlgebra) -> bool {
    !check_frobenius(m) || !check_gram_identity(m) || !jordan_check_parallel(m.algebra()).is_jordan
}

fn criterion_9() -> Outcome {
    let fixtures = [
        Family::Sym { m: 4 },
        Family::Sym { m: 5 },
        Family::Frob { h: 2 },
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut mutants = 0;
    for f in fixtures {
        let clean = matsuo(f, half())?;
        ensure(!detected(&clean), || {
            format!("{f}: unmutated fixture rejected")
        })?;
        let n = clean.dim();
        for _ in 0..6 {
            let mut m = clean.clone();
            let (i, j, k) = (
                rng.gen_range(0..n),
                rng.gen_range(0..n),
                rng.gen_range(0..n),
            );
            let old = m.algebra().structure_constant(i, j, k);
            let delta = rat(rng.gen_range(1..=3), rng.gen_range(1..=4));
            m.algebra_mut().set_structure_constant(i, j, k, old + delta);
            ensure(detected(&m), || {
                format!("{f}: structure constant ({i},{j},{k}) mutant survived")
            })?;
            mutants += 1;
        }
        for _ in 0..4 {
            let mut m = clean.clone();
            let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let old = m.gram().get(i, j).clone();
            m.set_gram_entry(i, j, old + rat(1, rng.gen_range(2..=5)));
            ensure(detected(&m), || {
                format!("{f}: Gram entry ({i},{j}) mutant survived")
            })?;
            mutants += 1;
        }
    }
    ensure(mutants >= 20, || format!("only {mutants} mutants"))?;
    Ok(format!("{mutants} single-entry mutants all detected"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("class sizes and spectra", criterion_1),
        ("radical dimensions", criterion_2),
        ("Jordan quotients", criterion_3),
        ("closed-form radical basis", criterion_4),
        ("radical-free Jordan cases", criterion_5),
        ("eta != 1/2 analysis", criterion_6),
        ("Albert certificate", criterion_7),
        ("property suites", criterion_8),
        ("mutation detection", criterion_9),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome =
            std::panic::catch_unwind(run).unwrap_or_else(|_| Err(String::from("panicked")));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("criterion {}: PASS  {name}: {msg} [{secs:.1} s]", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {msg} [{secs:.1} s]", k + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 9 criteria passed");
}
