//! Sizes and spectra of the diagrams of every family in the classification
//! of finite connected 3-transposition groups.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::{FischerError, SpectrumReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// A family label with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PrType {
    /// A single involution (the cyclic group of order 2).
    Trivial,
    Pr1 {
        h: u32,
    },
    Pr2a {
        h: u32,
        m: u32,
    },
    Pr2b {
        h: u32,
        m: u32,
    },
    Pr2c {
        h: u32,
        m: u32,
    },
    Pr2d {
        h: u32,
        m: u32,
    },
    Pr3 {
        h: u32,
        m: u32,
        eps: Sign,
    },
    Pr4 {
        h: u32,
        m: u32,
    },
    Pr5 {
        h: u32,
        m: u32,
        eps: Sign,
    },
    Pr6 {
        h: u32,
        m: u32,
    },
    Pr7a,
    Pr7b,
    Pr7c,
    Pr7d,
    Pr7e,
    Pr8 {
        h: u32,
    },
    Pr9 {
        h: u32,
    },
    Pr10 {
        h: u32,
    },
    Pr11 {
        h: u32,
    },
    Pr12 {
        h: u32,
    },
}

impl fmt::Display for PrType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use PrType::*;
        match *self {
            Trivial => write!(f, "trivial"),
            Pr1 { h } => write!(f, "PR1(h={h})"),
            Pr2a { h, m } => write!(f, "PR2(a)(h={h},m={m})"),
            Pr2b { h, m } => write!(f, "PR2(b)(h={h},m={m})"),
            Pr2c { h, m } => write!(f, "PR2(c)(h={h},m={m})"),
            Pr2d { h, m } => write!(f, "PR2(d)(h={h},m={m})"),
            Pr3 { h, m, eps } => write!(f, "PR3(h={h},m={m},eps={eps})"),
            Pr4 { h, m } => write!(f, "PR4(h={h},m={m})"),
            Pr5 { h, m, eps } => write!(f, "PR5(h={h},m={m},eps={eps})"),
            Pr6 { h, m } => write!(f, "PR6(h={h},m={m})"),
            Pr7a => write!(f, "PR7(a)"),
            Pr7b => write!(f, "PR7(b)"),
            Pr7c => write!(f, "PR7(c)"),
            Pr7d => write!(f, "PR7(d)"),
            Pr7e => write!(f, "PR7(e)"),
            Pr8 { h } => write!(f, "PR8(h={h})"),
            Pr9 { h } => write!(f, "PR9(h={h})"),
            Pr10 { h } => write!(f, "PR10(h={h})"),
            Pr11 { h } => write!(f, "PR11(h={h})"),
            Pr12 { h } => write!(f, "PR12(h={h})"),
        }
    }
}

/// One eigenvalue of a closed-form spectrum. `starred` marks the entry whose
/// multiplicity is defined as the remainder of the size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpectrumEntry {
    pub eigenvalue: i64,
    pub multiplicity: usize,
    pub starred: bool,
}

/// A resolved row: size, degree and every spectrum entry with the starred
/// multiplicity filled in. The first entry is the degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table1Row {
    pub pr: PrType,
    pub size: usize,
    pub entries: Vec<SpectrumEntry>,
}

impl Table1Row {
    pub fn degree(&self) -> i64 {
        self.entries[0].eigenvalue
    }

    /// Canonical spectrum (equal eigenvalues merged, zero multiplicities
    /// dropped, descending).
    pub fn spectrum(&self) -> SpectrumReport {
        SpectrumReport::canonical(
            self.entries.iter().map(|e| (e.eigenvalue, e.multiplicity)),
            0,
        )
    }
}

/// Integer formula evaluation that turns overflow and inexact division into
/// [`FischerError::BadParams`].
struct Eval {
    what: String,
}

impl Eval {
    fn err(&self, why: &str) -> FischerError {
        FischerError::BadParams(format!("{}: {why}", self.what))
    }

    fn pow(&self, base: i128, exp: i64) -> Result<i128, FischerError> {
        if exp < 0 {
            return Err(self.err("negative exponent"));
        }
        let e = u32::try_from(exp).map_err(|_| self.err("exponent too large"))?;
        base.checked_pow(e).ok_or_else(|| self.err("overflow"))
    }

    fn div(&self, a: i128, b: i128) -> Result<i128, FischerError> {
        if a % b != 0 {
            return Err(self.err("formula does not divide evenly"));
        }
        Ok(a / b)
    }

    fn small(&self, v: i128) -> Result<i64, FischerError> {
        i64::try_from(v).map_err(|_| self.err("overflow"))
    }

    fn count(&self, v: i128) -> Result<usize, FischerError> {
        usize::try_from(v).map_err(|_| self.err("negative multiplicity"))
    }
}

enum Mult {
    Fixed(i128),
    Star,
}

/// Resolves the closed-form row for `pr`. Parameters outside the declared
/// ranges are rejected with [`FischerError::BadParams`].
pub fn table1_row(pr: PrType) -> Result<Table1Row, FischerError> {
    use PrType::*;
    let ev = Eval {
        what: format!("{pr}"),
    };
    let range = |ok: bool| {
        if ok {
            Ok(())
        } else {
            Err(ev.err("outside declared range"))
        }
    };
    let p2 = |e: i64| ev.pow(2, e);
    let p3 = |e: i64| ev.pow(3, e);
    let p4 = |e: i64| ev.pow(4, e);
    use Mult::{Fixed as F, Star};

    let (size, degree, rest): (i128, i128, Vec<(i128, Mult)>) = match pr {
        Trivial => (1, 0, Vec::new()),
        Pr1 { h } => {
            range(h >= 1)?;
            let h = h as i64;
            let s = p3(h)?;
            (s, s - 1, Vec::from([(-1, F(s - 1))]))
        }
        Pr2a { h, m } => {
            range(m >= 4)?;
            let (h, m) = (h as i64, m as i128);
            (
                ev.div(p2(h)? * m * (m - 1), 2)?,
                p2(h + 1)? * (m - 2),
                Vec::from([
                    (p2(h)? * (m - 4), F(m - 1)),
                    (0, Star),
                    (-p2(h + 1)?, F(m * (m - 3) / 2)),
                ]),
            )
        }
        Pr2b { h, m } => {
            range(h >= 1 && m >= 4)?;
            let (h, m) = (h as i64, m as i128);
            (
                p3(h)? * m * (m - 1) / 2,
                p3(h)? * (2 * m - 3) - 1,
                Vec::from([
                    (p3(h)? * (m - 3) - 1, F(m - 1)),
                    (-1, Star),
                    (-p3(h)? - 1, F(m * (m - 3) / 2)),
                ]),
            )
        }
        Pr2c { h, m } => {
            range(h >= 1 && m >= 4)?;
            let (h, m) = (h as i64, m as i128);
            (
                p3(h)? * m * (m - 1),
                p3(h)? * (4 * m - 7) - 1,
                Vec::from([
                    (p3(h)? * (2 * m - 7) - 1, F(m - 1)),
                    (p3(h)? - 1, F(m * (m - 1) / 2)),
                    (-1, Star),
                    (-p3(h + 1)? - 1, F(m * (m - 3) / 2)),
                ]),
            )
        }
        Pr2d { h, m } => {
            range(h >= 1 && m >= 4)?;
            let (h, m) = (h as i64, m as i128);
            (
                3 * p2(2 * h - 1)? * m * (m - 1),
                p4(h)? * (6 * m - 10),
                Vec::from([
                    (p4(h)? * (3 * m - 10), F(m - 1)),
                    (0, Star),
                    (-p4(h)?, F(m * (m - 1))),
                    (-p4(h + 1)?, F(m * (m - 3) / 2)),
                ]),
            )
        }
        Pr3 { h, m, eps } => {
            range(m >= 3 && !(m == 3 && eps == Sign::Plus))?;
            let (h, m) = (h as i64, m as i64);
            let a = ev.div((p2(m)? - 1) * (p2(m - 1)? - 1), 3)?;
            let b = ev.div(p2(2 * m)? - 4, 3)?;
            let c = ev.div((p2(m)? + 1) * (p2(m - 1)? + 1), 3)?;
            match eps {
                Sign::Plus => (
                    p2(h)? * (p2(2 * m - 1)? - p2(m - 1)?),
                    p2(h)? * (p2(2 * m - 2)? - p2(m - 1)?),
                    Vec::from([(p2(h + m - 1)?, F(a)), (0, Star), (-p2(h + m - 2)?, F(b))]),
                ),
                Sign::Minus => (
                    p2(h)? * (p2(2 * m - 1)? + p2(m - 1)?),
                    p2(h)? * (p2(2 * m - 2)? + p2(m - 1)?),
                    Vec::from([(p2(h + m - 2)?, F(b)), (0, Star), (-p2(h + m - 1)?, F(c))]),
                ),
            }
        }
        Pr4 { h, m } => {
            range(m >= 3)?;
            let (h, m) = (h as i64, m as i64);
            (
                p2(h)? * (p2(2 * m)? - 1),
                p2(2 * m - 1 + h)?,
                Vec::from([
                    (p2(m - 1 + h)?, F(p2(2 * m - 1)? - p2(m - 1)? - 1)),
                    (0, Star),
                    (-p2(h + m - 1)?, F(p2(2 * m - 1)? + p2(m - 1)? - 1)),
                ]),
            )
        }
        Pr5 { h, m, eps } => {
            range(m >= 5)?;
            let (h, m) = (h as i64, m as i64);
            if m % 2 == 1 {
                let k = (m - 3) / 2;
                let half = p3((m - 1) / 2)?;
                let top = p3(m - 1)?;
                let (size_num, deg_sign, f, g) = match eps {
                    Sign::Plus => (
                        top - half,
                        -1,
                        ev.div(top - 1, 4)?,
                        ev.div(top - 1 - 2 * (half + 1), 4)?,
                    ),
                    Sign::Minus => (
                        top + half,
                        1,
                        ev.div(top - 1 + 2 * (half - 1), 4)?,
                        ev.div(top - 1, 4)?,
                    ),
                };
                (
                    ev.div(p3(h)? * size_num, 2)?,
                    p3(h)? * (p3(m - 2)? + deg_sign * 2 * p3(k)?) - 1,
                    Vec::from([(p3(k + h)? - 1, F(f)), (-1, Star), (-p3(k + h)? - 1, F(g))]),
                )
            } else {
                let full = p3(m)?;
                match eps {
                    Sign::Plus => (
                        ev.div(p3(h)? * (p3(m - 1)? - p3((m - 2) / 2)?), 2)?,
                        p3(m - 2 + h)? - 1,
                        Vec::from([
                            (p3((m - 4) / 2 + h)? - 1, F(ev.div(full - 9, 8)?)),
                            (-1, Star),
                            (
                                -p3((m - 2) / 2 + h)? - 1,
                                F(ev.div((p3(m / 2)? - 1) * (p3((m - 2) / 2)? - 1), 8)?),
                            ),
                        ]),
                    ),
                    Sign::Minus => (
                        ev.div(p3(h)? * (p3(m - 1)? + p3((m - 2) / 2)?), 2)?,
                        p3(m - 2 + h)? - 1,
                        Vec::from([
                            (
                                p3((m - 2) / 2 + h)? - 1,
                                F(ev.div((p3(m / 2)? + 1) * (p3((m - 2) / 2)? + 1), 8)?),
                            ),
                            (-1, Star),
                            (-p3((m - 4) / 2 + h)? - 1, F(ev.div(full - 9, 8)?)),
                        ]),
                    ),
                }
            }
        }
        Pr6 { h, m } => {
            range(m >= 3)?;
            let (h, m) = (h as i64, m as i64);
            if m % 2 == 0 {
                (
                    ev.div(p4(h)? * (p2(2 * m - 1)? + p2(m - 1)? - 1), 3)?,
                    p2(2 * h + 2 * m - 3)?,
                    Vec::from([
                        (
                            p2(2 * h + m - 3)?,
                            F(ev.div(8 * (p2(2 * m - 3)? - p2(m - 2)? - 1), 9)?),
                        ),
                        (0, Star),
                        (
                            -p2(2 * h + m - 2)?,
                            F(ev.div(4 * (p2(2 * m - 3)? + 7 * p2(m - 3)? - 1), 9)?),
                        ),
                    ]),
                )
            } else {
                (
                    ev.div(p4(h)? * (p2(2 * m - 1)? - p2(m - 1)? - 1), 3)?,
                    p2(2 * h + 2 * m - 3)?,
                    Vec::from([
                        (
                            p2(2 * h + m - 2)?,
                            F(ev.div(4 * (p2(2 * m - 3)? - 7 * p2(m - 3)? - 1), 9)?),
                        ),
                        (0, Star),
                        (
                            -p2(2 * h + m - 3)?,
                            F(ev.div(8 * (p2(2 * m - 3)? + p2(m - 2)? - 1), 9)?),
                        ),
                    ]),
                )
            }
        }
        Pr7a => (3510, 2816, Vec::from([(8, F(3080)), (-64, F(429))])),
        Pr7b => (31671, 28160, Vec::from([(8, F(30888)), (-352, F(722))])),
        Pr7c => (
            306936,
            275264,
            Vec::from([(80, F(249458)), (-352, F(57477))]),
        ),
        Pr7d => (
            360,
            296,
            Vec::from([(8, F(105)), (-4, F(252)), (-64, F(2))]),
        ),
        Pr7e => (
            3240,
            2888,
            Vec::from([(8, F(2457)), (-28, F(780)), (-352, F(2))]),
        ),
        Pr8 { h } => {
            range(h >= 1)?;
            let h = h as i64;
            (
                126 * p4(h)?,
                5 * p4(h + 2)?,
                Vec::from([(p2(2 * h + 3)?, F(35)), (0, Star), (-p4(h + 1)?, F(90))]),
            )
        }
        Pr9 { h } => {
            range(h >= 1)?;
            let h = h as i64;
            (
                63 * p3(h)?,
                11 * p3(h + 1)? - 1,
                Vec::from([
                    (5 * p3(h)? - 1, F(27)),
                    (-1, Star),
                    (-p3(h + 1)? - 1, F(35)),
                ]),
            )
        }
        Pr10 { h } => {
            range(h >= 1)?;
            let h = h as i64;
            (
                120 * p3(h)?,
                19 * p3(h + 1)? - 1,
                Vec::from([
                    (p3(h + 2)? - 1, F(35)),
                    (-1, Star),
                    (-p3(h + 1)? - 1, F(84)),
                ]),
            )
        }
        Pr11 { h } => {
            range(h >= 1)?;
            let h = h as i64;
            (
                165 * p3(2 * h)?,
                43 * p3(2 * h + 1)? - 1,
                Vec::from([
                    (p3(2 * h + 2)? - 1, F(44)),
                    (-1, Star),
                    (-p3(2 * h + 1)? - 1, F(120)),
                ]),
            )
        }
        Pr12 { h } => {
            range(h >= 1)?;
            let h = h as i64;
            (
                36 * p3(2 * h)?,
                11 * p3(2 * h + 1)? - 1,
                Vec::from([
                    (p3(2 * h)? - 1, F(27)),
                    (-1, Star),
                    (-p3(2 * h + 1)? - 1, F(8)),
                ]),
            )
        }
    };

    let fixed: i128 = 1 + rest
        .iter()
        .map(|(_, m)| match m {
            Mult::Fixed(v) => *v,
            Mult::Star => 0,
        })
        .sum::<i128>();
    let remainder = size - fixed;
    let mut entries = Vec::with_capacity(rest.len() + 1);
    entries.push(SpectrumEntry {
        eigenvalue: ev.small(degree)?,
        multiplicity: 1,
        starred: false,
    });
    for (e, m) in rest {
        let (multiplicity, starred) = match m {
            Mult::Fixed(v) => (ev.count(v)?, false),
            Mult::Star => (ev.count(remainder)?, true),
        };
        entries.push(SpectrumEntry {
            eigenvalue: ev.small(e)?,
            multiplicity,
            starred,
        });
    }
    let total: usize = entries.iter().map(|e| e.multiplicity).sum();
    let size = ev.count(size)?;
    if total != size {
        return Err(ev.err("multiplicities do not sum to the size"));
    }
    Ok(Table1Row { pr, size, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn spec(pr: PrType) -> (usize, Vec<(i64, usize)>) {
        let row = table1_row(pr).unwrap();
        (row.size, row.spectrum().pairs)
    }

    #[test]
    fn rows_from_the_reference_table() {
        assert_eq!(
            spec(PrType::Pr2b { h: 1, m: 5 }),
            (30, vec![(20, 1), (5, 4), (-1, 20), (-4, 5)])
        );
        assert_eq!(
            spec(PrType::Pr6 { h: 1, m: 3 }),
            (36, vec![(32, 1), (0, 27), (-4, 8)])
        );
        assert_eq!(
            spec(PrType::Pr7d),
            (360, vec![(296, 1), (8, 105), (-4, 252), (-64, 2)])
        );
        assert_eq!(
            spec(PrType::Pr3 {
                h: 0,
                m: 4,
                eps: Sign::Plus
            }),
            (120, vec![(56, 1), (8, 35), (-4, 84)])
        );
        assert_eq!(
            spec(PrType::Pr6 { h: 0, m: 5 }),
            (165, vec![(128, 1), (8, 44), (-4, 120)])
        );
        assert_eq!(
            spec(PrType::Pr5 {
                h: 0,
                m: 6,
                eps: Sign::Minus
            }),
            (126, vec![(80, 1), (8, 35), (-4, 90)])
        );
        assert_eq!(
            spec(PrType::Pr2d { h: 1, m: 4 }),
            (72, vec![(56, 1), (8, 3), (0, 54), (-4, 12), (-16, 2)])
        );
    }

    #[test]
    fn starred_entry_is_the_remainder() {
        let row = table1_row(PrType::Pr6 { h: 0, m: 4 }).unwrap();
        let star = row.entries.iter().find(|e| e.starred).unwrap();
        assert_eq!((star.eigenvalue, star.multiplicity), (0, 0));
        assert_eq!(row.spectrum().pairs, vec![(32, 1), (2, 24), (-4, 20)]);
    }

    #[test]
    fn out_of_range_parameters() {
        for pr in [
            PrType::Pr3 {
                h: 0,
                m: 3,
                eps: Sign::Plus,
            },
            PrType::Pr2a { h: 0, m: 3 },
            PrType::Pr1 { h: 0 },
            PrType::Pr5 {
                h: 0,
                m: 4,
                eps: Sign::Plus,
            },
            PrType::Pr4 { h: 0, m: 200 },
        ] {
            assert!(
                matches!(table1_row(pr), Err(FischerError::BadParams(_))),
                "{pr}"
            );
        }
    }

    #[test]
    fn every_small_row_is_consistent() {
        // The multiplicities of every row must sum to its size; the resolver
        // rejects rows where they do not.
        for h in 0..3 {
            for m in 3..9 {
                for eps in [Sign::Plus, Sign::Minus] {
                    for pr in [
                        PrType::Pr2a { h, m },
                        PrType::Pr2b { h, m },
                        PrType::Pr2c { h, m },
                        PrType::Pr2d { h, m },
                        PrType::Pr3 { h, m, eps },
                        PrType::Pr4 { h, m },
                        PrType::Pr5 { h, m, eps },
                        PrType::Pr6 { h, m },
                    ] {
                        match table1_row(pr) {
                            Ok(row) => assert_eq!(row.spectrum().total(), row.size),
                            Err(FischerError::BadParams(msg)) => {
                                assert!(msg.contains("range"), "{pr}: {msg}")
                            }
                            Err(e) => panic!("{pr}: {e}"),
                        }
                    }
                }
            }
        }
    }
}
