use std::time::Instant;

use matsuo_core::constructions::Family;
use matsuo_core::fischer::{diagram, is_connected, lines, spectrum, table1_row, Sign};

fn all_families() -> Vec<Family> {
    vec![
        Family::Sym { m: 6 },
        Family::Wr2 { n: 4 },
        Family::Wr2 { n: 5 },
        Family::Wr3 { n: 4 },
        Family::Wr3 { n: 5 },
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
            m: 6,
            eps: Sign::Minus,
        },
        Family::Omega3 {
            m: 6,
            eps: Sign::Plus,
        },
        Family::Omega3 {
            m: 5,
            eps: Sign::Plus,
        },
        Family::Omega3 {
            m: 5,
            eps: Sign::Minus,
        },
        Family::PerpDerived,
    ]
}

#[test]
fn class_sizes_and_spectra_match_closed_forms() {
    for fam in all_families() {
        let t = Instant::now();
        let class = fam.build_class().unwrap_or_else(|e| panic!("{fam}: {e}"));
        assert!(class.is_three_transposition(), "{fam}");
        let g = diagram(&class);
        let row = table1_row(fam.pr_type().unwrap()).unwrap();
        assert_eq!(class.len(), row.size, "{fam}");
        assert_eq!(g.regular_degree(), Some(row.degree() as usize), "{fam}");
        assert!(is_connected(&g), "{fam}");
        assert_eq!(spectrum(&g), row.spectrum(), "{fam}");
        eprintln!("{fam}: |D| = {} in {:?}", class.len(), t.elapsed());
    }
}

#[test]
fn line_counts() {
    let k9 = Family::Frob { h: 2 }.build_class().unwrap();
    assert_eq!(lines(&k9).unwrap().len(), 12);
    // Each adjacent pair lies on exactly one line and each line holds three
    // adjacent pairs.
    for n in [4u32, 5] {
        let class = Family::Wr3 { n }.build_class().unwrap();
        let g = diagram(&class);
        assert_eq!(lines(&class).unwrap().len(), g.edges().len() / 3);
    }
    for n in [4u32, 5, 6] {
        let class = Family::Wr2 { n }.build_class().unwrap();
        let n = n as usize;
        assert_eq!(lines(&class).unwrap().len(), 4 * n * (n - 1) * (n - 2) / 6);
    }
}
