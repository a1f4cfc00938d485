use matsuo::export::{edge_list, parse_edge_list};
use matsuo::groupfile::{parse_cycles, parse_group_text};
use matsuo_core::fischer::Diagram;
use matsuo_core::group::GroupElement;
use proptest::prelude::*;

/// Cycle notation of a permutation in one-line form (0-based images).
fn to_cycles(images: &[u32]) -> String {
    let mut seen = vec![false; images.len()];
    let mut out = String::new();
    for start in 0..images.len() {
        if seen[start] || images[start] as usize == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push((x + 1).to_string());
            x = images[x] as usize;
        }
        out += &format!("({})", cycle.join(","));
    }
    if out.is_empty() {
        String::from("()")
    } else {
        out
    }
}

proptest! {
    #[test]
    fn cycle_notation_round_trips(perm in (1usize..10).prop_flat_map(|n| Just((0..n as u32).collect::<Vec<_>>()).prop_shuffle())) {
        let text = to_cycles(&perm);
        prop_assert_eq!(parse_cycles(perm.len(), &text).unwrap(), GroupElement::Perm(perm));
    }

    #[test]
    fn edge_lists_round_trip(n in 1usize..12, raw in proptest::collection::vec((0usize..12, 0usize..12), 0..30)) {
        let mut edges: Vec<(usize, usize)> = raw
            .into_iter()
            .map(|(a, b)| (a % n, b % n))
            .filter(|(a, b)| a != b)
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        let g = Diagram::from_edges(n, &edges);
        let back = parse_edge_list(&edge_list(&g)).unwrap();
        prop_assert_eq!(back.n(), n);
        prop_assert_eq!(back.edges(), edges);
    }

    #[test]
    fn parser_never_panics(text in "[ -~\n]{0,80}") {
        let _ = parse_group_text(&text, "fuzz");
    }
}
