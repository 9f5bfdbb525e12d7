use std::collections::BTreeSet;

use clarforce::clar::{brute_force_clar_number, enumerate_clar_covers};
use clarforce::corpus::{fixed_animals, normalize};
use clarforce::forcing::{brute_force_max_forcing, brute_force_min_forcing};
use clarforce::matching::{
    enumerate_perfect_matchings, find_alternating_cycle, has_perfect_matching,
    is_unique_perfect_matching,
};
use clarforce::planegraph::polyomino_from_cells;
use clarforce::{
    elementary_components, is_elementary, max_forcing_number, parse_hexagonal,
    parse_hexagonal_text, parse_polyomino, solve_clar, Budget, GraphError, Lattice,
    PlaneBipartiteGraph,
};
use proptest::prelude::*;

const SQUARE_STEPS: [(i64, i64); 4] = [(0, 1), (1, 0), (0, -1), (-1, 0)];
const HEX_STEPS: [(i64, i64); 6] = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)];

/// Grows an animal by attaching each new cell next to an existing one.
fn grow(steps: &[(i64, i64)], picks: &[(usize, usize)]) -> Vec<(i64, i64)> {
    let mut cells = vec![(0, 0)];
    let mut seen: BTreeSet<_> = cells.iter().copied().collect();
    for &(from, dir) in picks {
        let (a, b) = cells[from % cells.len()];
        let (da, db) = steps[dir % steps.len()];
        let next = (a + da, b + db);
        if seen.insert(next) {
            cells.push(next);
        }
    }
    normalize(&cells)
}

fn picks(max: usize) -> impl Strategy<Value = Vec<(usize, usize)>> {
    prop::collection::vec((0..64usize, 0..6usize), 0..max)
}

fn build(lattice: Lattice, cells: &[(i64, i64)]) -> Result<PlaneBipartiteGraph, GraphError> {
    match lattice {
        Lattice::Square => polyomino_from_cells(cells.iter().copied()),
        Lattice::Hexagonal => parse_hexagonal(cells),
    }
}

fn random_graph(max_cells: usize) -> impl Strategy<Value = PlaneBipartiteGraph> {
    (
        prop_oneof![Just(Lattice::Square), Just(Lattice::Hexagonal)],
        picks(max_cells),
    )
        .prop_filter_map("holes", |(lattice, picks)| {
            let steps: &[_] = match lattice {
                Lattice::Square => &SQUARE_STEPS,
                Lattice::Hexagonal => &HEX_STEPS,
            };
            build(lattice, &grow(steps, &picks)).ok()
        })
}

fn bipartite(g: &PlaneBipartiteGraph) -> bool {
    g.edge_ids().all(|e| {
        let [a, b] = g.endpoints(e);
        g.color(a) != g.color(b)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn euler_relation_and_colouring(g in random_graph(12)) {
        let v = g.vertex_count() as i64;
        let e = g.edge_count() as i64;
        let f = g.face_count() as i64;
        prop_assert_eq!(v - e + f, 1);
        prop_assert!(bipartite(&g));
        prop_assert!(g.cut_vertices().is_empty());
        prop_assert!(g.is_connected());
    }

    #[test]
    fn render_round_trip(g in random_graph(12)) {
        let again = match g.lattice() {
            Lattice::Square => parse_polyomino(&g.render()).unwrap(),
            Lattice::Hexagonal => parse_hexagonal_text(&g.render()).unwrap(),
        };
        prop_assert_eq!(normalize(&again.cells()), normalize(&g.cells()));
        prop_assert_eq!(again.vertex_count(), g.vertex_count());
        prop_assert_eq!(again.edge_count(), g.edge_count());
    }

    #[test]
    fn uniqueness_agrees_with_enumeration(g in random_graph(7)) {
        prop_assume!(has_perfect_matching(&g));
        let count = enumerate_perfect_matchings(&g).take(2).count();
        let unique = is_unique_perfect_matching(&g).unwrap();
        prop_assert_eq!(unique.is_unique(), count == 1);
        let m = enumerate_perfect_matchings(&g).next().unwrap();
        let cycle = find_alternating_cycle(&g, &m, &BTreeSet::new()).unwrap();
        prop_assert_eq!(cycle.is_none(), count == 1);
        if let Some(c) = cycle {
            prop_assert!(c.is_alternating(&g, &m));
        }
    }

    #[test]
    fn fast_pipeline_matches_oracles(g in random_graph(7)) {
        prop_assume!(has_perfect_matching(&g));
        let c = solve_clar(&g).unwrap();
        prop_assert!(c.witness.validate(&g).is_ok());
        prop_assert_eq!(Some(c.clar_number), brute_force_clar_number(&g));
        let f = max_forcing_number(&g).unwrap();
        prop_assert_eq!(f.max_forcing, c.clar_number);
        prop_assert_eq!(brute_force_max_forcing(&g, Budget::default()).unwrap().0, f.max_forcing);
    }

    #[test]
    fn components_are_bounded(g in random_graph(12)) {
        prop_assume!(has_perfect_matching(&g));
        let dec = elementary_components(&g).unwrap();
        prop_assert!(dec.components.len() <= g.vertex_count() / 2);
        let mut seen = BTreeSet::new();
        for comp in &dec.components {
            prop_assert!(comp.vertices.len() >= 4);
            for v in &comp.vertices {
                prop_assert!(seen.insert(*v));
            }
        }
    }
}

fn non_elementary() -> Vec<PlaneBipartiteGraph> {
    let mut out = Vec::new();
    for cells in fixed_animals(Lattice::Square, 8) {
        if let Ok(g) = build(Lattice::Square, &cells) {
            if has_perfect_matching(&g) && !is_elementary(&g).unwrap() {
                out.push(g);
            }
        }
    }
    for cells in fixed_animals(Lattice::Hexagonal, 5) {
        let g = build(Lattice::Hexagonal, &cells).unwrap();
        if has_perfect_matching(&g) && !is_elementary(&g).unwrap() {
            out.push(g);
        }
    }
    out
}

#[test]
fn smallest_non_elementary_shapes() {
    let shapes = non_elementary();
    let (square, hex): (Vec<_>, Vec<_>) =
        shapes.iter().partition(|g| g.lattice() == Lattice::Square);
    assert_eq!(square.len(), 4);
    assert_eq!(hex.len(), 3);
    let t = parse_polyomino("###\n.#.").unwrap();
    assert!(is_elementary(&t).unwrap());
}

#[test]
fn additivity_over_components() {
    for g in non_elementary() {
        let dec = elementary_components(&g).unwrap();
        assert!(dec.components.len() >= 2, "{}", g.render());
        let parts: usize = dec
            .components
            .iter()
            .map(|c| {
                brute_force_max_forcing(&c.subgraph.graph, Budget::default())
                    .unwrap()
                    .0
            })
            .sum();
        let whole = brute_force_max_forcing(&g, Budget::default()).unwrap().0;
        assert_eq!(parts, whole, "{}", g.render());
        assert_eq!(max_forcing_number(&g).unwrap().max_forcing, whole);
        assert_eq!(solve_clar(&g).unwrap().clar_number, whole);
    }
}

#[test]
fn minimum_forcing_number_is_at_most_maximum() {
    let square = parse_polyomino("#").unwrap();
    let budget = Budget::default();
    assert_eq!(brute_force_min_forcing(&square, budget).unwrap(), 1);
    assert_eq!(brute_force_max_forcing(&square, budget).unwrap().0, 1);

    let mut strict = None;
    for n in 1..=6 {
        for cells in fixed_animals(Lattice::Square, n) {
            let g = build(Lattice::Square, &cells).unwrap();
            if !has_perfect_matching(&g) {
                continue;
            }
            let lo = brute_force_min_forcing(&g, budget).unwrap();
            let hi = brute_force_max_forcing(&g, budget).unwrap().0;
            assert!(lo <= hi);
            if lo < hi && strict.is_none() {
                strict = Some((g.render(), lo, hi));
            }
        }
    }
    let (shape, lo, hi) = strict.expect("some corpus shape has f < F");
    assert!(lo < hi, "{shape}");
}

#[test]
fn bar_growth_adds_at_most_one() {
    let mut prev = 0;
    for n in 1..=14 {
        let c = solve_clar(&parse_polyomino(&"#".repeat(n)).unwrap())
            .unwrap()
            .clar_number;
        assert!(c == prev || c == prev + 1, "n={n}: {prev} -> {c}");
        assert_eq!(c, n.div_ceil(2));
        prev = c;
    }
}

#[test]
fn every_maximum_cover_is_enumerated_once() {
    for s in ["###", "##\n##\n##", "###\n.#."] {
        let g = parse_polyomino(s).unwrap();
        let c = solve_clar(&g).unwrap().clar_number;
        let covers: Vec<_> = enumerate_clar_covers(&g, Some(c)).collect();
        let distinct: BTreeSet<_> = covers.iter().cloned().collect();
        assert_eq!(covers.len(), distinct.len(), "{s}");
        assert!(covers.iter().all(|cv| cv.faces.len() == c));
    }
}
