use std::collections::BTreeSet;

use hfk_core::alexander::alexander_from_braid;
use hfk_core::braid::parse_braid;
use hfk_core::cube::{CubeConfig, Memo};
use hfk_core::grid::*;
use hfk_core::homology::{knot_floer, PoincarePolynomial};
use proptest::prelude::*;

const FIG8_O: [usize; 6] = [0, 1, 3, 2, 5, 4];
const FIG8_X: [usize; 6] = [2, 5, 0, 4, 3, 1];

fn cube_hfk(word: &str) -> PoincarePolynomial {
    let w = parse_braid(word).unwrap();
    knot_floer(&w, &CubeConfig::for_crossings(w.len()), &Memo::new()).unwrap()
}

fn deflated(g: &GridDiagram) -> PoincarePolynomial {
    grid_homology_tilde(g, DEFAULT_MAX_SIZE, "").unwrap().deflated
}

fn grid_of(word: &str) -> GridDiagram {
    braid_to_grid(&parse_braid(word).unwrap()).unwrap().grid
}

fn fig8() -> GridDiagram {
    GridDiagram::from_perms(&FIG8_O, &FIG8_X).unwrap()
}

#[test]
fn unknot_grid_has_rank_one() {
    let g = grid_of("B1:");
    assert_eq!(g.n, 2);
    assert_eq!(deflated(&g).entries, [((0, 0), 1)].into());
}

#[test]
fn trefoil_grids_match_the_cube() {
    for word in ["B2: s1 s1 s1", "B2: -s1 -s1 -s1"] {
        let g = grid_of(word);
        assert_eq!(g.n, 5, "{word}");
        assert_eq!(deflated(&g).entries, cube_hfk(word).entries, "{word}");
    }
}

#[test]
fn figure_eight_fixture_matches_the_cube() {
    let g = fig8();
    g.require_knot().unwrap();
    let h = deflated(&g);
    assert_eq!(h.total_rank(), 5);
    assert_eq!(h.entries, cube_hfk("B3: s1 -s2 s1 -s2").entries);
}

#[test]
fn differential_squares_to_zero_and_is_graded() {
    for g in [grid_of("B2: s1 s1 s1"), grid_of("B3: s1 -s2"), fig8()] {
        let c = TildeComplex::build(&g, DEFAULT_MAX_SIZE).unwrap();
        assert!(c.d_squared_vanishes());
        assert!(c.is_graded());
    }
}

#[test]
fn tilde_ranks_are_deflated_ranks_times_v_power() {
    let g = grid_of("B2: s1 s1 s1");
    let h = grid_homology_tilde(&g, DEFAULT_MAX_SIZE, "").unwrap();
    assert_eq!(h.tilde.total_rank(), h.deflated.total_rank() << (g.n - 1));
}

#[test]
fn moves_preserve_homology() {
    let g = grid_of("B2: s1 s1 s1");
    let want = deflated(&g).entries;
    for c in 0..g.n {
        let s = g.stabilize(c).unwrap();
        assert_eq!(s.n, 6);
        assert_eq!(deflated(&s).entries, want, "stabilized at column {c}");
    }
    let commuted: Vec<GridDiagram> = (0..g.n - 1).filter_map(|i| g.commute_columns(i)).collect();
    for h in &commuted {
        assert_eq!(deflated(h).entries, want);
    }
    for (dc, dr) in [(1, 0), (0, 1), (2, 3)] {
        assert_eq!(deflated(&g.shift(dc, dr)).entries, want);
    }
    let six = g.stabilize(0).unwrap();
    let moved: Vec<GridDiagram> = (0..5).filter_map(|i| six.commute_columns(i)).collect();
    assert!(!moved.is_empty());
    for h in moved {
        assert_eq!(deflated(&h).entries, want);
    }
}

#[test]
fn rejects_links_oversized_and_malformed_grids() {
    let link = GridDiagram::from_perms(&[0, 1, 2, 3], &[1, 0, 3, 2]).unwrap();
    assert!(matches!(grid_homology_tilde(&link, 8, ""), Err(GridError::NotAKnot(_))));
    assert!(matches!(grid_homology_tilde(&fig8(), 5, ""), Err(GridError::TooLarge { n: 6, max: 5 })));
    assert!(GridDiagram::from_perms(&[0, 1], &[0, 1]).is_err());
    assert!(GridDiagram::from_json(r#"{"n":2,"O":[[0,0],[1,1]],"X":[[0,1]]}"#).is_err());
}

#[test]
fn json_round_trip() {
    let (sg, s) = singular_grid(&parse_braid("B3: s1 -s2").unwrap()).unwrap();
    for g in [fig8(), sg.braid.grid, s] {
        assert_eq!(GridDiagram::from_json(&g.to_json()).unwrap(), g);
    }
}

/// Every rectangle on the torus, checked square by square.
fn brute_rectangles(x: &[usize]) -> BTreeSet<(Rect, Vec<usize>)> {
    let n = x.len();
    let mut out = BTreeSet::new();
    for col in 0..n {
        for row in 0..n {
            for width in 1..n {
                for height in 1..n {
                    let r = Rect { col, width, row, height };
                    let (c2, r2) = ((col + width) % n, (row + height) % n);
                    if x[col] != row || x[c2] != r2 {
                        continue;
                    }
                    let inside = (0..n).any(|c| r.contains_point(n, (c, x[c])));
                    if !inside {
                        let mut y = x.to_vec();
                        y.swap(col, c2);
                        out.insert((r, y));
                    }
                }
            }
        }
    }
    out
}

#[test]
fn rectangle_enumeration_matches_brute_force_on_4x4() {
    for x in all_states(4) {
        let fast: BTreeSet<(Rect, Vec<usize>)> = rectangles_from(&x).collect();
        assert_eq!(fast, brute_rectangles(&x), "{x:?}");
    }
}

#[test]
fn braid_grids_have_the_intended_crossings() {
    let bg = braid_grid(&parse_braid("B3: s1 -s2").unwrap(), Layout { start_rows: false, special: false, lift: false }).unwrap();
    assert_eq!(bg.crossings.len(), 2);
    let mut found = bg.grid.crossing_squares();
    found.sort();
    let mut want = bg.crossings.clone();
    want.sort();
    assert_eq!(found, want);
}

#[test]
fn special_trefoil_satisfies_the_composite_identity() {
    let sg = special_grid(&parse_braid("B2: s1 s1 s1").unwrap()).unwrap();
    assert_eq!(sg.braid.grid.n, 7);
    assert!(special_violations(&sg.braid).is_empty());
    assert_eq!(deflated(&sg.braid.grid).entries, cube_hfk("B2: s1 s1 s1").entries);
    for &c in &sg.corners {
        let m = CornerMarking::at(&sg.braid.grid, c).unwrap();
        let r = special_composite_check(&m);
        assert!(r.holds, "{r:?}");
        assert_eq!(r.states, 720);
        let signs: Vec<i64> = r.diagonal_terms.iter().map(|t| t.1).collect();
        assert_eq!(signs.iter().sum::<i64>(), 0);
        let labels: BTreeSet<&str> = r.diagonal_terms.iter().map(|t| t.0.as_str()).collect();
        assert_eq!(labels, ["U_a", "U_b", "U_c", "U_d"].into());
    }
}

#[test]
fn single_crossing_unknot_is_special() {
    let sg = special_grid(&parse_braid("B2: s1").unwrap()).unwrap();
    let g = &sg.braid.grid;
    assert_eq!(deflated(g).entries, [((0, 0), 1)].into());
    let m = CornerMarking::at(g, sg.corners[0]).unwrap();
    assert!(special_composite_check(&m).holds);
    assert!(zip_on_lambda_check(&m).holds);
}

#[test]
fn zip_finds_two_rectangles_of_opposite_sign() {
    for word in ["B2: s1 s1 s1", "B2: -s1 -s1 -s1", "B3: s1 -s2 s1 -s2"] {
        let sg = special_grid(&parse_braid(word).unwrap()).unwrap();
        for &c in &sg.corners {
            let z = zip_on_lambda_check(&CornerMarking::at(&sg.braid.grid, c).unwrap());
            assert!(z.holds, "{word} {z:?}");
            assert_eq!(z.rectangles.len(), 2);
            let labels: BTreeSet<&str> = z.rectangles.iter().flat_map(|r| r.1.clone()).collect();
            assert_eq!(labels, ["U_a", "U_d"].into());
        }
    }
}

#[test]
fn zip_counts_nothing_away_from_its_corner() {
    let sg = special_grid(&parse_braid("B2: s1 s1 s1").unwrap()).unwrap();
    let g = &sg.braid.grid;
    let ms: Vec<CornerMarking> = sg.corners.iter().map(|&c| CornerMarking::at(g, c).unwrap()).collect();
    for (i, mi) in ms.iter().enumerate() {
        for (j, mj) in ms.iter().enumerate() {
            let found = zip_rectangles(mi, &mj.grid_a().canonical_generator(), &mj.grid_b().canonical_generator());
            assert_eq!(found.len(), if i == j { 2 } else { 0 });
        }
    }
}

#[test]
fn corner_marking_rejects_other_points() {
    let sg = special_grid(&parse_braid("B2: s1 s1 s1").unwrap()).unwrap();
    let (c, r) = sg.corners[0];
    let n = sg.braid.grid.n;
    assert!(CornerMarking::at(&sg.braid.grid, ((c + 3) % n, r)).is_err());
    assert!(singularize(&sg.braid.grid, &[((c + 3) % n, r)]).is_err());
}

#[test]
fn lambda_is_a_cycle_of_maximal_alexander_grading_on_singular_grids() {
    for word in ["B2: s1", "B2: s1 s1 s1", "B2: -s1 -s1 -s1", "B3: s1 -s2", "B3: s1 -s2 s1 -s2"] {
        let (sg, s) = singular_grid(&parse_braid(word).unwrap()).unwrap();
        assert!(lambda_is_cycle(&sg.braid.grid), "{word}");
        assert_eq!(s.xx.len(), sg.corners.len());
        assert!(lambda_is_cycle(&s), "{word}");
        let (lam, max) = lambda_alexander(&s);
        assert_eq!(lam, max, "{word}");
    }
}

#[test]
fn repaired_layout_makes_consecutive_positive_letters_special() {
    let w = parse_braid("B3: s1 s2").unwrap();
    let compact = braid_grid(&w, Layout { start_rows: false, special: true, lift: false }).unwrap();
    assert_eq!(special_violations(&compact), vec![4]);
    let sg = special_grid(&w).unwrap();
    assert!(special_violations(&sg.braid).is_empty());
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle()
}

fn grid_strategy() -> impl Strategy<Value = GridDiagram> {
    (3usize..=6).prop_flat_map(|n| (perm_strategy(n), perm_strategy(n))).prop_filter_map("O and X share a square", |(o, x)| {
        GridDiagram::from_perms(&o, &x).ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rectangles_shift_gradings_by_their_markings((g, x) in grid_strategy().prop_flat_map(|g| { let n = g.n; (Just(g), perm_strategy(n)) })) {
        let n = g.n;
        let gx = g.gradings(&x);
        for (r, y) in rectangles_from(&x) {
            let gy = g.gradings(&y);
            let os = g.o.iter().filter(|&&s| r.contains_square(n, s)).count() as i64;
            let xs = g.x.iter().filter(|&&s| r.contains_square(n, s)).count() as i64;
            prop_assert_eq!(gx.m2 - gy.m2, 2 * (1 - 2 * os));
            prop_assert_eq!(gx.mx2 - gy.mx2, 2 * (1 - 2 * xs));
            prop_assert_eq!(gx.a2 - gy.a2, 2 * (xs - os));
        }
    }

    #[test]
    fn brute_force_rectangles_agree(x in perm_strategy(5)) {
        let fast: BTreeSet<(Rect, Vec<usize>)> = rectangles_from(&x).collect();
        prop_assert_eq!(fast, brute_rectangles(&x));
    }

    #[test]
    fn shifted_grids_have_the_same_homology(g in grid_strategy(), dc in 0usize..6, dr in 0usize..6) {
        prop_assume!(g.components() == 1);
        let h = g.shift(dc, dr);
        prop_assert_eq!(deflated(&h).entries, deflated(&g).entries);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn grid_euler_characteristic_is_the_alexander_polynomial(
        letters in proptest::collection::vec((1usize..=2, any::<bool>()), 1..=4)
    ) {
        let text = letters.iter().map(|&(g, p)| format!("{}s{g}", if p { "" } else { "-" })).collect::<Vec<_>>().join(" ");
        let Ok(w) = parse_braid(&format!("B3: {text}")) else { return Ok(()) };
        let Ok(bg) = braid_to_grid(&w) else { return Ok(()) };
        prop_assume!(bg.grid.n <= DEFAULT_MAX_SIZE);
        prop_assert_eq!(deflated(&bg.grid).euler(), alexander_from_braid(&w));
    }
}
