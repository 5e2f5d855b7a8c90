use hfk_core::alexander::alexander_from_braid;
use hfk_core::algebra::{algebra_for, default_degree_cap};
use hfk_core::arith::{modp, RatFunc, SparseMatrix, SparseVec, UniPoly};
use hfk_core::braid::{build_diagram, BraidWord, DecoratedDiagram, DiagramVertex, Letter, Sign};
use hfk_core::cube::{Cube, CubeConfig, Memo, SignRule};
use hfk_core::homology::{homology, slice_ranks};
use hfk_core::resolution::{is_singular, RelationMode, ResolutionAssignment, ResolutionGraph, Vertex, DEFAULT_SUBSET_CAP};
use proptest::prelude::*;

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    let coeffs = proptest::collection::vec(-3i64..=3, 1..=3);
    (coeffs.clone(), coeffs, 0u8..4).prop_map(|(n, d, zero)| {
        if zero == 0 {
            return RatFunc::zero();
        }
        let den = UniPoly::from_ints(&d);
        let den = if den.is_zero() { UniPoly::one() } else { den };
        RatFunc::new(UniPoly::from_ints(&n), den).unwrap()
    })
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = SparseMatrix> {
    proptest::collection::vec(proptest::collection::vec(ratfunc(), cols), rows).prop_map(move |data| {
        let rows = data.into_iter().map(|r| SparseVec::from_pairs(r.into_iter().enumerate().collect())).collect();
        SparseMatrix::from_rows(cols, rows)
    })
}

/// Knot-closing words on two or three strands.
fn knot_word(max_len: usize) -> impl Strategy<Value = BraidWord> {
    (2usize..=3, proptest::collection::vec((0usize..2, any::<bool>()), 1..=max_len)).prop_filter_map("closure is a link", |(b, ls)| {
        let letters = ls
            .into_iter()
            .map(|(g, pos)| Letter { generator: 1 + g % (b - 1), sign: if pos { Sign::Positive } else { Sign::Negative } })
            .collect();
        BraidWord::new(b, letters).ok()
    })
}

fn graphs(d: &DecoratedDiagram) -> Vec<ResolutionGraph> {
    let n = d.crossings().len();
    (0..1u64 << n).map(|m| ResolutionGraph::new(d, &ResolutionAssignment::from_mask(n, m)).unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rref_is_idempotent(m in matrix(4, 4)) {
        let once = m.rref().matrix();
        prop_assert_eq!(once.rref().matrix(), once);
    }

    #[test]
    fn rank_of_transpose(m in matrix(5, 5)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn kernel_vectors_are_annihilated(m in matrix(3, 5)) {
        let k = m.kernel_basis();
        prop_assert_eq!(k.len(), 5 - m.rank());
        for v in k {
            prop_assert!(m.apply(&v).is_zero());
        }
    }

    #[test]
    fn modular_rank_is_a_lower_bound(m in matrix(4, 5), t0 in 2u64..1_000_000) {
        if let Some(r) = modp::rank_mod(&m, t0) {
            prop_assert!(r <= m.rank());
        }
    }

    #[test]
    fn ratfunc_normal_form_ignores_common_factors(
        n in proptest::collection::vec(-4i64..=4, 1..=3),
        d in proptest::collection::vec(-4i64..=4, 1..=3),
        c in proptest::collection::vec(-3i64..=3, 1..=2),
    ) {
        let (n, d, c) = (UniPoly::from_ints(&n), UniPoly::from_ints(&d), UniPoly::from_ints(&c));
        prop_assume!(!d.is_zero() && !c.is_zero());
        prop_assert_eq!(RatFunc::new(&n * &c, &d * &c).unwrap(), RatFunc::new(n, d).unwrap());
    }

    #[test]
    fn diagrams_have_the_expected_shape(w in knot_word(6)) {
        let d = build_diagram(&w);
        prop_assert_eq!(d.edge_count(), 2 * w.len() + 1);
        let mut ins = vec![0; w.len()];
        let mut outs = vec![0; w.len()];
        let (mut marked_in, mut marked_out) = (0, 0);
        for e in d.edges() {
            match e.tail {
                DiagramVertex::Crossing(k) => outs[k] += 1,
                DiagramVertex::Marked => marked_out += 1,
            }
            match e.head {
                DiagramVertex::Crossing(k) => ins[k] += 1,
                DiagramVertex::Marked => marked_in += 1,
            }
        }
        prop_assert!(ins.iter().chain(&outs).all(|&k| k == 2));
        prop_assert_eq!((marked_in, marked_out), (1, 1));
        let back = DecoratedDiagram::from_json(&d.to_json()).unwrap();
        prop_assert_eq!(back.to_json(), d.to_json());
    }

    #[test]
    fn subset_weights_and_boundaries_complement(w in knot_word(5), pick in any::<u64>()) {
        let d = build_diagram(&w);
        for g in graphs(&d) {
            let m = g.marked();
            let all = (1u64 << m) - 1;
            let s = pick & all;
            let (a, b) = (g.subset(s), g.subset(all ^ s));
            let marked_weight = g.vertices()[m].weight();
            prop_assert_eq!(a.weight + b.weight + marked_weight, g.total_weight());
            let touches_marked = |e: &usize| g.tail(*e) == m || g.head(*e) == m;
            let mut out_a: Vec<usize> = a.out_boundary.iter().copied().filter(|e| !touches_marked(e)).collect();
            let mut in_b: Vec<usize> = b.in_boundary.iter().copied().filter(|e| !touches_marked(e)).collect();
            out_a.sort();
            in_b.sort();
            prop_assert_eq!(out_a, in_b);
        }
    }

    #[test]
    fn all_smoothed_resolution_has_one_circle_per_strand(w in knot_word(6)) {
        let d = build_diagram(&w);
        let bits: Vec<bool> = d.crossings().iter().map(|c| c.sign == Sign::Positive).collect();
        prop_assert!(d.crossings().iter().zip(&bits).all(|(c, &b)| !is_singular(c.sign, b)));
        let g = ResolutionGraph::new(&d, &ResolutionAssignment(bits)).unwrap();
        prop_assert_eq!(g.connected_components().1, w.strands());
    }

    #[test]
    fn single_singular_vertex_boundary(w in knot_word(5)) {
        let d = build_diagram(&w);
        let g = ResolutionGraph::new(&d, &ResolutionAssignment::zeros(w.len())).unwrap();
        for (i, v) in g.vertices().iter().enumerate() {
            if let Vertex::Singular(k) = *v {
                let (a, b, c, dd) = g.labels(k);
                // a loop at the vertex is interior to it
                if [a, b].iter().any(|e| *e == c || *e == dd) {
                    continue;
                }
                let s = g.subset(1 << i);
                let (mut out, mut inn) = (s.out_boundary.clone(), s.in_boundary.clone());
                out.sort();
                inn.sort();
                let (mut want_out, mut want_in) = (vec![a, b], vec![c, dd]);
                want_out.sort();
                want_in.sort();
                prop_assert_eq!(out, want_out);
                prop_assert_eq!(inn, want_in);
            }
        }
    }

    #[test]
    fn alexander_polynomial_is_symmetric_and_normalized(w in knot_word(8)) {
        let delta = alexander_from_braid(&w);
        prop_assert!(delta.is_symmetric());
        prop_assert_eq!(delta.eval_one(), 1.into());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn kauffman_states_count_algebra_dimension(w in knot_word(5)) {
        let d = build_diagram(&w);
        for g in graphs(&d) {
            let a = algebra_for(&g, RelationMode::All, DEFAULT_SUBSET_CAP, default_degree_cap(w.len())).unwrap();
            if g.is_connected() {
                prop_assert_eq!(a.total_dim() as u64, g.count_kauffman_states());
            } else {
                prop_assert!(a.is_zero());
            }
        }
    }

    #[test]
    fn relation_modes_give_the_same_algebra(w in knot_word(5)) {
        let d = build_diagram(&w);
        let cap = default_degree_cap(w.len());
        for g in graphs(&d) {
            let all = algebra_for(&g, RelationMode::All, DEFAULT_SUBSET_CAP, cap).unwrap();
            let coherent = algebra_for(&g, RelationMode::CoherentCycles, DEFAULT_SUBSET_CAP, cap).unwrap();
            prop_assert_eq!(all.dims_by_a2(), coherent.dims_by_a2());
        }
    }

    #[test]
    fn homology_is_independent_of_sign_order_and_mode(w in knot_word(5), seed in any::<u64>()) {
        let d = build_diagram(&w);
        let n = w.len();
        let memo = Memo::new();
        let mut cfg = CubeConfig::for_crossings(n);
        cfg.check_faces = true;
        let base = homology(&Cube::build(&d, &cfg, &memo).unwrap().total_complex().unwrap(), "");
        let mut order: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (s >> 33) as usize % (i + 1));
        }
        cfg.signs = SignRule::Reordered(order);
        let reordered = homology(&Cube::build(&d, &cfg, &memo).unwrap().total_complex().unwrap(), "");
        prop_assert_eq!(&reordered.entries, &base.entries);
        cfg.signs = SignRule::Standard;
        cfg.mode = RelationMode::CoherentCycles;
        let coherent = homology(&Cube::build(&d, &cfg, &Memo::new()).unwrap().total_complex().unwrap(), "");
        prop_assert_eq!(&coherent.entries, &base.entries);
    }

    #[test]
    fn euler_characteristic_is_symmetric_and_ranks_add_up(w in knot_word(5)) {
        let d = build_diagram(&w);
        let tc = Cube::build(&d, &CubeConfig::for_crossings(w.len()), &Memo::new()).unwrap().total_complex().unwrap();
        let h = homology(&tc, "");
        prop_assert!(h.euler().is_symmetric());
        prop_assert_eq!(h.euler(), alexander_from_braid(&w));
        for (&ap, slice) in &tc.slices {
            let ranks = slice_ranks(slice);
            for &m in slice.groups.keys() {
                let r = |k: i64| ranks.get(&k).copied().unwrap_or(0);
                prop_assert_eq!(slice.dim(m), r(m) + h.rank(m, ap) + r(m + 1));
            }
        }
    }
}
