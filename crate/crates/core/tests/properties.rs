use num_traits::Zero;
use proptest::prelude::*;

use ohtsuki::algebra::{format_rational, frac, parse_rational, HalfLaurent};
use ohtsuki::diagrams::{as_relation, generate_graphs_up_to, sl2_graph_weight, TrivalentGraph};
use ohtsuki::jones::{jones_v, kauffman_bracket, kauffman_bracket_naive, skein_residual};
use ohtsuki::jones::JonesEvaluator;
use ohtsuki::links::builder::braid_closure;
use ohtsuki::links::{cable, FramedLinkDiagram};
use ohtsuki::ohtsuki::{f_nl, g_nl, MultiIndex, NuTable};

fn braid() -> impl Strategy<Value = (usize, Vec<i32>)> {
    (2usize..=4).prop_flat_map(|s| {
        let gen = (1..s as i32).prop_flat_map(|g| prop_oneof![Just(g), Just(-g)]);
        (Just(s), prop::collection::vec(gen, 1..=9))
    })
}

fn closure((s, w): (usize, Vec<i32>)) -> FramedLinkDiagram {
    braid_closure(s, &w)
}

fn graph() -> impl Strategy<Value = TrivalentGraph> {
    let graphs = generate_graphs_up_to(4);
    (0..graphs.len()).prop_map(move |k| graphs[k].clone())
}

fn relabelling(v: usize) -> impl Strategy<Value = (Vec<usize>, Vec<usize>)> {
    (
        Just((0..v).collect::<Vec<_>>()).prop_shuffle(),
        prop::collection::vec(0usize..3, v),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn frontier_bracket_matches_state_enumeration(b in braid()) {
        let l = closure(b);
        prop_assert_eq!(kauffman_bracket(&l), kauffman_bracket_naive(&l));
    }

    #[test]
    fn skein_relation_on_braid_closures(b in braid(), pick in any::<prop::sample::Index>()) {
        let l = closure(b);
        let (p, m, z) = l.skein_triple(pick.index(l.num_crossings()));
        let r = skein_residual(&jones_v(&p).unwrap(), &jones_v(&m).unwrap(), &jones_v(&z).unwrap());
        prop_assert!(r.is_zero());
    }

    #[test]
    fn mirror_inverts_q(b in braid()) {
        let l = closure(b);
        let v = jones_v(&l).unwrap();
        let inverted = HalfLaurent::from_terms(v.terms().map(|(d, c)| (-d, c.clone())));
        prop_assert_eq!(jones_v(&l.mirror()).unwrap(), inverted);
    }

    #[test]
    fn normalized_jones_multiplies_on_split_unions(a in braid(), b in braid()) {
        let (a, b) = (closure(a), closure(b));
        let j = JonesEvaluator::uncached();
        let order = 5;
        let lhs = j.x_series(&a.disjoint_union(&b), order);
        prop_assert_eq!(lhs, &j.x_series(&a, order) * &j.x_series(&b, order));
    }

    #[test]
    fn cable_copies_are_unlinked(b in braid(), extra in 1u32..=2) {
        let l = closure(b);
        let mut j = vec![1; l.num_components()];
        j[0] = extra + 1;
        let c = cable(&l, &j).unwrap();
        prop_assert_eq!(c.num_components(), l.num_components() + extra as usize);
        let m = c.linking_matrix();
        for a in 0..=extra as usize {
            for b in 0..=extra as usize {
                if a != b {
                    prop_assert_eq!(m[a][b], 0);
                }
            }
        }
    }

    #[test]
    fn weight_is_a_graph_invariant(
        (g, (perm, rot)) in graph().prop_flat_map(|g| {
            let v = g.num_vertices();
            (Just(g), relabelling(v))
        })
    ) {
        let h = g.relabel(&perm, &rot);
        prop_assert!(g.is_isomorphic(&h));
        prop_assert_eq!(g.canonical_form(), h.canonical_form());
        prop_assert_eq!(sl2_graph_weight(&g), sl2_graph_weight(&h));
    }

    #[test]
    fn flipping_a_vertex_negates_the_weight(g in graph(), pick in any::<prop::sample::Index>()) {
        let v = pick.index(g.num_vertices());
        prop_assert_eq!(sl2_graph_weight(&g.flip(v)), -sl2_graph_weight(&g));
        prop_assert_eq!(g.flip(v).flip(v), g.clone());
        let rel = as_relation(&g, v).unwrap();
        prop_assert_eq!(rel.terms.len() % 2, 0);
    }

    #[test]
    fn rationals_round_trip(n in -10_000i64..10_000, d in 1i64..500) {
        let r = frac(n, d);
        prop_assert_eq!(parse_rational(&format_rational(&r)), Some(r));
    }

    #[test]
    fn f_identity_with_random_table(
        f in prop::collection::vec(prop_oneof![Just(1i8), Just(-1i8)], 1..=4),
        rest in prop::collection::vec(0u32..=1, 3),
        l in 1usize..=3,
        gap in 0usize..=3,
        jr in prop::collection::vec(0u32..=3, 3),
        values in prop::collection::vec((-9i64..=9, 1i64..=5), 32),
    ) {
        let mu = f.len();
        let mut table = NuTable::builtin();
        let mut it = values.into_iter();
        for s in [1i8, -1] {
            for i in 1..=3u32 {
                for m in 0..=3u32 {
                    if i == 1 && m == 0 {
                        continue;
                    }
                    let (a, b) = it.next().unwrap();
                    table.insert(s, i, m, frac(a, b)).unwrap();
                }
            }
        }
        let n = l + gap;
        let mut j: Vec<u32> = jr[..mu - 1].iter().map(|&x| x.min(l as u32)).collect();
        j.insert(0, 0);
        let j = MultiIndex(j);
        let tail = rest[..mu - 1].to_vec();
        let with = MultiIndex([vec![1], tail.clone()].concat());
        let without = MultiIndex([vec![0], tail].concat());
        prop_assert_eq!(
            f_nl(&f, &with, &j, n, l, &table).unwrap(),
            f_nl(&f, &without, &j, n, l, &table).unwrap()
        );
        prop_assert!(g_nl(&f, &j, n, l, &table).unwrap().is_zero());
    }
}
