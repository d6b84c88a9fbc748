use std::collections::BTreeSet;

use parahoric::ambient::{build_ambient, chains, indec_dim_vector, make_parahoric, BasisVector};
use parahoric::fixedpoints::{cell_parameter_count, from_lvector, to_lvector, validate_pattern, Grassmannian};
use parahoric::geometry::{components_of, irr_indices, poincare_of};
use parahoric::momentgraph::{dominance_order, graph_of, reachability_order};
use parahoric::oracle::end_space_dim;
use parahoric::poly::gaussian_binomial;
use parahoric::projections::{lift_pattern, project_pattern};
use parahoric::{DimVector, JugglingPattern, ParahoricData};
use proptest::prelude::*;

fn instance() -> impl Strategy<Value = ParahoricData> {
    (1usize..=4, 1usize..=2)
        .prop_flat_map(|(n, omega)| (Just(n), 0..=n, Just(omega), 1u32..(1 << n)))
        .prop_map(|(n, k, omega, mask)| {
            let s: Vec<usize> = (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
            make_parahoric(n, k, omega, &s).unwrap()
        })
}

/// An instance over `S` together with a nonempty `S′ ⊆ S`.
fn nested_pair() -> impl Strategy<Value = (ParahoricData, ParahoricData)> {
    instance()
        .prop_flat_map(|p| {
            let r = p.r();
            (Just(p), 1u32..(1 << r))
        })
        .prop_map(|(p, mask)| {
            let sub: Vec<usize> = p
                .s()
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &s)| s)
                .collect();
            let q = p.with_s(&sub).unwrap();
            (p, q)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn chains_partition_the_basis(p in instance()) {
        let cs = chains(&p).unwrap();
        let mut seen = BTreeSet::new();
        for c in &cs {
            prop_assert_eq!(c.len(), p.chain_len());
            for b in &c.entries {
                prop_assert_eq!(p.torus_label(b.vertex, b.index), c.label);
                prop_assert!(seen.insert(*b));
            }
        }
        prop_assert_eq!(seen.len(), p.r() * p.m());
        let total = cs.iter().fold(DimVector::zero(p.r()), |acc, c| {
            &acc + &indec_dim_vector(&p, c.end_vertex(), p.chain_len()).unwrap()
        });
        prop_assert_eq!(total, DimVector::constant(p.r(), p.m()));
    }

    #[test]
    fn ambient_is_nilpotent(p in instance()) {
        let amb = build_ambient(&p);
        for vertex in 0..p.r() {
            for index in 1..=p.m() {
                let start = BasisVector { vertex, index };
                prop_assert!(amb.compose(start, p.chain_len()).is_none());
            }
        }
    }

    #[test]
    fn fixed_point_models_agree(p in instance()) {
        let g = Grassmannian::new(&p).unwrap();
        prop_assert!(!g.is_empty());
        for fp in g.points() {
            prop_assert!(validate_pattern(&p, &fp.pattern).unwrap());
            prop_assert_eq!(&to_lvector(&p, &fp.pattern).unwrap(), &fp.lvector);
            prop_assert_eq!(&from_lvector(&p, &fp.lvector).unwrap(), &fp.pattern);
            prop_assert_eq!(cell_parameter_count(&p, &fp.pattern), fp.energy);
        }
    }

    #[test]
    fn poincare_polynomial_shape(p in instance()) {
        let g = Grassmannian::new(&p).unwrap();
        let poly = poincare_of(&g);
        prop_assert_eq!(poly.eval_at_one(), g.len() as u64);
        prop_assert_eq!(poly.degree(), Some(p.expected_dim()));
        prop_assert_eq!(poly.leading_coefficient(), irr_indices(&p).len() as u64);
    }

    #[test]
    fn moment_graph_matches_cells(p in instance()) {
        let g = Grassmannian::new(&p).unwrap();
        let graph = graph_of(&g).unwrap();
        let energies: Vec<usize> = g.points().iter().map(|fp| fp.energy).collect();
        prop_assert_eq!(graph.out_degrees(), energies);
        for e in &graph.edges {
            prop_assert!(e.character.is_root_shaped());
            prop_assert_eq!(e.character.delta, e.offset);
            prop_assert!(e.character.diagonal_pairing() != 0);
            prop_assert_eq!(e.character.eps[e.mv.recipient - 1], 1);
            prop_assert_eq!(e.character.eps[e.mv.donor - 1], -1);
        }
        let patterns: Vec<JugglingPattern> = g.points().iter().map(|fp| fp.pattern.clone()).collect();
        prop_assert_eq!(reachability_order(&graph).unwrap(), dominance_order(&patterns));
    }

    #[test]
    fn top_patterns_are_maximal(p in instance()) {
        let g = Grassmannian::new(&p).unwrap();
        for comp in components_of(&g).unwrap() {
            prop_assert!(comp.closure.contains(&comp.top));
            for fp in g.points() {
                if fp.pattern != comp.top {
                    prop_assert!(!fp.pattern.dominates(&comp.top));
                }
            }
        }
    }

    #[test]
    fn lift_is_a_section((big, small) in nested_pair()) {
        let g_big = Grassmannian::new(&big).unwrap();
        let g_small = Grassmannian::new(&small).unwrap();
        for fp in g_small.points() {
            let up = lift_pattern(&small, &big, &fp.pattern).unwrap();
            prop_assert!(g_big.index_of(&up).is_some());
            prop_assert_eq!(&project_pattern(&big, &small, &up).unwrap(), &fp.pattern);
        }
        for fp in g_big.points() {
            let down = project_pattern(&big, &small, &fp.pattern).unwrap();
            let idx = g_small.index_of(&down);
            prop_assert!(idx.is_some());
            prop_assert!(g_small.points()[idx.unwrap()].energy <= fp.energy);
            prop_assert!(cell_parameter_count(&small, &down) <= cell_parameter_count(&big, &fp.pattern));
        }
    }

    #[test]
    fn end_space_ignores_basis_order(
        (p, perm) in instance().prop_flat_map(|p| {
            let one: Vec<usize> = (0..p.m()).collect();
            let perm = proptest::collection::vec(Just(one).prop_shuffle(), p.r());
            (Just(p), perm)
        })
    ) {
        let m = build_ambient(&p).to_coord_rep();
        let pm = m.permuted(&perm);
        prop_assert_eq!(end_space_dim(&m, &m), end_space_dim(&pm, &pm));
        prop_assert_eq!(end_space_dim(&m, &pm), end_space_dim(&m, &m));
    }
}

#[test]
fn loop_quiver_gives_gaussian_binomials() {
    for n in 1..=6 {
        for k in 0..=n {
            let p = make_parahoric(n, k, 1, &[1]).unwrap();
            assert_eq!(poincare_of(&Grassmannian::new(&p).unwrap()), gaussian_binomial(n, k));
        }
    }
}
