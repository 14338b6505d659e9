use gemkit::dipole::{add_dipole, eliminate_dipole, random_insertion};
use gemkit::genus::genus_all;
use gemkit::invariants::{euler_characteristic, ChainComplex};
use gemkit::{canonical_code, CodeFlavor, ColoredGraph, CyclicPermutation};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_matching(order: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut vs: Vec<usize> = (0..order).collect();
    vs.shuffle(rng);
    let mut m = vec![0; order];
    for pair in vs.chunks(2) {
        m[pair[0]] = pair[1];
        m[pair[1]] = pair[0];
    }
    m
}

/// A connected random graph, or `None` when the draw was disconnected.
fn random_graph(n_colors: usize, order: usize, seed: u64) -> Option<ColoredGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m: Vec<Vec<usize>> = (0..n_colors).map(|_| random_matching(order, &mut rng)).collect();
    let g = ColoredGraph::from_matchings(&m).unwrap();
    g.is_connected().then_some(g)
}

fn graph_strategy() -> impl Strategy<Value = ColoredGraph> {
    (2usize..=5, 1usize..=5, any::<u64>()).prop_filter_map("disconnected", |(n, half, seed)| random_graph(n, 2 * half, seed))
}

fn shuffled(n: usize, seed: u64) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    p
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn code_ignores_vertex_labels(g in graph_strategy(), seed in any::<u64>()) {
        let h = g.relabel(&shuffled(g.order(), seed)).unwrap();
        for flavor in [CodeFlavor::ColorPreserving, CodeFlavor::UpToColorPermutation] {
            prop_assert_eq!(canonical_code(&g, flavor).unwrap(), canonical_code(&h, flavor).unwrap());
        }
    }

    #[test]
    fn code_ignores_color_names_only_when_asked(g in graph_strategy(), seed in any::<u64>()) {
        let h = g.recolor(&shuffled(g.n_colors(), seed)).unwrap();
        prop_assert_eq!(
            canonical_code(&g, CodeFlavor::UpToColorPermutation).unwrap(),
            canonical_code(&h, CodeFlavor::UpToColorPermutation).unwrap()
        );
    }

    #[test]
    fn code_decodes_to_an_isomorphic_graph(g in graph_strategy()) {
        for flavor in [CodeFlavor::ColorPreserving, CodeFlavor::UpToColorPermutation] {
            let code = canonical_code(&g, flavor).unwrap();
            let back = code.decode().unwrap();
            prop_assert_eq!(canonical_code(&back, flavor).unwrap(), code);
        }
    }

    #[test]
    fn gem_text_round_trips(g in graph_strategy()) {
        prop_assume!(g.n_colors() >= 3);
        prop_assert_eq!(ColoredGraph::parse_gem(&g.to_gem_string()).unwrap(), g);
    }

    #[test]
    fn genus_is_nonnegative_and_integral_when_bipartite(g in graph_strategy()) {
        prop_assume!(g.n_colors() >= 3);
        if let Ok(r) = genus_all(&g) {
            for e in &r.entries {
                prop_assert!(e.rho.twice() >= 0);
                if g.is_bipartite() {
                    prop_assert!(e.rho.is_integer());
                }
            }
            prop_assert_eq!(r.entries.len(), CyclicPermutation::all(g.n_colors()).len());
        }
    }

    #[test]
    fn boundary_of_boundary_vanishes(g in graph_strategy()) {
        let k = ChainComplex::new(&g);
        for d in 2..=k.dimension() {
            let a = k.boundary(d - 1);
            let b = k.boundary(d);
            for r in 0..a.rows {
                for c in 0..b.cols {
                    let s: i64 = (0..a.cols).map(|m| a.get(r, m) * b.get(m, c)).sum();
                    prop_assert_eq!(s, 0);
                }
            }
        }
    }

    #[test]
    fn betti_numbers_give_the_euler_characteristic(g in graph_strategy()) {
        let h = ChainComplex::new(&g).homology();
        let from_betti: i64 = h.iter().enumerate().map(|(k, a)| if k % 2 == 0 { a.rank as i64 } else { -(a.rank as i64) }).sum();
        prop_assert_eq!(from_betti, euler_characteristic(&g));
    }

    #[test]
    fn edge_path_group_matches_chain_homology(g in graph_strategy()) {
        prop_assume!(g.n_colors() >= 3);
        let k = ChainComplex::new(&g);
        prop_assert_eq!(k.h1_edge_path(), k.homology()[1].clone());
    }

    #[test]
    fn dipole_insertion_is_undone_by_elimination(g in graph_strategy(), seed in any::<u64>()) {
        prop_assume!(g.n_colors() >= 2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ins = random_insertion(&g, &mut rng);
        let big = add_dipole(&g, &ins).unwrap();
        prop_assert_eq!(big.order(), g.order() + 2);
        prop_assert_eq!(eliminate_dipole(&big, g.order(), g.order() + 1).unwrap(), g.clone());
        // the homology of K(Γ) is a topological invariant
        prop_assert_eq!(ChainComplex::new(&big).homology(), ChainComplex::new(&g).homology());
    }

    #[test]
    fn connected_sum_adds_orders(a in graph_strategy(), b in graph_strategy()) {
        prop_assume!(a.n_colors() == b.n_colors());
        let s = a.connected_sum_default(&b).unwrap();
        prop_assert_eq!(s.order(), a.order() + b.order() - 2);
        prop_assert!(s.is_connected());
    }

    #[test]
    fn cyclic_permutations_normalize(n in 3usize..=6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let seq = shuffled(n, rng.gen());
        let eps = CyclicPermutation::new(&seq).unwrap();
        let shift = rng.gen_range(0..n);
        let rotated: Vec<usize> = (0..n).map(|i| seq[(i + shift) % n]).collect();
        let reversed: Vec<usize> = seq.iter().rev().copied().collect();
        prop_assert_eq!(CyclicPermutation::new(&rotated).unwrap(), eps.clone());
        prop_assert_eq!(CyclicPermutation::new(&reversed).unwrap(), eps.clone());
        prop_assert_eq!(eps.colors()[n - 1], n - 1);
    }
}

#[test]
fn permutation_counts() {
    for (n, count) in [(3, 1), (4, 3), (5, 12), (6, 60)] {
        assert_eq!(CyclicPermutation::all(n).len(), count);
    }
}
