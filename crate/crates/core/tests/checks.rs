mod common;

use common::*;
use hdx_core::buildings::section_graph;
use hdx_core::generators::{complete_complex, cone};
use hdx_core::overlap::{arrangement_depth, geometric_overlap, Placement};
use hdx_core::spectral::{cheeger_sweep, gram_constants, mixing_sweep, one_skeleton, section_as_graph, spectrum, DEFAULT_EIGEN_CAP};
use hdx_core::verify::{pyramid_counts, triangle_counts, vertex_split_check};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn triangle_identities_hold(k in 0usize..3, seed in any::<u64>()) {
        let x = [rp2(), complete_complex(6, 2).unwrap(), tetra_boundary()][k].clone();
        let a = x.random_cochain(1, &mut ChaCha8Rng::seed_from_u64(seed));
        let r = triangle_counts(&x, &a).unwrap();
        prop_assert_eq!(&r.t, &recount_t(&x, &a));
        prop_assert!(r.holds());
    }

    #[test]
    fn pyramid_and_split_identities_hold(k in 0usize..2, seed in any::<u64>()) {
        let x = if k == 0 { complete_complex(6, 3).unwrap() } else { cone(&s42()).unwrap() };
        let b = x.random_cochain(2, &mut ChaCha8Rng::seed_from_u64(seed));
        let r = pyramid_counts(&x, &b).unwrap();
        prop_assert_eq!(&r.t, &recount_t(&x, &b));
        prop_assert!(r.holds());
        prop_assert!(vertex_split_check(&x, &b).unwrap().holds());
    }

    #[test]
    fn overlap_matches_arrangement(seed in any::<u64>(), k in 0usize..2) {
        let x = [rp2(), complete_complex(5, 2).unwrap()][k].clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let coords = (0..x.n_vertices()).map(|_| (rand::Rng::random_range(&mut rng, -6i64..7), rand::Rng::random_range(&mut rng, -6i64..7))).collect();
        let f = Placement::integer(coords).unwrap();
        prop_assert_eq!(geometric_overlap(&x, &f).unwrap().depth, arrangement_depth(&x, &f).unwrap().depth);
    }
}

#[test]
fn complete_graph_spectrum() {
    // K_n: Laplacian eigenvalues 0 and n (n-1 times), adjacency n-1 and -1.
    let x = complete_complex(7, 2).unwrap();
    let g = one_skeleton(&x);
    let r = spectrum(&g, DEFAULT_EIGEN_CAP).unwrap();
    assert!((r.lambda1_laplacian - 7.0).abs() < 1e-9);
    assert!((r.second_adjacency + 1.0).abs() < 1e-9);
    assert!(r.max_residual < r.tolerance);
    let c = cheeger_sweep(&g, r.lambda1_laplacian, 14, 0, 1);
    assert!(c.exhaustive && c.violations == 0 && c.h_holds);
}

#[test]
fn section_graph_mixing() {
    for q in [2, 3] {
        for j in [2, 3] {
            let s = section_graph(4, q, 1, j).unwrap();
            let g = section_as_graph(&s);
            let r = spectrum(&g, DEFAULT_EIGEN_CAP).unwrap();
            let q = q as u64;
            let expect = if j == 3 { (q * q, q + 1) } else { (q * q + q, 1) };
            assert_eq!(gram_constants(&s), Some(expect));
            let m = mixing_sweep(&g, r.second_adjacency, 14, 500, 9).unwrap();
            assert_eq!(m.violations, 0);
        }
    }
}

#[test]
fn degenerate_placement_is_flagged() {
    let x = rp2();
    let f = Placement::integer((0..6).map(|k| (k, 2 * k)).collect()).unwrap();
    let e = geometric_overlap(&x, &f).unwrap();
    assert!(e.degenerate);
    assert_eq!(e.depth, arrangement_depth(&x, &f).unwrap().depth);
}
