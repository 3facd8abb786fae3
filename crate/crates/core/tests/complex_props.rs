mod common;

use common::*;
use hdx_core::cohomology::{coboundary, coboundary_map};
use hdx_core::generators::linial_meshulam;
use hdx_core::io::{parse_cochain, parse_facets, write_cochain, write_facets};
use hdx_core::Complex;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn lm() -> impl Strategy<Value = Complex> {
    (4usize..9, 1usize..4, 0.2f64..1.0, any::<u64>()).prop_filter_map("empty", |(n, d, p, seed)| {
        let x = linial_meshulam(n, d.min(n - 1), p, seed).ok()?;
        (x.dim() >= 1).then_some(x)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coboundary_squares_to_zero(x in lm()) {
        for i in 0..x.dim().saturating_sub(1) {
            let first = coboundary_map(&x, i).unwrap();
            let second = coboundary_map(&x, i + 1).unwrap();
            prop_assert!(second.compose(&first).is_zero(), "dimension {i}");
        }
    }

    #[test]
    fn coboundary_matches_vertex_lists(x in lm(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in 0..x.dim() {
            let a = x.random_cochain(i, &mut rng);
            prop_assert_eq!(coboundary(&x, &a).unwrap().bits, brute_coboundary(&x, &a));
        }
    }

    #[test]
    fn norm_counts_facets(x in lm(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in 0..=x.dim() {
            let a = x.random_cochain(i, &mut rng);
            prop_assert_eq!(x.norm_units(&a), brute_norm_units(&x, &a));
        }
    }

    #[test]
    fn facet_list_round_trips(x in lm(), seed in any::<u64>()) {
        prop_assume!(x.n_cells(x.dim()) > 0);
        let x = Complex::from_facets(x.cells(x.dim())).unwrap();
        let y = parse_facets(&write_facets(&x).unwrap()).unwrap();
        prop_assert_eq!(x.f_vector(), y.f_vector());
        prop_assert!(x.facets().eq(y.facets()));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = x.random_cochain(1, &mut rng);
        let b = parse_cochain(&y, &write_cochain(&x, &a)).unwrap();
        prop_assert_eq!(x.cochain_cells(&a), y.cochain_cells(&b));
    }
}

#[test]
fn parse_errors_carry_line_numbers() {
    let err = parse_facets("# header\n0 1 2\n\n0 1\n").unwrap_err().to_string();
    assert!(err.contains("line 4"), "{err}");
    let x = rp2();
    let err = parse_cochain(&x, "dim=1\n0 1\n0 0\n").unwrap_err().to_string();
    assert!(err.contains("line 3"), "{err}");
}
