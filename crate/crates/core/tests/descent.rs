mod common;

use common::*;
use hdx_core::cohomology::{coboundary, SearchConfig};
use hdx_core::generators::complete_complex;
use hdx_core::minimization::{descent_preserves_class, is_locally_minimal, locally_minimize};
use hdx_core::{Cochain, Complex};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fixture(k: usize) -> Complex {
    match k {
        0 => rp2(),
        1 => complete_complex(6, 2).unwrap(),
        _ => complete_complex(6, 3).unwrap(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn descent_output_is_minimal_and_cohomologous(k in 0usize..3, i in 1usize..3, seed in any::<u64>()) {
        let x = fixture(k);
        let i = i.min(x.dim() - 1);
        let cfg = SearchConfig::exact();
        let a = x.random_cochain(i, &mut ChaCha8Rng::seed_from_u64(seed));
        let (out, trace) = locally_minimize(&x, &a, &cfg).unwrap();
        prop_assert!(is_locally_minimal(&x, &out, &cfg).unwrap());
        prop_assert!(descent_preserves_class(&x, &a, &out, &trace).unwrap());
        prop_assert!(trace.within_step_bound());
        prop_assert!(x.norm_units(&out) <= x.norm_units(&a));
        let units: Vec<u64> = trace.steps.iter().map(|s| s.units_after).collect();
        prop_assert!(units.windows(2).all(|w| w[1] < w[0]));
        for g in [&trace.raw_gamma, &trace.gamma] {
            let dg = coboundary(&x, g).unwrap();
            prop_assert_eq!(a.add(&dg).bits, out.bits.clone());
        }
        prop_assert!(trace.gamma_norm <= trace.raw_gamma_norm);
    }

    #[test]
    fn minimal_input_is_fixed(seed in any::<u64>()) {
        let x = rp2();
        let cfg = SearchConfig::exact();
        let a = x.random_cochain(1, &mut ChaCha8Rng::seed_from_u64(seed));
        let (out, _) = locally_minimize(&x, &a, &cfg).unwrap();
        let (again, trace) = locally_minimize(&x, &out, &cfg).unwrap();
        prop_assert_eq!(again, out);
        prop_assert_eq!(trace.step_count(), 0);
    }
}

#[test]
fn zero_cochain_needs_no_steps() {
    let x = rp2();
    let (out, trace) = locally_minimize(&x, &Cochain::new(1, x.zero_cochain(1).bits), &SearchConfig::exact()).unwrap();
    assert!(out.is_zero());
    assert_eq!(trace.step_count(), 0);
}
