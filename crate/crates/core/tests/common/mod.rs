//! Fixtures and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use hdx_core::bits::Bits;
use hdx_core::buildings::spherical_building;
use hdx_core::generators::{complete_complex, cone, linial_meshulam, rp2_six_vertex, sphere_boundary};
use hdx_core::rational::{ratio, Value};
use hdx_core::{Cochain, Complex};
use itertools::Itertools;

pub fn rp2() -> Complex {
    rp2_six_vertex()
}

/// `∂Δ³`, the boundary of the tetrahedron.
pub fn tetra_boundary() -> Complex {
    sphere_boundary(2)
}

pub fn s42() -> Complex {
    spherical_building(4, 2).unwrap().complex
}

/// Every generated complex used by the structural checks.
pub fn generated() -> Vec<(&'static str, Complex)> {
    vec![
        ("rp2", rp2()),
        ("tetra_boundary", tetra_boundary()),
        ("sphere3", sphere_boundary(3)),
        ("complete(5,2)", complete_complex(5, 2).unwrap()),
        ("complete(6,2)", complete_complex(6, 2).unwrap()),
        ("complete(6,3)", complete_complex(6, 3).unwrap()),
        ("complete(7,2)", complete_complex(7, 2).unwrap()),
        ("lm(8,2,0.5)", linial_meshulam(8, 2, 0.5, 11).unwrap()),
        ("S(3,2)", spherical_building(3, 2).unwrap().complex),
        ("S(3,3)", spherical_building(3, 3).unwrap().complex),
        ("S(4,2)", s42()),
        ("cone(S(3,2))", cone(&spherical_building(3, 2).unwrap().complex).unwrap()),
        ("cone(S(4,2))", cone(&s42()).unwrap()),
    ]
}

/// `δα` recomputed from vertex lists instead of the coface tables.
pub fn brute_coboundary(x: &Complex, a: &Cochain) -> Bits {
    let i = a.dim;
    let n = x.n_cells(i + 1);
    Bits::from_indices(
        n,
        (0..n).filter(|&k| {
            let cell = x.cell(i + 1, k);
            let hits = cell.iter().copied().combinations(i + 1).filter(|f| a.bits.get(x.find(i, f).unwrap())).count();
            hits % 2 == 1
        }),
    )
}

/// `t[j]` recounted from vertex lists.
pub fn recount_t(x: &Complex, a: &Cochain) -> Vec<u64> {
    let i = a.dim;
    let mut t = vec![0u64; i + 3];
    for cell in x.cells(i + 1) {
        let hits = cell.iter().copied().combinations(i + 1).filter(|f| a.bits.get(x.find(i, f).unwrap())).count();
        t[hits] += 1;
    }
    t
}

/// Every cochain of a dimension, as bit masks (at most 24 cells).
pub fn all_cochains(x: &Complex, i: usize) -> impl Iterator<Item = Cochain> + '_ {
    let n = x.n_cells(i);
    assert!(n <= 24);
    (0u64..1 << n).map(move |m| Cochain::new(i, Bits::from_indices(n, (0..n).filter(|&k| m >> k & 1 == 1))))
}

/// `Σ c(σ)` counted from the facet list.
pub fn brute_norm_units(x: &Complex, a: &Cochain) -> u64 {
    a.bits
        .iter_ones()
        .map(|k| {
            let s = x.cell(a.dim, k);
            x.facets().filter(|f| s.iter().all(|v| f.contains(v))).count() as u64
        })
        .sum()
}

/// The systole by enumerating cocycles and the full coboundary space.
pub fn brute_systole(x: &Complex, i: usize) -> Value {
    let d = x.dim();
    let n = x.n_cells(i);
    let boundaries: std::collections::HashSet<Bits> = if i == 0 {
        [Bits::zeros(n), Bits::ones(n)].into_iter().collect()
    } else {
        all_cochains(x, i - 1).map(|g| brute_coboundary(x, &g)).collect()
    };
    let den = hdx_core::complex::binomial(d as u64 + 1, i as u64 + 1) * x.n_cells(d) as u64;
    let best = all_cochains(x, i)
        .filter(|a| i == d || brute_coboundary(x, a).is_zero())
        .filter(|a| !boundaries.contains(&a.bits))
        .map(|a| brute_norm_units(x, &a))
        .min();
    match best {
        None => Value::Infinite,
        Some(u) => Value::Finite(ratio(u, den)),
    }
}
