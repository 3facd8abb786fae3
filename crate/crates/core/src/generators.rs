//! Small test complexes.

use crate::complex::Complex;
use crate::error::{Error, Result};
use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// All `(d+1)`-subsets of `{0..n-1}`.
pub fn complete_complex(n: usize, d: usize) -> Result<Complex> {
    if n <= d {
        return Err(Error::BadDimension(format!("need n > d, got n = {n}, d = {d}")));
    }
    Complex::from_facets((0..n as u32).combinations(d + 1))
}

/// Boundary of the `(d+1)`-simplex, a triangulated `d`-sphere.
pub fn sphere_boundary(d: usize) -> Complex {
    complete_complex(d + 2, d).expect("n = d + 2")
}

/// The six-vertex triangulation of the real projective plane.
pub fn rp2_six_vertex() -> Complex {
    const FACETS: [[u32; 3]; 10] = [
        [0, 1, 3],
        [0, 1, 5],
        [0, 2, 4],
        [0, 2, 5],
        [0, 3, 4],
        [1, 2, 3],
        [1, 2, 4],
        [1, 4, 5],
        [2, 3, 5],
        [3, 4, 5],
    ];
    Complex::from_facets(FACETS).expect("valid facets")
}

/// Linial–Meshulam model: the full `(d-1)`-skeleton of the simplex on `n`
/// vertices plus every `d`-cell independently with probability `p`.
pub fn linial_meshulam(n: usize, d: usize, p: f64, seed: u64) -> Result<Complex> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::BadParameter(format!("probability {p} outside [0, 1]")));
    }
    if d == 0 || n <= d {
        return Err(Error::BadDimension(format!("need 1 <= d < n, got n = {n}, d = {d}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cells: Vec<Vec<u32>> = (0..n as u32).combinations(d).collect();
    for c in (0..n as u32).combinations(d + 1) {
        if rng.random_bool(p) {
            cells.push(c);
        }
    }
    Complex::build(d, cells)
}

/// Cone over a pure complex with a new apex vertex (id one past the largest).
pub fn cone(x: &Complex) -> Result<Complex> {
    if !x.is_pure() {
        return Err(Error::NotPure);
    }
    let apex = x.cells(0).map(|c| c[0]).max().map_or(0, |m| m + 1);
    Complex::from_facets(x.facets().map(|f| {
        let mut g = f.to_vec();
        g.push(apex);
        g
    }))
}
