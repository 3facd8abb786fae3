//! Instance checks of the counting identities for edge and triangle cochains,
//! the vertex-split identity for `δ₂`, and the filling-norm pipeline.

use crate::bits::Bits;
use crate::buildings::{gaussian_binomial, Color, VertexTypes};
use crate::cohomology::{coboundary, coboundary_map, SearchConfig};
use crate::complex::{Cochain, Complex};
use crate::error::{Error, Result};
use crate::minimization::{locally_minimize, ColorConstants};
use crate::rational::{int, Exact, Rational};
use num_traits::{One, Signed};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Both sides of an exact identity.
#[derive(Clone, Debug, Serialize)]
pub struct Equality {
    pub name: &'static str,
    pub lhs: Exact,
    pub rhs: Exact,
    pub holds: bool,
}

impl Equality {
    fn new(name: &'static str, lhs: Rational, rhs: Rational) -> Self {
        let holds = lhs == rhs;
        Equality { name, lhs: Exact(lhs), rhs: Exact(rhs), holds }
    }

    fn ints(name: &'static str, lhs: u64, rhs: u64) -> Self {
        Equality::new(name, int(lhs), int(rhs))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CountReport {
    /// `t[j]`: top cells (or triangles) with exactly `j` faces in the cochain.
    pub t: Vec<u64>,
    pub identities: Vec<Equality>,
}

impl CountReport {
    pub fn holds(&self) -> bool {
        self.identities.iter().all(|e| e.holds)
    }

    fn weighted(&self) -> u64 {
        self.t.iter().enumerate().map(|(j, &t)| j as u64 * t).sum()
    }
}

fn require_dim(x: &Complex, d: usize, a: &Cochain, i: usize) -> Result<()> {
    if x.dim() != d {
        return Err(Error::BadDimension(format!("expected a {d}-complex, got dimension {}", x.dim())));
    }
    if a.dim != i {
        return Err(Error::DimensionMismatch { expected: i, found: a.dim });
    }
    if a.bits.len() != x.n_cells(i) {
        return Err(Error::DimensionMismatch { expected: x.n_cells(i), found: a.bits.len() });
    }
    Ok(())
}

/// `t[j]` over the `k`-cells by how many of their `(k-1)`-faces lie in `a`.
fn face_histogram(x: &Complex, a: &Cochain) -> Vec<u64> {
    let k = a.dim + 1;
    let mut t = vec![0u64; k + 2];
    for c in 0..x.n_cells(k) {
        t[x.faces_of(k, c).iter().filter(|&&f| a.bits.get(f as usize)).count()] += 1;
    }
    t
}

/// `Σ_τ |δ₀ α_τ|` over the links of the `(i-1)`-cells, whose links are graphs.
fn link_crossings(x: &Complex, a: &Cochain) -> Result<u64> {
    let i = a.dim;
    let mut total = 0;
    for tau in x.cells(i - 1) {
        let link = x.link(tau)?;
        let at = link.restrict(a)?;
        total += coboundary(&link.complex, &at)?.size() as u64;
    }
    Ok(total)
}

/// Triangle counts for an edge cochain on a 2-complex.
pub fn triangle_counts(x: &Complex, a: &Cochain) -> Result<CountReport> {
    require_dim(x, 2, a, 1)?;
    let t = face_histogram(x, a);
    let incident: u64 = a.bits.iter_ones().map(|e| x.cofaces(1, e).len() as u64).sum();
    let mut r = CountReport { t, identities: Vec::new() };
    let (t1, t2, t3) = (r.t[1], r.t[2], r.t[3]);
    r.identities.push(Equality::ints("sum_i i*t_i = sum_e triangles(e)", r.weighted(), incident));
    r.identities.push(Equality::ints("|delta_1 alpha| = t_1 + t_3", coboundary(x, a)?.size() as u64, t1 + t3));
    r.identities.push(Equality::ints("sum_v |E(alpha_v, not alpha_v)| = 2t_1 + 2t_2", link_crossings(x, a)?, 2 * t1 + 2 * t2));
    if let Some(c) = x.constant_c(1) {
        r.identities.push(Equality::ints("sum_i i*t_i = c*|alpha|", r.weighted(), c * a.size() as u64));
    }
    Ok(r)
}

/// The colored form `Σ i·t_i = 2(q+1)(Θ|α^b| + |α^w|)`.
#[derive(Clone, Debug, Serialize)]
pub struct ColoredCount {
    pub black: usize,
    pub white: usize,
    /// Every edge of `α` lies in `2·(3 choose 1)_q` triangles if black and `2(q+1)` if white.
    pub applicable: bool,
    pub lhs: Exact,
    pub rhs: Exact,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TriangleReport3d {
    pub counts: CountReport,
    pub colored: Option<ColoredCount>,
}

impl TriangleReport3d {
    /// General identities, and the colored one where it applies.
    pub fn holds(&self) -> bool {
        self.counts.holds() && self.colored.as_ref().is_none_or(|c| !c.applicable || c.holds)
    }
}

/// Triangle counts for an edge cochain on a 3-complex, with the colored form
/// when vertex types are given.
pub fn triangle_counts_3d(x: &Complex, a: &Cochain, types: Option<&VertexTypes>) -> Result<TriangleReport3d> {
    require_dim(x, 3, a, 1)?;
    let t = face_histogram(x, a);
    let tri = |e: usize| x.cofaces(1, e).len() as u64;
    let incident: u64 = a.bits.iter_ones().map(tri).sum();
    let mut counts = CountReport { t, identities: Vec::new() };
    counts.identities.push(Equality::ints("sum_i i*t_i = sum_e triangles(e)", counts.weighted(), incident));
    let colored = match types {
        None => None,
        Some(types) => {
            let k = ColorConstants::new(types.q)?;
            let q = types.q as u64;
            let black_tri = 2 * gaussian_binomial(3, 1, q)? as u64;
            let white_tri = 2 * (q + 1);
            let (mut black, mut white, mut applicable) = (0, 0, true);
            for e in a.bits.iter_ones() {
                let v = x.vertex_indices(1, e);
                let want = match types.edge_color(v[0], v[1])? {
                    Color::Black => {
                        black += 1;
                        black_tri
                    }
                    Color::White => {
                        white += 1;
                        white_tri
                    }
                };
                applicable &= tri(e) == want;
            }
            let lhs = int(counts.weighted());
            let rhs = int(2 * (q + 1)) * (&k.theta * int(black as u64) + int(white as u64));
            let holds = lhs == rhs;
            Some(ColoredCount { black, white, applicable, lhs: Exact(lhs), rhs: Exact(rhs), holds })
        }
    };
    Ok(TriangleReport3d { counts, colored })
}

/// Pyramid counts for a triangle cochain on a 3-complex.
pub fn pyramid_counts(x: &Complex, a: &Cochain) -> Result<CountReport> {
    require_dim(x, 3, a, 2)?;
    let t = face_histogram(x, a);
    let c = x.c_values(2);
    let incident: u64 = a.bits.iter_ones().map(|s| c[s]).sum();
    let mut r = CountReport { t, identities: Vec::new() };
    let (t1, t2, t3) = (r.t[1], r.t[2], r.t[3]);
    r.identities.push(Equality::ints("sum_i i*t_i = sum_sigma c(sigma)", r.weighted(), incident));
    r.identities.push(Equality::ints("sum_e |E(alpha_e, not alpha_e)| = 3t_1 + 4t_2 + 3t_3", link_crossings(x, a)?, 3 * t1 + 4 * t2 + 3 * t3));
    r.identities.push(Equality::ints("|delta_2 alpha| = t_1 + t_3", coboundary(x, a)?.size() as u64, t1 + t3));
    if let Some(c) = x.constant_c(2) {
        r.identities.push(Equality::ints("sum_i i*t_i = c*|alpha|", r.weighted(), c * a.size() as u64));
    }
    Ok(r)
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexSplitReport {
    /// `4|δ₂β| = Σ_v |δ₁β_v¹ + β_v²|`.
    pub equality: Equality,
    pub sum_delta_b1: u64,
    pub sum_b2: u64,
    /// `Σ_v |δ₁β_v¹ + β_v²| ≥ Σ_v |δ₁β_v¹| − Σ_v |β_v²|`.
    pub inequality_holds: bool,
    /// `Σ_v |β_v²| = c|β|` when every triangle lies in `c` pyramids.
    pub constant_form: Option<Equality>,
}

impl VertexSplitReport {
    pub fn holds(&self) -> bool {
        self.equality.holds && self.inequality_holds && self.constant_form.as_ref().is_none_or(|e| e.holds)
    }
}

pub fn vertex_split_check(x: &Complex, b: &Cochain) -> Result<VertexSplitReport> {
    require_dim(x, 3, b, 2)?;
    let (mut split, mut sum_delta_b1, mut sum_b2) = (0u64, 0u64, 0u64);
    for v in 0..x.n_vertices() {
        let link = x.vertex_link(v)?;
        let b1 = link.restrict(b)?;
        let d1 = coboundary(&link.complex, &b1)?;
        let n2 = link.complex.n_cells(2);
        let b2 = Bits::from_indices(
            n2,
            (0..n2).filter(|&c| x.find(2, link.complex.cell(2, c)).is_some_and(|k| b.bits.get(k))),
        );
        sum_delta_b1 += d1.size() as u64;
        sum_b2 += b2.count_ones() as u64;
        split += d1.bits.xor(&b2).count_ones() as u64;
    }
    let lhs = 4 * coboundary(x, b)?.size() as u64;
    let constant_form = x.constant_c(2).map(|c| Equality::ints("sum_v |beta_v^2| = c*|beta|", sum_b2, c * b.size() as u64));
    Ok(VertexSplitReport {
        equality: Equality::ints("4|delta_2 beta| = sum_v |delta_1 beta_v^1 + beta_v^2|", lhs, split),
        sum_delta_b1,
        sum_b2,
        inequality_holds: split as i64 >= sum_delta_b1 as i64 - sum_b2 as i64,
        constant_form,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `||β|| > η`: any filling has norm at most 1.
    Large,
    /// Local descent reached `β' = 0`, so `β = δγ`.
    Filled,
    /// Local descent left a nonzero locally minimal coboundary of norm at most `η`.
    Residual,
}

#[derive(Clone, Debug, Serialize)]
pub struct MuSample {
    pub branch: Branch,
    pub beta_size: usize,
    pub beta_norm: Exact,
    pub alpha_size: usize,
    pub alpha_norm: Exact,
    pub bound: Exact,
    /// `δα = β`.
    pub fills: bool,
    pub bound_holds: bool,
    /// `||γ|| ≤ ((2−i)/(i+2))·m(i)·||β||` for the descent.
    pub gamma_bound_holds: Option<bool>,
    pub residual_norm: Option<Exact>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MuPipelineReport {
    pub dim: usize,
    pub eta: Exact,
    pub m: u64,
    /// `max(1/η, ((2−i)/(i+2))·m(i))`.
    pub mu: Exact,
    pub samples: Vec<MuSample>,
}

impl MuPipelineReport {
    pub fn all_fill(&self) -> bool {
        self.samples.iter().all(|s| s.fills)
    }

    pub fn all_bounded(&self) -> bool {
        self.samples.iter().all(|s| s.bound_holds)
    }
}

/// Runs the filling procedure on the 2-skeleton `Y` of a pure 3-complex for
/// coboundaries `β ∈ B^{i+1}(Y)`, `i ∈ {0, 1}`.
pub fn mu_pipeline_report(x: &Complex, i: usize, eta: &Rational, betas: &[Cochain], cfg: &SearchConfig) -> Result<MuPipelineReport> {
    if !eta.is_positive() {
        return Err(Error::BadParameter(format!("eta must be positive, got {eta}")));
    }
    if x.dim() != 3 || !x.is_pure() {
        return Err(Error::BadDimension("the filling pipeline needs a pure 3-complex".into()));
    }
    if i > 1 {
        return Err(Error::BadDimension(format!("filling pipeline for i in {{0, 1}}, got {i}")));
    }
    let y = x.skeleton(2);
    let m = x.vertex_stars(i).iter().map(Vec::len).max().unwrap_or(0) as u64;
    let c = Rational::new((2 - i as i64).into(), (i as i64 + 2).into()) * int(m);
    let mu = std::cmp::max(eta.recip(), c.clone());
    let solver = coboundary_map(&y, i)?.solver();
    let mut samples = Vec::with_capacity(betas.len());
    for b in betas {
        if b.dim != i + 1 || b.bits.len() != y.n_cells(i + 1) {
            return Err(Error::DimensionMismatch { expected: y.n_cells(i + 1), found: b.bits.len() });
        }
        let pre = solver.preimage(&b.bits).ok_or_else(|| Error::BadParameter("beta is not a coboundary".into()))?;
        let beta_norm = y.norm(b)?;
        let bound = &mu * &beta_norm;
        let (branch, alpha, gamma_bound_holds, residual_norm) = if beta_norm > *eta || b.is_zero() {
            let alpha = if b.is_zero() { y.zero_cochain(i) } else { Cochain::new(i, pre) };
            (Branch::Large, alpha, None, None)
        } else {
            let (bp, trace) = locally_minimize(&y, b, cfg)?;
            let gamma_ok = Some(trace.gamma_norm <= &c * &beta_norm);
            if bp.is_zero() {
                (Branch::Filled, trace.gamma, gamma_ok, None)
            } else {
                let rest = solver.preimage(&bp.bits).expect("descent stays in the class");
                let alpha = trace.gamma.add(&Cochain::new(i, rest));
                (Branch::Residual, alpha, gamma_ok, Some(Exact(y.norm(&bp)?)))
            }
        };
        let alpha_norm = y.norm(&alpha)?;
        let fills = coboundary(&y, &alpha)?.bits == b.bits;
        samples.push(MuSample {
            branch,
            beta_size: b.size(),
            beta_norm: Exact(beta_norm),
            alpha_size: alpha.size(),
            bound_holds: alpha_norm <= bound || (branch == Branch::Large && alpha_norm <= Rational::one()),
            alpha_norm: Exact(alpha_norm),
            bound: Exact(bound),
            fills,
            gamma_bound_holds,
            residual_norm,
        });
    }
    Ok(MuPipelineReport { dim: i, eta: Exact(eta.clone()), m, mu: Exact(mu), samples })
}

/// `count` seeded coboundaries `δ(random i-cochain)` on the 2-skeleton.
pub fn sample_coboundaries(x: &Complex, i: usize, count: usize, seed: u64) -> Result<Vec<Cochain>> {
    let y = x.skeleton(2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| coboundary(&y, &y.random_cochain(i, &mut rng))).collect()
}

/// Seeded random cochains.
pub fn sample_cochains(x: &Complex, i: usize, count: usize, seed: u64) -> Vec<Cochain> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| x.random_cochain(i, &mut rng)).collect()
}

/// `Σ t_i` check shared by every report.
pub fn total_matches(x: &Complex, r: &CountReport, k: usize) -> bool {
    r.t.iter().sum::<u64>() == x.n_cells(k) as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::buildings::spherical_building;
    use crate::generators::{complete_complex, cone, rp2_six_vertex};
    use crate::rational::ratio;

    #[test]
    fn empty_and_full_edge_cochains() {
        let x = rp2_six_vertex();
        let r = triangle_counts(&x, &x.zero_cochain(1)).unwrap();
        assert_eq!(r.t, vec![10, 0, 0, 0]);
        assert!(r.holds());
        let r = triangle_counts(&x, &x.full_cochain(1)).unwrap();
        assert_eq!(r.t[3], 10);
        assert_eq!(r.weighted(), 30);
        assert!(r.holds());
    }

    #[test]
    fn random_edge_cochains_on_rp2() {
        let x = rp2_six_vertex();
        for a in sample_cochains(&x, 1, 30, 3) {
            let r = triangle_counts(&x, &a).unwrap();
            assert!(r.holds(), "{r:?}");
            assert!(total_matches(&x, &r, 2));
        }
    }

    #[test]
    fn single_black_apex_edge_colored_form() {
        let b = spherical_building(4, 2).unwrap();
        let x = cone(&b.complex).unwrap();
        let types = b.vertex_types().with_apex();
        let apex = x.vertex_id(x.n_vertices() - 1);
        let one = (0..b.subspaces.len()).find(|&v| b.subspaces[v].dim() == 1).unwrap();
        let a = x.cochain_from_cells(1, [[x.vertex_id(one), apex]]).unwrap();
        let r = triangle_counts_3d(&x, &a, Some(&types)).unwrap();
        let c = r.colored.as_ref().unwrap();
        assert!(c.applicable && c.holds);
        assert_eq!(c.lhs.0, int(14));
        assert_eq!(c.rhs.0, int(2) * int(3) * ratio(7, 3));
        assert!(r.holds());
    }

    #[test]
    fn one_pyramid_on_complete_complex() {
        let x = complete_complex(5, 3).unwrap();
        let a = x.cochain_from_cells(2, [[0u32, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]).unwrap();
        let r = pyramid_counts(&x, &a).unwrap();
        assert_eq!(r.t[4], 1);
        // each triangle lies in two pyramids; the other four pyramids meet one triangle each
        assert_eq!(r.t[1], 4);
        assert!(r.holds(), "{r:?}");
    }

    #[test]
    fn vertex_split_single_triangle() {
        let x = complete_complex(5, 3).unwrap();
        let b = x.cochain_from_cells(2, [[0u32, 1, 2]]).unwrap();
        let r = vertex_split_check(&x, &b).unwrap();
        assert!(r.holds());
        assert_eq!(r.equality.lhs.0, int(8));
        let zero = vertex_split_check(&x, &x.zero_cochain(2)).unwrap();
        assert_eq!(zero.equality.lhs.0, int(0));
    }

    #[test]
    fn mu_pipeline_branches() {
        let x = complete_complex(6, 3).unwrap();
        let cfg = SearchConfig::default();
        assert!(matches!(mu_pipeline_report(&x, 0, &int(0), &[], &cfg), Err(Error::BadParameter(_))));
        let y = x.skeleton(2);
        let zero = y.zero_cochain(2);
        let r = mu_pipeline_report(&x, 1, &ratio(1, 10), &[zero], &cfg).unwrap();
        assert!(r.all_fill() && r.all_bounded());
        let e = y.cochain_from_cells(1, [[0u32, 1]]).unwrap();
        let b = coboundary(&y, &e).unwrap();
        let eta = y.norm(&b).unwrap() / int(2);
        let r = mu_pipeline_report(&x, 1, &eta, std::slice::from_ref(&b), &cfg).unwrap();
        assert_eq!(r.samples[0].branch, Branch::Large);
        assert!(r.all_fill() && r.all_bounded());
        let betas = sample_coboundaries(&x, 1, 5, 9).unwrap();
        let r = mu_pipeline_report(&x, 1, &int(1), &betas, &cfg).unwrap();
        assert!(r.all_fill(), "{r:?}");
    }
}
