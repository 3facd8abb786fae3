//! Minimal and locally minimal cochains, local descent, colored norms and
//! thin/thick classification.

use crate::bits::Bits;
use crate::buildings::{gaussian_binomial, Color, VertexTypes};
use crate::cohomology::{coboundary, coboundary_map, coboundary_space, cocycle_space, is_minimal, SearchConfig};
use crate::complex::{Cochain, Complex, LinkView};
use crate::error::{Error, Result};
use crate::rational::{int, le_rational_power, lt_rational_power, ratio, serialize_opt_rational, serialize_rational, Exponent, Rational};
use crate::sweep::{coset_min_exact, greedy_descent, Weigher};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// Whether `α_v` has least norm in `α_v + B^{i-1}(X_v)` for every vertex `v`.
/// In dimension zero this is plain minimality.
pub fn is_locally_minimal(x: &Complex, a: &Cochain, cfg: &SearchConfig) -> Result<bool> {
    if a.dim == 0 {
        let exact = SearchConfig { mode: crate::cohomology::Mode::Exact, ..cfg.clone() };
        return Ok(is_minimal(x, a, &exact)?.expect("exact mode decides"));
    }
    for v in 0..x.n_vertices() {
        let link = x.vertex_link(v)?;
        let av = link.restrict(a)?;
        if av.is_zero() {
            continue;
        }
        let (min, _) = link_coset_min(&link, &av, cfg)?;
        if min < link.complex.norm_units(&av) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn link_coset_min(link: &LinkView, av: &Cochain, cfg: &SearchConfig) -> Result<(u64, Bits)> {
    let b = coboundary_space(&link.complex, av.dim)?;
    if b.dim() > cfg.exact_threshold {
        return Err(Error::ThresholdExceeded { what: format!("link coset at vertex {:?}", link.base), size: b.dim(), threshold: cfg.exact_threshold });
    }
    let gens: Vec<Vec<Bits>> = b.basis().iter().map(|g| vec![g.clone()]).collect();
    Ok(coset_min_exact(&av.bits, &gens, &Weigher::new(link.complex.c_values(av.dim)), false))
}

/// Vertices (ids) at which `|α_v|` exceeds half of `|X_v(i-1)|`.
pub fn half_link_violations(x: &Complex, a: &Cochain) -> Vec<u32> {
    let stars = x.vertex_stars(a.dim);
    (0..x.n_vertices())
        .filter(|&v| 2 * stars[v].iter().filter(|&&k| a.bits.get(k)).count() > stars[v].len())
        .map(|v| x.vertex_id(v))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MoveKind {
    /// `δ` of a single `(i-1)`-cell through `v`.
    Single,
    /// A least-norm representative found by sweeping the link coset.
    Coset,
}

#[derive(Clone, Debug, Serialize)]
pub struct DescentStep {
    pub vertex: u32,
    pub kind: MoveKind,
    /// The `(i-1)`-cells `η̃` whose coboundary was added.
    pub eta: Vec<Vec<u32>>,
    pub units_before: u64,
    pub units_after: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct DescentTrace {
    pub dim: usize,
    pub steps: Vec<DescentStep>,
    /// Sum of every applied `η̃`, so that `α' = α + δγ`.
    pub raw_gamma: Cochain,
    /// Least-norm element of `raw_gamma + Z^{i-1}` found; also satisfies `α' = α + δγ`.
    pub gamma: Cochain,
    pub gamma_exact: bool,
    pub initial_units: u64,
    pub final_units: u64,
    /// Units are integers and every step lowers them, so this bounds the step count.
    pub step_bound: u64,
    #[serde(serialize_with = "serialize_rational")]
    pub norm_before: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub norm_after: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub raw_gamma_norm: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub gamma_norm: Rational,
    /// `((d+1-i)/(i+1))·m(i-1)·||α||`, when `m(i-1)` is defined.
    #[serde(serialize_with = "serialize_opt_rational")]
    pub gamma_bound: Option<Rational>,
}

impl DescentTrace {
    pub fn step_count(&self) -> usize {
        self.steps.len()
    }

    pub fn within_step_bound(&self) -> bool {
        self.steps.len() as u64 <= self.step_bound
    }

    pub fn gamma_bound_holds(&self) -> Option<bool> {
        self.gamma_bound.as_ref().map(|b| self.gamma_norm <= *b)
    }

    pub fn raw_gamma_bound_holds(&self) -> Option<bool> {
        self.gamma_bound.as_ref().map(|b| self.raw_gamma_norm <= *b)
    }
}

/// The constant `((d+1-i)/(i+1))·m(i-1)`.
pub fn gamma_constant(x: &Complex, i: usize) -> Option<Rational> {
    let d = x.dim() as i64;
    let m = x.m(i - 1)?;
    Some(ratio(d + 1 - i as i64, i as i64 + 1) * int(m))
}

/// Replaces `α` by a locally minimal `α' ≡ α (mod B^i)` by repeated local moves.
///
/// At each vertex the cheapest single-cell move `δ{ρ}` (`ρ ∋ v`) is tried
/// first; if none improves, the link coset of `α_v` is swept exhaustively.
pub fn locally_minimize(x: &Complex, a: &Cochain, cfg: &SearchConfig) -> Result<(Cochain, DescentTrace)> {
    let i = a.dim;
    if i == 0 || i > x.dim() {
        return Err(Error::BadDimension(format!("local descent needs 1 <= i <= {}, got {i}", x.dim())));
    }
    if !x.is_pure() {
        return Err(Error::NotPure);
    }
    if a.bits.len() != x.n_cells(i) {
        return Err(Error::DimensionMismatch { expected: x.n_cells(i), found: a.bits.len() });
    }
    let c = x.c_values(i);
    let prev_star = x.vertex_stars(i - 1);
    let mut links: Vec<Option<LinkView>> = vec![None; x.n_vertices()];
    let mut cur = a.clone();
    let mut units = x.norm_units(a);
    let initial_units = units;
    let mut raw_gamma = x.zero_cochain(i - 1);
    let mut steps = Vec::new();
    let apply = |cur: &mut Cochain, rho: usize| {
        for &t in x.cofaces(i - 1, rho) {
            cur.bits.flip(t as usize);
        }
    };
    loop {
        let mut changed = false;
        for v in 0..x.n_vertices() {
            loop {
                // best single move at v
                let mut best: Option<(i64, usize)> = None;
                for &rho in &prev_star[v] {
                    let delta: i64 = x
                        .cofaces(i - 1, rho)
                        .iter()
                        .map(|&t| if cur.bits.get(t as usize) { -(c[t as usize] as i64) } else { c[t as usize] as i64 })
                        .sum();
                    if delta < 0 && best.is_none_or(|(b, _)| delta < b) {
                        best = Some((delta, rho));
                    }
                }
                let before = units;
                let (kind, eta) = if let Some((delta, rho)) = best {
                    apply(&mut cur, rho);
                    units = (units as i64 + delta) as u64;
                    (MoveKind::Single, vec![rho])
                } else {
                    if links[v].is_none() {
                        links[v] = Some(x.vertex_link(v)?);
                    }
                    let link = links[v].as_ref().expect("cached link");
                    let av = link.restrict(&cur)?;
                    if av.is_zero() {
                        break;
                    }
                    let (min, rep) = link_coset_min(link, &av, cfg)?;
                    let u_av = link.complex.norm_units(&av);
                    if min >= u_av {
                        break;
                    }
                    let target = av.bits.xor(&rep);
                    let eta: Vec<usize> = if i == 1 {
                        vec![v]
                    } else {
                        let solver = coboundary_map(&link.complex, i - 2)?.solver();
                        let e = solver.preimage(&target).expect("link coboundary");
                        let lifted = link.lift(&Cochain::new(i - 2, e), x);
                        lifted.bits.iter_ones().collect()
                    };
                    for &rho in &eta {
                        apply(&mut cur, rho);
                    }
                    units -= u_av - min;
                    (MoveKind::Coset, eta)
                };
                debug_assert_eq!(units, x.norm_units(&cur));
                for &rho in &eta {
                    raw_gamma.bits.flip(rho);
                }
                steps.push(DescentStep {
                    vertex: x.vertex_id(v),
                    kind,
                    eta: eta.iter().map(|&rho| x.cell(i - 1, rho).to_vec()).collect(),
                    units_before: before,
                    units_after: units,
                });
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let (gamma, gamma_exact) = shortest_filling(x, &raw_gamma, cfg)?;
    let di = x.weight_denominator(i);
    let dp = x.weight_denominator(i - 1);
    let norm_before = ratio(initial_units, di);
    let gamma_bound = gamma_constant(x, i).map(|k| k * &norm_before);
    if gamma_bound.is_none() {
        log::warn!("m({}) is not constant; the gamma bound is not checked", i - 1);
    }
    let trace = DescentTrace {
        dim: i,
        steps,
        raw_gamma_norm: ratio(x.norm_units(&raw_gamma), dp),
        gamma_norm: ratio(x.norm_units(&gamma), dp),
        raw_gamma,
        gamma,
        gamma_exact,
        initial_units,
        final_units: units,
        step_bound: initial_units,
        norm_before,
        norm_after: ratio(units, di),
        gamma_bound,
    };
    Ok((cur, trace))
}

/// A short element of `γ + Z^{i-1}`; exact when `Z^{i-1}` is small enough.
fn shortest_filling(x: &Complex, gamma: &Cochain, cfg: &SearchConfig) -> Result<(Cochain, bool)> {
    let j = gamma.dim;
    let z = cocycle_space(x, j)?;
    let w = Weigher::new(x.c_values(j));
    let gens: Vec<Vec<Bits>> = z.basis().iter().map(|g| vec![g.clone()]).collect();
    if z.dim() <= cfg.exact_threshold.min(22) {
        let (_, v) = coset_min_exact(&gamma.bits, &gens, &w, true);
        return Ok((Cochain::new(j, v), true));
    }
    let flat: Vec<Bits> = z.basis().to_vec();
    let mut budget = cfg.budget.max(flat.len() * 4);
    let (_, v) = greedy_descent(gamma.bits.clone(), &flat, &w, &|_| true, &mut budget);
    Ok((Cochain::new(j, v), false))
}

/// Colored constants for an `r = 4` building over `F_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorConstants {
    pub q: u32,
    /// `Θ = (q²+q+1)/(q+1)`.
    pub theta: Rational,
    /// `Q = 2Θ(4 choose 1)_q + (4 choose 2)_q`.
    pub colored_budget: Rational,
    /// `2(q²+q+1)`: the 1-skeleton degree of a vertex in the two-dimensional setting.
    pub vertex_degree: u64,
}

impl ColorConstants {
    pub fn new(q: u32) -> Result<Self> {
        let q64 = q as u64;
        let theta = ratio(q64 * q64 + q64 + 1, q64 + 1);
        let g1 = gaussian_binomial(4, 1, q64)?;
        let g2 = gaussian_binomial(4, 2, q64)?;
        let colored_budget = int(2) * &theta * int(g1 as u64) + int(g2 as u64);
        Ok(ColorConstants { q, theta, colored_budget, vertex_degree: 2 * (q64 * q64 + q64 + 1) })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredNorm {
    pub theta: Rational,
    pub black: usize,
    pub white: usize,
    /// `↑α↑ = Θ|α^b| + |α^w|`.
    pub up_norm: Rational,
    pub colored_budget: Rational,
    /// `||α||` computed from the weights.
    pub norm: Rational,
    /// `((q+1)²/(6|X(3)|))·↑α↑`.
    pub predicted_norm: Rational,
}

impl ColoredNorm {
    pub fn norm_relation_holds(&self) -> bool {
        self.norm == self.predicted_norm
    }
}

fn edge_colors(x: &Complex, types: &VertexTypes) -> Result<Vec<Color>> {
    if types.types.len() != x.n_vertices() {
        return Err(Error::NotAnnotated(format!("{} vertex types for {} vertices", types.types.len(), x.n_vertices())));
    }
    (0..x.n_cells(1))
        .map(|k| {
            let vs = x.vertex_indices(1, k);
            types.edge_color(vs[0], vs[1])
        })
        .collect()
}

pub fn colored_norms(x: &Complex, types: &VertexTypes, a: &Cochain) -> Result<ColoredNorm> {
    if a.dim != 1 {
        return Err(Error::DimensionMismatch { expected: 1, found: a.dim });
    }
    let colors = edge_colors(x, types)?;
    let k = ColorConstants::new(types.q)?;
    let black = a.bits.iter_ones().filter(|&e| colors[e] == Color::Black).count();
    let white = a.size() - black;
    let up_norm = &k.theta * int(black as u64) + int(white as u64);
    let q1 = types.q as u64 + 1;
    let predicted_norm = ratio(q1 * q1, 6 * x.n_cells(x.dim()) as u64) * &up_norm;
    Ok(ColoredNorm { theta: k.theta, black, white, up_norm, colored_budget: k.colored_budget, norm: x.norm(a)?, predicted_norm })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    /// Vertices of a 2-complex against an edge cochain.
    Vertex2d,
    /// Vertices of a colored 3-complex against an edge cochain, in `↑·↑`.
    Vertex3dColored,
    /// Edges of a 3-complex against a triangle cochain.
    Edge3d,
    /// Vertices of a colored 3-complex against a triangle cochain.
    Vertex3d,
}

impl std::str::FromStr for Level {
    type Err = Error;
    fn from_str(s: &str) -> Result<Level> {
        match s {
            "vertex2d" => Ok(Level::Vertex2d),
            "vertex3d_colored" => Ok(Level::Vertex3dColored),
            "edge3d" => Ok(Level::Edge3d),
            "vertex3d" => Ok(Level::Vertex3d),
            _ => Err(Error::BadParameter(format!("unknown level {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThinThickParams {
    pub epsilon: Rational,
    pub edge_exponent: Exponent,
    pub black_exponent: Exponent,
    pub white_exponent: Exponent,
    pub thick_vertex_exponent: Exponent,
    /// Overrides the per-vertex degree used as `Q` at the `vertex2d` level.
    pub degree: Option<u64>,
}

impl Default for ThinThickParams {
    fn default() -> Self {
        ThinThickParams {
            epsilon: ratio(1, 10),
            edge_exponent: Exponent::new(9, 10),
            black_exponent: Exponent::new(11, 4),
            white_exponent: Exponent::new(37, 10),
            thick_vertex_exponent: Exponent::new(91, 20),
            degree: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ThinThickReport {
    pub level: Level,
    /// Cells (vertices or edges) touched by `α`, split by class.
    pub thin: Vec<Vec<u32>>,
    pub thick: Vec<Vec<u32>>,
    #[serde(serialize_with = "serialize_rational")]
    pub r: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub s: Rational,
    /// The value `r + s` must equal.
    #[serde(serialize_with = "serialize_rational")]
    pub expected_total: Rational,
    /// At the `vertex3d` level: thick vertices with `|α_v| >= q^e/2`, out of all thick ones.
    pub thick_vertex_lower_bound: Option<(usize, usize)>,
}

impl ThinThickReport {
    pub fn total_holds(&self) -> bool {
        &self.r + &self.s == self.expected_total
    }
}

pub fn classify_thin_thick(
    x: &Complex,
    a: &Cochain,
    level: Level,
    types: Option<&VertexTypes>,
    params: &ThinThickParams,
) -> Result<ThinThickReport> {
    if params.epsilon < Rational::zero() || params.epsilon >= int(1) {
        return Err(Error::BadParameter("epsilon must lie in [0, 1)".into()));
    }
    let need_types = || types.ok_or_else(|| Error::NotAnnotated(format!("{level:?} needs vertex types")));
    let want = |dim: usize, d: usize| -> Result<()> {
        if a.dim != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: a.dim });
        }
        if x.dim() != d {
            return Err(Error::BadDimension(format!("{level:?} needs a {d}-complex, got dimension {}", x.dim())));
        }
        Ok(())
    };
    let one_minus = int(1) - &params.epsilon;
    let mut thin = Vec::new();
    let mut thick = Vec::new();
    let mut r = Rational::zero();
    let mut s = Rational::zero();
    let mut lower = None;
    let expected_total;
    match level {
        Level::Vertex2d | Level::Vertex3dColored => {
            if level == Level::Vertex2d {
                want(1, 2)?;
            } else {
                want(1, 3)?;
            }
            let colors = if level == Level::Vertex3dColored { Some(edge_colors(x, need_types()?)?) } else { None };
            let k = if level == Level::Vertex3dColored { Some(ColorConstants::new(need_types()?.q)?) } else { None };
            let weight = |e: usize| -> Rational {
                match (&colors, &k) {
                    (Some(c), Some(k)) if c[e] == Color::Black => k.theta.clone(),
                    _ => int(1),
                }
            };
            let stars = x.vertex_stars(1);
            for v in 0..x.n_vertices() {
                let mine: Vec<usize> = stars[v].iter().copied().filter(|&e| a.bits.get(e)).collect();
                if mine.is_empty() {
                    continue;
                }
                let size: Rational = mine.iter().map(|&e| weight(e)).sum();
                let budget = match &k {
                    Some(k) => k.colored_budget.clone(),
                    None => int(params.degree.unwrap_or(stars[v].len() as u64)),
                };
                let id = vec![x.vertex_id(v)];
                if size < &one_minus * budget / int(2) {
                    r += size;
                    thin.push(id);
                } else {
                    s += size;
                    thick.push(id);
                }
            }
            let total: Rational = a.bits.iter_ones().map(weight).sum();
            expected_total = int(2) * total;
        }
        Level::Edge3d => {
            want(2, 3)?;
            let counts = edge_counts(x, a);
            for e in 0..x.n_cells(1) {
                if counts[e] == 0 {
                    continue;
                }
                let link_size = x.cofaces(1, e).len() as u64;
                let p = params.edge_exponent;
                let id = x.cell(1, e).to_vec();
                if le_rational_power(&int(counts[e] as u64), link_size, p.num, p.den) {
                    r += int(counts[e] as u64);
                    thin.push(id);
                } else {
                    s += int(counts[e] as u64);
                    thick.push(id);
                }
            }
            expected_total = int(3 * a.size() as u64);
        }
        Level::Vertex3d => {
            want(2, 3)?;
            let t = need_types()?;
            let colors = edge_colors(x, t)?;
            let q = t.q as u64;
            let counts = edge_counts(x, a);
            let mut thick_black = vec![0u64; x.n_vertices()];
            let mut thick_white = vec![0u64; x.n_vertices()];
            for e in 0..x.n_cells(1) {
                let p = params.edge_exponent;
                if counts[e] == 0 || le_rational_power(&int(counts[e] as u64), x.cofaces(1, e).len() as u64, p.num, p.den) {
                    continue;
                }
                for v in x.vertex_indices(1, e) {
                    match colors[e] {
                        Color::Black => thick_black[v] += 1,
                        Color::White => thick_white[v] += 1,
                    }
                }
            }
            let tri_stars = x.vertex_stars(2);
            let (bx, wx, tx) = (params.black_exponent, params.white_exponent, params.thick_vertex_exponent);
            let mut satisfied = 0;
            for v in 0..x.n_vertices() {
                let size = tri_stars[v].iter().filter(|&&k| a.bits.get(k)).count() as u64;
                if size == 0 {
                    continue;
                }
                let id = vec![x.vertex_id(v)];
                let is_thin = lt_rational_power(&int(thick_black[v]), q, bx.num, bx.den)
                    && lt_rational_power(&int(thick_white[v]), q, wx.num, wx.den);
                if is_thin {
                    r += int(size);
                    thin.push(id);
                } else {
                    s += int(size);
                    thick.push(id);
                    if !lt_rational_power(&int(2 * size), q, tx.num, tx.den) {
                        satisfied += 1;
                    }
                }
            }
            lower = Some((satisfied, thick.len()));
            expected_total = int(3 * a.size() as u64);
        }
    }
    Ok(ThinThickReport { level, thin, thick, r, s, expected_total, thick_vertex_lower_bound: lower })
}

/// `|α_e|` for every edge, with `α` a triangle cochain.
fn edge_counts(x: &Complex, a: &Cochain) -> Vec<usize> {
    let mut counts = vec![0usize; x.n_cells(1)];
    for k in a.bits.iter_ones() {
        for &e in x.faces_of(2, k) {
            counts[e as usize] += 1;
        }
    }
    counts
}

/// `Σ_v ||α_v||` with every `α_v` normed in its own link.
pub fn link_norm_sum(x: &Complex, a: &Cochain) -> Result<Rational> {
    let mut total = Rational::zero();
    for v in 0..x.n_vertices() {
        let link = x.vertex_link(v)?;
        total += link.complex.norm(&link.restrict(a)?)?;
    }
    Ok(total)
}

/// Exhaustive search for the least `||γ||`, `γ ∈ C^{i-1}`, such that
/// `α + δγ` is locally minimal and no larger than `α`.
pub fn least_admissible_gamma(x: &Complex, a: &Cochain, cfg: &SearchConfig) -> Result<Option<(Cochain, Rational)>> {
    let i = a.dim;
    if i == 0 {
        return Err(Error::BadDimension("admissible gamma needs i >= 1".into()));
    }
    let n = x.n_cells(i - 1);
    let limit = cfg.exact_threshold.min(22);
    if n > limit {
        return Err(Error::ThresholdExceeded { what: format!("C^{}", i - 1), size: n, threshold: limit });
    }
    let delta = coboundary_map(x, i - 1)?;
    let w_gamma = Weigher::new(x.c_values(i - 1));
    let w_alpha = Weigher::new(x.c_values(i));
    let cap = w_alpha.units(&a.bits);
    let mut gamma = Bits::zeros(n);
    let mut image = a.bits.clone();
    let mut best: Option<(u64, Bits)> = None;
    for step in 0u64..1 << n {
        if step > 0 {
            let j = step.trailing_zeros() as usize;
            gamma.flip(j);
            image.xor_assign(&delta.columns()[j]);
        }
        let g = w_gamma.units(&gamma);
        if best.as_ref().is_some_and(|(b, w)| g > *b || (g == *b && gamma.lex_cmp(w).is_ge())) {
            continue;
        }
        if w_alpha.units(&image) > cap || !is_locally_minimal(x, &Cochain::new(i, image.clone()), cfg)? {
            continue;
        }
        best = Some((g, gamma.clone()));
    }
    Ok(best.map(|(u, g)| (Cochain::new(i - 1, g), ratio(u, x.weight_denominator(i - 1)))))
}

/// `α + α'` lies in `B^i` and `α' = α + δγ`.
pub fn descent_preserves_class(x: &Complex, a: &Cochain, out: &Cochain, trace: &DescentTrace) -> Result<bool> {
    let diff = a.add(out);
    let b = coboundary_space(x, a.dim)?;
    let dg = coboundary(x, &trace.gamma)?;
    let dr = coboundary(x, &trace.raw_gamma)?;
    Ok(b.contains(&diff.bits) && dg == diff && dr == diff)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::buildings::spherical_building;
    use crate::generators::{complete_complex, cone, rp2_six_vertex, sphere_boundary};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn empty_and_coboundary_cases() {
        let x = complete_complex(6, 2).unwrap();
        let cfg = SearchConfig::exact();
        let e = x.zero_cochain(1);
        assert!(is_locally_minimal(&x, &e, &cfg).unwrap());
        let (out, trace) = locally_minimize(&x, &e, &cfg).unwrap();
        assert!(out.is_zero() && trace.step_count() == 0 && trace.gamma.is_zero());
        let star = coboundary(&x, &x.cochain_from_cells(0, [[2u32]]).unwrap()).unwrap();
        assert!(!is_locally_minimal(&x, &star, &cfg).unwrap());
        let (out, trace) = locally_minimize(&x, &star, &cfg).unwrap();
        assert!(out.is_zero());
        assert_eq!(trace.step_count(), 1);
        assert!(descent_preserves_class(&x, &star, &out, &trace).unwrap());
    }

    #[test]
    fn more_than_half_a_link_is_not_locally_minimal() {
        let x = complete_complex(6, 2).unwrap();
        // three of the five edges at vertex 0
        let a = x.cochain_from_cells(1, [[0u32, 1], [0, 2], [0, 3]]).unwrap();
        assert_eq!(half_link_violations(&x, &a), vec![0]);
        assert!(!is_locally_minimal(&x, &a, &SearchConfig::exact()).unwrap());
    }

    #[test]
    fn random_descent_on_rp2() {
        let x = rp2_six_vertex();
        let cfg = SearchConfig::exact();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let a = x.random_cochain(1, &mut rng);
            let (out, trace) = locally_minimize(&x, &a, &cfg).unwrap();
            assert!(is_locally_minimal(&x, &out, &cfg).unwrap());
            assert!(trace.within_step_bound());
            assert!(descent_preserves_class(&x, &a, &out, &trace).unwrap());
            assert!(half_link_violations(&x, &out).is_empty());
        }
    }

    #[test]
    fn second_dimension_descent() {
        let x = sphere_boundary(3);
        let cfg = SearchConfig::exact();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let a = x.random_cochain(2, &mut rng);
            let (out, trace) = locally_minimize(&x, &a, &cfg).unwrap();
            assert!(is_locally_minimal(&x, &out, &cfg).unwrap());
            assert!(descent_preserves_class(&x, &a, &out, &trace).unwrap());
        }
    }

    #[test]
    fn colored_single_edges() {
        let b = spherical_building(4, 2).unwrap();
        let x = cone(&b.complex).unwrap();
        let types = b.vertex_types().with_apex();
        let apex = x.vertex_id(x.n_vertices() - 1);
        // id 0 is a line of F_2^4, so the apex edge is black
        let black = x.cochain_from_cells(1, [[0u32, apex]]).unwrap();
        let n = colored_norms(&x, &types, &black).unwrap();
        assert_eq!(n.up_norm, ratio(7, 3));
        assert!(n.norm_relation_holds());
        let w = (0..b.subspaces.len()).find(|&k| b.subspaces[k].dim() == 2).unwrap() as u32;
        let both = x.cochain_from_cells(1, [[0u32, apex], [w, apex]]).unwrap();
        let n = colored_norms(&x, &types, &both).unwrap();
        assert_eq!(n.up_norm, ratio(10, 3));
        assert!(n.norm_relation_holds());
        assert_eq!(n.colored_budget, ratio(2 * 7 * 15, 3) + int(35));
        assert!(colored_norms(&x, &types, &x.zero_cochain(1)).unwrap().up_norm.is_zero());
    }

    #[test]
    fn partition_totals() {
        let x = complete_complex(6, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let p = ThinThickParams::default();
        for _ in 0..20 {
            let a = x.random_cochain(1, &mut rng);
            let rep = classify_thin_thick(&x, &a, Level::Vertex2d, None, &p).unwrap();
            assert!(rep.total_holds());
        }
        let e = classify_thin_thick(&x, &x.zero_cochain(1), Level::Vertex2d, None, &p).unwrap();
        assert!(e.r.is_zero() && e.s.is_zero() && e.thick.is_empty());
        let y = complete_complex(6, 3).unwrap();
        let full = y.full_cochain(2);
        let rep = classify_thin_thick(&y, &full, Level::Edge3d, None, &p).unwrap();
        assert!(rep.total_holds());
        assert_eq!(rep.thick.len(), y.n_cells(1));
    }
}
