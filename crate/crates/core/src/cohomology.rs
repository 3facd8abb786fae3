//! Coboundary maps, cohomology, and the expansion invariants ε, ε̃, μ and
//! the cohomological systole.
//!
//! Cohomology is reduced in degree zero: `B^0` is spanned by the all-ones
//! cochain. Every quantity is computed on integer units (`Σ c(σ)`) and turned
//! into an exact rational at the end.

use crate::bits::Bits;
use crate::complex::{Cochain, Complex};
use crate::error::{Error, Result};
use crate::gf2::{LinearMap, Span};
use crate::rational::{ratio, Rational, Value};
use crate::sweep::{coset_min_exact, greedy_descent, walk, Best, Ratio, Weigher};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::cmp::Reverse;

pub const DEFAULT_EXACT_THRESHOLD: usize = 26;
pub const DEFAULT_BUDGET: usize = 2000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Heuristic,
    Auto,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "exact" => Ok(Mode::Exact),
            "heuristic" => Ok(Mode::Heuristic),
            "auto" => Ok(Mode::Auto),
            _ => Err(Error::BadParameter(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub mode: Mode,
    /// Largest number of generators enumerated exhaustively.
    pub exact_threshold: usize,
    /// Number of candidate evaluations allowed to heuristics.
    pub budget: usize,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { mode: Mode::Auto, exact_threshold: DEFAULT_EXACT_THRESHOLD, budget: DEFAULT_BUDGET, seed: 0 }
    }
}

impl SearchConfig {
    pub fn exact() -> Self {
        SearchConfig { mode: Mode::Exact, ..Default::default() }
    }

    pub fn heuristic(seed: u64) -> Self {
        SearchConfig { mode: Mode::Heuristic, seed, ..Default::default() }
    }

    /// Whether to enumerate a space of dimension `size`.
    fn use_exact(&self, what: &str, size: usize) -> Result<bool> {
        let fits = size <= self.exact_threshold && size < 64;
        match self.mode {
            Mode::Exact if fits => Ok(true),
            Mode::Exact => Err(Error::ThresholdExceeded { what: what.into(), size, threshold: self.exact_threshold }),
            Mode::Heuristic => Ok(false),
            Mode::Auto => Ok(fits),
        }
    }

    fn rng(&self, tag: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }
}

/// How a reported value relates to the true one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Bound {
    Exact,
    Upper,
    Lower,
    Estimate,
}

/// `δ_i : C^i -> C^{i+1}` for `i < d`.
pub fn coboundary_map(x: &Complex, i: usize) -> Result<LinearMap> {
    if i >= x.dim() {
        return Err(Error::TopDimension(x.dim()));
    }
    let m = x.n_cells(i + 1);
    let cols = (0..x.n_cells(i)).map(|k| Bits::from_indices(m, x.cofaces(i, k).iter().map(|&t| t as usize))).collect();
    Ok(LinearMap::from_columns(m, cols))
}

/// `δ_{-1} : F2 -> C^0`, sending 1 to the all-ones cochain.
pub fn augmentation_map(x: &Complex) -> LinearMap {
    LinearMap::from_columns(x.n_vertices(), vec![Bits::ones(x.n_vertices())])
}

pub fn coboundary(x: &Complex, a: &Cochain) -> Result<Cochain> {
    if a.dim >= x.dim() {
        return Err(Error::TopDimension(x.dim()));
    }
    if a.bits.len() != x.n_cells(a.dim) {
        return Err(Error::DimensionMismatch { expected: x.n_cells(a.dim), found: a.bits.len() });
    }
    let mut out = Bits::zeros(x.n_cells(a.dim + 1));
    for k in a.bits.iter_ones() {
        for &t in x.cofaces(a.dim, k) {
            out.flip(t as usize);
        }
    }
    Ok(Cochain::new(a.dim + 1, out))
}

/// `B^i`, with `B^0` the constants.
pub fn coboundary_space(x: &Complex, i: usize) -> Result<Span> {
    if i > x.dim() {
        return Err(Error::BadDimension(format!("B^{i} of a {}-complex", x.dim())));
    }
    Ok(if i == 0 { augmentation_map(x).image() } else { coboundary_map(x, i - 1)?.image() })
}

/// `Z^i = Ker δ_i`, all of `C^d` in the top dimension.
pub fn cocycle_space(x: &Complex, i: usize) -> Result<Span> {
    if i > x.dim() {
        return Err(Error::BadDimension(format!("Z^{i} of a {}-complex", x.dim())));
    }
    if i == x.dim() {
        return Ok(Span::full(x.n_cells(i)));
    }
    let solver = coboundary_map(x, i)?.solver();
    Ok(Span::from_vectors(x.n_cells(i), solver.kernel()))
}

pub fn cohomology_dim(x: &Complex, i: usize) -> Result<usize> {
    Ok(cocycle_space(x, i)?.dim() - coboundary_space(x, i)?.dim())
}

/// Coboundaries of single `(i-1)`-cells (the constants for `i = 0`).
fn local_coboundaries(x: &Complex, i: usize) -> Result<Vec<Bits>> {
    if i == 0 {
        return Ok(vec![Bits::ones(x.n_vertices())]);
    }
    Ok(coboundary_map(x, i - 1)?.columns().iter().filter(|c| !c.is_zero()).cloned().collect())
}

fn require_pure(x: &Complex) -> Result<()> {
    if x.is_pure() {
        Ok(())
    } else {
        Err(Error::NotPure)
    }
}

fn weigher(x: &Complex, i: usize) -> Weigher {
    if i > x.dim() {
        Weigher::new(&[])
    } else {
        Weigher::new(x.c_values(i))
    }
}

fn norm_from_units(x: &Complex, i: usize, units: u64) -> Rational {
    ratio(units, x.weight_denominator(i))
}

fn min_weight(x: &Complex, i: usize) -> Rational {
    let c = x.c_values(i).iter().copied().filter(|&c| c > 0).min().unwrap_or(0);
    norm_from_units(x, i, c)
}

#[derive(Clone, Debug)]
pub struct CosetMin {
    pub units: u64,
    pub norm: Rational,
    pub witness: Cochain,
    pub exact: bool,
}

/// `||[α]||`: the least norm in `α + B^i`, with a minimizing witness.
pub fn coset_min_norm(x: &Complex, a: &Cochain, cfg: &SearchConfig) -> Result<CosetMin> {
    require_pure(x)?;
    if a.bits.len() != x.n_cells(a.dim) {
        return Err(Error::DimensionMismatch { expected: x.n_cells(a.dim), found: a.bits.len() });
    }
    let b = coboundary_space(x, a.dim)?;
    let w = weigher(x, a.dim);
    let (units, bits, exact) = if cfg.use_exact("coset", b.dim())? {
        let gens = single(b.basis());
        let (u, v) = coset_min_exact(&a.bits, &gens, &w, true);
        (u, v, true)
    } else {
        let gens = local_coboundaries(x, a.dim)?;
        let (u, v) = coset_min_heuristic(&a.bits, &gens, &w, cfg.budget, &mut cfg.rng(1 + a.dim as u64))?;
        (u, v, false)
    };
    Ok(CosetMin { units, norm: norm_from_units(x, a.dim, units), witness: Cochain::new(a.dim, bits), exact })
}

fn single(v: &[Bits]) -> Vec<Vec<Bits>> {
    v.iter().map(|g| vec![g.clone()]).collect()
}

/// Greedy descent from `v`, then seeded random restarts within the budget.
fn coset_min_heuristic(v: &Bits, gens: &[Bits], w: &Weigher, budget: usize, rng: &mut ChaCha8Rng) -> Result<(u64, Bits)> {
    if budget == 0 {
        return Err(Error::BudgetExceeded);
    }
    let mut left = budget;
    let accept = |_: &Bits| true;
    let (mut best_u, mut best) = greedy_descent(v.clone(), gens, w, &accept, &mut left);
    while left > gens.len() {
        let mut start = v.clone();
        for g in gens {
            if rng.random::<bool>() {
                start.xor_assign(g);
            }
        }
        let (u, c) = greedy_descent(start, gens, w, &accept, &mut left);
        if u < best_u || (u == best_u && c < best) {
            best_u = u;
            best = c;
        }
    }
    Ok((best_u, best))
}

/// `Some(true)` when `α` has least norm in its class; `None` when a heuristic
/// search found nothing better but could not certify minimality.
pub fn is_minimal(x: &Complex, a: &Cochain, cfg: &SearchConfig) -> Result<Option<bool>> {
    let m = coset_min_norm(x, a, cfg)?;
    let u = x.norm_units(a);
    Ok(if m.units < u {
        Some(false)
    } else if m.exact {
        Some(true)
    } else {
        None
    })
}

/// One computed invariant.
#[derive(Clone, Debug, Serialize)]
pub struct Invariant {
    pub dim: usize,
    pub name: &'static str,
    pub value: Value,
    pub exact: bool,
    pub bound: Bound,
    /// The minimizing (or maximizing) cochain.
    pub witness: Option<Cochain>,
    /// For μ: a least-norm filling of the witness.
    pub filling: Option<Cochain>,
    /// A certified lower bound (upper bound for μ), when one is known.
    #[serde(serialize_with = "crate::rational::serialize_opt_rational")]
    pub certified: Option<Rational>,
}

impl Invariant {
    fn vacuous(dim: usize, name: &'static str) -> Self {
        Invariant { dim, name, value: Value::Vacuous, exact: true, bound: Bound::Exact, witness: None, filling: None, certified: None }
    }
}

/// Minimum over nonzero classes of `C^i / quotient` of `units(δα) / min units in α + quotient`.
fn ratio_sweep_exact(x: &Complex, i: usize, quotient: &Span) -> Option<(Ratio, Bits)> {
    let n = x.n_cells(i);
    let wi = weigher(x, i);
    let wn = weigher(x, i + 1);
    let m = x.n_cells(i + 1);
    let delta = |e: &Bits| -> Bits {
        let mut out = Bits::zeros(m);
        for k in e.iter_ones() {
            for &t in x.cofaces(i, k) {
                out.flip(t as usize);
            }
        }
        out
    };
    let outer: Vec<Vec<Bits>> = quotient.complement_basis().into_iter().map(|e| {
        let d = delta(&e);
        vec![e, d]
    }).collect();
    if outer.is_empty() {
        return None;
    }
    let inner = single(quotient.basis());
    let par_outer = outer.len() >= inner.len();
    let best = walk(
        &[Bits::zeros(n), Bits::zeros(m)],
        &outer,
        par_outer,
        Best::new,
        |b: &mut Best<Ratio>, cur, sel| {
            if sel == 0 {
                return;
            }
            let ud = wn.units(&cur[1]);
            let (um, wit) = coset_min_exact(&cur[0], &inner, &wi, !par_outer);
            b.offer(Ratio { num: ud, den: um }, || vec![wit]);
        },
        Best::merge,
    );
    best.item.map(|(r, mut w)| (r, w.swap_remove(0)))
}

struct HeuristicRatio {
    ratio: Ratio,
    witness: Bits,
    inner_exact: bool,
}

/// Seeded search for a small ratio `units(δα) / ||α + quotient||` over `α ∉ quotient`.
fn ratio_search_heuristic(x: &Complex, i: usize, quotient: &Span, local: &[Bits], cfg: &SearchConfig, tag: u64) -> Result<Option<HeuristicRatio>> {
    if cfg.budget == 0 {
        return Err(Error::BudgetExceeded);
    }
    let n = x.n_cells(i);
    if quotient.dim() == n {
        return Ok(None);
    }
    let wi = weigher(x, i);
    let wn = weigher(x, i + 1);
    let mut rng = cfg.rng(tag);
    let inner_exact = quotient.dim() <= cfg.exact_threshold.min(22);
    let inner_basis = single(quotient.basis());
    let inner_budget = (8 * local.len()).max(64);
    let delta_units = |a: &Bits| -> u64 {
        if i >= x.dim() {
            return 0;
        }
        let mut out = Bits::zeros(x.n_cells(i + 1));
        for k in a.iter_ones() {
            for &t in x.cofaces(i, k) {
                out.flip(t as usize);
            }
        }
        wn.units(&out)
    };
    let mut inner_rng = cfg.rng(tag ^ 0xABCD);
    let mut eval = |a: &Bits| -> Option<(Ratio, Bits)> {
        if quotient.contains(a) {
            return None;
        }
        let (um, rep) = if inner_exact {
            coset_min_exact(a, &inner_basis, &wi, false)
        } else {
            coset_min_heuristic(a, local, &wi, inner_budget, &mut inner_rng).expect("positive budget")
        };
        Some((Ratio { num: delta_units(a), den: um }, rep))
    };
    let mut best: Best<Ratio> = Best::new();
    let mut left = cfg.budget;
    for k in 0..n {
        if left <= cfg.budget / 2 {
            break;
        }
        left -= 1;
        if let Some((r, w)) = eval(&Bits::from_indices(n, [k])) {
            best.offer(r, || vec![w]);
        }
    }
    while left > cfg.budget / 4 {
        left -= 1;
        let p: f64 = if rng.random::<bool>() { 0.5 } else { 0.1 };
        let a = Bits::from_indices(n, (0..n).filter(|_| rng.random_bool(p)));
        if let Some((r, w)) = eval(&a) {
            best.offer(r, || vec![w]);
        }
    }
    // single-cell flips from the incumbent
    while let Some((r0, w0)) = best.item.clone() {
        let mut improved = false;
        for k in 0..n {
            if left == 0 {
                break;
            }
            left -= 1;
            let mut a = w0[0].clone();
            a.flip(k);
            if let Some((r, w)) = eval(&a) {
                if r < r0 {
                    best.offer(r, || vec![w]);
                    improved = true;
                    break;
                }
            }
        }
        if !improved || left == 0 {
            break;
        }
    }
    Ok(best.item.map(|(ratio, mut w)| HeuristicRatio { ratio, witness: w.swap_remove(0), inner_exact }))
}

fn scale_ratio(x: &Complex, i: usize, r: Ratio) -> Rational {
    // (num / D_{i+1}) / (den / D_i)
    let di = x.weight_denominator(i);
    let dn = if i < x.dim() { x.weight_denominator(i + 1) } else { 1 };
    Rational::new((r.num as u128 * di as u128).into(), (r.den as u128 * dn as u128).into())
}

/// `ε_i = min_{α ∉ B^i} ||δα|| / ||[α]||`.
pub fn epsilon(x: &Complex, i: usize, cfg: &SearchConfig) -> Result<Invariant> {
    require_pure(x)?;
    let b = coboundary_space(x, i)?;
    let z = cocycle_space(x, i)?;
    let n = x.n_cells(i);
    if b.dim() == n {
        return Ok(Invariant::vacuous(i, "epsilon"));
    }
    if z.dim() > b.dim() {
        // a nontrivial cocycle has ratio zero
        let rep = z.basis().iter().find(|v| !b.contains(v)).expect("H^i nonzero");
        let rep = b.reduce(rep);
        let w = if b.dim() <= cfg.exact_threshold { coset_min_exact(&rep, &single(b.basis()), &weigher(x, i), true).1 } else { rep };
        return Ok(Invariant {
            dim: i,
            name: "epsilon",
            value: Value::Finite(Rational::zero()),
            exact: true,
            bound: Bound::Exact,
            witness: Some(Cochain::new(i, w)),
            filling: None,
            certified: Some(Rational::zero()),
        });
    }
    // H^i = 0 here, so δα ≠ 0 for α ∉ B^i and ||[α]|| ≤ 1
    let certified = (i < x.dim()).then(|| min_weight(x, i + 1));
    if cfg.use_exact("epsilon", n)? {
        let (r, w) = ratio_sweep_exact(x, i, &b).expect("nonempty quotient");
        return Ok(Invariant {
            dim: i,
            name: "epsilon",
            value: Value::Finite(scale_ratio(x, i, r)),
            exact: true,
            bound: Bound::Exact,
            witness: Some(Cochain::new(i, w)),
            filling: None,
            certified,
        });
    }
    let local = local_coboundaries(x, i)?;
    let h = ratio_search_heuristic(x, i, &b, &local, cfg, 0x100 + i as u64)?.expect("nonempty quotient");
    Ok(Invariant {
        dim: i,
        name: "epsilon",
        value: Value::Finite(scale_ratio(x, i, h.ratio)),
        exact: false,
        bound: if h.inner_exact { Bound::Upper } else { Bound::Estimate },
        witness: Some(Cochain::new(i, h.witness)),
        filling: None,
        certified,
    })
}

/// `ε̃_i = min_{α ∉ Z^i} ||δα|| / ||α + Z^i||`.
pub fn epsilon_tilde(x: &Complex, i: usize, cfg: &SearchConfig) -> Result<Invariant> {
    require_pure(x)?;
    let z = cocycle_space(x, i)?;
    let n = x.n_cells(i);
    if z.dim() == n {
        return Ok(Invariant::vacuous(i, "epsilon_tilde"));
    }
    let certified = Some(min_weight(x, i + 1));
    if cfg.use_exact("epsilon_tilde", n)? {
        let (r, w) = ratio_sweep_exact(x, i, &z).expect("nonempty quotient");
        return Ok(Invariant {
            dim: i,
            name: "epsilon_tilde",
            value: Value::Finite(scale_ratio(x, i, r)),
            exact: true,
            bound: Bound::Exact,
            witness: Some(Cochain::new(i, w)),
            filling: None,
            certified,
        });
    }
    let mut local = local_coboundaries(x, i)?;
    local.extend(z.basis().iter().cloned());
    let h = ratio_search_heuristic(x, i, &z, &local, cfg, 0x200 + i as u64)?.expect("nonempty quotient");
    Ok(Invariant {
        dim: i,
        name: "epsilon_tilde",
        value: Value::Finite(scale_ratio(x, i, h.ratio)),
        exact: false,
        bound: if h.inner_exact { Bound::Upper } else { Bound::Estimate },
        witness: Some(Cochain::new(i, h.witness)),
        filling: None,
        certified,
    })
}

/// `μ_i = max_{0 ≠ β ∈ B^{i+1}} min{||α|| : δα = β} / ||β||`.
pub fn mu(x: &Complex, i: usize, cfg: &SearchConfig) -> Result<Invariant> {
    require_pure(x)?;
    if i >= x.dim() {
        return Ok(Invariant::vacuous(i, "mu"));
    }
    let delta = coboundary_map(x, i)?;
    let image = delta.image();
    if image.dim() == 0 {
        return Ok(Invariant::vacuous(i, "mu"));
    }
    let z = cocycle_space(x, i)?;
    let n = x.n_cells(i);
    let certified = Some(Rational::one() / min_weight(x, i + 1));
    if cfg.use_exact("mu", n)? {
        let solver = delta.solver();
        let outer: Vec<Vec<Bits>> =
            image.basis().iter().map(|b| vec![b.clone(), solver.preimage(b).expect("image element")]).collect();
        let inner = single(z.basis());
        let wi = weigher(x, i);
        let wn = weigher(x, i + 1);
        let par_outer = outer.len() >= inner.len();
        let best = walk(
            &[Bits::zeros(x.n_cells(i + 1)), Bits::zeros(n)],
            &outer,
            par_outer,
            Best::new,
            |bst: &mut Best<Reverse<Ratio>>, cur, sel| {
                if sel == 0 {
                    return;
                }
                let ub = wn.units(&cur[0]);
                let (uf, fill) = coset_min_exact(&cur[1], &inner, &wi, !par_outer);
                bst.offer(Reverse(Ratio { num: uf, den: ub }), || vec![cur[0].clone(), fill]);
            },
            Best::merge,
        );
        let (Reverse(r), w) = best.item.expect("nonzero image");
        // (fill / D_i) / (β / D_{i+1}) is the reciprocal of scale_ratio's convention
        let value = Rational::one() / scale_ratio(x, i, Ratio { num: r.den, den: r.num });
        return Ok(Invariant {
            dim: i,
            name: "mu",
            value: Value::Finite(value),
            exact: true,
            bound: Bound::Exact,
            witness: Some(Cochain::new(i + 1, w[0].clone())),
            filling: Some(Cochain::new(i, w[1].clone())),
            certified,
        });
    }
    let mut local = local_coboundaries(x, i)?;
    local.extend(z.basis().iter().cloned());
    let h = ratio_search_heuristic(x, i, &z, &local, cfg, 0x300 + i as u64)?.expect("nonzero image");
    let beta = coboundary(x, &Cochain::new(i, h.witness.clone()))?;
    Ok(Invariant {
        dim: i,
        name: "mu",
        value: Value::Finite(Rational::one() / scale_ratio(x, i, h.ratio)),
        exact: false,
        bound: if h.inner_exact { Bound::Lower } else { Bound::Estimate },
        witness: Some(beta),
        filling: Some(Cochain::new(i, h.witness)),
        certified,
    })
}

/// `syst^i = min{||α|| : α ∈ Z^i ∖ B^i}`, infinite when `H^i = 0`.
pub fn systole(x: &Complex, i: usize, cfg: &SearchConfig) -> Result<Invariant> {
    require_pure(x)?;
    let z = cocycle_space(x, i)?;
    let b = coboundary_space(x, i)?;
    let name = "systole";
    if z.dim() == b.dim() {
        return Ok(Invariant { dim: i, name, value: Value::Infinite, exact: true, bound: Bound::Exact, witness: None, filling: None, certified: None });
    }
    let w = weigher(x, i);
    let n = x.n_cells(i);
    if cfg.use_exact("systole", z.dim())? {
        let gens: Vec<Vec<Bits>> = z.basis().iter().map(|v| vec![v.clone(), b.project(v)]).collect();
        let best = walk(
            &[Bits::zeros(n), Bits::zeros(n - b.dim())],
            &gens,
            true,
            Best::new,
            |bst: &mut Best<u64>, cur, _| {
                if !cur[1].is_zero() {
                    bst.offer(w.units(&cur[0]), || vec![cur[0].clone()]);
                }
            },
            Best::merge,
        );
        let (u, mut wit) = best.item.expect("H^i nonzero");
        return Ok(Invariant {
            dim: i,
            name,
            value: Value::Finite(norm_from_units(x, i, u)),
            exact: true,
            bound: Bound::Exact,
            witness: Some(Cochain::new(i, wit.swap_remove(0))),
            filling: None,
            certified: None,
        });
    }
    if cfg.budget == 0 {
        return Err(Error::BudgetExceeded);
    }
    let mut gens = local_coboundaries(x, i)?;
    gens.extend(z.basis().iter().cloned());
    let accept = |v: &Bits| !b.contains(v);
    let mut rng = cfg.rng(0x400 + i as u64);
    let mut left = cfg.budget;
    let mut best: Best<u64> = Best::new();
    let mut starts: Vec<Bits> = z.basis().iter().filter(|v| accept(v)).cloned().collect();
    while left > 0 {
        let start = if let Some(s) = starts.pop() {
            s
        } else {
            let mut s = Bits::zeros(n);
            for g in z.basis() {
                if rng.random::<bool>() {
                    s.xor_assign(g);
                }
            }
            if !accept(&s) {
                left -= 1;
                continue;
            }
            s
        };
        let (u, v) = greedy_descent(start, &gens, &w, &accept, &mut left);
        best.offer(u, || vec![v]);
    }
    let (u, mut wit) = best.item.expect("at least one start");
    Ok(Invariant {
        dim: i,
        name,
        value: Value::Finite(norm_from_units(x, i, u)),
        exact: false,
        bound: Bound::Upper,
        witness: Some(Cochain::new(i, wit.swap_remove(0))),
        filling: None,
        certified: None,
    })
}

/// Identities relating the invariants of one dimension.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub dim: usize,
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

/// Checks `μ·ε̃ = 1`, `ε > 0 ⇒ H^i = 0`, and `μ = 1/ε` when `H^i = 0`,
/// wherever the quantities involved are exact.
pub fn check_identities(x: &Complex, invariants: &[Invariant]) -> Result<Vec<IdentityCheck>> {
    let mut out = Vec::new();
    let find = |i: usize, name: &str| invariants.iter().find(|v| v.dim == i && v.name == name && v.exact);
    let mut dims: Vec<usize> = invariants.iter().map(|v| v.dim).collect();
    dims.sort_unstable();
    dims.dedup();
    for i in dims {
        let h = cohomology_dim(x, i)?;
        if let (Some(m), Some(e)) = (find(i, "mu"), find(i, "epsilon_tilde")) {
            if let (Some(mv), Some(ev)) = (m.value.finite(), e.value.finite()) {
                let p = mv * ev;
                out.push(IdentityCheck { dim: i, name: "mu*epsilon_tilde".into(), lhs: p.to_string(), rhs: "1".into(), holds: p.is_one() });
            } else {
                let both = m.value == Value::Vacuous && e.value == Value::Vacuous;
                out.push(IdentityCheck { dim: i, name: "mu*epsilon_tilde".into(), lhs: m.value.render(), rhs: e.value.render(), holds: both });
            }
        }
        if let Some(e) = find(i, "epsilon") {
            if e.value.is_positive() {
                out.push(IdentityCheck { dim: i, name: "epsilon>0 => H=0".into(), lhs: e.value.render(), rhs: format!("H^{i} = {h}"), holds: h == 0 });
            }
            if h == 0 {
                if let (Some(m), Some(ev)) = (find(i, "mu"), e.value.finite()) {
                    if let Some(mv) = m.value.finite() {
                        let p = mv * ev;
                        out.push(IdentityCheck { dim: i, name: "mu*epsilon".into(), lhs: p.to_string(), rhs: "1".into(), holds: p.is_one() });
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete_complex, rp2_six_vertex, sphere_boundary};

    #[test]
    fn coboundary_of_a_vertex() {
        let x = sphere_boundary(2);
        let v = x.cochain_from_cells(0, [[0u32]]).unwrap();
        assert_eq!(coboundary(&x, &v).unwrap().size(), 3);
        assert!(coboundary(&x, &x.zero_cochain(1)).unwrap().is_zero());
        assert!(matches!(coboundary(&x, &x.zero_cochain(2)), Err(Error::TopDimension(2))));
    }

    #[test]
    fn cohomology_fixtures() {
        let s = sphere_boundary(2);
        assert_eq!((cohomology_dim(&s, 0).unwrap(), cohomology_dim(&s, 1).unwrap(), cohomology_dim(&s, 2).unwrap()), (0, 0, 1));
        let p = rp2_six_vertex();
        assert_eq!((cohomology_dim(&p, 1).unwrap(), cohomology_dim(&p, 2).unwrap()), (1, 1));
        assert_eq!(cohomology_dim(&complete_complex(6, 2).unwrap(), 1).unwrap(), 0);
    }

    #[test]
    fn coset_of_a_coboundary_is_zero() {
        let x = sphere_boundary(2);
        let a = coboundary(&x, &x.cochain_from_cells(0, [[1u32]]).unwrap()).unwrap();
        let m = coset_min_norm(&x, &a, &SearchConfig::exact()).unwrap();
        assert!(m.norm.is_zero());
        assert!(m.witness.is_zero());
        assert_eq!(is_minimal(&x, &a, &SearchConfig::exact()).unwrap(), Some(false));
        assert_eq!(is_minimal(&x, &x.zero_cochain(1), &SearchConfig::exact()).unwrap(), Some(true));
    }

    #[test]
    fn mu_times_epsilon_tilde() {
        let x = complete_complex(5, 2).unwrap();
        let cfg = SearchConfig::exact();
        for i in 0..2 {
            let m = mu(&x, i, &cfg).unwrap();
            let e = epsilon_tilde(&x, i, &cfg).unwrap();
            assert_eq!(m.value.finite().unwrap() * e.value.finite().unwrap(), Rational::one());
        }
    }

    #[test]
    fn top_dimension_is_vacuous_or_zero() {
        let x = sphere_boundary(2);
        let cfg = SearchConfig::exact();
        assert_eq!(epsilon(&x, 2, &cfg).unwrap().value, Value::Finite(Rational::zero()));
        assert_eq!(epsilon_tilde(&x, 2, &cfg).unwrap().value, Value::Vacuous);
        assert_eq!(mu(&x, 2, &cfg).unwrap().value, Value::Vacuous);
        assert_eq!(systole(&x, 1, &cfg).unwrap().value, Value::Infinite);
    }

    #[test]
    fn threshold_and_budget_errors() {
        let x = complete_complex(8, 2).unwrap();
        let cfg = SearchConfig { exact_threshold: 10, ..SearchConfig::exact() };
        assert!(matches!(epsilon(&x, 1, &cfg), Err(Error::ThresholdExceeded { .. })));
        let cfg = SearchConfig { budget: 0, ..SearchConfig::heuristic(1) };
        assert!(matches!(epsilon(&x, 1, &cfg), Err(Error::BudgetExceeded)));
    }
}
