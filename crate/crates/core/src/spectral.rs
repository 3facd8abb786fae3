//! Graphs from complexes and buildings, dense spectra, and the Cheeger and
//! bipartite mixing inequalities.

use crate::bits::Bits;
use crate::buildings::{Building, SectionGraph};
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::rational::{le_rational_power, lt_rational_power, ratio, Value};
use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub const DEFAULT_EIGEN_CAP: usize = 5000;
pub const TOLERANCE: f64 = 1e-8;

/// A simple undirected graph, optionally with a bipartition.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    rows: Vec<Bits>,
    /// Display labels, one per vertex.
    pub labels: Vec<u32>,
    /// `Some(side)` with `side[v]` true for vertices of the second part.
    pub parts: Option<Vec<bool>>,
}

impl Graph {
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Graph {
        let mut rows = vec![Bits::zeros(n); n];
        for (u, v) in edges {
            assert!(u != v, "loop at {u}");
            rows[u].set(v, true);
            rows[v].set(u, true);
        }
        Graph { n, rows, labels: (0..n as u32).collect(), parts: None }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(Bits::count_ones).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[v].iter_ones()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u].get(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones()
    }

    pub fn regular(&self) -> Option<usize> {
        let k = self.degree(0);
        (0..self.n).all(|v| self.degree(v) == k).then_some(k)
    }

    /// Part sizes and degrees `(|V'|, |V''|, k', k'')` of a bi-regular bipartite graph.
    pub fn biregular(&self) -> Option<(usize, usize, usize, usize)> {
        let parts = self.parts.as_ref()?;
        let side = |s: bool| -> Option<(usize, usize)> {
            let vs: Vec<usize> = (0..self.n).filter(|&v| parts[v] == s).collect();
            let k = self.degree(*vs.first()?);
            vs.iter().all(|&v| self.degree(v) == k).then_some((vs.len(), k))
        };
        let (a, ka) = side(false)?;
        let (b, kb) = side(true)?;
        Some((a, b, ka, kb))
    }

    /// Whether every edge joins the two parts.
    pub fn bipartition_is_proper(&self) -> bool {
        match &self.parts {
            None => true,
            Some(p) => (0..self.n).all(|u| self.neighbors(u).all(|v| p[u] != p[v])),
        }
    }

    pub fn adjacency_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |i, j| if self.rows[i].get(j) { 1.0 } else { 0.0 })
    }

    pub fn laplacian(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |i, j| {
            if i == j {
                self.degree(i) as f64
            } else if self.rows[i].get(j) {
                -1.0
            } else {
                0.0
            }
        })
    }

    /// `|E(W, W̄)|`.
    pub fn cut(&self, w: &Bits) -> usize {
        w.iter_ones().map(|v| self.degree(v) - self.rows[v].and_count(w) as usize).sum()
    }

    /// Edges with both ends in `W`.
    pub fn inside(&self, w: &Bits) -> usize {
        w.iter_ones().map(|v| self.rows[v].and_count(w) as usize).sum::<usize>() / 2
    }

    /// `|E(A, B)|` for disjoint `A` and `B`.
    pub fn between(&self, a: &Bits, b: &Bits) -> usize {
        a.iter_ones().map(|v| self.rows[v].and_count(b) as usize).sum()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = Bits::zeros(self.n);
        let mut stack = vec![0];
        seen.set(0, true);
        while let Some(u) = stack.pop() {
            for v in self.neighbors(u) {
                if !seen.get(v) {
                    seen.set(v, true);
                    stack.push(v);
                }
            }
        }
        seen.count_ones() == self.n
    }
}

pub fn one_skeleton(x: &Complex) -> Graph {
    let edges: Vec<(usize, usize)> = (0..x.n_cells(1))
        .map(|e| {
            let v = x.vertex_indices(1, e);
            (v[0], v[1])
        })
        .collect();
    let mut g = Graph::from_edges(x.n_vertices(), edges);
    g.labels = (0..x.n_vertices()).map(|v| x.vertex_id(v)).collect();
    g
}

/// 1-skeleton of the link of vertex `v`.
pub fn link_graph(x: &Complex, v: usize) -> Result<Graph> {
    let link = x.vertex_link(v)?;
    if link.complex.dim() == 0 {
        let mut g = Graph::from_edges(link.complex.n_vertices(), []);
        g.labels = (0..link.complex.n_vertices()).map(|u| link.complex.vertex_id(u)).collect();
        return Ok(g);
    }
    Ok(one_skeleton(&link.complex))
}

/// Left part first, then right; the right part is marked as the second side.
pub fn section_as_graph(s: &SectionGraph) -> Graph {
    let n = s.left + s.right;
    let mut g = Graph::from_edges(n, s.edges.iter().map(|&(a, b)| (a, s.left + b)));
    g.parts = Some((0..n).map(|v| v >= s.left).collect());
    g
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectralReport {
    /// Adjacency eigenvalues, descending.
    pub eigenvalues: Vec<f64>,
    pub max_residual: f64,
    /// Second smallest Laplacian eigenvalue (zero for disconnected graphs).
    pub lambda1_laplacian: f64,
    /// Second largest adjacency eigenvalue.
    pub second_adjacency: f64,
    pub regular: Option<usize>,
    pub tolerance: f64,
}

fn sorted_eigen(m: DMatrix<f64>) -> (Vec<f64>, f64) {
    let a = m.clone();
    let e = SymmetricEigen::new(m);
    let mut pairs: Vec<(f64, usize)> = e.eigenvalues.iter().copied().zip(0..).collect();
    pairs.sort_by(|x, y| y.0.total_cmp(&x.0).then(x.1.cmp(&y.1)));
    let mut residual: f64 = 0.0;
    for &(lambda, j) in &pairs {
        let v = e.eigenvectors.column(j);
        residual = residual.max((&a * v - v * lambda).norm());
    }
    (pairs.into_iter().map(|p| p.0).collect(), residual)
}

pub fn spectrum(g: &Graph, cap: usize) -> Result<SpectralReport> {
    if g.n() > cap {
        return Err(Error::CapExceeded { n: g.n(), cap });
    }
    if g.n() == 0 {
        return Err(Error::EmptyInput);
    }
    let (eigenvalues, r1) = sorted_eigen(g.adjacency_matrix());
    let (lap, r2) = sorted_eigen(g.laplacian());
    // ascending order: lap is descending
    let lambda1_laplacian = if g.n() >= 2 { lap[g.n() - 2].max(0.0) } else { 0.0 };
    let lambda1_laplacian = if g.is_connected() { lambda1_laplacian } else { 0.0 };
    Ok(SpectralReport {
        second_adjacency: eigenvalues.get(1).copied().unwrap_or(eigenvalues[0]),
        eigenvalues,
        max_residual: r1.max(r2),
        lambda1_laplacian,
        regular: g.regular(),
        tolerance: TOLERANCE,
    })
}

/// `(α, β)` with `B Bᵀ = αI + βJ` computed in integers, if it has that form.
/// `B` is the left-by-right incidence matrix.
pub fn gram_constants(s: &SectionGraph) -> Option<(u64, u64)> {
    let mut up = vec![Vec::new(); s.right];
    for &(a, b) in &s.edges {
        up[b].push(a);
    }
    let mut gram = vec![0u64; s.left * s.left];
    for list in &up {
        for &a in list {
            for &c in list {
                gram[a * s.left + c] += 1;
            }
        }
    }
    let diag = gram[0];
    let off = if s.left > 1 { gram[1] } else { 0 };
    for a in 0..s.left {
        for c in 0..s.left {
            if gram[a * s.left + c] != if a == c { diag } else { off } {
                return None;
            }
        }
    }
    Some((diag - off, off))
}

fn le_tol(lhs: f64, rhs: f64) -> bool {
    lhs <= rhs + TOLERANCE * (1.0 + rhs.abs())
}

#[derive(Clone, Debug, Serialize)]
pub struct CheegerReport {
    pub size: usize,
    pub cut: usize,
    /// `(|W||W̄|/|V|)·λ₁`.
    pub cut_bound: f64,
    pub cut_holds: bool,
    /// For `k`-regular graphs: `E(W)` against `½(k − (|W̄|/|V|)λ₁)|W|`.
    pub inside: usize,
    pub inside_bound: Option<f64>,
    pub inside_holds: bool,
}

impl CheegerReport {
    pub fn holds(&self) -> bool {
        self.cut_holds && self.inside_holds
    }
}

pub fn cheeger_check(g: &Graph, lambda1: f64, w: &Bits) -> CheegerReport {
    let n = g.n() as f64;
    let size = w.count_ones();
    let comp = g.n() - size;
    let cut = g.cut(w);
    let cut_bound = size as f64 * comp as f64 / n * lambda1;
    let inside = g.inside(w);
    let inside_bound = g.regular().map(|k| 0.5 * (k as f64 - comp as f64 / n * lambda1) * size as f64);
    CheegerReport {
        size,
        cut,
        cut_bound,
        cut_holds: le_tol(cut_bound, cut as f64),
        inside,
        inside_holds: inside_bound.is_none_or(|b| le_tol(inside as f64, b)),
        inside_bound,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheegerSummary {
    pub lambda1: f64,
    pub subsets: usize,
    pub violations: usize,
    /// `min |E(W,W̄)|/|W|` over the subsets tried with `|W| <= |V|/2`.
    pub h_upper: Option<f64>,
    pub exhaustive: bool,
    pub h_holds: bool,
}

/// Every proper nonempty subset for small graphs, else `samples` seeded ones.
pub fn cheeger_sweep(g: &Graph, lambda1: f64, exhaustive_max: usize, samples: usize, seed: u64) -> CheegerSummary {
    let n = g.n();
    let exhaustive = n <= exhaustive_max && n < 26;
    let mut violations = 0;
    let mut subsets = 0;
    let mut h: Option<f64> = None;
    let mut visit = |w: &Bits| {
        let size = w.count_ones();
        if size == 0 || size == n {
            return;
        }
        subsets += 1;
        let r = cheeger_check(g, lambda1, w);
        if !r.holds() {
            violations += 1;
        }
        if 2 * size <= n {
            let ratio = r.cut as f64 / size as f64;
            h = Some(h.map_or(ratio, |x: f64| x.min(ratio)));
        }
    };
    if exhaustive {
        for m in 1u64..(1 << n) - 1 {
            visit(&Bits::from_indices(n, (0..n).filter(|&j| m >> j & 1 == 1)));
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let p: f64 = rng.random();
            visit(&Bits::from_indices(n, (0..n).filter(|_| rng.random_bool(p))));
        }
    }
    let h_holds = h.is_none_or(|h| le_tol(lambda1 / 2.0, h));
    CheegerSummary { lambda1, subsets, violations, h_upper: h, exhaustive, h_holds }
}

#[derive(Clone, Debug, Serialize)]
pub struct MixingReport {
    pub a: usize,
    pub b: usize,
    pub edges: usize,
    pub deviation: f64,
    pub bound: f64,
    pub holds: bool,
}

/// `| |E(A,B)| − √(k'k'')|A||B|/√(|V'||V''|) | ≤ λ√(|A||B|)` with `A ⊆ V'`, `B ⊆ V''`.
pub fn mixing_check(g: &Graph, lambda: f64, a: &Bits, b: &Bits) -> Result<MixingReport> {
    let (na, nb, ka, kb) = g.biregular().ok_or(Error::NotBiRegular)?;
    let parts = g.parts.as_ref().expect("biregular graphs have parts");
    if a.iter_ones().any(|v| parts[v]) || b.iter_ones().any(|v| !parts[v]) {
        return Err(Error::BadParameter("A must lie in the first part and B in the second".into()));
    }
    let (sa, sb) = (a.count_ones(), b.count_ones());
    let edges = g.between(a, b);
    let main = ((ka * kb) as f64).sqrt() * (sa * sb) as f64 / ((na * nb) as f64).sqrt();
    let deviation = (edges as f64 - main).abs();
    let bound = lambda * ((sa * sb) as f64).sqrt();
    Ok(MixingReport { a: sa, b: sb, edges, deviation, bound, holds: le_tol(deviation, bound) })
}

#[derive(Clone, Debug, Serialize)]
pub struct MixingSummary {
    pub lambda: f64,
    pub pairs: usize,
    pub violations: usize,
    pub max_slack_ratio: f64,
    pub exhaustive: bool,
}

pub fn mixing_sweep(g: &Graph, lambda: f64, exhaustive_max: usize, samples: usize, seed: u64) -> Result<MixingSummary> {
    let parts = g.parts.clone().ok_or(Error::NotBiRegular)?;
    g.biregular().ok_or(Error::NotBiRegular)?;
    let n = g.n();
    let left: Vec<usize> = (0..n).filter(|&v| !parts[v]).collect();
    let right: Vec<usize> = (0..n).filter(|&v| parts[v]).collect();
    let exhaustive = n <= exhaustive_max && n < 26;
    let mut summary = MixingSummary { lambda, pairs: 0, violations: 0, max_slack_ratio: 0.0, exhaustive };
    let mut visit = |a: &Bits, b: &Bits| -> Result<()> {
        let r = mixing_check(g, lambda, a, b)?;
        summary.pairs += 1;
        if !r.holds {
            summary.violations += 1;
        }
        if r.bound > 0.0 {
            summary.max_slack_ratio = summary.max_slack_ratio.max(r.deviation / r.bound);
        }
        Ok(())
    };
    let subset = |vs: &[usize], m: u64| Bits::from_indices(n, vs.iter().enumerate().filter(|(j, _)| m >> j & 1 == 1).map(|(_, &v)| v));
    if exhaustive {
        for ma in 0u64..1 << left.len() {
            let a = subset(&left, ma);
            for mb in 0u64..1 << right.len() {
                visit(&a, &subset(&right, mb))?;
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let (p, s): (f64, f64) = (rng.random(), rng.random());
            let a = Bits::from_indices(n, left.iter().copied().filter(|_| rng.random_bool(p)));
            let b = Bits::from_indices(n, right.iter().copied().filter(|_| rng.random_bool(s)));
            visit(&a, &b)?;
        }
    }
    Ok(summary)
}

/// Sets `T_i ⊆ M_i` in the 1-skeleton of `S(4, q)` with chosen edge sets `E(t)`.
#[derive(Clone, Debug, Serialize)]
pub struct TsetReport {
    pub q: u32,
    pub sizes: [usize; 3],
    /// Size bounds `|T_1|, |T_3| ≤ q^{2.75}` and `|T_2| ≤ q^{3.7}`.
    pub size_bounds_hold: bool,
    /// `|E(t)| > q^{1.8}` on `T_1 ∪ T_3` and `> q^{0.9}` on `T_2`.
    pub edge_bounds_hold: bool,
    pub internal_edges: usize,
    pub chosen_edges: usize,
    pub ratio: Value,
}

/// `|E(T,T)| / |Ẽ|` where `Ẽ` is the union of the given edge sets; each `E(t)`
/// is a list of neighbors of `t`.
pub fn tset_mixing_report(b: &Building, t: &[usize], e: &[Vec<usize>]) -> Result<TsetReport> {
    if b.r != 4 {
        return Err(Error::BadParameter(format!("T-sets live in S(4, q), got r = {}", b.r)));
    }
    if t.len() != e.len() {
        return Err(Error::BadParameter("one edge set per vertex of T".into()));
    }
    let g = one_skeleton(&b.complex);
    let q = b.q as u64;
    let dims: Vec<usize> = b.subspaces.iter().map(|s| s.dim()).collect();
    let mut sizes = [0usize; 3];
    let mut members = Bits::zeros(g.n());
    let mut chosen = std::collections::BTreeSet::new();
    let mut edge_bounds_hold = true;
    for (&v, ev) in t.iter().zip(e) {
        sizes[dims[v] - 1] += 1;
        members.set(v, true);
        let count = crate::rational::int(ev.len() as u64);
        let ok = if dims[v] == 2 { !le_rational_power(&count, q, 9, 10) } else { !le_rational_power(&count, q, 9, 5) };
        edge_bounds_hold &= ok;
        for &u in ev {
            if !g.adjacent(u, v) {
                return Err(Error::BadParameter(format!("{u} is not a neighbor of {v}")));
            }
            chosen.insert((u.min(v), u.max(v)));
        }
    }
    let small = |s: usize, a: u32, b: u32| le_rational_power(&crate::rational::int(s as u64), q, a, b);
    let size_bounds_hold = small(sizes[0], 11, 4) && small(sizes[2], 11, 4) && small(sizes[1], 37, 10);
    let internal_edges = g.inside(&members);
    let ratio_value = if chosen.is_empty() { Value::Vacuous } else { Value::Finite(ratio(internal_edges as u64, chosen.len() as u64)) };
    Ok(TsetReport { q: b.q, sizes, size_bounds_hold, edge_bounds_hold, internal_edges, chosen_edges: chosen.len(), ratio: ratio_value })
}

/// Greedy search for a large `|E(T,T)|/|Ẽ|` within the size and edge-count bounds.
///
/// Each `E(t)` takes the fewest edges allowed, preferring edges already used
/// and then edges back into `T`.
pub fn greedy_adversarial_tset(b: &Building) -> Result<TsetReport> {
    let g = one_skeleton(&b.complex);
    let q = b.q as u64;
    let dims: Vec<usize> = b.subspaces.iter().map(|s| s.dim()).collect();
    let need = |v: usize| -> usize {
        let (a, d) = if dims[v] == 2 { (9, 10) } else { (9, 5) };
        (0..).find(|&m| !le_rational_power(&crate::rational::int(m as u64), q, a, d)).unwrap()
    };
    let cap = |dim: usize| -> usize {
        let (a, d) = if dim == 2 { (37, 10) } else { (11, 4) };
        (0..).take_while(|&m| le_rational_power(&crate::rational::int(m as u64), q, a, d)).last().unwrap_or(0)
    };
    let choose_edges = |t: &[usize]| -> Vec<Vec<usize>> {
        let mut members = Bits::zeros(g.n());
        for &v in t {
            members.set(v, true);
        }
        let mut used = std::collections::BTreeSet::new();
        let mut out = Vec::new();
        for &v in t {
            let mut mine: Vec<usize> = Vec::new();
            let want = need(v);
            let passes: [&dyn Fn(usize) -> bool; 3] = [&|u| used.contains(&(u.min(v), u.max(v))), &|u| members.get(u), &|_| true];
            for pass in passes {
                for u in g.neighbors(v) {
                    if mine.len() < want && !mine.contains(&u) && pass(u) {
                        mine.push(u);
                    }
                }
            }
            for &u in &mine {
                used.insert((u.min(v), u.max(v)));
            }
            out.push(mine);
        }
        out
    };
    let value = |t: &[usize]| -> Result<(Rational, TsetReport)> {
        let e = choose_edges(t);
        let rep = tset_mixing_report(b, t, &e)?;
        let r = rep.ratio.finite().cloned().unwrap_or_default();
        Ok((r, rep))
    };
    use crate::rational::Rational;
    let mut t: Vec<usize> = Vec::new();
    let mut counts = [0usize; 3];
    let mut best = value(&t)?;
    loop {
        let mut step: Option<(Rational, usize, TsetReport)> = None;
        for v in 0..g.n() {
            if t.contains(&v) || counts[dims[v] - 1] >= cap(dims[v]) {
                continue;
            }
            t.push(v);
            let (r, rep) = value(&t)?;
            t.pop();
            if step.as_ref().is_none_or(|s| r > s.0) {
                step = Some((r, v, rep));
            }
        }
        match step {
            Some((r, v, rep)) if r > best.0 || t.is_empty() => {
                t.push(v);
                counts[dims[v] - 1] += 1;
                best = (r, rep);
            }
            _ => break,
        }
    }
    Ok(best.1)
}

/// Observed spectral gap of a supplied `k`-regular 1-skeleton next to the
/// quotient bounds.
#[derive(Clone, Debug, Serialize)]
pub struct QuotientComparison {
    pub k: usize,
    pub d: usize,
    pub lambda2: f64,
    pub lambda1: f64,
    /// `k − (d+1 choose ⌊(d+1)/2⌋)√k`.
    pub binomial_gap: f64,
    /// `k − (d+1)^{d+1}√k`.
    pub crude_gap: f64,
    /// `k − 6√k`, only for `d = 2`.
    pub improved_gap: Option<f64>,
    pub meets_binomial: bool,
    pub meets_crude: bool,
    pub meets_improved: Option<bool>,
}

pub fn quotient_comparison(g: &Graph, d: usize, report: &SpectralReport) -> Result<QuotientComparison> {
    let k = g.regular().ok_or_else(|| Error::BadParameter("quotient comparison needs a regular graph".into()))?;
    let sk = (k as f64).sqrt();
    let binom = crate::complex::binomial(d as u64 + 1, (d as u64 + 1) / 2) as f64;
    let lambda1 = k as f64 - report.second_adjacency;
    let binomial_gap = k as f64 - binom * sk;
    let crude_gap = k as f64 - ((d + 1) as f64).powi(d as i32 + 1) * sk;
    let improved_gap = (d == 2).then_some(k as f64 - 6.0 * sk);
    Ok(QuotientComparison {
        k,
        d,
        lambda2: report.second_adjacency,
        lambda1,
        binomial_gap,
        crude_gap,
        improved_gap,
        meets_binomial: le_tol(binomial_gap, lambda1),
        meets_crude: le_tol(crude_gap, lambda1),
        meets_improved: improved_gap.map(|b| le_tol(b, lambda1)),
    })
}

/// Whether `x < q^{a/b}` for a count `x`.
pub fn count_below_power(x: usize, q: u64, a: u32, b: u32) -> bool {
    lt_rational_power(&crate::rational::int(x as u64), q, a, b)
}
