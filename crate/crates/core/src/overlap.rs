//! Geometric overlap of planar placements of a 2-complex.
//!
//! Depth of a point is the number of closed image triangles containing it.
//! Inputs are integer coordinates (floats are snapped to a fixed grid), so
//! orientation tests are exact in `i128` for the estimator and in big
//! rationals for the arrangement oracle.

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::rational::{ratio, Exact, Rational};
use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

/// Largest absolute coordinate accepted; keeps every predicate inside `i128`.
pub const COORD_LIMIT: i64 = 1 << 24;
/// Grid used when snapping float coordinates.
pub const SNAP_SCALE: f64 = (1 << 16) as f64;
/// Largest triangle count the arrangement oracle accepts.
pub const ORACLE_MAX_TRIANGLES: usize = 40;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Placement {
    /// Indexed like `X(0)`.
    pub coords: Vec<(i64, i64)>,
    /// Coordinates came from floats and were rounded to the grid.
    pub snapped: bool,
}

impl Placement {
    pub fn integer(coords: Vec<(i64, i64)>) -> Result<Placement> {
        if coords.iter().any(|&(x, y)| x.abs() > COORD_LIMIT || y.abs() > COORD_LIMIT) {
            return Err(Error::BadParameter(format!("coordinates must lie within ±{COORD_LIMIT}")));
        }
        Ok(Placement { coords, snapped: false })
    }

    pub fn from_f64(coords: &[(f64, f64)]) -> Result<Placement> {
        let snap = |v: f64| -> Result<i64> {
            if !v.is_finite() {
                return Err(Error::BadParameter(format!("non-finite coordinate {v}")));
            }
            let s = (v * SNAP_SCALE).round();
            if s.abs() > COORD_LIMIT as f64 {
                return Err(Error::BadParameter(format!("coordinate {v} outside the snapping range")));
            }
            Ok(s as i64)
        };
        let coords = coords.iter().map(|&(x, y)| Ok((snap(x)?, snap(y)?))).collect::<Result<_>>()?;
        Ok(Placement { coords, snapped: true })
    }

    /// Independent standard Gaussian coordinates, snapped.
    pub fn gaussian(n: usize, seed: u64) -> Placement {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pts: Vec<(f64, f64)> = (0..n)
            .map(|_| {
                let x: f64 = StandardNormal.sample(&mut rng);
                let y: f64 = StandardNormal.sample(&mut rng);
                (x.clamp(-100.0, 100.0), y.clamp(-100.0, 100.0))
            })
            .collect();
        Placement::from_f64(&pts).expect("clamped coordinates")
    }

    /// Whether all images lie on one line.
    pub fn is_collinear(&self) -> bool {
        let p = &self.coords;
        match p.iter().find(|&&q| q != p[0]) {
            None => true,
            Some(&q) => p.iter().all(|&r| orient(p[0], q, r) == 0),
        }
    }
}

fn orient(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> i128 {
    let (ax, ay, bx, by, cx, cy) = (a.0 as i128, a.1 as i128, b.0 as i128, b.1 as i128, c.0 as i128, c.1 as i128);
    (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
}

/// A rational point `(x/d, y/d)` with `d > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pt {
    x: i128,
    y: i128,
    d: i128,
}

impl Pt {
    fn int(p: (i64, i64)) -> Pt {
        Pt { x: p.0 as i128, y: p.1 as i128, d: 1 }
    }

    fn exact(&self) -> (Rational, Rational) {
        (Rational::new(self.x.into(), self.d.into()), Rational::new(self.y.into(), self.d.into()))
    }
}

/// Sign of the orientation of `(a, b, p)` times `p.d`.
fn orient_pt(a: (i64, i64), b: (i64, i64), p: Pt) -> i128 {
    let (ax, ay, bx, by) = (a.0 as i128, a.1 as i128, b.0 as i128, b.1 as i128);
    (bx - ax) * (p.y - ay * p.d) - (by - ay) * (p.x - ax * p.d)
}

fn in_closed_triangle(t: [(i64, i64); 3], p: Pt) -> bool {
    let [a, b, c] = t;
    if orient(a, b, c) != 0 {
        let s = [orient_pt(a, b, p), orient_pt(b, c, p), orient_pt(c, a, p)];
        return s.iter().all(|&v| v >= 0) || s.iter().all(|&v| v <= 0);
    }
    // degenerate image: the convex hull is a segment or a point
    let on_line = |u: (i64, i64), v: (i64, i64)| orient_pt(u, v, p) == 0;
    let (lo_x, hi_x) = (a.0.min(b.0).min(c.0) as i128, a.0.max(b.0).max(c.0) as i128);
    let (lo_y, hi_y) = (a.1.min(b.1).min(c.1) as i128, a.1.max(b.1).max(c.1) as i128);
    let in_box = lo_x * p.d <= p.x && p.x <= hi_x * p.d && lo_y * p.d <= p.y && p.y <= hi_y * p.d;
    let line = [(a, b), (a, c), (b, c)].into_iter().find(|(u, v)| u != v);
    in_box && line.is_none_or(|(u, v)| on_line(u, v))
}

/// The common point of two non-parallel closed segments, if any. Parallel
/// overlaps only meet at endpoints, which are already candidates.
fn segment_points(p1: (i64, i64), p2: (i64, i64), p3: (i64, i64), p4: (i64, i64), out: &mut Vec<Pt>) {
    let (rx, ry) = ((p2.0 - p1.0) as i128, (p2.1 - p1.1) as i128);
    let (sx, sy) = ((p4.0 - p3.0) as i128, (p4.1 - p3.1) as i128);
    let den = rx * sy - ry * sx;
    let (qx, qy) = ((p3.0 - p1.0) as i128, (p3.1 - p1.1) as i128);
    if den == 0 {
        return;
    }
    let t = qx * sy - qy * sx;
    let u = qx * ry - qy * rx;
    let (t, u, den) = if den < 0 { (-t, -u, -den) } else { (t, u, den) };
    if (0..=den).contains(&t) && (0..=den).contains(&u) {
        out.push(Pt { x: p1.0 as i128 * den + t * rx, y: p1.1 as i128 * den + t * ry, d: den });
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Image vertices and pairwise edge intersections.
    Candidates,
    /// Every cell of the segment arrangement.
    Arrangement,
}

#[derive(Clone, Debug, Serialize)]
pub struct OverlapEstimate {
    pub depth: usize,
    pub triangles: usize,
    /// `depth / |X(2)|`.
    pub covered_fraction: Exact,
    pub best_point: (Exact, Exact),
    pub method: Method,
    pub candidates: usize,
    pub degenerate: bool,
    pub snapped: bool,
}

fn images(x: &Complex, f: &Placement) -> Result<Vec<[(i64, i64); 3]>> {
    if x.dim() != 2 {
        return Err(Error::BadDimension(format!("overlap needs a 2-complex, got dimension {}", x.dim())));
    }
    if f.coords.len() != x.n_vertices() {
        return Err(Error::DimensionMismatch { expected: x.n_vertices(), found: f.coords.len() });
    }
    Ok((0..x.n_cells(2))
        .map(|t| {
            let v = x.vertex_indices(2, t);
            [f.coords[v[0]], f.coords[v[1]], f.coords[v[2]]]
        })
        .collect())
}

fn segments(x: &Complex, f: &Placement) -> Vec<((i64, i64), (i64, i64))> {
    (0..x.n_cells(1))
        .map(|e| {
            let v = x.vertex_indices(1, e);
            (f.coords[v[0]], f.coords[v[1]])
        })
        .collect()
}

/// Number of image triangles containing `(px/d, py/d)`.
pub fn depth_at(x: &Complex, f: &Placement, px: i128, py: i128, d: i128) -> Result<usize> {
    if d <= 0 {
        return Err(Error::BadParameter("denominator must be positive".into()));
    }
    let p = Pt { x: px, y: py, d };
    Ok(images(x, f)?.iter().filter(|&&t| in_closed_triangle(t, p)).count())
}

/// Candidate-point estimate: a certified lower bound on the maximum depth,
/// and equal to it for closed triangles.
pub fn geometric_overlap(x: &Complex, f: &Placement) -> Result<OverlapEstimate> {
    let tris = images(x, f)?;
    let segs = segments(x, f);
    let mut cands: Vec<Pt> = f.coords.iter().map(|&p| Pt::int(p)).collect();
    for a in 0..segs.len() {
        for b in a + 1..segs.len() {
            segment_points(segs[a].0, segs[a].1, segs[b].0, segs[b].1, &mut cands);
        }
    }
    let mut best = (0usize, cands.first().copied().unwrap_or(Pt { x: 0, y: 0, d: 1 }));
    for &p in &cands {
        let depth = tris.iter().filter(|&&t| in_closed_triangle(t, p)).count();
        if depth > best.0 {
            best = (depth, p);
        }
    }
    let (bx, by) = best.1.exact();
    Ok(OverlapEstimate {
        depth: best.0,
        triangles: tris.len(),
        covered_fraction: Exact(ratio(best.0 as u64, tris.len().max(1) as u64)),
        best_point: (Exact(bx), Exact(by)),
        method: Method::Candidates,
        candidates: cands.len(),
        degenerate: f.is_collinear(),
        snapped: f.snapped,
    })
}

type RPt = (Rational, Rational);

fn r_orient(a: &RPt, b: &RPt, c: &RPt) -> Rational {
    (&b.0 - &a.0) * (&c.1 - &a.1) - (&b.1 - &a.1) * (&c.0 - &a.0)
}

fn r_in_triangle(t: &[RPt; 3], p: &RPt) -> bool {
    let [a, b, c] = t;
    if !r_orient(a, b, c).is_zero() {
        let s = [r_orient(a, b, p), r_orient(b, c, p), r_orient(c, a, p)];
        return s.iter().all(|v| !v.is_negative()) || s.iter().all(|v| !v.is_positive());
    }
    let xs = [&a.0, &b.0, &c.0];
    let ys = [&a.1, &b.1, &c.1];
    let within = |v: &Rational, w: [&Rational; 3]| {
        let lo = w.iter().min().unwrap();
        let hi = w.iter().max().unwrap();
        *lo <= v && v <= *hi
    };
    let line = [(a, b), (a, c), (b, c)].into_iter().find(|(u, v)| u != v);
    within(&p.0, xs) && within(&p.1, ys) && line.is_none_or(|(u, v)| r_orient(u, v, p).is_zero())
}

/// Exhaustive depth over the arrangement of image edges: every vertex, every
/// edge piece and every face gets a sample point via a vertical slab
/// decomposition. Meant as an oracle for small inputs.
pub fn arrangement_depth(x: &Complex, f: &Placement) -> Result<OverlapEstimate> {
    let tris_i = images(x, f)?;
    if tris_i.len() > ORACLE_MAX_TRIANGLES {
        return Err(Error::ResourceLimit(format!("arrangement oracle takes at most {ORACLE_MAX_TRIANGLES} triangles")));
    }
    let rp = |p: (i64, i64)| -> RPt { (Rational::from_integer(p.0.into()), Rational::from_integer(p.1.into())) };
    let tris: Vec<[RPt; 3]> = tris_i.iter().map(|t| [rp(t[0]), rp(t[1]), rp(t[2])]).collect();
    let segs: Vec<(RPt, RPt)> = segments(x, f).into_iter().map(|(a, b)| (rp(a), rp(b))).collect();

    let mut verts: Vec<RPt> = f.coords.iter().map(|&p| rp(p)).collect();
    for a in 0..segs.len() {
        for b in a + 1..segs.len() {
            let ((p1, p2), (p3, p4)) = (&segs[a], &segs[b]);
            let r = (&p2.0 - &p1.0, &p2.1 - &p1.1);
            let s = (&p4.0 - &p3.0, &p4.1 - &p3.1);
            let den = &r.0 * &s.1 - &r.1 * &s.0;
            if den.is_zero() {
                continue;
            }
            let q = (&p3.0 - &p1.0, &p3.1 - &p1.1);
            let t = (&q.0 * &s.1 - &q.1 * &s.0) / &den;
            let u = (&q.0 * &r.1 - &q.1 * &r.0) / &den;
            let unit = |v: &Rational| !v.is_negative() && *v <= Rational::from_integer(1.into());
            if unit(&t) && unit(&u) {
                verts.push((&p1.0 + &t * &r.0, &p1.1 + &t * &r.1));
            }
        }
    }
    verts.sort();
    verts.dedup();

    let two = Rational::from_integer(2.into());
    let mut samples: Vec<RPt> = verts.clone();
    let mut xs: Vec<Rational> = verts.iter().map(|p| p.0.clone()).collect();
    xs.dedup();
    // vertical edge pieces: between consecutive vertices on a common vertical line
    for w in verts.windows(2) {
        if w[0].0 == w[1].0 {
            samples.push((w[0].0.clone(), (&w[0].1 + &w[1].1) / &two));
        }
    }
    // open slabs: non-vertical edge pieces and faces
    for w in xs.windows(2) {
        let m = (&w[0] + &w[1]) / &two;
        let mut ys: Vec<Rational> = segs
            .iter()
            .filter(|(a, b)| a.0 != b.0 && a.0.clone().min(b.0.clone()) < m && m < a.0.clone().max(b.0.clone()))
            .map(|(a, b)| &a.1 + (&b.1 - &a.1) * (&m - &a.0) / (&b.0 - &a.0))
            .collect();
        ys.sort();
        ys.dedup();
        for (k, y) in ys.iter().enumerate() {
            samples.push((m.clone(), y.clone()));
            if let Some(next) = ys.get(k + 1) {
                samples.push((m.clone(), (y + next) / &two));
            }
        }
    }

    let mut best: (usize, RPt) = (0, samples.first().cloned().unwrap_or((Rational::zero(), Rational::zero())));
    for p in &samples {
        let depth = tris.iter().filter(|t| r_in_triangle(t, p)).count();
        if depth > best.0 {
            best = (depth, p.clone());
        }
    }
    Ok(OverlapEstimate {
        depth: best.0,
        triangles: tris.len(),
        covered_fraction: Exact(ratio(best.0 as u64, tris.len().max(1) as u64)),
        best_point: (Exact(best.1 .0), Exact(best.1 .1)),
        method: Method::Arrangement,
        candidates: samples.len(),
        degenerate: f.is_collinear(),
        snapped: f.snapped,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TrialsReport {
    pub seed: u64,
    pub estimates: Vec<OverlapEstimate>,
    /// Smallest covered fraction over the trials: an empirical probe of the
    /// overlap constant from above.
    pub min_fraction: Exact,
}

/// Per-trial seed for Gaussian placements.
pub fn trial_seed(seed: u64, trial: usize) -> u64 {
    seed ^ (trial as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

pub fn overlap_trials(x: &Complex, trials: usize, seed: u64) -> Result<TrialsReport> {
    if trials == 0 {
        return Err(Error::BadParameter("at least one trial".into()));
    }
    let estimates = (0..trials)
        .map(|k| geometric_overlap(x, &Placement::gaussian(x.n_vertices(), trial_seed(seed, k))))
        .collect::<Result<Vec<_>>>()?;
    let min_fraction = estimates.iter().map(|e| e.covered_fraction.0.clone()).min().expect("nonempty");
    Ok(TrialsReport { seed, estimates, min_fraction: Exact(min_fraction) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::complete_complex;
    use crate::rational::int;

    fn triangle() -> Complex {
        complete_complex(3, 2).unwrap()
    }

    #[test]
    fn single_triangle_is_fully_covered() {
        let x = triangle();
        let f = Placement::integer(vec![(0, 0), (5, 0), (1, 7)]).unwrap();
        assert_eq!(geometric_overlap(&x, &f).unwrap().covered_fraction.0, int(1));
        assert_eq!(arrangement_depth(&x, &f).unwrap().depth, 1);
    }

    #[test]
    fn degenerate_triangle_is_flagged() {
        let x = triangle();
        let f = Placement::integer(vec![(0, 0), (2, 2), (5, 5)]).unwrap();
        let e = geometric_overlap(&x, &f).unwrap();
        assert!(e.degenerate);
        assert_eq!(e.depth, 1);
        assert_eq!(depth_at(&x, &f, 7, 7, 1).unwrap(), 0);
        assert_eq!(depth_at(&x, &f, 7, 7, 2).unwrap(), 1);
    }

    #[test]
    fn square_with_diagonals() {
        // K4 on the corners of a square: the center lies in all four triangles
        let x = complete_complex(4, 2).unwrap();
        let f = Placement::integer(vec![(0, 0), (4, 0), (4, 4), (0, 4)]).unwrap();
        assert_eq!(geometric_overlap(&x, &f).unwrap().depth, 4);
        assert_eq!(depth_at(&x, &f, 2, 2, 1).unwrap(), 4);
        assert_eq!(arrangement_depth(&x, &f).unwrap().depth, 4);
    }

    #[test]
    fn convex_position_k5_matches_oracle() {
        let x = complete_complex(5, 2).unwrap();
        let f = Placement::integer(vec![(0, 10), (9, 3), (6, -8), (-6, -8), (-9, 3)]).unwrap();
        let a = geometric_overlap(&x, &f).unwrap();
        let b = arrangement_depth(&x, &f).unwrap();
        assert_eq!(a.depth, b.depth);
        assert!(a.depth >= 1);
    }

    #[test]
    fn gaussian_placements_are_seeded() {
        assert_eq!(Placement::gaussian(6, 3), Placement::gaussian(6, 3));
        assert_ne!(Placement::gaussian(6, 3), Placement::gaussian(6, 4));
    }
}
