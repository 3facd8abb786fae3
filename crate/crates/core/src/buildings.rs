//! Subspaces of F_q^r, spherical buildings and their section graphs.

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::field::Field;
use itertools::Itertools;
use std::fmt::Write;

pub const DEFAULT_VERTEX_CAP: usize = 200_000;

/// A subspace of F_q^r in reduced row-echelon form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subspace {
    rows: Vec<Vec<u16>>,
    r: usize,
}

/// Reduced row-echelon form with zero rows dropped.
pub fn rref(f: &Field, rows: &[Vec<u16>]) -> Vec<Vec<u16>> {
    let mut m: Vec<Vec<u16>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let s = f.inv(m[rank][col]);
        for x in m[rank].iter_mut() {
            *x = f.mul(*x, s);
        }
        let prow = m[rank].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != rank && row[col] != 0 {
                let c = row[col];
                for (x, &y) in row.iter_mut().zip(&prow) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        rank += 1;
    }
    m.truncate(rank);
    m
}

impl Subspace {
    /// The span of `rows` (vectors of length `r`).
    pub fn span(f: &Field, r: usize, rows: &[Vec<u16>]) -> Subspace {
        assert!(rows.iter().all(|v| v.len() == r));
        Subspace { rows: rref(f, rows), r }
    }

    pub fn ambient_dim(&self) -> usize {
        self.r
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u16>] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|row| row.iter().position(|&x| x != 0).unwrap()).collect()
    }

    /// Reduces `v` against the echelon basis; zero iff `v` lies in the subspace.
    pub fn reduce(&self, f: &Field, v: &[u16]) -> Vec<u16> {
        let mut v = v.to_vec();
        for (row, p) in self.rows.iter().zip(self.pivots()) {
            let c = v[p];
            if c != 0 {
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        v
    }

    pub fn contains_vector(&self, f: &Field, v: &[u16]) -> bool {
        self.reduce(f, v).iter().all(|&x| x == 0)
    }

    /// `other ⊆ self`.
    pub fn contains(&self, f: &Field, other: &Subspace) -> bool {
        other.dim() <= self.dim() && other.rows.iter().all(|v| self.contains_vector(f, v))
    }
}

/// Number of `k`-dimensional subspaces of F_q^r.
pub fn gaussian_binomial(r: u32, k: u32, q: u64) -> Result<u128> {
    if k > r || q < 2 {
        return Err(Error::BadParameter(format!("gaussian binomial ({r} {k})_{q}")));
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for j in 0..k {
        num = num
            .checked_mul(q.checked_pow(r - j).and_then(|x| x.checked_sub(1)).ok_or_else(overflow)?)
            .ok_or_else(overflow)?;
        den = den.checked_mul(q.pow(j + 1) - 1).ok_or_else(overflow)?;
    }
    Ok(num / den)
}

fn overflow() -> Error {
    Error::ResourceLimit("gaussian binomial overflows u128".into())
}

/// All `k`-dimensional subspaces of F_q^r, canonical and sorted.
pub fn enumerate_subspaces(f: &Field, r: usize, k: usize) -> Result<Vec<Subspace>> {
    if k == 0 || k >= r {
        return Err(Error::BadParameter(format!("need 1 <= k <= r-1, got r = {r}, k = {k}")));
    }
    let q = f.q as u16;
    let mut out = Vec::new();
    for pivots in (0..r).combinations(k) {
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|t| ((pivots[t] + 1)..r).filter(|j| !pivots.contains(j)).map(move |j| (t, j)))
            .collect();
        let mut digits = vec![0u16; free.len()];
        loop {
            let mut rows = vec![vec![0u16; r]; k];
            for (t, &p) in pivots.iter().enumerate() {
                rows[t][p] = 1;
            }
            for (&(t, j), &x) in free.iter().zip(&digits) {
                rows[t][j] = x;
            }
            out.push(Subspace { rows, r });
            // mixed-radix increment
            let mut pos = 0;
            while pos < digits.len() {
                digits[pos] += 1;
                if digits[pos] < q {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
            if pos == digits.len() {
                break;
            }
        }
    }
    out.sort();
    Ok(out)
}

/// The flag complex of F_q^r with its vertex subspaces.
#[derive(Clone, Debug)]
pub struct Building {
    pub r: usize,
    pub q: u32,
    pub field: Field,
    /// Vertex id `v` is the subspace `subspaces[v]`; ids are ordered by dimension, then canonically.
    pub subspaces: Vec<Subspace>,
    pub complex: Complex,
}

pub fn spherical_building(r: usize, q: u32) -> Result<Building> {
    spherical_building_with_cap(r, q, DEFAULT_VERTEX_CAP)
}

pub fn spherical_building_with_cap(r: usize, q: u32, cap: usize) -> Result<Building> {
    if r < 2 {
        return Err(Error::BadParameter(format!("spherical building needs r >= 2, got {r}")));
    }
    let field = Field::new(q)?;
    let mut total: u128 = 0;
    for k in 1..r {
        total += gaussian_binomial(r as u32, k as u32, q as u64)?;
    }
    if total > cap as u128 {
        return Err(Error::ResourceLimit(format!("S({r},{q}) has {total} vertices, cap is {cap}")));
    }
    let by_dim: Vec<Vec<Subspace>> = (1..r).map(|k| enumerate_subspaces(&field, r, k)).collect::<Result<_>>()?;
    let mut offset = vec![0usize; r];
    for k in 1..r - 1 {
        offset[k] = offset[k - 1] + by_dim[k - 1].len();
    }
    // up[k][u]: indices of (k+2)-dim subspaces containing the u-th (k+1)-dim one
    let up: Vec<Vec<Vec<usize>>> = (0..r.saturating_sub(2))
        .map(|k| {
            by_dim[k]
                .iter()
                .map(|u| (0..by_dim[k + 1].len()).filter(|&w| by_dim[k + 1][w].contains(&field, u)).collect())
                .collect()
        })
        .collect();
    let mut facets = Vec::new();
    let mut chain = Vec::with_capacity(r - 1);
    fn extend(k: usize, u: usize, up: &[Vec<Vec<usize>>], offset: &[usize], chain: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        chain.push((offset[k] + u) as u32);
        if k == up.len() {
            out.push(chain.clone());
        } else {
            for &w in &up[k][u] {
                extend(k + 1, w, up, offset, chain, out);
            }
        }
        chain.pop();
    }
    for u in 0..by_dim[0].len() {
        extend(0, u, &up, &offset, &mut chain, &mut facets);
    }
    let complex = Complex::from_facets(facets)?;
    let subspaces = by_dim.into_iter().flatten().collect();
    Ok(Building { r, q, field, subspaces, complex })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Black,
    White,
}

/// Per-vertex types of a building-typed complex: the subspace dimension for
/// building vertices, taken mod 4 when combined with other typed vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexTypes {
    pub r: usize,
    pub q: u32,
    /// Indexed like `X(0)` of the complex these types annotate.
    pub types: Vec<u8>,
}

impl Building {
    pub fn vertex_types(&self) -> VertexTypes {
        VertexTypes { r: self.r, q: self.q, types: self.subspaces.iter().map(|s| s.dim() as u8).collect() }
    }

    pub fn vertex_colors(&self) -> Result<Vec<Color>> {
        self.vertex_types().vertex_colors()
    }

    /// Annotation sidecar: `r`, `q` header lines, then `<id> <dim> <row>...`
    /// with each row written as fixed-width hex field elements.
    pub fn annotation(&self) -> String {
        let width = format!("{:x}", self.q - 1).len();
        let mut out = format!("r {}\nq {}\n", self.r, self.q);
        for (id, s) in self.subspaces.iter().enumerate() {
            write!(out, "{id} {}", s.dim()).unwrap();
            for row in s.rows() {
                out.push(' ');
                for &x in row {
                    write!(out, "{x:0width$x}").unwrap();
                }
            }
            out.push('\n');
        }
        out
    }
}

impl VertexTypes {
    fn require_r4(&self) -> Result<()> {
        if self.r != 4 {
            return Err(Error::NotAnnotated(format!("black/white coloring is defined for r = 4, got r = {}", self.r)));
        }
        Ok(())
    }

    pub fn vertex_colors(&self) -> Result<Vec<Color>> {
        self.require_r4()?;
        self.types
            .iter()
            .map(|&t| match t % 4 {
                1 | 3 => Ok(Color::Black),
                2 => Ok(Color::White),
                _ => Err(Error::NotAnnotated("vertex of type 0 has no color".into())),
            })
            .collect()
    }

    /// Color of an edge `{u, v}` from the type difference.
    pub fn edge_color(&self, u: usize, v: usize) -> Result<Color> {
        self.require_r4()?;
        match (4 + self.types[u] as i32 - self.types[v] as i32) % 4 {
            1 | 3 => Ok(Color::Black),
            2 => Ok(Color::White),
            _ => Err(Error::NotAnnotated(format!("edge between vertices {u} and {v} of equal type"))),
        }
    }

    /// Types after coning with an apex of type 0 appended last.
    pub fn with_apex(&self) -> VertexTypes {
        let mut types = self.types.clone();
        types.push(0);
        VertexTypes { r: self.r, q: self.q, types }
    }

    /// Reads the annotation sidecar; vertex ids must match the complex's `X(0)`.
    pub fn parse_annotation(text: &str, x: &Complex) -> Result<VertexTypes> {
        let mut r = None;
        let mut q = None;
        let mut types = vec![None; x.n_vertices()];
        for (n, line) in text.lines().enumerate() {
            let line_no = n + 1;
            let l = line.split('#').next().unwrap_or("").trim();
            if l.is_empty() {
                continue;
            }
            let parts: Vec<&str> = l.split_whitespace().collect();
            let bad = |msg: String| Error::Parse { line: line_no, msg };
            match parts[0] {
                "r" | "q" => {
                    let v: u32 = parts.get(1).and_then(|s| s.parse().ok()).ok_or_else(|| bad("expected integer".into()))?;
                    if parts[0] == "r" {
                        r = Some(v as usize)
                    } else {
                        q = Some(v)
                    }
                }
                id => {
                    let id: u32 = id.parse().map_err(|_| bad(format!("bad vertex id {id:?}")))?;
                    let dim: u8 = parts.get(1).and_then(|s| s.parse().ok()).ok_or_else(|| bad("missing dimension".into()))?;
                    if parts.len() != 2 + dim as usize {
                        return Err(bad(format!("expected {dim} basis rows")));
                    }
                    let v = x.vertex_index(id).ok_or_else(|| bad(format!("vertex {id} not in complex")))?;
                    types[v] = Some(dim);
                }
            }
        }
        let r = r.ok_or_else(|| Error::NotAnnotated("missing r".into()))?;
        let q = q.ok_or_else(|| Error::NotAnnotated("missing q".into()))?;
        let types = types
            .into_iter()
            .enumerate()
            .map(|(v, t)| t.ok_or_else(|| Error::NotAnnotated(format!("vertex {} has no annotation", x.vertex_id(v)))))
            .collect::<Result<Vec<u8>>>()?;
        Ok(VertexTypes { r, q, types })
    }
}

/// Bipartite incidence graph between `i`- and `j`-dimensional subspaces.
#[derive(Clone, Debug)]
pub struct SectionGraph {
    pub r: usize,
    pub q: u32,
    pub i: usize,
    pub j: usize,
    pub left: usize,
    pub right: usize,
    /// `(left index, right index)` with the left subspace contained in the right one.
    pub edges: Vec<(usize, usize)>,
    pub left_degree: usize,
    pub right_degree: usize,
}

pub fn section_graph(r: usize, q: u32, i: usize, j: usize) -> Result<SectionGraph> {
    if !(1 <= i && i < j && j < r) {
        return Err(Error::BadParameter(format!("need 1 <= i < j <= r-1, got r = {r}, i = {i}, j = {j}")));
    }
    let f = Field::new(q)?;
    let n = gaussian_binomial(r as u32, i as u32, q as u64)? + gaussian_binomial(r as u32, j as u32, q as u64)?;
    if n > DEFAULT_VERTEX_CAP as u128 {
        return Err(Error::ResourceLimit(format!("section graph has {n} vertices")));
    }
    let left = enumerate_subspaces(&f, r, i)?;
    let right = enumerate_subspaces(&f, r, j)?;
    let mut edges = Vec::new();
    for (a, u) in left.iter().enumerate() {
        for (b, w) in right.iter().enumerate() {
            if w.contains(&f, u) {
                edges.push((a, b));
            }
        }
    }
    let left_degree = gaussian_binomial((r - i) as u32, (j - i) as u32, q as u64)? as usize;
    let right_degree = gaussian_binomial(j as u32, i as u32, q as u64)? as usize;
    Ok(SectionGraph { r, q, i, j, left: left.len(), right: right.len(), edges, left_degree, right_degree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_binomial(4, 1, 2).unwrap(), 15);
        assert_eq!(gaussian_binomial(4, 2, 2).unwrap(), 35);
        assert_eq!(gaussian_binomial(5, 0, 3).unwrap(), 1);
        assert_eq!(gaussian_binomial(4, 2, 3).unwrap(), 130);
        assert!(gaussian_binomial(2, 3, 2).is_err());
    }

    #[test]
    fn subspace_counts_match_binomials() {
        for (r, q) in [(2usize, 2u32), (3, 2), (4, 2), (3, 3), (4, 3), (3, 4)] {
            let f = Field::new(q).unwrap();
            for k in 1..r {
                let s = enumerate_subspaces(&f, r, k).unwrap();
                assert_eq!(s.len() as u128, gaussian_binomial(r as u32, k as u32, q as u64).unwrap());
                assert!(s.windows(2).all(|w| w[0] < w[1]));
            }
        }
        let f = Field::new(2).unwrap();
        assert_eq!(enumerate_subspaces(&f, 3, 2).unwrap().len(), 7);
        assert_eq!(enumerate_subspaces(&f, 2, 1).unwrap().len(), 3);
    }

    #[test]
    fn rref_is_canonical_under_row_operations() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for q in [2u32, 3, 4] {
            let f = Field::new(q).unwrap();
            for s in enumerate_subspaces(&f, 4, 2).unwrap() {
                let mut rows = s.rows().to_vec();
                for _ in 0..6 {
                    let (a, b) = (rng.random_range(0..2), rng.random_range(0..2));
                    let c = rng.random_range(1..q) as u16;
                    if a == b {
                        rows[a].iter_mut().for_each(|x| *x = f.mul(*x, c));
                    } else {
                        let src = rows[b].clone();
                        for (x, y) in rows[a].iter_mut().zip(src) {
                            *x = f.add(*x, f.mul(c, y));
                        }
                    }
                }
                assert_eq!(Subspace::span(&f, 4, &rows), s);
            }
        }
    }

    #[test]
    fn inclusion_matches_membership() {
        let f = Field::new(3).unwrap();
        let lines = enumerate_subspaces(&f, 3, 1).unwrap();
        let planes = enumerate_subspaces(&f, 3, 2).unwrap();
        for u in &lines {
            for w in &planes {
                // elementwise: every multiple of the spanning vector lies in w
                let v = &u.rows()[0];
                let all = (0..3u16).all(|c| w.contains_vector(&f, &v.iter().map(|&x| f.mul(c, x)).collect::<Vec<_>>()));
                let rank = rref(&f, &[w.rows().to_vec(), u.rows().to_vec()].concat()).len();
                assert_eq!(w.contains(&f, u), all);
                assert_eq!(w.contains(&f, u), rank == w.dim());
            }
        }
    }

    #[test]
    fn small_buildings() {
        let s32 = spherical_building(3, 2).unwrap();
        assert_eq!(s32.complex.f_vector(), vec![14, 21]);
        assert_eq!(s32.complex.m(1), Some(3));
        let s42 = spherical_building(4, 2).unwrap();
        assert_eq!(s42.complex.n_vertices(), 65);
        assert_eq!(s42.complex.dim(), 2);
        assert!(s42.complex.is_pure());
        let s22 = spherical_building(2, 3).unwrap();
        assert_eq!(s22.complex.dim(), 0);
        assert_eq!(s22.complex.n_vertices(), 4);
        assert!(matches!(spherical_building_with_cap(4, 3, 100), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn colors_and_annotation() {
        let b = spherical_building(4, 2).unwrap();
        let colors = b.vertex_colors().unwrap();
        assert_eq!(colors.iter().filter(|&&c| c == Color::Black).count(), 30);
        assert!(colors[15..50].iter().all(|&c| c == Color::White));
        let t = VertexTypes::parse_annotation(&b.annotation(), &b.complex).unwrap();
        assert_eq!(t, b.vertex_types());
        let s3 = spherical_building(3, 2).unwrap();
        assert!(matches!(s3.vertex_colors(), Err(Error::NotAnnotated(_))));
    }

    #[test]
    fn section_graph_degrees() {
        let z13 = section_graph(4, 2, 1, 3).unwrap();
        assert_eq!((z13.left, z13.right, z13.left_degree, z13.right_degree), (15, 15, 7, 7));
        let z12 = section_graph(4, 2, 1, 2).unwrap();
        assert_eq!((z12.left, z12.right, z12.left_degree, z12.right_degree), (15, 35, 7, 3));
        assert_eq!(z12.edges.len(), 105);
        for g in [&z13, &z12] {
            let mut dl = vec![0; g.left];
            let mut dr = vec![0; g.right];
            for &(a, b) in &g.edges {
                dl[a] += 1;
                dr[b] += 1;
            }
            assert!(dl.iter().all(|&d| d == g.left_degree));
            assert!(dr.iter().all(|&d| d == g.right_degree));
        }
    }
}
