//! Finite simplicial complexes with indexed cells, links and weighted norms.
//!
//! A cell of dimension `i` is a sorted tuple of `i + 1` vertex ids. Cells of
//! each dimension are stored in lexicographic order and addressed by their
//! position in that order. Vertex ids are arbitrary `u32` values; "vertex
//! `v`" in the APIs below means the index of the vertex in `X(0)`.

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::rational::{ratio, Rational};
use rand::Rng;
use std::cmp::Ordering;

#[derive(Clone, Debug)]
pub struct Complex {
    d: usize,
    /// `cells[i]`: flattened tuples of length `i + 1`.
    cells: Vec<Vec<u32>>,
    /// `faces[i]`: for `i >= 1`, the `i + 1` faces of every `i`-cell (stride `i + 1`),
    /// face `j` omitting vertex position `j`.
    faces: Vec<Vec<u32>>,
    coface_off: Vec<Vec<u32>>,
    coface_idx: Vec<Vec<u32>>,
    c_values: Vec<Vec<u64>>,
    m_table: Vec<Option<u64>>,
    pure: bool,
}

/// An `i`-cochain: a subset of `X(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cochain {
    pub dim: usize,
    pub bits: Bits,
}

impl serde::Serialize for Cochain {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Cochain", 2)?;
        st.serialize_field("dim", &self.dim)?;
        st.serialize_field("support", &self.bits.iter_ones().collect::<Vec<_>>())?;
        st.end()
    }
}

impl Cochain {
    pub fn new(dim: usize, bits: Bits) -> Self {
        Cochain { dim, bits }
    }

    pub fn size(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn is_zero(&self) -> bool {
        self.bits.is_zero()
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.dim, other.dim);
        Cochain { dim: self.dim, bits: self.bits.xor(&other.bits) }
    }
}

#[derive(Clone, Debug)]
pub struct WeightTable {
    pub dim: usize,
    pub c_values: Vec<u64>,
    pub w_values: Vec<Rational>,
}

fn cmp_cell(a: &[u32], b: &[u32]) -> Ordering {
    a.cmp(b)
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for j in 0..k {
        r = r * (n - j) as u128 / (j + 1) as u128;
    }
    r as u64
}

impl Complex {
    /// Pure complex from its facets; all facets must have the same size.
    pub fn from_facets<I, F>(facets: I) -> Result<Complex>
    where
        I: IntoIterator<Item = F>,
        F: AsRef<[u32]>,
    {
        let facets: Vec<Vec<u32>> = facets.into_iter().map(|f| f.as_ref().to_vec()).collect();
        let Some(first) = facets.first() else {
            return Err(Error::EmptyInput);
        };
        let size = first.len();
        if size == 0 {
            return Err(Error::EmptyInput);
        }
        if let Some(f) = facets.iter().find(|f| f.len() != size) {
            return Err(Error::MixedDimensions { expected: size, found: f.len(), line: None });
        }
        let c = Complex::build(size - 1, facets)?;
        debug_assert!(c.pure);
        Ok(c)
    }

    /// Downward closure of `cells`, each of dimension at most `d`. The result
    /// may be non-pure; weight-based operations then fail with `NotPure`.
    pub fn build(d: usize, cells: Vec<Vec<u32>>) -> Result<Complex> {
        let mut by_dim: Vec<Vec<Vec<u32>>> = vec![Vec::new(); d + 1];
        for mut c in cells {
            c.sort_unstable();
            if c.is_empty() || c.len() > d + 1 {
                return Err(Error::BadDimension(format!("cell {c:?} in a complex of dimension {d}")));
            }
            if c.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::BadParameter(format!("repeated vertex in cell {c:?}")));
            }
            by_dim[c.len() - 1].push(c);
        }
        for i in (0..=d).rev() {
            by_dim[i].sort_unstable();
            by_dim[i].dedup();
            if i > 0 {
                let mut lower = Vec::with_capacity(by_dim[i].len() * (i + 1));
                for c in &by_dim[i] {
                    for j in 0..=i {
                        let mut f = c.clone();
                        f.remove(j);
                        lower.push(f);
                    }
                }
                by_dim[i - 1].append(&mut lower);
            }
        }
        let cells: Vec<Vec<u32>> = by_dim.into_iter().map(|v| v.into_iter().flatten().collect()).collect();
        let mut x = Complex {
            d,
            cells,
            faces: vec![Vec::new(); d + 1],
            coface_off: vec![Vec::new(); d + 1],
            coface_idx: vec![Vec::new(); d + 1],
            c_values: vec![Vec::new(); d + 1],
            m_table: vec![None; d + 1],
            pure: false,
        };
        for i in 1..=d {
            let n = x.n_cells(i);
            let mut faces = Vec::with_capacity(n * (i + 1));
            let mut buf = Vec::with_capacity(i);
            for k in 0..n {
                let c = x.cell(i, k);
                for j in 0..=i {
                    buf.clear();
                    buf.extend(c.iter().enumerate().filter(|&(t, _)| t != j).map(|(_, &v)| v));
                    let f = x.find(i - 1, &buf).expect("downward closed") as u32;
                    faces.push(f);
                }
            }
            x.faces[i] = faces;
        }
        for i in 0..d {
            let n = x.n_cells(i);
            let mut count = vec![0u32; n + 1];
            for &f in &x.faces[i + 1] {
                count[f as usize + 1] += 1;
            }
            for k in 0..n {
                count[k + 1] += count[k];
            }
            let mut fill = count.clone();
            let mut idx = vec![0u32; x.faces[i + 1].len()];
            for (t, chunk) in x.faces[i + 1].chunks(i + 2).enumerate() {
                for &f in chunk {
                    idx[fill[f as usize] as usize] = t as u32;
                    fill[f as usize] += 1;
                }
            }
            x.coface_off[i] = count;
            x.coface_idx[i] = idx;
        }
        x.c_values[d] = vec![1; x.n_cells(d)];
        for i in (0..d).rev() {
            let vals: Vec<u64> = (0..x.n_cells(i))
                .map(|k| {
                    let s: u64 = x.cofaces(i, k).iter().map(|&t| x.c_values[i + 1][t as usize]).sum();
                    debug_assert_eq!(s % (d - i) as u64, 0);
                    s / (d - i) as u64
                })
                .collect();
            x.c_values[i] = vals;
        }
        x.pure = x.n_cells(d) > 0 && (0..d).all(|i| x.c_values[i].iter().all(|&c| c > 0));
        let nv = x.n_cells(0);
        for i in 0..=d {
            let mut counts = vec![0u64; nv];
            if i == 0 {
                counts.iter_mut().for_each(|c| *c = 1);
            } else {
                for k in 0..x.n_cells(i) {
                    for &v in x.vertex_indices(i, k).iter() {
                        counts[v] += 1;
                    }
                }
            }
            x.m_table[i] = match counts.first() {
                Some(&c0) if counts.iter().all(|&c| c == c0) => Some(c0),
                _ => None,
            };
        }
        Ok(x)
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn is_pure(&self) -> bool {
        self.pure
    }

    pub fn n_vertices(&self) -> usize {
        self.n_cells(0)
    }

    pub fn n_cells(&self, i: usize) -> usize {
        if i > self.d {
            0
        } else {
            self.cells[i].len() / (i + 1)
        }
    }

    pub fn f_vector(&self) -> Vec<usize> {
        (0..=self.d).map(|i| self.n_cells(i)).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        (0..=self.d).map(|i| if i % 2 == 0 { 1 } else { -1 } * self.n_cells(i) as i64).sum()
    }

    pub fn cell(&self, i: usize, k: usize) -> &[u32] {
        &self.cells[i][k * (i + 1)..(k + 1) * (i + 1)]
    }

    pub fn cells(&self, i: usize) -> impl Iterator<Item = &[u32]> + '_ {
        self.cells[i].chunks(i + 1)
    }

    pub fn facets(&self) -> impl Iterator<Item = &[u32]> + '_ {
        self.cells(self.d)
    }

    pub fn vertex_id(&self, v: usize) -> u32 {
        self.cells[0][v]
    }

    pub fn vertex_index(&self, id: u32) -> Option<usize> {
        self.find(0, &[id])
    }

    /// Vertex indices (into `X(0)`) of the `k`-th `i`-cell.
    pub fn vertex_indices(&self, i: usize, k: usize) -> Vec<usize> {
        self.cell(i, k).iter().map(|&id| self.vertex_index(id).expect("vertex")).collect()
    }

    /// Index of a sorted vertex tuple in `X(i)`.
    pub fn find(&self, i: usize, cell: &[u32]) -> Option<usize> {
        if i > self.d || cell.len() != i + 1 {
            return None;
        }
        let n = self.n_cells(i);
        let (mut lo, mut hi) = (0, n);
        while lo < hi {
            let mid = (lo + hi) / 2;
            match cmp_cell(self.cell(i, mid), cell) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    /// Index of an arbitrary-order vertex tuple; errors if it is not a cell.
    pub fn index_of(&self, cell: &[u32]) -> Result<(usize, usize)> {
        let mut c = cell.to_vec();
        c.sort_unstable();
        if c.is_empty() {
            return Err(Error::NotACell(c));
        }
        let i = c.len() - 1;
        self.find(i, &c).map(|k| (i, k)).ok_or(Error::NotACell(c))
    }

    pub fn faces_of(&self, i: usize, k: usize) -> &[u32] {
        &self.faces[i][k * (i + 1)..(k + 1) * (i + 1)]
    }

    pub fn cofaces(&self, i: usize, k: usize) -> &[u32] {
        if i >= self.d {
            return &[];
        }
        let off = &self.coface_off[i];
        &self.coface_idx[i][off[k] as usize..off[k + 1] as usize]
    }

    /// `c(σ)`: number of top cells containing each `i`-cell.
    pub fn c_values(&self, i: usize) -> &[u64] {
        &self.c_values[i]
    }

    /// `m(i)` when it is the same for every vertex.
    pub fn m(&self, i: usize) -> Option<u64> {
        self.m_table.get(i).copied().flatten()
    }

    pub fn m_table(&self) -> &[Option<u64>] {
        &self.m_table
    }

    pub fn is_homogeneous(&self) -> bool {
        self.m_table.iter().all(Option::is_some)
    }

    /// Whether `c(σ)` is the same for every `i`-cell.
    pub fn constant_c(&self, i: usize) -> Option<u64> {
        let v = &self.c_values[i];
        let c0 = *v.first()?;
        v.iter().all(|&c| c == c0).then_some(c0)
    }

    fn require_pure(&self) -> Result<()> {
        if self.pure {
            Ok(())
        } else {
            Err(Error::NotPure)
        }
    }

    /// Common denominator of the weights in dimension `i`.
    pub fn weight_denominator(&self, i: usize) -> u64 {
        binomial(self.d as u64 + 1, i as u64 + 1) * self.n_cells(self.d) as u64
    }

    pub fn weight_table(&self, i: usize) -> Result<WeightTable> {
        self.require_pure()?;
        self.check_dim(i)?;
        let den = self.weight_denominator(i);
        let c_values = self.c_values[i].clone();
        let w_values = c_values.iter().map(|&c| ratio(c, den)).collect();
        Ok(WeightTable { dim: i, c_values, w_values })
    }

    fn check_dim(&self, i: usize) -> Result<()> {
        if i > self.d {
            Err(Error::DimensionMismatch { expected: self.d, found: i })
        } else {
            Ok(())
        }
    }

    fn check_cochain(&self, a: &Cochain) -> Result<()> {
        self.check_dim(a.dim)?;
        if a.bits.len() != self.n_cells(a.dim) {
            return Err(Error::DimensionMismatch { expected: self.n_cells(a.dim), found: a.bits.len() });
        }
        Ok(())
    }

    /// `Σ_{σ∈α} c(σ)`; the norm is this over [`Complex::weight_denominator`].
    pub fn norm_units(&self, a: &Cochain) -> u64 {
        let c = &self.c_values[a.dim];
        a.bits.iter_ones().map(|k| c[k]).sum()
    }

    pub fn norm(&self, a: &Cochain) -> Result<Rational> {
        self.require_pure()?;
        self.check_cochain(a)?;
        Ok(ratio(self.norm_units(a), self.weight_denominator(a.dim)))
    }

    pub fn zero_cochain(&self, i: usize) -> Cochain {
        Cochain::new(i, Bits::zeros(self.n_cells(i)))
    }

    pub fn full_cochain(&self, i: usize) -> Cochain {
        Cochain::new(i, Bits::ones(self.n_cells(i)))
    }

    pub fn cochain_from_cells<C: AsRef<[u32]>>(&self, i: usize, cells: impl IntoIterator<Item = C>) -> Result<Cochain> {
        let mut bits = Bits::zeros(self.n_cells(i));
        for c in cells {
            let (j, k) = self.index_of(c.as_ref())?;
            if j != i {
                return Err(Error::DimensionMismatch { expected: i, found: j });
            }
            bits.set(k, true);
        }
        Ok(Cochain::new(i, bits))
    }

    /// Each cell included independently with probability 1/2.
    pub fn random_cochain(&self, i: usize, rng: &mut impl Rng) -> Cochain {
        let n = self.n_cells(i);
        Cochain::new(i, Bits::from_indices(n, (0..n).filter(|_| rng.random::<bool>())))
    }

    pub fn cochain_cells(&self, a: &Cochain) -> Vec<Vec<u32>> {
        a.bits.iter_ones().map(|k| self.cell(a.dim, k).to_vec()).collect()
    }

    /// For every vertex, the indices of the `i`-cells containing it.
    pub fn vertex_stars(&self, i: usize) -> Vec<Vec<usize>> {
        let mut stars = vec![Vec::new(); self.n_vertices()];
        for k in 0..self.n_cells(i) {
            for &id in self.cell(i, k) {
                stars[self.vertex_index(id).expect("vertex")].push(k);
            }
        }
        stars
    }

    /// The sub-complex spanned by all cells of dimension at most `k`.
    pub fn skeleton(&self, k: usize) -> Complex {
        let k = k.min(self.d);
        let cells = self.cells(k).map(<[u32]>::to_vec).collect();
        Complex::build(k, cells).expect("skeleton of a valid complex")
    }

    /// The link of a cell given by its vertex ids.
    pub fn link(&self, tau: &[u32]) -> Result<LinkView> {
        let (t, k) = self.index_of(tau)?;
        if t >= self.d {
            return Err(Error::BadDimension(format!("link of a {t}-cell in a {}-complex", self.d)));
        }
        let base = self.cell(t, k).to_vec();
        let mut level = vec![k as u32];
        let mut link_cells = Vec::new();
        for j in t..self.d {
            let mut next: Vec<u32> = level.iter().flat_map(|&c| self.cofaces(j, c as usize).iter().copied()).collect();
            next.sort_unstable();
            next.dedup();
            for &c in &next {
                link_cells.push(self.cell(j + 1, c as usize).iter().copied().filter(|v| base.binary_search(v).is_err()).collect());
            }
            level = next;
        }
        let link_dim = self.d - t - 1;
        let complex = Complex::build(link_dim, link_cells)?;
        let mut cell_map = Vec::with_capacity(link_dim + 1);
        let mut buf = Vec::new();
        for j in 0..=link_dim {
            let map: Vec<usize> = (0..complex.n_cells(j))
                .map(|c| {
                    buf.clear();
                    buf.extend_from_slice(complex.cell(j, c));
                    buf.extend_from_slice(&base);
                    buf.sort_unstable();
                    self.find(j + t + 1, &buf).expect("link cell lifts")
                })
                .collect();
            cell_map.push(map);
        }
        Ok(LinkView { base, base_dim: t, complex, cell_map })
    }

    pub fn vertex_link(&self, v: usize) -> Result<LinkView> {
        self.link(&[self.vertex_id(v)])
    }

    pub fn vertex_links(&self) -> Result<Vec<LinkView>> {
        (0..self.n_vertices()).map(|v| self.vertex_link(v)).collect()
    }

    /// `α_v` on the link of vertex `v`.
    pub fn restrict(&self, a: &Cochain, v: usize) -> Result<Cochain> {
        self.check_cochain(a)?;
        if a.dim == 0 {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        self.vertex_link(v)?.restrict(a)
    }
}

/// The link `X_τ` together with its embedding into the parent complex.
#[derive(Clone, Debug)]
pub struct LinkView {
    pub base: Vec<u32>,
    pub base_dim: usize,
    pub complex: Complex,
    /// `cell_map[j][c]`: index in `X(j + base_dim + 1)` of `c ∪ τ`.
    pub cell_map: Vec<Vec<usize>>,
}

impl LinkView {
    pub fn to_parent(&self, j: usize, c: usize) -> usize {
        self.cell_map[j][c]
    }

    /// Index of the link cell `σ ∖ τ` for a parent cell `σ ⊇ τ`.
    pub fn from_parent(&self, parent: &Complex, i: usize, k: usize) -> Option<usize> {
        let sigma = parent.cell(i, k);
        if !self.base.iter().all(|v| sigma.binary_search(v).is_ok()) || i <= self.base_dim {
            return None;
        }
        let rest: Vec<u32> = sigma.iter().copied().filter(|v| self.base.binary_search(v).is_err()).collect();
        self.complex.find(i - self.base_dim - 1, &rest)
    }

    /// Restriction of a parent `i`-cochain to a `(i - dim τ - 1)`-cochain of the link.
    pub fn restrict(&self, a: &Cochain) -> Result<Cochain> {
        let j = a
            .dim
            .checked_sub(self.base_dim + 1)
            .filter(|&j| j < self.cell_map.len())
            .ok_or(Error::DimensionMismatch { expected: self.base_dim + 1, found: a.dim })?;
        let map = &self.cell_map[j];
        Ok(Cochain::new(j, Bits::from_indices(map.len(), (0..map.len()).filter(|&c| a.bits.get(map[c])))))
    }

    /// Pushes a link cochain forward: `η ↦ η ∪ τ`.
    pub fn lift(&self, eta: &Cochain, parent: &Complex) -> Cochain {
        let i = eta.dim + self.base_dim + 1;
        let map = &self.cell_map[eta.dim];
        Cochain::new(i, Bits::from_indices(parent.n_cells(i), eta.bits.iter_ones().map(|c| map[c])))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete_complex, sphere_boundary};
    use num_traits::{One, Zero};

    #[test]
    fn single_simplex() {
        let x = Complex::from_facets([[0u32, 1, 2]]).unwrap();
        assert_eq!(x.f_vector(), vec![3, 3, 1]);
        assert_eq!(x.cofaces(0, 0), &[0, 1]);
        assert_eq!(x.faces_of(2, 0), &[2, 1, 0]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(Complex::from_facets(Vec::<Vec<u32>>::new()), Err(Error::EmptyInput)));
        assert!(matches!(
            Complex::from_facets([vec![0u32, 1, 2], vec![1, 2]]),
            Err(Error::MixedDimensions { expected: 3, found: 2, .. })
        ));
        assert!(matches!(Complex::from_facets([[0u32, 0, 1]]), Err(Error::BadParameter(_))));
    }

    #[test]
    fn tetrahedron_boundary_weights() {
        let x = sphere_boundary(2);
        assert_eq!(x.f_vector(), vec![4, 6, 4]);
        let w = x.weight_table(1).unwrap();
        assert!(w.w_values.iter().all(|v| *v == ratio(1, 6)));
        let one_edge = x.cochain_from_cells(1, [[0u32, 1]]).unwrap();
        assert_eq!(x.norm(&one_edge).unwrap(), ratio(1, 6));
        assert_eq!(x.norm(&x.full_cochain(1)).unwrap(), Rational::one());
        assert_eq!(x.norm(&x.zero_cochain(1)).unwrap(), Rational::zero());
    }

    #[test]
    fn complete_vertex_weights() {
        let x = complete_complex(5, 2).unwrap();
        let w = x.weight_table(0).unwrap();
        assert!(w.c_values.iter().all(|&c| c == 6));
        assert!(w.w_values.iter().all(|v| *v == ratio(1, 5)));
        assert_eq!(x.m_table(), &[Some(1), Some(4), Some(6)]);
    }

    #[test]
    fn links() {
        let x = sphere_boundary(2);
        let l = x.vertex_link(0).unwrap();
        assert_eq!(l.complex.f_vector(), vec![3, 3]);
        let y = complete_complex(6, 2).unwrap();
        let l = y.link(&[2, 4]).unwrap();
        assert_eq!(l.complex.dim(), 0);
        assert_eq!(l.complex.f_vector(), vec![4]);
        for j in 0..=l.complex.dim() {
            for c in 0..l.complex.n_cells(j) {
                let p = l.to_parent(j, c);
                assert_eq!(l.from_parent(&y, j + 2, p), Some(c));
            }
        }
        assert!(matches!(y.link(&[0, 9]), Err(Error::NotACell(_))));
        assert!(matches!(y.link(&[0, 1, 2]), Err(Error::BadDimension(_))));
    }

    #[test]
    fn restriction_of_a_star() {
        let x = sphere_boundary(2);
        let star = Cochain::new(2, Bits::from_indices(4, (0..4).filter(|&k| x.cell(2, k).contains(&0))));
        let a0 = x.restrict(&star, 0).unwrap();
        assert_eq!(a0.size(), 3);
        assert!(x.restrict(&x.zero_cochain(2), 1).unwrap().is_zero());
    }

    #[test]
    fn non_pure_closure() {
        let x = Complex::build(2, vec![vec![0, 1, 2], vec![2, 3]]).unwrap();
        assert!(!x.is_pure());
        assert!(matches!(x.norm(&x.zero_cochain(1)), Err(Error::NotPure)));
        assert_eq!(x.c_values(1), &[1, 1, 1, 0]);
    }
}
