//! Linear algebra over F2 on dense bit vectors.

use crate::bits::Bits;

/// A subspace of F2^len kept in fully reduced echelon form.
///
/// Every basis row has a pivot (its lowest set index) and no other row has
/// a one in that column, so [`Span::reduce`] yields the canonical coset
/// representative: the unique element of `v + span` that vanishes on all
/// pivot columns.
#[derive(Clone, Debug)]
pub struct Span {
    len: usize,
    rows: Vec<Bits>,
    pivots: Vec<usize>,
}

impl Span {
    pub fn new(len: usize) -> Self {
        Span { len, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_vectors<'a>(len: usize, vectors: impl IntoIterator<Item = &'a Bits>) -> Self {
        let mut s = Span::new(len);
        for v in vectors {
            s.insert(v.clone());
        }
        s
    }

    /// The whole ambient space.
    pub fn full(len: usize) -> Self {
        let mut s = Span::new(len);
        for j in 0..len {
            s.rows.push(Bits::from_indices(len, [j]));
            s.pivots.push(j);
        }
        s
    }

    pub fn ambient_len(&self) -> usize {
        self.len
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Bits] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Adds `v` to the span; returns false when it was already contained.
    pub fn insert(&mut self, v: Bits) -> bool {
        assert_eq!(v.len(), self.len);
        let v = self.reduce(&v);
        let Some(p) = v.first_one() else {
            return false;
        };
        for row in &mut self.rows {
            if row.get(p) {
                row.xor_assign(&v);
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    pub fn reduce(&self, v: &Bits) -> Bits {
        let mut out = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if out.get(p) {
                out.xor_assign(row);
            }
        }
        out
    }

    pub fn contains(&self, v: &Bits) -> bool {
        self.reduce(v).is_zero()
    }

    fn non_pivots(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.len];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.len).filter(|&j| !is_pivot[j]).collect()
    }

    /// Unit vectors on the non-pivot columns; together with the basis they
    /// span the ambient space, and distinct combinations of them lie in
    /// distinct cosets.
    pub fn complement_basis(&self) -> Vec<Bits> {
        self.non_pivots().into_iter().map(|j| Bits::from_indices(self.len, [j])).collect()
    }

    /// Coordinates of the canonical representative of `v + span` on the
    /// non-pivot columns. Linear in `v`, with kernel exactly the span.
    pub fn project(&self, v: &Bits) -> Bits {
        let r = self.reduce(v);
        let cols = self.non_pivots();
        Bits::from_indices(cols.len(), cols.iter().enumerate().filter(|(_, &j)| r.get(j)).map(|(k, _)| k))
    }

    /// Matrix of [`Span::project`]: the image of each unit vector.
    pub fn projection_images(&self) -> Vec<Bits> {
        (0..self.len).map(|j| self.project(&Bits::from_indices(self.len, [j]))).collect()
    }
}

/// A linear map F2^domain -> F2^codomain stored by the images of unit vectors.
#[derive(Clone, Debug)]
pub struct LinearMap {
    domain: usize,
    codomain: usize,
    columns: Vec<Bits>,
}

impl LinearMap {
    pub fn from_columns(codomain: usize, columns: Vec<Bits>) -> Self {
        assert!(columns.iter().all(|c| c.len() == codomain));
        LinearMap { domain: columns.len(), codomain, columns }
    }

    pub fn domain(&self) -> usize {
        self.domain
    }

    pub fn codomain(&self) -> usize {
        self.codomain
    }

    pub fn columns(&self) -> &[Bits] {
        &self.columns
    }

    pub fn apply(&self, x: &Bits) -> Bits {
        assert_eq!(x.len(), self.domain);
        let mut out = Bits::zeros(self.codomain);
        for j in x.iter_ones() {
            out.xor_assign(&self.columns[j]);
        }
        out
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &LinearMap) -> LinearMap {
        assert_eq!(first.codomain, self.domain);
        LinearMap::from_columns(self.codomain, first.columns.iter().map(|c| self.apply(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Bits::is_zero)
    }

    pub fn image(&self) -> Span {
        Span::from_vectors(self.codomain, &self.columns)
    }

    pub fn rank(&self) -> usize {
        self.image().dim()
    }

    pub fn solver(&self) -> Solver {
        Solver::new(self)
    }
}

/// Gaussian elimination on the columns of a [`LinearMap`] that records, for
/// every reduced image row, the combination of unit vectors producing it.
#[derive(Clone, Debug)]
pub struct Solver {
    domain: usize,
    rows: Vec<Bits>,
    combos: Vec<Bits>,
    pivots: Vec<usize>,
    kernel: Vec<Bits>,
}

impl Solver {
    fn new(map: &LinearMap) -> Self {
        let mut s = Solver { domain: map.domain, rows: Vec::new(), combos: Vec::new(), pivots: Vec::new(), kernel: Vec::new() };
        for (j, col) in map.columns.iter().enumerate() {
            let (img, combo) = s.reduce(col, Bits::from_indices(map.domain, [j]));
            match img.first_one() {
                None => s.kernel.push(combo),
                Some(p) => {
                    for k in 0..s.rows.len() {
                        if s.rows[k].get(p) {
                            s.rows[k].xor_assign(&img);
                            s.combos[k].xor_assign(&combo);
                        }
                    }
                    s.rows.push(img);
                    s.combos.push(combo);
                    s.pivots.push(p);
                }
            }
        }
        s
    }

    fn reduce(&self, v: &Bits, mut combo: Bits) -> (Bits, Bits) {
        let mut img = v.clone();
        for k in 0..self.rows.len() {
            if img.get(self.pivots[k]) {
                img.xor_assign(&self.rows[k]);
                combo.xor_assign(&self.combos[k]);
            }
        }
        (img, combo)
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// A basis of the kernel (not reduced).
    pub fn kernel(&self) -> &[Bits] {
        &self.kernel
    }

    /// Some `x` with `map(x) = target`, if one exists.
    pub fn preimage(&self, target: &Bits) -> Option<Bits> {
        let (rest, combo) = self.reduce(target, Bits::zeros(self.domain));
        rest.is_zero().then_some(combo)
    }
}
