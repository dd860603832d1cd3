use super::matrix::Matrix;
use super::scalar::{Field, Scalar};

/// Incremental Gauss-Jordan elimination.
///
/// Rows are kept fully reduced: every stored row is zero in every other row's pivot column,
/// so reducing a vector against the span needs a single pass. Optionally each row carries a
/// preimage vector, which turns the reducer into a solver for `x * generators = v`.
#[derive(Clone, Debug)]
pub struct RowReducer {
    field: Field,
    ncols: usize,
    rows: Vec<Vec<Scalar>>,
    support: Vec<Vec<usize>>,
    pivots: Vec<usize>,
    pivot_row: Vec<Option<usize>>,
    preimages: Option<Vec<Vec<Scalar>>>,
    preimage_width: usize,
}

impl RowReducer {
    pub fn new(field: Field, ncols: usize) -> RowReducer {
        RowReducer {
            field,
            ncols,
            rows: Vec::new(),
            support: Vec::new(),
            pivots: Vec::new(),
            pivot_row: vec![None; ncols],
            preimages: None,
            preimage_width: 0,
        }
    }

    /// A reducer that records, for each stored row, which combination of inserted vectors produced it.
    /// Preimages are vectors of length `width`.
    pub fn with_preimages(field: Field, ncols: usize, width: usize) -> RowReducer {
        let mut r = RowReducer::new(field, ncols);
        r.preimages = Some(Vec::new());
        r.preimage_width = width;
        r
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    /// The component of `v` outside the span, in the pivot-complement normal form.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.reduce_tracking(v.to_vec(), None).0
    }

    fn reduce_tracking(&self, mut v: Vec<Scalar>, mut pre: Option<Vec<Scalar>>) -> (Vec<Scalar>, Option<Vec<Scalar>>) {
        assert_eq!(v.len(), self.ncols, "vector length does not match ambient dimension");
        let coeffs: Vec<(usize, Scalar)> =
            self.pivots.iter().enumerate().filter(|(_, &p)| !v[p].is_zero()).map(|(r, &p)| (r, v[p].clone())).collect();
        for (r, c) in coeffs {
            for &k in &self.support[r] {
                v[k].sub_mul(&c, &self.rows[r][k]);
            }
            if let (Some(pre), Some(pres)) = (pre.as_mut(), self.preimages.as_ref()) {
                for (a, b) in pre.iter_mut().zip(&pres[r]) {
                    if !b.is_zero() {
                        a.sub_mul(&c, b);
                    }
                }
            }
        }
        (v, pre)
    }

    /// Adds `v` to the span. Returns whether it was independent of the current rows.
    pub fn insert(&mut self, v: Vec<Scalar>) -> bool {
        assert!(self.preimages.is_none(), "use insert_with_preimage on a tracking reducer");
        self.insert_inner(v, None)
    }

    pub fn insert_with_preimage(&mut self, v: Vec<Scalar>, preimage: Vec<Scalar>) -> bool {
        assert!(self.preimages.is_some(), "reducer does not track preimages");
        assert_eq!(preimage.len(), self.preimage_width, "preimage has the wrong length");
        self.insert_inner(v, Some(preimage))
    }

    fn insert_inner(&mut self, v: Vec<Scalar>, pre: Option<Vec<Scalar>>) -> bool {
        if self.is_full() {
            return false;
        }
        let (mut w, mut pre) = self.reduce_tracking(v, pre);
        let Some(lead) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[lead].inv().expect("nonzero");
        let support: Vec<usize> = (lead..self.ncols).filter(|&k| !w[k].is_zero()).collect();
        for &k in &support {
            w[k] *= &inv;
        }
        if let Some(pre) = pre.as_mut() {
            for x in pre.iter_mut() {
                *x *= &inv;
            }
        }
        for r in 0..self.rows.len() {
            if self.rows[r][lead].is_zero() {
                continue;
            }
            let c = self.rows[r][lead].clone();
            for &k in &support {
                let (row, wk) = (&mut self.rows[r], &w[k]);
                row[k].sub_mul(&c, wk);
            }
            let row = &self.rows[r];
            self.support[r] = (0..self.ncols).filter(|&k| !row[k].is_zero()).collect();
            if let (Some(pre), Some(pres)) = (pre.as_ref(), self.preimages.as_mut()) {
                for (a, b) in pres[r].iter_mut().zip(pre) {
                    if !b.is_zero() {
                        a.sub_mul(&c, b);
                    }
                }
            }
        }
        self.pivot_row[lead] = Some(self.rows.len());
        self.pivots.push(lead);
        self.rows.push(w);
        self.support.push(support);
        if let (Some(pre), Some(pres)) = (pre, self.preimages.as_mut()) {
            pres.push(pre);
        }
        true
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// For `v` in the span, a combination of the inserted vectors' preimages mapping to it.
    pub fn express(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let pres = self.preimages.as_ref().expect("reducer does not track preimages");
        if !self.contains(v) {
            return None;
        }
        let mut out = vec![self.field.zero(); self.preimage_width];
        for (r, &p) in self.pivots.iter().enumerate() {
            let c = &v[p];
            if c.is_zero() {
                continue;
            }
            for (o, b) in out.iter_mut().zip(&pres[r]) {
                if !b.is_zero() {
                    o.add_mul(c, b);
                }
            }
        }
        Some(out)
    }

    /// Basis of the null space `{ x : row . x = 0 for every inserted row }`.
    pub fn kernel(&self) -> Subspace {
        let mut vectors = Vec::new();
        for free in (0..self.ncols).filter(|&c| self.pivot_row[c].is_none()) {
            let mut v = vec![self.field.zero(); self.ncols];
            v[free] = self.field.one();
            for (r, &p) in self.pivots.iter().enumerate() {
                if !self.rows[r][free].is_zero() {
                    v[p] = -&self.rows[r][free];
                }
            }
            vectors.push(v);
        }
        Subspace::from_spanning(self.field, self.ncols, vectors)
    }

    /// The span as a subspace in canonical RREF.
    pub fn to_subspace(&self) -> Subspace {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.pivots[r]);
        let rows = order.iter().map(|&r| self.rows[r].clone()).collect();
        let pivots = order.iter().map(|&r| self.pivots[r]).collect();
        Subspace {
            field: self.field,
            ambient: self.ncols,
            basis: Matrix::from_rows(self.field, self.ncols, rows),
            pivots,
        }
    }
}

/// A linear subspace of `k^n`, stored as a basis in reduced row-echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn from_spanning(field: Field, ambient: usize, vectors: Vec<Vec<Scalar>>) -> Subspace {
        let mut reducer = RowReducer::new(field, ambient);
        for v in vectors {
            reducer.insert(v);
            if reducer.is_full() {
                break;
            }
        }
        reducer.to_subspace()
    }

    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace { field, ambient, basis: Matrix::zeros(field, 0, ambient), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace { field, ambient, basis: Matrix::identity(field, ambient), pivots: (0..ambient).collect() }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vectors()
    }

    pub fn vector(&self, i: usize) -> &[Scalar] {
        self.basis.row(i)
    }

    /// `v` minus its component in the subspace along the non-pivot coordinates.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient);
        let mut out = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            let c = v[p].clone();
            if c.is_zero() {
                continue;
            }
            for (o, b) in out.iter_mut().zip(self.basis.row(r)) {
                if !b.is_zero() {
                    o.sub_mul(&c, b);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.vectors().iter().all(|v| self.contains(v))
    }

    /// Coefficients of `v` in the stored basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vectors = self.vectors();
        vectors.extend(other.vectors());
        Subspace::from_spanning(self.field, self.ambient, vectors)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // x U = y W  <=>  (x, -y) lies in the left kernel of [U; W].
        let stacked = self.basis.vstack(&other.basis);
        let left = stacked.transpose().kernel();
        let vectors = left.vectors().into_iter().map(|c| self.basis.vec_mul(&c[..self.dim()])).collect();
        Subspace::from_spanning(self.field, self.ambient, vectors)
    }

    /// Image under a linear map given as a matrix acting on row vectors.
    pub fn image(&self, map: &Matrix) -> Subspace {
        let vectors = self.vectors().iter().map(|v| map.vec_mul(v)).collect();
        Subspace::from_spanning(self.field, map.cols(), vectors)
    }

    pub fn quotient(&self) -> Quotient {
        quotient_basis(self)
    }
}

/// The quotient `k^n / sub`, realized on the coordinate vectors of the non-pivot columns.
#[derive(Clone, Debug)]
pub struct Quotient {
    sub: Subspace,
    complement: Vec<usize>,
}

/// Complement spanned by non-pivot coordinate vectors, with the projection that kills `sub`.
pub fn quotient_basis(sub: &Subspace) -> Quotient {
    let is_pivot = {
        let mut m = vec![false; sub.ambient];
        for &p in &sub.pivots {
            m[p] = true;
        }
        m
    };
    let complement = (0..sub.ambient).filter(|&c| !is_pivot[c]).collect();
    Quotient { sub: sub.clone(), complement }
}

impl Quotient {
    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.sub.ambient
    }

    pub fn subspace(&self) -> &Subspace {
        &self.sub
    }

    /// Ambient coordinates spanning the complement.
    pub fn complement_coords(&self) -> &[usize] {
        &self.complement
    }

    pub fn complement_subspace(&self) -> Subspace {
        let f = self.sub.field;
        let vectors = self
            .complement
            .iter()
            .map(|&c| {
                let mut v = vec![f.zero(); self.sub.ambient];
                v[c] = f.one();
                v
            })
            .collect();
        Subspace::from_spanning(f, self.sub.ambient, vectors)
    }

    /// Coordinates of the class of `v` in the complement basis.
    pub fn project(&self, v: &[Scalar]) -> Vec<Scalar> {
        let reduced = self.sub.reduce(v);
        self.complement.iter().map(|&c| reduced[c].clone()).collect()
    }

    /// The complement representative with the given coordinates.
    pub fn lift(&self, coords: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(coords.len(), self.complement.len());
        let mut v = vec![self.sub.field.zero(); self.sub.ambient];
        for (&c, x) in self.complement.iter().zip(coords) {
            v[c] = x.clone();
        }
        v
    }

    /// The projection as an `ambient x dim` matrix acting on row vectors.
    pub fn projection_matrix(&self) -> Matrix {
        let f = self.sub.field;
        let rows = (0..self.sub.ambient)
            .map(|i| {
                let mut e = vec![f.zero(); self.sub.ambient];
                e[i] = f.one();
                self.project(&e)
            })
            .collect();
        Matrix::from_rows(f, self.complement.len(), rows)
    }
}
