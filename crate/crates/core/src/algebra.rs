//! Finite-dimensional associative unital algebras given by structure constants.

use crate::error::{Error, Result};
use crate::exactla::{quotient_basis, Field, Matrix, Quotient, RowReducer, Scalar, Subspace};
use crate::repmod;

/// An associative unital algebra with basis `e_0, ..., e_{n-1}` and
/// `e_i e_j = sum_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinDimAlgebra {
    field: Field,
    dim: usize,
    labels: Vec<String>,
    table: Vec<Scalar>,
    unit: Vec<Scalar>,
    radical_hint: Option<Subspace>,
}

impl FinDimAlgebra {
    /// Validates associativity on every basis triple and the two-sided unit law.
    pub fn from_structure_constants(
        field: Field,
        labels: Vec<String>,
        table: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
    ) -> Result<FinDimAlgebra> {
        let n = labels.len();
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|c| c.len() != n)) {
            return Err(Error::DimensionMismatch(format!("structure table must be {n}x{n}x{n}")));
        }
        if unit.len() != n {
            return Err(Error::DimensionMismatch(format!("unit has length {} but dim is {n}", unit.len())));
        }
        let flat = table.into_iter().flatten().flatten().collect();
        let a = FinDimAlgebra::new_unchecked(field, labels, flat, unit);
        a.validate()?;
        Ok(a)
    }

    pub(crate) fn new_unchecked(field: Field, labels: Vec<String>, table: Vec<Scalar>, unit: Vec<Scalar>) -> Self {
        let dim = labels.len();
        debug_assert_eq!(table.len(), dim * dim * dim);
        FinDimAlgebra { field, dim, labels, table, unit, radical_hint: None }
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            let e = self.basis_vector(i);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(Error::UnitViolation(i));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = self.product(i, j).to_vec();
                for k in 0..n {
                    let left = self.mul_by_basis_right(&ij, k);
                    let jk = self.product(j, k).to_vec();
                    let right = self.mul_by_basis_left(i, &jk);
                    if left != right {
                        return Err(Error::AssociativityViolation(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    /// Attaches a candidate radical, used in prime characteristic where the trace form is unavailable.
    pub fn with_radical_hint(mut self, hint: Subspace) -> FinDimAlgebra {
        assert_eq!(hint.ambient_dim(), self.dim);
        self.radical_hint = Some(hint);
        self
    }

    pub fn radical_hint(&self) -> Option<&Subspace> {
        self.radical_hint.as_ref()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    /// Coefficients of `e_i e_j`.
    #[inline]
    pub fn product(&self, i: usize, j: usize) -> &[Scalar] {
        let n = self.dim;
        &self.table[(i * n + j) * n..(i * n + j + 1) * n]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.table[(i * self.dim + j) * self.dim + k]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim];
        v[i] = self.field.one();
        v
    }

    pub fn zero_vector(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim]
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero_vector();
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (o, c) in out.iter_mut().zip(self.product(i, j)) {
                    if !c.is_zero() {
                        o.add_mul(&ab, c);
                    }
                }
            }
        }
        out
    }

    fn mul_by_basis_right(&self, x: &[Scalar], k: usize) -> Vec<Scalar> {
        let mut out = self.zero_vector();
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (o, c) in out.iter_mut().zip(self.product(i, k)) {
                if !c.is_zero() {
                    o.add_mul(a, c);
                }
            }
        }
        out
    }

    fn mul_by_basis_left(&self, k: usize, y: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero_vector();
        for (j, b) in y.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            for (o, c) in out.iter_mut().zip(self.product(k, j)) {
                if !c.is_zero() {
                    o.add_mul(b, c);
                }
            }
        }
        out
    }

    /// Matrix of `v -> v x` on row vectors; `x -> right_mult_matrix(x)` is a homomorphism.
    pub fn right_mult_matrix(&self, x: &[Scalar]) -> Matrix {
        let rows = (0..self.dim).map(|i| self.mul_by_basis_left(i, x)).collect();
        Matrix::from_rows(self.field, self.dim, rows)
    }

    /// Matrix of `v -> x v` on row vectors.
    pub fn left_mult_matrix(&self, x: &[Scalar]) -> Matrix {
        let rows = (0..self.dim).map(|j| self.mul_by_basis_right(x, j)).collect();
        Matrix::from_rows(self.field, self.dim, rows)
    }

    pub fn is_two_sided_ideal(&self, ideal: &Subspace) -> bool {
        ideal.vectors().iter().all(|v| {
            (0..self.dim).all(|a| {
                ideal.contains(&self.mul_by_basis_right(v, a)) && ideal.contains(&self.mul_by_basis_left(a, v))
            })
        })
    }

    pub fn is_right_submodule(&self, sub: &Subspace) -> bool {
        sub.vectors().iter().all(|v| (0..self.dim).all(|a| sub.contains(&self.mul_by_basis_right(v, a))))
    }

    /// Span of all products `x y` with `x` in `left` and `y` in `right`.
    pub fn ideal_product(&self, left: &Subspace, right: &Subspace) -> Subspace {
        let mut reducer = RowReducer::new(self.field, self.dim);
        'outer: for x in left.vectors() {
            for y in right.vectors() {
                reducer.insert(self.mul(&x, &y));
                if reducer.is_full() {
                    break 'outer;
                }
            }
        }
        reducer.to_subspace()
    }

    /// `[I^0 = A, I, I^2, ...]` ending at the first zero power, or `None` if the powers stall above zero.
    pub fn ideal_powers(&self, ideal: &Subspace) -> Option<Vec<Subspace>> {
        let mut powers = vec![Subspace::full(self.field, self.dim)];
        let mut current = ideal.clone();
        loop {
            let prev_dim = powers.last().map(Subspace::dim).unwrap();
            if current.dim() == 0 {
                powers.push(current);
                return Some(powers);
            }
            if current.dim() >= prev_dim && powers.len() > 1 {
                return None;
            }
            let next = self.ideal_product(&current, ideal);
            powers.push(current);
            current = next;
        }
    }

    pub fn is_nilpotent_ideal(&self, ideal: &Subspace) -> bool {
        self.ideal_powers(ideal).is_some()
    }

    /// The trace form `(x, y) -> tr(L_x L_y) = tr(L_{xy})` on basis elements.
    pub fn trace_form(&self) -> Matrix {
        let n = self.dim;
        let traces: Vec<Scalar> = (0..n)
            .map(|c| {
                let mut t = self.field.zero();
                for k in 0..n {
                    t += self.structure_constant(c, k, k);
                }
                t
            })
            .collect();
        let mut g = Matrix::zeros(self.field, n, n);
        for a in 0..n {
            for b in 0..n {
                let mut acc = self.field.zero();
                for (c, t) in traces.iter().enumerate() {
                    let s = self.structure_constant(a, b, c);
                    if !s.is_zero() && !t.is_zero() {
                        acc.add_mul(s, t);
                    }
                }
                g[(a, b)] = acc;
            }
        }
        g
    }

    /// Basis coordinates of `x` after re-expressing it over `self`; used for regular-module helpers.
    pub fn regular_module(&self) -> repmod::RightModule {
        let action = (0..self.dim).map(|a| self.right_mult_matrix(&self.basis_vector(a))).collect();
        repmod::RightModule::new_unchecked(self.dim, action)
    }
}

/// `rad(A)`: the kernel of the trace form in characteristic 0, or a verified candidate in characteristic p.
pub fn jacobson_radical(a: &FinDimAlgebra) -> Result<Subspace> {
    match a.field() {
        Field::Rational => {
            let rad = a.trace_form().kernel();
            if !a.is_two_sided_ideal(&rad) {
                return Err(Error::VerificationFailed("trace-form kernel is not a two-sided ideal".into()));
            }
            if !a.is_nilpotent_ideal(&rad) {
                return Err(Error::VerificationFailed("trace-form kernel is not nilpotent".into()));
            }
            Ok(rad)
        }
        Field::Prime(_) => {
            let hint = a.radical_hint().ok_or(Error::CharPUnsupported)?.clone();
            verify_radical_candidate(a, &hint)?;
            Ok(hint)
        }
    }
}

/// Checks that `candidate` is a nilpotent two-sided ideal with split semisimple quotient,
/// which pins it down as the radical in any characteristic.
pub fn verify_radical_candidate(a: &FinDimAlgebra, candidate: &Subspace) -> Result<()> {
    if !a.is_two_sided_ideal(candidate) {
        return Err(Error::VerificationFailed("candidate is not a two-sided ideal".into()));
    }
    if !a.is_nilpotent_ideal(candidate) {
        return Err(Error::VerificationFailed("candidate is not nilpotent".into()));
    }
    let quotient = quotient_by_ideal(a, candidate);
    repmod::split_blocks(&quotient.algebra)
        .map_err(|e| Error::VerificationFailed(format!("quotient by candidate is not split semisimple: {e}")))?;
    Ok(())
}

#[derive(Clone, Debug)]
pub struct RadicalFiltration {
    /// `[rad^0 = A, rad^1, ..., rad^index = 0]`.
    pub powers: Vec<Subspace>,
    pub nilpotency_index: usize,
}

impl RadicalFiltration {
    pub fn dims(&self) -> Vec<usize> {
        self.powers.iter().map(Subspace::dim).collect()
    }

    /// `rad^q`, zero past the nilpotency index.
    pub fn power(&self, q: usize) -> Subspace {
        self.powers.get(q).cloned().unwrap_or_else(|| {
            let last = self.powers.last().unwrap();
            Subspace::zero(last.field(), last.ambient_dim())
        })
    }
}

pub fn radical_filtration(a: &FinDimAlgebra) -> Result<RadicalFiltration> {
    let rad = jacobson_radical(a)?;
    let powers =
        a.ideal_powers(&rad).ok_or_else(|| Error::VerificationFailed("radical powers do not reach zero".into()))?;
    let nilpotency_index = powers.len() - 1;
    Ok(RadicalFiltration { powers, nilpotency_index })
}

/// `A / I` on the pivot-complement basis of `I`, with the quotient map.
#[derive(Clone, Debug)]
pub struct SemisimpleQuotient {
    pub algebra: FinDimAlgebra,
    pub quotient: Quotient,
    /// `dim A x dim (A/I)` matrix of the quotient map on row vectors.
    pub map: Matrix,
}

impl SemisimpleQuotient {
    /// Representative in `A` of a quotient element.
    pub fn lift(&self, coords: &[Scalar]) -> Vec<Scalar> {
        self.quotient.lift(coords)
    }

    pub fn project(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.quotient.project(v)
    }
}

pub(crate) fn quotient_by_ideal(a: &FinDimAlgebra, ideal: &Subspace) -> SemisimpleQuotient {
    let q = quotient_basis(ideal);
    let comp = q.complement_coords().to_vec();
    let m = comp.len();
    let mut table = Vec::with_capacity(m * m * m);
    for &i in &comp {
        for &j in &comp {
            table.extend(q.project(a.product(i, j)));
        }
    }
    let labels = comp.iter().map(|&i| a.labels()[i].clone()).collect();
    let unit = q.project(a.unit());
    let mut algebra = FinDimAlgebra::new_unchecked(a.field(), labels, table, unit);
    algebra.radical_hint = Some(Subspace::zero(a.field(), m));
    let map = q.projection_matrix();
    SemisimpleQuotient { algebra, quotient: q, map }
}

pub fn semisimple_quotient(a: &FinDimAlgebra) -> Result<SemisimpleQuotient> {
    let rad = jacobson_radical(a)?;
    Ok(quotient_by_ideal(a, &rad))
}

/// A composition series `0 = F_0 < F_1 < ... < F_n = A` of the right regular module.
#[derive(Clone, Debug)]
pub struct CompositionSeries {
    pub steps: Vec<Subspace>,
    /// For each step `p >= 1`, the index in `simples_of(A)` of the simple `F_p / F_{p-1}`.
    pub factors: Vec<usize>,
}

/// Refines the radical filtration: each layer `rad^q / rad^{q+1}` is split into simple pieces
/// of the form `w y A`, with `y` a rank-one element of a matrix block of `A / rad A`.
pub fn composition_series_regular(a: &FinDimAlgebra) -> Result<CompositionSeries> {
    let filtration = radical_filtration(a)?;
    let simples = repmod::simples_of(a)?;
    let f = a.field();
    let n = a.dim();
    let mut steps = vec![Subspace::zero(f, n)];
    let mut factors = Vec::new();
    let mut current = RowReducer::new(f, n);
    for q in (0..filtration.nilpotency_index).rev() {
        let layer = filtration.power(q);
        for (b, block) in simples.blocks.iter().enumerate() {
            let y = simples.quotient.lift(&block.rank_one);
            for v in layer.vectors() {
                for c in 0..n {
                    let w = a.mul(&a.mul(&v, &a.basis_vector(c)), &y);
                    let mut piece: Vec<Vec<Scalar>> = (0..n).map(|d| a.mul(&w, &a.basis_vector(d))).collect();
                    piece.push(w);
                    let before = current.rank();
                    let mut trial = current.clone();
                    for p in &piece {
                        trial.insert(p.clone());
                    }
                    if trial.rank() == before {
                        continue;
                    }
                    if trial.rank() != before + block.size {
                        return Err(Error::Internal(format!(
                            "composition factor of dimension {} where block size is {}",
                            trial.rank() - before,
                            block.size
                        )));
                    }
                    current = trial;
                    steps.push(current.to_subspace());
                    factors.push(b);
                }
            }
        }
        if current.rank() != filtration.power(q).dim() {
            return Err(Error::Internal(format!("layer {q} not exhausted by simple pieces")));
        }
    }
    Ok(CompositionSeries { steps, factors })
}
