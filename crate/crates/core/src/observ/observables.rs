use std::collections::HashMap;

use serde::Serialize;

use crate::algebra::{radical_filtration, FinDimAlgebra};
use crate::defth::{stabilization_check, TruncatedHull};
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, RowReducer, Scalar, Subspace};
use crate::repmod::{ModuleFamily, RightModule};

/// A basis element `w (x) E_pq` of `H_ij (x) Hom_k(M_i, M_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObservableBasis {
    pub word: usize,
    pub label: String,
    pub position: (usize, usize),
    pub row: usize,
    pub col: usize,
    pub degree: usize,
}

/// `O^A(M) = End_H(M_H)` in block form, with `eta: A -> O` and `pi: O -> (+) End_k(M_i)`.
#[derive(Clone, Debug)]
pub struct ObservablesAlgebra {
    pub algebra: FinDimAlgebra,
    pub basis: Vec<ObservableBasis>,
    /// `dim A x dim O`.
    pub eta: Matrix,
    /// `dim O x sum d_i^2`, onto the degree-zero blocks.
    pub pi: Matrix,
    /// `rho` of the family, in the same block layout as `pi`.
    pub rho: Matrix,
    /// `ker pi`: the span of positive-degree basis elements.
    pub j: Subspace,
    pub member_dims: Vec<usize>,
}

/// Builds the algebra of observables; refuses when the hull truncation is not stable.
pub fn build_observables(h: &TruncatedHull) -> Result<ObservablesAlgebra> {
    if !stabilization_check(h)? {
        return Err(Error::HullNotStable(h.max_degree()));
    }
    assemble(h)
}

/// The construction without the stability certificate; callers must have checked it.
pub(crate) fn assemble(h: &TruncatedHull) -> Result<ObservablesAlgebra> {
    let a = h.algebra();
    let f = a.field();
    let family = h.family();
    let dims = family.dims();
    let ws = h.words();
    let mut basis = Vec::new();
    for &w in h.standard_words() {
        let word = ws.word(w);
        let (i, j) = (word.source, word.target);
        let single = dims[i] * dims[j] == 1;
        for p in 0..dims[i] {
            for q in 0..dims[j] {
                let label = if single { h.word_label(w) } else { format!("{}[{},{}]", h.word_label(w), p + 1, q + 1) };
                basis.push(ObservableBasis { word: w, label, position: (i, j), row: p, col: q, degree: word.degree() });
            }
        }
    }
    let n = basis.len();
    let index: HashMap<(usize, usize, usize), usize> =
        basis.iter().enumerate().map(|(k, b)| ((b.word, b.row, b.col), k)).collect();

    let mut table = vec![vec![vec![f.zero(); n]; n]; n];
    for (x, bx) in basis.iter().enumerate() {
        for (y, by) in basis.iter().enumerate() {
            if bx.position.1 != by.position.0 || bx.col != by.row {
                continue;
            }
            for (v, c) in h.multiply(bx.word, by.word) {
                let k = *index
                    .get(&(v, bx.row, by.col))
                    .ok_or_else(|| Error::Internal("product leaves the standard monomials".into()))?;
                table[x][y][k] = c;
            }
        }
    }
    let mut unit = vec![f.zero(); n];
    for (i, &d) in dims.iter().enumerate() {
        for p in 0..d {
            unit[index[&(ws.idempotent(i), p, p)]] = f.one();
        }
    }
    let labels = basis.iter().map(|b| b.label.clone()).collect();
    let algebra = FinDimAlgebra::from_structure_constants(f, labels, table, unit)?;
    let j = Subspace::from_spanning(
        f,
        n,
        basis.iter().enumerate().filter(|(_, b)| b.degree > 0).map(|(k, _)| algebra.basis_vector(k)).collect(),
    );
    let algebra = algebra.with_radical_hint(j.clone());

    let rows = (0..a.dim())
        .map(|x| {
            let mut row = vec![f.zero(); n];
            for (w, m) in h.versal_action(x) {
                let word = ws.word(w);
                for p in 0..dims[word.source] {
                    for q in 0..dims[word.target] {
                        if m[(p, q)].is_zero() {
                            continue;
                        }
                        let k = index
                            .get(&(w, p, q))
                            .ok_or_else(|| Error::Internal("versal action has a non-standard monomial".into()))?;
                        row[*k] = m[(p, q)].clone();
                    }
                }
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    let eta = Matrix::from_rows(f, n, rows);

    let offsets: Vec<usize> = dims
        .iter()
        .scan(0, |acc, d| {
            let o = *acc;
            *acc += d * d;
            Some(o)
        })
        .collect();
    let width: usize = dims.iter().map(|d| d * d).sum();
    let pi_rows = basis
        .iter()
        .map(|b| {
            let mut row = vec![f.zero(); width];
            if b.degree == 0 {
                let i = b.position.0;
                row[offsets[i] + b.row * dims[i] + b.col] = f.one();
            }
            row
        })
        .collect();
    let pi = Matrix::from_rows(f, width, pi_rows);

    let obs = ObservablesAlgebra { algebra, basis, eta, pi, rho: family.rho_matrix(), j, member_dims: dims };
    check_eta(a, &obs)?;
    Ok(obs)
}

/// `eta` is unital and multiplicative on basis pairs.
fn check_eta(a: &FinDimAlgebra, obs: &ObservablesAlgebra) -> Result<()> {
    if obs.eta.vec_mul(a.unit()) != obs.algebra.unit() {
        return Err(Error::MorphismCheckFailed("eta does not preserve the unit".into()));
    }
    let images: Vec<Vec<Scalar>> = obs.eta.row_vectors();
    for x in 0..a.dim() {
        for y in 0..a.dim() {
            let lhs = obs.eta.vec_mul(a.product(x, y));
            let rhs = obs.algebra.mul(&images[x], &images[y]);
            if lhs != rhs {
                return Err(Error::MorphismCheckFailed(format!("eta is not multiplicative on basis pair ({x}, {y})")));
            }
        }
    }
    Ok(())
}

impl ObservablesAlgebra {
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn eta_of(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.eta.vec_mul(x)
    }

    pub fn eta_rank(&self) -> usize {
        self.eta.rank()
    }

    /// The members of the family as modules over `O` through `pi`.
    pub fn family_via_pi(&self) -> Result<ModuleFamily> {
        let f = self.algebra.field();
        let mut offset = 0;
        let mut members = Vec::new();
        for &d in &self.member_dims {
            let action = (0..self.dim())
                .map(|b| Matrix::from_flat(f, d, d, self.pi.row(b)[offset..offset + d * d].to_vec()))
                .collect();
            members.push(RightModule::new(&self.algebra, d, action)?);
            offset += d * d;
        }
        ModuleFamily::new(members)
    }

    /// Positionwise dimension table of `O`.
    pub fn block_dims(&self) -> Vec<Vec<usize>> {
        let r = self.member_dims.len();
        let mut t = vec![vec![0; r]; r];
        for b in &self.basis {
            t[b.position.0][b.position.1] += 1;
        }
        t
    }
}

/// Block-diagonal product in `(+) End_k(M_i)`, flattened per member.
fn block_product(f: Field, dims: &[usize], x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(x.len());
    let mut offset = 0;
    for &d in dims {
        let mx = Matrix::from_flat(f, d, d, x[offset..offset + d * d].to_vec());
        let my = Matrix::from_flat(f, d, d, y[offset..offset + d * d].to_vec());
        out.extend(mx.mul(&my).into_entries());
        offset += d * d;
    }
    out
}

/// `pi . eta = rho` entrywise and `pi` is an algebra map.
pub fn pi_check(obs: &ObservablesAlgebra) -> bool {
    if obs.eta.mul(&obs.pi) != obs.rho {
        return false;
    }
    if obs.pi.vec_mul(obs.algebra.unit()).iter().zip(unit_blocks(obs)).any(|(x, y)| *x != y) {
        return false;
    }
    let n = obs.dim();
    let rows = obs.pi.row_vectors();
    (0..n).all(|x| {
        (0..n).all(|y| {
            obs.pi.vec_mul(obs.algebra.product(x, y))
                == block_product(obs.algebra.field(), &obs.member_dims, &rows[x], &rows[y])
        })
    })
}

fn unit_blocks(obs: &ObservablesAlgebra) -> Vec<Scalar> {
    let f = obs.algebra.field();
    obs.member_dims.iter().flat_map(|&d| Matrix::identity(f, d).into_entries()).collect()
}

/// `gr(eta)_q : rad(A)^q / rad(A)^{q+1} -> J^q / J^{q+1}`.
#[derive(Clone, Debug, Serialize)]
pub struct GradedEta {
    pub q: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub iso: bool,
    #[serde(skip)]
    pub matrix: Matrix,
}

pub fn gr_eta(a: &FinDimAlgebra, obs: &ObservablesAlgebra, q: usize) -> Result<GradedEta> {
    let f = a.field();
    let rad = radical_filtration(a)?;
    let jpowers =
        obs.algebra.ideal_powers(&obs.j).ok_or_else(|| Error::VerificationFailed("J is not nilpotent".into()))?;
    let jpow = |k: usize| jpowers.get(k).cloned().unwrap_or_else(|| Subspace::zero(f, obs.dim()));
    let (src, src_next) = (rad.power(q), rad.power(q + 1));
    let (tgt, tgt_next) = (jpow(q), jpow(q + 1));
    for (s, t, k) in [(&src, &tgt, q), (&src_next, &tgt_next, q + 1)] {
        if !s.vectors().iter().all(|v| t.contains(&obs.eta_of(v))) {
            return Err(Error::NotWellDefined(format!("eta(rad^{k}) is not contained in J^{k}")));
        }
    }
    let complement = |sub: &Subspace, next: &Subspace| -> Vec<Vec<Scalar>> {
        let mut red = RowReducer::new(f, sub.ambient_dim());
        for v in next.vectors() {
            red.insert(v);
        }
        sub.vectors().into_iter().filter(|v| red.insert(v.clone())).collect()
    };
    let src_basis = complement(&src, &src_next);
    let tgt_basis = complement(&tgt, &tgt_next);
    let mut coords = RowReducer::with_preimages(f, obs.dim(), tgt_basis.len());
    for v in tgt_next.vectors() {
        coords.insert_with_preimage(v, vec![f.zero(); tgt_basis.len()]);
    }
    for (k, v) in tgt_basis.iter().enumerate() {
        let mut tag = vec![f.zero(); tgt_basis.len()];
        tag[k] = f.one();
        coords.insert_with_preimage(v.clone(), tag);
    }
    let rows = src_basis
        .iter()
        .map(|v| coords.express(&obs.eta_of(v)).ok_or_else(|| Error::Internal("image outside J^q".into())))
        .collect::<Result<Vec<_>>>()?;
    let matrix = Matrix::from_rows(f, tgt_basis.len(), rows);
    let rank = matrix.rank();
    let (source_dim, target_dim) = (src_basis.len(), tgt_basis.len());
    Ok(GradedEta { q, source_dim, target_dim, rank, iso: source_dim == target_dim && rank == target_dim, matrix })
}
