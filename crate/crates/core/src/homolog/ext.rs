use rayon::prelude::*;

use super::bar::{BarComplex, Cochain};
use crate::exactla::{RowReducer, Scalar, Subspace};

/// `Ext^n(M_i, M_j)` with explicit cocycle representatives.
#[derive(Clone, Debug)]
pub struct ExtBasis {
    pub degree: usize,
    pub source: usize,
    pub target: usize,
    /// Representatives in RREF relative to the coboundaries: zero at coboundary pivots.
    pub representatives: Vec<Cochain>,
    pub cocycle_dim: usize,
    pub coboundary_dim: usize,
    coboundaries: RowReducer,
    rep_pivots: Vec<usize>,
}

impl ExtBasis {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    /// Splits a cocycle as `sum_k c_k xi_k + d(gamma)`; `None` if `z` is not a cocycle.
    pub fn decompose(&self, z: &[Scalar]) -> Option<(Vec<Scalar>, Vec<Scalar>)> {
        let reduced = self.coboundaries.reduce(z);
        let coeffs: Vec<Scalar> = self.rep_pivots.iter().map(|&p| reduced[p].clone()).collect();
        let mut residual = reduced;
        for (c, rep) in coeffs.iter().zip(&self.representatives) {
            if c.is_zero() {
                continue;
            }
            for (r, x) in residual.iter_mut().zip(&rep.values) {
                if !x.is_zero() {
                    r.sub_mul(c, x);
                }
            }
        }
        if residual.iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut boundary = z.to_vec();
        for (c, rep) in coeffs.iter().zip(&self.representatives) {
            for (b, x) in boundary.iter_mut().zip(&rep.values) {
                if !x.is_zero() && !c.is_zero() {
                    b.sub_mul(c, x);
                }
            }
        }
        let gamma = self.coboundaries.express(&boundary)?;
        Some((coeffs, gamma))
    }

    /// The class coordinates of a cocycle, ignoring the coboundary part.
    pub fn class_of(&self, z: &[Scalar]) -> Option<Vec<Scalar>> {
        self.decompose(z).map(|(c, _)| c)
    }
}

/// Cocycles `ker d_n` as a subspace of `C^n(i, j)`.
pub fn cocycles(bc: &BarComplex, degree: usize, i: usize, j: usize) -> Subspace {
    let f = bc.field();
    let len = bc.cochain_len(degree, i, j);
    let mut eqs = RowReducer::new(f, len);
    let (di, dj) = (bc.dims()[i], bc.dims()[j]);
    'outer: for t in 0..bc.tuples(degree + 1) {
        for m in 0..di {
            for o in 0..dj {
                let mut row = vec![f.zero(); len];
                for (k, c) in bc.differential_row(degree, i, j, t, m, o) {
                    row[k] += &c;
                }
                eqs.insert(row);
                if eqs.is_full() {
                    break 'outer;
                }
            }
        }
    }
    eqs.kernel()
}

pub fn ext(bc: &BarComplex, degree: usize, i: usize, j: usize) -> ExtBasis {
    let f = bc.field();
    let len = bc.cochain_len(degree, i, j);
    let z = cocycles(bc, degree, i, j);
    let prev = if degree > 0 { bc.cochain_len(degree - 1, i, j) } else { 0 };
    let mut coboundaries = RowReducer::with_preimages(f, len, prev);
    if degree > 0 {
        for u in 0..prev {
            let mut e = bc.zero_cochain(degree - 1, i, j);
            e.values[u] = f.one();
            let mut tag = vec![f.zero(); prev];
            tag[u] = f.one();
            coboundaries.insert_with_preimage(bc.differential(&e).values, tag);
        }
    }
    let mut reps = RowReducer::new(f, len);
    for v in z.vectors() {
        reps.insert(coboundaries.reduce(&v));
    }
    let reps = reps.to_subspace();
    let representatives =
        reps.vectors().into_iter().map(|values| Cochain { degree, source: i, target: j, values }).collect();
    ExtBasis {
        degree,
        source: i,
        target: j,
        representatives,
        cocycle_dim: z.dim(),
        coboundary_dim: coboundaries.rank(),
        coboundaries,
        rep_pivots: reps.pivots().to_vec(),
    }
}

/// `Ext^1` and `Ext^2` bases for every ordered pair of members.
#[derive(Clone, Debug)]
pub struct ExtData {
    pub members: usize,
    pub ext1: Vec<ExtBasis>,
    pub ext2: Vec<ExtBasis>,
}

impl ExtData {
    pub fn compute(bc: &BarComplex) -> ExtData {
        let r = bc.members();
        let work: Vec<(usize, usize, usize)> =
            [1, 2].iter().flat_map(|&n| (0..r * r).map(move |k| (n, k / r, k % r))).collect();
        let mut bases: Vec<ExtBasis> = work.par_iter().map(|&(n, i, j)| ext(bc, n, i, j)).collect();
        let ext2 = bases.split_off(r * r);
        ExtData { members: r, ext1: bases, ext2 }
    }

    pub fn ext1(&self, i: usize, j: usize) -> &ExtBasis {
        &self.ext1[i * self.members + j]
    }

    pub fn ext2(&self, i: usize, j: usize) -> &ExtBasis {
        &self.ext2[i * self.members + j]
    }

    pub fn ext1_dims(&self) -> Vec<Vec<usize>> {
        self.table(&self.ext1)
    }

    pub fn ext2_dims(&self) -> Vec<Vec<usize>> {
        self.table(&self.ext2)
    }

    fn table(&self, v: &[ExtBasis]) -> Vec<Vec<usize>> {
        v.chunks(self.members).map(|row| row.iter().map(ExtBasis::dim).collect()).collect()
    }
}
