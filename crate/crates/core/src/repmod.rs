//! Right modules as matrix representations, intertwiners, and the simple modules of split algebras.

use rayon::prelude::*;

use crate::algebra::{semisimple_quotient, FinDimAlgebra, SemisimpleQuotient};
use crate::error::{Error, Result};
use crate::exactla::{poly, Field, Matrix, RowReducer, Scalar, Subspace};

/// A right module `M = k^d`; `action[a]` is the matrix of `m -> m e_a` on row vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RightModule {
    dim: usize,
    action: Vec<Matrix>,
}

impl RightModule {
    /// Validates that `e_a -> action[a]` is a unital algebra homomorphism.
    pub fn new(algebra: &FinDimAlgebra, dim: usize, action: Vec<Matrix>) -> Result<RightModule> {
        if action.len() != algebra.dim() {
            return Err(Error::InvalidModule(format!(
                "{} action matrices for an algebra of dimension {}",
                action.len(),
                algebra.dim()
            )));
        }
        if let Some(a) = action.iter().position(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::InvalidModule(format!("action matrix {a} is not {dim}x{dim}")));
        }
        if let Some(a) = action.iter().position(|m| m.field() != algebra.field()) {
            return Err(Error::InvalidModule(format!("action matrix {a} lives over the wrong field")));
        }
        let m = RightModule { dim, action };
        if !m.act(algebra.unit()).is_identity() {
            return Err(Error::InvalidModule("the unit does not act as the identity".into()));
        }
        for i in 0..algebra.dim() {
            for j in 0..algebra.dim() {
                if m.action[i].mul(&m.action[j]) != m.act(algebra.product(i, j)) {
                    return Err(Error::InvalidModule(format!("action is not multiplicative on basis pair ({i}, {j})")));
                }
            }
        }
        Ok(m)
    }

    pub(crate) fn new_unchecked(dim: usize, action: Vec<Matrix>) -> RightModule {
        RightModule { dim, action }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, a: usize) -> &Matrix {
        &self.action[a]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    pub fn field(&self) -> Field {
        self.action[0].field()
    }

    /// Matrix of an arbitrary algebra element given by its coordinates.
    pub fn act(&self, x: &[Scalar]) -> Matrix {
        let mut out = Matrix::zeros(self.field(), self.dim, self.dim);
        for (c, m) in x.iter().zip(&self.action) {
            if !c.is_zero() {
                out.add_scaled(c, m);
            }
        }
        out
    }

    pub fn direct_sum(&self, other: &RightModule) -> RightModule {
        let f = self.field();
        let d = self.dim + other.dim;
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(x, y)| {
                let mut m = Matrix::zeros(f, d, d);
                for r in 0..self.dim {
                    for c in 0..self.dim {
                        m[(r, c)] = x[(r, c)].clone();
                    }
                }
                for r in 0..other.dim {
                    for c in 0..other.dim {
                        m[(self.dim + r, self.dim + c)] = y[(r, c)].clone();
                    }
                }
                m
            })
            .collect();
        RightModule { dim: d, action }
    }

    /// The module obtained by letting `B` act through a map `B -> A` given on row vectors.
    pub fn pull_back(&self, map: &Matrix) -> RightModule {
        let action = map.row_vectors().iter().map(|x| self.act(x)).collect();
        RightModule { dim: self.dim, action }
    }
}

/// A finite family `M_1, ..., M_r` of right modules over one algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleFamily {
    members: Vec<RightModule>,
}

impl ModuleFamily {
    pub fn new(members: Vec<RightModule>) -> Result<ModuleFamily> {
        if members.is_empty() {
            return Err(Error::InvalidModule("a family needs at least one member".into()));
        }
        Ok(ModuleFamily { members })
    }

    pub fn members(&self) -> &[RightModule] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &RightModule {
        &self.members[i]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.members.iter().map(RightModule::dim).collect()
    }

    pub fn subfamily(&self, indices: &[usize]) -> Result<ModuleFamily> {
        let members = indices
            .iter()
            .map(|&i| {
                self.members.get(i).cloned().ok_or_else(|| Error::InvalidInput(format!("family has no member {i}")))
            })
            .collect::<Result<Vec<_>>>()?;
        ModuleFamily::new(members)
    }

    /// `rho` on basis elements: row `a` concatenates the flattened `action_i(e_a)`.
    pub fn rho_matrix(&self) -> Matrix {
        let f = self.members[0].field();
        let n = self.members[0].action.len();
        let rows =
            (0..n).map(|a| self.members.iter().flat_map(|m| m.action[a].entries().iter().cloned()).collect()).collect();
        let width = self.members.iter().map(|m| m.dim * m.dim).sum();
        Matrix::from_rows(f, width, rows)
    }
}

/// Basis of `Hom_A(M, N)`: all `phi` with `action_M(a) phi = phi action_N(a)`.
pub fn hom_a(m: &RightModule, n: &RightModule) -> Vec<Matrix> {
    let f = m.field();
    let (dm, dn) = (m.dim, n.dim);
    let mut eqs = RowReducer::new(f, dm * dn);
    for (x, y) in m.action.iter().zip(&n.action) {
        for p in 0..dm {
            for q in 0..dn {
                let mut row = vec![f.zero(); dm * dn];
                for s in 0..dm {
                    if !x[(p, s)].is_zero() {
                        row[s * dn + q] += &x[(p, s)];
                    }
                }
                for t in 0..dn {
                    if !y[(t, q)].is_zero() {
                        row[p * dn + t] -= &y[(t, q)];
                    }
                }
                eqs.insert(row);
            }
        }
        if eqs.is_full() {
            break;
        }
    }
    eqs.kernel().vectors().into_iter().map(|v| Matrix::from_flat(f, dm, dn, v)).collect()
}

pub fn end_is_scalar(m: &RightModule) -> bool {
    hom_a(m, m).len() == 1
}

/// Whether two simple modules are isomorphic (a nonzero map between simples is invertible).
pub fn simples_isomorphic(m: &RightModule, n: &RightModule) -> bool {
    m.dim == n.dim && !hom_a(m, n).is_empty()
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct RhoReport {
    pub image_dim: usize,
    pub target_dim: usize,
    pub surjective: bool,
}

pub fn rho_surjectivity(family: &ModuleFamily) -> RhoReport {
    let image_dim = family.rho_matrix().rank();
    let target_dim = family.members.iter().map(|m| m.dim * m.dim).sum();
    RhoReport { image_dim, target_dim, surjective: image_dim == target_dim }
}

/// One matrix block `S_b = c_b S` of a split semisimple algebra `S`, in coordinates of `S`.
#[derive(Clone, Debug)]
pub struct Block {
    pub size: usize,
    pub central_idempotent: Vec<Scalar>,
    /// A nonzero element of a minimal right ideal, so `rank_one * S` is that ideal.
    pub rank_one: Vec<Scalar>,
    pub right_ideal: Subspace,
}

#[derive(Clone, Debug)]
pub struct Simples {
    pub family: ModuleFamily,
    pub blocks: Vec<Block>,
    pub quotient: SemisimpleQuotient,
}

/// The simple right modules of `A`, one per matrix block of `A / rad A`.
pub fn simples_of(a: &FinDimAlgebra) -> Result<Simples> {
    let quotient = semisimple_quotient(a)?;
    let blocks = split_blocks(&quotient.algebra)?;
    let members = blocks.iter().map(|b| simple_of_block(&quotient.algebra, b).pull_back(&quotient.map)).collect();
    let family = ModuleFamily::new(members)?;
    Ok(Simples { family, blocks, quotient })
}

fn simple_of_block(s: &FinDimAlgebra, block: &Block) -> RightModule {
    let f = s.field();
    let ideal = &block.right_ideal;
    let action = (0..s.dim())
        .map(|a| {
            let rows = ideal
                .vectors()
                .iter()
                .map(|r| ideal.coordinates(&s.mul(r, &s.basis_vector(a))).expect("right ideal is closed"))
                .collect();
            Matrix::from_rows(f, block.size, rows)
        })
        .collect();
    RightModule { dim: block.size, action }
}

fn center(s: &FinDimAlgebra) -> Subspace {
    let f = s.field();
    let n = s.dim();
    let mut eqs = RowReducer::new(f, n);
    for j in 0..n {
        for k in 0..n {
            let row = (0..n).map(|i| s.structure_constant(i, j, k) - s.structure_constant(j, i, k)).collect();
            eqs.insert(row);
        }
    }
    eqs.kernel()
}

fn eval_in_algebra(s: &FinDimAlgebra, coeffs: &[Scalar], x: &[Scalar]) -> Vec<Scalar> {
    let mut acc = s.zero_vector();
    for c in coeffs.iter().rev() {
        acc = s.mul(&acc, x);
        for (o, u) in acc.iter_mut().zip(s.unit()) {
            o.add_mul(c, u);
        }
    }
    acc
}

/// Lagrange idempotent polynomials for distinct roots: `p_l(x) = prod_{m != l} (x - m) / (l - m)`.
fn lagrange(roots: &[Scalar], l: usize) -> Vec<Scalar> {
    let f = roots[0].field();
    let mut p = vec![f.one()];
    for (m, mu) in roots.iter().enumerate() {
        if m == l {
            continue;
        }
        let scale = (&roots[l] - mu).inv().expect("distinct roots");
        let mut next = vec![f.zero(); p.len() + 1];
        for (k, c) in p.iter().enumerate() {
            next[k + 1] += &(c * &scale);
            next[k] -= &(&(c * mu) * &scale);
        }
        p = next;
    }
    p
}

/// Distinct roots of a polynomial that splits into distinct linear factors, or `None`.
fn split_roots(minpoly: &[Scalar]) -> Option<Vec<Scalar>> {
    let roots = poly::roots_in_field(minpoly)?;
    (roots.len() + 1 == minpoly.len()).then_some(roots)
}

fn operator_on(s: &FinDimAlgebra, space: &Subspace, apply: impl Fn(&[Scalar]) -> Vec<Scalar>) -> Option<Matrix> {
    let rows = space.vectors().iter().map(|v| space.coordinates(&apply(v))).collect::<Option<Vec<_>>>()?;
    Some(Matrix::from_rows(s.field(), space.dim(), rows))
}

/// Splits a semisimple algebra into full matrix blocks over the base field.
pub fn split_blocks(s: &FinDimAlgebra) -> Result<Vec<Block>> {
    let z = center(s);
    let mut idempotents = vec![s.unit().to_vec()];
    for zb in z.vectors() {
        let op = operator_on(s, &z, |v| s.mul(v, &zb)).expect("center is a subalgebra");
        let minpoly = poly::minimal_polynomial(&op);
        let roots = split_roots(&minpoly)
            .ok_or_else(|| Error::NotSplit("the center is not a product of copies of the base field".into()))?;
        let mut refined = Vec::new();
        for e in &idempotents {
            for l in 0..roots.len() {
                let piece = s.mul(e, &eval_in_algebra(s, &lagrange(&roots, l), &zb));
                if piece.iter().any(|c| !c.is_zero()) {
                    refined.push(piece);
                }
            }
        }
        idempotents = refined;
    }
    if idempotents.len() != z.dim() {
        return Err(Error::NotSplit(format!(
            "{} central idempotents for a center of dimension {}",
            idempotents.len(),
            z.dim()
        )));
    }
    idempotents.sort_by_key(|e| e.iter().position(|c| !c.is_zero()));
    let mut blocks = Vec::new();
    let mut total = 0;
    for c in idempotents {
        let block_space =
            Subspace::from_spanning(s.field(), s.dim(), (0..s.dim()).map(|j| s.mul(&c, &s.basis_vector(j))).collect());
        let size = (block_space.dim() as f64).sqrt().round() as usize;
        if size * size != block_space.dim() {
            return Err(Error::NotSplit(format!(
                "block of dimension {} is not a full matrix algebra",
                block_space.dim()
            )));
        }
        let right_ideal = minimal_right_ideal(s, &block_space, &c, size)?;
        let rank_one = right_ideal.vector(0).to_vec();
        let block = Block { size, central_idempotent: c, rank_one, right_ideal };
        let module = simple_of_block(s, &block);
        if module.dim() != size
            || rho_surjectivity(&ModuleFamily { members: vec![module.clone()] }).image_dim != size * size
        {
            return Err(Error::NotSplit("block does not act as a full matrix algebra on its simple".into()));
        }
        total += size * size;
        blocks.push(block);
    }
    if total != s.dim() {
        return Err(Error::NotSplit(format!("blocks cover dimension {total} of {}", s.dim())));
    }
    Ok(blocks)
}

/// Shrinks the right ideal `c S` by left annihilators `{ r : (y - l c) r = 0 }` of elements
/// `y` of the current ideal until it has dimension `size`.
fn minimal_right_ideal(s: &FinDimAlgebra, block: &Subspace, c: &[Scalar], size: usize) -> Result<Subspace> {
    let mut ideal = block.clone();
    while ideal.dim() > size {
        let next = candidates(s, &ideal).into_iter().find_map(|y| shrink_by(s, &ideal, c, &y));
        ideal = next.ok_or_else(|| {
            Error::NotSplit("no element with an eigenvalue in the base field splits the block".into())
        })?;
    }
    Ok(ideal)
}

fn candidates(s: &FinDimAlgebra, ideal: &Subspace) -> Vec<Vec<Scalar>> {
    let basis = ideal.vectors();
    let mut out = basis.clone();
    for x in &basis {
        for y in &basis {
            out.push(s.mul(x, y));
        }
    }
    let two = s.field().from_i64(2);
    for (i, x) in basis.iter().enumerate() {
        for y in &basis[i + 1..] {
            out.push(x.iter().zip(y).map(|(a, b)| a + b).collect());
            out.push(x.iter().zip(y).map(|(a, b)| a + &(&two * b)).collect());
        }
    }
    out
}

fn shrink_by(s: &FinDimAlgebra, ideal: &Subspace, c: &[Scalar], y: &[Scalar]) -> Option<Subspace> {
    let op = operator_on(s, ideal, |r| s.mul(y, r))?;
    let roots = poly::roots_in_field(&poly::minimal_polynomial(&op))?;
    for l in roots {
        let shifted: Vec<Scalar> = y.iter().zip(c).map(|(a, b)| a - &(&l * b)).collect();
        let map = operator_on(s, ideal, |r| s.mul(&shifted, r))?;
        let ker = map.transpose().kernel();
        if ker.dim() > 0 && ker.dim() < ideal.dim() {
            let vectors = ker.vectors().iter().map(|k| ideal.basis().vec_mul(k)).collect();
            return Some(Subspace::from_spanning(s.field(), s.dim(), vectors));
        }
    }
    None
}

/// Pairwise `Hom` dimensions between family members, computed in parallel.
pub fn hom_table(family: &ModuleFamily) -> Vec<Vec<usize>> {
    let r = family.len();
    (0..r * r)
        .into_par_iter()
        .map(|k| hom_a(family.member(k / r), family.member(k % r)).len())
        .collect::<Vec<_>>()
        .chunks(r)
        .map(<[usize]>::to_vec)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::posetalg::{fixtures, incidence_algebra, simple_modules};

    #[test]
    fn diamond_hom_spaces() {
        let a = incidence_algebra(&fixtures::diamond(), Field::Rational);
        let fam = simple_modules(&fixtures::diamond(), &a);
        assert_eq!(hom_a(fam.member(0), fam.member(0)).len(), 1);
        assert_eq!(hom_a(fam.member(0), fam.member(1)).len(), 0);
        // Maps from the regular module to M_1 factor through the top.
        assert_eq!(hom_a(&a.regular_module(), fam.member(0)).len(), 1);
    }

    #[test]
    fn hom_spaces_match_brute_force() {
        // Oracle: test every 0/1 matrix for the intertwining relation.
        let a = incidence_algebra(&fixtures::chain(2), Field::Rational);
        let reg = a.regular_module();
        let fam = simple_modules(&fixtures::chain(2), &a);
        for m in fam.members() {
            let basis = hom_a(&reg, m);
            let f = Field::Rational;
            let mut found = Vec::new();
            for bits in 0..(1u32 << reg.dim()) {
                let phi = Matrix::from_flat(
                    f,
                    reg.dim(),
                    1,
                    (0..reg.dim()).map(|k| f.from_i64(((bits >> k) & 1) as i64)).collect(),
                );
                if reg.actions().iter().zip(m.actions()).all(|(x, y)| x.mul(&phi) == phi.mul(y)) {
                    found.push(phi.into_entries());
                }
            }
            let span = Subspace::from_spanning(f, reg.dim(), found);
            assert_eq!(span.dim(), basis.len());
        }
    }

    #[test]
    fn end_scalar_cases() {
        let m2 = fixtures::matrix_algebra(Field::Rational, 2);
        let simples = simples_of(&m2).unwrap();
        assert_eq!(simples.family.dims(), vec![2]);
        assert!(end_is_scalar(simples.family.member(0)));
        let k = fixtures::trivial_algebra(Field::Rational);
        let m = simples_of(&k).unwrap().family.member(0).clone();
        assert!(end_is_scalar(&m));
        assert!(!end_is_scalar(&m.direct_sum(&m)));
    }

    #[test]
    fn rho_examples() {
        let a = incidence_algebra(&fixtures::diamond(), Field::Rational);
        let fam = simple_modules(&fixtures::diamond(), &a);
        assert_eq!(rho_surjectivity(&fam), RhoReport { image_dim: 4, target_dim: 4, surjective: true });
        let one = fam.subfamily(&[0]).unwrap();
        assert_eq!(rho_surjectivity(&one), RhoReport { image_dim: 1, target_dim: 1, surjective: true });
        let m2 = fixtures::matrix_algebra(Field::Rational, 2);
        let s = simples_of(&m2).unwrap();
        assert!(rho_surjectivity(&s.family).surjective);
    }

    #[test]
    fn simples_match_poset_simples() {
        for (name, p) in fixtures::catalog() {
            let a = incidence_algebra(&p, Field::Rational);
            let computed = simples_of(&a).unwrap().family;
            let expected = simple_modules(&p, &a);
            assert_eq!(computed.len(), expected.len(), "{name}");
            for (x, y) in computed.members().iter().zip(expected.members()) {
                assert_eq!(x, y, "{name}");
            }
            let table = hom_table(&computed);
            for (i, row) in table.iter().enumerate() {
                for (j, &d) in row.iter().enumerate() {
                    assert_eq!(d, usize::from(i == j), "{name} Schur ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn simples_over_prime_field() {
        let m2 = fixtures::matrix_algebra(Field::Prime(7), 2).with_radical_hint(Subspace::zero(Field::Prime(7), 4));
        let s = simples_of(&m2).unwrap();
        assert_eq!(s.family.dims(), vec![2]);
    }

    #[test]
    fn non_split_quotient_detected() {
        // Q(i) as a 2-dimensional algebra over Q: basis 1, i with i^2 = -1.
        let q = Field::Rational;
        let (z, o, m) = (q.zero(), q.one(), q.from_i64(-1));
        let table = vec![
            vec![vec![o.clone(), z.clone()], vec![z.clone(), o.clone()]],
            vec![vec![z.clone(), o.clone()], vec![m, z.clone()]],
        ];
        let a = FinDimAlgebra::from_structure_constants(q, vec!["1".into(), "i".into()], table, vec![o, z]).unwrap();
        assert!(matches!(simples_of(&a), Err(Error::NotSplit(_))));
    }

    #[test]
    fn invalid_module_rejected() {
        let a = incidence_algebra(&fixtures::chain(2), Field::Rational);
        let f = Field::Rational;
        let action = vec![Matrix::identity(f, 1); a.dim()];
        assert!(matches!(RightModule::new(&a, 1, action), Err(Error::InvalidModule(_))));
    }
}
