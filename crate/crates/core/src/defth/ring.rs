use crate::algebra::FinDimAlgebra;
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, RowReducer, Scalar, Subspace};
use crate::homolog::Cochain;
use crate::repmod::ModuleFamily;

use super::hull::TruncatedHull;

/// An `r`-pointed Artinian algebra `k^r -> R -> k^r`.
///
/// The basis is Peirce-adapted: `e_1, ..., e_r` first, then a basis of `I(R)` in which every
/// element lies in a single component `e_i R e_j`.
#[derive(Clone, Debug)]
pub struct TestRing {
    algebra: FinDimAlgebra,
    r: usize,
    positions: Vec<(usize, usize)>,
    nilpotency_index: usize,
}

/// Nonzero product `x_a x_b = sum_c coeffs[c] x_c` of radical basis elements.
#[derive(Clone, Debug)]
pub struct RadicalProduct {
    pub left: usize,
    pub right: usize,
    pub coeffs: Vec<Scalar>,
}

/// Builds `R = k^r + I` from the Peirce positions of a basis of `I` and its products.
pub fn make_test_ring(
    field: Field,
    r: usize,
    positions: &[(usize, usize)],
    products: &[RadicalProduct],
) -> Result<TestRing> {
    if r == 0 {
        return Err(Error::StructuralMapViolation("a test ring needs r >= 1".into()));
    }
    if let Some(&(i, j)) = positions.iter().find(|&&(i, j)| i >= r || j >= r) {
        return Err(Error::StructuralMapViolation(format!("radical element placed at ({i}, {j}) with r = {r}")));
    }
    let m = positions.len();
    let n = r + m;
    let mut table = vec![vec![vec![field.zero(); n]; n]; n];
    for i in 0..r {
        table[i][i][i] = field.one();
    }
    for (a, &(i, j)) in positions.iter().enumerate() {
        table[i][r + a][r + a] = field.one();
        table[r + a][j][r + a] = field.one();
    }
    for p in products {
        if p.left >= m || p.right >= m || p.coeffs.len() != m {
            return Err(Error::StructuralMapViolation("radical product refers to a missing basis element".into()));
        }
        let (i, j) = positions[p.left];
        let (j2, l) = positions[p.right];
        for (c, x) in p.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            if j != j2 || positions[c] != (i, l) {
                return Err(Error::StructuralMapViolation(format!(
                    "product of radical elements {} and {} leaves the Peirce component",
                    p.left, p.right
                )));
            }
            table[r + p.left][r + p.right][r + c] = x.clone();
        }
    }
    let mut unit = vec![field.zero(); n];
    for u in unit.iter_mut().take(r) {
        *u = field.one();
    }
    let labels = (0..r)
        .map(|i| format!("e{}", i + 1))
        .chain(positions.iter().enumerate().map(|(a, &(i, j))| format!("x{}@{}{}", a + 1, i + 1, j + 1)))
        .collect();
    let algebra = FinDimAlgebra::from_structure_constants(field, labels, table, unit)?;
    let rad_vectors = (r..n).map(|k| algebra.basis_vector(k)).collect();
    let radical = Subspace::from_spanning(field, n, rad_vectors);
    let powers = algebra.ideal_powers(&radical).ok_or(Error::RadicalNotNilpotent)?;
    let algebra = algebra.with_radical_hint(radical);
    let mut all_positions: Vec<(usize, usize)> = (0..r).map(|i| (i, i)).collect();
    all_positions.extend_from_slice(positions);
    Ok(TestRing { algebra, r, positions: all_positions, nilpotency_index: powers.len() - 1 })
}

impl TestRing {
    /// `k^r`, the terminal test ring.
    pub fn trivial(field: Field, r: usize) -> TestRing {
        make_test_ring(field, r, &[], &[]).expect("k^r is a test ring")
    }

    /// `k^r + k eps` with `eps` in position `(i, j)` and `eps^2 = 0`.
    pub fn epsilon(field: Field, r: usize, i: usize, j: usize) -> Result<TestRing> {
        make_test_ring(field, r, &[(i, j)], &[])
    }

    /// Square-zero extension of `k^r` with radical basis elements in the given positions.
    pub fn square_zero(field: Field, r: usize, positions: &[(usize, usize)]) -> Result<TestRing> {
        make_test_ring(field, r, positions, &[])
    }

    /// `k[x] / (x^n)` as a 1-pointed ring.
    pub fn truncated_polynomial(field: Field, n: usize) -> Result<TestRing> {
        let m = n.saturating_sub(1);
        let mut products = Vec::new();
        for a in 0..m {
            for b in 0..m {
                // x^{a+1} x^{b+1} = x^{a+b+2}
                let power = a + b + 2;
                if power < n {
                    let mut coeffs = vec![field.zero(); m];
                    coeffs[power - 1] = field.one();
                    products.push(RadicalProduct { left: a, right: b, coeffs });
                }
            }
        }
        make_test_ring(field, 1, &vec![(0, 0); m], &products)
    }

    pub fn algebra(&self) -> &FinDimAlgebra {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn position(&self, beta: usize) -> (usize, usize) {
        self.positions[beta]
    }

    pub fn radical_basis(&self) -> std::ops::Range<usize> {
        self.r..self.dim()
    }

    pub fn nilpotency_index(&self) -> usize {
        self.nilpotency_index
    }

    pub fn radical_square_zero(&self) -> bool {
        self.nilpotency_index <= 2
    }

    /// `f: k^r -> R` on row vectors.
    pub fn f_matrix(&self) -> Matrix {
        let rows = (0..self.r).map(|i| self.algebra.basis_vector(i)).collect();
        Matrix::from_rows(self.field(), self.dim(), rows)
    }

    /// `g: R -> k^r` on row vectors, with kernel `I(R)`.
    pub fn g_matrix(&self) -> Matrix {
        let f = self.field();
        let rows =
            (0..self.dim()).map(|b| (0..self.r).map(|i| if b == i { f.one() } else { f.zero() }).collect()).collect();
        Matrix::from_rows(f, self.r, rows)
    }

    /// `e_i R e_j` as a subspace of `R`.
    pub fn peirce(&self, i: usize, j: usize) -> Subspace {
        let vectors =
            (0..self.dim()).filter(|&b| self.positions[b] == (i, j)).map(|b| self.algebra.basis_vector(b)).collect();
        Subspace::from_spanning(self.field(), self.dim(), vectors)
    }
}

/// A lifting of the family's action to `R`: `lifted[a][beta]` is the `Hom_k(M_i, M_j)` component
/// of the action of `e_a` along the ring basis element `beta` in position `(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deformation {
    pub lifted: Vec<Vec<Matrix>>,
}

impl Deformation {
    /// The action `rho` itself.
    pub fn trivial(algebra: &FinDimAlgebra, family: &ModuleFamily, ring: &TestRing) -> Deformation {
        let f = algebra.field();
        let dims = family.dims();
        let lifted = (0..algebra.dim())
            .map(|a| {
                (0..ring.dim())
                    .map(|beta| {
                        let (i, j) = ring.position(beta);
                        if beta < ring.r() {
                            family.member(i).action(a).clone()
                        } else {
                            Matrix::zeros(f, dims[i], dims[j])
                        }
                    })
                    .collect()
            })
            .collect();
        Deformation { lifted }
    }

    /// `rho + sum_beta r_beta (x) F_beta` with each `F_beta` given on the algebra basis.
    pub fn first_order(
        algebra: &FinDimAlgebra,
        family: &ModuleFamily,
        ring: &TestRing,
        terms: &[(usize, Vec<Matrix>)],
    ) -> Deformation {
        let mut d = Deformation::trivial(algebra, family, ring);
        for (beta, values) in terms {
            for (a, m) in values.iter().enumerate() {
                d.lifted[a][*beta] = d.lifted[a][*beta].add(m);
            }
        }
        d
    }

    /// `sum_beta r_beta (x) lifted[.][beta]` evaluated at an algebra element.
    fn act(&self, ring: &TestRing, family: &ModuleFamily, x: &[Scalar]) -> Vec<Matrix> {
        let f = ring.field();
        let dims = family.dims();
        (0..ring.dim())
            .map(|beta| {
                let (i, j) = ring.position(beta);
                let mut m = Matrix::zeros(f, dims[i], dims[j]);
                for (c, l) in x.iter().zip(&self.lifted) {
                    if !c.is_zero() {
                        m.add_scaled(c, &l[beta]);
                    }
                }
                m
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationCheck {
    pub ok: bool,
    pub failure: Option<String>,
}

impl DeformationCheck {
    fn fail(msg: String) -> DeformationCheck {
        DeformationCheck { ok: false, failure: Some(msg) }
    }
}

/// Checks shapes, reduction to `rho`, unitality and multiplicativity over `R`.
pub fn is_deformation(
    algebra: &FinDimAlgebra,
    family: &ModuleFamily,
    ring: &TestRing,
    d: &Deformation,
) -> DeformationCheck {
    let dims = family.dims();
    if ring.r() != family.len() {
        return DeformationCheck::fail(format!(
            "ring is {}-pointed but the family has {} members",
            ring.r(),
            family.len()
        ));
    }
    if d.lifted.len() != algebra.dim() || d.lifted.iter().any(|l| l.len() != ring.dim()) {
        return DeformationCheck::fail("lifted action has the wrong number of components".into());
    }
    for (a, l) in d.lifted.iter().enumerate() {
        for (beta, m) in l.iter().enumerate() {
            let (i, j) = ring.position(beta);
            if m.rows() != dims[i] || m.cols() != dims[j] {
                return DeformationCheck::fail(format!("component ({a}, {beta}) has the wrong shape"));
            }
        }
        for i in 0..ring.r() {
            if &l[i] != family.member(i).action(a) {
                return DeformationCheck::fail(format!("basis element {a} does not reduce to rho on member {}", i + 1));
            }
        }
    }
    let unit = d.act(ring, family, algebra.unit());
    for (beta, m) in unit.iter().enumerate() {
        let ok = if beta < ring.r() { m.is_identity() } else { m.is_zero() };
        if !ok {
            return DeformationCheck::fail(format!("the unit does not act as the identity (component {beta})"));
        }
    }
    let r_alg = ring.algebra();
    let f = ring.field();
    for a in 0..algebra.dim() {
        for b in 0..algebra.dim() {
            let lhs = d.act(ring, family, algebra.product(a, b));
            let mut rhs: Vec<Matrix> = (0..ring.dim())
                .map(|g| {
                    let (i, j) = ring.position(g);
                    Matrix::zeros(f, dims[i], dims[j])
                })
                .collect();
            for (b1, x) in d.lifted[a].iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (b2, y) in d.lifted[b].iter().enumerate() {
                    if y.is_zero() || ring.position(b1).1 != ring.position(b2).0 {
                        continue;
                    }
                    let xy = x.mul(y);
                    for (g, c) in r_alg.product(b1, b2).iter().enumerate() {
                        if !c.is_zero() {
                            rhs[g].add_scaled(c, &xy);
                        }
                    }
                }
            }
            if let Some(g) = (0..ring.dim()).find(|&g| lhs[g] != rhs[g]) {
                return DeformationCheck::fail(format!(
                    "multiplicativity fails for basis pair ({a}, {b}) along ring element {g}"
                ));
            }
        }
    }
    DeformationCheck { ok: true, failure: None }
}

/// The inner derivations `a -> rho_i(a) h - h rho_j(a)` as a reducer over flattened cochains.
fn inner_derivations(algebra: &FinDimAlgebra, family: &ModuleFamily, i: usize, j: usize) -> RowReducer {
    let f = algebra.field();
    let (di, dj) = (family.member(i).dim(), family.member(j).dim());
    let len = algebra.dim() * di * dj;
    let mut red = RowReducer::new(f, len);
    for k in 0..di * dj {
        let mut h = Matrix::zeros(f, di, dj);
        h[(k / dj, k % dj)] = f.one();
        let v = (0..algebra.dim())
            .flat_map(|a| family.member(i).action(a).mul(&h).sub(&h.mul(family.member(j).action(a))).into_entries())
            .collect();
        red.insert(v);
    }
    red
}

/// Derivations `F(ab) = rho_i(a) F(b) + F(a) rho_j(b)` on the full basis of `A`.
fn derivations(algebra: &FinDimAlgebra, family: &ModuleFamily, i: usize, j: usize) -> Subspace {
    let f = algebra.field();
    let (mi, mj) = (family.member(i), family.member(j));
    let (di, dj) = (mi.dim(), mj.dim());
    let n = algebra.dim();
    let len = n * di * dj;
    let var = |a: usize, p: usize, q: usize| (a * di + p) * dj + q;
    let mut eqs = RowReducer::new(f, len);
    for a in 0..n {
        for b in 0..n {
            for p in 0..di {
                for q in 0..dj {
                    let mut row = vec![f.zero(); len];
                    for (c, x) in algebra.product(a, b).iter().enumerate() {
                        if !x.is_zero() {
                            row[var(c, p, q)] += x;
                        }
                    }
                    for s in 0..di {
                        let x = &mi.action(a)[(p, s)];
                        if !x.is_zero() {
                            row[var(b, s, q)] -= x;
                        }
                    }
                    for t in 0..dj {
                        let x = &mj.action(b)[(t, q)];
                        if !x.is_zero() {
                            row[var(a, p, t)] -= x;
                        }
                    }
                    eqs.insert(row);
                }
            }
        }
        if eqs.is_full() {
            break;
        }
    }
    eqs.kernel()
}

/// Whether two first-order deformations over a ring with `I(R)^2 = 0` are equivalent.
pub fn equivalent(
    algebra: &FinDimAlgebra,
    family: &ModuleFamily,
    ring: &TestRing,
    d1: &Deformation,
    d2: &Deformation,
) -> Result<bool> {
    if !ring.radical_square_zero() {
        return Err(Error::NilpotencyTooDeep);
    }
    for beta in ring.radical_basis() {
        let (i, j) = ring.position(beta);
        let diff: Vec<Scalar> =
            (0..algebra.dim()).flat_map(|a| d1.lifted[a][beta].sub(&d2.lifted[a][beta]).into_entries()).collect();
        if !inner_derivations(algebra, family, i, j).contains(&diff) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `dim Ext^1(M_i, M_j)` computed from derivations modulo inner derivations, checked against
/// the bar-complex computation.
pub fn tangent_dimensions(algebra: &FinDimAlgebra, family: &ModuleFamily) -> Result<Vec<Vec<usize>>> {
    let (bar_dims, _) = crate::homolog::ext_dims(algebra, family);
    let r = family.len();
    let mut direct = vec![vec![0; r]; r];
    for i in 0..r {
        for j in 0..r {
            direct[i][j] = derivations(algebra, family, i, j).dim() - inner_derivations(algebra, family, i, j).rank();
        }
    }
    if direct != bar_dims {
        return Err(Error::Internal(format!(
            "tangent dimensions disagree: derivations give {direct:?}, bar complex gives {bar_dims:?}"
        )));
    }
    Ok(direct)
}

/// First-order deformations in position `(i, j)`: a basis of derivations, each as matrices per basis element.
pub fn derivation_basis(algebra: &FinDimAlgebra, family: &ModuleFamily, i: usize, j: usize) -> Vec<Vec<Matrix>> {
    let f = algebra.field();
    let (di, dj) = (family.member(i).dim(), family.member(j).dim());
    derivations(algebra, family, i, j)
        .vectors()
        .into_iter()
        .map(|v| v.chunks(di * dj).map(|c| Matrix::from_flat(f, di, dj, c.to_vec())).collect())
        .collect()
}

/// A morphism `H -> R`, given by the images of the generators.
#[derive(Clone, Debug)]
pub struct VersalMap {
    /// Image of each generator in `R`, in ring coordinates.
    pub images: Vec<Vec<Scalar>>,
    /// The versal family pushed forward along the map.
    pub pushforward: Deformation,
}

/// Reads off `phi: H -> R` from the first-order terms of `d` and verifies that the pushforward of
/// the versal family is equivalent to `d`.
pub fn versal_map(h: &TruncatedHull, ring: &TestRing, d: &Deformation) -> Result<VersalMap> {
    let algebra = h.algebra();
    let family = h.family();
    if !ring.radical_square_zero() {
        return Err(Error::NilpotencyTooDeep);
    }
    let check = is_deformation(algebra, family, ring, d);
    if !check.ok {
        return Err(Error::NotLiftable(check.failure.unwrap_or_default()));
    }
    let f = algebra.field();
    let bar = h.bar();
    let gens = h.generators();
    let mut images = vec![vec![f.zero(); ring.dim()]; gens.len()];
    for beta in ring.radical_basis() {
        let (i, j) = ring.position(beta);
        let values: Vec<Matrix> = (0..bar.nb()).map(|s| d.lifted[bar.nonunit_index(s)][beta].clone()).collect();
        let cochain: Cochain = bar.degree_one_from(i, j, &values);
        let (coeffs, _) =
            h.ext().ext1(i, j).decompose(&cochain.values).ok_or_else(|| {
                Error::NotLiftable(format!("order-one term along ring element {beta} is not a cocycle"))
            })?;
        for (g, gen) in gens.iter().enumerate() {
            if (gen.source, gen.target) == (i, j) {
                images[g][beta] += &coeffs[gen.index];
            }
        }
    }
    let word_image = |w: usize| -> Vec<Scalar> {
        let word = h.words().word(w);
        if word.gens.is_empty() {
            return ring.algebra().basis_vector(word.source);
        }
        let mut acc = images[word.gens[0]].clone();
        for &g in &word.gens[1..] {
            acc = ring.algebra().mul(&acc, &images[g]);
        }
        acc
    };
    for g in h.relations() {
        let mut total = vec![f.zero(); ring.dim()];
        for (w, c) in &g.terms {
            for (t, x) in total.iter_mut().zip(word_image(*w)) {
                t.add_mul(c, &x);
            }
        }
        if total.iter().any(|x| !x.is_zero()) {
            return Err(Error::NotLiftable("generator images do not satisfy the hull relations".into()));
        }
    }
    let dims = family.dims();
    let lifted = (0..algebra.dim())
        .map(|a| {
            let action = h.versal_action(a);
            let mut comps: Vec<Matrix> = (0..ring.dim())
                .map(|beta| {
                    let (i, j) = ring.position(beta);
                    Matrix::zeros(f, dims[i], dims[j])
                })
                .collect();
            for (w, m) in &action {
                let img = word_image(*w);
                for (beta, c) in img.iter().enumerate() {
                    if !c.is_zero() {
                        comps[beta].add_scaled(c, m);
                    }
                }
            }
            comps
        })
        .collect();
    let pushforward = Deformation { lifted };
    let check = is_deformation(algebra, family, ring, &pushforward);
    if !check.ok {
        return Err(Error::NotLiftable(format!(
            "pushforward is not a deformation: {}",
            check.failure.unwrap_or_default()
        )));
    }
    if !equivalent(algebra, family, ring, &pushforward, d)? {
        return Err(Error::NotLiftable("pushforward is not equivalent to the given deformation".into()));
    }
    Ok(VersalMap { images, pushforward })
}
