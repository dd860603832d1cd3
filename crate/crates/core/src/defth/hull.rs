use std::collections::BTreeMap;

use rayon::prelude::*;

use super::words::{Generator, WordSet};
use crate::algebra::FinDimAlgebra;
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, RowReducer, Scalar};
use crate::homolog::{BarComplex, ExtData};
use crate::repmod::ModuleFamily;

/// A matrix-valued polynomial: word index to coefficient in `Hom_k(M_source, M_target)`.
pub type MatPoly = BTreeMap<usize, Matrix>;

/// A relation of the hull, lying in a single matric position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub position: (usize, usize),
    /// Lowest degree occurring in the relation.
    pub degree: usize,
    /// Nonzero terms `(word, coefficient)` in word order.
    pub terms: Vec<(usize, Scalar)>,
}

/// The formal moduli truncated at degree `max_degree`: `H = T_{<=N} / I` with the versal action.
#[derive(Clone, Debug)]
pub struct TruncatedHull {
    algebra: FinDimAlgebra,
    family: ModuleFamily,
    bar: BarComplex,
    ext: ExtData,
    max_degree: usize,
    words: WordSet,
    relations: Vec<Relation>,
    ideal: RowReducer,
    standard: Vec<usize>,
    /// Versal action on each nonunit adapted basis element, supported on standard words.
    versal: Vec<MatPoly>,
}

fn generator_label(r: usize, i: usize, j: usize, l: usize, count: usize) -> String {
    let base = if r <= 9 { format!("t{}{}", i + 1, j + 1) } else { format!("t{}_{}", i + 1, j + 1) };
    if count > 1 {
        format!("{base}^{}", l + 1)
    } else {
        base
    }
}

fn add_into(map: &mut MatPoly, key: usize, coef: &Scalar, m: &Matrix) {
    if coef.is_zero() || m.is_zero() {
        return;
    }
    match map.get_mut(&key) {
        Some(x) => {
            x.add_scaled(coef, m);
            if x.is_zero() {
                map.remove(&key);
            }
        }
        None => {
            map.insert(key, m.scale(coef));
        }
    }
}

struct Builder<'a> {
    field: Field,
    bar: &'a BarComplex,
    ws: &'a WordSet,
}

impl Builder<'_> {
    fn unit_col(&self, w: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.ws.len()];
        v[self.ws.col(w)] = self.field.one();
        v
    }

    /// Normal forms of all words modulo `ideal`, as sparse `(column, coefficient)` lists.
    fn normal_forms(&self, ideal: &RowReducer) -> Vec<Vec<(usize, Scalar)>> {
        (0..self.ws.len())
            .map(|w| ideal.reduce(&self.unit_col(w)).into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect())
            .collect()
    }

    /// Span of `u g v` for relations `g` and words `u, v` not both trivial, truncated at `degree`.
    fn ideal_multiples(&self, relations: &[Relation], degree: usize) -> RowReducer {
        let ws = self.ws;
        let mut j = RowReducer::new(self.field, ws.len());
        for g in relations {
            let (src, tgt) = g.position;
            let room = degree.saturating_sub(g.degree);
            for u in (0..ws.len()).filter(|&u| ws.word(u).target == src && ws.word(u).degree() <= room) {
                let du = ws.word(u).degree();
                for v in (0..ws.len()).filter(|&v| ws.word(v).source == tgt && ws.word(v).degree() + du <= room) {
                    if du == 0 && ws.word(v).degree() == 0 {
                        continue;
                    }
                    let mut row = vec![self.field.zero(); ws.len()];
                    let mut any = false;
                    for (w, c) in &g.terms {
                        let Some(uw) = ws.concat(u, *w) else { continue };
                        let Some(uwv) = ws.concat(uw, v) else { continue };
                        if ws.word(uwv).degree() <= degree {
                            row[ws.col(uwv)] += c;
                            any = true;
                        }
                    }
                    if any {
                        j.insert(row);
                    }
                }
            }
        }
        j
    }

    /// `Phi(a_s a_t) - Phi(a_s) Phi(a_t)` in positive degrees at most `degree`, in free words.
    fn defect(&self, versal: &[MatPoly], s: usize, t: usize, degree: usize) -> MatPoly {
        let ws = self.ws;
        let mut out = MatPoly::new();
        for (u, c) in self.bar.product(s, t) {
            for (w, x) in &versal[*u] {
                if ws.word(*w).degree() >= 1 {
                    add_into(&mut out, *w, c, x);
                }
            }
        }
        let minus = -self.field.one();
        for (w1, x1) in &versal[s] {
            for (w2, x2) in &versal[t] {
                let Some(w) = ws.concat(*w1, *w2) else { continue };
                let dw = ws.word(w).degree();
                if dw >= 1 && dw <= degree {
                    add_into(&mut out, w, &minus, &x1.mul(x2));
                }
            }
        }
        out
    }

    /// Reduces a matrix polynomial with precomputed word normal forms; keys become columns.
    fn reduce_poly(&self, p: &MatPoly, nf: &[Vec<(usize, Scalar)>]) -> MatPoly {
        let mut out = MatPoly::new();
        for (w, x) in p {
            for (c, coef) in &nf[*w] {
                add_into(&mut out, *c, coef, x);
            }
        }
        out
    }

    fn columns_to_words(&self, p: MatPoly) -> MatPoly {
        p.into_iter().map(|(c, x)| (self.ws.word_at_col(c), x)).collect()
    }
}

/// Order-by-order construction of the hull and its versal action up to degree `max_degree`.
pub fn compute_hull(algebra: &FinDimAlgebra, family: &ModuleFamily, max_degree: usize) -> Result<TruncatedHull> {
    if max_degree == 0 {
        return Err(Error::InvalidInput("the hull needs max degree at least 1".into()));
    }
    let field = algebra.field();
    let bar = BarComplex::new(algebra, family);
    let ext = ExtData::compute(&bar);
    let r = family.len();
    let dims = family.dims();
    let mut generators = Vec::new();
    for i in 0..r {
        for j in 0..r {
            let count = ext.ext1(i, j).dim();
            for l in 0..count {
                generators.push(Generator {
                    source: i,
                    target: j,
                    index: l,
                    label: generator_label(r, i, j, l, count),
                });
            }
        }
    }
    let ws = WordSet::new(r, generators, max_degree);
    let b = Builder { field, bar: &bar, ws: &ws };
    let nb = bar.nb();

    let mut versal: Vec<MatPoly> = (0..nb)
        .map(|s| {
            let mut p = MatPoly::new();
            for i in 0..r {
                let m = bar.action(i, s);
                if !m.is_zero() {
                    p.insert(ws.idempotent(i), m.clone());
                }
            }
            for (g, gen) in ws.generators.iter().enumerate() {
                let rep = &ext.ext1(gen.source, gen.target).representatives[gen.index];
                let m = bar.evaluate_degree_one(rep, s);
                if !m.is_zero() {
                    p.insert(r + g, m);
                }
            }
            p
        })
        .collect();
    debug_assert!(ws.generators.iter().enumerate().all(|(g, _)| ws.word(r + g).gens == vec![g]));

    let mut relations: Vec<Relation> = Vec::new();
    let mut ideal = RowReducer::new(field, ws.len());
    for d in 2..=max_degree {
        let jd = b.ideal_multiples(&relations, d);
        let nf_j = b.normal_forms(&jd);
        let mut kred = RowReducer::new(field, ws.len());
        for w in (0..ws.len()).filter(|&w| ws.word(w).degree() == d) {
            kred.insert(jd.reduce(&b.unit_col(w)));
        }
        for g in &relations {
            let mut v = vec![field.zero(); ws.len()];
            for (w, c) in &g.terms {
                v[ws.col(*w)] += c;
            }
            kred.insert(jd.reduce(&v));
        }
        let kappa = kred.to_subspace();
        let positions: Vec<(usize, usize)> = kappa
            .vectors()
            .iter()
            .map(|v| {
                let c = v.iter().position(|x| !x.is_zero()).expect("nonzero basis vector");
                let w = ws.word(ws.word_at_col(c));
                (w.source, w.target)
            })
            .collect();

        let pairs: Vec<(usize, usize)> = (0..nb).flat_map(|s| (0..nb).map(move |t| (s, t))).collect();
        let defects: Vec<MatPoly> =
            pairs.par_iter().map(|&(s, t)| b.reduce_poly(&b.defect(&versal, s, t, d), &nf_j)).collect();

        // Coefficients along the kappa basis, checking the defect lies in the kernel K.
        let mut cochains: Vec<Vec<Scalar>> =
            positions.iter().map(|&(i, j)| vec![field.zero(); bar.cochain_len(2, i, j)]).collect();
        for (&(s, t), dp) in pairs.iter().zip(&defects) {
            let mut residual = dp.clone();
            for (beta, &p) in kappa.pivots().iter().enumerate() {
                let Some(x) = dp.get(&p) else { continue };
                let (i, j) = positions[beta];
                if x.rows() != dims[i] || x.cols() != dims[j] {
                    return Err(Error::Internal("defect coefficient has the wrong shape".into()));
                }
                let tuple = s * nb + t;
                for m in 0..dims[i] {
                    for o in 0..dims[j] {
                        cochains[beta][(tuple * dims[i] + m) * dims[j] + o] = x[(m, o)].clone();
                    }
                }
                let minus = -field.one();
                for (c, coef) in kappa.vector(beta).iter().enumerate() {
                    if !coef.is_zero() {
                        add_into(&mut residual, c, &(&minus * coef), x);
                    }
                }
            }
            if !residual.is_empty() {
                return Err(Error::ObstructionProjectionFailure(format!(
                    "degree {d} defect on ({s}, {t}) leaves the kernel of the small extension"
                )));
            }
        }

        let mut new_relations = Vec::new();
        let mut projections = Vec::with_capacity(kappa.dim());
        for (beta, values) in cochains.into_iter().enumerate() {
            let (i, j) = positions[beta];
            let basis = ext.ext2(i, j);
            let (coeffs, gamma) = basis.decompose(&values).ok_or_else(|| {
                Error::ObstructionProjectionFailure(format!(
                    "degree {d} defect coefficient in position ({}, {}) is not a 2-cocycle",
                    i + 1,
                    j + 1
                ))
            })?;
            projections.push((coeffs, bar.cochain(1, i, j, gamma)?));
        }
        for (s, p) in versal.iter_mut().enumerate() {
            for (beta, (_, gamma)) in projections.iter().enumerate() {
                let g = bar.evaluate_degree_one(gamma, s);
                if g.is_zero() {
                    continue;
                }
                for (c, coef) in kappa.vector(beta).iter().enumerate() {
                    add_into(p, ws.word_at_col(c), coef, &g);
                }
            }
        }
        let mut by_position: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (beta, &pos) in positions.iter().enumerate() {
            by_position.entry(pos).or_default().push(beta);
        }
        for (&(i, j), betas) in &by_position {
            for k in 0..ext.ext2(i, j).dim() {
                let mut v = vec![field.zero(); ws.len()];
                for &beta in betas {
                    let c = &projections[beta].0[k];
                    if c.is_zero() {
                        continue;
                    }
                    for (col, x) in kappa.vector(beta).iter().enumerate() {
                        if !x.is_zero() {
                            v[col].add_mul(c, x);
                        }
                    }
                }
                let mut terms: Vec<(usize, Scalar)> = v
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(col, c)| (ws.word_at_col(col), c))
                    .collect();
                if terms.is_empty() {
                    continue;
                }
                terms.sort_by_key(|(w, _)| *w);
                let degree = terms.iter().map(|(w, _)| ws.word(*w).degree()).min().unwrap();
                new_relations.push(Relation { position: (i, j), degree, terms });
            }
        }
        let mut next = jd;
        for g in &new_relations {
            let mut v = vec![field.zero(); ws.len()];
            for (w, c) in &g.terms {
                v[ws.col(*w)] += c;
            }
            next.insert(v);
        }
        ideal = next;
        relations = new_relations;
        let nf = b.normal_forms(&ideal);
        versal = versal.iter().map(|p| b.columns_to_words(b.reduce_poly(p, &nf))).collect();
    }

    let pivots: Vec<bool> = {
        let sub = ideal.to_subspace();
        let mut m = vec![false; ws.len()];
        for &p in sub.pivots() {
            m[p] = true;
        }
        m
    };
    let standard: Vec<usize> = (0..ws.len()).filter(|&w| !pivots[ws.col(w)]).collect();
    let hull = TruncatedHull {
        algebra: algebra.clone(),
        family: family.clone(),
        bar: bar.clone(),
        ext: ext.clone(),
        max_degree,
        words: ws.clone(),
        relations,
        ideal,
        standard,
        versal,
    };
    hull.check_multiplicative()?;
    Ok(hull)
}

impl TruncatedHull {
    fn builder(&self) -> Builder<'_> {
        Builder { field: self.algebra.field(), bar: &self.bar, ws: &self.words }
    }

    /// The versal action is multiplicative modulo the relations and the truncation.
    fn check_multiplicative(&self) -> Result<()> {
        let b = self.builder();
        let nf = b.normal_forms(&self.ideal);
        let nb = self.bar.nb();
        let bad = (0..nb * nb)
            .into_par_iter()
            .find_first(|&k| !b.reduce_poly(&b.defect(&self.versal, k / nb, k % nb, self.max_degree), &nf).is_empty());
        match bad {
            Some(k) => Err(Error::Internal(format!(
                "versal action is not multiplicative on adapted pair ({}, {})",
                k / nb,
                k % nb
            ))),
            None => Ok(()),
        }
    }

    pub fn algebra(&self) -> &FinDimAlgebra {
        &self.algebra
    }

    pub fn family(&self) -> &ModuleFamily {
        &self.family
    }

    pub fn bar(&self) -> &BarComplex {
        &self.bar
    }

    pub fn ext(&self) -> &ExtData {
        &self.ext
    }

    pub fn r(&self) -> usize {
        self.family.len()
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn words(&self) -> &WordSet {
        &self.words
    }

    pub fn generators(&self) -> &[Generator] {
        &self.words.generators
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// Standard monomials spanning `H`, ordered by degree and then lexicographically.
    pub fn standard_words(&self) -> &[usize] {
        &self.standard
    }

    pub fn tangent(&self) -> Vec<Vec<usize>> {
        self.ext.ext1_dims()
    }

    pub fn obstruction_dims(&self) -> Vec<Vec<usize>> {
        self.ext.ext2_dims()
    }

    /// `dim H_ij` per position.
    pub fn h_dims(&self) -> Vec<Vec<usize>> {
        let r = self.r();
        let mut t = vec![vec![0; r]; r];
        for &w in &self.standard {
            let word = self.words.word(w);
            t[word.source][word.target] += 1;
        }
        t
    }

    pub fn total_dim(&self) -> usize {
        self.standard.len()
    }

    /// Number of composable words of the given degree in position `(i, j)` of the free algebra.
    pub fn free_words_at(&self, i: usize, j: usize, degree: usize) -> usize {
        self.words.words.iter().filter(|w| w.source == i && w.target == j && w.degree() == degree).count()
    }

    pub fn relations_at(&self, i: usize, j: usize) -> usize {
        self.relations.iter().filter(|g| g.position == (i, j)).count()
    }

    pub fn word_label(&self, w: usize) -> String {
        self.words.label(w)
    }

    /// Normal form of a word in `H`, as `(standard word, coefficient)` pairs.
    pub fn normal_form(&self, w: usize) -> Vec<(usize, Scalar)> {
        let f = self.algebra.field();
        let mut v = vec![f.zero(); self.words.len()];
        v[self.words.col(w)] = f.one();
        let mut out: Vec<(usize, Scalar)> = self
            .ideal
            .reduce(&v)
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(c, x)| (self.words.word_at_col(c), x))
            .collect();
        out.sort_by_key(|(w, _)| *w);
        out
    }

    /// `u v` in `H` for words `u`, `v`; zero when not composable or past the truncation.
    pub fn multiply(&self, u: usize, v: usize) -> Vec<(usize, Scalar)> {
        match self.words.concat(u, v) {
            Some(w) => self.normal_form(w),
            None => Vec::new(),
        }
    }

    /// The versal action of an element of `A` given in original coordinates.
    pub fn versal_action_of(&self, x: &[Scalar]) -> MatPoly {
        let (scale, coords) = self.bar.split(x);
        let f = self.algebra.field();
        let mut out = MatPoly::new();
        for (i, &d) in self.family.dims().iter().enumerate() {
            add_into(&mut out, self.words.idempotent(i), &scale, &Matrix::identity(f, d));
        }
        for (c, p) in coords.iter().zip(&self.versal) {
            for (w, m) in p {
                add_into(&mut out, *w, c, m);
            }
        }
        out
    }

    pub fn versal_action(&self, a: usize) -> MatPoly {
        self.versal_action_of(&self.algebra.basis_vector(a))
    }

    /// Relation terms as display labels.
    pub fn relation_support(&self, g: &Relation) -> Vec<String> {
        g.terms.iter().map(|(w, _)| self.word_label(*w)).collect()
    }
}

/// Whether raising the truncation degree by one adds no new standard monomials.
pub fn stabilization_check(h: &TruncatedHull) -> Result<bool> {
    let next = compute_hull(&h.algebra, &h.family, h.max_degree + 1)?;
    Ok(next.h_dims() == h.h_dims())
}
