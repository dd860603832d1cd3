//! Finite posets, their incidence algebras, simple modules and the combinatorial Ext rules.

use std::collections::HashMap;

use crate::algebra::FinDimAlgebra;
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, Subspace};
use crate::repmod::{ModuleFamily, RightModule};

/// A finite poset; `greater[a][b]` means `a > b` (transitively closed).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    elements: Vec<String>,
    greater: Vec<Vec<bool>>,
}

impl Poset {
    /// Builds the transitive closure of the given strict relations and checks antisymmetry.
    pub fn new(elements: Vec<String>, greater_than: &[(String, String)]) -> Result<Poset> {
        let n = elements.len();
        let mut index = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.as_str(), i).is_some() {
                return Err(Error::InvalidInput(format!("duplicate poset element {e:?}")));
            }
        }
        let lookup = |name: &str| {
            index.get(name).copied().ok_or_else(|| Error::InvalidInput(format!("unknown poset element {name:?}")))
        };
        let mut greater = vec![vec![false; n]; n];
        for (a, b) in greater_than {
            let (a, b) = (lookup(a)?, lookup(b)?);
            if a == b {
                return Err(Error::InvalidInput(format!("relation {} > {} is reflexive", elements[a], elements[b])));
            }
            greater[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if greater[i][k] {
                    for j in 0..n {
                        if greater[k][j] {
                            greater[i][j] = true;
                        }
                    }
                }
            }
        }
        if let Some(i) = (0..n).find(|&i| greater[i][i]) {
            return Err(Error::InvalidInput(format!("order relation has a cycle through {}", elements[i])));
        }
        Ok(Poset { elements, greater })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn gt(&self, a: usize, b: usize) -> bool {
        self.greater[a][b]
    }

    pub fn ge(&self, a: usize, b: usize) -> bool {
        a == b || self.greater[a][b]
    }

    /// `a` covers `b`: `a > b` with nothing strictly between.
    pub fn covers(&self, a: usize, b: usize) -> bool {
        self.gt(a, b) && !(0..self.len()).any(|c| self.gt(a, c) && self.gt(c, b))
    }

    /// Covering pairs `(a, b)` in index order; the Hasse diagram.
    pub fn cover_relations(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| self.covers(a, b)).collect()
    }

    /// Pairs `(a, b)` with `a >= b` in lexicographic index order: the incidence basis.
    pub fn intervals(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| self.ge(a, b)).collect()
    }

    /// The same poset with element `i` renamed to position `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Poset {
        let n = self.len();
        let mut elements = vec![String::new(); n];
        let mut greater = vec![vec![false; n]; n];
        for i in 0..n {
            elements[perm[i]] = self.elements[i].clone();
            for j in 0..n {
                greater[perm[i]][perm[j]] = self.greater[i][j];
            }
        }
        Poset { elements, greater }
    }

    /// Covering relations as name pairs, the minimal description of the order.
    pub fn hasse_pairs(&self) -> Vec<(String, String)> {
        self.cover_relations().into_iter().map(|(a, b)| (self.elements[a].clone(), self.elements[b].clone())).collect()
    }
}

/// `k[P]` on the basis `e_{ab}` (`a >= b`), with `e_{ab} e_{b'c} = [b = b'] e_{ac}`.
/// The span of the strict pairs is attached as the radical candidate for prime fields.
pub fn incidence_algebra(p: &Poset, field: Field) -> FinDimAlgebra {
    let basis = p.intervals();
    let n = basis.len();
    let index: HashMap<(usize, usize), usize> = basis.iter().enumerate().map(|(k, &ab)| (ab, k)).collect();
    let mut table = vec![field.zero(); n * n * n];
    for (x, &(a, b)) in basis.iter().enumerate() {
        for (y, &(b2, c)) in basis.iter().enumerate() {
            if b == b2 {
                table[(x * n + y) * n + index[&(a, c)]] = field.one();
            }
        }
    }
    let mut unit = vec![field.zero(); n];
    for a in 0..p.len() {
        unit[index[&(a, a)]] = field.one();
    }
    let labels = basis.iter().map(|&(a, b)| format!("e[{},{}]", p.elements[a], p.elements[b])).collect();
    let strict = basis
        .iter()
        .enumerate()
        .filter(|(_, &(a, b))| a != b)
        .map(|(k, _)| {
            let mut v = vec![field.zero(); n];
            v[k] = field.one();
            v
        })
        .collect();
    FinDimAlgebra::new_unchecked(field, labels, table, unit)
        .with_radical_hint(Subspace::from_spanning(field, n, strict))
}

/// The one-dimensional simples `M_a`: `e_{aa}` acts as 1, every other basis element as 0.
pub fn simple_modules(p: &Poset, algebra: &FinDimAlgebra) -> ModuleFamily {
    let f = algebra.field();
    let basis = p.intervals();
    let members = (0..p.len())
        .map(|a| {
            let action = basis
                .iter()
                .map(|&(x, y)| {
                    let v = if x == a && y == a { f.one() } else { f.zero() };
                    Matrix::from_flat(f, 1, 1, vec![v])
                })
                .collect();
            RightModule::new_unchecked(1, action)
        })
        .collect();
    ModuleFamily::new(members).expect("posets used here are nonempty")
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ExtOracleTable {
    pub ext1: Vec<Vec<usize>>,
    pub ext2: Vec<Vec<usize>>,
}

/// `ext1[a][b] = 1` when `a` covers `b`; `ext2[a][b] = 1` when `[b, a]` is a simple loop.
pub fn ext_oracle(p: &Poset) -> ExtOracleTable {
    let n = p.len();
    let mut ext1 = vec![vec![0; n]; n];
    let mut ext2 = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            if p.covers(a, b) {
                ext1[a][b] = 1;
            } else if is_simple_loop(p, a, b) {
                ext2[a][b] = 1;
            }
        }
    }
    ExtOracleTable { ext1, ext2 }
}

/// The Hasse diagram of `[bottom, top]` is two saturated chains meeting only at the endpoints.
pub fn is_simple_loop(p: &Poset, top: usize, bottom: usize) -> bool {
    if !p.gt(top, bottom) || p.covers(top, bottom) {
        return false;
    }
    let interior: Vec<usize> = (0..p.len()).filter(|&c| p.gt(top, c) && p.gt(c, bottom)).collect();
    let in_closed = |c: usize| c == top || c == bottom || interior.contains(&c);
    let lower = |c: usize| (0..p.len()).filter(|&d| in_closed(d) && p.covers(c, d)).count();
    let upper = |c: usize| (0..p.len()).filter(|&d| in_closed(d) && p.covers(d, c)).count();
    if lower(top) != 2 || upper(bottom) != 2 {
        return false;
    }
    if interior.iter().any(|&c| lower(c) != 1 || upper(c) != 1) {
        return false;
    }
    // Two components of the interior Hasse graph means the two chains are disjoint.
    let mut component: Vec<Option<usize>> = vec![None; interior.len()];
    let mut count = 0;
    for start in 0..interior.len() {
        if component[start].is_some() {
            continue;
        }
        let mut stack = vec![start];
        component[start] = Some(count);
        while let Some(x) = stack.pop() {
            for y in 0..interior.len() {
                let (u, v) = (interior[x], interior[y]);
                if component[y].is_none() && (p.covers(u, v) || p.covers(v, u)) {
                    component[y] = Some(count);
                    stack.push(y);
                }
            }
        }
        count += 1;
    }
    count == 2
}

/// Built-in posets and algebras.
pub mod fixtures {
    use super::*;
    use crate::algebra::FinDimAlgebra;

    fn names(n: usize) -> Vec<String> {
        (1..=n).map(|i| i.to_string()).collect()
    }

    fn pairs(list: &[(&str, &str)]) -> Vec<(String, String)> {
        list.iter().map(|&(a, b)| (a.to_string(), b.to_string())).collect()
    }

    /// `1 > 2 > ... > n`.
    pub fn chain(n: usize) -> Poset {
        let rel: Vec<(String, String)> = (1..n).map(|i| (i.to_string(), (i + 1).to_string())).collect();
        Poset::new(names(n), &rel).unwrap()
    }

    pub fn antichain(n: usize) -> Poset {
        Poset::new(names(n), &[]).unwrap()
    }

    /// Three maximal elements over one minimal element.
    pub fn hereditary() -> Poset {
        Poset::new(names(4), &pairs(&[("1", "4"), ("2", "4"), ("3", "4")])).unwrap()
    }

    /// `1 > 2, 3 > 4` with 2 and 3 incomparable.
    pub fn diamond() -> Poset {
        Poset::new(names(4), &pairs(&[("1", "2"), ("1", "3"), ("2", "4"), ("3", "4")])).unwrap()
    }

    /// The diamond with an extra element `0` above its top.
    pub fn diamond_tail() -> Poset {
        let elements = (0..5).map(|i| i.to_string()).collect();
        Poset::new(elements, &pairs(&[("0", "1"), ("1", "2"), ("1", "3"), ("2", "4"), ("3", "4")])).unwrap()
    }

    /// The fence `a1 > b1 < a2 > b2 < a3`.
    pub fn zigzag() -> Poset {
        let elements = ["a1", "a2", "a3", "b1", "b2"].iter().map(|s| s.to_string()).collect();
        Poset::new(elements, &pairs(&[("a1", "b1"), ("a2", "b1"), ("a2", "b2"), ("a3", "b2")])).unwrap()
    }

    /// Two chains of lengths 3 and 2 between a common top and bottom.
    pub fn pentagon() -> Poset {
        Poset::new(names(5), &pairs(&[("1", "2"), ("2", "3"), ("3", "5"), ("1", "4"), ("4", "5")])).unwrap()
    }

    pub fn catalog() -> Vec<(&'static str, Poset)> {
        vec![
            ("chain1", chain(1)),
            ("chain2", chain(2)),
            ("chain3", chain(3)),
            ("chain4", chain(4)),
            ("antichain2", antichain(2)),
            ("antichain3", antichain(3)),
            ("hereditary", hereditary()),
            ("diamond", diamond()),
            ("diamond_tail", diamond_tail()),
            ("zigzag", zigzag()),
            ("pentagon", pentagon()),
        ]
    }

    pub fn poset(name: &str) -> Option<Poset> {
        catalog().into_iter().find(|(n, _)| *n == name).map(|(_, p)| p)
    }

    /// The one-dimensional algebra `k`.
    pub fn trivial_algebra(field: Field) -> FinDimAlgebra {
        FinDimAlgebra::new_unchecked(field, vec!["1".into()], vec![field.one()], vec![field.one()])
            .with_radical_hint(Subspace::zero(field, 1))
    }

    /// `M_n(k)` on matrix units `E_{ab}` in row-major order.
    pub fn matrix_algebra(field: Field, n: usize) -> FinDimAlgebra {
        let dim = n * n;
        let mut table = vec![field.zero(); dim * dim * dim];
        for a in 0..n {
            for b in 0..n {
                for d in 0..n {
                    table[((a * n + b) * dim + b * n + d) * dim + a * n + d] = field.one();
                }
            }
        }
        let mut unit = vec![field.zero(); dim];
        for a in 0..n {
            unit[a * n + a] = field.one();
        }
        let labels = (0..dim).map(|k| format!("E[{},{}]", k / n + 1, k % n + 1)).collect();
        FinDimAlgebra::new_unchecked(field, labels, table, unit).with_radical_hint(Subspace::zero(field, dim))
    }

    /// The Kronecker algebra: idempotents `e1, e2` and two arrows `a, b` with `e1 a e2 = a`, `e1 b e2 = b`.
    pub fn kronecker_algebra(field: Field) -> FinDimAlgebra {
        let n = 4;
        let mut table = vec![field.zero(); n * n * n];
        let mut set = |i: usize, j: usize, k: usize| table[(i * n + j) * n + k] = field.one();
        set(0, 0, 0);
        set(1, 1, 1);
        for arrow in [2, 3] {
            set(0, arrow, arrow);
            set(arrow, 1, arrow);
        }
        let unit = vec![field.one(), field.one(), field.zero(), field.zero()];
        let labels = ["e1", "e2", "a", "b"].iter().map(|s| s.to_string()).collect();
        let z = field.zero();
        let o = field.one();
        let rad = vec![vec![z.clone(), z.clone(), o.clone(), z.clone()], vec![z.clone(), z.clone(), z, o]];
        FinDimAlgebra::new_unchecked(field, labels, table, unit)
            .with_radical_hint(Subspace::from_spanning(field, n, rad))
    }

    /// The indecomposable two-dimensional Kronecker module on which `a` acts nontrivially and `b` as zero.
    pub fn kronecker_module(field: Field) -> RightModule {
        let (z, o) = (field.zero(), field.one());
        let m =
            |e: [&crate::exactla::Scalar; 4]| Matrix::from_flat(field, 2, 2, e.iter().map(|&x| x.clone()).collect());
        let action = vec![m([&o, &z, &z, &z]), m([&z, &z, &z, &o]), m([&z, &o, &z, &z]), m([&z, &z, &z, &z])];
        RightModule::new_unchecked(2, action)
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::algebra::FinDimAlgebra;

    #[test]
    fn incidence_dimensions() {
        assert_eq!(incidence_algebra(&antichain(3), Field::Rational).dim(), 3);
        assert_eq!(incidence_algebra(&hereditary(), Field::Rational).dim(), 7);
        assert_eq!(incidence_algebra(&diamond(), Field::Rational).dim(), 9);
        assert_eq!(incidence_algebra(&diamond_tail(), Field::Rational).dim(), 14);
        assert_eq!(incidence_algebra(&pentagon(), Field::Rational).dim(), 13);
    }

    #[test]
    fn incidence_algebras_validate() {
        for (name, p) in catalog() {
            let a = incidence_algebra(&p, Field::Rational);
            let table = (0..a.dim()).map(|i| (0..a.dim()).map(|j| a.product(i, j).to_vec()).collect()).collect();
            let rebuilt =
                FinDimAlgebra::from_structure_constants(a.field(), a.labels().to_vec(), table, a.unit().to_vec());
            assert!(rebuilt.is_ok(), "{name}");
            for m in simple_modules(&p, &a).members() {
                RightModule::new(&a, 1, m.actions().to_vec()).unwrap();
            }
        }
        for a in [matrix_algebra(Field::Rational, 2), kronecker_algebra(Field::Rational)] {
            let table = (0..a.dim()).map(|i| (0..a.dim()).map(|j| a.product(i, j).to_vec()).collect()).collect();
            FinDimAlgebra::from_structure_constants(a.field(), a.labels().to_vec(), table, a.unit().to_vec()).unwrap();
        }
        let k = kronecker_algebra(Field::Rational);
        RightModule::new(&k, 2, kronecker_module(Field::Rational).actions().to_vec()).unwrap();
    }

    #[test]
    fn simple_modules_of_chain() {
        let p = chain(2);
        let a = incidence_algebra(&p, Field::Rational);
        let fam = simple_modules(&p, &a);
        assert_eq!(fam.len(), 2);
        let strict = p.intervals().iter().position(|&(x, y)| x != y).unwrap();
        assert!(fam.members().iter().all(|m| m.action(strict).is_zero()));
        assert_eq!(simple_modules(&diamond(), &incidence_algebra(&diamond(), Field::Rational)).len(), 4);
    }

    fn nonzero(t: &[Vec<usize>]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, row) in t.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if x != 0 {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }

    #[test]
    fn oracle_examples() {
        let d = ext_oracle(&diamond());
        assert_eq!(nonzero(&d.ext1), vec![(1, 2), (1, 3), (2, 4), (3, 4)]);
        assert_eq!(nonzero(&d.ext2), vec![(1, 4)]);
        let h = ext_oracle(&hereditary());
        assert_eq!(nonzero(&h.ext1), vec![(1, 4), (2, 4), (3, 4)]);
        assert!(nonzero(&h.ext2).is_empty());
        let c = ext_oracle(&chain(3));
        assert_eq!(nonzero(&c.ext1), vec![(1, 2), (2, 3)]);
        assert!(nonzero(&c.ext2).is_empty());
        let p = ext_oracle(&pentagon());
        assert_eq!(nonzero(&p.ext2), vec![(1, 5)]);
        let t = ext_oracle(&diamond_tail());
        assert_eq!(nonzero(&t.ext2), vec![(2, 5)]);
    }

    #[test]
    fn cyclic_order_rejected() {
        let err = Poset::new(vec!["x".into(), "y".into()], &[("x".into(), "y".into()), ("y".into(), "x".into())]);
        assert!(err.is_err());
        assert!(Poset::new(vec!["x".into()], &[("x".into(), "z".into())]).is_err());
    }

    #[test]
    fn oracle_is_equivariant() {
        let p = diamond_tail();
        let perm = [3, 0, 4, 1, 2];
        let q = p.permuted(&perm);
        let (a, b) = (ext_oracle(&p), ext_oracle(&q));
        for i in 0..p.len() {
            for j in 0..p.len() {
                assert_eq!(a.ext1[i][j], b.ext1[perm[i]][perm[j]]);
                assert_eq!(a.ext2[i][j], b.ext2[perm[i]][perm[j]]);
            }
        }
    }
}
