//! Deformations of module families over pointed Artinian rings and the order-by-order hull.

mod hull;
mod ring;
mod words;

pub use hull::{compute_hull, stabilization_check, MatPoly, Relation, TruncatedHull};
pub use ring::{
    derivation_basis, equivalent, is_deformation, make_test_ring, tangent_dimensions, versal_map, Deformation,
    DeformationCheck, RadicalProduct, TestRing, VersalMap,
};
pub use words::{Generator, Word, WordSet};

use crate::algebra::{radical_filtration, FinDimAlgebra};
use crate::error::Result;

/// The default truncation degree: the nilpotency index of `rad A`, at least 1.
pub fn default_degree(a: &FinDimAlgebra) -> Result<usize> {
    Ok(radical_filtration(a)?.nilpotency_index.max(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{Field, Matrix};
    use crate::posetalg::{fixtures, incidence_algebra, simple_modules};
    use crate::repmod::{simples_of, ModuleFamily};

    fn poset_case(p: &crate::posetalg::Poset) -> (FinDimAlgebra, ModuleFamily) {
        let a = incidence_algebra(p, Field::Rational);
        let fam = simple_modules(p, &a);
        (a, fam)
    }

    fn composable(h: &TruncatedHull) -> bool {
        h.standard_words().iter().all(|&w| {
            let word = h.words().word(w);
            let gens = h.generators();
            word.gens.windows(2).all(|p| gens[p[0]].target == gens[p[1]].source)
                && word.gens.first().is_none_or(|&g| gens[g].source == word.source)
                && word.gens.last().is_none_or(|&g| gens[g].target == word.target)
        })
    }

    #[test]
    fn hereditary_hull_is_free() {
        let (a, fam) = poset_case(&fixtures::hereditary());
        let h = compute_hull(&a, &fam, 3).unwrap();
        assert!(h.relations().is_empty());
        assert_eq!(h.h_dims(), vec![vec![1, 0, 0, 1], vec![0, 1, 0, 1], vec![0, 0, 1, 1], vec![0, 0, 0, 1]]);
        assert_eq!(h.total_dim(), 7);
        assert!(composable(&h));
        assert!(stabilization_check(&compute_hull(&a, &fam, 2).unwrap()).unwrap());
        assert!(stabilization_check(&compute_hull(&a, &fam, 1).unwrap()).unwrap());
    }

    #[test]
    fn diamond_hull_has_one_relation() {
        let (a, fam) = poset_case(&fixtures::diamond());
        let h = compute_hull(&a, &fam, 3).unwrap();
        let labels: Vec<&str> = h.generators().iter().map(|g| g.label.as_str()).collect();
        assert_eq!(labels, ["t12", "t13", "t24", "t34"]);
        assert_eq!(h.free_words_at(0, 3, 2), 2);
        assert_eq!(h.relations_at(0, 3), 1);
        assert_eq!(h.relations().len(), 1);
        let g = &h.relations()[0];
        assert_eq!(g.degree, 2);
        let mut support = h.relation_support(g);
        support.sort();
        assert_eq!(support, ["t12*t24", "t13*t34"]);
        assert_eq!(h.h_dims(), vec![vec![1, 1, 1, 1], vec![0, 1, 0, 1], vec![0, 0, 1, 1], vec![0, 0, 0, 1]]);
        assert_eq!(h.total_dim(), 9);
        assert!(composable(&h));
        assert!(stabilization_check(&h).unwrap());
    }

    #[test]
    fn trivial_algebra_has_trivial_hull() {
        let a = fixtures::trivial_algebra(Field::Rational);
        let fam = simples_of(&a).unwrap().family;
        let h = compute_hull(&a, &fam, 2).unwrap();
        assert!(h.generators().is_empty());
        assert_eq!(h.h_dims(), vec![vec![1]]);
        assert!(stabilization_check(&h).unwrap());
    }

    #[test]
    fn kronecker_hull_never_stabilizes() {
        let a = fixtures::kronecker_algebra(Field::Rational);
        let fam = ModuleFamily::new(vec![fixtures::kronecker_module(Field::Rational)]).unwrap();
        let tangent = tangent_dimensions(&a, &fam).unwrap();
        assert!(tangent[0][0] > 0);
        let (_, e2) = crate::homolog::ext_dims(&a, &fam);
        assert_eq!(e2, vec![vec![0]]);
        for n in 1..=3 {
            let h = compute_hull(&a, &fam, n).unwrap();
            assert!(h.relations().is_empty());
            assert!(!stabilization_check(&h).unwrap());
        }
    }

    #[test]
    fn hull_rejects_degree_zero() {
        let (a, fam) = poset_case(&fixtures::chain(2));
        assert!(compute_hull(&a, &fam, 0).is_err());
    }

    #[test]
    fn catalog_hulls_without_loops_are_free() {
        for (name, p) in fixtures::catalog() {
            let (a, fam) = poset_case(&p);
            let (_, e2) = crate::homolog::ext_dims(&a, &fam);
            if e2.iter().flatten().all(|&x| x == 0) {
                let h = compute_hull(&a, &fam, 3).unwrap();
                assert!(h.relations().is_empty(), "{name}");
            }
        }
    }

    #[test]
    fn test_ring_examples() {
        let f = Field::Rational;
        let k3 = TestRing::trivial(f, 3);
        assert_eq!(k3.dim(), 3);
        assert_eq!(k3.nilpotency_index(), 1);
        assert!(k3.f_matrix().mul(&k3.g_matrix()).is_identity());

        let eps = TestRing::epsilon(f, 2, 0, 1).unwrap();
        assert_eq!(eps.dim(), 3);
        assert!(eps.radical_square_zero());
        assert_eq!(eps.peirce(0, 1).dim(), 1);
        assert_eq!(eps.peirce(1, 0).dim(), 0);
        assert!(eps.f_matrix().mul(&eps.g_matrix()).is_identity());

        let cubic = TestRing::truncated_polynomial(f, 3).unwrap();
        assert_eq!(cubic.dim(), 3);
        assert_eq!(cubic.nilpotency_index(), 3);
        assert!(!cubic.radical_square_zero());
        let total: usize = (0..1).map(|i| cubic.peirce(i, i).dim()).sum();
        assert_eq!(total, cubic.dim());
    }

    #[test]
    fn test_ring_errors() {
        let f = Field::Rational;
        assert!(matches!(TestRing::epsilon(f, 2, 0, 2), Err(crate::Error::StructuralMapViolation(_))));
        let bad = RadicalProduct { left: 0, right: 0, coeffs: vec![f.one()] };
        assert!(matches!(make_test_ring(f, 1, &[(0, 0)], &[bad]), Err(crate::Error::RadicalNotNilpotent)));
        let off = RadicalProduct { left: 0, right: 0, coeffs: vec![f.zero(), f.one()] };
        assert!(matches!(
            make_test_ring(f, 2, &[(0, 1), (0, 1)], &[off]),
            Err(crate::Error::StructuralMapViolation(_))
        ));
    }

    fn diamond_setup() -> (FinDimAlgebra, ModuleFamily, TruncatedHull) {
        let (a, fam) = poset_case(&fixtures::diamond());
        let h = compute_hull(&a, &fam, 3).unwrap();
        (a, fam, h)
    }

    /// A first-order term in position `(i, j)` from a cochain of the bar complex.
    fn order_one(h: &TruncatedHull, cochain: &crate::homolog::Cochain) -> Vec<Matrix> {
        (0..h.algebra().dim())
            .map(|a| {
                let x = h.algebra().basis_vector(a);
                let (_, coords) = h.bar().split(&x);
                let (di, dj) = (h.family().member(cochain.source).dim(), h.family().member(cochain.target).dim());
                let mut m = Matrix::zeros(h.algebra().field(), di, dj);
                for (s, c) in coords.iter().enumerate() {
                    if !c.is_zero() {
                        m.add_scaled(c, &h.bar().evaluate_degree_one(cochain, s));
                    }
                }
                m
            })
            .collect()
    }

    #[test]
    fn deformation_checks() {
        let (a, fam, h) = diamond_setup();
        let f = Field::Rational;
        let ring = TestRing::epsilon(f, 4, 0, 1).unwrap();
        let trivial = Deformation::trivial(&a, &fam, &ring);
        assert!(is_deformation(&a, &fam, &ring, &trivial).ok);

        let rep = &h.ext().ext1(0, 1).representatives[0];
        let d = Deformation::first_order(&a, &fam, &ring, &[(4, order_one(&h, rep))]);
        assert!(is_deformation(&a, &fam, &ring, &d).ok);

        let mut broken = order_one(&h, rep);
        let idx = (0..a.dim()).find(|&x| broken[x].is_zero()).unwrap();
        broken[idx] = Matrix::from_i64(f, &[&[1]]);
        let bad = Deformation::first_order(&a, &fam, &ring, &[(4, broken)]);
        let check = is_deformation(&a, &fam, &ring, &bad);
        assert!(!check.ok);
        assert!(check.failure.is_some());
    }

    #[test]
    fn equivalence_of_first_order_deformations() {
        let (a, fam, h) = diamond_setup();
        let f = Field::Rational;
        let ring = TestRing::epsilon(f, 4, 0, 1).unwrap();
        let rep = &h.ext().ext1(0, 1).representatives[0];
        let d = Deformation::first_order(&a, &fam, &ring, &[(4, order_one(&h, rep))]);
        assert!(equivalent(&a, &fam, &ring, &d, &d).unwrap());

        let mut b = h.bar().zero_cochain(0, 0, 1);
        b.values[0] = f.from_i64(3);
        let db = h.bar().differential(&b);
        let shifted: Vec<Matrix> = order_one(&h, rep).iter().zip(order_one(&h, &db)).map(|(x, y)| x.add(&y)).collect();
        let d2 = Deformation::first_order(&a, &fam, &ring, &[(4, shifted)]);
        assert!(is_deformation(&a, &fam, &ring, &d2).ok);
        assert!(equivalent(&a, &fam, &ring, &d, &d2).unwrap());

        let trivial = Deformation::trivial(&a, &fam, &ring);
        assert!(!equivalent(&a, &fam, &ring, &d, &trivial).unwrap());

        let cubic = TestRing::truncated_polynomial(f, 3).unwrap();
        let m = fixtures::matrix_algebra(f, 2);
        let s = simples_of(&m).unwrap().family;
        let t = Deformation::trivial(&m, &s, &cubic);
        assert!(matches!(equivalent(&m, &s, &cubic, &t, &t), Err(crate::Error::NilpotencyTooDeep)));
    }

    #[test]
    fn tangent_dimension_examples() {
        let (a, fam) = poset_case(&fixtures::diamond());
        assert_eq!(
            tangent_dimensions(&a, &fam).unwrap(),
            vec![vec![0, 1, 1, 0], vec![0, 0, 0, 1], vec![0, 0, 0, 1], vec![0, 0, 0, 0]]
        );
        let (a, fam) = poset_case(&fixtures::hereditary());
        assert_eq!(
            tangent_dimensions(&a, &fam).unwrap(),
            vec![vec![0, 0, 0, 1], vec![0, 0, 0, 1], vec![0, 0, 0, 1], vec![0, 0, 0, 0]]
        );
        let m = fixtures::matrix_algebra(Field::Rational, 2);
        let s = simples_of(&m).unwrap().family;
        assert_eq!(tangent_dimensions(&m, &s).unwrap(), vec![vec![0]]);
    }

    #[test]
    fn versal_map_examples() {
        let (a, fam, h) = diamond_setup();
        let f = Field::Rational;
        let ring = TestRing::epsilon(f, 4, 0, 1).unwrap();

        let trivial = Deformation::trivial(&a, &fam, &ring);
        let phi = versal_map(&h, &ring, &trivial).unwrap();
        assert!(phi.images.iter().flatten().all(|x| x.is_zero()));

        let rep = &h.ext().ext1(0, 1).representatives[0];
        let d = Deformation::first_order(&a, &fam, &ring, &[(4, order_one(&h, rep))]);
        let phi = versal_map(&h, &ring, &d).unwrap();
        let g12 = h.generators().iter().position(|g| g.label == "t12").unwrap();
        for (g, img) in phi.images.iter().enumerate() {
            let expected: Vec<_> =
                (0..ring.dim()).map(|b| if g == g12 && b == 4 { f.one() } else { f.zero() }).collect();
            assert_eq!(img, &expected);
        }

        let mut b = h.bar().zero_cochain(0, 0, 1);
        b.values[0] = f.one();
        let db = h.bar().differential(&b);
        let d = Deformation::first_order(&a, &fam, &ring, &[(4, order_one(&h, &db))]);
        let phi = versal_map(&h, &ring, &d).unwrap();
        assert!(phi.images.iter().flatten().all(|x| x.is_zero()));
        assert!(equivalent(&a, &fam, &ring, &phi.pushforward, &d).unwrap());
    }

    #[test]
    fn versality_on_small_square_zero_rings() {
        let (a, fam, h) = diamond_setup();
        let f = Field::Rational;
        let positions: Vec<(usize, usize)> = (0..4).flat_map(|i| (0..4).map(move |j| (i, j))).collect();
        let picks: Vec<Vec<(usize, usize)>> = positions
            .iter()
            .map(|&p| vec![p])
            .chain([vec![(0, 1), (0, 2)], vec![(0, 1), (1, 3)], vec![(0, 1), (0, 1)]])
            .collect();
        for pick in picks {
            let ring = TestRing::square_zero(f, 4, &pick).unwrap();
            let mut terms = Vec::new();
            for (k, &(i, j)) in pick.iter().enumerate() {
                if let Some(first) = derivation_basis(&a, &fam, i, j).into_iter().last() {
                    terms.push((4 + k, first));
                }
            }
            let d = Deformation::first_order(&a, &fam, &ring, &terms);
            assert!(is_deformation(&a, &fam, &ring, &d).ok, "{pick:?}");
            let phi = versal_map(&h, &ring, &d).unwrap();
            assert!(equivalent(&a, &fam, &ring, &phi.pushforward, &d).unwrap());
        }
    }

    #[test]
    fn default_degree_is_nilpotency_index() {
        let (a, _) = poset_case(&fixtures::diamond());
        assert_eq!(default_degree(&a).unwrap(), 3);
        let m = fixtures::matrix_algebra(Field::Rational, 2);
        assert_eq!(default_degree(&m).unwrap(), 1);
    }
}
