//! Ext groups of a module family through normalized bar cochains, with cup products.

mod bar;
mod ext;

pub use bar::{BarComplex, Cochain};
pub use ext::{cocycles, ext, ExtBasis, ExtData};

use crate::algebra::FinDimAlgebra;
use crate::repmod::ModuleFamily;

/// `Ext^1` and `Ext^2` dimension tables of a family.
pub fn ext_dims(a: &FinDimAlgebra, family: &ModuleFamily) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let data = ExtData::compute(&BarComplex::new(a, family));
    (data.ext1_dims(), data.ext2_dims())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{Field, Scalar};
    use crate::posetalg::{fixtures, incidence_algebra, simple_modules};
    use crate::repmod::{hom_a, simples_of};

    fn diamond() -> (FinDimAlgebra, ModuleFamily) {
        let p = fixtures::diamond();
        let a = incidence_algebra(&p, Field::Rational);
        let fam = simple_modules(&p, &a);
        (a, fam)
    }

    fn pseudo_random(bc: &BarComplex, degree: usize, i: usize, j: usize, seed: u64) -> Cochain {
        let f = bc.field();
        let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let values = (0..bc.cochain_len(degree, i, j))
            .map(|_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                f.from_i64(((state >> 33) % 7) as i64 - 3)
            })
            .collect();
        bc.cochain(degree, i, j, values).unwrap()
    }

    #[test]
    fn differential_squares_to_zero() {
        let (a, fam) = diamond();
        let bc = BarComplex::new(&a, &fam);
        for n in 0..2 {
            for (i, j) in [(0, 1), (0, 3), (1, 1)] {
                let f = pseudo_random(&bc, n, i, j, (n * 10 + i * 3 + j) as u64);
                assert!(bc.differential(&bc.differential(&f)).is_zero());
            }
        }
        assert!(bc.differential(&bc.zero_cochain(1, 0, 1)).is_zero());
    }

    #[test]
    fn degree_zero_cocycles_are_homomorphisms() {
        for (a, fam) in [diamond(), {
            let m2 = fixtures::matrix_algebra(Field::Rational, 2);
            let s = simples_of(&m2).unwrap().family;
            (m2, s)
        }] {
            let bc = BarComplex::new(&a, &fam);
            for i in 0..fam.len() {
                for j in 0..fam.len() {
                    let z = cocycles(&bc, 0, i, j);
                    assert_eq!(z.dim(), hom_a(fam.member(i), fam.member(j)).len());
                }
            }
        }
    }

    #[test]
    fn diamond_ext_examples() {
        let (a, fam) = diamond();
        let (e1, e2) = ext_dims(&a, &fam);
        assert_eq!(e1, vec![vec![0, 1, 1, 0], vec![0, 0, 0, 1], vec![0, 0, 0, 1], vec![0, 0, 0, 0]]);
        assert_eq!(e2, vec![vec![0, 0, 0, 1], vec![0; 4], vec![0; 4], vec![0; 4]]);
    }

    #[test]
    fn diamond_cup_products_are_nonzero() {
        let (a, fam) = diamond();
        let bc = BarComplex::new(&a, &fam);
        let data = ExtData::compute(&bc);
        for mid in [1, 2] {
            let f = &data.ext1(0, mid).representatives[0];
            let g = &data.ext1(mid, 3).representatives[0];
            let c = bc.cup(f, g).unwrap();
            assert!(bc.differential(&c).is_zero());
            let class = data.ext2(0, 3).class_of(&c.values).unwrap();
            assert!(!class[0].is_zero());
        }
    }

    #[test]
    fn cup_descends_to_classes() {
        let (a, fam) = diamond();
        let bc = BarComplex::new(&a, &fam);
        let data = ExtData::compute(&bc);
        let f = &data.ext1(0, 1).representatives[0];
        let g = &data.ext1(1, 3).representatives[0];
        let base = data.ext2(0, 3).class_of(&bc.cup(f, g).unwrap().values).unwrap();
        let hf = bc.differential(&pseudo_random(&bc, 0, 0, 1, 5));
        let hg = bc.differential(&pseudo_random(&bc, 0, 1, 3, 9));
        let shifted_f = Cochain { values: f.values.iter().zip(&hf.values).map(|(x, y)| x + y).collect(), ..f.clone() };
        let shifted_g = Cochain { values: g.values.iter().zip(&hg.values).map(|(x, y)| x + y).collect(), ..g.clone() };
        let c = bc.cup(&shifted_f, &shifted_g).unwrap();
        assert_eq!(data.ext2(0, 3).class_of(&c.values).unwrap(), base);
        let cb = bc.cup(&hf, g).unwrap();
        assert!(data.ext2(0, 3).class_of(&cb.values).unwrap().iter().all(Scalar::is_zero));
    }

    #[test]
    fn cup_rejects_mismatched_indices() {
        let (a, fam) = diamond();
        let bc = BarComplex::new(&a, &fam);
        assert!(bc.cup(&bc.zero_cochain(1, 0, 1), &bc.zero_cochain(1, 2, 3)).is_err());
    }

    #[test]
    fn cup_is_associative() {
        let (a, fam) = diamond();
        let bc = BarComplex::new(&a, &fam);
        let f = pseudo_random(&bc, 1, 0, 1, 1);
        let g = pseudo_random(&bc, 1, 1, 3, 2);
        let h = pseudo_random(&bc, 0, 3, 3, 3);
        let left = bc.cup(&bc.cup(&f, &g).unwrap(), &h).unwrap();
        let right = bc.cup(&f, &bc.cup(&g, &h).unwrap()).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn decomposition_reconstructs_cocycles() {
        let (a, fam) = diamond();
        let bc = BarComplex::new(&a, &fam);
        let basis = ext(&bc, 1, 0, 1);
        let mut z = basis.representatives[0].values.clone();
        let two = Field::Rational.from_i64(2);
        for x in z.iter_mut() {
            *x = &*x * &two;
        }
        let gamma = pseudo_random(&bc, 0, 0, 1, 4);
        let dg = bc.differential(&gamma);
        let total: Vec<Scalar> = z.iter().zip(&dg.values).map(|(x, y)| x + y).collect();
        let (coeffs, pre) = basis.decompose(&total).unwrap();
        assert_eq!(coeffs, vec![two]);
        let rebuilt = bc.differential(&bc.cochain(0, 0, 1, pre).unwrap());
        assert_eq!(rebuilt.values, dg.values);
        // not a cocycle
        let bad = pseudo_random(&bc, 1, 0, 1, 77);
        if !bc.differential(&bad).is_zero() {
            assert!(basis.decompose(&bad.values).is_none());
        }
    }
}
