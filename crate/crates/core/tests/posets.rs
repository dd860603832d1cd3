use burnside_kit::defth::tangent_dimensions;
use burnside_kit::exactla::Field;
use burnside_kit::homolog::{ext_dims, BarComplex};
use burnside_kit::posetalg::{ext_oracle, fixtures, incidence_algebra, simple_modules, Poset};
use proptest::prelude::*;

fn ext_tables(p: &Poset, field: Field) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let a = incidence_algebra(p, field);
    let fam = simple_modules(p, &a);
    ext_dims(&a, &fam)
}

/// `Ext^2(M_a, M_b)` for `a > b` not a cover is one less than the number of connected
/// components of the open interval `(b, a)`.
fn interval_components(p: &Poset, top: usize, bottom: usize) -> usize {
    let inner: Vec<usize> = (0..p.len()).filter(|&c| p.gt(top, c) && p.gt(c, bottom)).collect();
    let mut seen = vec![false; inner.len()];
    let mut count = 0;
    for s in 0..inner.len() {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for y in 0..inner.len() {
                if !seen[y] && (p.gt(inner[x], inner[y]) || p.gt(inner[y], inner[x])) {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    count
}

fn homology_oracle(p: &Poset) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let n = p.len();
    let mut e1 = vec![vec![0; n]; n];
    let mut e2 = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            if p.covers(a, b) {
                e1[a][b] = 1;
            } else if p.gt(a, b) {
                e2[a][b] = interval_components(p, a, b).saturating_sub(1);
            }
        }
    }
    (e1, e2)
}

fn random_poset(n: usize, bits: &[bool]) -> Poset {
    let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let mut rel = Vec::new();
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if bits[k] {
                rel.push((names[i].clone(), names[j].clone()));
            }
            k += 1;
        }
    }
    Poset::new(names, &rel).unwrap()
}

fn permute_table(t: &[Vec<usize>], perm: &[usize]) -> Vec<Vec<usize>> {
    let n = t.len();
    let mut out = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            out[perm[i]][perm[j]] = t[i][j];
        }
    }
    out
}

#[test]
fn catalog_is_large_enough() {
    let cat = fixtures::catalog();
    assert!(cat.len() >= 8);
    assert!(cat.iter().all(|(_, p)| p.len() <= 5));
}

#[test]
fn combinatorial_rules_match_bar_complex_on_catalog() {
    for (name, p) in fixtures::catalog() {
        let (e1, e2) = ext_tables(&p, Field::Rational);
        let oracle = ext_oracle(&p);
        assert_eq!(e1, oracle.ext1, "{name}: Ext^1");
        assert_eq!(e2, oracle.ext2, "{name}: Ext^2");
    }
}

#[test]
fn combinatorial_rules_hold_over_prime_fields() {
    for (name, p) in fixtures::catalog() {
        let (e1, e2) = ext_tables(&p, Field::Prime(3));
        let oracle = ext_oracle(&p);
        assert_eq!((e1, e2), (oracle.ext1, oracle.ext2), "{name}");
    }
}

#[test]
fn pentagon_has_a_loop_of_unequal_arms() {
    let p = fixtures::pentagon();
    let (_, e2) = ext_tables(&p, Field::Rational);
    let total: usize = e2.iter().flatten().sum();
    assert_eq!(total, 1);
    assert_eq!(e2[0][4], 1);
}

#[test]
fn differential_squares_to_zero_on_catalog() {
    for (name, p) in fixtures::catalog() {
        let a = incidence_algebra(&p, Field::Rational);
        let fam = simple_modules(&p, &a);
        let bc = BarComplex::new(&a, &fam);
        let f = bc.field();
        let r = fam.len();
        for degree in 0..=2 {
            for i in 0..r {
                for j in 0..r {
                    let len = bc.cochain_len(degree, i, j);
                    let values =
                        (0..len).map(|t| f.from_i64((t as i64 * 7 + 3 * i as i64 + j as i64) % 5 - 2)).collect();
                    let c = bc.cochain(degree, i, j, values).unwrap();
                    let dd = bc.differential(&bc.differential(&c));
                    assert!(dd.is_zero(), "{name}: d d != 0 in degree {degree} at ({i}, {j})");
                }
            }
        }
    }
}

#[test]
fn tangent_dimensions_match_ext1_on_catalog() {
    for (name, p) in fixtures::catalog() {
        let a = incidence_algebra(&p, Field::Rational);
        let fam = simple_modules(&p, &a);
        let (e1, _) = ext_dims(&a, &fam);
        assert_eq!(tangent_dimensions(&a, &fam).unwrap(), e1, "{name}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bar_complex_matches_interval_homology(n in 1usize..=5, bits in prop::collection::vec(any::<bool>(), 10)) {
        let p = random_poset(n, &bits);
        let (e1, e2) = ext_tables(&p, Field::Rational);
        let (o1, o2) = homology_oracle(&p);
        prop_assert_eq!(e1, o1);
        prop_assert_eq!(e2, o2);
    }

    #[test]
    fn ext_tables_are_relabelling_invariant(idx in 0usize..11, seed in any::<u64>()) {
        let (_, p) = fixtures::catalog().swap_remove(idx);
        let n = p.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let q = p.permuted(&perm);
        let (e1, e2) = ext_tables(&p, Field::Rational);
        let (f1, f2) = ext_tables(&q, Field::Rational);
        prop_assert_eq!(permute_table(&e1, &perm), f1);
        prop_assert_eq!(permute_table(&e2, &perm), f2);
        let oracle = ext_oracle(&q);
        prop_assert_eq!(oracle.ext1, permute_table(&e1, &perm));
        prop_assert_eq!(oracle.ext2, permute_table(&e2, &perm));
    }
}
