#![allow(dead_code)]

use burnside_kit::algebra::FinDimAlgebra;
use burnside_kit::defth::{
    compute_hull, derivation_basis, equivalent, is_deformation, versal_map, Deformation, TestRing,
};
use burnside_kit::exactla::{Field, Matrix};
use burnside_kit::posetalg::{fixtures, incidence_algebra, simple_modules};
use burnside_kit::repmod::ModuleFamily;

pub fn diamond() -> (FinDimAlgebra, ModuleFamily) {
    let p = fixtures::diamond();
    let a = incidence_algebra(&p, Field::Rational);
    let fam = simple_modules(&p, &a);
    (a, fam)
}

fn sum(ms: &[Vec<Matrix>]) -> Option<Vec<Matrix>> {
    let mut it = ms.iter();
    let first = it.next()?.clone();
    Some(it.fold(first, |acc, d| acc.iter().zip(d).map(|(x, y)| x.add(y)).collect()))
}

/// Every multiset of at most two Peirce positions for the radical of a four-pointed ring.
pub fn square_zero_pickings() -> Vec<Vec<(usize, usize)>> {
    let positions: Vec<(usize, usize)> = (0..4).flat_map(|i| (0..4).map(move |j| (i, j))).collect();
    let mut out: Vec<Vec<(usize, usize)>> = positions.iter().map(|&p| vec![p]).collect();
    for x in 0..positions.len() {
        for y in x..positions.len() {
            out.push(vec![positions[x], positions[y]]);
        }
    }
    out
}

/// Checks versality of the diamond hull over every ring with `dim I <= 2` and `I^2 = 0`.
/// Returns the number of rings and of deformations checked.
pub fn versality_sweep() -> Result<(usize, usize), String> {
    let (a, fam) = diamond();
    let h = compute_hull(&a, &fam, 3).unwrap();
    let f = Field::Rational;
    let pickings = square_zero_pickings();
    let rings = pickings.len();
    let mut checked = 0;
    for pick in pickings {
        let ring = TestRing::square_zero(f, 4, &pick).unwrap();
        // per radical element: zero, each basis derivation, and their sum
        let choices: Vec<Vec<Option<Vec<Matrix>>>> = pick
            .iter()
            .map(|&(i, j)| {
                let basis = derivation_basis(&a, &fam, i, j);
                let mut c = vec![None];
                c.extend(basis.iter().cloned().map(Some));
                if basis.len() > 1 {
                    c.push(sum(&basis));
                }
                c
            })
            .collect();
        let mut index = vec![0; pick.len()];
        loop {
            let terms: Vec<(usize, Vec<Matrix>)> =
                index.iter().enumerate().filter_map(|(k, &c)| choices[k][c].clone().map(|d| (4 + k, d))).collect();
            let d = Deformation::first_order(&a, &fam, &ring, &terms);
            if !is_deformation(&a, &fam, &ring, &d).ok {
                return Err(format!("{pick:?} {index:?}: not a deformation"));
            }
            let phi = versal_map(&h, &ring, &d).map_err(|e| format!("{pick:?} {index:?}: {e}"))?;
            let same = is_deformation(&a, &fam, &ring, &phi.pushforward).ok
                && equivalent(&a, &fam, &ring, &phi.pushforward, &d).map_err(|e| e.to_string())?;
            if !same {
                return Err(format!("{pick:?} {index:?}: pushforward is not equivalent"));
            }
            checked += 1;
            let mut k = 0;
            while k < index.len() {
                index[k] += 1;
                if index[k] < choices[k].len() {
                    break;
                }
                index[k] = 0;
                k += 1;
            }
            if k == index.len() {
                break;
            }
        }
    }
    Ok((rings, checked))
}
