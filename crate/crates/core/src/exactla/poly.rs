//! Univariate polynomials: minimal polynomials of operators and their roots in the base field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::Matrix;
use super::scalar::{Field, Scalar};
use super::subspace::RowReducer;

/// Monic minimal polynomial of a square matrix, coefficients from constant term upward.
pub fn minimal_polynomial(op: &Matrix) -> Vec<Scalar> {
    assert_eq!(op.rows(), op.cols());
    let f = op.field();
    let n = op.rows();
    let width = n * n;
    let mut reducer = RowReducer::with_preimages(f, width, n + 1);
    let mut power = Matrix::identity(f, n);
    for k in 0..=n {
        let flat = power.entries().to_vec();
        if !reducer.contains(&flat) {
            let mut tag = vec![f.zero(); n + 1];
            tag[k] = f.one();
            reducer.insert_with_preimage(flat, tag);
            power = power.mul(op);
            continue;
        }
        let combo = reducer.express(&flat).expect("dependent power lies in span");
        let mut coeffs: Vec<Scalar> = combo[..k].iter().map(|c| -c).collect();
        coeffs.push(f.one());
        return coeffs;
    }
    unreachable!("Cayley-Hamilton bounds the degree")
}

pub fn evaluate(coeffs: &[Scalar], x: &Scalar) -> Scalar {
    let mut acc = x.field().zero();
    for c in coeffs.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

/// Distinct roots lying in the base field, in a deterministic order.
///
/// Returns `None` when the root search cannot be completed (integer coefficients too large to
/// factor by trial division).
pub fn roots_in_field(coeffs: &[Scalar]) -> Option<Vec<Scalar>> {
    let coeffs = trim(coeffs);
    if coeffs.len() <= 1 {
        return Some(Vec::new());
    }
    match coeffs[0].field() {
        Field::Rational => rational_roots(&coeffs),
        Field::Prime(p) => Some(prime_roots(&coeffs, p)),
    }
}

fn trim(coeffs: &[Scalar]) -> Vec<Scalar> {
    let mut v = coeffs.to_vec();
    while v.last().is_some_and(Scalar::is_zero) {
        v.pop();
    }
    v
}

fn rational_roots(coeffs: &[Scalar]) -> Option<Vec<Scalar>> {
    let f = Field::Rational;
    let qs: Vec<BigRational> = coeffs.iter().map(|c| c.as_rational().expect("rational").clone()).collect();
    let lcm = qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut ints: Vec<BigInt> = qs.iter().map(|q| (q * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let mut roots = Vec::new();
    if ints[0].is_zero() {
        roots.push(f.zero());
        while ints.first().is_some_and(Zero::is_zero) {
            ints.remove(0);
        }
    }
    if ints.len() > 1 {
        let a0 = ints[0].abs().to_u128()?;
        let an = ints.last().unwrap().abs().to_u128()?;
        let num_divs = divisors(a0)?;
        let den_divs = divisors(an)?;
        let mut seen = Vec::new();
        for &p in &num_divs {
            for &q in &den_divs {
                for sign in [1i32, -1] {
                    let mut r = BigRational::new(BigInt::from(p), BigInt::from(q));
                    if sign < 0 {
                        r = -r;
                    }
                    if seen.contains(&r) {
                        continue;
                    }
                    seen.push(r.clone());
                    let x = Scalar::Q(r);
                    if evaluate(coeffs, &x).is_zero() {
                        roots.push(x);
                    }
                }
            }
        }
    }
    roots.sort_by(|a, b| a.as_rational().cmp(&b.as_rational()));
    roots.dedup();
    Some(roots)
}

fn divisors(n: u128) -> Option<Vec<u128>> {
    if n > 1u128 << 60 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u128;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
        if d > 1 << 24 {
            return None;
        }
    }
    out.sort_unstable();
    Some(out)
}

// Dense polynomials over F_p as coefficient vectors, constant term first.
type Pp = Vec<u64>;

fn pp_trim(mut a: Pp) -> Pp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn pp_inv(a: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

fn pp_rem(a: &Pp, m: &Pp, p: u64) -> Pp {
    let mut r = a.clone();
    let dm = m.len() - 1;
    let lead_inv = pp_inv(m[dm], p);
    while r.len() > dm && !r.is_empty() {
        let top = r.len() - 1;
        let c = (*r.last().unwrap() as u128 * lead_inv as u128 % p as u128) as u64;
        if c != 0 {
            for i in 0..=dm {
                let idx = top - dm + i;
                let sub = (c as u128 * m[i] as u128 % p as u128) as u64;
                r[idx] = (r[idx] + p - sub) % p;
            }
        }
        r.pop();
        r = pp_trim(r);
    }
    pp_trim(r)
}

fn pp_mul(a: &Pp, b: &Pp, p: u64) -> Pp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = ((out[i + j] as u128 + x as u128 * y as u128) % p as u128) as u64;
        }
    }
    pp_trim(out)
}

fn pp_powmod(base: &Pp, mut e: u64, m: &Pp, p: u64) -> Pp {
    let mut acc: Pp = vec![1];
    let mut b = pp_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = pp_rem(&pp_mul(&acc, &b, p), m, p);
        }
        b = pp_rem(&pp_mul(&b, &b, p), m, p);
        e >>= 1;
    }
    acc
}

fn pp_gcd(a: &Pp, b: &Pp, p: u64) -> Pp {
    let (mut a, mut b) = (pp_trim(a.clone()), pp_trim(b.clone()));
    while !b.is_empty() {
        let r = pp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    if let Some(&lead) = a.last() {
        let inv = pp_inv(lead, p);
        for x in a.iter_mut() {
            *x = (*x as u128 * inv as u128 % p as u128) as u64;
        }
    }
    a
}

fn pp_sub(a: &Pp, b: &Pp, p: u64) -> Pp {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    pp_trim(out)
}

/// Roots of a squarefree product of linear factors, split by Cantor-Zassenhaus with shifts 0, 1, 2, ...
fn split_linear(g: &Pp, p: u64, out: &mut Vec<u64>) {
    let deg = g.len() - 1;
    if deg == 0 {
        return;
    }
    if deg == 1 {
        let root = (p - g[0] * pp_inv(g[1], p) % p) % p;
        out.push(root);
        return;
    }
    for shift in 0..p {
        let x_plus = vec![shift % p, 1];
        let h = pp_sub(&pp_powmod(&x_plus, (p - 1) / 2, g, p), &vec![1], p);
        let d = pp_gcd(&h, g, p);
        let dd = d.len().saturating_sub(1);
        if dd > 0 && dd < deg {
            let other = pp_div_exact(g, &d, p);
            split_linear(&d, p, out);
            split_linear(&other, p, out);
            return;
        }
    }
}

fn pp_div_exact(a: &Pp, b: &Pp, p: u64) -> Pp {
    let mut r = a.clone();
    let db = b.len() - 1;
    let mut q = vec![0u64; a.len() - db];
    let inv = pp_inv(b[db], p);
    for k in (0..q.len()).rev() {
        let c = (r[k + db] as u128 * inv as u128 % p as u128) as u64;
        q[k] = c;
        for i in 0..=db {
            let sub = (c as u128 * b[i] as u128 % p as u128) as u64;
            r[k + i] = (r[k + i] + p - sub) % p;
        }
    }
    pp_trim(q)
}

fn prime_roots(coeffs: &[Scalar], p: u64) -> Vec<Scalar> {
    let f: Pp = pp_trim(
        coeffs
            .iter()
            .map(|c| match c {
                Scalar::Fp { value, .. } => *value,
                Scalar::Q(_) => panic!("rational coefficient in prime field polynomial"),
            })
            .collect(),
    );
    let mut roots = Vec::new();
    if p == 2 {
        for x in 0..2u64 {
            let s = Scalar::Fp { value: x, modulus: 2 };
            if evaluate(coeffs, &s).is_zero() {
                roots.push(x);
            }
        }
    } else {
        // gcd(f, x^p - x) collects the distinct linear factors.
        let xp = pp_powmod(&vec![0, 1], p, &f, p);
        let g = pp_gcd(&f, &pp_sub(&xp, &vec![0, 1], p), p);
        if g.len() > 1 {
            let mut g = g;
            if g[0] == 0 {
                roots.push(0);
                g.remove(0);
            }
            split_linear(&g, p, &mut roots);
        }
    }
    roots.sort_unstable();
    roots.dedup();
    roots.into_iter().map(|value| Scalar::Fp { value, modulus: p }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_polynomial_of_projection() {
        let q = Field::Rational;
        let m = Matrix::from_i64(q, &[&[1, 0, 0], &[0, 0, 0], &[0, 0, 1]]);
        let mp = minimal_polynomial(&m);
        // x^2 - x
        assert_eq!(mp, vec![q.from_i64(0), q.from_i64(-1), q.from_i64(1)]);
    }

    #[test]
    fn rational_roots_found() {
        let q = Field::Rational;
        // (2x - 1)(x + 3) = 2x^2 + 5x - 3
        let roots = roots_in_field(&[q.from_i64(-3), q.from_i64(5), q.from_i64(2)]).unwrap();
        assert_eq!(roots, vec![q.from_i64(-3), q.parse_scalar("1/2").unwrap()]);
        // x^2 + 1 has no rational roots
        assert!(roots_in_field(&[q.from_i64(1), q.from_i64(0), q.from_i64(1)]).unwrap().is_empty());
    }

    #[test]
    fn prime_roots_found() {
        let f = Field::Prime(13);
        // x^2 + 1 = (x - 5)(x - 8) mod 13
        let roots = roots_in_field(&[f.from_i64(1), f.from_i64(0), f.from_i64(1)]).unwrap();
        assert_eq!(roots, vec![f.from_i64(5), f.from_i64(8)]);
        let g = Field::Prime(7);
        // x^2 + 1 is irreducible mod 7
        assert!(roots_in_field(&[g.from_i64(1), g.from_i64(0), g.from_i64(1)]).unwrap().is_empty());
        // x^3 - x = x(x-1)(x+1)
        let r = roots_in_field(&[g.from_i64(0), g.from_i64(-1), g.from_i64(0), g.from_i64(1)]).unwrap();
        assert_eq!(r.len(), 3);
    }
}
