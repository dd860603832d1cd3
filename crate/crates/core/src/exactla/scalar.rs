//! Exact field elements: arbitrary-precision rationals or residues modulo a prime.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The base field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// Parses the `--field` descriptor: `Q` or `Fp:<p>`.
    pub fn parse(descriptor: &str) -> Result<Field> {
        let d = descriptor.trim();
        if d == "Q" {
            return Ok(Field::Rational);
        }
        if let Some(p) = d.strip_prefix("Fp:") {
            let p: u64 = p.parse().map_err(|_| Error::InvalidInput(format!("bad prime in field descriptor {d:?}")))?;
            if !is_prime(p) {
                return Err(Error::InvalidInput(format!("{p} is not prime")));
            }
            if p >= 1 << 32 {
                return Err(Error::InvalidInput(format!("prime {p} exceeds 2^32")));
            }
            return Ok(Field::Prime(p));
        }
        Err(Error::InvalidInput(format!("unknown field descriptor {d:?}")))
    }

    pub fn descriptor(&self) -> String {
        match self {
            Field::Rational => "Q".to_string(),
            Field::Prime(p) => format!("Fp:{p}"),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(BigRational::zero()),
            Field::Prime(p) => Scalar::Fp { value: 0, modulus: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Fp { value: n.rem_euclid(*p as i64) as u64, modulus: *p },
        }
    }

    /// Maps a rational into this field. Fails in characteristic p when p divides the denominator.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match self {
            Field::Rational => Ok(Scalar::Q(q.clone())),
            Field::Prime(p) => {
                let pb = BigInt::from(*p);
                let num = (q.numer() % &pb + &pb) % &pb;
                let den = (q.denom() % &pb + &pb) % &pb;
                let den = den.to_u64().unwrap_or(0);
                if den == 0 {
                    return Err(Error::InvalidInput(format!("denominator of {q} vanishes mod {p}")));
                }
                let num = num.to_u64().unwrap_or(0);
                let value = mul_mod(num, inv_mod(den, *p), *p);
                Ok(Scalar::Fp { value, modulus: *p })
            }
        }
    }

    /// Parses `"p/q"`, `"n"` or `"-n"` into this field.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let t = text.trim();
        let q = if let Some((n, d)) = t.split_once('/') {
            let n = BigInt::from_str(n.trim()).map_err(|_| Error::InvalidInput(format!("bad rational {t:?}")))?;
            let d = BigInt::from_str(d.trim()).map_err(|_| Error::InvalidInput(format!("bad rational {t:?}")))?;
            if d.is_zero() {
                return Err(Error::InvalidInput(format!("zero denominator in {t:?}")));
            }
            BigRational::new(n, d)
        } else {
            let n = BigInt::from_str(t).map_err(|_| Error::InvalidInput(format!("bad rational {t:?}")))?;
            BigRational::from_integer(n)
        };
        self.from_rational(&q)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// An exact scalar. Both operands of a binary operation must live in the same field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::Fp { modulus, .. } => Field::Prime(*modulus),
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::Fp { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Q(q) => Scalar::Q(q.recip()),
            Scalar::Fp { value, modulus } => Scalar::Fp { value: inv_mod(*value, *modulus), modulus: *modulus },
        })
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Q(q) => Some(q),
            Scalar::Fp { .. } => None,
        }
    }

    /// `self -= a * b`, the inner step of every elimination.
    #[inline]
    pub fn sub_mul(&mut self, a: &Scalar, b: &Scalar) {
        match (self, a, b) {
            (Scalar::Q(s), Scalar::Q(a), Scalar::Q(b)) => {
                *s -= a * b;
            }
            (Scalar::Fp { value, modulus }, Scalar::Fp { value: a, .. }, Scalar::Fp { value: b, .. }) => {
                let prod = mul_mod(*a, *b, *modulus);
                *value = (*value + *modulus - prod) % *modulus;
            }
            _ => panic!("mixed fields in scalar arithmetic"),
        }
    }

    /// `self += a * b`.
    #[inline]
    pub fn add_mul(&mut self, a: &Scalar, b: &Scalar) {
        match (self, a, b) {
            (Scalar::Q(s), Scalar::Q(a), Scalar::Q(b)) => {
                *s += a * b;
            }
            (Scalar::Fp { value, modulus }, Scalar::Fp { value: a, .. }, Scalar::Fp { value: b, .. }) => {
                *value = (*value + mul_mod(*a, *b, *modulus)) % *modulus;
            }
            _ => panic!("mixed fields in scalar arithmetic"),
        }
    }

    /// Canonical text form: `"p/q"` with `q > 0` in lowest terms, `"n"` for integers.
    pub fn to_text(&self) -> String {
        match self {
            Scalar::Q(q) => {
                if q.is_integer() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Fp { value, .. } => value.to_string(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_negative(),
            Scalar::Fp { .. } => false,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $qop:tt, $fp:expr) => {
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            #[inline]
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a $qop b),
                    (Scalar::Fp { value: a, modulus }, Scalar::Fp { value: b, modulus: m2 }) => {
                        debug_assert_eq!(modulus, m2);
                        let f: fn(u64, u64, u64) -> u64 = $fp;
                        Scalar::Fp { value: f(*a, *b, *modulus), modulus: *modulus }
                    }
                    _ => panic!("mixed fields in scalar arithmetic"),
                }
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            #[inline]
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            #[inline]
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, +, |a, b, p| (a + b) % p);
binop!(Sub, sub, -, |a, b, p| (a + p - b) % p);
binop!(Mul, mul, *, mul_mod);

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &'a Scalar) -> Scalar {
        let inv = rhs.inv().expect("division by zero scalar");
        self * &inv
    }
}

impl Div<Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        &self / &rhs
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(q) => Scalar::Q(-q),
            Scalar::Fp { value, modulus } => Scalar::Fp { value: (modulus - value) % modulus, modulus: *modulus },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    #[inline]
    fn add_assign(&mut self, rhs: &Scalar) {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => *a += b,
            (Scalar::Fp { value, modulus }, Scalar::Fp { value: b, .. }) => *value = (*value + b) % *modulus,
            _ => panic!("mixed fields in scalar arithmetic"),
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    #[inline]
    fn sub_assign(&mut self, rhs: &Scalar) {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => *a -= b,
            (Scalar::Fp { value, modulus }, Scalar::Fp { value: b, .. }) => *value = (*value + *modulus - b) % *modulus,
            _ => panic!("mixed fields in scalar arithmetic"),
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    #[inline]
    fn mul_assign(&mut self, rhs: &Scalar) {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => *a *= b,
            (Scalar::Fp { value, modulus }, Scalar::Fp { value: b, .. }) => *value = mul_mod(*value, *b, *modulus),
            _ => panic!("mixed fields in scalar arithmetic"),
        }
    }
}
