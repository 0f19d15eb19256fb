//! Exact scalars over the rationals or a prime field.
//!
//! Rationals keep a machine-word fast path and fall back to arbitrary
//! precision only when a numerator or denominator leaves `i64`. The
//! representation is canonical (lowest terms, positive denominator, big
//! values demoted whenever they fit), so derived equality and hashing are
//! exact.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The ground field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    /// GF(p); construct through [`FieldSpec::prime`] so `p` is known prime.
    Prime(u64),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) && p < (1 << 32) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar(Repr::Small { num: v, den: 1 }),
            FieldSpec::Prime(p) => Scalar(Repr::Residue {
                value: v.rem_euclid(p as i64) as u64,
                modulus: p,
            }),
        }
    }

    /// Reads the serialized form: `"a"` or `"a/b"` for rationals, a decimal
    /// residue (any integer, reduced) for prime fields.
    pub fn parse(self, text: &str) -> Result<Scalar> {
        let err = || Error::ScalarParse {
            text: text.to_string(),
            field: self,
        };
        let t = text.trim();
        match self {
            FieldSpec::Rationals => {
                let (n, d) = match t.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (t, "1"),
                };
                let n: BigInt = n.parse().map_err(|_| err())?;
                let d: BigInt = d.parse().map_err(|_| err())?;
                if d.is_zero() {
                    return Err(err());
                }
                Ok(Scalar::from_big(BigRational::new(n, d)))
            }
            FieldSpec::Prime(p) => {
                let v: BigInt = t.parse().map_err(|_| err())?;
                let r = v.mod_floor(&BigInt::from(p));
                Ok(Scalar(Repr::Residue {
                    value: r.to_u64().unwrap(),
                    modulus: p,
                }))
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        let p = s
            .strip_prefix("Fp:")
            .and_then(|p| p.parse::<u64>().ok())
            .ok_or_else(|| Error::ScalarParse {
                text: s.to_string(),
                field: FieldSpec::Rationals,
            })?;
        FieldSpec::prime(p)
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

/// An exact field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    /// den > 0, gcd(num, den) = 1
    Small { num: i64, den: i64 },
    /// Only for values that do not fit `Small`.
    Big(Box<BigRational>),
    Residue { value: u64, modulus: u64 },
}

/// The four field operations, for [`scalar_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked binary arithmetic: mixed fields and division by zero are errors.
pub fn scalar_arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar> {
    let (fa, fb) = (a.field(), b.field());
    if fa != fb {
        return Err(Error::MixedFields(fa, fb));
    }
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a * &b.inverse()?,
    })
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match &self.0 {
            Repr::Residue { modulus, .. } => FieldSpec::Prime(*modulus),
            _ => FieldSpec::Rationals,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(
            self.0,
            Repr::Small { num: 0, .. } | Repr::Residue { value: 0, .. }
        )
    }

    pub fn is_one(&self) -> bool {
        matches!(
            self.0,
            Repr::Small { num: 1, den: 1 } | Repr::Residue { value: 1, .. }
        )
    }

    pub fn inverse(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.0 {
            Repr::Small { num, den } => {
                if *num == i64::MIN {
                    Scalar::from_big(BigRational::new(BigInt::from(*den), BigInt::from(*num)))
                } else if *num < 0 {
                    Scalar(Repr::Small { num: -den, den: -num })
                } else {
                    Scalar(Repr::Small { num: *den, den: *num })
                }
            }
            Repr::Big(b) => Scalar::from_big(b.recip()),
            Repr::Residue { value, modulus } => Scalar(Repr::Residue {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            }),
        })
    }

    /// Numerator and denominator as big integers (residues map to `(r, 1)`).
    pub fn to_fraction(&self) -> (BigInt, BigInt) {
        match &self.0 {
            Repr::Small { num, den } => (BigInt::from(*num), BigInt::from(*den)),
            Repr::Big(b) => (b.numer().clone(), b.denom().clone()),
            Repr::Residue { value, .. } => (BigInt::from(*value), BigInt::one()),
        }
    }

    /// A rational integer.
    pub fn from_big_integer(n: BigInt) -> Scalar {
        Scalar::from_big(BigRational::from_integer(n))
    }

    fn from_big(b: BigRational) -> Scalar {
        // BigRational::new already reduces and normalises the sign.
        match (b.numer().to_i64(), b.denom().to_i64()) {
            (Some(num), Some(den)) => Scalar(Repr::Small { num, den }),
            _ => Scalar(Repr::Big(Box::new(b))),
        }
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small { num, den } => BigRational::new_raw(BigInt::from(*num), BigInt::from(*den)),
            Repr::Big(b) => (**b).clone(),
            Repr::Residue { .. } => unreachable!("residue promoted to rational"),
        }
    }

    fn from_i128(num: i128, den: i128) -> Scalar {
        let g = num.gcd(&den);
        let (mut num, mut den) = if g > 1 { (num / g, den / g) } else { (num, den) };
        if den < 0 {
            num = -num;
            den = -den;
        }
        match (i64::try_from(num), i64::try_from(den)) {
            (Ok(num), Ok(den)) => Scalar(Repr::Small { num, den }),
            _ => Scalar::from_big(BigRational::new(BigInt::from(num), BigInt::from(den))),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Rationals by value, residues by representative, fields by [`FieldSpec`].
/// Only used to order witnesses deterministically.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Residue { value: a, modulus: p }, Repr::Residue { value: b, modulus: q }) => (p, a).cmp(&(q, b)),
            (Repr::Residue { .. }, _) | (_, Repr::Residue { .. }) => self.field().cmp(&other.field()),
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128)),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % m as u128) as u64;
        }
        base = ((base as u128 * base as u128) % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

#[track_caller]
fn mixed(a: &Scalar, b: &Scalar) -> ! {
    panic!("mixed-field arithmetic: {} and {}", a.field(), b.field())
}

impl Add for &Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Small { num: a, den: 1 }, Repr::Small { num: b, den: 1 }) => match a.checked_add(*b) {
                Some(s) => Scalar(Repr::Small { num: s, den: 1 }),
                None => Scalar::from_i128(*a as i128 + *b as i128, 1),
            },
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                match (a * d).checked_add(c * b) {
                    Some(n) => Scalar::from_i128(n, b * d),
                    None => Scalar::from_big(self.to_big() + rhs.to_big()),
                }
            }
            (Repr::Residue { value: a, modulus: p }, Repr::Residue { value: b, modulus: q }) if p == q => {
                let s = (*a as u128 + *b as u128) % *p as u128;
                Scalar(Repr::Residue { value: s as u64, modulus: *p })
            }
            (Repr::Residue { .. }, _) | (_, Repr::Residue { .. }) => mixed(self, rhs),
            _ => Scalar::from_big(self.to_big() + rhs.to_big()),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Small { num: a, den: 1 }, Repr::Small { num: b, den: 1 }) => match a.checked_mul(*b) {
                Some(s) => Scalar(Repr::Small { num: s, den: 1 }),
                None => Scalar::from_i128(*a as i128 * *b as i128, 1),
            },
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                Scalar::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            (Repr::Residue { value: a, modulus: p }, Repr::Residue { value: b, modulus: q }) if p == q => {
                let s = (*a as u128 * *b as u128) % *p as u128;
                Scalar(Repr::Residue { value: s as u64, modulus: *p })
            }
            (Repr::Residue { .. }, _) | (_, Repr::Residue { .. }) => mixed(self, rhs),
            _ => Scalar::from_big(self.to_big() * rhs.to_big()),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Small { num, den } => match num.checked_neg() {
                Some(n) => Scalar(Repr::Small { num: n, den: *den }),
                None => Scalar::from_i128(-(*num as i128), *den as i128),
            },
            Repr::Big(b) => Scalar::from_big(-(**b).clone()),
            Repr::Residue { value, modulus } => Scalar(Repr::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            }),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small { num, den: 1 } => write!(f, "{num}"),
            Repr::Small { num, den } => write!(f, "{num}/{den}"),
            Repr::Big(b) if b.denom().is_one() => write!(f, "{}", b.numer()),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
            Repr::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Scalar {
    /// Sign of a rational; residues report `0` or `1`.
    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small { num, .. } => num.signum() as i32,
            Repr::Big(b) => {
                if b.is_positive() {
                    1
                } else {
                    -1
                }
            }
            Repr::Residue { value, .. } => (*value != 0) as i32,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Scalar {
        FieldSpec::Rationals.parse(s).unwrap()
    }

    #[test]
    fn rational_examples() {
        assert_eq!(scalar_arith(&q("1/2"), &q("1/3"), ArithOp::Add).unwrap(), q("5/6"));
        assert_eq!(scalar_arith(&q("5/6"), &q("5/6"), ArithOp::Div).unwrap(), q("1"));
        assert_eq!(q("4/-6").to_string(), "-2/3");
        assert_eq!(q("7/1").to_string(), "7");
    }

    #[test]
    fn prime_field_examples() {
        let f3 = FieldSpec::prime(3).unwrap();
        let two = f3.from_i64(2);
        assert_eq!(scalar_arith(&two, &two, ArithOp::Mul).unwrap(), f3.one());
        assert_eq!(f3.from_i64(-1).to_string(), "2");
        assert_eq!(two.inverse().unwrap(), two);
    }

    #[test]
    fn errors() {
        assert_eq!(
            scalar_arith(&q("1"), &q("0"), ArithOp::Div),
            Err(Error::DivisionByZero)
        );
        let f5 = FieldSpec::prime(5).unwrap();
        assert!(matches!(
            scalar_arith(&q("1"), &f5.one(), ArithOp::Add),
            Err(Error::MixedFields(..))
        ));
        assert_eq!(FieldSpec::prime(6), Err(Error::NotPrime(6)));
        assert!(FieldSpec::Rationals.parse("1/0").is_err());
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = FieldSpec::Rationals.from_i64(i64::MAX);
        let sum = &big + &big;
        assert_eq!(sum.to_string(), "18446744073709551614");
        let back = &sum - &big;
        assert_eq!(back, big);
        let min = FieldSpec::Rationals.from_i64(i64::MIN);
        assert_eq!((-&min).to_string(), "9223372036854775808");
        assert_eq!(min.inverse().unwrap().to_string(), "-1/9223372036854775808");
    }

    #[test]
    fn field_spec_round_trip() {
        for s in ["Q", "Fp:7", "Fp:2"] {
            assert_eq!(s.parse::<FieldSpec>().unwrap().to_string(), s);
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn rational() -> impl Strategy<Value = Scalar> {
            (any::<i64>(), 1i64..=i64::MAX).prop_map(|(n, d)| {
                FieldSpec::Rationals.parse(&format!("{n}/{d}")).unwrap()
            })
        }

        fn residue() -> impl Strategy<Value = Scalar> {
            (0i64..101).prop_map(|v| FieldSpec::Prime(101).from_i64(v))
        }

        fn field_axioms(a: Scalar, b: Scalar, c: Scalar) {
            assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            assert_eq!(&a + &b, &b + &a);
            let a2 = a.clone();
            assert!((&a - &a2).is_zero());
            if !a.is_zero() {
                assert!((&a * &a.inverse().unwrap()).is_one());
            }
        }

        proptest! {
            #[test]
            fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
                field_axioms(a, b, c);
            }

            #[test]
            fn prime_field_axioms(a in residue(), b in residue(), c in residue()) {
                field_axioms(a, b, c);
            }

            #[test]
            fn display_parse_round_trip(a in rational()) {
                prop_assert_eq!(FieldSpec::Rationals.parse(&a.to_string()).unwrap(), a);
            }
        }
    }
}
