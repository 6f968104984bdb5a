//! Ground fields: prime fields `F_p` and the rationals.
//!
//! Everything above the linear algebra layer is generic over [`Field`]. A
//! field value is a small context object (the modulus for `F_p`, nothing
//! for `Q`) and elements are plain values of [`Field::Elem`]; the context
//! carries the arithmetic.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::marker::PhantomData;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Which field a computation runs over, as recorded in files and reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldSpec {
    Prime(u64),
    Rational,
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, Error> {
        if is_prime(p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Prime(p) => *p,
            FieldSpec::Rational => 0,
        }
    }
}

impl Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "F_{p}"),
            FieldSpec::Rational => write!(f, "Q"),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Arithmetic context for an exact field.
pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Parse `"n"` or `"n/d"`.
    fn parse(&self, s: &str) -> Option<Self::Elem>;
    /// Integers print bare, proper fractions as `"num/den"`.
    fn format(&self, a: &Self::Elem) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `acc += c * x`, the inner loop of every elimination.
    #[inline]
    fn mul_add_assign(&self, acc: &mut Self::Elem, c: &Self::Elem, x: &Self::Elem) {
        *acc = self.add(acc, &self.mul(c, x));
    }
}

/// The prime field `F_p`, elements stored as reduced residues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, Error> {
        if p >= (1 << 31) {
            return Err(Error::Unsupported(format!("modulus {p} exceeds 2^31")));
        }
        FieldSpec::prime(p)?;
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
    #[inline]
    fn zero(&self) -> u32 {
        0
    }
    #[inline]
    fn one(&self) -> u32 {
        1
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + *b as u64) % self.p) as u32
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + self.p - *b as u64) % self.p) as u32
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p) as u32
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            (self.p - *a as u64) as u32
        }
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a as u64, self.p - 2) as u32)
        }
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn parse(&self, s: &str) -> Option<u32> {
        let q = parse_rational(s)?;
        let num = bigint_mod(q.numer(), self.p);
        let den = bigint_mod(q.denom(), self.p);
        let den_inv = self.inv(&(den as u32))?;
        Some(self.mul(&(num as u32), &den_inv))
    }
    fn format(&self, a: &u32) -> String {
        a.to_string()
    }
    #[inline]
    fn mul_add_assign(&self, acc: &mut u32, c: &u32, x: &u32) {
        *acc = ((*acc as u64 + *c as u64 * *x as u64) % self.p) as u32;
    }
}

fn bigint_mod(v: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let r = ((v % &m) + &m) % &m;
    r.to_string().parse().expect("residue fits in u64")
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str_radix(n.trim(), 10).ok()?;
            let d = BigInt::from_str_radix(d.trim(), 10).ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => Some(BigRational::from_integer(BigInt::from_str_radix(s, 10).ok()?)),
    }
}

/// A characteristic-zero field whose elements are any exact `num-traits`
/// number type (e.g. `BigRational`).
pub struct NumField<T>(PhantomData<fn() -> T>);

impl<T> NumField<T> {
    pub const fn new() -> Self {
        NumField(PhantomData)
    }
}

impl<T> Default for NumField<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T> Clone for NumField<T> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<T> Copy for NumField<T> {}

impl<T> PartialEq for NumField<T> {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl<T> Debug for NumField<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("NumField")
    }
}

/// Exact number types usable through [`NumField`].
pub trait ExactNum: Num + Signed + Clone + Eq + Hash + Debug + Display + Send + Sync + 'static {
    fn from_i64(v: i64) -> Self;
    fn parse_exact(s: &str) -> Option<Self>;
}

impl ExactNum for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn parse_exact(s: &str) -> Option<Self> {
        parse_rational(s)
    }
}

impl<T: ExactNum> Field for NumField<T> {
    type Elem = T;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rational
    }
    fn zero(&self) -> T {
        T::zero()
    }
    fn one(&self) -> T {
        T::one()
    }
    fn from_i64(&self, v: i64) -> T {
        T::from_i64(v)
    }
    fn add(&self, a: &T, b: &T) -> T {
        a.clone() + b.clone()
    }
    fn sub(&self, a: &T, b: &T) -> T {
        a.clone() - b.clone()
    }
    fn mul(&self, a: &T, b: &T) -> T {
        a.clone() * b.clone()
    }
    fn neg(&self, a: &T) -> T {
        -a.clone()
    }
    fn inv(&self, a: &T) -> Option<T> {
        if a.is_zero() {
            None
        } else {
            Some(T::one() / a.clone())
        }
    }
    fn is_zero(&self, a: &T) -> bool {
        a.is_zero()
    }
    fn parse(&self, s: &str) -> Option<T> {
        T::parse_exact(s)
    }
    fn format(&self, a: &T) -> String {
        a.to_string()
    }
}

pub type Rationals = NumField<BigRational>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_detection() {
        assert!(is_prime(2) && is_prime(101) && is_prime(7919));
        assert!(!is_prime(0) && !is_prime(1) && !is_prime(91));
        assert!(PrimeField::new(12).is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(101).unwrap();
        for a in 1..101u32 {
            let inv = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &inv), 1);
        }
        assert_eq!(f.from_i64(-1), 100);
        assert_eq!(f.parse("1/2"), Some(51));
        assert_eq!(f.parse("-3"), Some(98));
        assert_eq!(PrimeField::new(2).unwrap().parse("1/2"), None);
    }

    #[test]
    fn rational_format_round_trip() {
        let q = Rationals::new();
        let x = q.parse("-6/4").unwrap();
        assert_eq!(q.format(&x), "-3/2");
        assert_eq!(q.parse(&q.format(&x)), Some(x));
        assert_eq!(q.format(&q.from_i64(7)), "7");
    }
}
