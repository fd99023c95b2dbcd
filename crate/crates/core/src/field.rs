//! Exact coefficient fields.
//!
//! Every computation in the crate is parameterised by a [`Field`] value rather
//! than a global setting, so a single process can mix rational and modular
//! work (the census runs modulo a prime and re-checks its hits over `Q`).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A field with exact arithmetic.
///
/// Elements are plain values; the field object carries whatever context the
/// arithmetic needs (the modulus for prime fields).
pub trait Field: Clone + Send + Sync + fmt::Debug + 'static {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    /// 0 for the rationals, `p` for a prime field.
    fn characteristic(&self) -> u64;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero; callers only invert pivots.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// Image of a rational number. Fails when the denominator vanishes mod p.
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem>;
    fn format(&self, a: &Self::Elem) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `acc += a * b`
    fn add_mul_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        *acc = self.add(acc, &self.mul(a, b));
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }

    /// Short human-readable name: `QQ` or `F_p`.
    fn name(&self) -> String {
        match self.characteristic() {
            0 => "QQ".to_string(),
            p => format!("F_{p}"),
        }
    }
}

/// The field of rational numbers with arbitrary-precision entries.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn characteristic(&self) -> u64 {
        0
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_rational(&self, q: &BigRational) -> Result<BigRational> {
        Ok(q.clone())
    }
    fn format(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn add_mul_assign(&self, acc: &mut BigRational, a: &BigRational, b: &BigRational) {
        *acc += a * b;
    }
}

/// The prime field `F_p` for an odd or even prime `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p < 2 || p >= (1 << 31) || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a prime below 2^31")));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    #[inline]
    fn reduce(&self, v: u64) -> u32 {
        (v % self.p as u64) as u32
    }

    /// Symmetric lift of a residue to `(-p/2, p/2]`.
    pub fn lift(&self, a: u32) -> i64 {
        let a = a as i64;
        let p = self.p as i64;
        if a > p / 2 {
            a - p
        } else {
            a
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u32;

    fn characteristic(&self) -> u64 {
        self.p as u64
    }
    #[inline]
    fn zero(&self) -> u32 {
        0
    }
    #[inline]
    fn one(&self) -> u32 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a + *b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if *a >= *b {
            *a - *b
        } else {
            *a + self.p - *b
        }
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.reduce(*a as u64 * *b as u64)
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - *a
        }
    }
    fn inv(&self, a: &u32) -> u32 {
        assert!(*a != 0, "inverse of zero");
        // Fermat: a^(p-2)
        let mut base = *a as u64;
        let mut exp = self.p - 2;
        let mut acc = 1u64;
        let p = self.p as u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        acc as u32
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
    fn from_rational(&self, q: &BigRational) -> Result<u32> {
        let p = BigInt::from(self.p);
        let num = q.numer().mod_floor(&p).to_u32().unwrap_or(0);
        let den = q.denom().mod_floor(&p).to_u32().unwrap_or(0);
        if den == 0 {
            return Err(Error::InvalidField(format!(
                "denominator of {q} vanishes in F_{}",
                self.p
            )));
        }
        Ok(self.mul(&num, &self.inv(&den)))
    }
    fn format(&self, a: &u32) -> String {
        self.lift(*a).to_string()
    }
    #[inline]
    fn add_mul_assign(&self, acc: &mut u32, a: &u32, b: &u32) {
        *acc = self.reduce(*acc as u64 + *a as u64 * *b as u64);
    }
}

/// A field chosen at run time from a characteristic (0 or a prime).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldChoice {
    Rational,
    Prime(PrimeField),
}

impl FieldChoice {
    pub fn from_characteristic(c: u64) -> Result<Self> {
        if c == 0 {
            Ok(FieldChoice::Rational)
        } else {
            let p = u32::try_from(c)
                .map_err(|_| Error::InvalidField(format!("characteristic {c} too large")))?;
            Ok(FieldChoice::Prime(PrimeField::new(p)?))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldChoice::Rational => 0,
            FieldChoice::Prime(f) => f.characteristic(),
        }
    }
}

/// Rejects characteristic 2, where exterior sign conventions collapse.
pub fn require_odd_characteristic<F: Field>(field: &F) -> Result<()> {
    if field.characteristic() == 2 {
        Err(Error::InvalidField(
            "characteristic 2 is not supported for exterior algebras".into(),
        ))
    } else {
        Ok(())
    }
}

/// Convenience constructor for small rationals.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact conversion of a small rational to `i64`, if it is an integer.
pub fn rational_to_i64(q: &BigRational) -> Option<i64> {
    if q.is_integer() {
        q.to_integer().to_i64()
    } else {
        None
    }
}

/// `|q|` as used when printing signed terms.
pub fn rational_abs(q: &BigRational) -> BigRational {
    q.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverses() {
        let f = PrimeField::new(47).unwrap();
        for a in 1..47u32 {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
        assert_eq!(f.from_i64(-1), 46);
        assert_eq!(f.lift(46), -1);
    }

    #[test]
    fn rejects_composites_and_char_two_for_exterior() {
        assert!(PrimeField::new(32002).is_err());
        assert!(PrimeField::new(1).is_err());
        let f2 = PrimeField::new(2).unwrap();
        assert!(require_odd_characteristic(&f2).is_err());
        assert!(require_odd_characteristic(&Rationals).is_ok());
    }

    #[test]
    fn rational_images_mod_p() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.from_rational(&rat(1, 2)).unwrap(), 4);
        assert!(f.from_rational(&rat(1, 7)).is_err());
    }
}
