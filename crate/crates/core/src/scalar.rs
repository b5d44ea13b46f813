//! Exact coefficient fields: arbitrary-precision rationals and prime fields.
//!
//! Every computation in this crate is exact; there is no floating point
//! anywhere. A [`Field`] value acts as a context whose methods operate on
//! elements, so that prime fields can carry their modulus at runtime.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Context object for an exact field of scalars.
pub trait Field: Clone + PartialEq + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` on zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Render in the exact-rational interchange format (`"num/den"`, the
    /// denominator omitted when 1).
    fn render(&self, a: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }
    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

/// The field of exact rational numbers.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn render(&self, a: &BigRational) -> String {
        render_rational(a)
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
}

/// Format a rational as `num/den`, omitting `/den` when the value is integral.
pub fn render_rational(a: &BigRational) -> String {
    if a.denom().is_one() {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

/// Parse the `num/den` interchange format back into a rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

/// Convenience constructor for a rational from an integer pair.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Convenience constructor for an integral rational.
pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// The prime field `F_p`, elements kept reduced in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// `p` must be prime; checked by trial division since the moduli here
    /// are always small.
    pub fn new(p: u64) -> Self {
        assert!(is_prime(p), "modulus {p} is not prime");
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Reduce an arbitrary rational with p-integral denominator into `F_p`.
    /// Returns `None` when the denominator is divisible by p.
    pub fn reduce_rational(&self, a: &BigRational) -> Option<u64> {
        let p = BigInt::from(self.p);
        let den = a.denom();
        if (den % &p).is_zero() {
            return None;
        }
        let num_mod = modulo(a.numer(), self.p);
        let den_mod = modulo(den, self.p);
        let den_inv = self.inv(&den_mod).expect("denominator unit mod p");
        Some(self.mul(&num_mod, &den_inv))
    }
}

fn modulo(n: &BigInt, p: u64) -> u64 {
    let p = BigInt::from(p);
    let mut r = n % &p;
    if r.is_negative() {
        r += &p;
    }
    let (_, digits) = r.to_u64_digits();
    match digits.len() {
        0 => 0,
        1 => digits[0],
        _ => unreachable!("residue exceeds u64"),
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, n: i64) -> u64 {
        let p = self.p as i128;
        let mut r = (n as i128) % p;
        if r < 0 {
            r += p;
        }
        r as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (((*a as u128) * (*b as u128)) % (self.p as u128)) as u64
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // Fermat: a^(p-2) mod p.
        let mut result = 1u64;
        let mut base = *a % self.p;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        Some(result)
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_rendering_round_trips() {
        for r in [rat(3, 2), rat_int(-4), rat(0, 5), rat(-7, 3)] {
            let s = render_rational(&r);
            assert_eq!(parse_rational(&s), Some(r));
        }
        assert_eq!(render_rational(&rat(4, 2)), "2");
        assert_eq!(render_rational(&rat(1, 3)), "1/3");
    }

    #[test]
    fn prime_field_inverses() {
        for p in [2u64, 3, 5, 7, 13] {
            let f = PrimeField::new(p);
            for a in 1..p {
                let inv = f.inv(&a).unwrap();
                assert_eq!(f.mul(&a, &inv), 1 % p);
            }
            assert_eq!(f.inv(&0), None);
        }
    }

    #[test]
    fn rational_reduction_mod_p() {
        let f = PrimeField::new(3);
        assert_eq!(f.reduce_rational(&rat(1, 2)), Some(2)); // 1/2 = 2 mod 3
        assert_eq!(f.reduce_rational(&rat(1, 3)), None);
        assert_eq!(f.reduce_rational(&rat(-1, 1)), Some(2));
    }

    #[test]
    #[should_panic]
    fn composite_modulus_rejected() {
        PrimeField::new(6);
    }
}
