//! Ground-field selection: the rationals, or a prime field GF(p) with p an
//! odd prime. Characteristic 2 is rejected everywhere: the halved products
//! that define the Jordan constructions do not exist there.
//!
//! A [`Field`] is an immutable descriptor; every arithmetic operation on
//! [`Scalar`] values goes through it. GF(p) residues are stored reduced to
//! `[0, p)` and scalars compare structurally.

use crate::int::Int;
use crate::rat::Rat;
use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    /// p = 2 requested; the theory needs 1/2.
    CharacteristicTwo,
    /// Modulus is not prime.
    NotPrime(u64),
    /// A rational constant has a denominator divisible by p.
    DenominatorVanishes { den: String, p: u64 },
    /// Division by zero in the field.
    DivisionByZero,
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::CharacteristicTwo => {
                write!(f, "characteristic 2 is not supported (1/2 must exist)")
            }
            FieldError::NotPrime(p) => write!(f, "{p} is not prime"),
            FieldError::DenominatorVanishes { den, p } => {
                write!(f, "denominator {den} vanishes modulo {p}")
            }
            FieldError::DivisionByZero => write!(f, "division by zero"),
        }
    }
}

impl core::error::Error for FieldError {}

/// Field descriptor: `Q` or `GF(p)` for an odd prime p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    GfP(u64),
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl Field {
    pub fn rationals() -> Field {
        Field::Rationals
    }

    pub fn gf(p: u64) -> Result<Field, FieldError> {
        if p == 2 {
            return Err(FieldError::CharacteristicTwo);
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Field::GfP(p))
    }

    /// 0 for the rationals, p for GF(p).
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::GfP(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Q(Rat::ZERO),
            Field::GfP(_) => Scalar::Fp(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Q(Rat::ONE),
            Field::GfP(_) => Scalar::Fp(1),
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Q(Rat::from_i64(v)),
            Field::GfP(p) => Scalar::Fp((v.rem_euclid(*p as i64)) as u64),
        }
    }

    /// Image of the rational num/den in the field.
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar, FieldError> {
        assert!(den != 0);
        self.from_rat(&Rat::from_ratio(num, den))
    }

    /// Image of an exact rational in the field.
    pub fn from_rat(&self, r: &Rat) -> Result<Scalar, FieldError> {
        match self {
            Field::Rationals => Ok(Scalar::Q(r.clone())),
            Field::GfP(p) => {
                let n = int_mod(r.numerator(), *p);
                let d = int_mod(r.denominator(), *p);
                if d == 0 {
                    return Err(FieldError::DenominatorVanishes {
                        den: r.denominator().to_decimal(),
                        p: *p,
                    });
                }
                Ok(Scalar::Fp(mul_mod(n, inv_mod(d, *p), *p)))
            }
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rationals, Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.add(b)),
            (Field::GfP(p), Scalar::Fp(a), Scalar::Fp(b)) => Scalar::Fp((a + b) % p),
            _ => panic!("scalar does not belong to this field"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rationals, Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.sub(b)),
            (Field::GfP(p), Scalar::Fp(a), Scalar::Fp(b)) => Scalar::Fp((a + p - b) % p),
            _ => panic!("scalar does not belong to this field"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rationals, Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.mul(b)),
            (Field::GfP(p), Scalar::Fp(a), Scalar::Fp(b)) => Scalar::Fp(mul_mod(*a, *b, *p)),
            _ => panic!("scalar does not belong to this field"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Rationals, Scalar::Q(a)) => Scalar::Q(a.neg()),
            (Field::GfP(p), Scalar::Fp(a)) => Scalar::Fp(if *a == 0 { 0 } else { p - a }),
            _ => panic!("scalar does not belong to this field"),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar, FieldError> {
        if b.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(match (self, a, b) {
            (Field::Rationals, Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.div(b)),
            (Field::GfP(p), Scalar::Fp(a), Scalar::Fp(b)) => {
                Scalar::Fp(mul_mod(*a, inv_mod(*b, *p), *p))
            }
            _ => panic!("scalar does not belong to this field"),
        })
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar, FieldError> {
        self.div(&self.one(), a)
    }

    /// Parses a scalar literal: `"p/q"` over the rationals (and, mapped
    /// through the ratio, over GF(p)), or a plain integer.
    pub fn parse_scalar(&self, s: &str) -> Option<Scalar> {
        let r = Rat::parse(s)?;
        self.from_rat(&r).ok()
    }
}

fn int_mod(v: &Int, p: u64) -> u64 {
    match v.as_i64() {
        Some(x) => x.rem_euclid(p as i64) as u64,
        None => {
            // Reduce digit by digit through the decimal form; big values are
            // rare enough that this never matters for speed.
            let s = v.to_decimal();
            let (neg, digits) = match s.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, s.as_str()),
            };
            let mut acc: u64 = 0;
            for ch in digits.bytes() {
                acc = (acc * 10 + (ch - b'0') as u64) % p;
            }
            if neg && acc != 0 {
                p - acc
            } else {
                acc
            }
        }
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Extended Euclid; a != 0 mod p.
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert!(r == 1, "inv_mod of non-unit");
    t.rem_euclid(p as i128) as u64
}

/// Exact field element: a canonical rational or a GF(p) residue. The field
/// it belongs to is carried by the surrounding context (algebra, system);
/// equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(Rat),
    Fp(u64),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp(v) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::Fp(v) => *v == 1,
        }
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        match self {
            Scalar::Q(r) => Some(r),
            Scalar::Fp(_) => None,
        }
    }

    pub fn as_residue(&self) -> Option<u64> {
        match self {
            Scalar::Q(_) => None,
            Scalar::Fp(v) => Some(*v),
        }
    }

    /// Canonical literal: `"p/q"` form for rationals, decimal residue for
    /// GF(p).
    pub fn to_literal(&self) -> String {
        match self {
            Scalar::Q(r) => r.to_fraction_string(),
            Scalar::Fp(v) => alloc::format!("{v}"),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => write!(f, "{r}"),
            Scalar::Fp(v) => write!(f, "{v}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptors() {
        assert_eq!(Field::rationals().characteristic(), 0);
        assert_eq!(Field::gf(7).unwrap().characteristic(), 7);
        assert_eq!(Field::gf(2), Err(FieldError::CharacteristicTwo));
        assert_eq!(Field::gf(9), Err(FieldError::NotPrime(9)));
        assert_eq!(Field::gf(1), Err(FieldError::NotPrime(1)));
    }

    #[test]
    fn gf_arithmetic() {
        let f = Field::gf(7).unwrap();
        let half = f.from_ratio(1, 2).unwrap();
        assert_eq!(half, Scalar::Fp(4)); // 2*4 = 8 = 1 mod 7
        let third = f.from_ratio(1, 3).unwrap();
        assert_eq!(f.mul(&third, &f.from_i64(3)), f.one());
        assert_eq!(f.from_i64(-1), Scalar::Fp(6));
        assert!(f.div(&f.one(), &f.zero()).is_err());
    }

    #[test]
    fn gf_rejects_vanishing_denominator() {
        let f = Field::gf(5).unwrap();
        assert!(matches!(
            f.from_ratio(1, 5),
            Err(FieldError::DenominatorVanishes { .. })
        ));
    }

    #[test]
    fn parse_literals() {
        let q = Field::rationals();
        assert_eq!(q.parse_scalar("-3/6").unwrap().to_literal(), "-1/2");
        let f5 = Field::gf(5).unwrap();
        assert_eq!(f5.parse_scalar("1/2").unwrap(), Scalar::Fp(3));
        assert_eq!(f5.parse_scalar("7").unwrap(), Scalar::Fp(2));
    }

    #[test]
    fn big_residue_reduction() {
        let v = Int::parse("123456789012345678901234567890").unwrap();
        assert_eq!(int_mod(&v, 97), {
            let mut acc = 0u64;
            for ch in "123456789012345678901234567890".bytes() {
                acc = (acc * 10 + (ch - b'0') as u64) % 97;
            }
            acc
        });
    }
}
