//! Arbitrary-precision integers with an inline `i64` fast path.
//!
//! Elimination over structure-constant systems spends nearly all its time on
//! single-word values; the boxed big-integer representation only kicks in
//! when a product or sum overflows 64 bits.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{Signed, ToPrimitive, Zero};

/// Exact signed integer. Values that fit in an `i64` are stored inline;
/// anything larger spills into a heap-allocated big integer.
#[derive(Clone)]
pub enum Int {
    Small(i64),
    Big(Box<BigInt>),
}

impl Int {
    pub const ZERO: Int = Int::Small(0);
    pub const ONE: Int = Int::Small(1);

    pub fn from_i64(v: i64) -> Int {
        Int::Small(v)
    }

    fn from_big(b: BigInt) -> Int {
        match b.to_i64() {
            Some(v) => Int::Small(v),
            None => Int::Big(Box::new(b)),
        }
    }

    fn to_big(&self) -> BigInt {
        match self {
            Int::Small(v) => BigInt::from(*v),
            Int::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Int::Small(1))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Int::Small(v) => *v < 0,
            Int::Big(b) => b.is_negative(),
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        match self {
            Int::Small(v) => Some(*v),
            Int::Big(_) => None,
        }
    }

    pub fn abs(&self) -> Int {
        match self {
            Int::Small(v) => match v.checked_abs() {
                Some(a) => Int::Small(a),
                None => Int::from_big(-BigInt::from(*v)),
            },
            Int::Big(b) => Int::from_big(b.abs()),
        }
    }

    pub fn neg(&self) -> Int {
        match self {
            Int::Small(v) => match v.checked_neg() {
                Some(n) => Int::Small(n),
                None => Int::from_big(-BigInt::from(*v)),
            },
            Int::Big(b) => Int::from_big(-(**b).clone()),
        }
    }

    pub fn add(&self, other: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, other) {
            if let Some(s) = a.checked_add(*b) {
                return Int::Small(s);
            }
        }
        Int::from_big(self.to_big() + other.to_big())
    }

    pub fn sub(&self, other: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, other) {
            if let Some(s) = a.checked_sub(*b) {
                return Int::Small(s);
            }
        }
        Int::from_big(self.to_big() - other.to_big())
    }

    pub fn mul(&self, other: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, other) {
            if let Some(p) = a.checked_mul(*b) {
                return Int::Small(p);
            }
        }
        Int::from_big(self.to_big() * other.to_big())
    }

    /// `a*b - c*d` in one call; the innermost operation of fraction-free
    /// elimination.
    pub fn mul_sub_mul(a: &Int, b: &Int, c: &Int, d: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b), Int::Small(c), Int::Small(d)) = (a, b, c, d) {
            let p = (*a as i128) * (*b as i128) - (*c as i128) * (*d as i128);
            if let Ok(v) = i64::try_from(p) {
                return Int::Small(v);
            }
            return Int::from_big(BigInt::from(p));
        }
        Int::from_big(a.to_big() * b.to_big() - c.to_big() * d.to_big())
    }

    /// Quotient of an exact division. Panics if `other` is zero or does not
    /// divide `self`; callers invoke this only where divisibility is
    /// guaranteed (Bareiss pivots, gcd-reduced denominators).
    pub fn exact_div(&self, other: &Int) -> Int {
        assert!(!other.is_zero(), "exact_div by zero");
        if let (Int::Small(a), Int::Small(b)) = (self, other) {
            if *a % *b == 0 {
                return Int::Small(a / b);
            }
            panic!("exact_div: {a} not divisible by {b}");
        }
        let (q, r) = self.to_big().div_rem(&other.to_big());
        assert!(r.is_zero(), "exact_div: inexact division");
        Int::from_big(q)
    }

    pub fn divides(&self, other: &Int) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        if let (Int::Small(a), Int::Small(b)) = (self, other) {
            return b % a == 0;
        }
        other.to_big().mod_floor(&self.to_big()).is_zero()
    }

    /// Non-negative greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, other) {
            let mut a = (*a as i128).unsigned_abs();
            let mut b = (*b as i128).unsigned_abs();
            while b != 0 {
                let t = a % b;
                a = b;
                b = t;
            }
            if let Ok(v) = i64::try_from(a) {
                return Int::Small(v);
            }
            return Int::from_big(BigInt::from(a));
        }
        Int::from_big(self.to_big().gcd(&other.to_big()))
    }

    /// Decimal digit count of |self|; a cheap size measure for pivoting
    /// diagnostics and reports.
    pub fn digits(&self) -> usize {
        match self {
            Int::Small(v) => {
                let mut n = v.unsigned_abs();
                let mut d = 1;
                while n >= 10 {
                    n /= 10;
                    d += 1;
                }
                d
            }
            Int::Big(b) => b.to_string().trim_start_matches('-').len(),
        }
    }

    pub fn parse(s: &str) -> Option<Int> {
        if s.is_empty() {
            return None;
        }
        if let Ok(v) = s.parse::<i64>() {
            return Some(Int::Small(v));
        }
        s.parse::<BigInt>().ok().map(Int::from_big)
    }

    pub fn to_decimal(&self) -> String {
        match self {
            Int::Small(v) => alloc::format!("{v}"),
            Int::Big(b) => alloc::format!("{b}"),
        }
    }
}

impl PartialEq for Int {
    fn eq(&self, other: &Self) -> bool {
        // Representation is canonical: Big is only used out of i64 range.
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a == b,
            (Int::Big(a), Int::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Int {}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Int {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl core::hash::Hash for Int {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        match self {
            Int::Small(v) => v.hash(state),
            Int::Big(b) => b.hash(state),
        }
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::Small(v) => write!(f, "{v}"),
            Int::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Int {
        Int::Small(v)
    }
}
