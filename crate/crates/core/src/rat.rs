//! Exact rational numbers in canonical form: lowest terms, positive
//! denominator. Equality is structural.

use crate::int::Int;
use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rat {
    num: Int,
    den: Int, // > 0, gcd(num, den) = 1; zero is 0/1
}

impl Rat {
    pub const ZERO: Rat = Rat {
        num: Int::ZERO,
        den: Int::ONE,
    };
    pub const ONE: Rat = Rat {
        num: Int::ONE,
        den: Int::ONE,
    };

    pub fn new(num: Int, den: Int) -> Rat {
        assert!(!den.is_zero(), "rational with zero denominator");
        let mut num = num;
        let mut den = den;
        if den.is_negative() {
            num = num.neg();
            den = den.neg();
        }
        let g = num.gcd(&den);
        if !g.is_one() && !g.is_zero() {
            num = num.exact_div(&g);
            den = den.exact_div(&g);
        }
        if num.is_zero() {
            den = Int::ONE;
        }
        Rat { num, den }
    }

    pub fn from_int(v: Int) -> Rat {
        Rat {
            num: v,
            den: Int::ONE,
        }
    }

    pub fn from_i64(v: i64) -> Rat {
        Rat::from_int(Int::from_i64(v))
    }

    pub fn from_ratio(num: i64, den: i64) -> Rat {
        Rat::new(Int::from_i64(num), Int::from_i64(den))
    }

    pub fn numerator(&self) -> &Int {
        &self.num
    }

    pub fn denominator(&self) -> &Int {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, other: &Rat) -> Rat {
        Rat::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Rat) -> Rat {
        Rat::new(
            self.num.mul(&other.den).sub(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn mul(&self, other: &Rat) -> Rat {
        // Cross-reduce before multiplying to keep intermediates small.
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let (n1, d2) = if g1.is_one() || g1.is_zero() {
            (self.num.clone(), other.den.clone())
        } else {
            (self.num.exact_div(&g1), other.den.exact_div(&g1))
        };
        let (n2, d1) = if g2.is_one() || g2.is_zero() {
            (other.num.clone(), self.den.clone())
        } else {
            (other.num.exact_div(&g2), self.den.exact_div(&g2))
        };
        let num = n1.mul(&n2);
        if num.is_zero() {
            return Rat::ZERO;
        }
        Rat {
            num,
            den: d1.mul(&d2),
        }
    }

    pub fn div(&self, other: &Rat) -> Rat {
        assert!(!other.is_zero(), "division by zero rational");
        self.mul(&Rat::new(other.den.clone(), other.num.clone()))
    }

    pub fn neg(&self) -> Rat {
        Rat {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Rat {
        assert!(!self.is_zero(), "inverse of zero rational");
        Rat::new(self.den.clone(), self.num.clone())
    }

    /// Parses `"p"` or `"p/q"`.
    pub fn parse(s: &str) -> Option<Rat> {
        match s.split_once('/') {
            None => Int::parse(s.trim()).map(Rat::from_int),
            Some((p, q)) => {
                let p = Int::parse(p.trim())?;
                let q = Int::parse(q.trim())?;
                if q.is_zero() {
                    return None;
                }
                Some(Rat::new(p, q))
            }
        }
    }

    /// Canonical string form: `"p"` for integers, `"p/q"` otherwise.
    pub fn to_fraction_string(&self) -> String {
        if self.den.is_one() {
            self.num.to_decimal()
        } else {
            alloc::format!("{}/{}", self.num, self.den)
        }
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Self) -> Ordering {
        self.num.mul(&other.den).cmp(&other.num.mul(&self.den))
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
