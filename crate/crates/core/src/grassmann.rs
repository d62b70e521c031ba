//! The Grassmann algebra on n anticommuting generators, its derivative
//! operators and bracket, the superalgebra J(Gamma_n) built from Gamma and
//! a barred copy, and the Grassmann envelope that turns super-identities
//! into ordinary ones.
//!
//! Basis monomials are subsets of generators, stored as bitmasks; basis
//! index i of the underlying algebra IS the subset mask. Products
//! concatenate and sort, with the sign given by the inversion count.

use crate::algebra::{Element, Parity, Superalgebra, TableBuilder};
use crate::field::{Field, Scalar};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GrassmannError {
    /// J(Gamma_n) is only simple for n >= 2; the forced constructor
    /// bypasses this for experiments.
    NotSimpleParameter { n: usize },
}

impl fmt::Display for GrassmannError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrassmannError::NotSimpleParameter { n } => {
                write!(
                    f,
                    "J(Gamma_{n}) is not simple; use the forced constructor if intended"
                )
            }
        }
    }
}

impl core::error::Error for GrassmannError {}

/// Sign of e_S * e_T as concatenation-then-sort, +1/-1; caller has checked
/// the masks are disjoint.
fn merge_sign(s: u32, t: u32) -> i64 {
    let mut inversions = 0u32;
    let mut bits = s;
    while bits != 0 {
        let b = bits.trailing_zeros();
        inversions += (t & ((1u32 << b) - 1)).count_ones();
        bits &= bits - 1;
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

pub(crate) fn monomial_label(mask: u32) -> String {
    if mask == 0 {
        return "1".into();
    }
    let mut out = String::new();
    let mut bits = mask;
    while bits != 0 {
        let b = bits.trailing_zeros();
        out.push_str(&alloc::format!("e{}", b + 1));
        bits &= bits - 1;
    }
    out
}

/// The Grassmann algebra Gamma_n together with its generator count.
#[derive(Debug, Clone)]
pub struct GrassmannAlgebra {
    pub algebra: Superalgebra,
    pub generators: usize,
}

/// Gamma_n: dimension 2^n, generators e_1..e_n with e_i^2 = 0 and
/// e_i e_j = -e_j e_i; parity of a monomial is its length mod 2.
pub fn gamma_algebra(field: Field, n: usize) -> GrassmannAlgebra {
    assert!(n >= 1, "Gamma_n needs at least one generator");
    assert!(n < 30, "2^n basis monomials would not fit in memory");
    let dim = 1usize << n;
    let mut parity = Vec::with_capacity(dim);
    let mut labels = Vec::with_capacity(dim);
    for mask in 0..dim as u32 {
        parity.push(if mask.count_ones() % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        });
        labels.push(monomial_label(mask));
    }
    let mut t = TableBuilder::new();
    for i in 0..dim as u32 {
        for j in 0..dim as u32 {
            if i & j != 0 {
                continue; // repeated generator squares to zero
            }
            let sign = merge_sign(i, j);
            t.add(
                &field,
                i as usize,
                j as usize,
                (i | j) as usize,
                field.from_i64(sign),
            );
        }
    }
    let algebra = Superalgebra::new(alloc::format!("Gamma({n})"), field, parity, labels, t)
        .expect("Grassmann table is graded by construction");
    GrassmannAlgebra {
        algebra,
        generators: n,
    }
}

impl GrassmannAlgebra {
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Monomial basis element for a generator subset.
    pub fn monomial(&self, mask: u32) -> Element {
        self.algebra.basis_element(mask as usize)
    }

    /// Generator e_j (1-based).
    pub fn generator(&self, j: usize) -> Element {
        assert!(1 <= j && j <= self.generators);
        self.monomial(1 << (j - 1))
    }

    /// The derivative d/de_j, extended linearly from the monomial rule:
    /// remove e_j with sign (-1)^(k-1) where k is its position in the
    /// monomial; zero when absent.
    pub fn partial_derivative(&self, j: usize, x: &Element) -> Element {
        assert!(
            1 <= j && j <= self.generators,
            "generator index out of range"
        );
        let f = self.algebra.field;
        let bit = 1u32 << (j - 1);
        let mut out = self.algebra.zero_element();
        for (mask, c) in x.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mask = mask as u32;
            if mask & bit == 0 {
                continue;
            }
            let below = (mask & (bit - 1)).count_ones();
            let target = (mask & !bit) as usize;
            let term = if below % 2 == 0 { c.clone() } else { f.neg(c) };
            out.coords[target] = f.add(&out.coords[target], &term);
        }
        out
    }

    /// The bracket {f, g} = (-1)^p(f) sum_j (df/de_j)(dg/de_j), defined on
    /// parity-homogeneous f and extended bilinearly; no other extension is
    /// linear in the first slot. The sum over generators is finite here.
    pub fn bracket(&self, f: &Element, g: &Element) -> Element {
        let field = self.algebra.field;
        let mut out = self.algebra.zero_element();
        for par in [Parity::Even, Parity::Odd] {
            let fp = f.parity_component(&self.algebra, par);
            if fp.is_zero() {
                continue;
            }
            let mut acc = self.algebra.zero_element();
            for j in 1..=self.generators {
                let df = self.partial_derivative(j, &fp);
                if df.is_zero() {
                    continue;
                }
                let dg = self.partial_derivative(j, g);
                if dg.is_zero() {
                    continue;
                }
                let prod = self.algebra.multiply(&df, &dg).unwrap();
                acc = self.algebra.add(&acc, &prod).unwrap();
            }
            if par.is_odd() {
                acc = self.algebra.scale(&field.from_i64(-1), &acc).unwrap();
            }
            out = self.algebra.add(&out, &acc).unwrap();
        }
        out
    }
}

/// J(Gamma_n) = Gamma_n + a barred copy, with the bullet product
///   a.b = ab, (~a).b = (-1)^p(b) ~(ab), a.(~b) = ~(ab),
///   (~a).(~b) = (-1)^p(b) {a,b},
/// graded so that barred monomials flip parity. Simple for n >= 2.
pub fn j_gamma(field: Field, n: usize) -> Result<Superalgebra, GrassmannError> {
    if n < 2 {
        return Err(GrassmannError::NotSimpleParameter { n });
    }
    Ok(j_gamma_forced(field, n))
}

/// J(Gamma_n) without the simplicity guard (any n >= 1).
pub fn j_gamma_forced(field: Field, n: usize) -> Superalgebra {
    let gamma = gamma_algebra(field, n);
    let g = 1usize << n; // barred offset
    let dim = 2 * g;
    let mut parity = Vec::with_capacity(dim);
    let mut labels = Vec::with_capacity(dim);
    for mask in 0..g as u32 {
        parity.push(if mask.count_ones() % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        });
        labels.push(monomial_label(mask));
    }
    for mask in 0..g as u32 {
        parity.push(if mask.count_ones() % 2 == 0 {
            Parity::Odd
        } else {
            Parity::Even
        });
        labels.push(alloc::format!("~{}", monomial_label(mask)));
    }

    let mut t = TableBuilder::new();
    let sign_of = |m: u32, s: i64| if m.count_ones() % 2 == 0 { s } else { -s };
    for a in 0..g as u32 {
        for b in 0..g as u32 {
            if a & b == 0 {
                let s = merge_sign(a, b);
                // a . b = ab
                t.add(
                    &field,
                    a as usize,
                    b as usize,
                    (a | b) as usize,
                    field.from_i64(s),
                );
                // a . ~b = ~(ab)
                t.add(
                    &field,
                    a as usize,
                    g + b as usize,
                    g + (a | b) as usize,
                    field.from_i64(s),
                );
                // ~a . b = (-1)^p(b) ~(ab)
                t.add(
                    &field,
                    g + a as usize,
                    b as usize,
                    g + (a | b) as usize,
                    field.from_i64(sign_of(b, s)),
                );
            }
            // ~a . ~b = (-1)^p(b) {a, b}
            let br = gamma.bracket(&gamma.monomial(a), &gamma.monomial(b));
            for (k, c) in br.coords.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let c = if b.count_ones() % 2 == 0 {
                    c.clone()
                } else {
                    field.neg(c)
                };
                t.add(&field, g + a as usize, g + b as usize, k, c);
            }
        }
    }
    Superalgebra::new(alloc::format!("JGamma({n})"), field, parity, labels, t)
        .expect("J(Gamma) grading holds by construction")
}

/// The Grassmann envelope Gamma_0(k) (x) A_0 + Gamma_1(k) (x) A_1: a plain
/// algebra whose Jordan-ness is the defining super-Jordan property of A.
#[derive(Debug, Clone)]
pub struct Envelope {
    pub algebra: Superalgebra,
    /// Envelope basis: (gamma mask, base index), in basis order.
    pub pairs: Vec<(u32, usize)>,
    pub generators: usize,
}

/// Builds the envelope with k Grassmann generators. Four generators are
/// enough to detect any violation of a four-slot multilinear identity,
/// which is why identity checking defaults to k = 4.
pub fn grassmann_envelope(a: &Superalgebra, k: usize) -> Envelope {
    assert!(k >= 1);
    let field = a.field;
    let g = 1u32 << k;
    let mut rank = vec![usize::MAX; g as usize];
    let mut even_masks = Vec::new();
    let mut odd_masks = Vec::new();
    for m in 0..g {
        if m.count_ones() % 2 == 0 {
            rank[m as usize] = even_masks.len();
            even_masks.push(m);
        } else {
            rank[m as usize] = odd_masks.len();
            odd_masks.push(m);
        }
    }
    let per_base = 1usize << (k - 1); // each parity class has 2^(k-1) masks

    let mut pairs = Vec::with_capacity(a.dim() * per_base);
    let mut labels = Vec::with_capacity(a.dim() * per_base);
    for i in 0..a.dim() {
        let masks = if a.parity(i).is_odd() {
            &odd_masks
        } else {
            &even_masks
        };
        for &m in masks {
            pairs.push((m, i));
            labels.push(alloc::format!("{}*{}", monomial_label(m), a.label(i)));
        }
    }
    let index_of = |mask: u32, base: usize| base * per_base + rank[mask as usize];

    let mut t = TableBuilder::new();
    for (idx1, &(m1, a1)) in pairs.iter().enumerate() {
        for (idx2, &(m2, a2)) in pairs.iter().enumerate() {
            if m1 & m2 != 0 {
                continue;
            }
            let terms = a.basis_product(a1, a2);
            if terms.is_empty() {
                continue;
            }
            let sign = merge_sign(m1, m2);
            let union = m1 | m2;
            for (kk, c) in terms {
                let c: Scalar = if sign < 0 { field.neg(c) } else { c.clone() };
                t.add(&field, idx1, idx2, index_of(union, *kk as usize), c);
            }
        }
    }
    let dim = pairs.len();
    let algebra = Superalgebra::new(
        alloc::format!("Env({}, {k})", a.name),
        field,
        vec![Parity::Even; dim],
        labels,
        t,
    )
    .expect("envelope is all-even");
    Envelope {
        algebra,
        pairs,
        generators: k,
    }
}
