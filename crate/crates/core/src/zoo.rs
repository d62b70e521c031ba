//! Constructors for the simple Jordan algebras and superalgebras the
//! solver is exercised on, at caller-chosen finite parameters.
//!
//! Plain algebras: the ground field, bilinear-form algebras J(V,f), and
//! hermitian matrix algebras H(D_n) over the split composition algebras
//! (including the 27-dimensional exceptional algebra over the split
//! octonions). Superalgebras: the matrix families M(m,n)+, Q(n)+, osp(n,m)
//! and P(n), the superform algebra J(V,f), the Kaplansky algebra K3, the
//! family D_t, the Kac algebra K10, and J(Gamma_n).
//!
//! Every constructor returns a grading-validated table and asserts its
//! unit situation against `find_unit`; the identity checks themselves live
//! in `check` and are exercised over the whole catalog by the test suite.

use crate::algebra::{
    AlgebraError, Involution, Parity, SubalgebraEmbedding, Superalgebra, TableBuilder,
};
use crate::field::{Field, FieldError};
use crate::grassmann::{self, GrassmannError};
use crate::rat::Rat;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZooError {
    /// Parameter outside the family's range.
    Parameter {
        what: String,
    },
    /// Hermitian matrices over the octonions only exist in size 3.
    OctonionDimension {
        n: usize,
    },
    /// The construction requires a larger characteristic.
    Characteristic {
        p: u64,
        algebra: String,
    },
    /// The symmetry closure of the K10 table assigned two different values
    /// to one product.
    ClosureConflict {
        i: usize,
        j: usize,
    },
    Algebra(AlgebraError),
    Grassmann(GrassmannError),
    Field(FieldError),
}

impl fmt::Display for ZooError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZooError::Parameter { what } => write!(f, "parameter error: {what}"),
            ZooError::OctonionDimension { n } => {
                write!(f, "hermitian octonion matrices need n = 3, got {n}")
            }
            ZooError::Characteristic { p, algebra } => {
                write!(f, "{algebra} is not defined over characteristic {p}")
            }
            ZooError::ClosureConflict { i, j } => {
                write!(f, "symmetry closure conflict at product ({i}, {j})")
            }
            ZooError::Algebra(e) => write!(f, "{e}"),
            ZooError::Grassmann(e) => write!(f, "{e}"),
            ZooError::Field(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for ZooError {}

impl From<AlgebraError> for ZooError {
    fn from(e: AlgebraError) -> Self {
        ZooError::Algebra(e)
    }
}

impl From<GrassmannError> for ZooError {
    fn from(e: GrassmannError) -> Self {
        ZooError::Grassmann(e)
    }
}

impl From<FieldError> for ZooError {
    fn from(e: FieldError) -> Self {
        ZooError::Field(e)
    }
}

/// Split composition algebras over the working field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompositionKind {
    GroundField,
    SplitBinarion,
    SplitQuaternion,
    SplitOctonion,
}

impl CompositionKind {
    pub fn dim(self) -> usize {
        match self {
            CompositionKind::GroundField => 1,
            CompositionKind::SplitBinarion => 2,
            CompositionKind::SplitQuaternion => 4,
            CompositionKind::SplitOctonion => 8,
        }
    }

    pub fn short(self) -> &'static str {
        match self {
            CompositionKind::GroundField => "F",
            CompositionKind::SplitBinarion => "B",
            CompositionKind::SplitQuaternion => "Q",
            CompositionKind::SplitOctonion => "O",
        }
    }

    pub fn is_associative(self) -> bool {
        self != CompositionKind::SplitOctonion
    }
}

/// A composition algebra with its canonical involution attached.
#[derive(Debug, Clone)]
pub struct CompositionAlgebra {
    pub kind: CompositionKind,
    pub algebra: Superalgebra,
    pub conjugation: Involution,
}

/// Builds the split composition algebra of the given kind: the ground
/// field, F+F with the swap, 2x2 matrices with the adjugate involution, or
/// Zorn vector matrices with negation of the vector parts.
pub fn composition_algebra(field: Field, kind: CompositionKind) -> CompositionAlgebra {
    let f = field;
    let one = f.one();
    match kind {
        CompositionKind::GroundField => {
            let mut t = TableBuilder::new();
            t.add(&f, 0, 0, 0, one);
            let algebra =
                Superalgebra::new("F", f, vec![Parity::Even], vec!["1".into()], t).unwrap();
            let conjugation = Involution::from_images(f, vec![vec![f.one()]]);
            CompositionAlgebra {
                kind,
                algebra,
                conjugation,
            }
        }
        CompositionKind::SplitBinarion => {
            let mut t = TableBuilder::new();
            t.add(&f, 0, 0, 0, one.clone());
            t.add(&f, 1, 1, 1, one);
            let algebra = Superalgebra::new(
                "B",
                f,
                vec![Parity::Even; 2],
                vec!["u1".into(), "u2".into()],
                t,
            )
            .unwrap();
            let conjugation =
                Involution::from_images(f, vec![vec![f.zero(), f.one()], vec![f.one(), f.zero()]]);
            CompositionAlgebra {
                kind,
                algebra,
                conjugation,
            }
        }
        CompositionKind::SplitQuaternion => {
            // 2x2 matrices; basis e11, e12, e21, e22.
            let mut t = TableBuilder::new();
            let idx = |r: usize, c: usize| r * 2 + c;
            for r in 0..2 {
                for c in 0..2 {
                    for c2 in 0..2 {
                        t.add(&f, idx(r, c), idx(c, c2), idx(r, c2), f.one());
                    }
                }
            }
            let algebra = Superalgebra::new(
                "Q",
                f,
                vec![Parity::Even; 4],
                vec!["q11".into(), "q12".into(), "q21".into(), "q22".into()],
                t,
            )
            .unwrap();
            // Adjugate: a -> tr(a) 1 - a.
            let conjugation = Involution::from_images(
                f,
                vec![
                    vec![f.zero(), f.zero(), f.zero(), f.one()],
                    vec![f.zero(), f.from_i64(-1), f.zero(), f.zero()],
                    vec![f.zero(), f.zero(), f.from_i64(-1), f.zero()],
                    vec![f.one(), f.zero(), f.zero(), f.zero()],
                ],
            );
            CompositionAlgebra {
                kind,
                algebra,
                conjugation,
            }
        }
        CompositionKind::SplitOctonion => split_octonion(field),
    }
}

/// Zorn vector matrices [[a, v], [w, b]] with v, w in F^3:
/// basis E1, E2, u1..u3 (top-right), w1..w3 (bottom-left).
fn split_octonion(field: Field) -> CompositionAlgebra {
    let f = field;
    let mut t = TableBuilder::new();
    let e1 = 0usize;
    let e2 = 1usize;
    let u = |i: usize| 2 + i; // i in 0..3
    let w = |i: usize| 5 + i;
    let eps = |i: usize, j: usize| -> Option<(usize, i64)> {
        // Cross product: e_i x e_j = eps_ijk e_k.
        if i == j {
            return None;
        }
        let k = 3 - i - j;
        let sign = if (j + 3 - i) % 3 == 1 { 1 } else { -1 };
        Some((k, sign))
    };

    t.add(&f, e1, e1, e1, f.one());
    t.add(&f, e2, e2, e2, f.one());
    for i in 0..3 {
        // E1 u_i = u_i = u_i E2; E2 w_i = w_i = w_i E1.
        t.add(&f, e1, u(i), u(i), f.one());
        t.add(&f, u(i), e2, u(i), f.one());
        t.add(&f, e2, w(i), w(i), f.one());
        t.add(&f, w(i), e1, w(i), f.one());
        for j in 0..3 {
            // u_i w_j = delta_ij E1; w_i u_j = delta_ij E2.
            if i == j {
                t.add(&f, u(i), w(j), e1, f.one());
                t.add(&f, w(i), u(j), e2, f.one());
            }
            // u_i u_j = eps_ijk w_k; w_i w_j = -eps_ijk u_k.
            if let Some((k, s)) = eps(i, j) {
                t.add(&f, u(i), u(j), w(k), f.from_i64(s));
                t.add(&f, w(i), w(j), u(k), f.from_i64(-s));
            }
        }
    }
    let labels = vec![
        "E1".into(),
        "E2".into(),
        "u1".into(),
        "u2".into(),
        "u3".into(),
        "w1".into(),
        "w2".into(),
        "w3".into(),
    ];
    let algebra = Superalgebra::new("O", f, vec![Parity::Even; 8], labels, t).unwrap();
    // Conjugation: E1 <-> E2, vector parts negated.
    let mut images = Vec::new();
    for i in 0..8usize {
        let mut img = vec![f.zero(); 8];
        match i {
            0 => img[1] = f.one(),
            1 => img[0] = f.one(),
            _ => img[i] = f.from_i64(-1),
        }
        images.push(img);
    }
    let conjugation = Involution::from_images(f, images);
    CompositionAlgebra {
        kind: CompositionKind::SplitOctonion,
        algebra,
        conjugation,
    }
}

/// n x n matrices over a composition algebra, as a plain structure-constant
/// algebra; basis e_{r,c} (x) d_k, row-major.
fn matrix_over_composition(comp: &CompositionAlgebra, n: usize) -> Superalgebra {
    let f = comp.algebra.field;
    let d = comp.algebra.dim();
    let idx = |r: usize, c: usize, k: usize| (r * n + c) * d + k;
    let mut t = TableBuilder::new();
    for r in 0..n {
        for c in 0..n {
            for c2 in 0..n {
                // (e_rc (x) x)(e_c c2 (x) y) = e_r c2 (x) xy
                for k1 in 0..d {
                    for (k2v, terms) in (0..d).map(|k2| (k2, comp.algebra.basis_product(k1, k2))) {
                        for (k3, coeff) in terms {
                            t.add(
                                &f,
                                idx(r, c, k1),
                                idx(c, c2, k2v),
                                idx(r, c2, *k3 as usize),
                                coeff.clone(),
                            );
                        }
                    }
                }
            }
        }
    }
    let mut labels = Vec::with_capacity(n * n * d);
    for r in 0..n {
        for c in 0..n {
            for k in 0..d {
                let dl = comp.algebra.label(k);
                if d == 1 {
                    labels.push(alloc::format!("e{},{}", r + 1, c + 1));
                } else {
                    labels.push(alloc::format!("{dl}e{},{}", r + 1, c + 1));
                }
            }
        }
    }
    Superalgebra::new(
        alloc::format!("M{n}({})", comp.kind.short()),
        f,
        vec![Parity::Even; n * n * d],
        labels,
        t,
    )
    .unwrap()
}

/// Conjugate-transpose involution on `matrix_over_composition`.
fn conjugate_transpose(comp: &CompositionAlgebra, n: usize) -> Involution {
    let f = comp.algebra.field;
    let d = comp.algebra.dim();
    let idx = |r: usize, c: usize, k: usize| (r * n + c) * d + k;
    let dim = n * n * d;
    let mut images = Vec::with_capacity(dim);
    for r in 0..n {
        for c in 0..n {
            for k in 0..d {
                let mut img = vec![f.zero(); dim];
                // e_{r,c} (x) d_k -> e_{c,r} (x) conj(d_k)
                for (i, coeff) in comp
                    .conjugation
                    .apply(&comp.algebra.basis_element(k).coords)
                    .into_iter()
                    .enumerate()
                {
                    if !coeff.is_zero() {
                        img[idx(c, r, i)] = coeff;
                    }
                }
                images.push(img);
            }
        }
    }
    Involution::from_images(f, images)
}

/// Hermitian matrix algebra H(D_n) for a split composition algebra D under
/// conjugate transposition, with the symmetrized product. Octonion entries
/// only exist at n = 3 (the exceptional 27-dimensional algebra); all other
/// kinds require associativity, which holds for them at every n.
pub fn hermitian_matrix_algebra(
    field: Field,
    kind: CompositionKind,
    n: usize,
) -> Result<Superalgebra, ZooError> {
    if n < 3 {
        return Err(ZooError::Parameter {
            what: alloc::format!("H(D_n) needs n >= 3, got {n}"),
        });
    }
    if kind == CompositionKind::SplitOctonion && n != 3 {
        return Err(ZooError::OctonionDimension { n });
    }
    let comp = composition_algebra(field, kind);
    let ambient = matrix_over_composition(&comp, n);
    if kind.is_associative() {
        debug_assert!(ambient.associativity_witness().is_none());
    }
    let inv = conjugate_transpose(&comp, n);
    let emb = ambient.hermitian_symmetrized(&inv)?;
    let mut alg = emb.algebra;
    alg.name = alloc::format!("H{n}({})", kind.short());
    Ok(alg)
}

/// The associative supermatrix algebra M_{m,n}(F): full (m+n) x (m+n)
/// matrices graded by the block structure.
fn full_matrix_superalgebra(field: Field, m: usize, n: usize) -> Superalgebra {
    let f = field;
    let s = m + n;
    let idx = |r: usize, c: usize| r * s + c;
    let mut t = TableBuilder::new();
    for r in 0..s {
        for c in 0..s {
            for c2 in 0..s {
                t.add(&f, idx(r, c), idx(c, c2), idx(r, c2), f.one());
            }
        }
    }
    let mut parity = Vec::with_capacity(s * s);
    let mut labels = Vec::with_capacity(s * s);
    for r in 0..s {
        for c in 0..s {
            let odd = (r < m) != (c < m);
            parity.push(if odd { Parity::Odd } else { Parity::Even });
            labels.push(alloc::format!("e{},{}", r + 1, c + 1));
        }
    }
    Superalgebra::new(alloc::format!("M({m},{n})"), f, parity, labels, t).unwrap()
}

/// Q(n) inside M_{2n}(F): even part Delta_{i,j} = e_{i,j} + e_{n+i,n+j},
/// odd part Delta^{i,j} = e_{n+i,j} + e_{i,n+j}. Products close on the
/// Delta basis.
fn q_superalgebra(field: Field, n: usize) -> Superalgebra {
    let f = field;
    let even = |i: usize, j: usize| i * n + j;
    let odd = |i: usize, j: usize| n * n + i * n + j;
    let mut t = TableBuilder::new();
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                // D_ij D_jl = D_il ; D_ij D^jl = D^il ; D^ij D_jl = D^il ;
                // D^ij D^jl = D_il.
                t.add(&f, even(i, j), even(j, l), even(i, l), f.one());
                t.add(&f, even(i, j), odd(j, l), odd(i, l), f.one());
                t.add(&f, odd(i, j), even(j, l), odd(i, l), f.one());
                t.add(&f, odd(i, j), odd(j, l), even(i, l), f.one());
            }
        }
    }
    let mut parity = vec![Parity::Even; n * n];
    parity.extend(vec![Parity::Odd; n * n]);
    let mut labels = Vec::with_capacity(2 * n * n);
    for i in 0..n {
        for j in 0..n {
            labels.push(alloc::format!("D{},{}", i + 1, j + 1));
        }
    }
    for i in 0..n {
        for j in 0..n {
            labels.push(alloc::format!("D^{},{}", i + 1, j + 1));
        }
    }
    Superalgebra::new(alloc::format!("Q({n})assoc"), f, parity, labels, t).unwrap()
}

/// The orthosymplectic superinvolution on M_{n,2m}(F):
/// X -> S^-1 X' S where X' = [[A^T, -C^T], [B^T, D^T]] and S = diag(E_n, Q),
/// Q = [[0, E_m], [-E_m, 0]]. Its fixed space is osp(n,m): A symmetric,
/// C = Q^-1 B^T, D = Q^-1 D^T Q.
fn osp_involution(field: Field, n: usize, m: usize) -> Involution {
    let f = field;
    let s = n + 2 * m;
    // S as (position, coefficient) per row; S^-1 per column.
    let s_row = |t: usize| -> (usize, i64) {
        if t < n {
            (t, 1)
        } else {
            let a = t - n;
            if a < m {
                (n + a + m, 1)
            } else {
                (n + a - m, -1)
            }
        }
    };
    let sinv_col = |t: usize| -> (usize, i64) {
        // Nonzero row of column t in S^-1 = diag(E_n, -Q).
        if t < n {
            (t, 1)
        } else {
            let b = t - n;
            if b < m {
                (n + b + m, 1)
            } else {
                (n + b - m, -1)
            }
        }
    };
    let mut images = Vec::with_capacity(s * s);
    for r in 0..s {
        for c in 0..s {
            // st'(e_{r,c}) = sign * e_{c,r}; C-block picks up the minus.
            let sign0 = if r >= n && c < n { -1i64 } else { 1 };
            let (x, sx) = sinv_col(c);
            let (y, sy) = s_row(r);
            let mut img = vec![f.zero(); s * s];
            img[x * s + y] = f.from_i64(sign0 * sx * sy);
            images.push(img);
        }
    }
    Involution::from_images(f, images)
}

/// The transposition superinvolution on M_{n,n}(F):
/// [[A, B], [C, D]] -> [[D^T, -B^T], [C^T, A^T]]; fixed space is P(n).
fn p_involution(field: Field, n: usize) -> Involution {
    let f = field;
    let s = 2 * n;
    let mut images = Vec::with_capacity(s * s);
    for r in 0..s {
        for c in 0..s {
            let mut img = vec![f.zero(); s * s];
            let (rr, cc, sign) = match (r < n, c < n) {
                (true, true) => (n + c, n + r, 1),   // A -> A^T in the D slot
                (true, false) => (c - n, n + r, -1), // B -> -B^T stays top-right
                (false, true) => (n + c, r - n, 1),  // C -> C^T stays bottom-left
                (false, false) => (c - n, r - n, 1), // D -> D^T in the A slot
            };
            img[rr * s + cc] = f.from_i64(sign);
            images.push(img);
        }
    }
    Involution::from_images(f, images)
}

/// Plain bilinear-form algebra J(V,f): F1 + V with v w = f(v,w) 1 and the
/// orthonormal symmetric form. Simple for d >= 2.
fn bilinear_form_algebra(field: Field, d: usize) -> Result<Superalgebra, ZooError> {
    if d < 2 {
        return Err(ZooError::Parameter {
            what: alloc::format!("J(V,f) is simple only for dim V > 1, got {d}"),
        });
    }
    let f = field;
    let mut t = TableBuilder::new();
    t.add(&f, 0, 0, 0, f.one());
    let mut labels = vec![String::from("e")];
    for i in 1..=d {
        t.add(&f, 0, i, i, f.one());
        t.add(&f, i, 0, i, f.one());
        t.add(&f, i, i, 0, f.one());
        labels.push(alloc::format!("v{i}"));
    }
    Ok(Superalgebra::new(
        alloc::format!("J(V,f) d={d}"),
        f,
        vec![Parity::Even; d + 1],
        labels,
        t,
    )?)
}

/// Superform algebra J(V,f) with V = V0 + V1: symmetric orthonormal on V0,
/// standard skew pairs on V1 (d1 even and >= 2 for nondegeneracy).
fn super_bilinear_form_algebra(
    field: Field,
    d0: usize,
    d1: usize,
) -> Result<Superalgebra, ZooError> {
    if d1 == 0 || d1 % 2 != 0 {
        return Err(ZooError::Parameter {
            what: alloc::format!("skew part needs even dimension >= 2, got {d1}"),
        });
    }
    let f = field;
    let mut t = TableBuilder::new();
    t.add(&f, 0, 0, 0, f.one());
    let mut labels = vec![String::from("e")];
    let mut parity = vec![Parity::Even];
    for i in 1..=d0 + d1 {
        t.add(&f, 0, i, i, f.one());
        t.add(&f, i, 0, i, f.one());
    }
    for i in 1..=d0 {
        t.add(&f, i, i, 0, f.one());
        labels.push(alloc::format!("v{i}"));
        parity.push(Parity::Even);
    }
    for k in 0..d1 / 2 {
        let a = d0 + 1 + 2 * k;
        let b = a + 1;
        t.add(&f, a, b, 0, f.one());
        t.add(&f, b, a, 0, f.from_i64(-1));
        labels.push(alloc::format!("w{}", 2 * k + 1));
        labels.push(alloc::format!("w{}", 2 * k + 2));
        parity.push(Parity::Odd);
        parity.push(Parity::Odd);
    }
    Ok(Superalgebra::new(
        alloc::format!("J(V,f) super d0={d0} d1={d1}"),
        f,
        parity,
        labels,
        t,
    )?)
}

/// Kaplansky's three-dimensional superalgebra: e^2 = e, ez = z/2,
/// ew = w/2, zw = e (z, w odd). Simple, not unital.
fn kaplansky_k3(field: Field) -> Result<Superalgebra, ZooError> {
    let f = field;
    let half = f.from_ratio(1, 2)?;
    let mut t = TableBuilder::new();
    t.add(&f, 0, 0, 0, f.one());
    for z in [1usize, 2] {
        t.add(&f, 0, z, z, half.clone());
        t.add(&f, z, 0, z, half.clone());
    }
    t.add(&f, 1, 2, 0, f.one());
    t.add(&f, 2, 1, 0, f.from_i64(-1));
    Ok(Superalgebra::new(
        "K3",
        f,
        vec![Parity::Even, Parity::Odd, Parity::Odd],
        vec!["e".into(), "z".into(), "w".into()],
        t,
    )?)
}

/// The one-parameter family D_t, t != 0: two orthogonal idempotents acting
/// by 1/2 on the odd pair x, y with xy = e1 + t e2.
fn d_t(field: Field, t: &Rat) -> Result<Superalgebra, ZooError> {
    if t.is_zero() {
        return Err(ZooError::Parameter {
            what: "D_t needs t != 0".into(),
        });
    }
    let f = field;
    let tval = f.from_rat(t)?;
    if tval.is_zero() {
        // t reduces to zero in GF(p): same degeneration as t = 0.
        return Err(ZooError::Parameter {
            what: alloc::format!("t = {t} vanishes in the field"),
        });
    }
    let half = f.from_ratio(1, 2)?;
    let mut tb = TableBuilder::new();
    tb.add(&f, 0, 0, 0, f.one());
    tb.add(&f, 1, 1, 1, f.one());
    for odd in [2usize, 3] {
        for e in [0usize, 1] {
            tb.add(&f, e, odd, odd, half.clone());
            tb.add(&f, odd, e, odd, half.clone());
        }
    }
    // xy = e1 + t e2; yx = -(e1 + t e2).
    tb.add(&f, 2, 3, 0, f.one());
    tb.add(&f, 2, 3, 1, tval.clone());
    tb.add(&f, 3, 2, 0, f.from_i64(-1));
    tb.add(&f, 3, 2, 1, f.neg(&tval));
    Ok(Superalgebra::new(
        alloc::format!("D_t t={t}"),
        f,
        vec![Parity::Even, Parity::Even, Parity::Odd, Parity::Odd],
        vec!["e1".into(), "e2".into(), "x".into(), "y".into()],
        tb,
    )?)
}

// Basis order of K10: e1 e2 uz uw vz vw z w u v.
const K10_E1: usize = 0;
const K10_E2: usize = 1;
const K10_UZ: usize = 2;
const K10_UW: usize = 3;
const K10_VZ: usize = 4;
const K10_VW: usize = 5;
const K10_Z: usize = 6;
const K10_W: usize = 7;
const K10_U: usize = 8;
const K10_V: usize = 9;

const K10_LABELS: [&str; 10] = ["e1", "e2", "uz", "uw", "vz", "vw", "z", "w", "u", "v"];

fn k10_parity(i: usize) -> Parity {
    if i < 6 {
        Parity::Even
    } else {
        Parity::Odd
    }
}

/// The ten-dimensional Kac superalgebra over characteristic != 2, 3.
///
/// Only part of the multiplication table is written down directly; the
/// rest is generated by closing the listed identities under three signed
/// substitutions (the two skew swaps z <-> w and u <-> v, and the plain
/// simultaneous swap z <-> u, w <-> v), treating each substitution as an
/// algebra automorphism. A product never reached by the closure is zero.
/// Conflicting assignments abort with `ClosureConflict`; the closure below
/// is conflict-free and the resulting table passes supercommutativity and
/// the envelope Jordan check (see the identity test suite).
fn kac_k10(field: Field) -> Result<Superalgebra, ZooError> {
    let p = field.characteristic();
    if p == 3 {
        return Err(ZooError::Characteristic {
            p,
            algebra: "K10".into(),
        });
    }

    type Rhs = Vec<(usize, Rat)>;
    let term = |k: usize, n: i64, d: i64| (k, Rat::from_ratio(n, d));

    // Signed substitutions: index -> (image index, sign).
    let id = |i: usize| (i, 1i64);
    let mut sigma1: Vec<(usize, i64)> = (0..10).map(id).collect(); // z <-> w, skew
    sigma1[K10_Z] = (K10_W, 1);
    sigma1[K10_W] = (K10_Z, -1);
    sigma1[K10_UZ] = (K10_UW, 1);
    sigma1[K10_UW] = (K10_UZ, -1);
    sigma1[K10_VZ] = (K10_VW, 1);
    sigma1[K10_VW] = (K10_VZ, -1);
    let mut sigma2: Vec<(usize, i64)> = (0..10).map(id).collect(); // u <-> v, skew
    sigma2[K10_U] = (K10_V, 1);
    sigma2[K10_V] = (K10_U, -1);
    sigma2[K10_UZ] = (K10_VZ, 1);
    sigma2[K10_VZ] = (K10_UZ, -1);
    sigma2[K10_UW] = (K10_VW, 1);
    sigma2[K10_VW] = (K10_UW, -1);
    let mut sigma3: Vec<(usize, i64)> = (0..10).map(id).collect(); // z <-> u, w <-> v
    sigma3[K10_Z] = (K10_U, 1);
    sigma3[K10_U] = (K10_Z, 1);
    sigma3[K10_W] = (K10_V, 1);
    sigma3[K10_V] = (K10_W, 1);
    sigma3[K10_UZ] = (K10_UZ, -1);
    sigma3[K10_UW] = (K10_VZ, -1);
    sigma3[K10_VZ] = (K10_UW, -1);
    sigma3[K10_VW] = (K10_VW, -1);
    let sigmas = [sigma1, sigma2, sigma3];

    // Seed identities; empty vectors are known-zero products.
    let mut known: BTreeMap<(usize, usize), Rhs> = BTreeMap::new();
    let mut pending: Vec<(usize, usize)> = Vec::new();
    let insert = |known: &mut BTreeMap<(usize, usize), Rhs>,
                  pending: &mut Vec<(usize, usize)>,
                  i: usize,
                  j: usize,
                  mut rhs: Rhs|
     -> Result<(), ZooError> {
        rhs.retain(|(_, c)| !c.is_zero());
        rhs.sort_by_key(|(k, _)| *k);
        match known.get(&(i, j)) {
            Some(old) if *old != rhs => Err(ZooError::ClosureConflict { i, j }),
            Some(_) => Ok(()),
            None => {
                known.insert((i, j), rhs);
                pending.push((i, j));
                Ok(())
            }
        }
    };

    let mut seed = |i: usize, j: usize, rhs: Rhs| -> Result<(), ZooError> {
        // Each seeded identity also implies its supercommuted mirror.
        let sign = k10_parity(i).koszul_sign(k10_parity(j));
        let mirror: Rhs = rhs
            .iter()
            .map(|(k, c)| (*k, if sign < 0 { c.neg() } else { c.clone() }))
            .collect();
        insert(&mut known, &mut pending, i, j, rhs)?;
        insert(&mut known, &mut pending, j, i, mirror)
    };

    seed(K10_E1, K10_E1, vec![term(K10_E1, 1, 1)])?;
    seed(K10_E2, K10_E2, vec![term(K10_E2, 1, 1)])?;
    seed(K10_E1, K10_E2, vec![])?;
    for m in [K10_Z, K10_W, K10_U, K10_V] {
        seed(K10_E1, m, vec![term(m, 1, 2)])?;
        seed(K10_E2, m, vec![term(m, 1, 2)])?;
    }
    for a in [K10_UZ, K10_UW, K10_VZ, K10_VW] {
        seed(K10_E1, a, vec![term(a, 1, 1)])?; // e1 is unity in A1
        seed(K10_E2, a, vec![])?; // A1 A2 = 0
    }
    seed(K10_Z, K10_W, vec![term(K10_E1, 1, 1), term(K10_E2, -3, 1)])?;
    seed(K10_U, K10_Z, vec![term(K10_UZ, 1, 1)])?;
    seed(K10_U, K10_W, vec![term(K10_UW, 1, 1)])?;
    seed(K10_V, K10_Z, vec![term(K10_VZ, 1, 1)])?;
    seed(K10_V, K10_W, vec![term(K10_VW, 1, 1)])?;
    seed(K10_UZ, K10_W, vec![term(K10_U, -1, 1)])?;
    seed(K10_VZ, K10_W, vec![term(K10_V, -1, 1)])?;
    seed(K10_UZ, K10_VW, vec![term(K10_E1, 2, 1)])?;

    // Closure under the three substitutions, propagating supercommuted
    // mirrors as well.
    while let Some((i, j)) = pending.pop() {
        let rhs = known.get(&(i, j)).cloned().unwrap();
        for sigma in &sigmas {
            let (i2, si) = sigma[i];
            let (j2, sj) = sigma[j];
            let s = si * sj;
            let mapped: Rhs = rhs
                .iter()
                .map(|(k, c)| {
                    let (k2, sk) = sigma[*k];
                    let c = if s * sk < 0 { c.neg() } else { c.clone() };
                    (k2, c)
                })
                .collect();
            insert(&mut known, &mut pending, i2, j2, mapped.clone())?;
            let sign = k10_parity(i2).koszul_sign(k10_parity(j2));
            let mirror: Rhs = mapped
                .iter()
                .map(|(k, c)| (*k, if sign < 0 { c.neg() } else { c.clone() }))
                .collect();
            insert(&mut known, &mut pending, j2, i2, mirror)?;
        }
    }

    let f = field;
    let mut t = TableBuilder::new();
    for ((i, j), rhs) in &known {
        for (k, c) in rhs {
            t.add(&f, *i, *j, *k, f.from_rat(c)?);
        }
    }
    Ok(Superalgebra::new(
        "K10",
        f,
        (0..10).map(k10_parity).collect(),
        K10_LABELS.iter().map(|s| String::from(*s)).collect(),
        t,
    )?)
}

/// Everything the zoo can build, with its parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum ZooSpec {
    /// F * 1.
    Scalar,
    /// J(V,f), dim V = d >= 2.
    BilinearForm {
        d: usize,
    },
    /// H(D_n) over a split composition algebra.
    Hermitian {
        kind: CompositionKind,
        n: usize,
    },
    /// Superform algebra, dim V0 = d0, dim V1 = d1 (even, >= 2).
    SuperBilinearForm {
        d0: usize,
        d1: usize,
    },
    /// M(m,n)+.
    FullMatrixSuper {
        m: usize,
        n: usize,
    },
    /// Q(n)+, n >= 2.
    QSuper {
        n: usize,
    },
    /// osp(n,m), n, m >= 1.
    Osp {
        n: usize,
        m: usize,
    },
    /// P(n), n >= 2.
    PSuper {
        n: usize,
    },
    KaplanskyK3,
    /// D_t, t != 0.
    Dt {
        t: Rat,
    },
    KacK10,
    /// J(Gamma_n), n >= 2.
    JGamma {
        n: usize,
    },
}

impl ZooSpec {
    /// Canonical CLI name, e.g. `Dt?t=1/2` or `H3(O)`.
    pub fn cli_name(&self) -> String {
        match self {
            ZooSpec::Scalar => "F1".into(),
            ZooSpec::BilinearForm { d } => alloc::format!("J(V,f)?d={d}"),
            ZooSpec::Hermitian { kind, n } => alloc::format!("H{n}({})", kind.short()),
            ZooSpec::SuperBilinearForm { d0, d1 } => {
                alloc::format!("J(V,f)super?d0={d0}&d1={d1}")
            }
            ZooSpec::FullMatrixSuper { m, n } => alloc::format!("M({m},{n})+"),
            ZooSpec::QSuper { n } => alloc::format!("Q({n})+"),
            ZooSpec::Osp { n, m } => alloc::format!("osp({n},{m})"),
            ZooSpec::PSuper { n } => alloc::format!("P({n})"),
            ZooSpec::KaplanskyK3 => "K3".into(),
            ZooSpec::Dt { t } => alloc::format!("Dt?t={t}"),
            ZooSpec::KacK10 => "K10".into(),
            ZooSpec::JGamma { n } => alloc::format!("JGamma?n={n}"),
        }
    }
}

/// Builds the algebra described by the spec over the given field. The
/// output table is grading-validated, its unit situation is confirmed by
/// `find_unit`, and its name is the canonical CLI name.
pub fn construct(field: Field, spec: &ZooSpec) -> Result<Superalgebra, ZooError> {
    let range = |ok: bool, what: &str| -> Result<(), ZooError> {
        if ok {
            Ok(())
        } else {
            Err(ZooError::Parameter { what: what.into() })
        }
    };
    let mut alg = match spec {
        ZooSpec::Scalar => {
            let mut t = TableBuilder::new();
            t.add(&field, 0, 0, 0, field.one());
            Superalgebra::new("F1", field, vec![Parity::Even], vec!["e".into()], t)?
        }
        ZooSpec::BilinearForm { d } => bilinear_form_algebra(field, *d)?,
        ZooSpec::Hermitian { kind, n } => hermitian_matrix_algebra(field, *kind, *n)?,
        ZooSpec::SuperBilinearForm { d0, d1 } => super_bilinear_form_algebra(field, *d0, *d1)?,
        ZooSpec::FullMatrixSuper { m, n } => {
            range(*m >= 1 && *n >= 1, "M(m,n)+ needs m, n >= 1")?;
            full_matrix_superalgebra(field, *m, *n).plus_construction()?
        }
        ZooSpec::QSuper { n } => {
            range(*n >= 2, "Q(n)+ needs n >= 2")?;
            q_superalgebra(field, *n).plus_construction()?
        }
        ZooSpec::Osp { n, m } => {
            range(*n >= 1 && *m >= 1, "osp(n,m) needs n, m >= 1")?;
            let ambient = full_matrix_superalgebra(field, *n, 2 * m);
            let inv = osp_involution(field, *n, *m);
            ambient.hermitian_subalgebra(&inv)?.algebra
        }
        ZooSpec::PSuper { n } => {
            range(*n >= 2, "P(n) needs n >= 2")?;
            let ambient = full_matrix_superalgebra(field, *n, *n);
            let inv = p_involution(field, *n);
            ambient.hermitian_subalgebra(&inv)?.algebra
        }
        ZooSpec::KaplanskyK3 => kaplansky_k3(field)?,
        ZooSpec::Dt { t } => d_t(field, t)?,
        ZooSpec::KacK10 => kac_k10(field)?,
        ZooSpec::JGamma { n } => grassmann::j_gamma(field, *n)?,
    };
    alg.name = spec.cli_name();

    // Unit detection never trusts the constructor.
    let unit = alg.find_unit();
    let expect_unit = !matches!(spec, ZooSpec::KaplanskyK3);
    assert_eq!(
        unit.is_some(),
        expect_unit,
        "unit detection disagrees for {}",
        alg.name
    );
    Ok(alg)
}

/// The embeddings of osp(n,m) and P(n) into their ambient supermatrix
/// algebras; the counterexample maps in the test suites are written in
/// ambient matrix units and carried through this.
pub fn construct_embedded(field: Field, spec: &ZooSpec) -> Result<SubalgebraEmbedding, ZooError> {
    match spec {
        ZooSpec::Osp { n, m } => {
            let ambient = full_matrix_superalgebra(field, *n, 2 * m);
            let inv = osp_involution(field, *n, *m);
            Ok(ambient.hermitian_subalgebra(&inv)?)
        }
        ZooSpec::PSuper { n } => {
            let ambient = full_matrix_superalgebra(field, *n, *n);
            let inv = p_involution(field, *n);
            Ok(ambient.hermitian_subalgebra(&inv)?)
        }
        _ => Err(ZooError::Parameter {
            what: "embedding only provided for osp(n,m) and P(n)".into(),
        }),
    }
}

/// One row of the default catalog.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub spec: ZooSpec,
    pub name: String,
    pub dim: usize,
    pub unital: bool,
    pub note: &'static str,
}

/// The deterministic desk-scale catalog: every family at its default
/// parameters, in a fixed order. Dimensions and unit flags are computed,
/// not hard-coded.
pub fn catalog(field: Field) -> Result<Vec<(CatalogEntry, Superalgebra)>, ZooError> {
    let specs: Vec<(ZooSpec, &'static str)> = vec![
        (ZooSpec::Scalar, "ground field"),
        (
            ZooSpec::BilinearForm { d: 2 },
            "bilinear form, simple (dim V > 1)",
        ),
        (
            ZooSpec::BilinearForm { d: 3 },
            "bilinear form, simple (dim V > 1)",
        ),
        (
            ZooSpec::Hermitian {
                kind: CompositionKind::GroundField,
                n: 3,
            },
            "symmetric 3x3",
        ),
        (
            ZooSpec::Hermitian {
                kind: CompositionKind::SplitQuaternion,
                n: 3,
            },
            "hermitian over split quaternions",
        ),
        (
            ZooSpec::Hermitian {
                kind: CompositionKind::GroundField,
                n: 4,
            },
            "symmetric 4x4",
        ),
        (
            ZooSpec::Hermitian {
                kind: CompositionKind::SplitOctonion,
                n: 3,
            },
            "exceptional, dim 27",
        ),
        (
            ZooSpec::FullMatrixSuper { m: 1, n: 1 },
            "matrix superalgebra",
        ),
        (
            ZooSpec::FullMatrixSuper { m: 1, n: 2 },
            "matrix superalgebra",
        ),
        (ZooSpec::QSuper { n: 2 }, "queer matrix superalgebra"),
        (ZooSpec::Osp { n: 1, m: 1 }, "orthosymplectic"),
        (ZooSpec::Osp { n: 2, m: 1 }, "orthosymplectic"),
        (ZooSpec::PSuper { n: 2 }, "strange series"),
        (ZooSpec::SuperBilinearForm { d0: 2, d1: 2 }, "superform"),
        (
            ZooSpec::JGamma { n: 2 },
            "Grassmann-based, simple for n >= 2",
        ),
        (
            ZooSpec::JGamma { n: 3 },
            "Grassmann-based, simple for n >= 2",
        ),
        (ZooSpec::KaplanskyK3, "simple, not unital"),
        (
            ZooSpec::Dt {
                t: Rat::from_i64(1),
            },
            "one-parameter family, t != 0",
        ),
        (
            ZooSpec::Dt {
                t: Rat::from_i64(-1),
            },
            "one-parameter family, t != 0",
        ),
        (
            ZooSpec::Dt {
                t: Rat::from_ratio(1, 2),
            },
            "one-parameter family, t != 0",
        ),
        (
            ZooSpec::Dt {
                t: Rat::from_i64(2),
            },
            "one-parameter family, t != 0",
        ),
        (ZooSpec::KacK10, "Kac superalgebra, char != 2, 3"),
    ];
    let mut out = Vec::with_capacity(specs.len());
    for (spec, note) in specs {
        let alg = construct(field, &spec)?;
        let entry = CatalogEntry {
            name: spec.cli_name(),
            dim: alg.dim(),
            unital: alg.find_unit().is_some(),
            note,
            spec,
        };
        out.push((entry, alg));
    }
    Ok(out)
}
