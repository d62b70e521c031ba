//! Structure-constant superalgebras.
//!
//! A [`Superalgebra`] is a finite-dimensional Z2-graded algebra given by a
//! sparse structure-constant table: `c[i][j][k]` is the coefficient of
//! basis k in the product of basis i and basis j. A plain (ungraded)
//! algebra is the special case where every basis element is even. The table
//! is validated for parity homogeneity at construction and never mutated
//! afterwards, so values can be shared freely across threads.

use crate::field::{Field, FieldError, Scalar};
use crate::matrix::{self, Mat};
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::sync::atomic::{AtomicU64, Ordering};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn xor(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// Koszul sign (-1)^(p(a)p(b)) as +-1.
    pub fn koszul_sign(self, other: Parity) -> i64 {
        if self.is_odd() && other.is_odd() {
            -1
        } else {
            1
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    /// `c[i][j][k] != 0` but `parity(k) != parity(i) xor parity(j)`.
    GradingViolation {
        i: usize,
        j: usize,
        k: usize,
    },
    /// Elements of different algebras combined.
    AlgebraMismatch,
    /// Direct sum of algebras over different fields.
    FieldMismatch,
    /// Coordinate vector length does not match the dimension.
    DimensionMismatch {
        expected: usize,
        got: usize,
    },
    /// Witness triple where (ab)c != a(bc).
    NotAssociative {
        i: usize,
        j: usize,
        k: usize,
    },
    /// The map does not square to the identity.
    NotInvolution,
    /// The map does not preserve the grading.
    NotGraded {
        basis: usize,
    },
    /// Witness pair where j(ab) != (-1)^(p(a)p(b)) j(b) j(a).
    NotSuperinvolution {
        i: usize,
        j: usize,
    },
    /// Witness pair whose product leaves the fixed space.
    NotClosedUnderProduct {
        i: usize,
        j: usize,
    },
    Field(FieldError),
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::GradingViolation { i, j, k } => {
                write!(
                    f,
                    "grading violation: product of {i} and {j} hits {k} across parities"
                )
            }
            AlgebraError::AlgebraMismatch => write!(f, "elements belong to different algebras"),
            AlgebraError::FieldMismatch => write!(f, "algebras over different fields"),
            AlgebraError::DimensionMismatch { expected, got } => {
                write!(f, "expected {expected} coordinates, got {got}")
            }
            AlgebraError::NotAssociative { i, j, k } => {
                write!(f, "not associative: witness triple ({i}, {j}, {k})")
            }
            AlgebraError::NotInvolution => write!(f, "map does not square to the identity"),
            AlgebraError::NotGraded { basis } => {
                write!(f, "map mixes parities on basis element {basis}")
            }
            AlgebraError::NotSuperinvolution { i, j } => {
                write!(f, "superinvolution law fails on basis pair ({i}, {j})")
            }
            AlgebraError::NotClosedUnderProduct { i, j } => {
                write!(
                    f,
                    "fixed space not closed under the product: witness pair ({i}, {j})"
                )
            }
            AlgebraError::Field(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for AlgebraError {}

impl From<FieldError> for AlgebraError {
    fn from(e: FieldError) -> Self {
        AlgebraError::Field(e)
    }
}

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// Accumulating builder for sparse structure-constant tables.
#[derive(Debug, Clone, Default)]
pub struct TableBuilder {
    terms: BTreeMap<(u32, u32), BTreeMap<u32, Scalar>>,
}

impl TableBuilder {
    pub fn new() -> TableBuilder {
        TableBuilder {
            terms: BTreeMap::new(),
        }
    }

    /// Adds `c` to the coefficient of basis `k` in the product `b_i b_j`.
    pub fn add(&mut self, field: &Field, i: usize, j: usize, k: usize, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self
            .terms
            .entry((i as u32, j as u32))
            .or_default()
            .entry(k as u32);
        match slot {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = field.add(o.get(), &c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn set_product(&mut self, i: usize, j: usize, terms: &[(usize, Scalar)]) {
        let mut m = BTreeMap::new();
        for (k, c) in terms {
            if !c.is_zero() {
                m.insert(*k as u32, c.clone());
            }
        }
        if m.is_empty() {
            self.terms.remove(&(i as u32, j as u32));
        } else {
            self.terms.insert((i as u32, j as u32), m);
        }
    }

    fn into_table(self) -> BTreeMap<(u32, u32), Vec<(u32, Scalar)>> {
        self.terms
            .into_iter()
            .filter(|(_, m)| !m.is_empty())
            .map(|(k, m)| (k, m.into_iter().collect()))
            .collect()
    }
}

/// A finite-dimensional superalgebra with an exact structure-constant
/// table. Immutable after construction.
#[derive(Debug, Clone)]
pub struct Superalgebra {
    id: u64,
    pub name: String,
    pub field: Field,
    dim: usize,
    parity: Vec<Parity>,
    labels: Vec<String>,
    table: BTreeMap<(u32, u32), Vec<(u32, Scalar)>>,
    /// Direct-sum block sizes; a plain algebra is its own single block.
    summands: Vec<usize>,
}

impl PartialEq for Superalgebra {
    /// Structural equality: field, dimension, grading, labels and table.
    /// The internal instance id and the display name do not matter.
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.dim == other.dim
            && self.parity == other.parity
            && self.labels == other.labels
            && self.table == other.table
    }
}

const EMPTY_PRODUCT: &[(u32, Scalar)] = &[];

impl Superalgebra {
    /// Validates and builds an algebra from its structure constants.
    /// Rejects parity-inhomogeneous tables.
    pub fn new(
        name: impl Into<String>,
        field: Field,
        parity: Vec<Parity>,
        labels: Vec<String>,
        builder: TableBuilder,
    ) -> Result<Superalgebra, AlgebraError> {
        let dim = parity.len();
        assert_eq!(labels.len(), dim, "one label per basis element");
        let table = builder.into_table();
        for (&(i, j), terms) in &table {
            assert!(
                (i as usize) < dim && (j as usize) < dim,
                "index out of range"
            );
            let want = parity[i as usize].xor(parity[j as usize]);
            for (k, c) in terms {
                assert!((*k as usize) < dim, "index out of range");
                debug_assert!(!c.is_zero());
                if parity[*k as usize] != want {
                    return Err(AlgebraError::GradingViolation {
                        i: i as usize,
                        j: j as usize,
                        k: *k as usize,
                    });
                }
            }
        }
        Ok(Superalgebra {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            name: name.into(),
            field,
            dim,
            parity,
            labels,
            table,
            summands: vec![dim],
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parity[i]
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parity
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn summands(&self) -> &[usize] {
        &self.summands
    }

    pub fn is_plain(&self) -> bool {
        self.parity.iter().all(|p| *p == Parity::Even)
    }

    pub fn even_dim(&self) -> usize {
        self.parity.iter().filter(|p| !p.is_odd()).count()
    }

    pub fn odd_dim(&self) -> usize {
        self.dim - self.even_dim()
    }

    /// Raw sparse product of two basis elements.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(u32, Scalar)] {
        self.table
            .get(&(i as u32, j as u32))
            .map_or(EMPTY_PRODUCT, Vec::as_slice)
    }

    pub fn table(&self) -> &BTreeMap<(u32, u32), Vec<(u32, Scalar)>> {
        &self.table
    }

    /// Dense (i,j)-indexed view of the table for hot loops.
    pub fn dense_table(&self) -> DenseTable<'_> {
        let mut entries = vec![EMPTY_PRODUCT; self.dim * self.dim];
        for (&(i, j), terms) in &self.table {
            entries[i as usize * self.dim + j as usize] = terms.as_slice();
        }
        DenseTable {
            dim: self.dim,
            entries,
        }
    }

    pub fn zero_element(&self) -> Element {
        Element {
            algebra_id: self.id,
            coords: vec![self.field.zero(); self.dim],
        }
    }

    pub fn basis_element(&self, i: usize) -> Element {
        let mut e = self.zero_element();
        e.coords[i] = self.field.one();
        e
    }

    pub fn element(&self, coords: Vec<Scalar>) -> Result<Element, AlgebraError> {
        if coords.len() != self.dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim,
                got: coords.len(),
            });
        }
        Ok(Element {
            algebra_id: self.id,
            coords,
        })
    }

    /// Element from integer basis coefficients.
    pub fn element_from_i64(&self, coords: &[i64]) -> Element {
        assert_eq!(coords.len(), self.dim);
        Element {
            algebra_id: self.id,
            coords: coords.iter().map(|&v| self.field.from_i64(v)).collect(),
        }
    }

    fn check_owned(&self, a: &Element) -> Result<(), AlgebraError> {
        if a.algebra_id != self.id {
            return Err(AlgebraError::AlgebraMismatch);
        }
        Ok(())
    }

    pub fn add(&self, a: &Element, b: &Element) -> Result<Element, AlgebraError> {
        self.check_owned(a)?;
        self.check_owned(b)?;
        Ok(Element {
            algebra_id: self.id,
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .map(|(x, y)| self.field.add(x, y))
                .collect(),
        })
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Result<Element, AlgebraError> {
        self.check_owned(a)?;
        self.check_owned(b)?;
        Ok(Element {
            algebra_id: self.id,
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .map(|(x, y)| self.field.sub(x, y))
                .collect(),
        })
    }

    pub fn scale(&self, c: &Scalar, a: &Element) -> Result<Element, AlgebraError> {
        self.check_owned(a)?;
        Ok(Element {
            algebra_id: self.id,
            coords: a.coords.iter().map(|x| self.field.mul(c, x)).collect(),
        })
    }

    /// Bilinear extension of the structure constants.
    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element, AlgebraError> {
        self.check_owned(a)?;
        self.check_owned(b)?;
        let f = &self.field;
        let mut out = vec![f.zero(); self.dim];
        for (i, ca) in a.coords.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.coords.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let cab = f.mul(ca, cb);
                for (k, c) in self.basis_product(i, j) {
                    out[*k as usize] = f.add(&out[*k as usize], &f.mul(&cab, c));
                }
            }
        }
        Ok(Element {
            algebra_id: self.id,
            coords: out,
        })
    }

    /// Block-diagonal direct sum; cross products vanish and labels are
    /// prefixed by the (flattened) summand index.
    pub fn direct_sum(&self, other: &Superalgebra) -> Result<Superalgebra, AlgebraError> {
        if self.field != other.field {
            return Err(AlgebraError::FieldMismatch);
        }
        let dim = self.dim + other.dim;
        let mut parity = self.parity.clone();
        parity.extend_from_slice(&other.parity);

        let summands: Vec<usize> = self
            .summands
            .iter()
            .chain(&other.summands)
            .copied()
            .collect();
        // Relabel by flattened block number.
        let mut labels = Vec::with_capacity(dim);
        let mut block = 0usize;
        let mut remaining = 0usize;
        let all_labels = self.labels.iter().chain(&other.labels);
        for lab in all_labels {
            if remaining == 0 {
                remaining = summands[block];
                block += 1;
            }
            remaining -= 1;
            let base = strip_block_prefix(lab);
            labels.push(alloc::format!("{block}:{base}"));
        }

        let mut builder = TableBuilder::new();
        for (&(i, j), terms) in &self.table {
            builder.set_product(
                i as usize,
                j as usize,
                &terms
                    .iter()
                    .map(|(k, c)| (*k as usize, c.clone()))
                    .collect::<Vec<_>>(),
            );
        }
        let off = self.dim;
        for (&(i, j), terms) in &other.table {
            builder.set_product(
                i as usize + off,
                j as usize + off,
                &terms
                    .iter()
                    .map(|(k, c)| (*k as usize + off, c.clone()))
                    .collect::<Vec<_>>(),
            );
        }
        let mut alg = Superalgebra::new(
            alloc::format!("{} (+) {}", self.name, other.name),
            self.field,
            parity,
            labels,
            builder,
        )?;
        alg.summands = summands;
        Ok(alg)
    }

    /// The two-sided unit, found by solving `e b_i = b_i = b_i e` exactly.
    /// Absence is a valid answer.
    pub fn find_unit(&self) -> Option<Element> {
        let f = self.field;
        let n = self.dim;
        // Unknowns: coordinates of e. Equations, for each (i, k):
        //   sum_m e_m c[m][i][k] = delta_ik   and   sum_m e_m c[i][m][k] = delta_ik.
        let mut a = Mat::zero(f, 2 * n * n, n);
        let mut b = vec![f.zero(); 2 * n * n];
        for m in 0..n {
            for i in 0..n {
                for (k, c) in self.basis_product(m, i) {
                    let r = i * n + *k as usize;
                    *a.at_mut(r, m) = f.add(a.at(r, m), c);
                }
                for (k, c) in self.basis_product(i, m) {
                    let r = n * n + i * n + *k as usize;
                    *a.at_mut(r, m) = f.add(a.at(r, m), c);
                }
            }
        }
        for i in 0..n {
            b[i * n + i] = f.one();
            b[n * n + i * n + i] = f.one();
        }
        let (x, _) = matrix::solve(f, &a, &b).ok()??;
        let e = Element {
            algebra_id: self.id,
            coords: x,
        };
        // Exact confirmation against the multiplication itself.
        for i in 0..n {
            let bi = self.basis_element(i);
            if self.multiply(&e, &bi).ok()? != bi || self.multiply(&bi, &e).ok()? != bi {
                return None;
            }
        }
        Some(e)
    }

    /// Row-reduced basis of the span of all pairwise basis products.
    pub fn square_span(&self) -> Vec<Vec<Scalar>> {
        let vectors: Vec<Vec<Scalar>> = self
            .table
            .values()
            .map(|terms| {
                let mut v = vec![self.field.zero(); self.dim];
                for (k, c) in terms {
                    v[*k as usize] = c.clone();
                }
                v
            })
            .collect();
        matrix::span_basis(self.field, &vectors, self.dim)
    }

    /// Witness triple where associativity fails, or None if the table is
    /// associative on all basis triples (hence everywhere, by linearity).
    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ij = self
                    .multiply(&self.basis_element(i), &self.basis_element(j))
                    .unwrap();
                for k in 0..self.dim {
                    let left = self.multiply(&ij, &self.basis_element(k)).unwrap();
                    let jk = self
                        .multiply(&self.basis_element(j), &self.basis_element(k))
                        .unwrap();
                    let right = self.multiply(&self.basis_element(i), &jk).unwrap();
                    if left != right {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Symmetrized product on the same space:
    /// `a o b = 1/2 (ab + (-1)^(p(a)p(b)) ba)` on homogeneous elements.
    /// No associativity gate; see [`Superalgebra::plus_construction`].
    pub fn symmetrized(&self) -> Result<Superalgebra, AlgebraError> {
        let f = self.field;
        let half = f.from_ratio(1, 2)?;
        let mut builder = TableBuilder::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let sign = self.parity[i].koszul_sign(self.parity[j]);
                for (k, c) in self.basis_product(i, j) {
                    builder.add(&f, i, j, *k as usize, f.mul(&half, c));
                }
                for (k, c) in self.basis_product(j, i) {
                    let t = f.mul(&half, c);
                    let t = if sign < 0 { f.neg(&t) } else { t };
                    builder.add(&f, i, j, *k as usize, t);
                }
            }
        }
        Superalgebra::new(
            alloc::format!("{}^+", self.name),
            f,
            self.parity.clone(),
            self.labels.clone(),
            builder,
        )
    }

    /// The Jordan superalgebra `A^+` of an associative superalgebra.
    /// Associativity is checked exhaustively on basis triples first.
    pub fn plus_construction(&self) -> Result<Superalgebra, AlgebraError> {
        if let Some((i, j, k)) = self.associativity_witness() {
            return Err(AlgebraError::NotAssociative { i, j, k });
        }
        self.symmetrized()
    }

    /// Fixed-point subalgebra `H(A, j)` of a superinvolution of an
    /// associative superalgebra, carried inside `A^+`. The adapted basis
    /// lists even generators first, then odd.
    pub fn hermitian_subalgebra(
        &self,
        inv: &Involution,
    ) -> Result<SubalgebraEmbedding, AlgebraError> {
        if let Some((i, j, k)) = self.associativity_witness() {
            return Err(AlgebraError::NotAssociative { i, j, k });
        }
        self.hermitian_symmetrized(inv)
    }

    /// Fixed points of an involutive anti-automorphism inside the
    /// symmetrized product, without demanding associativity of the ambient
    /// algebra. Hermitian 3x3 matrices over the octonions need this route:
    /// their ambient matrix algebra is not associative, yet the fixed
    /// space of conjugate transposition closes under the symmetrized
    /// product.
    pub fn hermitian_symmetrized(
        &self,
        inv: &Involution,
    ) -> Result<SubalgebraEmbedding, AlgebraError> {
        inv.check_involution(self)?;
        inv.check_superinvolution_law(self)?;
        let plus = self.symmetrized()?;
        fixed_subalgebra(&plus, inv)
    }
}

fn strip_block_prefix(label: &str) -> &str {
    if let Some((head, rest)) = label.split_once(':') {
        if !head.is_empty() && head.bytes().all(|b| b.is_ascii_digit()) {
            return rest;
        }
    }
    label
}

/// Dense product lookup borrowed from an algebra.
pub struct DenseTable<'a> {
    dim: usize,
    entries: Vec<&'a [(u32, Scalar)]>,
}

impl<'a> DenseTable<'a> {
    #[inline]
    pub fn product(&self, i: usize, j: usize) -> &'a [(u32, Scalar)] {
        self.entries[i * self.dim + j]
    }
}

/// Exact coefficient vector tagged with the algebra it belongs to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    algebra_id: u64,
    pub coords: Vec<Scalar>,
}

impl Element {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    /// Support restricted to one parity, as a new element of the same
    /// algebra.
    pub fn parity_component(&self, alg: &Superalgebra, p: Parity) -> Element {
        let coords = self
            .coords
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if alg.parity(i) == p {
                    c.clone()
                } else {
                    alg.field.zero()
                }
            })
            .collect();
        Element {
            algebra_id: self.algebra_id,
            coords,
        }
    }

    /// Human-readable combination of basis labels.
    pub fn describe(&self, alg: &Superalgebra) -> String {
        combo_label(&self.coords, alg.labels())
    }
}

pub(crate) fn combo_label(coords: &[Scalar], labels: &[String]) -> String {
    let mut out = String::new();
    for (i, c) in coords.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !out.is_empty() {
            out.push_str(" + ");
        }
        if c.is_one() {
            out.push_str(&labels[i]);
        } else {
            out.push_str(&alloc::format!("({})*{}", c, labels[i]));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// A linear map j on an algebra, column i = image of basis i. Candidate
/// (super)involution for the hermitian construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Involution {
    pub matrix: Mat,
}

impl Involution {
    /// Build from basis images.
    pub fn from_images(field: Field, images: Vec<Vec<Scalar>>) -> Involution {
        let n = images.len();
        let mut m = Mat::zero(field, n, n);
        for (j, img) in images.iter().enumerate() {
            assert_eq!(img.len(), n);
            for (i, c) in img.iter().enumerate() {
                *m.at_mut(i, j) = c.clone();
            }
        }
        Involution { matrix: m }
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.apply(v)
    }

    fn check_involution(&self, alg: &Superalgebra) -> Result<(), AlgebraError> {
        if self.matrix.rows != alg.dim() || self.matrix.cols != alg.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: alg.dim(),
                got: self.matrix.rows,
            });
        }
        let sq = self.matrix.mat_mul(&self.matrix);
        if sq != Mat::identity(alg.field, alg.dim()) {
            return Err(AlgebraError::NotInvolution);
        }
        // Graded endomorphism: each basis image stays in its parity.
        for j in 0..alg.dim() {
            for i in 0..alg.dim() {
                if !self.matrix.at(i, j).is_zero() && alg.parity(i) != alg.parity(j) {
                    return Err(AlgebraError::NotGraded { basis: j });
                }
            }
        }
        Ok(())
    }

    fn check_superinvolution_law(&self, alg: &Superalgebra) -> Result<(), AlgebraError> {
        let f = alg.field;
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let prod = alg
                    .multiply(&alg.basis_element(i), &alg.basis_element(j))
                    .unwrap();
                let lhs = self.apply(&prod.coords);
                // (-1)^(p_i p_j) j(b_j) j(b_i)
                let jb_j = alg
                    .element(self.apply(&alg.basis_element(j).coords))
                    .unwrap();
                let jb_i = alg
                    .element(self.apply(&alg.basis_element(i).coords))
                    .unwrap();
                let mut rhs = alg.multiply(&jb_j, &jb_i).unwrap();
                if alg.parity(i).koszul_sign(alg.parity(j)) < 0 {
                    rhs = alg.scale(&f.from_i64(-1), &rhs).unwrap();
                }
                if lhs != rhs.coords {
                    return Err(AlgebraError::NotSuperinvolution { i, j });
                }
            }
        }
        Ok(())
    }
}

/// A subalgebra presented on an adapted basis, together with the inclusion
/// into its ambient algebra.
#[derive(Debug, Clone)]
pub struct SubalgebraEmbedding {
    pub algebra: Superalgebra,
    /// Rows: coordinates of each adapted basis vector in the ambient basis.
    pub basis_in_ambient: Vec<Vec<Scalar>>,
    pivot_cols: Vec<usize>,
    ambient_field: Field,
}

impl SubalgebraEmbedding {
    /// Coordinates of an ambient vector in the adapted basis, if it lies in
    /// the subspace.
    pub fn restrict(&self, ambient: &[Scalar]) -> Option<Vec<Scalar>> {
        let f = self.ambient_field;
        let coords: Vec<Scalar> = self
            .pivot_cols
            .iter()
            .map(|&c| ambient[c].clone())
            .collect();
        // Confirm: ambient == sum coords_k * basis_k.
        let mut residue = ambient.to_vec();
        for (k, row) in self.basis_in_ambient.iter().enumerate() {
            if coords[k].is_zero() {
                continue;
            }
            for (rc, bc) in residue.iter_mut().zip(row) {
                *rc = f.sub(rc, &f.mul(&coords[k], bc));
            }
        }
        residue.iter().all(Scalar::is_zero).then_some(coords)
    }

    /// Ambient coordinates of a subalgebra element.
    pub fn extend(&self, sub: &[Scalar]) -> Vec<Scalar> {
        let f = self.ambient_field;
        let n = self.basis_in_ambient[0].len();
        let mut out = vec![f.zero(); n];
        for (c, row) in sub.iter().zip(&self.basis_in_ambient) {
            if c.is_zero() {
                continue;
            }
            for (o, b) in out.iter_mut().zip(row) {
                *o = f.add(o, &f.mul(c, b));
            }
        }
        out
    }
}

/// Fixed space of a validated involution inside `plus`, recomputed as a
/// standalone algebra on an adapted (even-first) basis.
fn fixed_subalgebra(
    plus: &Superalgebra,
    inv: &Involution,
) -> Result<SubalgebraEmbedding, AlgebraError> {
    let f = plus.field;
    let n = plus.dim();
    let mut basis: Vec<Vec<Scalar>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for want in [Parity::Even, Parity::Odd] {
        let idx: Vec<usize> = (0..n).filter(|&i| plus.parity(i) == want).collect();
        if idx.is_empty() {
            continue;
        }
        // (J - I) restricted to the parity block; J preserves parity.
        let mut m = Mat::zero(f, idx.len(), idx.len());
        for (cj, &j) in idx.iter().enumerate() {
            for (ci, &i) in idx.iter().enumerate() {
                let mut v = inv.matrix.at(i, j).clone();
                if i == j {
                    v = f.sub(&v, &f.one());
                }
                *m.at_mut(ci, cj) = v;
            }
        }
        let piv = m.rref();
        let free: Vec<usize> = (0..idx.len()).filter(|c| !piv.contains(c)).collect();
        for fc in free {
            let mut v = vec![f.zero(); n];
            v[idx[fc]] = f.one();
            for (r, &pc) in piv.iter().enumerate() {
                let c = m.at(r, fc).clone();
                if !c.is_zero() {
                    v[idx[pc]] = f.neg(&c);
                }
            }
            // Leading-one normalization for deterministic output.
            let lead = v.iter().position(|x| !x.is_zero()).unwrap();
            let inv_lead = f.inv(&v[lead]).unwrap();
            for x in &mut v {
                *x = f.mul(x, &inv_lead);
            }
            pivots.push(v.iter().position(|x| !x.is_zero()).unwrap());
            basis.push(v);
        }
    }

    let sub_dim = basis.len();
    let parities: Vec<Parity> = basis
        .iter()
        .map(|v| plus.parity(v.iter().position(|x| !x.is_zero()).unwrap()))
        .collect();
    let labels: Vec<String> = basis
        .iter()
        .map(|v| combo_label(v, plus.labels()))
        .collect();

    // Coordinates in the adapted basis are read off at the pivot columns;
    // sharing the probe with the final embedding keeps one code path.
    let mut embedding = SubalgebraEmbedding {
        algebra: Superalgebra::new("", f, vec![], vec![], TableBuilder::new())?,
        basis_in_ambient: basis,
        pivot_cols: pivots,
        ambient_field: f,
    };

    let mut builder = TableBuilder::new();
    for i in 0..sub_dim {
        let bi = plus.element(embedding.basis_in_ambient[i].clone()).unwrap();
        for j in 0..sub_dim {
            let bj = plus.element(embedding.basis_in_ambient[j].clone()).unwrap();
            let prod = plus.multiply(&bi, &bj).unwrap();
            match embedding.restrict(&prod.coords) {
                Some(coords) => {
                    let terms: Vec<(usize, Scalar)> = coords
                        .into_iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .collect();
                    builder.set_product(i, j, &terms);
                }
                None => return Err(AlgebraError::NotClosedUnderProduct { i, j }),
            }
        }
    }

    embedding.algebra = Superalgebra::new(
        alloc::format!("H({})", plus.name),
        f,
        parities,
        labels,
        builder,
    )?;
    Ok(embedding)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    /// The one-dimensional algebra F*1.
    fn scalar_algebra() -> Superalgebra {
        let mut t = TableBuilder::new();
        t.add(&q(), 0, 0, 0, q().one());
        Superalgebra::new("F1", q(), vec![Parity::Even], vec!["e".into()], t).unwrap()
    }

    use crate::testkit::{k3, m2};

    #[test]
    fn one_dimensional_scalar_algebra() {
        let a = scalar_algebra();
        assert_eq!(a.dim(), 1);
        let e = a.basis_element(0);
        assert_eq!(a.multiply(&e, &e).unwrap(), e);
        assert_eq!(a.find_unit().unwrap(), e);
    }

    #[test]
    fn k3_accepted_and_products() {
        let a = k3(q());
        let z = a.basis_element(1);
        let w = a.basis_element(2);
        let e = a.basis_element(0);
        assert_eq!(a.multiply(&z, &w).unwrap(), e);
        let wz = a.multiply(&w, &z).unwrap();
        assert_eq!(wz, a.scale(&q().from_i64(-1), &e).unwrap());
        assert!(a.find_unit().is_none());
        // A^2 is everything: e, z = 2ez, w = 2ew, e = zw.
        assert_eq!(a.square_span().len(), 3);
    }

    #[test]
    fn grading_violation_witnessed() {
        let field = q();
        let mut t = TableBuilder::new();
        t.add(&field, 1, 2, 0, field.one()); // z(even) * w(odd) -> e(even)
        let err = Superalgebra::new(
            "bad",
            field,
            vec![Parity::Even, Parity::Even, Parity::Odd],
            vec!["e".into(), "z".into(), "w".into()],
            t,
        )
        .unwrap_err();
        assert_eq!(err, AlgebraError::GradingViolation { i: 1, j: 2, k: 0 });
    }

    #[test]
    fn direct_sum_shapes() {
        let a = scalar_algebra();
        let s = a.direct_sum(&a).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s.summands(), &[1, 1]);
        let e1 = s.basis_element(0);
        let e2 = s.basis_element(1);
        assert!(s.multiply(&e1, &e2).unwrap().is_zero());
        assert_eq!(s.labels()[0], "1:e");
        assert_eq!(s.labels()[1], "2:e");

        let k = k3(q());
        let ks = k.direct_sum(&a).unwrap();
        assert_eq!(ks.dim(), 4);
        assert_eq!(
            ks.parities(),
            &[Parity::Even, Parity::Odd, Parity::Odd, Parity::Even]
        );

        let nested = ks.direct_sum(&a).unwrap();
        assert_eq!(nested.summands(), &[3, 1, 1]);
        assert_eq!(nested.labels()[4], "3:e");
    }

    #[test]
    fn field_mismatch_rejected() {
        let a = scalar_algebra();
        let f5 = Field::gf(5).unwrap();
        let mut t = TableBuilder::new();
        t.add(&f5, 0, 0, 0, f5.one());
        let b = Superalgebra::new("F1/5", f5, vec![Parity::Even], vec!["e".into()], t).unwrap();
        assert_eq!(a.direct_sum(&b).unwrap_err(), AlgebraError::FieldMismatch);
    }

    #[test]
    fn mismatch_on_foreign_elements() {
        let a = scalar_algebra();
        let b = scalar_algebra();
        let err = a
            .multiply(&a.basis_element(0), &b.basis_element(0))
            .unwrap_err();
        assert_eq!(err, AlgebraError::AlgebraMismatch);
    }

    #[test]
    fn unit_of_dt_style_table() {
        // Two orthogonal idempotents acting by 1/2 on an odd pair; the unit
        // is their sum.
        let f = q();
        let half = f.from_ratio(1, 2).unwrap();
        let mut t = TableBuilder::new();
        t.add(&f, 0, 0, 0, f.one());
        t.add(&f, 1, 1, 1, f.one());
        for odd in [2usize, 3] {
            for e in [0usize, 1] {
                t.add(&f, e, odd, odd, half.clone());
                t.add(&f, odd, e, odd, half.clone());
            }
        }
        t.add(&f, 2, 3, 0, f.one());
        t.add(&f, 2, 3, 1, f.from_i64(2));
        t.add(&f, 3, 2, 0, f.from_i64(-1));
        t.add(&f, 3, 2, 1, f.from_i64(-2));
        let d2 = Superalgebra::new(
            "D2",
            f,
            vec![Parity::Even, Parity::Even, Parity::Odd, Parity::Odd],
            vec!["e1".into(), "e2".into(), "x".into(), "y".into()],
            t,
        )
        .unwrap();
        assert_eq!(d2.find_unit().unwrap(), d2.element_from_i64(&[1, 1, 0, 0]));
    }

    #[test]
    fn zero_multiplication_square_span_is_empty() {
        let a = Superalgebra::new(
            "null2",
            q(),
            vec![Parity::Even; 2],
            vec!["a".into(), "b".into()],
            TableBuilder::new(),
        )
        .unwrap();
        assert!(a.square_span().is_empty());
        assert!(a.find_unit().is_none());
    }

    #[test]
    fn plus_construction_symmetrizes() {
        let m = m2(q());
        assert!(m.associativity_witness().is_none());
        let p = m.plus_construction().unwrap();
        // e11 o e12 = 1/2 e12
        let prod = p
            .multiply(&p.basis_element(0), &p.basis_element(1))
            .unwrap();
        let mut want = p.zero_element();
        want.coords[1] = q().from_ratio(1, 2).unwrap();
        assert_eq!(prod.coords, want.coords);
        // Unit preserved.
        let e = p.find_unit().unwrap();
        assert_eq!(e.coords, p.element_from_i64(&[1, 0, 0, 1]).coords);
    }

    #[test]
    fn plus_construction_rejects_nonassociative() {
        let mut t = TableBuilder::new();
        t.add(&q(), 0, 0, 1, q().one());
        t.add(&q(), 0, 1, 0, q().one());
        t.add(&q(), 1, 0, 0, q().one());
        let a = Superalgebra::new(
            "nonassoc",
            q(),
            vec![Parity::Even; 2],
            vec!["b".into(), "c".into()],
            t,
        )
        .unwrap();
        assert!(matches!(
            a.plus_construction(),
            Err(AlgebraError::NotAssociative { .. })
        ));
    }

    fn transpose_on_m2() -> Involution {
        let f = q();
        Involution::from_images(
            f,
            vec![
                vec![f.one(), f.zero(), f.zero(), f.zero()],
                vec![f.zero(), f.zero(), f.one(), f.zero()],
                vec![f.zero(), f.one(), f.zero(), f.zero()],
                vec![f.zero(), f.zero(), f.zero(), f.one()],
            ],
        )
    }

    #[test]
    fn hermitian_of_m2_transpose() {
        let m = m2(q());
        let emb = m.hermitian_subalgebra(&transpose_on_m2()).unwrap();
        assert_eq!(emb.algebra.dim(), 3); // symmetric 2x2 matrices
        assert!(emb.algebra.find_unit().is_some());
    }

    #[test]
    fn hermitian_rejects_non_involution() {
        let m = m2(q());
        let f = q();
        let images = vec![
            vec![f.one(), f.zero(), f.zero(), f.zero()],
            vec![f.zero(), f.zero(), f.zero(), f.zero()],
            vec![f.zero(), f.zero(), f.zero(), f.zero()],
            vec![f.zero(), f.zero(), f.zero(), f.one()],
        ];
        let j = Involution::from_images(f, images);
        assert_eq!(
            m.hermitian_subalgebra(&j).unwrap_err(),
            AlgebraError::NotInvolution
        );
    }

    #[test]
    fn embedding_roundtrip() {
        let m = m2(q());
        let f = q();
        let emb = m.hermitian_subalgebra(&transpose_on_m2()).unwrap();
        let v = [f.zero(), f.one(), f.one(), f.zero()];
        let coords = emb.restrict(&v).unwrap();
        assert_eq!(emb.extend(&coords), v.to_vec());
        assert!(emb
            .restrict(&[f.zero(), f.one(), f.zero(), f.zero()])
            .is_none());
    }
}
