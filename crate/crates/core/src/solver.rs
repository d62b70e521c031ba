//! The delta-derivation solver: assembles the linear system of the
//! defining relation phi(xy) = delta (phi(x) y + x phi(y)) over all basis
//! pairs, computes exact nullspaces by fraction-free elimination, analyzes
//! the symbolic pencil in delta for exceptional values, and classifies
//! solution spaces.
//!
//! # Soundness of the pencil analysis
//!
//! Writing the constraints as C - delta D (entries affine in delta), the
//! fraction-free forward elimination below processes rows one at a time
//! with the classic two-term update and division by the previous pivot.
//! Every entry of a fully reduced row is a bordered minor of the
//! (row-scaled) original pencil; in particular the last pivot equals, up
//! to sign and the nonzero row-scaling constants, an r x r minor of the
//! original pencil, where r is the generic rank over the rational function
//! field. If the rank drops at some delta_0, every r x r minor vanishes
//! there, including that one, so the rational exceptional values are
//! exactly the rational roots of the final pivot polynomial that survive
//! an exact rank recomputation at the specialized value. Row scaling
//! moves no roots. Irrational roots of the final pivot are reported by
//! leftover factor degree only; for these algebras the confirmed results
//! expect none, so a nonempty report is a red flag, not an answer.

use crate::algebra::{Element, Parity, Superalgebra};
use crate::field::{Field, Scalar};
use crate::int::Int;
use crate::matrix::{self, Mat};
use crate::poly::{rational_roots_int, DeltaPoly, IntPoly};
use crate::rat::Rat;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolverError {
    /// Pencil analysis (rational root search) works over the rationals.
    RationalFieldRequired,
}

impl fmt::Display for SolverError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolverError::RationalFieldRequired => {
                write!(f, "pencil analysis requires the rational field")
            }
        }
    }
}

impl core::error::Error for SolverError {}

/// A linear map on the algebra; column j holds the coordinates of the
/// image of basis element j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMap {
    pub mat: Mat,
}

impl LinearMap {
    pub fn identity(alg: &Superalgebra) -> LinearMap {
        LinearMap {
            mat: Mat::identity(alg.field, alg.dim()),
        }
    }

    /// From the flat unknown vector (column-major: u = col*dim + row).
    pub fn from_flat(field: Field, dim: usize, flat: &[Scalar]) -> LinearMap {
        assert_eq!(flat.len(), dim * dim);
        let mut mat = Mat::zero(field, dim, dim);
        for col in 0..dim {
            for row in 0..dim {
                *mat.at_mut(row, col) = flat[col * dim + row].clone();
            }
        }
        LinearMap { mat }
    }

    pub fn to_flat(&self) -> Vec<Scalar> {
        let dim = self.mat.rows;
        let mut out = Vec::with_capacity(dim * dim);
        for col in 0..dim {
            for row in 0..dim {
                out.push(self.mat.at(row, col).clone());
            }
        }
        out
    }

    pub fn apply(&self, alg: &Superalgebra, x: &Element) -> Element {
        alg.element(self.mat.apply(&x.coords)).unwrap()
    }

    /// Left multiplication operator by a fixed element.
    pub fn left_multiplication(alg: &Superalgebra, a: &Element) -> LinearMap {
        let dim = alg.dim();
        let mut mat = Mat::zero(alg.field, dim, dim);
        for j in 0..dim {
            let img = alg.multiply(a, &alg.basis_element(j)).unwrap();
            for (r, c) in img.coords.into_iter().enumerate() {
                *mat.at_mut(r, j) = c;
            }
        }
        LinearMap { mat }
    }
}

/// Sparse row, sorted by column.
pub type SparseRow<T> = Vec<(u32, T)>;

/// The constraint system at a fixed delta: dim^3 logical equations (rows
/// that are identically zero are not stored) in dim^2 unknowns.
#[derive(Debug, Clone)]
pub struct ConstraintSystem {
    pub nrows: usize,
    pub ncols: usize,
    pub rows: Vec<((usize, usize, usize), SparseRow<Scalar>)>,
}

/// The symbolic pencil: same shape, entries affine in delta.
#[derive(Debug, Clone)]
pub struct DeltaPencil {
    pub nrows: usize,
    pub ncols: usize,
    pub rows: Vec<((usize, usize, usize), SparseRow<DeltaPoly>)>,
}

/// Per-algebra indexes for fast row assembly: for fixed (j, k) the list of
/// (m, c[m][j][k]) and for fixed (i, k) the list of (m, c[i][m][k]).
struct AssemblyIndex {
    dim: usize,
    left: Vec<Vec<(u32, Scalar)>>,
    right: Vec<Vec<(u32, Scalar)>>,
}

impl AssemblyIndex {
    fn new(alg: &Superalgebra) -> AssemblyIndex {
        let dim = alg.dim();
        let mut left = vec![Vec::new(); dim * dim];
        let mut right = vec![Vec::new(); dim * dim];
        for (&(a, b), terms) in alg.table() {
            for (k, c) in terms {
                left[b as usize * dim + *k as usize].push((a, c.clone()));
                right[a as usize * dim + *k as usize].push((b, c.clone()));
            }
        }
        AssemblyIndex { dim, left, right }
    }

    /// Constant part and delta part of row (i, j, k), keyed by unknown.
    fn row_parts(
        &self,
        alg: &Superalgebra,
        i: usize,
        j: usize,
        k: usize,
    ) -> BTreeMap<u32, (Scalar, Scalar)> {
        let f = alg.field;
        let dim = self.dim;
        let mut acc: BTreeMap<u32, (Scalar, Scalar)> = BTreeMap::new();
        // phi(b_i b_j) coordinate k: + c[i][j][m] phi[k][m], unknown m*dim+k.
        for (m, c) in alg.basis_product(i, j) {
            let u = *m * dim as u32 + k as u32;
            let e = acc.entry(u).or_insert_with(|| (f.zero(), f.zero()));
            e.0 = f.add(&e.0, c);
        }
        // - delta ( c[m][j][k] phi[m][i] + c[i][m][k] phi[m][j] ).
        for (m, c) in &self.left[j * dim + k] {
            let u = i as u32 * dim as u32 + *m;
            let e = acc.entry(u).or_insert_with(|| (f.zero(), f.zero()));
            e.1 = f.sub(&e.1, c);
        }
        for (m, c) in &self.right[i * dim + k] {
            let u = j as u32 * dim as u32 + *m;
            let e = acc.entry(u).or_insert_with(|| (f.zero(), f.zero()));
            e.1 = f.sub(&e.1, c);
        }
        acc.retain(|_, (c0, c1)| !c0.is_zero() || !c1.is_zero());
        acc
    }
}

/// The constraint matrix of the defining relation at a fixed delta,
/// instantiated at all basis pairs in lexicographic (i, j, k) order.
pub fn build_delta_system(alg: &Superalgebra, delta: &Scalar) -> ConstraintSystem {
    let f = alg.field;
    let dim = alg.dim();
    let idx = AssemblyIndex::new(alg);
    let mut rows = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                let row: SparseRow<Scalar> = idx
                    .row_parts(alg, i, j, k)
                    .into_iter()
                    .map(|(u, (c0, c1))| (u, f.add(&c0, &f.mul(delta, &c1))))
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                if !row.is_empty() {
                    rows.push(((i, j, k), row));
                }
            }
        }
    }
    ConstraintSystem {
        nrows: dim * dim * dim,
        ncols: dim * dim,
        rows,
    }
}

/// The symbolic pencil C - delta D over the rationals.
pub fn build_delta_pencil(alg: &Superalgebra) -> Result<DeltaPencil, SolverError> {
    if alg.field != Field::Rationals {
        return Err(SolverError::RationalFieldRequired);
    }
    let dim = alg.dim();
    let idx = AssemblyIndex::new(alg);
    let mut rows = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                let row: SparseRow<DeltaPoly> = idx
                    .row_parts(alg, i, j, k)
                    .into_iter()
                    .map(|(u, (c0, c1))| {
                        let c0 = c0.as_rat().unwrap().clone();
                        let c1 = c1.as_rat().unwrap().clone();
                        (u, DeltaPoly::linear(c0, c1))
                    })
                    .collect();
                if !row.is_empty() {
                    rows.push(((i, j, k), row));
                }
            }
        }
    }
    Ok(DeltaPencil {
        nrows: dim * dim * dim,
        ncols: dim * dim,
        rows,
    })
}

/// (i, j) pairs fed to the eliminator. For an all-even algebra the table
/// is commutative, so rows (j,i,*) duplicate rows (i,j,*) exactly and only
/// i <= j is generated; dropping exact duplicates changes neither the
/// nullspace at any delta nor the set of minors of the original pencil.
fn solver_pairs(alg: &Superalgebra) -> Vec<(usize, usize)> {
    let dim = alg.dim();
    let plain = alg.is_plain();
    let mut out = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            if plain && j < i {
                continue;
            }
            out.push((i, j));
        }
    }
    out
}

// ---------------------------------------------------------------------
// Fraction-free incremental echelon.
// ---------------------------------------------------------------------

/// Exact ring entry usable by the fraction-free eliminator. Divisions are
/// only requested where the Bareiss identity guarantees exactness.
pub trait PivotEntry: Clone + PartialEq {
    fn is_zero(&self) -> bool;
    fn one() -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// a*b - c*d.
    fn cross(a: &Self, b: &Self, c: &Self, d: &Self) -> Self;
    fn exact_div(&self, o: &Self) -> Self;
}

impl PivotEntry for Int {
    fn is_zero(&self) -> bool {
        Int::is_zero(self)
    }
    fn one() -> Self {
        Int::ONE
    }
    fn mul(&self, o: &Self) -> Self {
        Int::mul(self, o)
    }
    fn neg(&self) -> Self {
        Int::neg(self)
    }
    fn cross(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        Int::mul_sub_mul(a, b, c, d)
    }
    fn exact_div(&self, o: &Self) -> Self {
        Int::exact_div(self, o)
    }
}

impl PivotEntry for IntPoly {
    fn is_zero(&self) -> bool {
        IntPoly::is_zero(self)
    }
    fn one() -> Self {
        IntPoly::one()
    }
    fn mul(&self, o: &Self) -> Self {
        IntPoly::mul(self, o)
    }
    fn neg(&self) -> Self {
        IntPoly::neg(self)
    }
    fn cross(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        IntPoly::mul_sub_mul(a, b, c, d)
    }
    fn exact_div(&self, o: &Self) -> Self {
        IntPoly::exact_div(self, o)
    }
}

/// GF(p) entry. The unit returned by `one()` carries modulus 0 and acts
/// neutrally; real entries carry their p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpEntry {
    pub v: u64,
    pub p: u64,
}

impl FpEntry {
    fn modulus(a: &Self, b: &Self) -> u64 {
        if a.p != 0 {
            a.p
        } else {
            b.p
        }
    }
}

impl PivotEntry for FpEntry {
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn one() -> Self {
        FpEntry { v: 1, p: 0 }
    }
    fn mul(&self, o: &Self) -> Self {
        let p = Self::modulus(self, o);
        if p == 0 {
            return FpEntry {
                v: self.v * o.v,
                p: 0,
            };
        }
        FpEntry {
            v: ((self.v as u128 * o.v as u128) % p as u128) as u64,
            p,
        }
    }
    fn neg(&self) -> Self {
        if self.p == 0 || self.v == 0 {
            return FpEntry {
                v: self.v,
                p: self.p,
            }; // 0 or +-1 sentinel
        }
        FpEntry {
            v: self.p - self.v,
            p: self.p,
        }
    }
    fn cross(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        let p = [a.p, b.p, c.p, d.p]
            .into_iter()
            .find(|&x| x != 0)
            .unwrap_or(0);
        if p == 0 {
            return FpEntry {
                v: a.v * b.v - c.v * d.v,
                p: 0,
            };
        }
        let ab = (a.v % p) as u128 * (b.v % p) as u128 % p as u128;
        let cd = (c.v % p) as u128 * (d.v % p) as u128 % p as u128;
        FpEntry {
            v: ((ab + p as u128 - cd) % p as u128) as u64,
            p,
        }
    }
    fn exact_div(&self, o: &Self) -> Self {
        if o.p == 0 {
            assert_eq!(o.v, 1, "division by the abstract unit only");
            return self.clone();
        }
        let p = o.p;
        let mut inv = 1u64;
        let mut base = o.v % p;
        assert!(base != 0, "division by zero in GF(p)");
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                inv = ((inv as u128 * base as u128) % p as u128) as u64;
            }
            base = ((base as u128 * base as u128) % p as u128) as u64;
            e >>= 1;
        }
        FpEntry {
            v: ((self.v % p) as u128 * inv as u128 % p as u128) as u64,
            p,
        }
    }
}

/// Echelon accumulated by row insertion with first-nonzero column
/// pivoting. Pivot rows are frozen at their insertion state; with the
/// divisor chain below their entries are the bordered minors of the
/// original rows, which both bounds coefficient growth and gives the
/// pencil's final pivot its minor meaning.
pub struct Echelon<T> {
    pub ncols: usize,
    /// (pivot column, frozen row) in insertion order; the pivot value is
    /// the first entry of the row.
    pub pivots: Vec<(u32, SparseRow<T>)>,
}

/// out = (pivot * row - a * prow) / divisor, entrywise; divisions exact by
/// the Bareiss identity.
fn combine<T: PivotEntry>(
    pivot: &T,
    row: &SparseRow<T>,
    a: &T,
    prow: &SparseRow<T>,
    divisor: &T,
) -> SparseRow<T> {
    let one = T::one();
    let trivial_div = *divisor == one;
    let mut out: SparseRow<T> = Vec::with_capacity(row.len() + prow.len());
    let (mut x, mut y) = (0usize, 0usize);
    loop {
        let v: (u32, T) = match (row.get(x), prow.get(y)) {
            (Some((cx, vx)), Some((cy, vy))) if cx == cy => {
                let v = T::cross(pivot, vx, a, vy);
                x += 1;
                y += 1;
                (*cx, v)
            }
            (Some((cx, vx)), Some((cy, _))) if cx < cy => {
                x += 1;
                (*cx, pivot.mul(vx))
            }
            (Some(_), Some((cy, vy))) | (None, Some((cy, vy))) => {
                y += 1;
                (*cy, a.mul(vy).neg())
            }
            (Some((cx, vx)), None) => {
                x += 1;
                (*cx, pivot.mul(vx))
            }
            (None, None) => break,
        };
        if !v.1.is_zero() {
            let val = if trivial_div {
                v.1
            } else {
                v.1.exact_div(divisor)
            };
            out.push((v.0, val));
        }
    }
    out
}

impl<T: PivotEntry> Echelon<T> {
    pub fn new(ncols: usize) -> Echelon<T> {
        Echelon {
            ncols,
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// The value of the most recently inserted pivot.
    pub fn final_pivot(&self) -> Option<&T> {
        self.pivots.last().map(|(_, row)| &row[0].1)
    }

    /// Reduces `row` against the pivots in insertion order and inserts the
    /// result if nonzero; returns whether the rank grew. Zero-coefficient
    /// stages are skipped lazily; the telescoped divisor chain keeps every
    /// division exact and the final rescaling restores the true Bareiss
    /// normalization of the inserted row.
    pub fn insert(&mut self, mut row: SparseRow<T>) -> bool {
        if row.is_empty() {
            return false;
        }
        let mut divisor = T::one();
        for (pcol, prow) in &self.pivots {
            let Ok(pos) = row.binary_search_by_key(pcol, |(c, _)| *c) else {
                continue;
            };
            let a = row[pos].1.clone();
            let pivot = &prow[0].1;
            row = combine(pivot, &row, &a, prow, &divisor);
            divisor = pivot.clone();
            if row.is_empty() {
                return false;
            }
        }
        if let Some((_, last)) = self.pivots.last() {
            let pi_s = last[0].1.clone();
            if pi_s != divisor {
                for (_, v) in &mut row {
                    *v = v.mul(&pi_s).exact_div(&divisor);
                }
            }
        }
        let pcol = row[0].0;
        self.pivots.push((pcol, row));
        true
    }
}

// ---------------------------------------------------------------------
// Nullspace over the field.
// ---------------------------------------------------------------------

fn clear_denominators(row: &SparseRow<Scalar>) -> SparseRow<Int> {
    let mut lcm = Int::ONE;
    for (_, c) in row {
        let d = c.as_rat().expect("rational row").denominator();
        let g = lcm.gcd(d);
        lcm = lcm.exact_div(&g).mul(d);
    }
    row.iter()
        .map(|(u, c)| {
            let r = c.as_rat().unwrap();
            (*u, r.numerator().mul(&lcm.exact_div(r.denominator())))
        })
        .collect()
}

enum FieldEchelon {
    Q(Echelon<Int>),
    Fp(Echelon<FpEntry>),
}

fn echelonize<'a>(
    field: Field,
    ncols: usize,
    rows: impl Iterator<Item = &'a SparseRow<Scalar>>,
) -> FieldEchelon {
    match field {
        Field::Rationals => {
            let mut ech = Echelon::<Int>::new(ncols);
            for row in rows {
                ech.insert(clear_denominators(row));
            }
            FieldEchelon::Q(ech)
        }
        Field::GfP(p) => {
            let mut ech = Echelon::<FpEntry>::new(ncols);
            for row in rows {
                let r: SparseRow<FpEntry> = row
                    .iter()
                    .map(|(u, c)| {
                        (
                            *u,
                            FpEntry {
                                v: c.as_residue().expect("GF(p) row"),
                                p,
                            },
                        )
                    })
                    .collect();
                ech.insert(r);
            }
            FieldEchelon::Fp(ech)
        }
    }
}

impl FieldEchelon {
    fn rank(&self) -> usize {
        match self {
            FieldEchelon::Q(e) => e.rank(),
            FieldEchelon::Fp(e) => e.rank(),
        }
    }

    /// Pivot rows converted back to field scalars, in insertion order.
    fn scalar_pivots(&self) -> Vec<(u32, SparseRow<Scalar>)> {
        match self {
            FieldEchelon::Q(e) => e
                .pivots
                .iter()
                .map(|(c, row)| {
                    (
                        *c,
                        row.iter()
                            .map(|(u, v)| (*u, Scalar::Q(Rat::from_int(v.clone()))))
                            .collect(),
                    )
                })
                .collect(),
            FieldEchelon::Fp(e) => e
                .pivots
                .iter()
                .map(|(c, row)| (*c, row.iter().map(|(u, v)| (*u, Scalar::Fp(v.v))).collect()))
                .collect(),
        }
    }
}

/// Exact nullspace basis of a sparse system over the field: fraction-free
/// forward elimination with first-nonzero pivoting, then back-substitution
/// over exact scalars. One basis vector per free column, in ascending
/// free-column order, each normalized so its first nonzero coordinate is 1.
/// This output is canonical for the subspace: any correct method must
/// produce exactly the same list.
pub fn nullspace_exact(field: Field, rows: &[SparseRow<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let ech = echelonize(field, ncols, rows.iter());
    nullspace_from_echelon(field, &ech, ncols)
}

fn nullspace_from_echelon(field: Field, ech: &FieldEchelon, ncols: usize) -> Vec<Vec<Scalar>> {
    let f = field;
    let mut pivots = ech.scalar_pivots();
    pivots.sort_by_key(|(c, _)| *c);
    let pivot_cols: Vec<u32> = pivots.iter().map(|(c, _)| *c).collect();
    let mut is_pivot = vec![false; ncols];
    for c in &pivot_cols {
        is_pivot[*c as usize] = true;
    }

    let mut basis = Vec::with_capacity(ncols - pivots.len());
    for free in 0..ncols as u32 {
        if is_pivot[free as usize] {
            continue;
        }
        let mut v = vec![f.zero(); ncols];
        v[free as usize] = f.one();
        for (pc, row) in pivots.iter().rev() {
            let mut acc = f.zero();
            for (u, c) in row.iter().skip(1) {
                if !v[*u as usize].is_zero() {
                    acc = f.add(&acc, &f.mul(c, &v[*u as usize]));
                }
            }
            if !acc.is_zero() {
                let pivot = &row[0].1;
                v[*pc as usize] = f.neg(&f.div(&acc, pivot).expect("pivot nonzero"));
            }
        }
        // Normalize: first nonzero coordinate becomes 1.
        let lead = v.iter().position(|x| !x.is_zero()).unwrap();
        let inv = f.inv(&v[lead]).unwrap();
        if !inv.is_one() {
            for x in &mut v {
                *x = f.mul(x, &inv);
            }
        }
        basis.push(v);
    }
    basis
}

/// Rank of a sparse scalar system; used for pencil confirmation.
pub fn rank_exact(field: Field, rows: &[SparseRow<Scalar>], ncols: usize) -> usize {
    echelonize(field, ncols, rows.iter()).rank()
}

// ---------------------------------------------------------------------
// Derivation spaces.
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParityFilter {
    All,
    Even,
    Odd,
}

/// A computed space of delta-derivations.
#[derive(Debug, Clone)]
pub struct DerivationSpace {
    pub algebra: alloc::string::String,
    pub delta: Scalar,
    /// Parity-homogeneous canonical basis: even maps first, then odd.
    pub basis: Vec<LinearMap>,
    pub dim: usize,
    /// (even maps, odd maps); sums to `dim`.
    pub parity_split: (usize, usize),
}

fn assemble_solver_rows(alg: &Superalgebra, delta: &Scalar) -> Vec<SparseRow<Scalar>> {
    let f = alg.field;
    let dim = alg.dim();
    let idx = AssemblyIndex::new(alg);
    let mut rows = Vec::new();
    for (i, j) in solver_pairs(alg) {
        for k in 0..dim {
            let row: SparseRow<Scalar> = idx
                .row_parts(alg, i, j, k)
                .into_iter()
                .map(|(u, (c0, c1))| (u, f.add(&c0, &f.mul(delta, &c1))))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            if !row.is_empty() {
                rows.push(row);
            }
        }
    }
    rows
}

/// Map-parity of a flat unknown: parity(row) xor parity(col).
fn unknown_parity(alg: &Superalgebra, u: usize) -> Parity {
    let dim = alg.dim();
    let col = u / dim;
    let row = u % dim;
    alg.parity(row).xor(alg.parity(col))
}

/// Solves for the space of delta-derivations at a fixed delta. The basis
/// is the canonical nullspace basis re-reduced into parity-homogeneous
/// maps (the constraint matrix block-decomposes over map parity, so the
/// projections of solutions are solutions); every returned map is verified
/// against the defining relation before the space is handed back.
pub fn delta_derivations(
    alg: &Superalgebra,
    delta: &Scalar,
    filter: ParityFilter,
) -> DerivationSpace {
    let f = alg.field;
    let dim = alg.dim();
    let ncols = dim * dim;
    let rows = assemble_solver_rows(alg, delta);
    let null = nullspace_exact(f, &rows, ncols);

    // Parity split: project every basis vector onto each parity block and
    // re-reduce; the two blocks live on disjoint coordinates.
    let mut even_vecs = Vec::new();
    let mut odd_vecs = Vec::new();
    for v in &null {
        let mut even = vec![f.zero(); ncols];
        let mut odd = vec![f.zero(); ncols];
        for (u, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match unknown_parity(alg, u) {
                Parity::Even => even[u] = c.clone(),
                Parity::Odd => odd[u] = c.clone(),
            }
        }
        even_vecs.push(even);
        odd_vecs.push(odd);
    }
    let even_basis = matrix::span_basis(f, &even_vecs, ncols);
    let odd_basis = matrix::span_basis(f, &odd_vecs, ncols);
    assert_eq!(
        even_basis.len() + odd_basis.len(),
        null.len(),
        "parity blocks must add up to the solution dimension"
    );

    let (selected, split): (Vec<Vec<Scalar>>, (usize, usize)) = match filter {
        ParityFilter::All => {
            let split = (even_basis.len(), odd_basis.len());
            (even_basis.into_iter().chain(odd_basis).collect(), split)
        }
        ParityFilter::Even => {
            let split = (even_basis.len(), 0);
            (even_basis, split)
        }
        ParityFilter::Odd => {
            let split = (0, odd_basis.len());
            (odd_basis, split)
        }
    };

    let basis: Vec<LinearMap> = selected
        .iter()
        .map(|v| LinearMap::from_flat(f, dim, v))
        .collect();
    for map in &basis {
        debug_assert!(
            verify_map(alg, map, delta).ok,
            "solver produced a non-solution"
        );
    }
    DerivationSpace {
        algebra: alg.name.clone(),
        delta: delta.clone(),
        dim: basis.len(),
        parity_split: split,
        basis,
    }
}

/// Rank of the full constraint system at a fixed delta.
pub fn system_rank(alg: &Superalgebra, delta: &Scalar) -> usize {
    let rows = assemble_solver_rows(alg, delta);
    rank_exact(alg.field, &rows, alg.dim() * alg.dim())
}

// ---------------------------------------------------------------------
// Verification and classification.
// ---------------------------------------------------------------------

/// Outcome of checking a candidate map against the defining relation.
#[derive(Debug, Clone)]
pub struct VerifyOutcome {
    pub ok: bool,
    /// First failing basis pair in lexicographic order, with the residual
    /// phi(b_i b_j) - delta (phi(b_i) b_j + b_i phi(b_j)).
    pub witness: Option<(usize, usize, Element)>,
}

/// Residual of the defining relation at one basis pair; computed from the
/// multiplication itself, never from the solver's constraint matrix.
pub fn derivation_residual(
    alg: &Superalgebra,
    map: &LinearMap,
    delta: &Scalar,
    i: usize,
    j: usize,
) -> Element {
    let bi = alg.basis_element(i);
    let bj = alg.basis_element(j);
    let lhs = map.apply(alg, &alg.multiply(&bi, &bj).unwrap());
    let t1 = alg.multiply(&map.apply(alg, &bi), &bj).unwrap();
    let t2 = alg.multiply(&bi, &map.apply(alg, &bj)).unwrap();
    let rhs = alg.scale(delta, &alg.add(&t1, &t2).unwrap()).unwrap();
    alg.sub(&lhs, &rhs).unwrap()
}

/// Residual of the defining relation at a pair of arbitrary elements.
pub fn derivation_residual_elements(
    alg: &Superalgebra,
    map: &LinearMap,
    delta: &Scalar,
    x: &Element,
    y: &Element,
) -> Element {
    let lhs = map.apply(alg, &alg.multiply(x, y).unwrap());
    let t1 = alg.multiply(&map.apply(alg, x), y).unwrap();
    let t2 = alg.multiply(x, &map.apply(alg, y)).unwrap();
    let rhs = alg.scale(delta, &alg.add(&t1, &t2).unwrap()).unwrap();
    alg.sub(&lhs, &rhs).unwrap()
}

/// Checks phi(b_i b_j) = delta (phi(b_i) b_j + b_i phi(b_j)) on all basis
/// pairs.
pub fn verify_map(alg: &Superalgebra, map: &LinearMap, delta: &Scalar) -> VerifyOutcome {
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            let res = derivation_residual(alg, map, delta, i, j);
            if !res.is_zero() {
                return VerifyOutcome {
                    ok: false,
                    witness: Some((i, j, res)),
                };
            }
        }
    }
    VerifyOutcome {
        ok: true,
        witness: None,
    }
}

/// Shape of a computed derivation space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    Zero,
    /// Spanned by the identity map: phi(x) = alpha x.
    ScalarIdentity,
    /// Spanned by the block identities of the direct-sum decomposition:
    /// phi acts as its own scalar on each summand.
    BlockScalar {
        blocks: Vec<usize>,
    },
    Other,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Zero => write!(f, "Zero"),
            Classification::ScalarIdentity => write!(f, "ScalarIdentity"),
            Classification::BlockScalar { blocks } => write!(f, "BlockScalar({})", blocks.len()),
            Classification::Other => write!(f, "Other"),
        }
    }
}

/// Classifies a derivation space against the scalar-identity and
/// block-scalar shapes; direct-sum block data comes from the algebra.
pub fn classify_solution(space: &DerivationSpace, alg: &Superalgebra) -> Classification {
    let f = alg.field;
    let dim = alg.dim();
    if space.dim == 0 {
        return Classification::Zero;
    }
    let identity = LinearMap::identity(alg);
    if space.dim == 1 && space.basis[0] == identity {
        return Classification::ScalarIdentity;
    }
    let blocks = alg.summands();
    if space.dim == blocks.len() {
        let span: Vec<Vec<Scalar>> = space.basis.iter().map(LinearMap::to_flat).collect();
        let span = matrix::span_basis(f, &span, dim * dim);
        let mut offset = 0usize;
        let mut all_in = true;
        for b in blocks {
            let mut block_id = vec![f.zero(); dim * dim];
            for r in offset..offset + b {
                block_id[r * dim + r] = f.one();
            }
            offset += b;
            if !matrix::in_span(f, &span, &block_id) {
                all_in = false;
                break;
            }
        }
        if all_in {
            return Classification::BlockScalar {
                blocks: blocks.to_vec(),
            };
        }
    }
    Classification::Other
}

// ---------------------------------------------------------------------
// Pencil analysis.
// ---------------------------------------------------------------------

/// The exceptional-delta landscape of an algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionalSet {
    /// Rank of the pencil over the rational function field in delta.
    pub generic_rank: usize,
    /// Confirmed rational delta where the rank drops, with the nullity
    /// (= solution dimension) at that delta. Sorted by delta.
    pub exceptionals: Vec<(Rat, usize)>,
    /// Degrees of final-pivot factors that do not split over the
    /// rationals; expected empty for every catalog algebra.
    pub nonrational_degrees: Vec<usize>,
}

fn poly_row_to_int(row: &BTreeMap<u32, (Scalar, Scalar)>) -> SparseRow<IntPoly> {
    // Clear denominators across the whole row (constant and delta parts).
    let mut lcm = Int::ONE;
    for (c0, c1) in row.values() {
        for c in [c0, c1] {
            let d = c.as_rat().expect("rational pencil").denominator();
            let g = lcm.gcd(d);
            lcm = lcm.exact_div(&g).mul(d);
        }
    }
    row.iter()
        .map(|(u, (c0, c1))| {
            let scale = |s: &Scalar| {
                let r = s.as_rat().unwrap();
                r.numerator().mul(&lcm.exact_div(r.denominator()))
            };
            (*u, IntPoly::linear(scale(c0), scale(c1)))
        })
        .filter(|(_, p)| !p.is_zero())
        .collect()
}

/// Symbolic rank analysis of the pencil: fraction-free elimination over
/// the integer polynomials in delta, rational-root search on the final
/// pivot, and exact confirmation of every candidate. See the module docs
/// for the soundness argument.
pub fn pencil_exceptional(alg: &Superalgebra) -> Result<ExceptionalSet, SolverError> {
    if alg.field != Field::Rationals {
        return Err(SolverError::RationalFieldRequired);
    }
    let dim = alg.dim();
    let ncols = dim * dim;
    let idx = AssemblyIndex::new(alg);
    let mut ech = Echelon::<IntPoly>::new(ncols);
    for (i, j) in solver_pairs(alg) {
        for k in 0..dim {
            let parts = idx.row_parts(alg, i, j, k);
            if parts.is_empty() {
                continue;
            }
            ech.insert(poly_row_to_int(&parts));
        }
    }
    let generic_rank = ech.rank();
    let Some(final_pivot) = ech.final_pivot() else {
        return Ok(ExceptionalSet {
            generic_rank: 0,
            exceptionals: Vec::new(),
            nonrational_degrees: Vec::new(),
        });
    };

    let mut exceptionals = Vec::new();
    let mut nonrational_degrees = Vec::new();
    if final_pivot.degree().unwrap_or(0) >= 1 {
        let report = rational_roots_int(final_pivot);
        nonrational_degrees = report.leftover_degrees;
        for root in report.roots {
            let delta = Scalar::Q(root.clone());
            let rank = system_rank(alg, &delta);
            if rank < generic_rank {
                exceptionals.push((root, ncols - rank));
            }
        }
    }
    exceptionals.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(ExceptionalSet {
        generic_rank,
        exceptionals,
        nonrational_degrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testkit::k3;

    fn q() -> Field {
        Field::rationals()
    }

    fn qs(v: i64) -> Scalar {
        Field::Rationals.from_i64(v)
    }

    fn half() -> Scalar {
        Field::Rationals.from_ratio(1, 2).unwrap()
    }

    fn sparse(rows: &[&[i64]]) -> Vec<SparseRow<Scalar>> {
        rows.iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| **v != 0)
                    .map(|(i, v)| (i as u32, qs(*v)))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn nullspace_basics() {
        // Identity 2x2: trivial nullspace.
        assert!(nullspace_exact(q(), &sparse(&[&[1, 0], &[0, 1]]), 2).is_empty());
        // [[1,1],[2,2]]: basis {(1, -1)} after normalization.
        let ns = nullspace_exact(q(), &sparse(&[&[1, 1], &[2, 2]]), 2);
        assert_eq!(ns, vec![vec![qs(1), qs(-1)]]);
        // Zero 3x3: three unit vectors.
        let ns = nullspace_exact(q(), &sparse(&[&[0, 0, 0]]), 3);
        assert_eq!(ns.len(), 3);
        assert_eq!(ns[0], vec![qs(1), qs(0), qs(0)]);
    }

    #[test]
    fn nullspace_over_gf7() {
        let f = Field::gf(7).unwrap();
        // x + y = 0 over GF(7): basis {(1, 6)}.
        let rows = vec![vec![(0u32, f.from_i64(1)), (1u32, f.from_i64(1))]];
        let ns = nullspace_exact(f, &rows, 2);
        assert_eq!(ns, vec![vec![f.one(), f.from_i64(-1)]]);
    }

    /// One-dimensional idempotent algebra F*1.
    fn f1() -> Superalgebra {
        use crate::algebra::TableBuilder;
        let mut t = TableBuilder::new();
        t.add(&q(), 0, 0, 0, q().one());
        Superalgebra::new("F1", q(), vec![Parity::Even], vec!["e".into()], t).unwrap()
    }

    #[test]
    fn f1_systems_by_hand() {
        let a = f1();
        // At 1/2 the single equation vanishes identically: nullity 1.
        let s = delta_derivations(&a, &half(), ParityFilter::All);
        assert_eq!(s.dim, 1);
        assert_eq!(s.basis[0], LinearMap::identity(&a));
        // At 2: (1 - 4) phi = 0 forces zero.
        let s = delta_derivations(&a, &qs(2), ParityFilter::All);
        assert_eq!(s.dim, 0);
        // Shape of the raw system.
        let sys = build_delta_system(&a, &qs(2));
        assert_eq!((sys.nrows, sys.ncols), (1, 1));
    }

    #[test]
    fn k3_half_space_is_scalar_identity() {
        let a = k3(q());
        let s = delta_derivations(&a, &half(), ParityFilter::All);
        assert_eq!(s.dim, 1);
        assert_eq!(s.basis[0], LinearMap::identity(&a));
        assert_eq!(s.parity_split, (1, 0));
        assert_eq!(classify_solution(&s, &a), Classification::ScalarIdentity);
        // Exclusions.
        for d in [qs(0), qs(2), qs(-1), qs(5)] {
            let s = delta_derivations(&a, &d, ParityFilter::All);
            assert_eq!(s.dim, 0, "delta = {d}");
            assert_eq!(classify_solution(&s, &a), Classification::Zero);
        }
    }

    #[test]
    fn identity_is_always_a_half_derivation() {
        let a = k3(q());
        let id = LinearMap::identity(&a);
        assert!(verify_map(&a, &id, &half()).ok);
        // And not a 1-derivation (K3 squares are nonzero).
        assert!(!verify_map(&a, &id, &qs(1)).ok);
    }

    #[test]
    fn zero_space_kills_squares() {
        use crate::algebra::TableBuilder;
        // Zero multiplication on 2 dims: every map is a 0-derivation.
        let z = Superalgebra::new(
            "null2",
            q(),
            vec![Parity::Even; 2],
            vec!["a".into(), "b".into()],
            TableBuilder::new(),
        )
        .unwrap();
        let s = delta_derivations(&z, &qs(0), ParityFilter::All);
        assert_eq!(s.dim, 4);
        // K3: A^2 = A, so the 0-space is trivial.
        let s = delta_derivations(&k3(q()), &qs(0), ParityFilter::All);
        assert_eq!(s.dim, 0);
    }

    #[test]
    fn symbolic_pencil_shape() {
        let a = f1();
        let p = build_delta_pencil(&a).unwrap();
        assert_eq!((p.nrows, p.ncols), (1, 1));
        // Single entry 1 - 2 delta, degree 1.
        let (_, row) = &p.rows[0];
        assert_eq!(row.len(), 1);
        assert_eq!(row[0].1.degree(), Some(1));
        let k = crate::testkit::k3(Field::Rationals);
        let p = build_delta_pencil(&k).unwrap();
        assert_eq!((p.nrows, p.ncols), (27, 9));
        assert!(p
            .rows
            .iter()
            .all(|(_, r)| r.iter().all(|(_, e)| e.degree() <= Some(1))));
        // Finite fields have no symbolic pencil.
        let f5 = Field::gf(5).unwrap();
        let k5 = crate::testkit::k3(f5);
        assert_eq!(
            build_delta_pencil(&k5).unwrap_err(),
            SolverError::RationalFieldRequired
        );
    }

    #[test]
    fn pencil_of_f1() {
        let e = pencil_exceptional(&f1()).unwrap();
        assert_eq!(e.generic_rank, 1);
        assert_eq!(e.exceptionals, vec![(Rat::from_ratio(1, 2), 1)]);
        assert!(e.nonrational_degrees.is_empty());
    }

    #[test]
    fn pencil_of_k3() {
        let e = pencil_exceptional(&k3(q())).unwrap();
        assert_eq!(e.generic_rank, 9);
        // 1/2 present with nullity 1; 0 absent (squares span everything).
        assert!(e
            .exceptionals
            .iter()
            .any(|(d, n)| *d == Rat::from_ratio(1, 2) && *n == 1));
        assert!(e.exceptionals.iter().all(|(d, _)| !d.is_zero()));
        assert!(e.nonrational_degrees.is_empty());
        // Everything confirmed is a genuine rank drop.
        for (d, nullity) in &e.exceptionals {
            let s = delta_derivations(&k3(q()), &Scalar::Q(d.clone()), ParityFilter::All);
            assert_eq!(s.dim, *nullity);
        }
    }

    #[test]
    fn pointwise_matches_pencil_specialization() {
        let a = k3(q());
        for (num, den) in [(0i64, 1i64), (1, 2), (1, 1), (-1, 1), (2, 1), (1, 3)] {
            let d = q().from_ratio(num, den).unwrap();
            let nullity = delta_derivations(&a, &d, ParityFilter::All).dim;
            let rank = system_rank(&a, &d);
            assert_eq!(nullity, 9 - rank, "delta = {num}/{den}");
        }
    }

    #[test]
    fn scaling_invariance() {
        // Scaling all structure constants by c != 0 leaves every space
        // unchanged: the defining relation is homogeneous in the product.
        use crate::algebra::TableBuilder;
        let a = k3(q());
        let c = qs(3);
        let mut t = TableBuilder::new();
        for (&(i, j), terms) in a.table() {
            for (k, v) in terms {
                t.add(&q(), i as usize, j as usize, *k as usize, q().mul(&c, v));
            }
        }
        let scaled = Superalgebra::new(
            "K3-scaled",
            q(),
            a.parities().to_vec(),
            a.labels().to_vec(),
            t,
        )
        .unwrap();
        for d in [qs(0), half(), qs(1), qs(2)] {
            let s1 = delta_derivations(&a, &d, ParityFilter::All);
            let s2 = delta_derivations(&scaled, &d, ParityFilter::All);
            assert_eq!(s1.dim, s2.dim);
            let flat1: Vec<_> = s1.basis.iter().map(LinearMap::to_flat).collect();
            let flat2: Vec<_> = s2.basis.iter().map(LinearMap::to_flat).collect();
            assert_eq!(flat1, flat2);
        }
    }

    #[test]
    fn derivations_close_under_commutator() {
        // The 1-space is a Lie algebra: [phi, psi] stays in the span.
        let a = k3(q());
        let s = delta_derivations(&a, &qs(1), ParityFilter::All);
        let flat: Vec<Vec<Scalar>> = s.basis.iter().map(LinearMap::to_flat).collect();
        let span = matrix::span_basis(q(), &flat, a.dim() * a.dim());
        for x in &s.basis {
            for y in &s.basis {
                let xy = x.mat.mat_mul(&y.mat);
                let yx = y.mat.mat_mul(&x.mat);
                let mut comm = Mat::zero(q(), a.dim(), a.dim());
                for r in 0..a.dim() {
                    for c in 0..a.dim() {
                        *comm.at_mut(r, c) = q().sub(xy.at(r, c), yx.at(r, c));
                    }
                }
                let flat = LinearMap { mat: comm }.to_flat();
                assert!(matrix::in_span(q(), &span, &flat));
            }
        }
    }

    #[test]
    fn left_multiplication_map() {
        let a = k3(q());
        let e = a.basis_element(0);
        let le = LinearMap::left_multiplication(&a, &e);
        // L_e fixes e and halves z, w.
        assert_eq!(le.apply(&a, &e), e);
        let z = a.basis_element(1);
        assert_eq!(le.apply(&a, &z), a.scale(&half(), &z).unwrap());
    }
}
