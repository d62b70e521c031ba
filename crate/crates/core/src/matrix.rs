//! Dense exact matrices over a field, with reduced row echelon form.
//!
//! This is the workhorse for subspace manipulation (unit detection, fixed
//! spaces of involutions, spans of products, membership tests). The
//! fraction-free Bareiss path used by the derivation solver lives in
//! `solver`; the two are deliberately separate code paths.

use crate::field::{Field, FieldError, Scalar};
use alloc::vec;
use alloc::vec::Vec;

/// Dense row-major matrix of field scalars.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    pub field: Field,
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zero(field: Field, rows: usize, cols: usize) -> Mat {
        Mat {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Mat {
        let mut m = Mat::zero(field, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = field.one();
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c));
        Mat {
            field,
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mat_mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows);
        let f = self.field;
        let mut out = Mat::zero(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    *out.at_mut(i, j) = f.add(out.at(i, j), &f.mul(a, b));
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for (j, x) in v.iter().enumerate() {
                    if !x.is_zero() && !self.at(i, j).is_zero() {
                        acc = f.add(&acc, &f.mul(self.at(i, j), x));
                    }
                }
                acc
            })
            .collect()
    }

    /// In-place reduction to reduced row echelon form. Returns the pivot
    /// columns in order. Pivoting is first-nonzero; exact arithmetic needs
    /// no magnitude heuristics.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            let Some(p) = (row..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = f
                .inv(self.at(row, col))
                .expect("nonzero pivot is invertible");
            for c in col..self.cols {
                *self.at_mut(row, c) = f.mul(self.at(row, c), &inv);
            }
            for r in 0..self.rows {
                if r != row && !self.at(r, col).is_zero() {
                    let factor = self.at(r, col).clone();
                    for c in col..self.cols {
                        let delta = f.mul(&factor, self.at(row, c));
                        *self.at_mut(r, c) = f.sub(self.at(r, c), &delta);
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == self.rows {
                break;
            }
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

/// Row-reduced basis of the span of the given vectors: RREF rows, zero rows
/// dropped. Deterministic and canonical for a given span.
pub fn span_basis(field: Field, vectors: &[Vec<Scalar>], dim: usize) -> Vec<Vec<Scalar>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let mut m = Mat::from_rows(field, vectors.to_vec());
    assert_eq!(m.cols, dim);
    let pivots = m.rref();
    (0..pivots.len()).map(|r| m.row(r).to_vec()).collect()
}

/// Is `v` in the row span of the RREF basis produced by [`span_basis`]?
pub fn in_span(field: Field, basis: &[Vec<Scalar>], v: &[Scalar]) -> bool {
    // Reduce v against the RREF rows; membership iff the residue vanishes.
    let f = field;
    let mut v = v.to_vec();
    for row in basis {
        let pivot = row.iter().position(|x| !x.is_zero());
        let Some(p) = pivot else { continue };
        if v[p].is_zero() {
            continue;
        }
        let factor = f.div(&v[p], &row[p]).expect("pivot nonzero");
        for (vc, rc) in v.iter_mut().zip(row) {
            *vc = f.sub(vc, &f.mul(&factor, rc));
        }
    }
    v.iter().all(Scalar::is_zero)
}

/// Solves `A x = b` exactly. Returns `Ok(None)` when inconsistent; when
/// consistent, returns one particular solution together with the number of
/// free columns.
pub fn solve(
    field: Field,
    a: &Mat,
    b: &[Scalar],
) -> Result<Option<(Vec<Scalar>, usize)>, FieldError> {
    assert_eq!(a.rows, b.len());
    let f = field;
    let mut aug = Mat::zero(f, a.rows, a.cols + 1);
    for r in 0..a.rows {
        for c in 0..a.cols {
            *aug.at_mut(r, c) = a.at(r, c).clone();
        }
        *aug.at_mut(r, a.cols) = b[r].clone();
    }
    let pivots = aug.rref();
    if pivots.contains(&a.cols) {
        return Ok(None); // inconsistent: pivot in the augmented column
    }
    let mut x = vec![f.zero(); a.cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug.at(r, a.cols).clone();
    }
    Ok(Some((x, a.cols - pivots.len())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    fn s(v: i64) -> Scalar {
        q().from_i64(v)
    }

    #[test]
    fn rref_and_span() {
        let rows = vec![
            vec![s(1), s(2), s(3)],
            vec![s(2), s(4), s(6)],
            vec![s(0), s(1), s(1)],
        ];
        let basis = span_basis(q(), &rows, 3);
        assert_eq!(basis.len(), 2);
        assert!(in_span(q(), &basis, &[s(1), s(3), s(4)]));
        assert!(!in_span(q(), &basis, &[s(0), s(0), s(1)]));
    }

    #[test]
    fn solve_unique_and_inconsistent() {
        let a = Mat::from_rows(q(), vec![vec![s(2), s(0)], vec![s(0), s(4)]]);
        let (x, free) = solve(q(), &a, &[s(6), s(8)]).unwrap().unwrap();
        assert_eq!(x, vec![s(3), s(2)]);
        assert_eq!(free, 0);

        let a = Mat::from_rows(q(), vec![vec![s(1), s(1)], vec![s(1), s(1)]]);
        assert!(solve(q(), &a, &[s(1), s(2)]).unwrap().is_none());
    }

    #[test]
    fn works_over_gf7() {
        let f = Field::gf(7).unwrap();
        let rows = vec![
            vec![f.from_i64(3), f.from_i64(1)],
            vec![f.from_i64(6), f.from_i64(2)],
        ];
        let basis = span_basis(f, &rows, 2);
        assert_eq!(basis.len(), 1);
        assert!(basis[0][0].is_one());
    }
}
