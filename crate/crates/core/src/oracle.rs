//! Anti-bug oracle: a naive exact Gauss-Jordan nullspace, kept as an
//! independent code path from the fraction-free solver. No fraction-free
//! bookkeeping, no sparse pivot tricks: rows are reduced against a dense
//! RREF with immediate division by the pivot. Tests cross-validate the
//! solver against this on random matrices and on every catalog constraint
//! system.

use crate::field::{Field, Scalar};
use crate::solver::SparseRow;
use alloc::vec;
use alloc::vec::Vec;

/// Canonical nullspace basis via naive Gauss-Jordan: same output contract
/// as `solver::nullspace_exact` (one vector per free column, ascending,
/// first nonzero coordinate 1), computed by an entirely different method.
pub fn oracle_nullspace(
    field: Field,
    rows: &[SparseRow<Scalar>],
    ncols: usize,
) -> Vec<Vec<Scalar>> {
    let f = field;
    // RREF rows stored dense, sorted by pivot column.
    let mut rref: Vec<(usize, Vec<Scalar>)> = Vec::new();
    for row in rows {
        let mut v = vec![f.zero(); ncols];
        for (u, c) in row {
            v[*u as usize] = f.add(&v[*u as usize], c);
        }
        // Reduce against existing rows.
        for (pc, prow) in &rref {
            if v[*pc].is_zero() {
                continue;
            }
            let factor = v[*pc].clone();
            for (x, p) in v.iter_mut().zip(prow) {
                *x = f.sub(x, &f.mul(&factor, p));
            }
        }
        let Some(lead) = v.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        // Normalize the pivot to 1 and eliminate it from earlier rows.
        let inv = f.inv(&v[lead]).unwrap();
        for x in &mut v {
            *x = f.mul(x, &inv);
        }
        for (_, prow) in &mut rref {
            if prow[lead].is_zero() {
                continue;
            }
            let factor = prow[lead].clone();
            for (p, x) in prow.iter_mut().zip(&v) {
                *p = f.sub(p, &f.mul(&factor, x));
            }
        }
        let pos = rref.partition_point(|(pc, _)| *pc < lead);
        rref.insert(pos, (lead, v));
    }

    let mut is_pivot = vec![false; ncols];
    for (pc, _) in &rref {
        is_pivot[*pc] = true;
    }
    let mut basis = Vec::new();
    for free in 0..ncols {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![f.zero(); ncols];
        v[free] = f.one();
        for (pc, prow) in &rref {
            // RREF: the pivot row directly gives the pivot coordinate.
            if !prow[free].is_zero() {
                v[*pc] = f.neg(&prow[free]);
            }
        }
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

/// Rank by the same naive reduction.
pub fn oracle_rank(field: Field, rows: &[SparseRow<Scalar>], ncols: usize) -> usize {
    ncols - oracle_nullspace(field, rows, ncols).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    fn qs(v: i64) -> Scalar {
        q().from_i64(v)
    }

    #[test]
    fn empty_for_identity() {
        let rows = vec![vec![(0u32, qs(1))], vec![(1u32, qs(1))]];
        assert!(oracle_nullspace(q(), &rows, 2).is_empty());
    }

    #[test]
    fn matches_hand_example() {
        let rows = vec![
            vec![(0u32, qs(1)), (1u32, qs(1))],
            vec![(0u32, qs(2)), (1u32, qs(2))],
        ];
        let ns = oracle_nullspace(q(), &rows, 2);
        assert_eq!(ns, vec![vec![qs(1), qs(-1)]]);
    }

    #[test]
    fn agrees_with_solver_on_random_matrices() {
        use crate::rng::SplitMix64;
        use crate::solver::nullspace_exact;
        let mut rng = SplitMix64::new(0xACE);
        for _ in 0..200 {
            let nrows = 1 + rng.below(8);
            let ncols = 1 + rng.below(8);
            let rows: Vec<SparseRow<Scalar>> = (0..nrows)
                .map(|_| {
                    (0..ncols as u32)
                        .filter_map(|c| {
                            let v = rng.small_i64(9);
                            (v != 0).then(|| (c, qs(v)))
                        })
                        .collect()
                })
                .collect();
            let a = nullspace_exact(q(), &rows, ncols);
            let b = oracle_nullspace(q(), &rows, ncols);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn agrees_over_gf5() {
        use crate::rng::SplitMix64;
        use crate::solver::nullspace_exact;
        let f = Field::gf(5).unwrap();
        let mut rng = SplitMix64::new(0xBEE);
        for _ in 0..100 {
            let nrows = 1 + rng.below(6);
            let ncols = 1 + rng.below(6);
            let rows: Vec<SparseRow<Scalar>> = (0..nrows)
                .map(|_| {
                    (0..ncols as u32)
                        .filter_map(|c| {
                            let v = rng.below(5) as i64;
                            (v != 0).then(|| (c, f.from_i64(v)))
                        })
                        .collect()
                })
                .collect();
            assert_eq!(
                nullspace_exact(f, &rows, ncols),
                oracle_nullspace(f, &rows, ncols)
            );
        }
    }
}
