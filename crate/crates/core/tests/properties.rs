//! Property tests for the algebraic laws the library is built on.

use jord_core::algebra::{Element, Parity, Superalgebra};
use jord_core::field::{Field, Scalar};
use jord_core::rat::Rat;
use jord_core::solver::{self, ParityFilter, SparseRow};
use jord_core::zoo::{self, ZooSpec};
use proptest::prelude::*;

fn q() -> Field {
    Field::rationals()
}

fn k3() -> Superalgebra {
    zoo::construct(q(), &ZooSpec::KaplanskyK3).unwrap()
}

fn arb_scalar() -> impl Strategy<Value = Scalar> {
    (-12i64..12, 1i64..6).prop_map(|(n, d)| Scalar::Q(Rat::from_ratio(n, d)))
}

fn arb_element(
    alg: &'static dyn Fn() -> Superalgebra,
    dim: usize,
) -> impl Strategy<Value = Element> {
    proptest::collection::vec(arb_scalar(), dim)
        .prop_map(move |coords| alg().element(coords).unwrap())
}

proptest! {
    // Bilinearity of the product in the first slot with exact scalars.
    #[test]
    fn multiply_is_bilinear(
        a in arb_element(&k3, 3),
        b in arb_element(&k3, 3),
        c in arb_element(&k3, 3),
        alpha in arb_scalar(),
    ) {
        let alg = k3();
        let a = alg.element(a.coords.clone()).unwrap();
        let b = alg.element(b.coords.clone()).unwrap();
        let c = alg.element(c.coords.clone()).unwrap();
        let lhs = alg.multiply(&alg.add(&alg.scale(&alpha, &a).unwrap(), &b).unwrap(), &c).unwrap();
        let rhs = alg.add(
            &alg.scale(&alpha, &alg.multiply(&a, &c).unwrap()).unwrap(),
            &alg.multiply(&b, &c).unwrap(),
        ).unwrap();
        prop_assert_eq!(lhs.coords, rhs.coords);
    }

    // Grading: the product of parity components lands in the xor parity.
    #[test]
    fn grading_respected(a in arb_element(&k3, 3), b in arb_element(&k3, 3)) {
        let alg = k3();
        let a = alg.element(a.coords.clone()).unwrap();
        let b = alg.element(b.coords.clone()).unwrap();
        for pa in [Parity::Even, Parity::Odd] {
            for pb in [Parity::Even, Parity::Odd] {
                let prod = alg.multiply(
                    &a.parity_component(&alg, pa),
                    &b.parity_component(&alg, pb),
                ).unwrap();
                let want = pa.xor(pb);
                for (i, c) in prod.coords.iter().enumerate() {
                    if !c.is_zero() {
                        prop_assert_eq!(alg.parity(i), want);
                    }
                }
            }
        }
    }

    // The two nullspace routes agree on random sparse systems.
    #[test]
    fn nullspace_routes_agree(
        rows in proptest::collection::vec(
            proptest::collection::vec(-9i64..10, 1..8),
            1..10,
        )
    ) {
        let ncols = rows.iter().map(Vec::len).max().unwrap();
        let sparse: Vec<SparseRow<Scalar>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| **v != 0)
                    .map(|(i, v)| (i as u32, q().from_i64(*v)))
                    .collect()
            })
            .collect();
        let a = solver::nullspace_exact(q(), &sparse, ncols);
        let b = jord_core::oracle::oracle_nullspace(q(), &sparse, ncols);
        prop_assert_eq!(a, b);
    }

    // Every nullspace vector really solves every row.
    #[test]
    fn nullspace_vectors_annihilate_rows(
        rows in proptest::collection::vec(
            proptest::collection::vec(-9i64..10, 4),
            1..6,
        )
    ) {
        let sparse: Vec<SparseRow<Scalar>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| **v != 0)
                    .map(|(i, v)| (i as u32, q().from_i64(*v)))
                    .collect()
            })
            .collect();
        for v in solver::nullspace_exact(q(), &sparse, 4) {
            for row in &sparse {
                let mut acc = q().zero();
                for (u, c) in row {
                    acc = q().add(&acc, &q().mul(c, &v[*u as usize]));
                }
                prop_assert!(acc.is_zero());
            }
        }
    }
}

#[test]
fn half_space_dimension_adds_over_direct_sums() {
    // Unital summands: dim of the 1/2-space of the sum is the sum of the
    // dims (computed, not assumed).
    let h = q().from_ratio(1, 2).unwrap();
    let a = zoo::construct(q(), &ZooSpec::BilinearForm { d: 3 }).unwrap();
    let b = zoo::construct(q(), &ZooSpec::BilinearForm { d: 2 }).unwrap();
    let da = solver::delta_derivations(&a, &h, ParityFilter::All).dim;
    let db = solver::delta_derivations(&b, &h, ParityFilter::All).dim;
    let sum = a.direct_sum(&b).unwrap();
    let ds = solver::delta_derivations(&sum, &h, ParityFilter::All).dim;
    assert_eq!(ds, da + db);

    // J(V,f) d=3 plus the ground field: the 1/2-space is exactly the two
    // block identities.
    let f1 = zoo::construct(q(), &ZooSpec::Scalar).unwrap();
    let sum = zoo::construct(q(), &ZooSpec::BilinearForm { d: 3 })
        .unwrap()
        .direct_sum(&f1)
        .unwrap();
    let s = solver::delta_derivations(&sum, &h, ParityFilter::All);
    assert_eq!(s.dim, 2);
    let dim = sum.dim();
    let block = |range: std::ops::Range<usize>| {
        let mut m = jord_core::matrix::Mat::zero(q(), dim, dim);
        for i in range {
            *m.at_mut(i, i) = q().one();
        }
        jord_core::solver::LinearMap { mat: m }
    };
    assert_eq!(s.basis, vec![block(0..4), block(4..5)]);
}
