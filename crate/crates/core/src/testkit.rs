//! Hand-written fixture tables shared across unit tests. These deliberately
//! do NOT go through the zoo constructors, so constructor bugs cannot hide
//! from the tests that use them as independent references.

use crate::algebra::{Parity, Superalgebra, TableBuilder};
use crate::field::Field;

/// Kaplansky K3 straight from its defining table.
pub(crate) fn k3(field: Field) -> Superalgebra {
    let mut t = TableBuilder::new();
    let one = field.one();
    let half = field.from_ratio(1, 2).unwrap();
    t.add(&field, 0, 0, 0, one.clone()); // e*e = e
    t.add(&field, 0, 1, 1, half.clone()); // e*z = z/2
    t.add(&field, 1, 0, 1, half.clone());
    t.add(&field, 0, 2, 2, half.clone()); // e*w = w/2
    t.add(&field, 2, 0, 2, half.clone());
    t.add(&field, 1, 2, 0, one.clone()); // z*w = e
    t.add(&field, 2, 1, 0, field.from_i64(-1)); // w*z = -e
    Superalgebra::new(
        "K3",
        field,
        vec![Parity::Even, Parity::Odd, Parity::Odd],
        vec!["e".into(), "z".into(), "w".into()],
        t,
    )
    .unwrap()
}

/// Full 2x2 matrix algebra over the field, all even, associative.
pub(crate) fn m2(field: Field) -> Superalgebra {
    let mut t = TableBuilder::new();
    let idx = |r: usize, c: usize| r * 2 + c;
    for r in 0..2 {
        for c in 0..2 {
            for c2 in 0..2 {
                t.add(&field, idx(r, c), idx(c, c2), idx(r, c2), field.one());
            }
        }
    }
    Superalgebra::new(
        "M2",
        field,
        vec![Parity::Even; 4],
        vec!["e1,1".into(), "e1,2".into(), "e2,1".into(), "e2,2".into()],
        t,
    )
    .unwrap()
}
