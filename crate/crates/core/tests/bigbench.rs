//! Scale probes for the large catalog entries; run with --release.

use jord_core::field::Field;
use jord_core::solver::{self, ParityFilter};
use jord_core::zoo::{self, CompositionKind, ZooSpec};

#[test]
#[ignore]
fn albert_half_derivations() {
    let q = Field::rationals();
    let start = std::time::Instant::now();
    let alb = zoo::construct(
        q,
        &ZooSpec::Hermitian {
            kind: CompositionKind::SplitOctonion,
            n: 3,
        },
    )
    .unwrap();
    eprintln!("construct: {:?}", start.elapsed());
    let t = std::time::Instant::now();
    let half = q.from_ratio(1, 2).unwrap();
    let s = solver::delta_derivations(&alb, &half, ParityFilter::All);
    eprintln!("solve 1/2: {:?} dim={}", t.elapsed(), s.dim);
    assert_eq!(s.dim, 1);
    let t = std::time::Instant::now();
    let s = solver::delta_derivations(&alb, &q.from_i64(1), ParityFilter::All);
    eprintln!("solve 1: {:?} dim={}", t.elapsed(), s.dim);
    let t = std::time::Instant::now();
    let s2 = solver::delta_derivations(&alb, &q.from_i64(2), ParityFilter::All);
    eprintln!("solve 2: {:?} dim={}", t.elapsed(), s2.dim);
}

#[test]
#[ignore]
fn albert_pencil() {
    let q = Field::rationals();
    let alb = zoo::construct(
        q,
        &ZooSpec::Hermitian {
            kind: CompositionKind::SplitOctonion,
            n: 3,
        },
    )
    .unwrap();
    let t = std::time::Instant::now();
    let e = solver::pencil_exceptional(&alb).unwrap();
    eprintln!(
        "pencil: {:?} rank={} exceptionals={:?} nonrational={:?}",
        t.elapsed(),
        e.generic_rank,
        e.exceptionals
            .iter()
            .map(|(d, n)| (d.to_fraction_string(), *n))
            .collect::<Vec<_>>(),
        e.nonrational_degrees
    );
}

#[test]
#[ignore]
fn albert_oracle() {
    let q = Field::rationals();
    let alb = zoo::construct(
        q,
        &ZooSpec::Hermitian {
            kind: CompositionKind::SplitOctonion,
            n: 3,
        },
    )
    .unwrap();
    let one = q.from_i64(1);
    let sys = solver::build_delta_system(&alb, &one);
    let rows: Vec<_> = sys.rows.into_iter().map(|(_, r)| r).collect();
    let t = std::time::Instant::now();
    let ns = jord_core::oracle::oracle_nullspace(q, &rows, sys.ncols);
    eprintln!("oracle at 1: {:?} dim={}", t.elapsed(), ns.len());
}

#[test]
#[ignore]
fn catalog_survey() {
    let q = Field::rationals();
    let cat = zoo::catalog(q).unwrap();
    let deltas: [(i64, i64); 7] = [(0, 1), (1, 2), (1, 1), (-1, 1), (2, 1), (1, 3), (5, 1)];
    for (entry, alg) in &cat {
        let t = std::time::Instant::now();
        let mut dims = Vec::new();
        for (n, d) in deltas {
            let delta = q.from_ratio(n, d).unwrap();
            let s = solver::delta_derivations(alg, &delta, ParityFilter::All);
            dims.push(format!(
                "{n}/{d}:{} ({},{})",
                s.dim, s.parity_split.0, s.parity_split.1
            ));
        }
        let p = solver::pencil_exceptional(alg).unwrap();
        eprintln!(
            "{:24} dim={:3} unital={} solves[{}] pencil rank={} exc={:?} nonrat={:?} [{:?}]",
            entry.name,
            entry.dim,
            entry.unital,
            dims.join(" "),
            p.generic_rank,
            p.exceptionals
                .iter()
                .map(|(d, n)| (d.to_fraction_string(), *n))
                .collect::<Vec<_>>(),
            p.nonrational_degrees,
            t.elapsed()
        );
    }
}
