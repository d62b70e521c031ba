//! The reproduction report: runs the whole catalog through the identity
//! checks, the delta solves, and the pencil analysis, and compares every
//! outcome against the expectation table shipped as data. Any mismatch is
//! a hard failure (exit code 4), so the report doubles as a batch
//! verification run.

use crate::json::render;
use jord_core::check::{self, CheckOptions, SweepMode};
use jord_core::field::Field;
use jord_core::rat::Rat;
use jord_core::solver::{self, Classification, ParityFilter};
use jord_core::zoo::{self, CatalogEntry};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

/// The expectation table, shipped in-repo as `data/expectations.json` so a
/// reader can audit exactly which rule every row is tested against.
pub const EXPECTATIONS: &str = include_str!("../data/expectations.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Md,
    Csv,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> Result<Format, String> {
        match s {
            "md" => Ok(Format::Md),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format `{other}` (use md, csv or json)")),
        }
    }
}

pub struct ReportOptions {
    pub field: Field,
    pub format: Format,
    pub full_sweep: bool,
    pub seed: u64,
    pub threads: usize,
}

struct Expectations {
    /// (algebra, delta) -> (dim, class, rule).
    rows: BTreeMap<(String, String), (usize, String, String)>,
    allowed_exceptionals: Vec<Rat>,
    require_half_nullity: usize,
    sums: Vec<SumExpectation>,
}

struct SumExpectation {
    summands: Vec<String>,
    delta: String,
    dim: usize,
    class: String,
    rule: String,
}

fn load_expectations() -> Expectations {
    let v: Value = serde_json::from_str(EXPECTATIONS).expect("expectations data parses");
    let mut rows = BTreeMap::new();
    for row in v["rows"].as_array().expect("rows") {
        rows.insert(
            (
                row["algebra"].as_str().unwrap().to_string(),
                row["delta"].as_str().unwrap().to_string(),
            ),
            (
                row["dim"].as_u64().unwrap() as usize,
                row["class"].as_str().unwrap().to_string(),
                row["rule"].as_str().unwrap().to_string(),
            ),
        );
    }
    let allowed_exceptionals = v["pencil"]["allowed_exceptionals"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| Rat::parse(d.as_str().unwrap()).unwrap())
        .collect();
    let require_half_nullity = v["pencil"]["require_half_nullity"].as_u64().unwrap() as usize;
    let sums = v["sums"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| SumExpectation {
            summands: s["summands"]
                .as_array()
                .unwrap()
                .iter()
                .map(|x| x.as_str().unwrap().to_string())
                .collect(),
            delta: s["delta"].as_str().unwrap().to_string(),
            dim: s["dim"].as_u64().unwrap() as usize,
            class: s["class"].as_str().unwrap().to_string(),
            rule: s["rule"].as_str().unwrap().to_string(),
        })
        .collect();
    Expectations {
        rows,
        allowed_exceptionals,
        require_half_nullity,
        sums,
    }
}

/// The deltas every catalog entry is solved at, in report order.
pub const REPORT_DELTAS: [&str; 6] = ["0", "1/2", "1", "-1", "2", "1/3"];

struct SolveRow {
    delta: String,
    dim: usize,
    class: String,
    expected_dim: usize,
    expected_class: String,
    rule: String,
    matched: bool,
}

struct EntryResult {
    name: String,
    dim: usize,
    unital: bool,
    checks_passed: bool,
    check_mode: String,
    solves: Vec<SolveRow>,
    /// None when the field has no pencil analysis (GF(p) runs).
    pencil: Option<(usize, String, bool)>,
}

struct SumResult {
    name: String,
    dim: usize,
    class: String,
    expected_dim: usize,
    expected_class: String,
    rule: String,
    matched: bool,
}

fn class_name(c: &Classification) -> String {
    match c {
        Classification::BlockScalar { .. } => "BlockScalar".to_string(),
        other => other.to_string(),
    }
}

fn run_entry(
    field: Field,
    entry: &CatalogEntry,
    alg: &jord_core::algebra::Superalgebra,
    exp: &Expectations,
    opts: &CheckOptions,
) -> Result<EntryResult, String> {
    let comm = check::check_supercommutativity(alg);
    let jordan = check::check_super_jordan_envelope(alg, opts).map_err(|e| e.to_string())?;
    let checks_passed = comm.passed && jordan.passed;
    let check_mode = match jordan.mode {
        SweepMode::Full => "full sweep".to_string(),
        SweepMode::Sampled { seed, quadruples } => {
            format!("sampled {quadruples} (seed {seed})")
        }
    };

    let mut solves = Vec::new();
    for dstr in REPORT_DELTAS {
        let drat = Rat::parse(dstr).unwrap();
        let delta = field
            .from_rat(&drat)
            .map_err(|e| format!("delta {dstr}: {e}"))?;
        let space = solver::delta_derivations(alg, &delta, ParityFilter::All);
        let class = class_name(&solver::classify_solution(&space, alg));
        let (edim, eclass, rule) = exp
            .rows
            .get(&(entry.name.clone(), dstr.to_string()))
            .cloned()
            .ok_or_else(|| format!("no expectation for {} at {dstr}", entry.name))?;
        let matched = space.dim == edim && class == eclass;
        solves.push(SolveRow {
            delta: dstr.to_string(),
            dim: space.dim,
            class,
            expected_dim: edim,
            expected_class: eclass,
            rule,
            matched,
        });
    }

    let pencil = if field == Field::Rationals {
        let set = solver::pencil_exceptional(alg).map_err(|e| e.to_string())?;
        let half = Rat::from_ratio(1, 2);
        let subset_ok = set
            .exceptionals
            .iter()
            .all(|(d, _)| exp.allowed_exceptionals.contains(d));
        let half_ok = set
            .exceptionals
            .iter()
            .any(|(d, n)| *d == half && *n == exp.require_half_nullity);
        let matched = subset_ok && half_ok && set.nonrational_degrees.is_empty();
        let desc = set
            .exceptionals
            .iter()
            .map(|(d, n)| format!("{}:{n}", d.to_fraction_string()))
            .collect::<Vec<_>>()
            .join(" ");
        Some((set.generic_rank, desc, matched))
    } else {
        None
    };

    Ok(EntryResult {
        name: entry.name.clone(),
        dim: entry.dim,
        unital: entry.unital,
        checks_passed,
        check_mode,
        solves,
        pencil,
    })
}

fn run_sums(field: Field, exp: &Expectations) -> Result<Vec<SumResult>, String> {
    let mut out = Vec::new();
    for sum in &exp.sums {
        let mut alg: Option<jord_core::algebra::Superalgebra> = None;
        for name in &sum.summands {
            let spec = crate::names::parse_target(name)?;
            let part = zoo::construct(field, &spec).map_err(|e| e.to_string())?;
            alg = Some(match alg {
                None => part,
                Some(a) => a.direct_sum(&part).map_err(|e| e.to_string())?,
            });
        }
        let alg = alg.expect("at least one summand");
        let drat = Rat::parse(&sum.delta).unwrap();
        let delta = field.from_rat(&drat).map_err(|e| e.to_string())?;
        let space = solver::delta_derivations(&alg, &delta, ParityFilter::All);
        let class = class_name(&solver::classify_solution(&space, &alg));
        let matched = space.dim == sum.dim && class == sum.class;
        out.push(SumResult {
            name: sum.summands.join(" (+) "),
            dim: alg.dim(),
            class,
            expected_dim: sum.dim,
            expected_class: sum.class.clone(),
            rule: sum.rule.clone(),
            matched,
        });
    }
    Ok(out)
}

pub struct ReportOutcome {
    pub text: String,
    pub all_match: bool,
}

pub fn run_report(opts: &ReportOptions) -> Result<ReportOutcome, String> {
    let exp = load_expectations();
    let check_opts = CheckOptions {
        seed: opts.seed,
        force_full_sweep: opts.full_sweep,
        ..Default::default()
    };
    let catalog = zoo::catalog(opts.field).map_err(|e| e.to_string())?;

    // Fan out per catalog entry; results land in fixed slots so the output
    // never depends on the thread count.
    let slots: Mutex<Vec<Option<Result<EntryResult, String>>>> =
        Mutex::new((0..catalog.len()).map(|_| None).collect());
    let next = AtomicUsize::new(0);
    let workers = opts.threads.clamp(1, catalog.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= catalog.len() {
                    break;
                }
                let (entry, alg) = &catalog[i];
                let res = run_entry(opts.field, entry, alg, &exp, &check_opts);
                slots.lock().unwrap()[i] = Some(res);
            });
        }
    });
    let mut entries = Vec::with_capacity(catalog.len());
    for slot in slots.into_inner().unwrap() {
        entries.push(slot.expect("every slot filled")?);
    }
    let sums = run_sums(opts.field, &exp)?;

    let all_match = entries.iter().all(|e| {
        e.checks_passed
            && e.solves.iter().all(|s| s.matched)
            && e.pencil.as_ref().map_or(true, |(_, _, m)| *m)
    }) && sums.iter().all(|s| s.matched);

    let text = match opts.format {
        Format::Md => render_md(&entries, &sums, opts),
        Format::Csv => render_csv(&entries, &sums),
        Format::Json => render_json(&entries, &sums, all_match),
    };
    Ok(ReportOutcome { text, all_match })
}

fn fmt_field(f: &Field) -> String {
    match f {
        Field::Rationals => "Q".into(),
        Field::GfP(p) => format!("GF({p})"),
    }
}

fn render_md(entries: &[EntryResult], sums: &[SumResult], opts: &ReportOptions) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "# Delta-derivation report over {}\n\n## Identity checks\n\n",
        fmt_field(&opts.field)
    ));
    out.push_str("| algebra | dim | unital | identities | sweep |\n");
    out.push_str("|---|---|---|---|---|\n");
    for e in entries {
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} |\n",
            e.name,
            e.dim,
            if e.unital { "yes" } else { "no" },
            if e.checks_passed { "pass" } else { "FAIL" },
            e.check_mode
        ));
    }
    out.push_str("\n## Derivation spaces\n\n");
    out.push_str("| algebra | delta | dim | class | expected | rule | match |\n");
    out.push_str("|---|---|---|---|---|---|---|\n");
    for e in entries {
        for s in &e.solves {
            out.push_str(&format!(
                "| {} | {} | {} | {} | {} {} | {} | {} |\n",
                e.name,
                s.delta,
                s.dim,
                s.class,
                s.expected_dim,
                s.expected_class,
                s.rule,
                if s.matched { "yes" } else { "NO" }
            ));
        }
    }
    out.push_str("\n## Pencil analysis\n\n");
    out.push_str("| algebra | generic rank | exceptional delta:nullity | match |\n");
    out.push_str("|---|---|---|---|\n");
    for e in entries {
        match &e.pencil {
            Some((rank, desc, matched)) => out.push_str(&format!(
                "| {} | {} | {} | {} |\n",
                e.name,
                rank,
                desc,
                if *matched { "yes" } else { "NO" }
            )),
            None => out.push_str(&format!(
                "| {} | - | skipped (finite field) | yes |\n",
                e.name
            )),
        }
    }
    out.push_str("\n## Direct sums\n\n");
    out.push_str("| sum | dim | class | expected | rule | match |\n");
    out.push_str("|---|---|---|---|---|---|\n");
    for s in sums {
        out.push_str(&format!(
            "| {} | {} | {} | {} {} | {} | {} |\n",
            s.name,
            s.dim,
            s.class,
            s.expected_dim,
            s.expected_class,
            s.rule,
            if s.matched { "yes" } else { "NO" }
        ));
    }
    out
}

/// RFC 4180 quoting.
fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_row(cells: &[String]) -> String {
    let mut row = cells
        .iter()
        .map(|c| csv_field(c))
        .collect::<Vec<_>>()
        .join(",");
    row.push_str("\r\n");
    row
}

fn render_csv(entries: &[EntryResult], sums: &[SumResult]) -> String {
    let mut out = String::new();
    out.push_str(&csv_row(&[
        "section".into(),
        "algebra".into(),
        "delta".into(),
        "dim".into(),
        "class".into(),
        "expected_dim".into(),
        "expected_class".into(),
        "rule".into(),
        "match".into(),
    ]));
    for e in entries {
        out.push_str(&csv_row(&[
            "checks".into(),
            e.name.clone(),
            String::new(),
            e.dim.to_string(),
            if e.checks_passed {
                "pass".into()
            } else {
                "FAIL".into()
            },
            String::new(),
            String::new(),
            e.check_mode.clone(),
            e.checks_passed.to_string(),
        ]));
        for s in &e.solves {
            out.push_str(&csv_row(&[
                "solve".into(),
                e.name.clone(),
                s.delta.clone(),
                s.dim.to_string(),
                s.class.clone(),
                s.expected_dim.to_string(),
                s.expected_class.clone(),
                s.rule.clone(),
                s.matched.to_string(),
            ]));
        }
        if let Some((rank, desc, matched)) = &e.pencil {
            out.push_str(&csv_row(&[
                "pencil".into(),
                e.name.clone(),
                String::new(),
                rank.to_string(),
                desc.clone(),
                String::new(),
                String::new(),
                "exceptional-deltas".into(),
                matched.to_string(),
            ]));
        }
    }
    for s in sums {
        out.push_str(&csv_row(&[
            "sum".into(),
            s.name.clone(),
            "1/2".into(),
            s.dim.to_string(),
            s.class.clone(),
            s.expected_dim.to_string(),
            s.expected_class.clone(),
            s.rule.clone(),
            s.matched.to_string(),
        ]));
    }
    out
}

fn render_json(entries: &[EntryResult], sums: &[SumResult], all_match: bool) -> String {
    let v = json!({
        "all_match": all_match,
        "entries": entries.iter().map(|e| json!({
            "algebra": e.name,
            "dim": e.dim,
            "unital": e.unital,
            "checks_passed": e.checks_passed,
            "check_mode": e.check_mode,
            "solves": e.solves.iter().map(|s| json!({
                "delta": s.delta,
                "dim": s.dim,
                "class": s.class,
                "expected_dim": s.expected_dim,
                "expected_class": s.expected_class,
                "rule": s.rule,
                "match": s.matched,
            })).collect::<Vec<_>>(),
            "pencil": e.pencil.as_ref().map(|(rank, desc, matched)| json!({
                "generic_rank": rank,
                "exceptionals": desc,
                "match": matched,
            })),
        })).collect::<Vec<_>>(),
        "sums": sums.iter().map(|s| json!({
            "sum": s.name,
            "dim": s.dim,
            "class": s.class,
            "expected_dim": s.expected_dim,
            "expected_class": s.expected_class,
            "rule": s.rule,
            "match": s.matched,
        })).collect::<Vec<_>>(),
    });
    render(&v)
}
