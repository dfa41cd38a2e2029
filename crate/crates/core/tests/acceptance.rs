//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use trusskit_core::bimult::DEFAULT_OMEGA_LIMIT;
use trusskit_core::classify::{
    classify_trivial_annihilator, classify_truss_list, classify_zero_mult, classify_trusses, enumerate_rings,
    raw_truss_search,
};
use trusskit_core::verify::{run_suite, RingSide, VerifyParams};
use trusskit_core::{catalog, FinAbGroup};

struct Outcome {
    ok: bool,
    detail: String,
}

impl Outcome {
    fn new(ok: bool, detail: impl Into<String>) -> Self {
        Outcome { ok, detail: detail.into() }
    }
}

fn group(orders: &[u64]) -> FinAbGroup {
    FinAbGroup::new(orders).unwrap()
}

fn suite(id: &str, params: VerifyParams) -> Outcome {
    match run_suite(id, &params) {
        Ok(r) => Outcome::new(
            r.passed,
            format!("{id}: {} checks{}", r.checked, r.witness.map(|w| format!(", witness {w}")).unwrap_or_default()),
        ),
        Err(e) => Outcome::new(false, format!("{id}: {e}")),
    }
}

fn params(p: u64) -> VerifyParams {
    VerifyParams { p, ..VerifyParams::default() }
}

fn rings_and_trusses(p: u64) -> Outcome {
    let a = group(&[p, p]);
    let rings = enumerate_rings(&a, true).unwrap().class_count;
    let trusses = classify_trusses(&a, DEFAULT_OMEGA_LIMIT).unwrap().class_count;
    let mut ok = rings == 8 && trusses == 23;
    let mut detail = format!("{rings} ring classes, {trusses} truss classes");
    if p == 2 {
        // Direct search over all bi-affine tables, no rings involved.
        let raw = raw_truss_search(&a).unwrap();
        let direct = classify_truss_list(&a, &raw, "direct").unwrap().class_count;
        ok &= direct == 23;
        detail.push_str(&format!(", direct search {direct}"));
    }
    Outcome::new(ok, detail)
}

fn zero_mult() -> Outcome {
    let mut got = Vec::new();
    for p in [2u64, 3] {
        for (n, want) in [(1usize, 4usize), (2, 10), (3, 20)] {
            let start = Instant::now();
            let c = classify_zero_mult(&group(&vec![p; n])).unwrap().class_count;
            let took = start.elapsed();
            got.push(format!("p={p} n={n}: {c} in {:.1}s", took.as_secs_f64()));
            if c != want || took > Duration::from_secs(30) {
                return Outcome::new(false, got.join(", "));
            }
        }
    }
    Outcome::new(true, got.join(", "))
}

fn simple_two() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for p in [2u64, 3] {
        for side in [RingSide::Row, RingSide::Col] {
            let o = suite("simple-two", VerifyParams { p, side, ..VerifyParams::default() });
            ok &= o.ok;
            parts.push(o.detail);
        }
        for (name, r) in catalog::named_rings(p).unwrap() {
            if r.identity().is_some() {
                let c = classify_trivial_annihilator(&r, name, DEFAULT_OMEGA_LIMIT).unwrap().class_count;
                ok &= c == 1;
                parts.push(format!("{name}/{p}: {c}"));
            }
        }
    }
    Outcome::new(ok, parts.join("; "))
}

fn all_of(ids: &[&str]) -> Outcome {
    let outs: Vec<Outcome> = ids.iter().map(|id| suite(id, params(2))).collect();
    Outcome::new(outs.iter().all(|o| o.ok), outs.iter().map(|o| o.detail.as_str()).collect::<Vec<_>>().join("; "))
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, Duration, Box<dyn Fn() -> Outcome>)> = vec![
        ("classify Z2 x Z2: 8 rings, 23 trusses", Duration::from_secs(60), Box::new(|| rings_and_trusses(2))),
        ("classify Z3 x Z3: 8 rings, 23 trusses", Duration::from_secs(600), Box::new(|| rings_and_trusses(3))),
        ("zero-multiplication counts 4, 10, 20", Duration::MAX, Box::new(zero_mult)),
        ("row/column rings carry two trusses, unital rings one", Duration::MAX, Box::new(simple_two)),
        ("every truss is rebuilt from its retract ring", Duration::MAX, Box::new(|| suite("truss-ring-roundtrip", params(2)))),
        ("word extension map is a ring homomorphism", Duration::MAX, Box::new(|| suite("ext-0", params(2)))),
        ("weak equivalence agrees with the ring-side oracle", Duration::MAX, Box::new(|| suite("h-equiv", params(2)))),
        ("extension ring is universal", Duration::MAX, Box::new(|| suite("universal-property", params(2)))),
        ("smallness examples", Duration::MAX, Box::new(|| suite("smallness-examples", params(2)))),
        ("heap, operator and annihilator laws", Duration::MAX, Box::new(|| all_of(&["heap-laws", "omega-laws", "annihilator-bimult"]))),
    ];
    let mut failed = Vec::new();
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let took = start.elapsed();
        let ok = out.ok && took <= *budget;
        let slow = if out.ok && !ok { " (over time budget)" } else { "" };
        println!(
            "{} {:>2} {name} [{:.2}s]{slow}: {}",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            took.as_secs_f64(),
            out.detail
        );
        if !ok {
            failed.push(i + 1);
        }
    }
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        eprintln!("failing criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
