use std::collections::HashMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use serde_json::{json, Value};
use trusskit_core::classify::{
    accumulate_shard, classify_homothetic_trusses, classify_trivial_annihilator, classify_zero_mult, enumerate_rings,
    finish_truss_report, truss_work_items, ClassificationReport, TrussAccumulator, TRUSS_CLAIM,
};
use trusskit_core::homext::{equivalence_check, IntElem};
use trusskit_core::ring::GroupSymmetry;
use trusskit_core::serial::{
    datum_from_json, parse_elem, ring_from_json, truss_from_json, truss_to_json, ElemRepr, RingJson, TrussJson,
};
use trusskit_core::trussext::{
    chi, parse_word, search_minimal_extension, smallness_report, word_normalize, TrussExtension,
};
use trusskit_core::verify::{run_suite, summary, VerifyParams};
use trusskit_core::{catalog, Error, FinAbGroup, Truss};

use crate::config::RunConfig;
use crate::{ClassifyArgs, EquivArgs, ExtendArgs, Format, Mode, RingArgs, ValidateArgs, VerifyArgs};

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

fn exit_code_of(e: &Error) -> u8 {
    match e {
        Error::AxiomViolation { .. } | Error::Datum { .. } | Error::InvalidBilinear { .. } | Error::NotAnIdeal => {
            EXIT_FAILURE
        }
        Error::Resource { .. } => EXIT_RESOURCE,
        _ => EXIT_USAGE,
    }
}

fn error_json(e: &Error) -> Value {
    let kind = match e {
        Error::InvalidOrder(_) => "invalid-order",
        Error::InvalidElement(_) => "invalid-element",
        Error::InvalidMap(_) => "invalid-map",
        Error::InvalidBilinear { .. } => "invalid-bilinear",
        Error::AxiomViolation { .. } => "axiom-violation",
        Error::Datum { .. } => "datum-condition",
        Error::NotAnIdeal => "not-an-ideal",
        Error::NotPrime(_) => "not-prime",
        Error::Precondition(_) => "precondition",
        Error::Resource { .. } => "resource",
        Error::Parse(_) => "parse",
        Error::Unsupported(_) => "unsupported",
    };
    let mut v = json!({ "error": kind, "message": e.to_string() });
    match e {
        Error::AxiomViolation { axiom, witness } => {
            v["axiom"] = json!(format!("{axiom:?}"));
            v["witness"] = json!(witness);
        }
        Error::Datum { condition, witness } => {
            v["condition"] = json!(condition);
            v["witness"] = json!(witness);
        }
        Error::InvalidBilinear { i, j } => v["witness"] = json!([i, j]),
        Error::Resource { needed, limit, .. } => {
            v["needed"] = json!(needed.to_string());
            v["limit"] = json!(limit.to_string());
        }
        _ => {}
    }
    v
}

pub fn report_failure(e: &anyhow::Error) -> ExitCode {
    let (code, body) = match e.downcast_ref::<Error>() {
        Some(err) => (exit_code_of(err), error_json(err)),
        None => (EXIT_USAGE, json!({ "error": "usage", "message": format!("{e:#}") })),
    };
    eprintln!("{}", serde_json::to_string_pretty(&body).expect("json"));
    ExitCode::from(code)
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{text}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
                _ => Ok(()),
            }
        }
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("json")
}

fn format_for(explicit: Option<Format>, cfg: &RunConfig, out: Option<&Path>) -> Format {
    explicit.or(cfg.format).unwrap_or_else(|| {
        match out.and_then(|p| p.extension()).and_then(|e| e.to_str()) {
            Some("csv") => Format::Csv,
            Some("md") => Format::Md,
            _ => Format::Json,
        }
    })
}

fn render(report: &ClassificationReport, format: Format) -> String {
    match format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
        Format::Md => report.to_markdown(),
    }
}

fn pp_prime(group: &FinAbGroup) -> anyhow::Result<u64> {
    match group.orders() {
        [p, q] if p == q => Ok(*p),
        _ => Err(anyhow!(Error::Parse(format!(
            "catalog rings live on [p,p]; got group {:?}",
            group.orders()
        )))),
    }
}

fn sharded_trusses(cfg: &RunConfig, group: &FinAbGroup, shards: usize, dir: Option<&PathBuf>) -> anyhow::Result<ClassificationReport> {
    let items = truss_work_items(group, cfg.omega_limit())?;
    let sym = GroupSymmetry::new(group);
    if let Some(d) = dir {
        std::fs::create_dir_all(d).with_context(|| format!("creating {}", d.display()))?;
    }
    let tag: Vec<String> = group.orders().iter().map(|o| o.to_string()).collect();
    let mut merged = TrussAccumulator::new(group.orders());
    for s in 0..shards {
        let path = dir.map(|d| d.join(format!("trusses-{}-shard-{s}-of-{shards}.json", tag.join("x"))));
        let cached = match &path {
            Some(p) if p.exists() => {
                let acc: TrussAccumulator = serde_json::from_str(&read(p)?)
                    .map_err(|e| Error::Parse(format!("checkpoint {}: {e}", p.display())))?;
                (acc.orders == group.orders()).then_some(acc)
            }
            _ => None,
        };
        let acc = match cached {
            Some(acc) => acc,
            None => {
                let acc = accumulate_shard(group, &items, &sym, s, shards);
                if let Some(p) = &path {
                    std::fs::write(p, serde_json::to_string(&acc)?).with_context(|| format!("writing {}", p.display()))?;
                }
                acc
            }
        };
        merged.merge(acc);
    }
    Ok(finish_truss_report(&merged, &sym, TRUSS_CLAIM)?)
}

pub fn classify(cfg: &RunConfig, a: &ClassifyArgs) -> anyhow::Result<ExitCode> {
    let group = FinAbGroup::parse(&a.group)?;
    let limit = cfg.omega_limit();
    let report = if a.zero_mult {
        classify_zero_mult(&group)?
    } else if a.rings {
        enumerate_rings(&group, true)?
    } else if let Some(token) = &a.trivial_ann {
        let r = catalog::named_ring(token, pp_prime(&group)?)?;
        classify_trivial_annihilator(&r, token, limit)?
    } else if let Some(token) = &a.ring {
        let r = catalog::named_ring(token, pp_prime(&group)?)?;
        classify_homothetic_trusses(&r, token, limit)?
    } else {
        let shards = a.shards.or(cfg.shards).unwrap_or(1);
        if shards == 0 {
            return Err(anyhow!(Error::Parse("shard count must be positive".into())));
        }
        let dir = a.checkpoint_dir.clone().or_else(|| cfg.checkpoint_dir.clone());
        sharded_trusses(cfg, &group, shards, dir.as_ref())?
    };
    let out = a.out.as_deref();
    emit(out, &render(&report, format_for(a.format, cfg, out)))?;
    Ok(ExitCode::SUCCESS)
}

fn int_elem_json(g: &FinAbGroup, x: &IntElem) -> Value {
    json!({ "a": ElemRepr::of(g, x.a), "k": x.k.to_string() })
}

pub fn extend(_cfg: &RunConfig, a: &ExtendArgs) -> anyhow::Result<ExitCode> {
    let t = truss_from_json(&read(&a.truss)?)?;
    let g = t.group().clone();
    let e = parse_elem(&a.elem, &g)?;
    let ext = TrussExtension::new(&t, e)?;
    let cyclic = ext.cyclic()?;
    let emb = ext.cyclic_embedding()?;
    let smallness = smallness_report(&emb)?;
    let d = ext.datum();
    let mut out = json!({
        "mode": format!("{:?}", a.mode).to_lowercase(),
        "e": ElemRepr::of(&g, e),
        "retract_ring": RingJson::from_ring(d.ring()),
        "epsilon": trusskit_core::serial::DatumJson::from_datum(d),
        "smallness": smallness,
    });
    match a.mode {
        Mode::Integral => {
            // Products of the generators (a, 1) of T(e), in truss coordinates.
            let table: Vec<Value> = (0..t.size())
                .flat_map(|x| (0..t.size()).map(move |y| (x, y)))
                .map(|(x, y)| int_elem_json(&g, &ext.mul(&ext.iota(x), &ext.iota(y))))
                .collect();
            out["unit_products"] = json!(table);
        }
        Mode::Cyclic => {
            out["modulus"] = json!(cyclic.modulus());
            out["cyclic_ring"] = json!(RingJson::from_ring(cyclic.ring()));
        }
        Mode::Words => {
            let bindings: HashMap<String, usize> = [("e".to_string(), e)].into();
            let forms = a
                .words
                .iter()
                .map(|w| {
                    let letters = parse_word(w, &g, &bindings)?;
                    let nf = word_normalize(&g, &letters, e)?;
                    Ok(json!({
                        "word": w,
                        "base": ElemRepr::of(&g, nf.base),
                        "index": nf.index,
                        "chi": int_elem_json(&g, &chi(nf)),
                    }))
                })
                .collect::<trusskit_core::Result<Vec<_>>>()?;
            out["normal_forms"] = json!(forms);
        }
    }
    if a.minimal_search {
        out["minimal_search"] = json!(search_minimal_extension(&t, e)?);
    }
    emit(a.out.as_deref(), &pretty(&out))?;
    Ok(ExitCode::SUCCESS)
}

pub fn equiv(_cfg: &RunConfig, a: &EquivArgs) -> anyhow::Result<ExitCode> {
    if a.data.len() != 2 {
        return Err(anyhow!(Error::Parse(format!("equiv takes exactly two --datum files, got {}", a.data.len()))));
    }
    let d1 = datum_from_json(&read(&a.data[0])?)?;
    let d2 = datum_from_json(&read(&a.data[1])?)?;
    let v = equivalence_check(&d1, &d2)?;
    let g = d1.ring().group();
    let witness = v.weak_witness.as_ref().map(|(phi, w)| {
        json!({
            "phi_generator_images": phi.map().images().iter().map(|&x| ElemRepr::of(g, x)).collect::<Vec<_>>(),
            "v": ElemRepr::of(g, *w),
        })
    });
    let out = json!({
        "weak": v.weakly_equivalent,
        "translational": v.equivalent,
        "witness": witness,
        "translation": v.translation.map(|x| ElemRepr::of(g, x)),
    });
    emit(a.out.as_deref(), &pretty(&out))?;
    Ok(ExitCode::SUCCESS)
}

pub fn validate(a: &ValidateArgs) -> anyhow::Result<ExitCode> {
    let out = if let Some(p) = &a.truss {
        let t: Truss = truss_from_json(&read(p)?)?;
        json!({ "valid": true, "kind": "truss", "structure": t.structure_report() })
    } else if let Some(p) = &a.ring {
        let r = ring_from_json(&read(p)?)?;
        json!({ "valid": true, "kind": "ring", "commutative": r.is_commutative(), "unital": r.identity().is_some() })
    } else if let Some(p) = &a.datum {
        let d = datum_from_json(&read(p)?)?;
        json!({ "valid": true, "kind": "datum", "truss": serde_json::from_str::<Value>(&truss_to_json(&d.truss()))? })
    } else {
        return Err(anyhow!(Error::Parse("nothing to validate".into())));
    };
    emit(None, &pretty(&out))?;
    Ok(ExitCode::SUCCESS)
}

pub fn verify(cfg: &RunConfig, a: &VerifyArgs) -> anyhow::Result<ExitCode> {
    let mut params = VerifyParams {
        omega_limit: cfg.omega_limit(),
        ..VerifyParams::default()
    };
    if let Some(p) = a.p {
        params.p = p;
    }
    if let Some(n) = a.n {
        params.n = n;
    }
    if let Some(side) = &a.side {
        params.side = side.parse()?;
    }
    if let Some(b) = a.integer_bound.or(cfg.integer_bound) {
        params.integer_bound = b;
    }
    let report = run_suite(&a.suite, &params)?;
    eprintln!("{}", summary(&report));
    let mut body = serde_json::to_value(&report)?;
    if let Some(seed) = cfg.seed {
        body["seed"] = json!(seed);
    }
    emit(a.out.as_deref(), &pretty(&body))?;
    Ok(if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILURE)
    })
}

pub fn ring(a: &RingArgs) -> anyhow::Result<ExitCode> {
    let r = catalog::named_ring(&a.token, a.p)?;
    let text = if a.truss {
        pretty(&TrussJson::from_truss(&Truss::from_ring(&r)))
    } else {
        pretty(&RingJson::from_ring(&r))
    };
    emit(None, &text)?;
    Ok(ExitCode::SUCCESS)
}
