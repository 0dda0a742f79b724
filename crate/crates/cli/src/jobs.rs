//! Task implementations and the exit-code policy.

use crate::schema::{
    parse_diagram_text, scalar_to_json, weight_from_ints, Approx, ColorsSpec, InvariantRecord,
    LinkInput,
};
use ospq_core::cyclo::Cyc;
use ospq_core::fundrep::build_fundamental;
use ospq_core::invariant::{colored_term, colorings, linking_matrix, sigma_count, LinkError};
use ospq_core::rootdata::{alcove, constants, sdim, ConstantsError, Params};
use ospq_core::tangles::{braid_closure_value, eval_diagram, Evaluation};
use ospq_core::towers::Tower;
use ospq_core::verify::{run_suite, SUITE_NAMES};
use rayon::prelude::*;
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_SEMANTIC: i32 = 3;
pub const EXIT_REGIME: i32 = 4;
pub const EXIT_INTERNAL: i32 = 5;

fn fail(code: i32, kind: &str, message: String) -> i32 {
    let obj = json!({ "error": { "kind": kind, "message": message } });
    eprintln!("{}", serde_json::to_string(&obj).unwrap());
    code
}

fn timestamp() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}

fn link_error_code(e: &LinkError) -> i32 {
    match e {
        LinkError::Constants(ConstantsError::ObstructedRegime(_)) => EXIT_REGIME,
        LinkError::Constants(ConstantsError::UnsupportedRegime { .. }) => EXIT_REGIME,
        _ => EXIT_SEMANTIC,
    }
}

pub fn run_invariant(
    file: &str,
    n_flag: Option<usize>,
    big_n_flag: Option<u32>,
    format: &str,
    parallel: usize,
) -> i32 {
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => return fail(EXIT_PARSE, "io", format!("cannot read {file}: {e}")),
    };
    let input: LinkInput = match serde_json::from_str(&text) {
        Ok(v) => v,
        Err(e) => {
            return fail(
                EXIT_PARSE,
                "parse",
                format!("{file}: line {}, column {}: {e}", e.line(), e.column()),
            )
        }
    };
    // n and N: file values are authoritative; flags must agree when both given.
    let n = match (input.n, n_flag) {
        (Some(a), Some(b)) if a != b => {
            return fail(
                EXIT_SEMANTIC,
                "semantic",
                format!("--n {b} conflicts with file n = {a}"),
            )
        }
        (Some(a), _) => a,
        (None, Some(b)) => b,
        (None, None) => return fail(EXIT_SEMANTIC, "semantic", "rank n not specified".into()),
    };
    let big_n = match (input.big_n, big_n_flag) {
        (Some(a), Some(b)) if a != b => {
            return fail(
                EXIT_SEMANTIC,
                "semantic",
                format!("--N {b} conflicts with file N = {a}"),
            )
        }
        (Some(a), _) => a,
        (None, Some(b)) => b,
        (None, None) => return fail(EXIT_SEMANTIC, "semantic", "order N not specified".into()),
    };
    if n < 1 || big_n < 3 {
        return fail(
            EXIT_SEMANTIC,
            "semantic",
            format!("invalid parameters n = {n}, N = {big_n}"),
        );
    }
    let link = input.link.to_link();
    if let Err(e) = link.validate() {
        return fail(EXIT_SEMANTIC, "semantic", e.to_string());
    }
    let p = Params::new(n, big_n);
    // The obstruction and regime checks come first so that exit code 4 takes
    // priority over anything downstream.
    let consts = match constants(p) {
        Ok(c) => c,
        Err(e @ ConstantsError::ObstructedRegime(_)) => {
            return fail(EXIT_REGIME, "regime", e.to_string())
        }
        Err(e) => return fail(EXIT_REGIME, "regime", e.to_string()),
    };
    let tower = match Tower::new(build_fundamental(p)) {
        Ok(t) => t,
        Err(e) => return fail(EXIT_INTERNAL, "internal", e.to_string()),
    };
    let (_, ncomp) = link.components();
    let sigma = sigma_count(&linking_matrix(&link));

    let value = match &input.colors {
        ColorsSpec::Unset | ColorsSpec::All(_) => {
            if let ColorsSpec::All(s) = &input.colors {
                if s != "all" {
                    return fail(
                        EXIT_SEMANTIC,
                        "semantic",
                        format!("unknown colors spec `{s}`"),
                    );
                }
            }
            // Sigma(L), fanned out over the colouring set, then z^(-sigma).
            let all = colorings(p, ncomp);
            let terms: Result<Vec<Cyc>, LinkError> = if parallel != 1 {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(parallel)
                    .build()
                    .expect("thread pool");
                pool.install(|| {
                    all.par_iter()
                        .map(|c| colored_term(&tower, &consts, &link, c))
                        .collect()
                })
            } else {
                all.iter()
                    .map(|c| colored_term(&tower, &consts, &link, c))
                    .collect()
            };
            let sum = match terms {
                Ok(ts) => ts.into_iter().fold(Cyc::zero(), |acc, t| acc + t),
                Err(e) => return fail(link_error_code(&e), "semantic", e.to_string()),
            };
            consts.z.inverse().expect("z nonzero").pow(sigma as i64) * sum
        }
        ColorsSpec::Explicit(lists) => {
            // the coloured framed-link invariant F(Gamma(L, lambda))
            if lists.len() != ncomp {
                return fail(
                    EXIT_SEMANTIC,
                    "semantic",
                    format!(
                        "colors list has {} entries for {} components",
                        lists.len(),
                        ncomp
                    ),
                );
            }
            let mut ws = Vec::new();
            let (open, closed) = alcove(p);
            let _ = open;
            for ints in lists {
                match weight_from_ints(n, ints) {
                    Some(w) if closed.contains(&w) => ws.push(w),
                    Some(w) => {
                        return fail(
                            EXIT_SEMANTIC,
                            "semantic",
                            format!("colour {w} lies outside the closed alcove"),
                        )
                    }
                    None => return fail(EXIT_SEMANTIC, "semantic", "colour has wrong rank".into()),
                }
            }
            match braid_closure_value(&tower, link.strands, &link.braid, &link.framings, &ws) {
                Ok(v) => v,
                Err(e) => return fail(EXIT_SEMANTIC, "semantic", e.to_string()),
            }
        }
    };

    let (re, im) = value.embed();
    let record = InvariantRecord {
        field_level: p.level(),
        value: scalar_to_json(&value, p.level()),
        approx: Approx { re, im },
        sigma,
        components: ncomp,
        generated_at: timestamp(),
    };
    emit_invariant(&record, format)
}

fn emit_invariant(record: &InvariantRecord, format: &str) -> i32 {
    match format {
        "json" => {
            println!("{}", serde_json::to_string(record).unwrap());
            EXIT_OK
        }
        "text" => {
            println!("field level : {}", record.field_level);
            println!(
                "value       : {}",
                serde_json::to_string(&record.value).unwrap()
            );
            println!("approx      : {} + {}i", record.approx.re, record.approx.im);
            println!("sigma       : {}", record.sigma);
            println!("components  : {}", record.components);
            EXIT_OK
        }
        other => fail(
            EXIT_SEMANTIC,
            "semantic",
            format!("unknown format `{other}`"),
        ),
    }
}

pub fn run_tables(n: usize, big_n: u32, format: &str) -> i32 {
    if n < 1 || big_n < 3 {
        return fail(
            EXIT_SEMANTIC,
            "semantic",
            format!("invalid parameters n = {n}, N = {big_n}"),
        );
    }
    let p = Params::new(n, big_n);
    let consts = match constants(p) {
        Ok(c) => c,
        Err(e) => return fail(EXIT_REGIME, "regime", e.to_string()),
    };
    let (open, _) = alcove(p);
    let level = p.level();
    let rows: Vec<Value> = open
        .iter()
        .map(|w| {
            let s = sdim(p, w).expect("alcove weights have well-defined sdim");
            let d = consts.d[w].clone();
            let (sre, sim) = s.embed();
            let (dre, dim_) = d.embed();
            json!({
                "weight": w.0,
                "sdim": scalar_to_json(&s, level),
                "sdimApprox": {"re": sre, "im": sim},
                "d": scalar_to_json(&d, level),
                "dApprox": {"re": dre, "im": dim_},
            })
        })
        .collect();
    let (zre, zim) = consts.z.embed();
    let out = json!({
        "fieldLevel": level,
        "alcove": rows,
        "omega": scalar_to_json(&consts.omega, level),
        "q0": scalar_to_json(&consts.q0, level),
        "z": scalar_to_json(&consts.z, level),
        "zApprox": {"re": zre, "im": zim},
        "generatedAt": timestamp(),
    });
    match format {
        "json" => println!("{}", serde_json::to_string(&out).unwrap()),
        _ => {
            println!(
                "alcove Lambda_{big_n}^+ for n = {n} ({} weights)",
                open.len()
            );
            for w in &open {
                let s = sdim(p, w).unwrap();
                let (re, im) = s.embed();
                println!("  {:10}  sdim ~ {:+.6}{:+.6}i", format!("{w}"), re, im);
            }
            let (re, im) = consts.z.embed();
            println!("z ~ {re:+.6}{im:+.6}i");
        }
    }
    EXIT_OK
}

pub fn run_verify(suite: &str, format: &str) -> i32 {
    let Some(checks) = run_suite(suite) else {
        return fail(
            EXIT_SEMANTIC,
            "semantic",
            format!(
                "unknown suite `{suite}` (available: {}, all)",
                SUITE_NAMES.join(", ")
            ),
        );
    };
    let mut ok = true;
    if format == "json" {
        let rows: Vec<Value> = checks
            .iter()
            .map(|c| {
                ok &= c.pass;
                json!({"name": c.name, "pass": c.pass, "detail": c.detail})
            })
            .collect();
        println!(
            "{}",
            serde_json::to_string(
                &json!({"suite": suite, "checks": rows, "generatedAt": timestamp()})
            )
            .unwrap()
        );
    } else {
        for c in &checks {
            ok &= c.pass;
            println!("[{}] {}", if c.pass { "pass" } else { "FAIL" }, c.name);
            if !c.pass {
                println!("        {}", c.detail);
            }
        }
        println!(
            "{}: {} checks, {}",
            suite,
            checks.len(),
            if ok { "all pass" } else { "FAILURES" }
        );
    }
    if ok {
        EXIT_OK
    } else {
        EXIT_INTERNAL
    }
}

pub fn run_tangle_eval(file: &str, n: usize, big_n: u32, format: &str) -> i32 {
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => return fail(EXIT_PARSE, "io", format!("cannot read {file}: {e}")),
    };
    let (diagram, colors) = match parse_diagram_text(n, &text) {
        Ok(v) => v,
        Err(e) => return fail(EXIT_PARSE, "parse", format!("{file}: {e}")),
    };
    let p = Params::new(n, big_n);
    let (_, closed) = alcove(p);
    for w in &colors {
        if !closed.contains(w) {
            return fail(
                EXIT_SEMANTIC,
                "semantic",
                format!("colour {w} outside the closed alcove"),
            );
        }
    }
    let tower = match Tower::new(build_fundamental(p)) {
        Ok(t) => t,
        Err(e) => return fail(EXIT_INTERNAL, "internal", e.to_string()),
    };
    let level = p.level();
    match eval_diagram(&tower, &diagram, &colors) {
        Ok(Evaluation::Scalar(value)) => {
            let (re, im) = value.embed();
            let out = json!({
                "kind": "scalar",
                "fieldLevel": level,
                "value": scalar_to_json(&value, level),
                "approx": {"re": re, "im": im},
                "generatedAt": timestamp(),
            });
            match format {
                "json" => println!("{}", serde_json::to_string(&out).unwrap()),
                _ => println!("scalar ~ {re:+.9}{im:+.9}i"),
            }
            EXIT_OK
        }
        Ok(Evaluation::Operator {
            matrix,
            top,
            bottom,
        }) => {
            let entries: Vec<Value> = matrix
                .cols
                .iter()
                .enumerate()
                .flat_map(|(j, col)| {
                    col.iter()
                        .map(move |(i, v)| json!([i, j, scalar_to_json(v, level)]))
                        .collect::<Vec<_>>()
                })
                .collect();
            let out = json!({
                "kind": "operator",
                "fieldLevel": level,
                "rows": matrix.rows,
                "cols": matrix.ncols(),
                "topLegs": top.len(),
                "bottomLegs": bottom.len(),
                "entries": entries,
                "generatedAt": timestamp(),
            });
            match format {
                "json" => println!("{}", serde_json::to_string(&out).unwrap()),
                _ => println!(
                    "operator {}x{} with {} entries",
                    matrix.rows,
                    matrix.ncols(),
                    matrix.nnz()
                ),
            }
            EXIT_OK
        }
        Err(e) => fail(EXIT_SEMANTIC, "semantic", e.to_string()),
    }
}
