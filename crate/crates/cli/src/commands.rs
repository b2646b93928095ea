use std::fmt::Write as _;
use std::time::Instant;

use kundt_core::catalog::{self, class_text, matrix_text, Row, Table, ROSTER};
use kundt_core::congruence::analyze;
use kundt_core::geometry::{Metric, VectorField};
use kundt_core::hierarchy::{classify_metric, HierarchyError};
use kundt_core::liealg::analyze_algebraic;
use serde_json::{json, Value};

use crate::file::{parse_metric_file, write_metric_file, MetricFile};
use crate::report::{algebraic_json, alpha_json, classification_json, congruence_json, table_json, ReportDocument};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Clone, Debug, PartialEq)]
pub struct Options {
    pub seed: u64,
    pub sample_box: Option<(f64, f64)>,
    pub json: bool,
    pub field: String,
}

impl Default for Options {
    fn default() -> Self {
        Options { seed: 0, sample_box: None, json: false, field: "V".into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Self {
        Outcome { code, stdout, stderr: String::new() }
    }

    fn input_error(msg: impl std::fmt::Display) -> Self {
        Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: format!("error: {}\n", msg) }
    }
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

fn flag_lines(out: &mut String, v: &Value) {
    if let Value::Object(m) = v {
        for (k, x) in m {
            let shown = match x {
                Value::String(s) => s.clone(),
                Value::Null => "-".into(),
                Value::Array(a) if a.is_empty() => continue,
                other => other.to_string(),
            };
            let _ = writeln!(out, "{:<22}{}", k, shown);
        }
    }
}

fn with_box(g: &Metric, sample_box: Option<(f64, f64)>) -> Metric {
    match sample_box {
        Some((lo, hi)) => g.with_sample_box(lo, hi),
        None => g.clone(),
    }
}

pub fn check(text: &str, opts: &Options) -> Outcome {
    let t0 = Instant::now();
    let file = match parse_metric_file(text) {
        Ok(f) => f,
        Err(e) => return Outcome::input_error(e),
    };
    let parse_ms = ms(t0);
    let mut doc = ReportDocument::new("check", Some(text.as_bytes()), opts.seed, opts.sample_box);
    let t1 = Instant::now();
    let (code, human) = match (&file.metric, &file.algebra) {
        (Some(g), _) => {
            let Some(v) = file.field(&opts.field) else {
                return Outcome::input_error(format!("no [field {}] section", opts.field));
            };
            let g = with_box(g, opts.sample_box);
            let v = match VectorField::new(g.chart(), v.exprs()) {
                Ok(v) => v,
                Err(e) => return Outcome::input_error(e),
            };
            let zt = g.zero_test(opts.seed);
            let r = match analyze(&g, &v, &zt) {
                Ok(r) => r,
                Err(e) => return Outcome::input_error(e),
            };
            let cj = congruence_json(&r);
            let mut human = String::new();
            flag_lines(&mut human, &cj);
            doc.set("congruence", cj);
            doc.set("alpha", r.alpha.as_ref().map_or(Value::Null, alpha_json));
            match &file.roles {
                Some(roles) => match classify_metric(&g, roles, &zt) {
                    Ok(c) => {
                        let _ = writeln!(human, "{:<22}{}", "class", class_text(&c.most_specific));
                        doc.set("leaf_flat", json!(c.leaf_flat));
                        doc.set("classification", classification_json(&c));
                    }
                    Err(e) => {
                        let _ = writeln!(human, "{:<22}{}", "class", e);
                        doc.set("classification", json!({"error": e.to_string()}));
                    }
                },
                None => doc.set("classification", Value::Null),
            }
            (if r.kundt { EXIT_PASS } else { EXIT_NEGATIVE }, human)
        }
        (None, Some(a)) => {
            let Some(v) = &a.v else {
                return Outcome::input_error("[algebra] has no 'V = …' line");
            };
            let r = match analyze_algebraic(&a.algebra, &a.metric, v) {
                Ok(r) => r,
                Err(e) => return Outcome::input_error(e),
            };
            let aj = algebraic_json(&r, a.algebra.names(), v);
            let mut human = String::new();
            flag_lines(&mut human, &aj);
            doc.set("algebraic", aj);
            (if r.algebraic_kundt { EXIT_PASS } else { EXIT_NEGATIVE }, human)
        }
        (None, None) => unreachable!("parser rejects empty files"),
    };
    doc.timings_ms = vec![("parse", parse_ms), ("analysis", ms(t1))];
    Outcome::ok(code, if opts.json { doc.render() } else { human })
}

pub fn classify(text: &str, opts: &Options) -> Outcome {
    let t0 = Instant::now();
    let file = match parse_metric_file(text) {
        Ok(f) => f,
        Err(e) => return Outcome::input_error(e),
    };
    let (Some(g), Some(roles)) = (&file.metric, &file.roles) else {
        return Outcome::input_error("classify needs [metric] and [roles] sections");
    };
    let parse_ms = ms(t0);
    let t1 = Instant::now();
    let g = with_box(g, opts.sample_box);
    let zt = g.zero_test(opts.seed);
    let c = match classify_metric(&g, roles, &zt) {
        Ok(c) => c,
        Err(HierarchyError::NotAdapted(reasons)) => {
            let mut err = String::from("error: metric is not in adapted Kundt form\n");
            for r in &reasons {
                let _ = writeln!(err, "  {}", r);
            }
            return Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: err };
        }
        Err(e) => return Outcome::input_error(e),
    };
    let mut doc = ReportDocument::new("classify", Some(text.as_bytes()), opts.seed, opts.sample_box);
    doc.set("classification", classification_json(&c));
    doc.set("leaf_flat", json!(c.leaf_flat));
    doc.timings_ms = vec![("parse", parse_ms), ("analysis", ms(t1))];
    if opts.json {
        return Outcome::ok(EXIT_PASS, doc.render());
    }
    let mut out = format!("{}\n", class_text(&c.most_specific));
    for (name, v) in c.predicates.as_list() {
        let _ = writeln!(out, "  {:<16}{}", name, v);
    }
    if let Some(h) = &c.h_fn {
        let _ = writeln!(out, "  {:<16}{}", "H", h);
    }
    if let Some(s) = &c.s {
        let _ = writeln!(out, "  {:<16}{}", "S", matrix_text(s));
    }
    let _ = writeln!(out, "  {:<16}{}", "leaf_flat", c.leaf_flat.map_or("-".into(), |b| b.to_string()));
    for n in &c.notes {
        let _ = writeln!(out, "  note: {}", n);
    }
    Outcome::ok(EXIT_PASS, out)
}

pub fn catalog_list(json_out: bool) -> Outcome {
    if json_out {
        let v: Vec<Value> = ROSTER
            .iter()
            .map(|e| {
                let ps: Vec<Value> = e.params.iter().map(|p| json!({"name": p.name, "default": p.default, "doc": p.doc})).collect();
                json!({"name": e.name, "summary": e.summary, "params": ps})
            })
            .collect();
        return Outcome::ok(EXIT_PASS, serde_json::to_string_pretty(&v).expect("json") + "\n");
    }
    let mut out = String::new();
    for e in ROSTER {
        let _ = writeln!(out, "{:<20}{}", e.name, e.summary);
        for p in e.params {
            let _ = writeln!(out, "{:<22}{} = {}  ({})", "", p.name, p.default, p.doc);
        }
    }
    Outcome::ok(EXIT_PASS, out)
}

pub fn catalog_show(name: &str, params: &[(String, String)]) -> Outcome {
    let overrides: Vec<(&str, &str)> = params.iter().map(|(k, v)| (k.as_str(), v.as_str())).collect();
    match catalog::get(name, &overrides) {
        Ok(e) => {
            let mut out = format!("# catalog entry {}", e.name);
            for (k, v) in &e.params {
                let _ = write!(out, ", {} = {}", k, v);
            }
            out.push_str("\n\n");
            out.push_str(&write_metric_file(&MetricFile::from_entry(&e)));
            Outcome::ok(EXIT_PASS, out)
        }
        Err(e) => Outcome::input_error(e),
    }
}

/// Run every roster entry, concurrently, reporting in roster order.
pub fn run_catalog_table(seed: u64) -> (Table, Vec<f64>) {
    let results: Vec<(Row, f64)> = std::thread::scope(|s| {
        let handles: Vec<_> = ROSTER
            .iter()
            .map(|info| {
                s.spawn(move || {
                    let t = Instant::now();
                    let row = match catalog::get(info.name, &[]) {
                        Ok(e) => catalog::check_entry(&e, seed),
                        Err(err) => Row { name: info.name.into(), pass: false, checks: Vec::new(), error: Some(err.to_string()) },
                    };
                    (row, ms(t))
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("catalog worker panicked")).collect()
    });
    let (rows, times) = results.into_iter().unzip();
    (Table { seed, rows }, times)
}

pub fn catalog_run(opts: &Options) -> Outcome {
    let t0 = Instant::now();
    let (table, times) = run_catalog_table(opts.seed);
    let code = if table.all_pass() { EXIT_PASS } else { EXIT_NEGATIVE };
    if opts.json {
        let mut doc = ReportDocument::new("catalog run", None, opts.seed, None);
        doc.set("catalog", table_json(&table));
        doc.timings_ms = vec![("total", ms(t0))];
        return Outcome::ok(code, doc.render());
    }
    let mut out = String::new();
    for (r, t) in table.rows.iter().zip(&times) {
        let _ = writeln!(out, "{:<20}{:<6}{:>9.1} ms", r.name, if r.pass { "pass" } else { "FAIL" }, t);
        if let Some(e) = &r.error {
            let _ = writeln!(out, "    error: {}", e);
        }
        for c in r.checks.iter().filter(|c| !c.pass) {
            let _ = writeln!(out, "    {}: expected {}, got {}", c.label, c.expected, c.actual);
        }
    }
    let passed = table.rows.iter().filter(|r| r.pass).count();
    let _ = writeln!(out, "{}/{} entries pass", passed, table.rows.len());
    Outcome::ok(code, out)
}
