//! Machine-readable reports.

use kundt_core::catalog::{class_text, matrix_text, Table};
use kundt_core::congruence::{CongruenceReport, FrameAlpha};
use kundt_core::hierarchy::ClassificationReport;
use kundt_core::liealg::{AlgebraicReport, AlgVector};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{:02x}", b)).collect()
}

pub fn alpha_json(a: &FrameAlpha) -> Value {
    json!({
        "on_v": a.on_v.to_string(),
        "on_screen": a.on_screen.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        "on_u": a.on_u.to_string(),
    })
}

pub fn congruence_json(r: &CongruenceReport) -> Value {
    json!({
        "lightlike": r.lightlike,
        "geodesic": r.geodesic,
        "pre_geodesic": r.pre_geodesic,
        "kappa": r.kappa.as_ref().map(|k| k.to_string()),
        "twist_free": r.twist_free,
        "shear_free": r.shear_free,
        "divergence_free": r.divergence_free,
        "tg_item2": r.tg_item2,
        "tg_item4": r.tg_item4,
        "locally_kundt": r.locally_kundt,
        "kundt": r.kundt,
        "lemma_consistent": r.lemma_consistent,
        "notes": r.notes,
    })
}

pub fn classification_json(c: &ClassificationReport) -> Value {
    let mut preds = Map::new();
    for (name, v) in c.predicates.as_list() {
        preds.insert(name.into(), Value::Bool(v));
    }
    json!({
        "most_specific": c.most_specific.name(),
        "summary": class_text(&c.most_specific),
        "predicates": preds,
        "S": c.s.as_ref().map(matrix_text),
        "H": c.h_fn.as_ref().map(|h| h.to_string()),
        "leaf_flat": c.leaf_flat,
        "notes": c.notes,
    })
}

pub fn algebraic_json(r: &AlgebraicReport, names: &[String], v: &AlgVector) -> Value {
    let v: Map<String, Value> =
        names.iter().zip(v).map(|(n, c)| (n.clone(), Value::String(kundt_core::catalog::q_text(c)))).collect();
    json!({
        "V": v,
        "lightlike": r.lightlike,
        "perp_subalgebra": r.perp_subalgebra,
        "normal": r.normal,
        "central": r.central,
        "parallel_at_identity": r.parallel_at_identity,
        "algebraic_kundt": r.algebraic_kundt,
        "certification": r.certification,
    })
}

pub fn table_json(t: &Table) -> Value {
    let rows: Vec<Value> = t
        .rows
        .iter()
        .map(|r| {
            let checks: Vec<Value> = r
                .checks
                .iter()
                .map(|c| json!({"check": c.label, "expected": c.expected, "actual": c.actual, "pass": c.pass}))
                .collect();
            json!({"name": r.name, "pass": r.pass, "checks": checks, "error": r.error})
        })
        .collect();
    json!({"seed": t.seed, "all_pass": t.all_pass(), "rows": rows})
}

/// A report with its provenance. `timings_ms` is the only field that may
/// differ between runs with the same input and seed.
#[derive(Clone, Debug)]
pub struct ReportDocument {
    pub command: &'static str,
    pub input_sha256: Option<String>,
    pub seed: u64,
    pub sample_box: Option<(f64, f64)>,
    pub body: Map<String, Value>,
    pub timings_ms: Vec<(&'static str, f64)>,
}

impl ReportDocument {
    pub fn new(command: &'static str, input: Option<&[u8]>, seed: u64, sample_box: Option<(f64, f64)>) -> Self {
        ReportDocument {
            command,
            input_sha256: input.map(sha256_hex),
            seed,
            sample_box,
            body: Map::new(),
            timings_ms: Vec::new(),
        }
    }

    pub fn set(&mut self, key: &str, v: Value) {
        self.body.insert(key.into(), v);
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("tool".into(), json!("kundt"));
        m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
        m.insert("command".into(), json!(self.command));
        m.insert("input_sha256".into(), json!(self.input_sha256));
        m.insert("seed".into(), json!(self.seed));
        m.insert("box".into(), json!(self.sample_box.map(|(a, b)| [a, b])));
        for (k, v) in &self.body {
            m.insert(k.clone(), v.clone());
        }
        let t: Map<String, Value> = self.timings_ms.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
        m.insert("timings_ms".into(), Value::Object(t));
        Value::Object(m)
    }

    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("json values serialize");
        s.push('\n');
        s
    }
}
