//! Machine-readable report assembly. The `results` subtree is a pure
//! function of (config, seed); wall-clock timings live in a separate
//! `timing` subtree that is excluded from the determinism guarantee.

use serde_json::{json, Value};

use crate::config::Config;
use crate::suites::SuiteResult;

pub struct Report {
    pub results: Vec<SuiteResult>,
    pub timings_ms: Vec<(String, u128)>,
}

impl Report {
    pub fn pass(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }

    pub fn to_json(&self, cfg: &Config) -> Value {
        let suites: Vec<Value> = self
            .results
            .iter()
            .map(|r| {
                json!({
                    "name": r.name,
                    "pass": r.pass,
                    "max_residual": r.max_residual,
                    "checks_run": r.checks_run,
                    "witnesses": r.witnesses.iter().map(|w| json!({
                        "check": w.check,
                        "residual": if w.residual.is_finite() { json!(w.residual) } else { json!(null) },
                        "detail": w.detail,
                    })).collect::<Vec<_>>(),
                })
            })
            .collect();
        let timing: serde_json::Map<String, Value> = self
            .timings_ms
            .iter()
            .map(|(k, v)| (k.clone(), json!(v)))
            .collect();
        json!({
            "version": env!("CARGO_PKG_VERSION"),
            "config": {
                "echo": toml_to_json(&cfg.echo),
                "seed": cfg.seed,
                "samples": cfg.samples,
                "suites": cfg.suites.iter().map(|s| s.name()).collect::<Vec<_>>(),
            },
            "results": {
                "pass": self.pass(),
                "suites": suites,
            },
            "timing": timing,
        })
    }

    /// Human summary for stderr.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            out.push_str(&format!(
                "{:<24} {}  (checks: {}, max residual: {:.3e})\n",
                r.name,
                if r.pass { "PASS" } else { "FAIL" },
                r.checks_run,
                r.max_residual,
            ));
            for w in &r.witnesses {
                out.push_str(&format!("    witness: {} — {}\n", w.check, w.detail));
            }
        }
        out.push_str(if self.pass() {
            "overall: PASS\n"
        } else {
            "overall: FAIL\n"
        });
        out
    }
}

fn toml_to_json(v: &toml::Value) -> Value {
    match v {
        toml::Value::String(s) => json!(s),
        toml::Value::Integer(i) => json!(i),
        toml::Value::Float(f) => json!(f),
        toml::Value::Boolean(b) => json!(b),
        toml::Value::Datetime(d) => json!(d.to_string()),
        toml::Value::Array(a) => Value::Array(a.iter().map(toml_to_json).collect()),
        toml::Value::Table(t) => Value::Object(
            t.iter()
                .map(|(k, v)| (k.clone(), toml_to_json(v)))
                .collect(),
        ),
    }
}
