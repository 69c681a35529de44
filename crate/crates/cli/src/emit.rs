//! Canonical JSON encoding of results, table rendering and run manifests.

use std::fs;
use std::path::Path;

use er_core::{
    AlphaOptimum, BigCount, CanonicalPattern, ColourSpec, PartitionShape, PatternFunction,
    SimpleGraph,
};
use serde_json::{json, Map, Number, Value};
use sha2::{Digest, Sha256};

/// A real at 12 significant digits, kept verbatim in the output.
pub fn real(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let decimals = if x == 0.0 {
        12
    } else {
        (11 - x.abs().log10().floor() as i64).max(0) as usize
    };
    let text = format!("{x:.decimals$}");
    Value::Number(text.parse::<Number>().expect("decimal literal"))
}

pub fn reals(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| real(x)).collect())
}

/// Counts are strings: they outgrow every fixed-width integer quickly.
pub fn count(c: &BigCount) -> Value {
    Value::String(c.to_string())
}

pub fn count_with_log(c: &BigCount) -> Value {
    json!({
        "value": count(c),
        "log2": c.log2().map_or(Value::Null, real),
    })
}

pub fn shape(s: &PartitionShape) -> Value {
    Value::String(s.to_string())
}

pub fn edges(g: &SimpleGraph) -> Value {
    Value::Array(g.edges().into_iter().map(|(u, v)| json!([u, v])).collect())
}

pub fn spec(k: &ColourSpec) -> Value {
    json!(k.k())
}

/// Lists use 1-based parts and colours, as in the pattern text format.
pub fn pattern(phi: &PatternFunction, k: &ColourSpec) -> Value {
    let lists: Vec<Value> = phi
        .pairs()
        .map(|(i, j)| {
            let l = phi.list(i, j);
            let colours: Vec<usize> = (0..phi.s())
                .filter(|c| l & (1 << c) != 0)
                .map(|c| c + 1)
                .collect();
            json!({ "pair": [i + 1, j + 1], "colours": colours })
        })
        .collect();
    json!({
        "r": phi.r(),
        "s": phi.s(),
        "lists": lists,
        "text": phi.to_text(k),
    })
}

pub fn canonical(c: &CanonicalPattern, k: &ColourSpec) -> Value {
    json!({
        "pattern": pattern(&c.pattern, k),
        "canonical_code": c.canonical_code,
        "orbit_size": c.orbit_size,
    })
}

pub fn optimum(o: &AlphaOptimum) -> Value {
    json!({
        "alpha": reals(o.alpha.entries()),
        "q_value": real(o.q_value),
        "support": o.support,
        "certificate": o.certificate.as_str(),
        "kkt_residual": real(o.kkt_residual),
    })
}

/// Human-readable, lossy rendering of a result object.
pub fn table(v: &Value) -> String {
    let mut out = String::new();
    render(&mut out, "", v, 0);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) if !s.contains('\n') => Some(s.clone()),
        Value::String(_) => None,
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => Some(
            a.iter()
                .map(|x| scalar(x).unwrap_or_default())
                .collect::<Vec<_>>()
                .join(", "),
        ),
        _ => None,
    }
}

fn render(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    if let Some(s) = scalar(v) {
        out.push_str(&format!("{pad}{key:<22} {s}\n"));
        return;
    }
    match v {
        Value::Object(m) => {
            if !key.is_empty() {
                out.push_str(&format!("{pad}{key}\n"));
            }
            let d = if key.is_empty() { depth } else { depth + 1 };
            for (k, x) in m {
                if k == "text" {
                    continue;
                }
                render(out, k, x, d);
            }
        }
        Value::Array(a) => {
            out.push_str(&format!("{pad}{key} ({} entries)\n", a.len()));
            for (i, x) in a.iter().enumerate().take(20) {
                render(out, &format!("[{i}]"), x, depth + 1);
            }
            if a.len() > 20 {
                out.push_str(&format!("{pad}  ...\n"));
            }
        }
        // multi-line strings are skipped
        _ => {}
    }
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s
}

pub fn digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

pub struct RunInfo<'a> {
    pub command: &'a str,
    pub params: Value,
    pub budget: u64,
    pub nodes: u64,
    pub exhausted: bool,
    pub wall_seconds: f64,
}

/// Write `result.json` and `manifest.json` into `dir`.
pub fn write_run(dir: &Path, result: &Value, info: &RunInfo<'_>) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let text = pretty(result);
    fs::write(dir.join("result.json"), &text)?;
    let mut m = Map::new();
    m.insert("command".into(), json!(info.command));
    m.insert("params".into(), info.params.clone());
    m.insert("tool_version".into(), json!(env!("CARGO_PKG_VERSION")));
    m.insert(
        "ramsey_table_version".into(),
        json!(er_core::ramsey::table_version()),
    );
    m.insert("wall_time_seconds".into(), real(info.wall_seconds));
    m.insert("budget".into(), json!(info.budget));
    m.insert("nodes".into(), json!(info.nodes));
    m.insert(
        "status".into(),
        json!(if info.exhausted {
            "budget-exhausted"
        } else {
            "ok"
        }),
    );
    m.insert("result_sha256".into(), json!(digest(&text)));
    fs::write(dir.join("manifest.json"), pretty(&Value::Object(m)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reals_have_twelve_significant_digits() {
        assert_eq!(real(0.5).to_string(), "0.500000000000");
        assert_eq!(real(2.0 / 3.0).to_string(), "0.666666666667");
        assert_eq!(real(12.5).to_string(), "12.5000000000");
        assert_eq!(real(0.0).to_string(), "0.000000000000");
        assert_eq!(real(-0.25).to_string(), "-0.250000000000");
        assert_eq!(real(f64::NAN), Value::Null);
    }

    #[test]
    fn counts_are_strings() {
        assert_eq!(count(&BigCount::pow(2, 9)), json!("512"));
        let big = BigCount::pow(2, 100);
        assert_eq!(count(&big), json!("1267650600228229401496703205376"));
    }

    #[test]
    fn keys_are_sorted() {
        let v = json!({"b": 1, "a": 2});
        assert!(pretty(&v).find("\"a\"").unwrap() < pretty(&v).find("\"b\"").unwrap());
    }
}
