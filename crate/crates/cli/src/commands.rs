//! One function per subcommand; each returns the result object and its
//! budget accounting.

use std::fs;
use std::path::{Path, PathBuf};

use er_core::patterns::enumerate_patterns;
use er_core::ramsey::{list_ramsey_lower_bound, multinomial_bound, table_version};
use er_core::{
    bracket_list_ramsey, build_construction_graph, count_colourings, evaluate_q, lp_profile_bound,
    nearest_optimum, product_lower_bound, ramsey_limit, rounding_constant, search_extremal,
    solve_q, symmetrise, verify_ramsey, ColourSpec, CountJob, Error, PartitionShape,
    PatternFunction, RamseyVerdict, SimpleGraph, SolveOptions, SolveStatus, StabilityCandidate,
    StabilityMatch, WeightVector,
};
use serde_json::{json, Value};
use thiserror::Error as ThisError;

use crate::emit;

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Input(String),
}

pub struct Outcome {
    pub result: Value,
    pub nodes: u64,
    /// The budget ran out; `result` is partial and says so.
    pub exhausted: bool,
}

impl Outcome {
    fn done(result: Value, nodes: u64) -> Self {
        Outcome {
            result,
            nodes,
            exhausted: false,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_graph(path: &Path) -> Result<SimpleGraph, CliError> {
    Ok(SimpleGraph::parse_edge_list(&read(path)?)?)
}

pub fn count(
    graph: Option<&Path>,
    shape: Option<&str>,
    spec: &ColourSpec,
    budget: u64,
    parallel: usize,
) -> Result<Outcome, CliError> {
    let (g, shape) = match (graph, shape) {
        (Some(p), None) => (load_graph(p)?, None),
        (None, Some(s)) => {
            let shape: PartitionShape = s.parse()?;
            (SimpleGraph::complete_multipartite(shape.parts())?, Some(shape))
        }
        _ => return Err(CliError::Input("give exactly one of --graph or --shape".into())),
    };
    let mut result = json!({
        "spec": emit::spec(spec),
        "n": g.n(),
        "edge_count": g.edge_count(),
        "shape": shape.as_ref().map_or(Value::Null, emit::shape),
    });
    let out = count_colourings(&CountJob::new(&g, spec, budget).with_parallel_width(parallel));
    match out {
        Ok(c) => {
            result["value"] = emit::count(&c.count);
            result["log2"] = c.count.log2().map_or(Value::Null, emit::real);
            result["complete"] = json!(true);
            result["nodes"] = json!(c.nodes);
            Ok(Outcome::done(result, c.nodes))
        }
        Err(Error::BudgetExceeded { nodes, .. }) => {
            result["value"] = Value::Null;
            result["complete"] = json!(false);
            result["nodes"] = json!(nodes);
            Ok(Outcome {
                result,
                nodes,
                exhausted: true,
            })
        }
        Err(e) => Err(e.into()),
    }
}

pub fn search_n(
    n: usize,
    spec: &ColourSpec,
    budget: u64,
    parallel: usize,
) -> Result<Outcome, CliError> {
    let r = search_extremal(n, spec, budget, parallel)?;
    let mut argmax: Vec<String> = r.argmax_shapes.iter().map(|s| s.to_string()).collect();
    argmax.sort();
    let result = json!({
        "n": n,
        "spec": emit::spec(spec),
        "best_value": emit::count_with_log(&r.best_value),
        "argmax": argmax,
        "per_shape": r.per_shape.iter().map(|(s, c)| json!({
            "shape": emit::shape(s),
            "value": emit::count(c),
        })).collect::<Vec<_>>(),
        "pruned": r.pruned_shapes.iter().map(|p| json!({
            "shape": emit::shape(&p.shape),
            "upper_bound": emit::count(&p.upper_bound),
            "reason": p.reason,
        })).collect::<Vec<_>>(),
        "unfinished": r.unfinished_shapes.iter().map(emit::shape).collect::<Vec<_>>(),
        "complete": r.is_complete(),
        "nodes": r.nodes,
    });
    Ok(Outcome {
        result,
        nodes: r.nodes,
        exhausted: !r.is_complete(),
    })
}

pub fn symmetrise_graph(path: &Path, spec: &ColourSpec, budget: u64) -> Result<Outcome, CliError> {
    let g = load_graph(path)?;
    let t = symmetrise(&g, spec, budget)?;
    let steps: Vec<Value> = t
        .steps
        .iter()
        .map(|s| {
            json!({
                "pair": [s.u, s.v],
                "kept": s.kept.as_str(),
                "count_before": emit::count(&s.count_before),
                "count_u": emit::count(&s.count_u),
                "count_v": emit::count(&s.count_v),
                "count_after": emit::count(&s.count_after),
                "potential_before": s.potential_before,
                "potential_after": s.potential_after,
            })
        })
        .collect();
    let result = json!({
        "spec": emit::spec(spec),
        "n": g.n(),
        "initial_count": t.initial_count.as_ref().map_or(Value::Null, emit::count),
        "steps": steps,
        "final_edges": emit::edges(&t.final_graph),
        "final_shape": t.final_shape.as_ref().map_or(Value::Null, emit::shape),
        "complete": t.complete,
        "nodes": t.nodes,
    });
    Ok(Outcome {
        result,
        nodes: t.nodes,
        exhausted: !t.complete,
    })
}

pub fn patterns(spec: &ColourSpec, r: usize, t: usize, budget: u64) -> Result<Outcome, CliError> {
    let e = enumerate_patterns(spec, r, t, budget)?;
    let result = json!({
        "spec": emit::spec(spec),
        "r": r,
        "t": t,
        "classes": e.patterns.iter().map(|c| emit::canonical(c, spec)).collect::<Vec<_>>(),
        "class_count": e.patterns.len(),
        "labelled_count": e.labelled_count,
        "truncated": e.truncated,
        "nodes": e.nodes,
    });
    Ok(Outcome {
        result,
        nodes: e.nodes,
        exhausted: e.truncated,
    })
}

pub fn solve(
    spec: &ColourSpec,
    t: usize,
    rmax: usize,
    budget: u64,
    window: f64,
) -> Result<Outcome, CliError> {
    let report = solve_q(
        spec,
        t,
        rmax,
        SolveOptions {
            budget,
            record_window: window,
        },
    )?;
    let triple = |rec: &er_core::TripleRecord| {
        json!({
            "r": rec.r,
            "pattern": emit::canonical(&rec.pattern, spec),
            "optimum": emit::optimum(&rec.optimum),
        })
    };
    let per_r: Vec<Value> = report
        .per_r_best
        .iter()
        .map(|p| {
            json!({
                "r": p.r,
                "classes": p.classes,
                "q_value": p.best.as_ref().map_or(Value::Null, |b| emit::real(b.optimum.q_value)),
            })
        })
        .collect();
    let result = json!({
        "spec": emit::spec(spec),
        "t": t,
        "rmax": rmax,
        "q_value": emit::real(report.best.optimum.q_value),
        "best": triple(&report.best),
        "per_r": per_r,
        "status": report.status.as_str(),
        "lp_bound": report.lp_bound.map_or(Value::Null, emit::real),
        "ramsey_limit": {
            "value": report.limit.value,
            "kind": report.limit.kind.as_str(),
            "method": report.limit.method,
        },
        "record_window": emit::real(report.record_window),
        "candidates": report.candidates.iter().map(triple).collect::<Vec<_>>(),
        "nodes": report.nodes,
    });
    Ok(Outcome {
        result,
        nodes: report.nodes,
        exhausted: report.status == SolveStatus::BudgetTruncated,
    })
}

pub enum RamseyMode {
    Classic { r: Option<usize> },
    List { rmax: usize },
}

pub fn ramsey(spec: &ColourSpec, mode: RamseyMode, budget: u64) -> Result<Outcome, CliError> {
    let limit = ramsey_limit(spec);
    let mut result = json!({
        "spec": emit::spec(spec),
        "limit": {
            "value": limit.value,
            "kind": limit.kind.as_str(),
            "method": limit.method,
        },
        "multinomial_bound": multinomial_bound(spec),
        "table_version": table_version(),
    });
    let mut exhausted = false;
    match mode {
        RamseyMode::Classic { r } => {
            result["mode"] = json!("classic");
            if let Some(r) = r {
                result["r"] = json!(r);
                match verify_ramsey(spec, r, budget) {
                    Ok(RamseyVerdict::Admits(w)) => {
                        result["verdict"] = json!("admits");
                        result["witness"] = w
                            .iter()
                            .map(|(&(u, v), &c)| json!([u, v, c + 1]))
                            .collect();
                    }
                    Ok(RamseyVerdict::DoesNotAdmit) => result["verdict"] = json!("does-not-admit"),
                    Err(e) if e.is_budget() => {
                        result["verdict"] = json!("undecided");
                        exhausted = true;
                    }
                    Err(e) => return Err(e.into()),
                }
            }
        }
        RamseyMode::List { rmax } => {
            result["mode"] = json!("list");
            let b = bracket_list_ramsey(spec, rmax, budget)?;
            exhausted = b.undecided_at.is_some();
            result["list"] = json!({
                "rmax": rmax,
                "lower": b.lower,
                "upper": b.upper,
                "undecided_at": b.undecided_at,
                "annotation": list_ramsey_lower_bound(spec)
                    .map(|(v, src)| json!({ "lower_bound": v, "source": src })),
            });
        }
    }
    Ok(Outcome {
        result,
        nodes: 0,
        exhausted,
    })
}

pub fn bound(spec: &ColourSpec) -> Result<Outcome, CliError> {
    let b = lp_profile_bound(spec)?;
    let profile: Vec<Value> = b
        .d
        .iter()
        .enumerate()
        .map(|(i, &d)| json!({ "size": i + 1, "d": emit::real(d) }))
        .collect();
    Ok(Outcome::done(
        json!({
            "spec": emit::spec(spec),
            "value": emit::real(b.value),
            "profile": profile,
        }),
        0,
    ))
}

fn field<'a>(v: &'a Value, path: &[&str]) -> Result<&'a Value, CliError> {
    let mut cur = v;
    for key in path {
        cur = cur
            .get(key)
            .ok_or_else(|| CliError::Input(format!("report is missing `{}`", path.join("."))))?;
    }
    Ok(cur)
}

fn num(v: &Value) -> Result<f64, CliError> {
    v.as_f64()
        .ok_or_else(|| CliError::Input(format!("expected a number, found {v}")))
}

/// Candidates as written by `solve-q`.
fn read_candidates(report: &Value) -> Result<(f64, Vec<StabilityCandidate>), CliError> {
    let best_q = num(field(report, &["q_value"])?)?;
    let list = field(report, &["candidates"])?
        .as_array()
        .ok_or_else(|| CliError::Input("`candidates` must be an array".into()))?;
    let mut out = Vec::with_capacity(list.len());
    for c in list {
        let alpha = field(c, &["optimum", "alpha"])?
            .as_array()
            .ok_or_else(|| CliError::Input("`alpha` must be an array".into()))?
            .iter()
            .map(num)
            .collect::<Result<Vec<_>, _>>()?;
        let code = field(c, &["pattern", "canonical_code"])?
            .as_array()
            .ok_or_else(|| CliError::Input("`canonical_code` must be an array".into()))?
            .iter()
            .map(|x| x.as_u64().map(|b| b as u8))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| CliError::Input("bad canonical code".into()))?;
        out.push(StabilityCandidate {
            r: field(c, &["r"])?
                .as_u64()
                .ok_or_else(|| CliError::Input("bad `r`".into()))? as usize,
            q_value: num(field(c, &["optimum", "q_value"])?)?,
            alpha,
            canonical_code: code,
        });
    }
    Ok((best_q, out))
}

pub fn stability(shape: &str, report: &Path, window: f64) -> Result<Outcome, CliError> {
    let shape: PartitionShape = shape.parse()?;
    let json: Value = serde_json::from_str(&read(report)?)
        .map_err(|e| CliError::Input(format!("{}: {e}", report.display())))?;
    let (best_q, candidates) = read_candidates(&json)?;
    let n = shape.n() as f64;
    let mut result = json!({
        "shape": emit::shape(&shape),
        "alpha": emit::reals(&shape.parts().iter().map(|&p| p as f64 / n).collect::<Vec<_>>()),
        "eta_window": emit::real(window),
        "best_q": emit::real(best_q),
    });
    match nearest_optimum(&shape, best_q, &candidates, window) {
        StabilityMatch::Matched {
            distance,
            alpha_prime,
            q_value,
            canonical_code,
        } => {
            result["matched"] = json!(true);
            result["distance"] = emit::real(distance);
            result["alpha_prime"] = emit::reals(&alpha_prime);
            result["q_value"] = emit::real(q_value);
            result["canonical_code"] = json!(canonical_code);
        }
        StabilityMatch::NoMatch => {
            result["matched"] = json!(false);
            result["distance"] = Value::Null;
        }
    }
    Ok(Outcome::done(result, 0))
}

pub fn construct(
    pattern: &Path,
    alpha: &str,
    n: usize,
    count_budget: Option<u64>,
    parallel: usize,
) -> Result<Outcome, CliError> {
    let (phi, spec) = PatternFunction::parse(&read(pattern)?)?;
    let alpha = WeightVector::parse(alpha)?;
    let c = build_construction_graph(&phi, &alpha, n)?;
    let q = evaluate_q(&phi, &alpha)?;
    let product = product_lower_bound(&phi, &c.part_sizes)?;
    let rc = rounding_constant(&phi);
    let target = q * (n * (n - 1) / 2) as f64 - rc * n as f64;
    let mut result = json!({
        "spec": emit::spec(&spec),
        "n": n,
        "alpha": emit::reals(alpha.entries()),
        "q_value": emit::real(q),
        "part_sizes": c.part_sizes,
        "shape": emit::shape(&c.shape),
        "dropped_parts": c.dropped_parts,
        "edge_count": c.graph.edge_count(),
        "edges": emit::edges(&c.graph),
        "product_bound": emit::count_with_log(&product),
        "rounding_constant": emit::real(rc),
        "target_log2": emit::real(target),
        "meets_target": product.at_least_pow2(target),
        "exact_count": Value::Null,
    });
    let mut nodes = 0;
    let mut exhausted = false;
    if let Some(budget) = count_budget {
        match count_colourings(&CountJob::new(&c.graph, &spec, budget).with_parallel_width(parallel))
        {
            Ok(out) => {
                nodes = out.nodes;
                result["exact_count"] = emit::count_with_log(&out.count);
                result["exact_at_least_product"] = json!(out.count >= product);
            }
            Err(Error::BudgetExceeded { nodes: used, .. }) => {
                nodes = used;
                exhausted = true;
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(Outcome {
        result,
        nodes,
        exhausted,
    })
}
