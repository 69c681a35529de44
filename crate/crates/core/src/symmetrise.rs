//! Symmetrisation: repeatedly replace one endpoint of a non-adjacent,
//! non-twin pair by a clone of the other until the graph is complete
//! multipartite, never decreasing the number of valid colourings.

use crate::counting::{count_colourings, CountJob};
use crate::error::{Error, Result};
use crate::graph::{bit, bits, SimpleGraph};
use crate::model::{BigCount, ColourSpec, PartitionShape};

/// Twin classes (equal neighbourhoods) as vertex masks, ordered by smallest vertex.
pub fn twin_partition(graph: &SimpleGraph) -> Vec<u64> {
    let mut classes: Vec<u64> = Vec::new();
    let mut seen = 0u64;
    for v in 0..graph.n() {
        if seen & bit(v) != 0 {
            continue;
        }
        let nv = graph.neighbours(v);
        let class = (v..graph.n())
            .filter(|&w| graph.neighbours(w) == nv)
            .fold(0u64, |m, w| m | bit(w));
        seen |= class;
        classes.push(class);
    }
    classes
}

fn class_of(classes: &[u64], v: usize) -> u64 {
    *classes
        .iter()
        .find(|c| *c & bit(v) != 0)
        .expect("partition covers every vertex")
}

/// `G_u`: vertex `v` takes exactly the neighbourhood of `u`.
pub fn clone_replace(graph: &SimpleGraph, u: usize, v: usize) -> Result<SimpleGraph> {
    let n = graph.n();
    if u >= n || v >= n {
        return Err(Error::Precondition(format!(
            "vertex out of range for n = {n}"
        )));
    }
    if u == v {
        return Err(Error::Precondition(
            "cannot clone a vertex over itself".into(),
        ));
    }
    if graph.has_edge(u, v) {
        return Err(Error::Precondition(format!(
            "vertices {u} and {v} are adjacent"
        )));
    }
    let mut g = graph.clone();
    g.set_neighbours(v, graph.neighbours(u));
    Ok(g)
}

/// Part sizes when every non-adjacent pair are twins, `None` otherwise.
pub fn multipartite_shape(graph: &SimpleGraph) -> Option<PartitionShape> {
    if graph.n() == 0 {
        return None;
    }
    let classes = twin_partition(graph);
    let all = graph.all_vertices();
    let complete = classes
        .iter()
        .all(|&c| bits(c).all(|v| graph.neighbours(v) == all & !c));
    if !complete {
        return None;
    }
    PartitionShape::new(classes.iter().map(|c| c.count_ones() as usize).collect()).ok()
}

/// Sum of frozen class sizes plus the largest unfrozen class size. A class
/// is frozen when it is completely joined to the rest of the graph.
pub fn potential(graph: &SimpleGraph) -> usize {
    let all = graph.all_vertices();
    let mut frozen = 0;
    let mut largest_unfrozen = 0;
    for c in twin_partition(graph) {
        let v = c.trailing_zeros() as usize;
        let size = c.count_ones() as usize;
        if graph.neighbours(v) == all & !c {
            frozen += size;
        } else {
            largest_unfrozen = largest_unfrozen.max(size);
        }
    }
    frozen + largest_unfrozen
}

/// The next pair: non-adjacent non-twins with `|[u]|` maximal, ties broken
/// by smallest `u` then smallest `v`.
pub fn next_pair(graph: &SimpleGraph) -> Option<(usize, usize)> {
    let classes = twin_partition(graph);
    let n = graph.n();
    let mut best: Option<(usize, usize, usize)> = None;
    for u in 0..n {
        let cu = class_of(&classes, u);
        let size = cu.count_ones() as usize;
        if best.is_some_and(|(s, _, _)| s >= size) {
            continue;
        }
        let candidates = graph.all_vertices() & !graph.neighbours(u) & !cu;
        if let Some(v) = bits(candidates).next() {
            best = Some((size, u, v));
        }
    }
    best.map(|(_, u, v)| (u, v))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CloneSide {
    /// `v` replaced by a clone of `u`.
    U,
    /// `u` replaced by a clone of `v`.
    V,
}

impl CloneSide {
    pub fn as_str(self) -> &'static str {
        match self {
            CloneSide::U => "u",
            CloneSide::V => "v",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetrisationStep {
    pub u: usize,
    pub v: usize,
    pub kept: CloneSide,
    pub count_before: BigCount,
    pub count_u: BigCount,
    pub count_v: BigCount,
    pub count_after: BigCount,
    pub potential_before: usize,
    pub potential_after: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetrisationTrace {
    pub initial_graph: SimpleGraph,
    pub initial_count: Option<BigCount>,
    pub steps: Vec<SymmetrisationStep>,
    pub final_graph: SimpleGraph,
    /// Present once the final graph is complete multipartite.
    pub final_shape: Option<PartitionShape>,
    /// False when the budget ran out before termination.
    pub complete: bool,
    pub nodes: u64,
}

/// Run the process from `graph`. Each step counts both clones exactly (in
/// parallel, each with half of the remaining budget) and keeps the larger,
/// preferring `G_u` on ties.
pub fn symmetrise(
    graph: &SimpleGraph,
    spec: &ColourSpec,
    budget: u64,
) -> Result<SymmetrisationTrace> {
    if graph.n() == 0 {
        return Err(Error::Precondition("graph has no vertices".into()));
    }
    let mut trace = SymmetrisationTrace {
        initial_graph: graph.clone(),
        initial_count: None,
        steps: Vec::new(),
        final_graph: graph.clone(),
        final_shape: None,
        complete: false,
        nodes: 0,
    };
    let count = |g: &SimpleGraph, b: u64| -> Result<Option<(BigCount, u64)>> {
        if b == 0 {
            return Ok(None);
        }
        match count_colourings(&CountJob::new(g, spec, b)) {
            Ok(out) => Ok(Some((out.count, out.nodes))),
            Err(e) if e.is_budget() => Ok(None),
            Err(e) => Err(e),
        }
    };

    let Some((mut current, nodes)) = count(graph, budget)? else {
        trace.nodes = budget;
        return Ok(trace);
    };
    trace.nodes = nodes;
    trace.initial_count = Some(current.clone());

    while let Some((u, v)) = next_pair(&trace.final_graph) {
        let g = &trace.final_graph;
        let gu = clone_replace(g, u, v)?;
        let gv = clone_replace(g, v, u)?;
        let half = (budget - trace.nodes) / 2;
        let (ru, rv) = rayon::join(|| count(&gu, half), || count(&gv, half));
        let (Some((fu, nu)), Some((fv, nv))) = (ru?, rv?) else {
            trace.nodes = budget;
            return Ok(trace);
        };
        trace.nodes += nu + nv;
        let (kept, next, after) = if fv > fu {
            (CloneSide::V, gv, fv.clone())
        } else {
            (CloneSide::U, gu, fu.clone())
        };
        trace.steps.push(SymmetrisationStep {
            u,
            v,
            kept,
            count_before: current,
            count_u: fu,
            count_v: fv,
            count_after: after.clone(),
            potential_before: potential(g),
            potential_after: potential(&next),
        });
        current = after;
        trace.final_graph = next;
    }
    trace.final_shape = multipartite_shape(&trace.final_graph);
    trace.complete = true;
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec33() -> ColourSpec {
        ColourSpec::new(vec![3, 3]).unwrap()
    }

    fn path4() -> SimpleGraph {
        SimpleGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn twin_classes() {
        let k33 = SimpleGraph::complete_multipartite(&[3, 3]).unwrap();
        assert_eq!(twin_partition(&k33), vec![0b000111, 0b111000]);
        assert_eq!(twin_partition(&path4()), vec![1, 2, 4, 8]);
        let star = SimpleGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(twin_partition(&star), vec![0b0001, 0b1110]);
    }

    #[test]
    fn cloning() {
        // clone c over a in a-b-c-d: a takes N(c) = {b, d}
        let c4 = clone_replace(&path4(), 2, 0).unwrap();
        assert_eq!(c4.edges(), vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
        assert_eq!(multipartite_shape(&c4).unwrap().parts(), &[2, 2]);
        let empty = SimpleGraph::empty(3).unwrap();
        assert_eq!(clone_replace(&empty, 0, 2).unwrap(), empty);
        assert!(clone_replace(&path4(), 0, 1).is_err());
        assert!(clone_replace(&path4(), 1, 1).is_err());
    }

    #[test]
    fn path_becomes_square() {
        let t = symmetrise(&path4(), &spec33(), 1_000_000).unwrap();
        assert!(t.complete);
        assert_eq!(t.initial_count.clone().unwrap().to_string(), "8");
        assert_eq!(t.final_shape.clone().unwrap().parts(), &[2, 2]);
        assert_eq!(t.steps.last().unwrap().count_after.to_string(), "16");
        assert!(t.steps.len() <= 3);
    }

    #[test]
    fn multipartite_inputs_take_no_steps() {
        for parts in [&[3usize, 3][..], &[2, 2]] {
            let g = SimpleGraph::complete_multipartite(parts).unwrap();
            let t = symmetrise(&g, &spec33(), 1_000_000).unwrap();
            assert!(t.steps.is_empty());
            assert_eq!(t.final_graph, g);
        }
    }

    #[test]
    fn budget_leaves_partial_trace() {
        let g =
            SimpleGraph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        let t = symmetrise(&g, &spec33(), 2).unwrap();
        assert!(!t.complete);
        assert!(t.final_shape.is_none());
    }
}
