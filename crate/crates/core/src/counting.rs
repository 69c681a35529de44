//! Exact counting of k-valid edge colourings and the extremal search over
//! complete multipartite shapes.
//!
//! The search colours edges one at a time. Placing colour `c` on `uv` is
//! rejected when the colour-`c` common neighbourhood of `u` and `v` already
//! holds a clique of order `k_c - 2`, so every leaf is a valid colouring.
//! Edges lying in no `K_{min k}` of the host can never close a forbidden
//! clique; they are factored out as `s^{free}`.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{bit, contains_clique, SimpleGraph};
use crate::model::{BigCount, ColourSpec, PartitionShape};

/// A colouring of the edges of a graph: `(u, v)` with `u < v` to a colour in
/// `0..s`.
pub type Colouring = BTreeMap<(usize, usize), usize>;

#[derive(Clone, Copy, Debug)]
pub struct CountJob<'a> {
    pub graph: &'a SimpleGraph,
    pub spec: &'a ColourSpec,
    /// Maximum number of search-tree node expansions.
    pub budget: u64,
    /// Number of independent branch prefixes to spread over threads.
    pub parallel_width: usize,
}

impl<'a> CountJob<'a> {
    pub fn new(graph: &'a SimpleGraph, spec: &'a ColourSpec, budget: u64) -> Self {
        CountJob {
            graph,
            spec,
            budget,
            parallel_width: 1,
        }
    }

    pub fn with_parallel_width(mut self, width: usize) -> Self {
        self.parallel_width = width.max(1);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountOutcome {
    pub count: BigCount,
    /// Search-tree nodes expanded.
    pub nodes: u64,
}

/// Exhaustive check: no colour class contains its forbidden clique.
pub fn is_valid_colouring(
    graph: &SimpleGraph,
    colouring: &Colouring,
    spec: &ColourSpec,
) -> Result<bool> {
    let edges = graph.edges();
    if colouring.len() != edges.len() {
        return Err(Error::Structural(format!(
            "colouring has {} entries for {} edges",
            colouring.len(),
            edges.len()
        )));
    }
    let mut classes = vec![vec![0u64; graph.n()]; spec.s()];
    for &(u, v) in &edges {
        let c = *colouring
            .get(&(u, v))
            .ok_or_else(|| Error::Structural(format!("edge ({u},{v}) is not coloured")))?;
        if c >= spec.s() {
            return Err(Error::Structural(format!("colour {c} out of range")));
        }
        classes[c][u] |= bit(v);
        classes[c][v] |= bit(u);
    }
    Ok(classes
        .iter()
        .zip(spec.k())
        .all(|(adj, &k)| !contains_clique(adj, graph.all_vertices(), k)))
}

/// Split the edges into those lying in some `K_{min k}` (which need search)
/// and the rest.
fn split_edges(graph: &SimpleGraph, spec: &ColourSpec) -> (Vec<(usize, usize)>, usize) {
    let adj = graph.adjacency();
    let kmin = spec.min_k();
    let mut constrained = Vec::new();
    let mut free = 0;
    for (u, v) in graph.edges() {
        if contains_clique(adj, adj[u] & adj[v], kmin - 2) {
            constrained.push((u, v));
        } else {
            free += 1;
        }
    }
    (order_edges(constrained), free)
}

/// Greedy order: each next edge has the most already-ordered edges sharing an
/// endpoint; ties go to the lexicographically smallest edge.
pub(crate) fn order_edges(mut pending: Vec<(usize, usize)>) -> Vec<(usize, usize)> {
    pending.sort_unstable();
    let mut deg = [0usize; 64];
    let mut out = Vec::with_capacity(pending.len());
    while !pending.is_empty() {
        let mut best = 0;
        let mut best_score = 0;
        for (idx, &(u, v)) in pending.iter().enumerate() {
            let score = deg[u] + deg[v];
            if score > best_score {
                best = idx;
                best_score = score;
            }
        }
        let (u, v) = pending.remove(best);
        deg[u] += 1;
        deg[v] += 1;
        out.push((u, v));
    }
    out
}

const FLUSH_EVERY: u64 = 1 << 12;

#[derive(Debug)]
struct Exhausted;

/// Node accounting, optionally shared between parallel subtrees.
struct Ticker<'a> {
    local: u64,
    unflushed: u64,
    budget: u64,
    shared: Option<&'a AtomicU64>,
}

impl<'a> Ticker<'a> {
    fn new(budget: u64, shared: Option<&'a AtomicU64>) -> Self {
        Ticker {
            local: 0,
            unflushed: 0,
            budget,
            shared,
        }
    }

    #[inline]
    fn tick(&mut self) -> std::result::Result<(), Exhausted> {
        self.local += 1;
        match self.shared {
            None => {
                if self.local > self.budget {
                    return Err(Exhausted);
                }
            }
            Some(total) => {
                self.unflushed += 1;
                if self.unflushed == FLUSH_EVERY {
                    let t = total.fetch_add(self.unflushed, Ordering::Relaxed) + self.unflushed;
                    self.unflushed = 0;
                    if t > self.budget {
                        return Err(Exhausted);
                    }
                }
            }
        }
        Ok(())
    }

    fn finish(&mut self) {
        if let Some(total) = self.shared {
            total.fetch_add(self.unflushed, Ordering::Relaxed);
            self.unflushed = 0;
        }
    }
}

/// Backtracking state over a fixed edge order.
pub(crate) struct ColourSearch<'a> {
    order: &'a [(usize, usize)],
    k: &'a [usize],
    classes: Vec<Vec<u64>>,
    assignment: Vec<u8>,
    ticker: Ticker<'a>,
}

impl<'a> ColourSearch<'a> {
    fn new(order: &'a [(usize, usize)], k: &'a [usize], n: usize, ticker: Ticker<'a>) -> Self {
        ColourSearch {
            order,
            k,
            classes: vec![vec![0u64; n]; k.len()],
            assignment: Vec::with_capacity(order.len()),
            ticker,
        }
    }

    #[inline]
    fn can_place(&self, c: usize, u: usize, v: usize) -> bool {
        let adj = &self.classes[c];
        !contains_clique(adj, adj[u] & adj[v], self.k[c] - 2)
    }

    #[inline]
    fn place(&mut self, c: usize, u: usize, v: usize) {
        self.classes[c][u] |= bit(v);
        self.classes[c][v] |= bit(u);
        self.assignment.push(c as u8);
    }

    #[inline]
    fn unplace(&mut self, c: usize, u: usize, v: usize) {
        self.classes[c][u] &= !bit(v);
        self.classes[c][v] &= !bit(u);
        self.assignment.pop();
    }

    /// Replay a prefix of colours (already known to be valid).
    fn apply_prefix(&mut self, prefix: &[u8]) {
        for (idx, &c) in prefix.iter().enumerate() {
            let (u, v) = self.order[idx];
            self.place(c as usize, u, v);
        }
    }

    fn count(&mut self) -> std::result::Result<u64, Exhausted> {
        self.ticker.tick()?;
        let idx = self.assignment.len();
        if idx == self.order.len() {
            return Ok(1);
        }
        let (u, v) = self.order[idx];
        let mut total = 0;
        for c in 0..self.k.len() {
            if self.can_place(c, u, v) {
                self.place(c, u, v);
                let sub = self.count();
                self.unplace(c, u, v);
                total += sub?;
            }
        }
        Ok(total)
    }

    /// Depth-first search for one complete valid colouring; on success the
    /// assignment is left in place.
    fn find(&mut self) -> std::result::Result<bool, Exhausted> {
        self.ticker.tick()?;
        let idx = self.assignment.len();
        if idx == self.order.len() {
            return Ok(true);
        }
        let (u, v) = self.order[idx];
        for c in 0..self.k.len() {
            if self.can_place(c, u, v) {
                self.place(c, u, v);
                if self.find()? {
                    return Ok(true);
                }
                self.unplace(c, u, v);
            }
        }
        Ok(false)
    }

    /// Collect every valid assignment of the first `depth` edges. Nodes above
    /// the cut are ticked here; the cut nodes themselves are ticked by the
    /// subtree searches, so totals match a sequential run.
    fn prefixes(
        &mut self,
        depth: usize,
        out: &mut Vec<Vec<u8>>,
    ) -> std::result::Result<(), Exhausted> {
        let idx = self.assignment.len();
        if idx == depth {
            out.push(self.assignment.clone());
            return Ok(());
        }
        self.ticker.tick()?;
        let (u, v) = self.order[idx];
        for c in 0..self.k.len() {
            if self.can_place(c, u, v) {
                self.place(c, u, v);
                let r = self.prefixes(depth, out);
                self.unplace(c, u, v);
                r?;
            }
        }
        Ok(())
    }
}

/// Smallest `d` with `s^d >= width`.
fn split_depth(s: usize, width: usize) -> usize {
    let mut d = 0;
    let mut reach = 1usize;
    while reach < width {
        reach = reach.saturating_mul(s);
        d += 1;
    }
    d
}

fn exceeded(budget: u64, nodes: u64) -> Error {
    Error::BudgetExceeded { budget, nodes }
}

/// Count the valid colourings of the edges in `order` (all others ignored).
fn count_ordered(
    order: &[(usize, usize)],
    n: usize,
    k: &[usize],
    budget: u64,
    width: usize,
) -> Result<(u64, u64)> {
    let depth = split_depth(k.len(), width).min(order.len());
    if depth == 0 {
        let mut search = ColourSearch::new(order, k, n, Ticker::new(budget, None));
        let count = search
            .count()
            .map_err(|_| exceeded(budget, search.ticker.local))?;
        return Ok((count, search.ticker.local));
    }

    let mut top = ColourSearch::new(order, k, n, Ticker::new(budget, None));
    let mut prefixes = Vec::new();
    top.prefixes(depth, &mut prefixes)
        .map_err(|_| exceeded(budget, top.ticker.local))?;
    let used = top.ticker.local;
    let remaining = budget - used;
    let total = AtomicU64::new(0);
    let results: Vec<std::result::Result<(u64, u64), Exhausted>> = prefixes
        .par_iter()
        .map(|prefix| {
            let mut sub = ColourSearch::new(order, k, n, Ticker::new(remaining, Some(&total)));
            sub.apply_prefix(prefix);
            let r = sub.count();
            sub.ticker.finish();
            r.map(|c| (c, sub.ticker.local))
        })
        .collect();
    let nodes = used + total.load(Ordering::Relaxed);
    let mut count = 0u64;
    for r in results {
        match r {
            Ok((c, _)) => count += c,
            Err(Exhausted) => return Err(exceeded(budget, nodes)),
        }
    }
    if nodes > budget {
        return Err(exceeded(budget, nodes));
    }
    Ok((count, nodes))
}

/// Exact `F(G; k)`.
pub fn count_colourings(job: &CountJob<'_>) -> Result<CountOutcome> {
    if job.budget == 0 {
        return Err(Error::Precondition("budget must be positive".into()));
    }
    let (order, free) = split_edges(job.graph, job.spec);
    let s = job.spec.s() as u64;
    let (searched, nodes) = count_ordered(
        &order,
        job.graph.n(),
        job.spec.k(),
        job.budget,
        job.parallel_width,
    )?;
    let count = &BigCount::pow(s, free) * &BigCount::from_u64(searched);
    Ok(CountOutcome { count, nodes })
}

pub fn count_shape(
    shape: &PartitionShape,
    spec: &ColourSpec,
    budget: u64,
    parallel_width: usize,
) -> Result<CountOutcome> {
    let graph = SimpleGraph::complete_multipartite(shape.parts())?;
    count_colourings(&CountJob::new(&graph, spec, budget).with_parallel_width(parallel_width))
}

/// First valid colouring found by the search over all edges of `graph`, if any.
pub(crate) fn find_valid_colouring(
    graph: &SimpleGraph,
    spec: &ColourSpec,
    budget: u64,
) -> Result<(Option<Colouring>, u64)> {
    let (order, _) = split_edges(graph, spec);
    let mut search = ColourSearch::new(&order, spec.k(), graph.n(), Ticker::new(budget, None));
    let found = search
        .find()
        .map_err(|_| exceeded(budget, search.ticker.local))?;
    let nodes = search.ticker.local;
    if !found {
        return Ok((None, nodes));
    }
    let mut colouring: Colouring = order
        .iter()
        .zip(&search.assignment)
        .map(|(&e, &c)| (e, c as usize))
        .collect();
    for e in graph.edges() {
        colouring.entry(e).or_insert(0);
    }
    Ok((Some(colouring), nodes))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrunedShape {
    pub shape: PartitionShape,
    /// `s^{e(shape)}`, the trivial upper bound.
    pub upper_bound: BigCount,
    pub reason: String,
}

/// Result of the search for `F(n; k)` over complete multipartite shapes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalReport {
    pub n: usize,
    pub spec: ColourSpec,
    pub best_value: BigCount,
    /// Every counted shape attaining `best_value`, in search order.
    pub argmax_shapes: Vec<PartitionShape>,
    /// Exact counts, in search order.
    pub per_shape: Vec<(PartitionShape, BigCount)>,
    pub pruned_shapes: Vec<PrunedShape>,
    /// Shapes left uncounted because the budget ran out.
    pub unfinished_shapes: Vec<PartitionShape>,
    pub nodes: u64,
}

impl ExtremalReport {
    pub fn is_complete(&self) -> bool {
        self.unfinished_shapes.is_empty()
    }
}

/// `F(n; k)` as the maximum over all partitions of `n`, visited in decreasing
/// lexicographic order. A shape needing search whose bound `s^{e}` is at most
/// the best exact count so far cannot beat it (a monochromatic clique
/// colouring always exists) and is pruned.
pub fn search_extremal(
    n: usize,
    spec: &ColourSpec,
    budget: u64,
    parallel_width: usize,
) -> Result<ExtremalReport> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let s = spec.s() as u64;
    let mut best = BigCount::zero();
    let mut per_shape = Vec::new();
    let mut pruned_shapes = Vec::new();
    let mut unfinished_shapes = Vec::new();
    let mut used = 0u64;

    for shape in PartitionShape::all_of(n) {
        let bound = BigCount::pow(s, shape.edge_count());
        let trivially_all_valid = shape.r() < spec.min_k();
        if trivially_all_valid {
            if bound > best {
                best = bound.clone();
            }
            per_shape.push((shape, bound));
            continue;
        }
        if !per_shape.is_empty() && bound <= best {
            pruned_shapes.push(PrunedShape {
                reason: format!("upper bound {bound} <= best exact count {best}"),
                shape,
                upper_bound: bound,
            });
            continue;
        }
        let remaining = budget.saturating_sub(used);
        if remaining == 0 {
            unfinished_shapes.push(shape);
            continue;
        }
        match count_shape(&shape, spec, remaining, parallel_width) {
            Ok(out) => {
                used += out.nodes;
                if out.count > best {
                    best = out.count.clone();
                }
                per_shape.push((shape, out.count));
            }
            Err(Error::BudgetExceeded { .. }) => {
                used = budget;
                unfinished_shapes.push(shape);
            }
            Err(e) => return Err(e),
        }
    }

    let argmax_shapes = per_shape
        .iter()
        .filter(|(_, c)| *c == best)
        .map(|(s, _)| s.clone())
        .collect();
    Ok(ExtremalReport {
        n,
        spec: spec.clone(),
        best_value: best,
        argmax_shapes,
        per_shape,
        pruned_shapes,
        unfinished_shapes,
        nodes: used,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(k: &[usize]) -> ColourSpec {
        ColourSpec::new(k.to_vec()).unwrap()
    }

    fn count(g: &SimpleGraph, k: &[usize]) -> u64 {
        let sp = spec(k);
        let out = count_colourings(&CountJob::new(g, &sp, u64::MAX)).unwrap();
        out.count.to_string().parse().unwrap()
    }

    fn colouring(g: &SimpleGraph, colours: &[usize]) -> Colouring {
        g.edges().into_iter().zip(colours.iter().copied()).collect()
    }

    #[test]
    fn validity_examples() {
        let k3 = SimpleGraph::complete(3).unwrap();
        let s33 = spec(&[3, 3]);
        assert!(!is_valid_colouring(&k3, &colouring(&k3, &[0, 0, 0]), &s33).unwrap());
        assert!(is_valid_colouring(&k3, &colouring(&k3, &[0, 0, 1]), &s33).unwrap());
        let k4 = SimpleGraph::complete(4).unwrap();
        assert!(!is_valid_colouring(&k4, &colouring(&k4, &[1; 6]), &spec(&[4, 3])).unwrap());
    }

    #[test]
    fn validity_structural_errors() {
        let k3 = SimpleGraph::complete(3).unwrap();
        let s33 = spec(&[3, 3]);
        assert!(is_valid_colouring(&k3, &colouring(&k3, &[0, 0]), &s33).is_err());
        assert!(is_valid_colouring(&k3, &colouring(&k3, &[0, 0, 2]), &s33).is_err());
        let mut wrong = colouring(&k3, &[0, 0]);
        wrong.insert((0, 0), 1);
        assert!(is_valid_colouring(&k3, &wrong, &s33).is_err());
    }

    #[test]
    fn count_examples() {
        assert_eq!(
            count(
                &SimpleGraph::complete_multipartite(&[3, 3]).unwrap(),
                &[3, 3]
            ),
            512
        );
        assert_eq!(count(&SimpleGraph::complete(3).unwrap(), &[3, 3]), 6);
        assert_eq!(count(&SimpleGraph::complete(4).unwrap(), &[3, 3]), 18);
        assert_eq!(count(&SimpleGraph::complete(6).unwrap(), &[3, 3]), 0);
        assert_eq!(count(&SimpleGraph::empty(6).unwrap(), &[3, 3]), 1);
    }

    #[test]
    fn budget_is_enforced() {
        let g = SimpleGraph::complete(5).unwrap();
        let sp = spec(&[3, 3]);
        let err = count_colourings(&CountJob::new(&g, &sp, 10)).unwrap_err();
        assert!(err.is_budget());
        let err = count_colourings(&CountJob::new(&g, &sp, 10).with_parallel_width(4)).unwrap_err();
        assert!(err.is_budget());
        assert!(count_colourings(&CountJob::new(&g, &sp, 0)).is_err());
    }

    #[test]
    fn parallel_width_does_not_change_result_or_nodes() {
        let g = SimpleGraph::complete_multipartite(&[2, 2, 2, 1]).unwrap();
        let sp = spec(&[4, 3]);
        let seq = count_colourings(&CountJob::new(&g, &sp, u64::MAX)).unwrap();
        for w in [2, 3, 8, 64, 10_000] {
            let par =
                count_colourings(&CountJob::new(&g, &sp, u64::MAX).with_parallel_width(w)).unwrap();
            assert_eq!(par, seq, "width {w}");
        }
    }

    #[test]
    fn exact_budget_boundary() {
        let g = SimpleGraph::complete(5).unwrap();
        let sp = spec(&[3, 3]);
        let full = count_colourings(&CountJob::new(&g, &sp, u64::MAX)).unwrap();
        assert!(count_colourings(&CountJob::new(&g, &sp, full.nodes)).is_ok());
        assert!(count_colourings(&CountJob::new(&g, &sp, full.nodes - 1)).is_err());
        for w in [2, 16] {
            let job = CountJob::new(&g, &sp, full.nodes).with_parallel_width(w);
            assert!(count_colourings(&job).is_ok());
            assert!(count_colourings(&CountJob {
                budget: full.nodes - 1,
                ..job
            })
            .is_err());
        }
    }

    #[test]
    fn extremal_small_n() {
        let r = search_extremal(4, &spec(&[3, 3]), u64::MAX, 1).unwrap();
        assert_eq!(r.best_value, BigCount::from_u64(18));
        let argmax: Vec<String> = r.argmax_shapes.iter().map(|s| s.to_string()).collect();
        assert_eq!(argmax, ["4:2,1,1", "4:1,1,1,1"]);
        assert!(r.is_complete());
        let get = |s: &str| {
            r.per_shape
                .iter()
                .find(|(sh, _)| sh.to_string() == s)
                .map(|(_, c)| c.to_string())
        };
        assert_eq!(get("4:2,2").as_deref(), Some("16"));
        assert_eq!(get("4:3,1").as_deref(), Some("8"));
    }

    #[test]
    fn extremal_budget_flags_unfinished() {
        let r = search_extremal(6, &spec(&[3, 3]), 5, 1).unwrap();
        assert!(!r.is_complete());
    }

    #[test]
    fn edge_order_prefers_touching_edges() {
        let order = order_edges(vec![(2, 3), (0, 1), (1, 2), (0, 2)]);
        assert_eq!(order, vec![(0, 1), (0, 2), (1, 2), (2, 3)]);
    }
}
