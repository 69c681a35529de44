//! Small simple graphs stored as neighbour bitsets (at most 64 vertices).

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;

#[inline]
pub(crate) fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Iterate over the set bits of a mask, lowest first.
#[inline]
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

/// Does the graph given by `adj`, restricted to `cand`, contain a clique of
/// order `size`?
pub(crate) fn contains_clique(adj: &[u64], cand: u64, size: usize) -> bool {
    match size {
        0 => true,
        1 => cand != 0,
        _ => {
            if (cand.count_ones() as usize) < size {
                return false;
            }
            let mut rest = cand;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                // only extend with higher-labelled vertices so each clique is seen once
                if contains_clique(adj, rest & adj[v], size - 1) {
                    return true;
                }
            }
            false
        }
    }
}

/// Undirected loopless graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    adj: Vec<u64>,
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::Unsupported(format!(
                "graphs are limited to {MAX_VERTICES} vertices, got {n}"
            )));
        }
        Ok(SimpleGraph { adj: vec![0; n] })
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for u in 0..n {
            for v in (u + 1)..n {
                g.add_edge(u, v);
            }
        }
        Ok(g)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Structural(format!(
                    "edge ({u},{v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::Structural(format!("loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Complete multipartite graph with the given part sizes; part `i` occupies
    /// a contiguous block of labels. Zero-size parts are allowed and ignored.
    pub fn complete_multipartite(parts: &[usize]) -> Result<Self> {
        let n = parts.iter().sum();
        let mut g = Self::empty(n)?;
        let mut part_of = Vec::with_capacity(n);
        for (i, &p) in parts.iter().enumerate() {
            part_of.extend(std::iter::repeat(i).take(p));
        }
        for u in 0..n {
            for v in (u + 1)..n {
                if part_of[u] != part_of[v] {
                    g.add_edge(u, v);
                }
            }
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    pub fn neighbours(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] & bit(v) != 0
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !bit(v);
        self.adj[v] &= !bit(u);
    }

    /// Replace the neighbourhood of `v` wholesale.
    pub(crate) fn set_neighbours(&mut self, v: usize, nbrs: u64) {
        let old = self.adj[v];
        for w in bits(old) {
            self.adj[w] &= !bit(v);
        }
        for w in bits(nbrs) {
            self.adj[w] |= bit(v);
        }
        self.adj[v] = nbrs;
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n() {
            for v in bits(self.adj[u] >> (u + 1) << (u + 1)) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|a| a.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn all_vertices(&self) -> u64 {
        if self.n() == MAX_VERTICES {
            u64::MAX
        } else {
            bit(self.n()) - 1
        }
    }

    pub fn has_clique(&self, size: usize) -> bool {
        contains_clique(&self.adj, self.all_vertices(), size)
    }

    pub fn clique_number(&self) -> usize {
        let mut w = 0;
        while w < self.n() && self.has_clique(w + 1) {
            w += 1;
        }
        w
    }

    /// Vertex-disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &SimpleGraph) -> Result<SimpleGraph> {
        let shift = self.n();
        let mut g = Self::empty(shift + other.n())?;
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(u + shift, v + shift);
        }
        Ok(g)
    }

    /// Parse the edge-list format: first non-comment line `n`, then `u v` per
    /// line (0-based). Lines starting with `#` are ignored.
    pub fn parse_edge_list(text: &str) -> Result<SimpleGraph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing vertex count"))?;
        let n: usize = header
            .parse()
            .map_err(|_| Error::parse(ln, format!("bad vertex count {header:?}")))?;
        let mut edges = Vec::new();
        for (ln, line) in lines {
            let mut it = line.split_whitespace();
            let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
                return Err(Error::parse(ln, "expected `u v`"));
            };
            let u = a
                .parse()
                .map_err(|_| Error::parse(ln, format!("bad vertex {a:?}")))?;
            let v = b
                .parse()
                .map_err(|_| Error::parse(ln, format!("bad vertex {b:?}")))?;
            edges.push((u, v));
        }
        SimpleGraph::from_edges(n, &edges).map_err(|e| match e {
            Error::Structural(m) => Error::parse(0, m),
            other => other,
        })
    }

    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{}\n", self.n());
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimpleGraph(n={}, edges={:?})", self.n(), self.edges())
    }
}
