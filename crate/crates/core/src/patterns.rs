//! Enumeration of feasible pattern functions up to isomorphism.

use rayon::prelude::*;

use crate::canonical::{canonical_of_representative, is_canonical, CanonicalPattern};
use crate::error::{Error, Result};
use crate::graph::{bit, contains_clique};
use crate::model::{ColourSpec, PatternFunction};
use crate::ramsey::ramsey_limit;

/// Order in which the backtracking assigns lists to pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PairOrder {
    /// `(0,1), (0,2), (1,2), (0,3), ...`
    #[default]
    Colex,
    /// `(0,1), (0,2), ..., (0,r-1), (1,2), ...`
    Lex,
}

fn pair_sequence(r: usize, order: PairOrder) -> Vec<(usize, usize)> {
    match order {
        PairOrder::Colex => (1..r).flat_map(|b| (0..b).map(move |a| (a, b))).collect(),
        PairOrder::Lex => (0..r)
            .flat_map(|a| ((a + 1)..r).map(move |b| (a, b)))
            .collect(),
    }
}

/// Colour lists with at least `t` colours, in increasing mask order.
pub fn lists_of_size_at_least(s: usize, t: usize) -> Vec<u8> {
    (0u16..(1 << s))
        .map(|m| m as u8)
        .filter(|m| m.count_ones() as usize >= t)
        .collect()
}

pub fn two_element_lists(s: usize) -> Vec<u8> {
    (0u16..(1 << s))
        .map(|m| m as u8)
        .filter(|m| m.count_ones() == 2)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternEnumeration {
    /// One representative per isomorphism class, in search order.
    pub patterns: Vec<CanonicalPattern>,
    /// Feasible labelled patterns visited.
    pub labelled_count: u64,
    /// Set when the budget ran out; `patterns` is then a prefix of the full output.
    pub truncated: bool,
    pub nodes: u64,
}

struct Backtrack<'a> {
    spec: &'a ColourSpec,
    pairs: &'a [(usize, usize)],
    options: &'a [u8],
    phi: PatternFunction,
    classes: Vec<Vec<u64>>,
    nodes: u64,
    budget: u64,
    emitted: Vec<CanonicalPattern>,
    labelled: u64,
}

#[derive(Debug)]
struct OutOfBudget;

impl<'a> Backtrack<'a> {
    fn new(
        spec: &'a ColourSpec,
        r: usize,
        pairs: &'a [(usize, usize)],
        options: &'a [u8],
        budget: u64,
    ) -> Self {
        Backtrack {
            spec,
            pairs,
            options,
            phi: PatternFunction::empty(r, spec.s()).expect("r checked"),
            classes: vec![vec![0u64; r]; spec.s()],
            nodes: 0,
            budget,
            emitted: Vec::new(),
            labelled: 0,
        }
    }

    fn tick(&mut self) -> std::result::Result<(), OutOfBudget> {
        self.nodes += 1;
        if self.nodes > self.budget {
            Err(OutOfBudget)
        } else {
            Ok(())
        }
    }

    fn fits(&self, list: u8, i: usize, j: usize) -> bool {
        (0..self.spec.s()).all(|c| {
            if list & (1 << c) == 0 {
                return true;
            }
            let adj = &self.classes[c];
            !contains_clique(adj, adj[i] & adj[j], self.spec.k_of(c) - 2)
        })
    }

    fn toggle(&mut self, list: u8, i: usize, j: usize) {
        for c in 0..self.spec.s() {
            if list & (1 << c) != 0 {
                self.classes[c][i] ^= bit(j);
                self.classes[c][j] ^= bit(i);
            }
        }
    }

    fn set(&mut self, idx: usize, list: u8) {
        let (i, j) = self.pairs[idx];
        self.toggle(list, i, j);
        self.phi.set_list(i, j, list);
    }

    fn unset(&mut self, idx: usize, list: u8) {
        let (i, j) = self.pairs[idx];
        self.toggle(list, i, j);
        self.phi.set_list(i, j, 0);
    }

    fn enumerate(&mut self, idx: usize) -> std::result::Result<(), OutOfBudget> {
        self.tick()?;
        if idx == self.pairs.len() {
            self.labelled += 1;
            if is_canonical(&self.phi, self.spec).expect("size checked") {
                self.emitted
                    .push(canonical_of_representative(&self.phi, self.spec));
            }
            return Ok(());
        }
        let (i, j) = self.pairs[idx];
        for o in 0..self.options.len() {
            let list = self.options[o];
            if self.fits(list, i, j) {
                self.set(idx, list);
                let r = self.enumerate(idx + 1);
                self.unset(idx, list);
                r?;
            }
        }
        Ok(())
    }

    fn find(&mut self, idx: usize) -> std::result::Result<bool, OutOfBudget> {
        self.tick()?;
        if idx == self.pairs.len() {
            return Ok(true);
        }
        let (i, j) = self.pairs[idx];
        for o in 0..self.options.len() {
            let list = self.options[o];
            if self.fits(list, i, j) {
                self.set(idx, list);
                if self.find(idx + 1)? {
                    return Ok(true);
                }
                self.unset(idx, list);
            }
        }
        Ok(false)
    }
}

struct ShardRun {
    emitted: Vec<CanonicalPattern>,
    labelled: u64,
    nodes: u64,
    exhausted: bool,
}

fn run_shard(
    spec: &ColourSpec,
    r: usize,
    pairs: &[(usize, usize)],
    options: &[u8],
    first: u8,
    budget: u64,
) -> ShardRun {
    let mut bt = Backtrack::new(spec, r, pairs, options, budget);
    bt.set(0, first);
    let exhausted = bt.enumerate(1).is_err();
    ShardRun {
        emitted: bt.emitted,
        labelled: bt.labelled,
        nodes: bt.nodes,
        exhausted,
    }
}

pub fn enumerate_patterns(
    spec: &ColourSpec,
    r: usize,
    t: usize,
    budget: u64,
) -> Result<PatternEnumeration> {
    enumerate_patterns_ordered(spec, r, t, budget, PairOrder::Colex)
}

/// Every class of `Phi_t(r; k)` exactly once, with orbit sizes.
///
/// The search is split by the list on the first pair and the shards run in
/// parallel; the merged output (and any truncation point) is the same as a
/// sequential depth-first run.
pub fn enumerate_patterns_ordered(
    spec: &ColourSpec,
    r: usize,
    t: usize,
    budget: u64,
    order: PairOrder,
) -> Result<PatternEnumeration> {
    if r == 0 {
        return Err(Error::Precondition("r must be at least 1".into()));
    }
    if t > 2 {
        return Err(Error::Precondition(format!("t must be 0, 1 or 2, got {t}")));
    }
    let limit = ramsey_limit(spec);
    if t <= 1 && r >= limit.value {
        return Err(Error::Precondition(format!(
            "r = {r} is not below the Ramsey limit {} ({})",
            limit.value, limit.kind
        )));
    }
    if r > crate::canonical::MAX_CANONICAL_PARTS {
        return Err(Error::Unsupported(format!(
            "pattern enumeration is limited to {} parts",
            crate::canonical::MAX_CANONICAL_PARTS
        )));
    }
    if budget == 0 {
        return Err(Error::Precondition("budget must be positive".into()));
    }
    let pairs = pair_sequence(r, order);
    let options = lists_of_size_at_least(spec.s(), t);

    if pairs.is_empty() {
        let mut bt = Backtrack::new(spec, r, &pairs, &options, budget);
        bt.enumerate(0)
            .expect("single node fits any positive budget");
        return Ok(PatternEnumeration {
            patterns: bt.emitted,
            labelled_count: bt.labelled,
            truncated: false,
            nodes: bt.nodes,
        });
    }

    let shards: Vec<ShardRun> = options
        .par_iter()
        .map(|&first| run_shard(spec, r, &pairs, &options, first, budget))
        .collect();

    // root node
    let mut nodes = 1u64;
    let mut out = PatternEnumeration {
        patterns: Vec::new(),
        labelled_count: 0,
        truncated: false,
        nodes: 0,
    };
    for (shard, &first) in shards.into_iter().zip(&options) {
        let fits = !shard.exhausted && nodes + shard.nodes <= budget;
        let shard = if fits {
            shard
        } else {
            out.truncated = true;
            run_shard(spec, r, &pairs, &options, first, budget - nodes)
        };
        nodes += shard.nodes;
        out.labelled_count += shard.labelled;
        out.patterns.extend(shard.emitted);
        if out.truncated {
            break;
        }
    }
    out.nodes = nodes.min(budget.saturating_add(1));
    Ok(out)
}

/// Any pattern on `r` parts using only `options` lists with clique-free
/// colour classes. Budget exhaustion is an error.
pub(crate) fn find_pattern(
    spec: &ColourSpec,
    r: usize,
    options: &[u8],
    budget: u64,
) -> Result<Option<PatternFunction>> {
    if r == 0 || r > 64 {
        return Err(Error::Precondition(format!("r = {r} out of range")));
    }
    let pairs = pair_sequence(r, PairOrder::Colex);
    let mut bt = Backtrack::new(spec, r, &pairs, options, budget);
    match bt.find(0) {
        Ok(true) => Ok(Some(bt.phi)),
        Ok(false) => Ok(None),
        Err(OutOfBudget) => Err(Error::BudgetExceeded {
            budget,
            nodes: bt.nodes,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::canonical_form;
    use crate::model::{feasibility_level, Feasibility};
    use std::collections::BTreeSet;

    fn spec(k: &[usize]) -> ColourSpec {
        ColourSpec::new(k.to_vec()).unwrap()
    }

    /// Every labelled pattern, feasibility by the independent clique check.
    fn naive_labelled(spec: &ColourSpec, r: usize, t: usize) -> Vec<PatternFunction> {
        let pairs = r * (r - 1) / 2;
        let options = lists_of_size_at_least(spec.s(), t);
        let mut out = Vec::new();
        let total = options.len().pow(pairs as u32);
        for mut code in 0..total {
            let mut lists = Vec::with_capacity(pairs);
            for _ in 0..pairs {
                lists.push(options[code % options.len()]);
                code /= options.len();
            }
            let phi = PatternFunction::from_lists(r, spec.s(), lists).unwrap();
            if let Feasibility::Level(l) = feasibility_level(&phi, spec).unwrap() {
                if l as usize >= t {
                    out.push(phi);
                }
            }
        }
        out
    }

    #[test]
    fn r2_t1_for_33() {
        let e = enumerate_patterns(&spec(&[3, 3]), 2, 1, 1000).unwrap();
        assert_eq!(e.patterns.len(), 2);
        assert_eq!(e.labelled_count, 3);
        assert_eq!(e.patterns.iter().map(|p| p.orbit_size).sum::<u64>(), 3);
    }

    #[test]
    fn r3_counts_for_33() {
        let e = enumerate_patterns(&spec(&[3, 3]), 3, 1, 10_000).unwrap();
        assert_eq!(e.labelled_count, 12);
        assert_eq!(e.patterns.iter().map(|p| p.orbit_size).sum::<u64>(), 12);
        let e2 = enumerate_patterns(&spec(&[3, 3]), 3, 2, 10_000).unwrap();
        assert!(e2.patterns.is_empty());
        assert!(!e2.truncated);
    }

    #[test]
    fn single_part() {
        let e = enumerate_patterns(&spec(&[3, 3]), 1, 2, 10).unwrap();
        assert_eq!(e.patterns.len(), 1);
        assert_eq!(e.patterns[0].orbit_size, 1);
    }

    #[test]
    fn orbit_sums_match_naive_generator() {
        for (k, r, t) in [
            (vec![3, 3], 4, 0),
            (vec![3, 3], 4, 1),
            (vec![4, 3], 3, 0),
            (vec![4, 3], 4, 1),
            (vec![3, 3, 3], 3, 1),
        ] {
            let sp = spec(&k);
            let naive = naive_labelled(&sp, r, t);
            let e = enumerate_patterns(&sp, r, t, u64::MAX).unwrap();
            assert_eq!(e.labelled_count, naive.len() as u64, "{k:?} r={r} t={t}");
            assert_eq!(
                e.patterns.iter().map(|p| p.orbit_size).sum::<u64>(),
                naive.len() as u64,
                "{k:?} r={r} t={t}"
            );
            let classes: BTreeSet<Vec<u8>> = naive
                .iter()
                .map(|p| canonical_form(p, &sp).unwrap().canonical_code)
                .collect();
            let got: BTreeSet<Vec<u8>> = e
                .patterns
                .iter()
                .map(|p| p.canonical_code.clone())
                .collect();
            assert_eq!(got.len(), e.patterns.len(), "duplicates emitted");
            assert_eq!(got, classes);
            for p in &e.patterns {
                let level = feasibility_level(&p.pattern, &sp).unwrap().level().unwrap();
                assert!(level as usize >= t);
            }
        }
    }

    #[test]
    fn traversal_order_does_not_change_the_classes() {
        let sp = spec(&[4, 3]);
        let a = enumerate_patterns_ordered(&sp, 4, 0, u64::MAX, PairOrder::Colex).unwrap();
        let b = enumerate_patterns_ordered(&sp, 4, 0, u64::MAX, PairOrder::Lex).unwrap();
        let codes = |e: &PatternEnumeration| -> BTreeSet<Vec<u8>> {
            e.patterns
                .iter()
                .map(|p| p.canonical_code.clone())
                .collect()
        };
        assert_eq!(codes(&a), codes(&b));
        assert_eq!(a.labelled_count, b.labelled_count);
    }

    #[test]
    fn truncation_is_flagged_and_deterministic() {
        let sp = spec(&[3, 3]);
        let full = enumerate_patterns(&sp, 4, 0, u64::MAX).unwrap();
        for budget in [1, 7, 50, 300, full.nodes - 1] {
            let a = enumerate_patterns(&sp, 4, 0, budget).unwrap();
            let b = enumerate_patterns(&sp, 4, 0, budget).unwrap();
            assert!(a.truncated, "budget {budget}");
            assert_eq!(a, b);
            assert!(a.patterns.len() <= full.patterns.len());
            assert_eq!(a.patterns[..], full.patterns[..a.patterns.len()]);
        }
        let exact = enumerate_patterns(&sp, 4, 0, full.nodes).unwrap();
        assert!(!exact.truncated);
        assert_eq!(exact, full);
    }

    #[test]
    fn ramsey_precondition() {
        assert!(enumerate_patterns(&spec(&[3, 3]), 6, 1, 100).is_err());
        assert!(enumerate_patterns(&spec(&[3, 3]), 3, 3, 100).is_err());
    }
}
