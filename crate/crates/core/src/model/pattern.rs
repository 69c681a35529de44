use std::fmt;

use super::colour_spec::{ColourSpec, MAX_COLOURS};
use crate::error::{Error, Result};
use crate::graph::bit;

/// Index of the unordered pair `{i, j}` (`i < j`) in lexicographic order over
/// `r` parts.
#[inline]
pub fn pair_index(r: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < r);
    i * (2 * r - i - 1) / 2 + (j - i - 1)
}

pub fn pair_count(r: usize) -> usize {
    r * r.saturating_sub(1) / 2
}

/// A pattern function: a colour list (bitmask over `0..s`) for every pair of
/// the `r` parts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PatternFunction {
    r: usize,
    s: usize,
    lists: Vec<u8>,
}

impl PatternFunction {
    /// All lists empty.
    pub fn empty(r: usize, s: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::Structural(
                "a pattern needs at least one part".into(),
            ));
        }
        if r > 64 {
            return Err(Error::Unsupported(format!("at most 64 parts, got {r}")));
        }
        if s == 0 || s > MAX_COLOURS {
            return Err(Error::Structural(format!("colour count {s} out of range")));
        }
        Ok(PatternFunction {
            r,
            s,
            lists: vec![0; pair_count(r)],
        })
    }

    /// Build from lists given in lexicographic pair order.
    pub fn from_lists(r: usize, s: usize, lists: Vec<u8>) -> Result<Self> {
        let mut p = Self::empty(r, s)?;
        if lists.len() != p.lists.len() {
            return Err(Error::Structural(format!(
                "{} lists given for {} pairs",
                lists.len(),
                p.lists.len()
            )));
        }
        let all = ((1u16 << s) - 1) as u8;
        if lists.iter().any(|&l| l & !all != 0) {
            return Err(Error::Structural("list mentions a colour beyond s".into()));
        }
        p.lists = lists;
        Ok(p)
    }

    /// The same list on every pair.
    pub fn constant(r: usize, s: usize, list: u8) -> Result<Self> {
        Self::from_lists(r, s, vec![list; pair_count(r)])
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// Lists in lexicographic pair order.
    pub fn lists(&self) -> &[u8] {
        &self.lists
    }

    pub fn list(&self, i: usize, j: usize) -> u8 {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.lists[pair_index(self.r, a, b)]
    }

    pub fn list_size(&self, i: usize, j: usize) -> usize {
        self.list(i, j).count_ones() as usize
    }

    pub fn set_list(&mut self, i: usize, j: usize, list: u8) {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        let idx = pair_index(self.r, a, b);
        self.lists[idx] = list;
    }

    /// Pairs `(i, j)` with `i < j` in the order of [`lists`](Self::lists).
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.r).flat_map(move |i| ((i + 1)..self.r).map(move |j| (i, j)))
    }

    pub fn min_list_size(&self) -> Option<usize> {
        self.lists.iter().map(|l| l.count_ones() as usize).min()
    }

    /// Neighbour bitsets of the colour class `{ij : colour in lists(ij)}`.
    pub fn class_for(&self, colour: usize) -> Vec<u64> {
        let mut adj = vec![0u64; self.r];
        for (i, j) in self.pairs() {
            if self.list(i, j) & (1 << colour) != 0 {
                adj[i] |= bit(j);
                adj[j] |= bit(i);
            }
        }
        adj
    }

    /// Image under a part relabelling: part `i` becomes `perm[i]`.
    pub fn permute_parts(&self, perm: &[usize]) -> PatternFunction {
        let mut out = self.clone();
        for (i, j) in self.pairs() {
            out.set_list(perm[i], perm[j], self.list(i, j));
        }
        out
    }

    /// Image under a colour relabelling: colour `c` becomes `perm[c]`.
    pub fn permute_colours(&self, perm: &[usize]) -> PatternFunction {
        let mut out = self.clone();
        for l in out.lists.iter_mut() {
            *l = map_mask(*l, perm);
        }
        out
    }

    /// Serialise in the pattern text format (header plus one line per pair).
    pub fn to_text(&self, spec: &ColourSpec) -> String {
        let mut out = format!("{} {}", self.r, self.s);
        for k in spec.k() {
            out.push_str(&format!(" {k}"));
        }
        out.push('\n');
        for (i, j) in self.pairs() {
            out.push_str(&format!(
                "{} {} {}\n",
                i + 1,
                j + 1,
                format_list(self.list(i, j))
            ));
        }
        out
    }

    /// Parse the pattern text format. Every pair must appear exactly once.
    pub fn parse(text: &str) -> Result<(PatternFunction, ColourSpec)> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing header"))?;
        let nums = header
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::parse(ln, format!("bad header token {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if nums.len() < 2 || nums.len() != 2 + nums[1] {
            return Err(Error::parse(ln, "header must be `r s k_1 ... k_s`"));
        }
        let (r, s) = (nums[0], nums[1]);
        let spec = ColourSpec::new(nums[2..].to_vec())?;
        let mut phi = PatternFunction::empty(r, s)?;
        let mut seen = vec![false; pair_count(r)];
        for (ln, line) in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 3 {
                return Err(Error::parse(ln, "expected `i j colours`"));
            }
            let idx = |t: &str| -> Result<usize> {
                let v: usize = t
                    .parse()
                    .map_err(|_| Error::parse(ln, format!("bad part {t:?}")))?;
                if v == 0 || v > r {
                    return Err(Error::parse(ln, format!("part {v} out of range 1..={r}")));
                }
                Ok(v - 1)
            };
            let (i, j) = (idx(toks[0])?, idx(toks[1])?);
            if i >= j {
                return Err(Error::parse(ln, "pairs must be written with i < j"));
            }
            let list = parse_list(toks[2], s).map_err(|m| Error::parse(ln, m))?;
            let p = pair_index(r, i, j);
            if seen[p] {
                return Err(Error::parse(
                    ln,
                    format!("pair {} {} listed twice", i + 1, j + 1),
                ));
            }
            seen[p] = true;
            phi.lists[p] = list;
        }
        if let Some(p) = seen.iter().position(|&x| !x) {
            let (i, j) = phi.pairs().nth(p).expect("pair exists");
            return Err(Error::parse(0, format!("pair {} {} missing", i + 1, j + 1)));
        }
        Ok((phi, spec))
    }
}

pub(crate) fn map_mask(mask: u8, perm: &[usize]) -> u8 {
    let mut out = 0u8;
    for (c, &d) in perm.iter().enumerate() {
        if mask & (1 << c) != 0 {
            out |= 1 << d;
        }
    }
    out
}

/// `1,2` style list text, `-` for the empty list (colours 1-based).
pub fn format_list(list: u8) -> String {
    if list == 0 {
        return "-".into();
    }
    (0..8)
        .filter(|c| list & (1 << c) != 0)
        .map(|c| (c + 1).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_list(tok: &str, s: usize) -> std::result::Result<u8, String> {
    if tok == "-" {
        return Ok(0);
    }
    let mut mask = 0u8;
    for part in tok.split(',') {
        let c: usize = part.parse().map_err(|_| format!("bad colour {part:?}"))?;
        if c == 0 || c > s {
            return Err(format!("colour {c} out of range 1..={s}"));
        }
        mask |= 1 << (c - 1);
    }
    Ok(mask)
}

impl fmt::Debug for PatternFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pattern(r={}, s={}; ", self.r, self.s)?;
        let lists: Vec<String> = self
            .pairs()
            .map(|(i, j)| format!("{}{}:{}", i + 1, j + 1, format_list(self.list(i, j))))
            .collect();
        write!(f, "{})", lists.join(" "))
    }
}
