use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Part sizes of a complete multipartite graph, stored non-increasing.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartitionShape {
    parts: Vec<usize>,
}

impl PartitionShape {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Structural("a shape needs at least one part".into()));
        }
        if parts.contains(&0) {
            return Err(Error::Structural("shape parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(PartitionShape { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn r(&self) -> usize {
        self.parts.len()
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn edge_count(&self) -> usize {
        let n = self.n();
        (n * n - self.parts.iter().map(|p| p * p).sum::<usize>()) / 2
    }

    /// Every partition of `n`, in decreasing lexicographic order starting at `(n)`.
    pub fn all_of(n: usize) -> Vec<PartitionShape> {
        fn rec(remaining: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<PartitionShape>) {
            if remaining == 0 {
                out.push(PartitionShape { parts: cur.clone() });
                return;
            }
            for p in (1..=remaining.min(max)).rev() {
                cur.push(p);
                rec(remaining - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            rec(n, n, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl FromStr for PartitionShape {
    type Err = Error;

    /// `"n: p1,p2,..."`; the stated `n` must equal the sum.
    fn from_str(s: &str) -> Result<Self> {
        let (n, parts) = s
            .split_once(':')
            .ok_or_else(|| Error::parse(1, "shape must look like `n: p1,p2,...`"))?;
        let n: usize = n
            .trim()
            .parse()
            .map_err(|_| Error::parse(1, format!("bad vertex count {n:?}")))?;
        let parts = parts
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::parse(1, format!("bad part {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let shape = PartitionShape::new(parts)?;
        if shape.n() != n {
            return Err(Error::parse(
                1,
                format!("parts sum to {}, not {n}", shape.n()),
            ));
        }
        Ok(shape)
    }
}

impl fmt::Display for PartitionShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}:{}", self.n(), parts.join(","))
    }
}

impl fmt::Debug for PartitionShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Shape({self})")
    }
}

impl PartialOrd for PartitionShape {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PartitionShape {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.parts.cmp(&other.parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_of_small_n() {
        let p4: Vec<String> = PartitionShape::all_of(4)
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(p4, ["4:4", "4:3,1", "4:2,2", "4:2,1,1", "4:1,1,1,1"]);
        assert_eq!(PartitionShape::all_of(7).len(), 15);
        assert_eq!(PartitionShape::all_of(10).len(), 42);
        assert!(PartitionShape::all_of(0).is_empty());
    }

    #[test]
    fn parse_and_canonical_order() {
        let s: PartitionShape = "6: 3,1,2".parse().unwrap();
        assert_eq!(s.parts(), &[3, 2, 1]);
        assert_eq!(s.edge_count(), 11);
        assert!("6:3,2".parse::<PartitionShape>().is_err());
        assert!("6".parse::<PartitionShape>().is_err());
        assert!("0:0".parse::<PartitionShape>().is_err());
    }
}
