use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest colour count supported; colour lists are stored as `u8` masks.
pub const MAX_COLOURS: usize = 8;

/// The forbidden clique orders `k = (k_1, ..., k_s)`, one per colour.
///
/// Colours are labelled: `(4,3)` and `(3,4)` are different specs. Internally
/// colours are `0..s`; textual formats use `1..=s`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColourSpec {
    k: Vec<usize>,
}

impl ColourSpec {
    pub fn new(k: Vec<usize>) -> Result<Self> {
        if k.len() < 2 {
            return Err(Error::InvalidSpec(format!(
                "need at least two colours, got {}",
                k.len()
            )));
        }
        if k.len() > MAX_COLOURS {
            return Err(Error::InvalidSpec(format!(
                "at most {MAX_COLOURS} colours are supported, got {}",
                k.len()
            )));
        }
        if let Some(&bad) = k.iter().find(|&&kc| kc < 3) {
            return Err(Error::InvalidSpec(format!(
                "every clique order must be at least 3, got {bad}"
            )));
        }
        Ok(ColourSpec { k })
    }

    pub fn uniform(s: usize, k: usize) -> Result<Self> {
        Self::new(vec![k; s])
    }

    pub fn s(&self) -> usize {
        self.k.len()
    }

    pub fn k(&self) -> &[usize] {
        &self.k
    }

    pub fn k_of(&self, colour: usize) -> usize {
        self.k[colour]
    }

    pub fn min_k(&self) -> usize {
        *self.k.iter().min().expect("non-empty")
    }

    pub fn is_uniform(&self) -> bool {
        self.k.iter().all(|&kc| kc == self.k[0])
    }

    /// Mask with one bit per colour.
    pub fn all_colours(&self) -> u8 {
        ((1u16 << self.s()) - 1) as u8
    }

    /// All colour permutations `sigma` with `k[sigma[c]] == k[c]`, identity first.
    pub fn colour_permutations(&self) -> Vec<Vec<usize>> {
        fn extend(
            k: &[usize],
            cur: &mut Vec<usize>,
            used: &mut Vec<bool>,
            out: &mut Vec<Vec<usize>>,
        ) {
            let c = cur.len();
            if c == k.len() {
                out.push(cur.clone());
                return;
            }
            for d in 0..k.len() {
                if !used[d] && k[d] == k[c] {
                    used[d] = true;
                    cur.push(d);
                    extend(k, cur, used, out);
                    cur.pop();
                    used[d] = false;
                }
            }
        }
        let mut out = Vec::new();
        extend(
            &self.k,
            &mut Vec::new(),
            &mut vec![false; self.s()],
            &mut out,
        );
        out
    }
}

impl FromStr for ColourSpec {
    type Err = Error;

    /// Parses a comma list such as `4,3`.
    fn from_str(s: &str) -> Result<Self> {
        let k = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidSpec(format!("bad clique order {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        ColourSpec::new(k)
    }
}

impl fmt::Display for ColourSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.k.iter().map(|k| k.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for ColourSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ColourSpec({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_specs() {
        assert!(ColourSpec::new(vec![3]).is_err());
        assert!(ColourSpec::new(vec![3, 2]).is_err());
        assert!(ColourSpec::new(vec![3; 9]).is_err());
        assert!("3,x".parse::<ColourSpec>().is_err());
        assert_eq!("4, 3".parse::<ColourSpec>().unwrap().k(), &[4, 3]);
    }

    #[test]
    fn colour_permutations_respect_k() {
        assert_eq!(
            ColourSpec::new(vec![3, 3])
                .unwrap()
                .colour_permutations()
                .len(),
            2
        );
        assert_eq!(
            ColourSpec::new(vec![4, 3]).unwrap().colour_permutations(),
            vec![vec![0, 1]]
        );
        let p = ColourSpec::new(vec![3, 4, 3])
            .unwrap()
            .colour_permutations();
        assert_eq!(p, vec![vec![0, 1, 2], vec![2, 1, 0]]);
        assert_eq!(
            ColourSpec::uniform(4, 4)
                .unwrap()
                .colour_permutations()
                .len(),
            24
        );
    }
}
