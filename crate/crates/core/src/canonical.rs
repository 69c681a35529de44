//! Canonical forms of pattern functions under part relabelling combined with
//! colour permutations that preserve `k`.
//!
//! The code of a labelled pattern is `[r, s]` followed by its lists in colex
//! pair order `(0,1), (0,2), (1,2), (0,3), ...`. In that order, fixing the
//! images of parts `0..p` fixes a prefix of the code, so the minimum over the
//! group is found by a depth-first search that abandons any branch whose
//! prefix already exceeds the best code.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::model::{map_mask, ColourSpec, PatternFunction};

/// Largest part count for explicit group minimisation.
pub const MAX_CANONICAL_PARTS: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalPattern {
    /// The class representative whose code is minimal.
    pub pattern: PatternFunction,
    pub canonical_code: Vec<u8>,
    /// Number of distinct labelled patterns in the class.
    pub orbit_size: u64,
}

/// Colex code of `phi` as labelled.
pub fn code_of(phi: &PatternFunction) -> Vec<u8> {
    let r = phi.r();
    let mut code = Vec::with_capacity(2 + phi.lists().len());
    code.push(r as u8);
    code.push(phi.s() as u8);
    for b in 1..r {
        for a in 0..b {
            code.push(phi.list(a, b));
        }
    }
    code
}

fn decode(code: &[u8]) -> PatternFunction {
    let (r, s) = (code[0] as usize, code[1] as usize);
    let mut phi = PatternFunction::empty(r, s).expect("valid code");
    let mut pos = 2;
    for b in 1..r {
        for a in 0..b {
            phi.set_list(a, b, code[pos]);
            pos += 1;
        }
    }
    phi
}

fn colour_tables(spec: &ColourSpec) -> Vec<[u8; 256]> {
    spec.colour_permutations()
        .into_iter()
        .map(|perm| {
            let mut t = [0u8; 256];
            for (m, slot) in t.iter_mut().enumerate() {
                *slot = map_mask(m as u8, &perm);
            }
            t
        })
        .collect()
}

fn check(phi: &PatternFunction, spec: &ColourSpec) -> Result<()> {
    if phi.s() != spec.s() {
        return Err(Error::Structural("pattern and spec disagree on s".into()));
    }
    if phi.r() > MAX_CANONICAL_PARTS {
        return Err(Error::Unsupported(format!(
            "canonical forms are computed for at most {MAX_CANONICAL_PARTS} parts, got {}",
            phi.r()
        )));
    }
    Ok(())
}

/// What the search does with each candidate image.
enum Goal<'a> {
    /// Track the minimum code.
    Minimise { best: Option<Vec<u8>> },
    /// Stop as soon as an image smaller than `own` appears.
    BeatOwn { own: &'a [u8], beaten: bool },
    /// Count images equal to `own`.
    CountEqual { own: &'a [u8], count: u64 },
}

struct Search<'a> {
    phi: &'a PatternFunction,
    table: &'a [u8; 256],
    /// `image[p]` = original part placed at position `p`.
    image: Vec<usize>,
    used: u64,
    code: Vec<u8>,
    goal: Goal<'a>,
}

impl Search<'_> {
    fn reference(&self) -> Option<&[u8]> {
        match &self.goal {
            Goal::Minimise { best } => best.as_deref(),
            Goal::BeatOwn { own, .. } | Goal::CountEqual { own, .. } => Some(own),
        }
    }

    fn run(&mut self) -> bool {
        let r = self.phi.r();
        let p = self.image.len();
        if p == r {
            match &mut self.goal {
                Goal::Minimise { best } => {
                    if best.as_ref().is_none_or(|b| self.code < *b) {
                        *best = Some(self.code.clone());
                    }
                }
                Goal::BeatOwn { .. } => {}
                Goal::CountEqual { count, .. } => *count += 1,
            }
            return false;
        }
        for x in 0..r {
            if self.used & (1 << x) != 0 {
                continue;
            }
            let mark = self.code.len();
            for a in 0..p {
                let l = self.phi.list(self.image[a], x);
                self.code.push(self.table[l as usize]);
            }
            let ord = match self.reference() {
                None => Ordering::Less,
                Some(reference) => self.code[..].cmp(&reference[..self.code.len()]),
            };
            let descend = match &mut self.goal {
                Goal::Minimise { .. } => ord != Ordering::Greater,
                Goal::BeatOwn { beaten, .. } => {
                    if ord == Ordering::Less {
                        *beaten = true;
                        return true;
                    }
                    ord == Ordering::Equal
                }
                Goal::CountEqual { .. } => ord == Ordering::Equal,
            };
            if descend {
                self.image.push(x);
                self.used |= 1 << x;
                let stop = self.run();
                self.used &= !(1 << x);
                self.image.pop();
                if stop {
                    self.code.truncate(mark);
                    return true;
                }
            }
            self.code.truncate(mark);
        }
        false
    }
}

fn search<'a>(phi: &'a PatternFunction, table: &'a [u8; 256], goal: Goal<'a>) -> Goal<'a> {
    let mut s = Search {
        phi,
        table,
        image: Vec::with_capacity(phi.r()),
        used: 0,
        code: vec![phi.r() as u8, phi.s() as u8],
        goal,
    };
    s.run();
    s.goal
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn automorphisms(phi: &PatternFunction, own: &[u8], tables: &[[u8; 256]]) -> u64 {
    tables
        .iter()
        .map(
            |t| match search(phi, t, Goal::CountEqual { own, count: 0 }) {
                Goal::CountEqual { count, .. } => count,
                _ => unreachable!(),
            },
        )
        .sum()
}

pub fn canonical_form(phi: &PatternFunction, spec: &ColourSpec) -> Result<CanonicalPattern> {
    check(phi, spec)?;
    let tables = colour_tables(spec);
    let mut best: Option<Vec<u8>> = None;
    for t in &tables {
        if let Goal::Minimise { best: Some(c) } =
            search(phi, t, Goal::Minimise { best: best.clone() })
        {
            best = Some(c);
        }
    }
    let canonical_code = best.expect("group is non-empty");
    let own = code_of(phi);
    let group = factorial(phi.r()) * tables.len() as u64;
    let orbit_size = group / automorphisms(phi, &own, &tables);
    Ok(CanonicalPattern {
        pattern: decode(&canonical_code),
        canonical_code,
        orbit_size,
    })
}

/// True when no group element maps `phi` to a smaller code.
pub fn is_canonical(phi: &PatternFunction, spec: &ColourSpec) -> Result<bool> {
    check(phi, spec)?;
    let own = code_of(phi);
    for t in &colour_tables(spec) {
        if let Goal::BeatOwn { beaten: true, .. } = search(
            phi,
            t,
            Goal::BeatOwn {
                own: &own,
                beaten: false,
            },
        ) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Canonical data for a pattern already known to be canonical.
pub(crate) fn canonical_of_representative(
    phi: &PatternFunction,
    spec: &ColourSpec,
) -> CanonicalPattern {
    let tables = colour_tables(spec);
    let own = code_of(phi);
    let group = factorial(phi.r()) * tables.len() as u64;
    let orbit_size = group / automorphisms(phi, &own, &tables);
    CanonicalPattern {
        pattern: phi.clone(),
        canonical_code: own,
        orbit_size,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn spec(k: &[usize]) -> ColourSpec {
        ColourSpec::new(k.to_vec()).unwrap()
    }

    #[test]
    fn colour_swap_only_when_k_agrees() {
        let one = PatternFunction::constant(2, 2, 0b01).unwrap();
        let two = PatternFunction::constant(2, 2, 0b10).unwrap();
        let s33 = spec(&[3, 3]);
        assert_eq!(
            canonical_form(&one, &s33).unwrap().canonical_code,
            canonical_form(&two, &s33).unwrap().canonical_code
        );
        let s43 = spec(&[4, 3]);
        assert_ne!(
            canonical_form(&one, &s43).unwrap().canonical_code,
            canonical_form(&two, &s43).unwrap().canonical_code
        );
    }

    #[test]
    fn orbit_sizes() {
        let s33 = spec(&[3, 3]);
        let one = PatternFunction::constant(2, 2, 0b01).unwrap();
        assert_eq!(canonical_form(&one, &s33).unwrap().orbit_size, 2);
        let both = PatternFunction::constant(2, 2, 0b11).unwrap();
        assert_eq!(canonical_form(&both, &s33).unwrap().orbit_size, 1);
        // a path 1-2-3 in colour 1 with colour 2 on the remaining pair
        let path = PatternFunction::from_lists(3, 2, vec![0b01, 0b10, 0b01]).unwrap();
        assert_eq!(canonical_form(&path, &s33).unwrap().orbit_size, 6);
    }

    #[test]
    fn too_many_parts() {
        let big = PatternFunction::empty(9, 2).unwrap();
        assert!(canonical_form(&big, &spec(&[3, 3])).is_err());
    }

    fn arb_pattern(s: usize) -> impl Strategy<Value = (PatternFunction, Vec<usize>, bool)> {
        (2usize..=5).prop_flat_map(move |r| {
            let pairs = r * (r - 1) / 2;
            (
                proptest::collection::vec(0u8..(1 << s), pairs),
                Just((0..r).collect::<Vec<_>>()).prop_shuffle(),
                any::<bool>(),
            )
                .prop_map(move |(lists, perm, swap)| {
                    (
                        PatternFunction::from_lists(r, s, lists).unwrap(),
                        perm,
                        swap,
                    )
                })
        })
    }

    proptest! {
        #[test]
        fn canonical_code_is_invariant((phi, perm, swap) in arb_pattern(2)) {
            let s33 = spec(&[3, 3]);
            let mut other = phi.permute_parts(&perm);
            if swap {
                other = other.permute_colours(&[1, 0]);
            }
            let a = canonical_form(&phi, &s33).unwrap();
            let b = canonical_form(&other, &s33).unwrap();
            prop_assert_eq!(&a.canonical_code, &b.canonical_code);
            prop_assert_eq!(a.orbit_size, b.orbit_size);
            // idempotent and the representative is canonical
            let again = canonical_form(&a.pattern, &s33).unwrap();
            prop_assert_eq!(&again.canonical_code, &a.canonical_code);
            prop_assert!(is_canonical(&a.pattern, &s33).unwrap());
            prop_assert_eq!(code_of(&a.pattern), a.canonical_code);
        }
    }
}
