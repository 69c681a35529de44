//! Ramsey limits `r < R(k)` and `r < R_2(k)` and their exhaustive verification.

use std::fmt;
use std::sync::OnceLock;

use crate::counting::{find_valid_colouring, Colouring};
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::model::{ColourSpec, PatternFunction};
use crate::patterns::{find_pattern, two_element_lists};

const TABLE_TEXT: &str = include_str!("../data/ramsey_table.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum RamseyKind {
    /// Classical value taken from the shipped table.
    ExactKnown,
    /// Confirmed here by exhaustive search at `value - 1` and `value`.
    ExactVerified,
    /// Multinomial bound; the true value may be smaller.
    UpperBound,
}

impl RamseyKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RamseyKind::ExactKnown => "exact-known",
            RamseyKind::ExactVerified => "exact-verified",
            RamseyKind::UpperBound => "upper-bound",
        }
    }
}

impl fmt::Display for RamseyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamseyLimit {
    pub value: usize,
    pub kind: RamseyKind,
    pub method: String,
}

#[derive(Clone, Debug)]
struct TableEntry {
    k: Vec<usize>,
    value: usize,
    kind: String,
    source: String,
}

struct RamseyTable {
    version: String,
    entries: Vec<TableEntry>,
}

fn parse_table(text: &str) -> Result<RamseyTable> {
    let mut version = String::from("unversioned");
    let mut entries = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("# version") {
            version = rest.trim().to_string();
            continue;
        }
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut toks = line.splitn(4, ' ');
        let (Some(k), Some(value), Some(kind)) = (toks.next(), toks.next(), toks.next()) else {
            return Err(Error::parse(
                ln + 1,
                "expected `k-sequence value kind source`",
            ));
        };
        let mut k = k
            .split(',')
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::parse(ln + 1, format!("bad k {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        k.sort_unstable();
        let value = value
            .parse()
            .map_err(|_| Error::parse(ln + 1, format!("bad value {value:?}")))?;
        entries.push(TableEntry {
            k,
            value,
            kind: kind.to_string(),
            source: toks.next().unwrap_or("").to_string(),
        });
    }
    Ok(RamseyTable { version, entries })
}

fn table() -> &'static RamseyTable {
    static TABLE: OnceLock<RamseyTable> = OnceLock::new();
    TABLE.get_or_init(|| parse_table(TABLE_TEXT).expect("shipped Ramsey table parses"))
}

/// Version tag of the shipped Ramsey table.
pub fn table_version() -> &'static str {
    &table().version
}

fn sorted_k(spec: &ColourSpec) -> Vec<usize> {
    let mut k = spec.k().to_vec();
    k.sort_unstable();
    k
}

/// `(sum (k_c - 1))! / prod (k_c - 1)!`, saturating at `usize::MAX`.
pub fn multinomial_bound(spec: &ColourSpec) -> usize {
    let mut total = 0u128;
    let mut value = 1u128;
    for &k in spec.k() {
        for i in 1..k as u128 {
            total += 1;
            // running product of binomials stays integral
            value = value.saturating_mul(total) / i;
        }
    }
    usize::try_from(value).unwrap_or(usize::MAX)
}

/// The limit `R(k)` in force: a table value when known, otherwise the
/// multinomial upper bound.
pub fn ramsey_limit(spec: &ColourSpec) -> RamseyLimit {
    let k = sorted_k(spec);
    if let Some(e) = table()
        .entries
        .iter()
        .find(|e| e.k == k && e.kind == "exact-known")
    {
        return RamseyLimit {
            value: e.value,
            kind: RamseyKind::ExactKnown,
            method: format!("table v{}: {}", table().version, e.source),
        };
    }
    RamseyLimit {
        value: multinomial_bound(spec),
        kind: RamseyKind::UpperBound,
        method: "multinomial bound (sum(k_c-1))!/prod(k_c-1)!".into(),
    }
}

/// Lower-bound annotation for `R_2(k)` from the table, if any. Never a limit.
pub fn list_ramsey_lower_bound(spec: &ColourSpec) -> Option<(usize, String)> {
    let k = sorted_k(spec);
    table()
        .entries
        .iter()
        .find(|e| e.k == k && e.kind == "list-lower-bound")
        .map(|e| (e.value, e.source.clone()))
}

/// [`ramsey_limit`] upgraded to `ExactVerified` when both `K_{value-1}`
/// (admits) and `K_value` (does not admit) are decided within budget.
pub fn verified_ramsey_limit(spec: &ColourSpec, budget: u64) -> Result<RamseyLimit> {
    let limit = ramsey_limit(spec);
    if limit.value > 64 {
        return Err(Error::Unsupported(format!(
            "cannot verify R = {} on at most 64 vertices",
            limit.value
        )));
    }
    let below = verify_ramsey(spec, limit.value - 1, budget)?;
    let at = verify_ramsey(spec, limit.value, budget)?;
    match (below, at) {
        (RamseyVerdict::Admits(_), RamseyVerdict::DoesNotAdmit) => Ok(RamseyLimit {
            value: limit.value,
            kind: RamseyKind::ExactVerified,
            method: format!(
                "exhaustive search on K_{} and K_{}",
                limit.value - 1,
                limit.value
            ),
        }),
        (RamseyVerdict::DoesNotAdmit, _) => Err(Error::Precondition(format!(
            "K_{} admits no valid colouring, so the limit {} is not tight",
            limit.value - 1,
            limit.value
        ))),
        (_, RamseyVerdict::Admits(_)) => Err(Error::Precondition(format!(
            "K_{} admits a valid colouring, contradicting the limit",
            limit.value
        ))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RamseyVerdict {
    /// With a witness colouring of `K_r` (colours `0..s`).
    Admits(Colouring),
    DoesNotAdmit,
}

/// Does `K_r` have a k-valid colouring? Budget exhaustion is an error
/// (undecided), never a guess.
pub fn verify_ramsey(spec: &ColourSpec, r: usize, budget: u64) -> Result<RamseyVerdict> {
    let g = SimpleGraph::complete(r)?;
    match find_valid_colouring(&g, spec, budget)? {
        (Some(w), _) => Ok(RamseyVerdict::Admits(w)),
        (None, _) => Ok(RamseyVerdict::DoesNotAdmit),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ListRamseyVerdict {
    /// Witness pattern with all lists of size 2 and clique-free colour classes.
    NotForced(PatternFunction),
    Forced,
}

/// Is every 2-element-list pattern on `r` parts forced to contain a
/// forbidden clique in some colour?
pub fn list_ramsey_search(spec: &ColourSpec, r: usize, budget: u64) -> Result<ListRamseyVerdict> {
    let options = two_element_lists(spec.s());
    match find_pattern(spec, r, &options, budget)? {
        Some(phi) => Ok(ListRamseyVerdict::NotForced(phi)),
        None => Ok(ListRamseyVerdict::Forced),
    }
}

/// `R_2(k)` bracketed by consecutive calls: `lower < R_2`, and `R_2 = upper`
/// when `upper` is known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListRamseyBracket {
    /// Largest `r` shown not forced.
    pub lower: usize,
    /// Smallest `r` shown forced, if reached.
    pub upper: Option<usize>,
    /// Set when the budget ran out before `upper` was found.
    pub undecided_at: Option<usize>,
}

pub fn bracket_list_ramsey(
    spec: &ColourSpec,
    rmax: usize,
    budget: u64,
) -> Result<ListRamseyBracket> {
    let mut lower = 1;
    for r in 2..=rmax {
        match list_ramsey_search(spec, r, budget) {
            Ok(ListRamseyVerdict::NotForced(_)) => lower = r,
            Ok(ListRamseyVerdict::Forced) => {
                return Ok(ListRamseyBracket {
                    lower,
                    upper: Some(r),
                    undecided_at: None,
                })
            }
            Err(e) if e.is_budget() => {
                return Ok(ListRamseyBracket {
                    lower,
                    upper: None,
                    undecided_at: Some(r),
                })
            }
            Err(e) => return Err(e),
        }
    }
    Ok(ListRamseyBracket {
        lower,
        upper: None,
        undecided_at: None,
    })
}
