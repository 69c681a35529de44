//! Maximising `q(r, phi, .)` over the simplex, bounded-`r` solves of the
//! optimisation problem, the density-profile LP bound and stability distances.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::canonical::CanonicalPattern;
use crate::error::{Error, Result};
use crate::model::{
    evaluate_q, list_weight, ColourSpec, PartitionShape, PatternFunction, WeightVector,
};
use crate::patterns::enumerate_patterns;
use crate::ramsey::{ramsey_limit, RamseyLimit};

/// Tolerance for comparing objective values.
pub const Q_TOL: f64 = 1e-9;
/// Resolution of the face grid used when a stationarity system is singular.
pub const FALLBACK_RESOLUTION: usize = 120;
/// Largest face grid evaluated in a fallback; coarser resolutions are used
/// on faces where resolution 120 would exceed it.
pub const FALLBACK_MAX_POINTS: u64 = 10_000;
pub const MAX_SUPPORT_PARTS: usize = 20;

const NEG_TOL: f64 = 1e-12;
const SINGULAR_RATIO: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Stationary point with full support.
    InteriorStationary,
    /// All weight on one part.
    Vertex,
    /// Stationary point of a proper face.
    BoundaryFace,
    /// Best point came from a face grid after a singular system.
    FallbackGrid,
}

impl Certificate {
    pub fn as_str(self) -> &'static str {
        match self {
            Certificate::InteriorStationary => "interior-stationary",
            Certificate::Vertex => "vertex",
            Certificate::BoundaryFace => "boundary-face",
            Certificate::FallbackGrid => "fallback-grid",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlphaOptimum {
    pub alpha: WeightVector,
    pub q_value: f64,
    /// Parts with non-zero weight.
    pub support: Vec<usize>,
    pub certificate: Certificate,
    /// Largest violation of the first-order conditions at `alpha`.
    pub kkt_residual: f64,
}

/// Symmetric matrix `w_ij = log2 |lists(ij)|` with zero diagonal, so that
/// `q = alpha^T W alpha`.
pub fn weight_matrix(phi: &PatternFunction) -> DMatrix<f64> {
    let r = phi.r();
    let mut w = DMatrix::zeros(r, r);
    for (i, j) in phi.pairs() {
        let x = list_weight(phi.list_size(i, j));
        w[(i, j)] = x;
        w[(j, i)] = x;
    }
    w
}

fn quad(w: &DMatrix<f64>, x: &[f64]) -> f64 {
    let r = x.len();
    let mut q = 0.0;
    for i in 0..r {
        if x[i] == 0.0 {
            continue;
        }
        for j in (i + 1)..r {
            q += 2.0 * x[i] * x[j] * w[(i, j)];
        }
    }
    q
}

fn kkt_residual(w: &DMatrix<f64>, x: &[f64], support: &[usize]) -> f64 {
    let r = x.len();
    let grad: Vec<f64> = (0..r)
        .map(|i| (0..r).map(|j| w[(i, j)] * x[j]).sum())
        .collect();
    let lambda = quad(w, x);
    let mut res = 0.0f64;
    for i in 0..r {
        let g = grad[i] - lambda;
        res = res.max(if support.contains(&i) {
            g.abs()
        } else {
            g.max(0.0)
        });
    }
    res
}

enum FaceSolution {
    Point(Vec<f64>),
    Infeasible,
    Singular,
}

/// Solve `(W x)_i = lambda` on `support`, `sum x = 1`, `x = 0` elsewhere.
fn solve_face(w: &DMatrix<f64>, support: &[usize]) -> FaceSolution {
    let m = support.len();
    let mut a = DMatrix::zeros(m + 1, m + 1);
    for (p, &i) in support.iter().enumerate() {
        for (q, &j) in support.iter().enumerate() {
            a[(p, q)] = w[(i, j)];
        }
        a[(p, m)] = -1.0;
        a[(m, p)] = 1.0;
    }
    let mut rhs = DVector::zeros(m + 1);
    rhs[m] = 1.0;

    let sv = a.clone().singular_values();
    let max = sv.max();
    if sv.min() <= SINGULAR_RATIO * max.max(1.0) {
        return FaceSolution::Singular;
    }
    let Some(sol) = a.lu().solve(&rhs) else {
        return FaceSolution::Singular;
    };
    let mut x = vec![0.0; w.nrows()];
    for (p, &i) in support.iter().enumerate() {
        let v = sol[p];
        if v < -NEG_TOL {
            return FaceSolution::Infeasible;
        }
        x[i] = v.max(0.0);
    }
    let sum: f64 = x.iter().sum();
    for v in x.iter_mut() {
        *v /= sum;
    }
    FaceSolution::Point(x)
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    let mut acc = 1u128;
    for i in 0..k as u128 {
        acc = acc * (n as u128 - i) / (i + 1);
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Number of points `x` with `x_i = c_i / m`, `sum c_i = m`, in dimension `r`.
pub fn grid_size(r: usize, m: usize) -> u64 {
    binomial((m + r - 1) as u64, (r - 1) as u64)
}

/// Visit every composition of `m` into `parts.len()` parts, lexicographically.
fn for_each_composition(parts: usize, m: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(cur: &mut Vec<usize>, parts: usize, left: usize, f: &mut impl FnMut(&[usize])) {
        if cur.len() + 1 == parts {
            cur.push(left);
            f(cur);
            cur.pop();
            return;
        }
        for c in 0..=left {
            cur.push(c);
            rec(cur, parts, left - c, f);
            cur.pop();
        }
    }
    if parts == 0 {
        return;
    }
    rec(&mut Vec::with_capacity(parts), parts, m, f);
}

/// Best grid point on the face spanned by `support`.
fn face_grid(w: &DMatrix<f64>, support: &[usize], m: usize) -> (Vec<f64>, f64) {
    let r = w.nrows();
    let mut best = (vec![0.0; r], f64::NEG_INFINITY);
    let mut x = vec![0.0; r];
    for_each_composition(support.len(), m, &mut |c| {
        for (p, &i) in support.iter().enumerate() {
            x[i] = c[p] as f64 / m as f64;
        }
        let q = quad(w, &x);
        if q > best.1 {
            best = (x.clone(), q);
        }
    });
    best
}

fn weights_are_zero(w: &DMatrix<f64>, support: &[usize]) -> bool {
    support
        .iter()
        .all(|&i| support.iter().all(|&j| w[(i, j)] == 0.0))
}

/// Maximise `q(r, phi, .)` over the simplex by enumerating supports.
///
/// On a minimal support of a global maximiser the stationarity system is
/// non-singular (a singular one lets weight slide to a smaller face at equal
/// value), so the best non-singular solution is the maximum. Singular faces
/// are still covered by a face grid and flagged if that grid ever wins.
pub fn optimize_alpha(phi: &PatternFunction) -> Result<AlphaOptimum> {
    let r = phi.r();
    if r > MAX_SUPPORT_PARTS {
        return Err(Error::Unsupported(format!(
            "support enumeration is limited to {MAX_SUPPORT_PARTS} parts, got {r}"
        )));
    }
    let w = weight_matrix(phi);
    let mut best: Option<(Vec<f64>, f64, Vec<usize>, bool)> = None;
    let mut consider = |x: Vec<f64>, q: f64, support: Vec<usize>, from_grid: bool| {
        if best.as_ref().is_none_or(|b| q > b.1 + NEG_TOL) {
            best = Some((x, q, support, from_grid));
        }
    };

    for mask in 1u32..(1u32 << r) {
        let support: Vec<usize> = (0..r).filter(|&i| mask & (1 << i) != 0).collect();
        match solve_face(&w, &support) {
            FaceSolution::Point(x) => {
                let q = quad(&w, &x);
                let actual: Vec<usize> = (0..r).filter(|&i| x[i] > 0.0).collect();
                consider(x, q, actual, false);
            }
            FaceSolution::Infeasible => {}
            FaceSolution::Singular => {
                if weights_are_zero(&w, &support) {
                    // q vanishes on this face; its vertices are covered separately
                    continue;
                }
                let mut m = FALLBACK_RESOLUTION;
                while m > 1 && grid_size(support.len(), m) > FALLBACK_MAX_POINTS {
                    m -= 1;
                }
                let (x, q) = face_grid(&w, &support, m);
                let actual: Vec<usize> = (0..r).filter(|&i| x[i] > 0.0).collect();
                consider(x, q, actual, true);
            }
        }
    }

    let (x, _, support, from_grid) = best.expect("vertices always solve");
    let alpha = WeightVector::new(x.clone())?;
    let q_value = evaluate_q(phi, &alpha)?;
    let certificate = if from_grid {
        Certificate::FallbackGrid
    } else if support.len() == 1 {
        Certificate::Vertex
    } else if support.len() == r {
        Certificate::InteriorStationary
    } else {
        Certificate::BoundaryFace
    };
    let kkt_residual = kkt_residual(&w, alpha.entries(), &support);
    Ok(AlphaOptimum {
        alpha,
        q_value,
        support,
        certificate,
        kkt_residual,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridOptimum {
    pub alpha: WeightVector,
    pub q: f64,
    pub points: u64,
}

/// Exact maximum of `q` over weight vectors whose entries are multiples of
/// `1/m`. Always a lower bound for the true optimum; by Lipschitz continuity
/// the gap is at most `2 (r/m) log2 s`.
pub fn grid_oracle(phi: &PatternFunction, m: usize, max_points: u64) -> Result<GridOptimum> {
    if m == 0 {
        return Err(Error::Precondition(
            "grid resolution must be positive".into(),
        ));
    }
    let r = phi.r();
    let points = grid_size(r, m);
    if points > max_points {
        return Err(Error::BudgetExceeded {
            budget: max_points,
            nodes: points,
        });
    }
    let w = weight_matrix(phi);
    let all: Vec<usize> = (0..r).collect();
    let (x, _) = face_grid(&w, &all, m);
    let alpha = WeightVector::new(x)?;
    let q = evaluate_q(phi, &alpha)?;
    Ok(GridOptimum { alpha, q, points })
}

/// Upper bound on the grid gap: `2 (r/m) log2 s`.
pub fn lipschitz_gap(r: usize, m: usize, s: usize) -> f64 {
    2.0 * (r as f64 / m as f64) * (s as f64).log2()
}

#[derive(Clone, Debug, PartialEq)]
pub struct TripleRecord {
    pub r: usize,
    pub pattern: CanonicalPattern,
    pub optimum: AlphaOptimum,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PerRBest {
    pub r: usize,
    /// Isomorphism classes examined at this `r`.
    pub classes: usize,
    pub best: Option<TripleRecord>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    /// `best` is the maximum over all `r <= rmax`.
    ExhaustiveUpToRmax,
    /// The pattern budget ran out; `best` is only a lower bound.
    BudgetTruncated,
}

impl SolveStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SolveStatus::ExhaustiveUpToRmax => "exhaustive-up-to-rmax",
            SolveStatus::BudgetTruncated => "budget-truncated",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolveOptions {
    /// Pattern-enumeration node budget across all `r`.
    pub budget: u64,
    /// Triples within this many bits of the best are kept in `candidates`.
    pub record_window: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            budget: 50_000_000,
            record_window: 1e-6,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QSolveReport {
    pub spec: ColourSpec,
    pub t: usize,
    pub rmax: usize,
    /// The Ramsey limit `rmax` was checked against.
    pub limit: RamseyLimit,
    pub best: TripleRecord,
    pub per_r_best: Vec<PerRBest>,
    pub status: SolveStatus,
    pub lp_bound: Option<f64>,
    /// Near-optimal triples (within `record_window` of `best`), in `(r, code)` order.
    pub candidates: Vec<TripleRecord>,
    pub record_window: f64,
    pub nodes: u64,
}

/// Solve the bounded problem: maximise `q` over feasible triples at level `t`
/// with `r <= rmax`. Ties prefer smaller `r`, then the smaller canonical code.
pub fn solve_q(
    spec: &ColourSpec,
    t: usize,
    rmax: usize,
    options: SolveOptions,
) -> Result<QSolveReport> {
    if rmax == 0 {
        return Err(Error::Precondition("rmax must be at least 1".into()));
    }
    let limit = ramsey_limit(spec);
    if rmax >= limit.value {
        return Err(Error::Precondition(format!(
            "rmax = {rmax} is not below the Ramsey limit {} ({})",
            limit.value, limit.kind
        )));
    }
    let mut used = 0u64;
    let mut status = SolveStatus::ExhaustiveUpToRmax;
    let mut all: Vec<TripleRecord> = Vec::new();
    let mut per_r_best = Vec::new();

    for r in 1..=rmax {
        let remaining = options.budget.saturating_sub(used);
        if remaining == 0 {
            status = SolveStatus::BudgetTruncated;
            break;
        }
        let en = enumerate_patterns(spec, r, t, remaining)?;
        used += en.nodes;
        let mut classes = en.patterns;
        classes.sort_by(|a, b| a.canonical_code.cmp(&b.canonical_code));
        let records = classes
            .into_par_iter()
            .map(|pattern| {
                optimize_alpha(&pattern.pattern).map(|optimum| TripleRecord {
                    r,
                    pattern,
                    optimum,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut best_here: Option<&TripleRecord> = None;
        for rec in &records {
            if best_here.is_none_or(|b| rec.optimum.q_value > b.optimum.q_value + Q_TOL) {
                best_here = Some(rec);
            }
        }
        per_r_best.push(PerRBest {
            r,
            classes: records.len(),
            best: best_here.cloned(),
        });
        all.extend(records);
        if en.truncated {
            status = SolveStatus::BudgetTruncated;
            break;
        }
    }

    let mut best: Option<&TripleRecord> = None;
    for rec in &all {
        if best.is_none_or(|b| rec.optimum.q_value > b.optimum.q_value + Q_TOL) {
            best = Some(rec);
        }
    }
    let best = best
        .cloned()
        .ok_or_else(|| Error::Precondition("budget too small to examine any pattern".into()))?;
    let candidates = all
        .into_iter()
        .filter(|rec| rec.optimum.q_value >= best.optimum.q_value - options.record_window)
        .collect();
    let lp_bound = lp_profile_bound(spec).ok().map(|b| b.value);
    Ok(QSolveReport {
        spec: spec.clone(),
        t,
        rmax,
        limit,
        best,
        per_r_best,
        status,
        lp_bound,
        candidates,
        record_window: options.record_window,
        nodes: used,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpProfileBound {
    pub value: f64,
    /// Maximising profile, `d[l-1]` for list size `l`.
    pub d: Vec<f64>,
}

/// Maximum of `sum d_l log2 l` subject to `d >= 0`, `sum d_l <= 1` and
/// `sum l d_l <= s (1 - 1/(k-1))`, for uniform `k`. Vertices of this LP have
/// at most two non-zero coordinates, so they are enumerated directly.
pub fn lp_profile_bound(spec: &ColourSpec) -> Result<LpProfileBound> {
    if !spec.is_uniform() {
        return Err(Error::Unsupported(format!(
            "the profile inequality holds for uniform k only, got ({spec})"
        )));
    }
    let s = spec.s();
    let k = spec.k_of(0) as f64;
    let budget = s as f64 * (1.0 - 1.0 / (k - 1.0));
    let mut best = LpProfileBound {
        value: 0.0,
        d: vec![0.0; s],
    };
    let mut consider = |d: Vec<f64>| {
        let value: f64 = d
            .iter()
            .enumerate()
            .map(|(i, x)| x * list_weight(i + 1))
            .sum();
        if value > best.value + NEG_TOL {
            best = LpProfileBound { value, d };
        }
    };
    for l in 1..=s {
        let mut d = vec![0.0; s];
        d[l - 1] = (budget / l as f64).min(1.0);
        consider(d);
    }
    for a in 1..=s {
        for b in (a + 1)..=s {
            // both constraints tight: d_a + d_b = 1, a d_a + b d_b = budget
            let db = (budget - a as f64) / (b - a) as f64;
            let da = 1.0 - db;
            if da >= 0.0 && db >= 0.0 {
                let mut d = vec![0.0; s];
                d[a - 1] = da;
                d[b - 1] = db;
                consider(d);
            }
        }
    }
    Ok(best)
}

#[derive(Clone, Debug, PartialEq)]
pub enum StabilityMatch {
    Matched {
        distance: f64,
        /// The matched optimum's weights, permuted to line up with the shape.
        alpha_prime: Vec<f64>,
        q_value: f64,
        canonical_code: Vec<u8>,
    },
    /// No recorded near-optimal triple has as many parts as the shape.
    NoMatch,
}

/// A recorded optimum as seen by [`nearest_optimum`].
#[derive(Clone, Debug, PartialEq)]
pub struct StabilityCandidate {
    pub r: usize,
    pub q_value: f64,
    pub alpha: Vec<f64>,
    pub canonical_code: Vec<u8>,
}

impl From<&TripleRecord> for StabilityCandidate {
    fn from(rec: &TripleRecord) -> Self {
        StabilityCandidate {
            r: rec.r,
            q_value: rec.optimum.q_value,
            alpha: rec.optimum.alpha.entries().to_vec(),
            canonical_code: rec.pattern.canonical_code.clone(),
        }
    }
}

/// l1 distance from the shape's part ratios to the closest candidate with
/// the same number of parts and `q >= best_q - eta_window`, minimised over
/// part permutations. Sorting both vectors gives the optimal matching for l1.
pub fn nearest_optimum(
    shape: &PartitionShape,
    best_q: f64,
    candidates: &[StabilityCandidate],
    eta_window: f64,
) -> StabilityMatch {
    let n = shape.n() as f64;
    let alpha: Vec<f64> = shape.parts().iter().map(|&p| p as f64 / n).collect();
    let threshold = best_q - eta_window;
    let mut best: Option<StabilityMatch> = None;
    for cand in candidates {
        if cand.r != shape.r() || cand.q_value < threshold {
            continue;
        }
        let mut other = cand.alpha.clone();
        other.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
        let distance: f64 = alpha.iter().zip(&other).map(|(a, b)| (a - b).abs()).sum();
        let better = match &best {
            Some(StabilityMatch::Matched { distance: d, .. }) => distance < *d - NEG_TOL,
            _ => true,
        };
        if better {
            best = Some(StabilityMatch::Matched {
                distance,
                alpha_prime: other,
                q_value: cand.q_value,
                canonical_code: cand.canonical_code.clone(),
            });
        }
    }
    best.unwrap_or(StabilityMatch::NoMatch)
}

/// [`nearest_optimum`] over the near-optimal triples recorded by [`solve_q`].
pub fn stability_distance(
    shape: &PartitionShape,
    report: &QSolveReport,
    eta_window: f64,
) -> StabilityMatch {
    let candidates: Vec<StabilityCandidate> = report.candidates.iter().map(Into::into).collect();
    nearest_optimum(shape, report.best.optimum.q_value, &candidates, eta_window)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(k: &[usize]) -> ColourSpec {
        ColourSpec::new(k.to_vec()).unwrap()
    }

    #[test]
    fn two_parts_full_list() {
        let phi = PatternFunction::constant(2, 2, 0b11).unwrap();
        let o = optimize_alpha(&phi).unwrap();
        assert_eq!(o.alpha.entries(), &[0.5, 0.5]);
        assert!((o.q_value - 0.5).abs() < 1e-15);
        assert_eq!(o.certificate, Certificate::InteriorStationary);
        assert!(o.kkt_residual <= 1e-9);
    }

    #[test]
    fn degenerate_third_part() {
        let phi = PatternFunction::from_lists(3, 2, vec![0b11, 0b01, 0b10]).unwrap();
        let o = optimize_alpha(&phi).unwrap();
        assert!((o.q_value - 0.5).abs() < 1e-12);
        assert_eq!(o.support, vec![0, 1]);
        assert_eq!(o.alpha.entries()[2], 0.0);
        assert_eq!(o.certificate, Certificate::BoundaryFace);
    }

    #[test]
    fn triangle_of_doubles() {
        let phi = PatternFunction::constant(3, 2, 0b11).unwrap();
        let o = optimize_alpha(&phi).unwrap();
        assert!((o.q_value - 2.0 / 3.0).abs() < 1e-12);
        for a in o.alpha.entries() {
            assert!((a - 1.0 / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn all_singletons_is_a_vertex() {
        let phi = PatternFunction::from_lists(3, 2, vec![0b01, 0b10, 0]).unwrap();
        let o = optimize_alpha(&phi).unwrap();
        assert_eq!(o.q_value, 0.0);
        assert_eq!(o.certificate, Certificate::Vertex);
    }

    #[test]
    fn grid_examples() {
        let phi = PatternFunction::constant(2, 2, 0b11).unwrap();
        assert_eq!(grid_oracle(&phi, 10, 1000).unwrap().q, 0.5);
        let g = grid_oracle(&phi, 3, 1000).unwrap();
        assert!((g.q - 4.0 / 9.0).abs() < 1e-15);
        assert_eq!(grid_oracle(&phi, 1, 1000).unwrap().q, 0.0);
        assert!(grid_oracle(&phi, 10, 5).unwrap_err().is_budget());
        assert_eq!(grid_size(3, 120), 7381);
    }

    #[test]
    fn lp_bounds() {
        let b = lp_profile_bound(&spec(&[3, 3])).unwrap();
        assert_eq!(b.value, 0.5);
        assert_eq!(b.d, vec![0.0, 0.5]);
        let b = lp_profile_bound(&ColourSpec::uniform(4, 3).unwrap()).unwrap();
        assert!((b.value - 2.0 / 3.0 * 3f64.log2()).abs() < 1e-12);
        let b = lp_profile_bound(&ColourSpec::uniform(4, 4).unwrap()).unwrap();
        assert!((b.value - 8.0 / 9.0 * 3f64.log2()).abs() < 1e-12);
        assert!(lp_profile_bound(&spec(&[4, 3])).is_err());
    }

    #[test]
    fn solve_small_cases() {
        let r = solve_q(&spec(&[3, 3]), 2, 2, SolveOptions::default()).unwrap();
        assert!((r.best.optimum.q_value - 0.5).abs() < 1e-9);
        assert_eq!(r.status, SolveStatus::ExhaustiveUpToRmax);
        let r = solve_q(&spec(&[4, 4]), 2, 3, SolveOptions::default()).unwrap();
        assert!((r.best.optimum.q_value - 2.0 / 3.0).abs() < 1e-9);
        assert_eq!(r.best.r, 3);
        assert!(r.best.pattern.pattern.lists().iter().all(|&l| l == 0b11));
        assert!(solve_q(&spec(&[3, 3]), 2, 6, SolveOptions::default()).is_err());
    }

    #[test]
    fn truncated_solve_is_flagged() {
        let opts = SolveOptions {
            budget: 40,
            ..SolveOptions::default()
        };
        let r = solve_q(&spec(&[4, 3]), 0, 4, opts).unwrap();
        assert_eq!(r.status, SolveStatus::BudgetTruncated);
    }

    #[test]
    fn stability_examples() {
        let report = solve_q(&spec(&[3, 3]), 1, 2, SolveOptions::default()).unwrap();
        let shape = PartitionShape::new(vec![3, 3]).unwrap();
        match stability_distance(&shape, &report, 1e-9) {
            StabilityMatch::Matched { distance, .. } => assert!(distance.abs() < 1e-12),
            StabilityMatch::NoMatch => panic!("expected a match"),
        }
        let shape = PartitionShape::new(vec![4, 2]).unwrap();
        match stability_distance(&shape, &report, 1e-9) {
            StabilityMatch::Matched { distance, .. } => {
                assert!((distance - 1.0 / 3.0).abs() < 1e-12)
            }
            StabilityMatch::NoMatch => panic!("expected a match"),
        }
        let shape = PartitionShape::new(vec![2, 2, 2]).unwrap();
        assert_eq!(
            stability_distance(&shape, &report, 1e-9),
            StabilityMatch::NoMatch
        );
    }
}
