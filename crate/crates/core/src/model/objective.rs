//! Closed-form evaluations on pattern functions and weight vectors.

use super::{BigCount, ColourSpec, PartitionShape, PatternFunction, WeightVector};
use crate::error::{Error, Result};
use crate::graph::{contains_clique, SimpleGraph};
use crate::ramsey::ramsey_limit;

/// `log2 |L|` for a list of size `|L|`; empty and singleton lists weigh 0.
#[inline]
pub fn list_weight(size: usize) -> f64 {
    if size <= 1 {
        0.0
    } else {
        (size as f64).log2()
    }
}

fn check_dims(phi: &PatternFunction, alpha: &WeightVector) -> Result<()> {
    if phi.r() != alpha.r() {
        return Err(Error::Structural(format!(
            "pattern has {} parts but weight vector has {}",
            phi.r(),
            alpha.r()
        )));
    }
    Ok(())
}

/// `q = 2 * sum_{i<j} alpha_i alpha_j log2 |lists(ij)|`, in bits.
pub fn evaluate_q(phi: &PatternFunction, alpha: &WeightVector) -> Result<f64> {
    check_dims(phi, alpha)?;
    let a = alpha.entries();
    Ok(2.0
        * phi
            .pairs()
            .map(|(i, j)| a[i] * a[j] * list_weight(phi.list_size(i, j)))
            .sum::<f64>())
}

/// `d[l-1] = 2 * sum of alpha_i alpha_j over pairs whose list has size l`.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityProfile {
    pub d: Vec<f64>,
}

impl DensityProfile {
    /// `d_size`; zero for sizes outside `1..=s`.
    pub fn get(&self, size: usize) -> f64 {
        size.checked_sub(1)
            .and_then(|i| self.d.get(i))
            .copied()
            .unwrap_or(0.0)
    }

    /// `sum_l d_l log2 l`, which equals q.
    pub fn q(&self) -> f64 {
        self.d
            .iter()
            .enumerate()
            .map(|(i, d)| d * list_weight(i + 1))
            .sum()
    }

    /// `sum_l l * d_l`.
    pub fn first_moment(&self) -> f64 {
        self.d
            .iter()
            .enumerate()
            .map(|(i, d)| (i + 1) as f64 * d)
            .sum()
    }
}

pub fn density_profile(phi: &PatternFunction, alpha: &WeightVector) -> Result<DensityProfile> {
    check_dims(phi, alpha)?;
    let a = alpha.entries();
    let mut d = vec![0.0; phi.s()];
    for (i, j) in phi.pairs() {
        let size = phi.list_size(i, j);
        if size > 0 {
            d[size - 1] += 2.0 * a[i] * a[j];
        }
    }
    Ok(DensityProfile { d })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Feasibility {
    /// The class of `colour` contains a clique of order `k_colour`.
    Infeasible { colour: usize },
    /// Largest `t` in `{0,1,2}` with every list of size at least `t`.
    Level(u8),
}

impl Feasibility {
    pub fn level(self) -> Option<u8> {
        match self {
            Feasibility::Level(t) => Some(t),
            Feasibility::Infeasible { .. } => None,
        }
    }
}

pub fn feasibility_level(phi: &PatternFunction, spec: &ColourSpec) -> Result<Feasibility> {
    if phi.s() != spec.s() {
        return Err(Error::Structural(format!(
            "pattern uses {} colours, spec has {}",
            phi.s(),
            spec.s()
        )));
    }
    let all = if phi.r() == 64 {
        u64::MAX
    } else {
        (1u64 << phi.r()) - 1
    };
    for c in 0..spec.s() {
        if contains_clique(&phi.class_for(c), all, spec.k_of(c)) {
            return Ok(Feasibility::Infeasible { colour: c });
        }
    }
    let t = phi.min_list_size().map_or(2, |m| m.min(2)) as u8;
    Ok(Feasibility::Level(t))
}

/// A checked feasible triple `(r, phi, alpha)` at level `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct FeasibleTriple {
    phi: PatternFunction,
    alpha: WeightVector,
    level: u8,
}

impl FeasibleTriple {
    pub fn new(
        phi: PatternFunction,
        alpha: WeightVector,
        spec: &ColourSpec,
        level: u8,
    ) -> Result<Self> {
        if level > 2 {
            return Err(Error::Structural(format!(
                "level must be 0, 1 or 2, got {level}"
            )));
        }
        check_dims(&phi, &alpha)?;
        match feasibility_level(&phi, spec)? {
            Feasibility::Infeasible { colour } => {
                return Err(Error::Precondition(format!(
                    "colour {} class contains K_{}",
                    colour + 1,
                    spec.k_of(colour)
                )))
            }
            Feasibility::Level(t) if t < level => {
                return Err(Error::Precondition(format!(
                    "some list has fewer than {level} colours"
                )))
            }
            Feasibility::Level(_) => {}
        }
        let limit = ramsey_limit(spec);
        if phi.r() >= limit.value {
            return Err(Error::Precondition(format!(
                "r = {} is not below the Ramsey limit {}",
                phi.r(),
                limit.value
            )));
        }
        Ok(FeasibleTriple { phi, alpha, level })
    }

    pub fn r(&self) -> usize {
        self.phi.r()
    }

    pub fn phi(&self) -> &PatternFunction {
        &self.phi
    }

    pub fn alpha(&self) -> &WeightVector {
        &self.alpha
    }

    pub fn level(&self) -> u8 {
        self.level
    }

    pub fn q(&self) -> f64 {
        evaluate_q(&self.phi, &self.alpha).expect("dimensions checked")
    }

    pub fn density_profile(&self) -> DensityProfile {
        density_profile(&self.phi, &self.alpha).expect("dimensions checked")
    }
}

/// Edge count of the Turán graph with `parts` balanced parts on `n` vertices.
pub fn turan_count(parts: usize, n: usize) -> u64 {
    assert!(parts >= 1, "Turán graph needs at least one part");
    let (q, rem) = (n / parts, n % parts);
    let n = n as u64;
    let sq = (rem as u64) * ((q + 1) as u64).pow(2) + ((parts - rem) as u64) * (q as u64).pow(2);
    (n * n - sq) / 2
}

/// Largest-remainder rounding of `alpha * n`; ties go to the lower index.
pub fn apportion(alpha: &WeightVector, n: usize) -> Vec<usize> {
    let exact: Vec<f64> = alpha.entries().iter().map(|a| a * n as f64).collect();
    let mut sizes: Vec<usize> = exact.iter().map(|x| (x + 1e-12).floor() as usize).collect();
    let assigned: usize = sizes.iter().sum();
    let mut order: Vec<usize> = (0..exact.len()).collect();
    let frac = |i: usize| exact[i] - sizes[i] as f64;
    order.sort_by(|&a, &b| {
        let (fa, fb) = (frac(a), frac(b));
        if (fa - fb).abs() <= 1e-12 {
            a.cmp(&b)
        } else {
            fb.partial_cmp(&fa).expect("finite")
        }
    });
    let extra = n.saturating_sub(assigned);
    for &i in order.iter().take(extra) {
        sizes[i] += 1;
    }
    sizes
}

/// The blow-up `G_{phi,alpha}(n)` of a pattern.
#[derive(Clone, Debug)]
pub struct Construction {
    /// One size per pattern part, zeros included.
    pub part_sizes: Vec<usize>,
    /// Non-empty part sizes in canonical order.
    pub shape: PartitionShape,
    /// Pattern parts that received no vertices.
    pub dropped_parts: Vec<usize>,
    /// Vertices of part `i` are a contiguous block, parts in pattern order.
    pub graph: SimpleGraph,
}

pub fn build_construction_graph(
    phi: &PatternFunction,
    alpha: &WeightVector,
    n: usize,
) -> Result<Construction> {
    check_dims(phi, alpha)?;
    if n == 0 {
        return Err(Error::Precondition("construction needs n >= 1".into()));
    }
    let part_sizes = apportion(alpha, n);
    let mut graph = SimpleGraph::empty(n)?;
    let mut start = Vec::with_capacity(phi.r());
    let mut acc = 0;
    for &p in &part_sizes {
        start.push(acc);
        acc += p;
    }
    for (i, j) in phi.pairs() {
        if phi.list(i, j) == 0 {
            continue;
        }
        for x in start[i]..start[i] + part_sizes[i] {
            for y in start[j]..start[j] + part_sizes[j] {
                graph.add_edge(x, y);
            }
        }
    }
    let dropped_parts = (0..phi.r()).filter(|&i| part_sizes[i] == 0).collect();
    let shape = PartitionShape::new(part_sizes.iter().copied().filter(|&p| p > 0).collect())?;
    Ok(Construction {
        part_sizes,
        shape,
        dropped_parts,
        graph,
    })
}

/// `prod |lists(ij)|^{|X_i||X_j|}` over pairs with non-empty lists.
pub fn product_lower_bound(phi: &PatternFunction, part_sizes: &[usize]) -> Result<BigCount> {
    if part_sizes.len() != phi.r() {
        return Err(Error::Structural(format!(
            "{} part sizes for a pattern on {} parts",
            part_sizes.len(),
            phi.r()
        )));
    }
    let mut exps = vec![0usize; phi.s() + 1];
    for (i, j) in phi.pairs() {
        exps[phi.list_size(i, j)] += part_sizes[i] * part_sizes[j];
    }
    let mut out = BigCount::from_u64(1);
    for (size, &e) in exps.iter().enumerate().skip(2) {
        if e > 0 {
            out = &out * &BigCount::pow(size as u64, e);
        }
    }
    Ok(out)
}

/// Rounding constant `C` with `log2 product_lower_bound >= q*C(n,2) - C*n` for
/// every construction from `(phi, alpha)`: each pair loses at most
/// `(alpha_i + alpha_j) n log2|L|` bits, and those sum to at most `(r-1) log2 s`.
pub fn rounding_constant(phi: &PatternFunction) -> f64 {
    (phi.r().saturating_sub(1)) as f64 * (phi.s() as f64).log2()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(k: &[usize]) -> ColourSpec {
        ColourSpec::new(k.to_vec()).unwrap()
    }

    #[test]
    fn q_examples() {
        let phi = PatternFunction::constant(2, 2, 0b11).unwrap();
        let half = WeightVector::uniform(2).unwrap();
        assert_eq!(evaluate_q(&phi, &half).unwrap(), 0.5);

        let empty = PatternFunction::empty(3, 2).unwrap();
        let a = WeightVector::new(vec![0.2, 0.3, 0.5]).unwrap();
        assert_eq!(evaluate_q(&empty, &a).unwrap(), 0.0);

        assert!(evaluate_q(&phi, &a).is_err());
    }

    #[test]
    fn density_examples() {
        // sizes (2,2,1) on pairs 12, 13, 23
        let phi = PatternFunction::from_lists(3, 2, vec![0b11, 0b11, 0b01]).unwrap();
        let u = WeightVector::uniform(3).unwrap();
        let d = density_profile(&phi, &u).unwrap();
        assert!((d.get(1) - 2.0 / 9.0).abs() < 1e-15);
        assert!((d.get(2) - 4.0 / 9.0).abs() < 1e-15);

        let phi = PatternFunction::constant(2, 2, 0b11).unwrap();
        let d = density_profile(&phi, &WeightVector::uniform(2).unwrap()).unwrap();
        assert_eq!(d.d, vec![0.0, 0.5]);
    }

    #[test]
    fn feasibility_examples() {
        let ones = PatternFunction::constant(3, 2, 0b01).unwrap();
        assert_eq!(
            feasibility_level(&ones, &spec(&[3, 3])).unwrap(),
            Feasibility::Infeasible { colour: 0 }
        );
        let both = PatternFunction::constant(2, 2, 0b11).unwrap();
        assert_eq!(
            feasibility_level(&both, &spec(&[3, 3])).unwrap(),
            Feasibility::Level(2)
        );
        assert_eq!(
            feasibility_level(&ones, &spec(&[4, 3])).unwrap(),
            Feasibility::Level(1)
        );
        let with_empty = PatternFunction::from_lists(2, 2, vec![0]).unwrap();
        assert_eq!(
            feasibility_level(&with_empty, &spec(&[3, 3])).unwrap(),
            Feasibility::Level(0)
        );
        let three = PatternFunction::constant(2, 3, 0b111).unwrap();
        assert_eq!(
            feasibility_level(&three, &spec(&[3, 3, 3])).unwrap(),
            Feasibility::Level(2)
        );
        assert!(feasibility_level(&three, &spec(&[3, 3])).is_err());
    }

    #[test]
    fn triple_checks() {
        let s = spec(&[3, 3]);
        let ok = FeasibleTriple::new(
            PatternFunction::constant(2, 2, 0b11).unwrap(),
            WeightVector::uniform(2).unwrap(),
            &s,
            2,
        )
        .unwrap();
        assert_eq!(ok.q(), 0.5);
        assert!(FeasibleTriple::new(
            PatternFunction::constant(2, 2, 0b01).unwrap(),
            WeightVector::uniform(2).unwrap(),
            &s,
            2,
        )
        .is_err());
        // r = 6 is not below R(3,3) = 6
        assert!(FeasibleTriple::new(
            PatternFunction::empty(6, 2).unwrap(),
            WeightVector::uniform(6).unwrap(),
            &s,
            0,
        )
        .is_err());
    }

    #[test]
    fn turan_examples() {
        assert_eq!(turan_count(2, 6), 9);
        assert_eq!(turan_count(3, 9), 27);
        assert_eq!(turan_count(1, 10), 0);
        assert_eq!(turan_count(2, 7), 12);
        assert_eq!(turan_count(4, 0), 0);
    }

    #[test]
    fn construction_examples() {
        let phi = PatternFunction::constant(2, 2, 0b11).unwrap();
        let half = WeightVector::uniform(2).unwrap();
        let c = build_construction_graph(&phi, &half, 6).unwrap();
        assert_eq!(c.shape.parts(), &[3, 3]);
        assert_eq!(
            c.graph,
            SimpleGraph::complete_multipartite(&[3, 3]).unwrap()
        );

        let c = build_construction_graph(&phi, &half, 5).unwrap();
        assert_eq!(c.part_sizes, vec![3, 2]);

        let phi3 = PatternFunction::constant(3, 2, 0b11).unwrap();
        let a = WeightVector::new(vec![0.5, 0.5, 0.0]).unwrap();
        let c = build_construction_graph(&phi3, &a, 4).unwrap();
        assert_eq!(c.part_sizes, vec![2, 2, 0]);
        assert_eq!(c.shape.parts(), &[2, 2]);
        assert_eq!(c.dropped_parts, vec![2]);
    }

    #[test]
    fn construction_leaves_empty_list_pairs_unjoined() {
        let phi = PatternFunction::from_lists(3, 2, vec![0b11, 0, 0b01]).unwrap();
        let c = build_construction_graph(&phi, &WeightVector::uniform(3).unwrap(), 3).unwrap();
        assert_eq!(c.graph.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn product_bound_examples() {
        let phi = PatternFunction::constant(2, 2, 0b11).unwrap();
        assert_eq!(
            product_lower_bound(&phi, &[3, 3]).unwrap(),
            BigCount::from_u64(512)
        );
        let singles = PatternFunction::from_lists(3, 2, vec![0b01, 0b10, 0]).unwrap();
        assert_eq!(
            product_lower_bound(&singles, &[4, 5, 6]).unwrap(),
            BigCount::from_u64(1)
        );
        assert!(product_lower_bound(&phi, &[3]).is_err());
    }
}
