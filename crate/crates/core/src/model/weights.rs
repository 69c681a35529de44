use crate::error::{Error, Result};

/// Simplex membership tolerance for the entry sum.
pub const SIMPLEX_TOL: f64 = 1e-12;
/// Sums off by at most this much are renormalised instead of rejected.
pub const RENORMALISE_TOL: f64 = 1e-9;

/// A point of the probability simplex: non-negative part weights summing to 1.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightVector {
    entries: Vec<f64>,
}

impl WeightVector {
    pub fn new(mut entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Structural("weight vector is empty".into()));
        }
        for &x in &entries {
            if !x.is_finite() || x < -SIMPLEX_TOL {
                return Err(Error::Structural(format!(
                    "weight {x} is not a non-negative real"
                )));
            }
        }
        for x in entries.iter_mut() {
            *x = x.max(0.0);
        }
        let sum: f64 = entries.iter().sum();
        let dev = (sum - 1.0).abs();
        if dev > RENORMALISE_TOL {
            return Err(Error::Structural(format!("weights sum to {sum}, not 1")));
        }
        if dev > SIMPLEX_TOL {
            for x in entries.iter_mut() {
                *x /= sum;
            }
        }
        Ok(WeightVector { entries })
    }

    pub fn uniform(r: usize) -> Result<Self> {
        Self::new(vec![1.0 / r as f64; r])
    }

    pub fn r(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn l1_distance(&self, other: &WeightVector) -> Result<f64> {
        if self.r() != other.r() {
            return Err(Error::Structural(
                "weight vectors of different length".into(),
            ));
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).abs())
            .sum())
    }

    /// A line of whitespace- or comma-separated decimals.
    pub fn parse(text: &str) -> Result<Self> {
        let entries = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<f64>()
                    .map_err(|_| Error::parse(1, format!("bad weight {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renormalises_small_drift_and_rejects_large() {
        let w = WeightVector::new(vec![0.5, 0.5 + 5e-10]).unwrap();
        assert!((w.entries().iter().sum::<f64>() - 1.0).abs() <= SIMPLEX_TOL);
        assert!(WeightVector::new(vec![0.5, 0.6]).is_err());
        assert!(WeightVector::new(vec![1.5, -0.5]).is_err());
        assert!(WeightVector::new(vec![]).is_err());
    }

    #[test]
    fn parse_line() {
        let w = WeightVector::parse("0.25 0.25, 0.5").unwrap();
        assert_eq!(w.entries(), &[0.25, 0.25, 0.5]);
    }
}
