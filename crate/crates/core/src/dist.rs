//! Dense discrete distributions over labelled outcome axes and their Shannon
//! entropies, in bits.

use crate::error::{Error, Result};

/// Largest tolerated negative probability before it is treated as an error.
pub const NEGATIVE_TOL: f64 = 1e-12;
/// Largest tolerated deviation of the total probability from one.
pub const SUM_TOL: f64 = 1e-9;

/// A joint probability table over one or more labelled axes, stored row-major
/// (last axis fastest).
#[derive(Clone, Debug, PartialEq)]
pub struct OutcomeDistribution {
    labels: Vec<String>,
    shape: Vec<usize>,
    probs: Vec<f64>,
}

impl OutcomeDistribution {
    /// Validates and renormalizes `probs`. Entries in `[-1e-12, 0)` are
    /// clamped to zero.
    pub fn new<S: Into<String>>(labels: Vec<S>, shape: Vec<usize>, probs: Vec<f64>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() != shape.len() || shape.is_empty() {
            return Err(Error::InvalidDistribution(format!(
                "{} labels for {} axes",
                labels.len(),
                shape.len()
            )));
        }
        let size: usize = shape.iter().product();
        if size != probs.len() || size == 0 {
            return Err(Error::InvalidDistribution(format!(
                "shape {shape:?} needs {size} entries, got {}",
                probs.len()
            )));
        }
        let probs = normalize(probs)?;
        Ok(Self { labels, shape, probs })
    }

    /// A one-axis distribution.
    pub fn from_probs(label: &str, probs: Vec<f64>) -> Result<Self> {
        let n = probs.len();
        Self::new(vec![label], vec![n], probs)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn rank(&self) -> usize {
        self.shape.len()
    }

    pub fn axis(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Probability at a multi-index.
    pub fn get(&self, index: &[usize]) -> f64 {
        self.probs[self.flat_index(index)]
    }

    fn flat_index(&self, index: &[usize]) -> usize {
        index
            .iter()
            .zip(&self.shape)
            .fold(0, |acc, (&i, &n)| {
                debug_assert!(i < n);
                acc * n + i
            })
    }

    /// Marginal over `axes`, kept in the order given.
    pub fn marginal(&self, axes: &[usize]) -> Result<OutcomeDistribution> {
        for (k, &a) in axes.iter().enumerate() {
            if a >= self.rank() || axes[..k].contains(&a) {
                return Err(Error::InvalidArgument(format!(
                    "bad marginal axes {axes:?} for rank {}",
                    self.rank()
                )));
            }
        }
        if axes.is_empty() {
            return Err(Error::InvalidArgument("empty marginal".into()));
        }
        let shape: Vec<usize> = axes.iter().map(|&a| self.shape[a]).collect();
        let mut out = vec![0.0; shape.iter().product()];
        let mut idx = vec![0usize; self.rank()];
        for &p in &self.probs {
            let flat = axes
                .iter()
                .fold(0, |acc, &a| acc * self.shape[a] + idx[a]);
            out[flat] += p;
            // odometer increment, last axis fastest
            for d in (0..idx.len()).rev() {
                idx[d] += 1;
                if idx[d] < self.shape[d] {
                    break;
                }
                idx[d] = 0;
            }
        }
        Ok(OutcomeDistribution {
            labels: axes.iter().map(|&a| self.labels[a].clone()).collect(),
            shape,
            probs: out,
        })
    }

    /// Joint entropy of all axes.
    pub fn entropy(&self) -> f64 {
        entropy_of_normalized(&self.probs)
    }

    /// H(target | given) = H(target, given) − H(given).
    pub fn conditional_entropy(&self, target: &[usize], given: &[usize]) -> Result<f64> {
        if given.is_empty() {
            return Ok(self.marginal(target)?.entropy());
        }
        let both: Vec<usize> = target.iter().chain(given).copied().collect();
        let h_joint = self.marginal(&both)?.entropy();
        let h_given = self.marginal(given)?.entropy();
        Ok(h_joint - h_given)
    }

    /// I(a : b) = H(a) − H(a | b).
    pub fn mutual_information(&self, a: &[usize], b: &[usize]) -> Result<f64> {
        Ok(self.marginal(a)?.entropy() - self.conditional_entropy(a, b)?)
    }
}

fn normalize(mut probs: Vec<f64>) -> Result<Vec<f64>> {
    for &p in &probs {
        if !p.is_finite() || p < -NEGATIVE_TOL {
            return Err(Error::InvalidDistribution(format!("probability {p}")));
        }
    }
    probs.iter_mut().for_each(|p| *p = p.max(0.0));
    let total: f64 = probs.iter().sum();
    if (total - 1.0).abs() > SUM_TOL {
        return Err(Error::InvalidDistribution(format!(
            "probabilities sum to {total}"
        )));
    }
    probs.iter_mut().for_each(|p| *p /= total);
    Ok(probs)
}

fn entropy_of_normalized(probs: &[f64]) -> f64 {
    -probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| p * p.log2())
        .sum::<f64>()
}

/// Shannon entropy in bits, `0·log 0 ≡ 0`.
pub fn shannon_entropy(dist: &OutcomeDistribution) -> f64 {
    dist.entropy()
}

/// Shannon entropy of a raw probability vector, validated and renormalized.
pub fn entropy_bits(probs: &[f64]) -> Result<f64> {
    Ok(entropy_of_normalized(&normalize(probs.to_vec())?))
}

/// H(A|B) for a two-axis joint distribution over (A, B).
pub fn conditional_entropy(joint: &OutcomeDistribution) -> Result<f64> {
    if joint.rank() != 2 {
        return Err(Error::InvalidArgument(format!(
            "expected a joint distribution over pairs, got rank {}",
            joint.rank()
        )));
    }
    joint.conditional_entropy(&[0], &[1])
}

/// h₂(p) = −p log₂ p − (1−p) log₂(1−p).
pub fn binary_entropy(p: f64) -> f64 {
    entropy_of_normalized(&[p, 1.0 - p])
}
