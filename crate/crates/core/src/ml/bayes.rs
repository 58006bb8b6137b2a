//! Naive Bayes with Gaussian class conditionals.
//!
//! The attributes here are continuous, so the per-class likelihood of each
//! attribute is modeled as a Gaussian fitted on the training fold
//! (population moments, variance floored to keep the density finite), and
//! the predicted class maximizes log prior plus summed log likelihoods
//! under the independence assumption.

use alloc::vec::Vec;

use super::{LabeledDataset, MlError};
use crate::math;

const LN_2PI: f64 = 1.8378770664093453;

#[derive(Debug, Clone)]
pub struct GaussianNb {
    log_priors: Vec<f64>,
    /// `means[class][attribute]`, likewise for variances.
    means: Vec<Vec<f64>>,
    variances: Vec<Vec<f64>>,
}

impl GaussianNb {
    /// Fits per-class priors and per-attribute Gaussians. Every class needs
    /// at least 2 training examples for a variance to exist.
    pub fn fit(train: &LabeledDataset, variance_floor: f64) -> Result<Self, MlError> {
        let n_classes = train.n_classes();
        let dim = train.dim();
        let mut counts = alloc::vec![0usize; n_classes];
        for i in 0..train.len() {
            counts[train.label(i)] += 1;
        }
        for (class, &count) in counts.iter().enumerate() {
            if count < 2 {
                return Err(MlError::ClassTooSmall { class, count });
            }
        }

        let mut means = alloc::vec![alloc::vec![0.0; dim]; n_classes];
        for i in 0..train.len() {
            let c = train.label(i);
            for (m, v) in means[c].iter_mut().zip(train.row(i)) {
                *m += v;
            }
        }
        for (c, mean) in means.iter_mut().enumerate() {
            for m in mean.iter_mut() {
                *m /= counts[c] as f64;
            }
        }

        let mut variances = alloc::vec![alloc::vec![0.0; dim]; n_classes];
        for i in 0..train.len() {
            let c = train.label(i);
            for a in 0..dim {
                let d = train.row(i)[a] - means[c][a];
                variances[c][a] += d * d;
            }
        }
        for (c, var) in variances.iter_mut().enumerate() {
            for v in var.iter_mut() {
                *v = (*v / counts[c] as f64).max(variance_floor);
            }
        }

        let total = train.len() as f64;
        let log_priors =
            counts.iter().map(|&c| math::ln(c as f64 / total)).collect();
        Ok(Self { log_priors, means, variances })
    }

    /// Log of prior times likelihood product, one entry per class.
    pub fn log_posteriors(&self, x: &[f64]) -> Vec<f64> {
        self.log_priors
            .iter()
            .enumerate()
            .map(|(c, &lp)| {
                let mut score = lp;
                for (a, &v) in x.iter().enumerate() {
                    let var = self.variances[c][a];
                    let d = v - self.means[c][a];
                    score += -0.5 * (LN_2PI + math::ln(var)) - d * d / (2.0 * var);
                }
                score
            })
            .collect()
    }

    /// Argmax class; ties go to the smallest class id.
    pub fn predict(&self, x: &[f64]) -> usize {
        let scores = self.log_posteriors(x);
        let mut best = 0;
        for (c, &s) in scores.iter().enumerate().skip(1) {
            if s > scores[best] {
                best = c;
            }
        }
        best
    }
}
