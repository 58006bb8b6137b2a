//! Soft-margin linear support vector machines trained by sequential minimal
//! optimization, combined one-vs-one for multiclass problems.
//!
//! The kernel is linear, so the weight vector is maintained incrementally
//! and the dual objective collapses to sum(alpha) - |w|^2 / 2, which makes
//! per-sweep objective tracking cheap. Pair selection is deterministic:
//! the first multiplier comes from an ordered KKT scan, the second
//! maximizes |E_i - E_j| with index order breaking ties, falling back to an
//! ordered scan when that step makes no progress.

use alloc::vec;
use alloc::vec::Vec;

use super::MlError;

#[derive(Debug, Clone)]
pub struct BinarySvm {
    pub weights: Vec<f64>,
    pub bias: f64,
    pub alphas: Vec<f64>,
    /// Dual objective after each optimization sweep.
    pub dual_objective_trace: Vec<f64>,
    pub passes: usize,
}

impl BinarySvm {
    pub fn decision(&self, x: &[f64]) -> f64 {
        dot(&self.weights, x) + self.bias
    }

    pub fn dual_objective(&self) -> f64 {
        self.alphas.iter().sum::<f64>() - 0.5 * dot(&self.weights, &self.weights)
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

struct Smo<'a> {
    rows: &'a [Vec<f64>],
    labels: &'a [f64],
    c: f64,
    tolerance: f64,
    alphas: Vec<f64>,
    weights: Vec<f64>,
    bias: f64,
}

impl<'a> Smo<'a> {
    fn error(&self, i: usize) -> f64 {
        dot(&self.weights, &self.rows[i]) + self.bias - self.labels[i]
    }

    fn kkt_violated(&self, i: usize) -> bool {
        let r = self.error(i) * self.labels[i];
        (r < -self.tolerance && self.alphas[i] < self.c)
            || (r > self.tolerance && self.alphas[i] > 0.0)
    }

    /// Joint optimization of multipliers i and j. Returns true on progress.
    fn take_step(&mut self, i: usize, j: usize) -> bool {
        if i == j {
            return false;
        }
        let (yi, yj) = (self.labels[i], self.labels[j]);
        let (ai_old, aj_old) = (self.alphas[i], self.alphas[j]);
        let ei = self.error(i);
        let ej = self.error(j);

        let (lo, hi) = if yi != yj {
            ((aj_old - ai_old).max(0.0), (self.c + aj_old - ai_old).min(self.c))
        } else {
            ((ai_old + aj_old - self.c).max(0.0), (ai_old + aj_old).min(self.c))
        };
        if lo >= hi {
            return false;
        }

        let kii = dot(&self.rows[i], &self.rows[i]);
        let kjj = dot(&self.rows[j], &self.rows[j]);
        let kij = dot(&self.rows[i], &self.rows[j]);
        let eta = 2.0 * kij - kii - kjj;

        let aj_new = if eta < 0.0 {
            (aj_old - yj * (ei - ej) / eta).clamp(lo, hi)
        } else {
            // Degenerate curvature (duplicate or collinear points): the dual
            // is linear along the constraint line, so evaluate it exactly at
            // both clip ends and keep the strictly better one.
            let obj_at = |aj_cand: f64| -> f64 {
                let ai_cand = ai_old + yi * yj * (aj_old - aj_cand);
                let mut w = self.weights.clone();
                for ((wk, xi), xj) in w.iter_mut().zip(&self.rows[i]).zip(&self.rows[j]) {
                    *wk += yi * (ai_cand - ai_old) * xi + yj * (aj_cand - aj_old) * xj;
                }
                let alpha_sum = self.alphas.iter().sum::<f64>() - ai_old - aj_old
                    + ai_cand
                    + aj_cand;
                alpha_sum - 0.5 * dot(&w, &w)
            };
            let obj_lo = obj_at(lo);
            let obj_hi = obj_at(hi);
            if obj_lo > obj_hi + 1e-12 {
                lo
            } else if obj_hi > obj_lo + 1e-12 {
                hi
            } else {
                return false;
            }
        };

        // Platt's minimum-progress guard; finer steps stall termination
        // without measurably improving the dual.
        if (aj_new - aj_old).abs() < 1e-3 * (aj_new + aj_old + 1e-3) {
            return false;
        }
        let snap = |a: f64| {
            if a < 1e-10 {
                0.0
            } else if a > self.c - 1e-10 {
                self.c
            } else {
                a
            }
        };
        let aj_new = snap(aj_new);
        let ai_new = snap(ai_old + yi * yj * (aj_old - aj_new));

        // Incremental weight update keeps error evaluation O(dim).
        for ((w, xi), xj) in self.weights.iter_mut().zip(&self.rows[i]).zip(&self.rows[j]) {
            *w += yi * (ai_new - ai_old) * xi + yj * (aj_new - aj_old) * xj;
        }
        let b1 = self.bias - ei - yi * (ai_new - ai_old) * kii - yj * (aj_new - aj_old) * kij;
        let b2 = self.bias - ej - yi * (ai_new - ai_old) * kij - yj * (aj_new - aj_old) * kjj;
        self.bias = if ai_new > 0.0 && ai_new < self.c {
            b1
        } else if aj_new > 0.0 && aj_new < self.c {
            b2
        } else {
            (b1 + b2) / 2.0
        };

        self.alphas[i] = ai_new;
        self.alphas[j] = aj_new;
        true
    }

    fn examine(&mut self, i: usize) -> bool {
        if !self.kkt_violated(i) {
            return false;
        }
        // Second-choice heuristic, made exhaustive: candidates in
        // descending |E_i - E_j| order until one makes progress. The best
        // gap alone is not enough; a same-class partner at its bound can
        // have a huge gap yet no feasible step.
        let ei = self.error(i);
        let mut candidates: Vec<(f64, usize)> = (0..self.rows.len())
            .filter(|&j| j != i)
            .map(|j| ((ei - self.error(j)).abs(), j))
            .collect();
        candidates.sort_unstable_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
        for (_, j) in candidates {
            if self.take_step(i, j) {
                return true;
            }
        }
        false
    }
}

/// Trains a binary soft-margin linear SVM on labels in {-1, +1}. Optimizes
/// the dual with SMO until a full pass leaves every multiplier at the KKT
/// conditions within `tolerance`; errors out after `max_passes` sweeps.
pub fn smo_train(
    rows: &[Vec<f64>],
    labels: &[f64],
    c: f64,
    tolerance: f64,
    max_passes: usize,
) -> Result<BinarySvm, MlError> {
    if rows.is_empty() {
        return Err(MlError::EmptyTrainingSet);
    }
    debug_assert!(labels.iter().all(|y| *y == 1.0 || *y == -1.0));
    let dim = rows[0].len();
    let mut smo = Smo {
        rows,
        labels,
        c,
        tolerance,
        alphas: vec![0.0; rows.len()],
        weights: vec![0.0; dim],
        bias: 0.0,
    };

    let mut trace = Vec::new();
    let mut examine_all = true;
    let mut passes = 0usize;
    loop {
        if passes >= max_passes {
            return Err(MlError::NonConvergence { class_a: 0, class_b: 0, passes });
        }
        passes += 1;
        let mut changed = 0usize;
        for i in 0..rows.len() {
            let bound = smo.alphas[i] <= 0.0 || smo.alphas[i] >= smo.c;
            if examine_all || !bound {
                if smo.examine(i) {
                    changed += 1;
                }
            }
        }
        trace.push(smo.alphas.iter().sum::<f64>() - 0.5 * dot(&smo.weights, &smo.weights));

        if examine_all {
            if changed == 0 {
                break;
            }
            examine_all = false;
        } else if changed == 0 {
            examine_all = true;
        }
    }

    Ok(BinarySvm {
        weights: smo.weights,
        bias: smo.bias,
        alphas: smo.alphas,
        dual_objective_trace: trace,
        passes,
    })
}

#[derive(Debug, Clone)]
struct PairSvm {
    class_pos: usize,
    class_neg: usize,
    svm: BinarySvm,
}

/// One-vs-one multiclass wrapper: one binary machine per unordered class
/// pair, prediction by pairwise vote with ties going to the smallest id.
#[derive(Debug, Clone)]
pub struct SvmModel {
    n_classes: usize,
    pairs: Vec<PairSvm>,
}

impl SvmModel {
    pub fn fit(
        train: &super::LabeledDataset,
        c: f64,
        tolerance: f64,
        max_passes: usize,
    ) -> Result<Self, MlError> {
        let n_classes = train.n_classes();
        let mut pairs = Vec::with_capacity(n_classes * (n_classes - 1) / 2);
        for a in 0..n_classes {
            for b in (a + 1)..n_classes {
                let mut rows = Vec::new();
                let mut labels = Vec::new();
                for i in 0..train.len() {
                    if train.label(i) == a {
                        rows.push(train.row(i).to_vec());
                        labels.push(1.0);
                    } else if train.label(i) == b {
                        rows.push(train.row(i).to_vec());
                        labels.push(-1.0);
                    }
                }
                for (class, sign) in [(a, 1.0), (b, -1.0)] {
                    if !labels.contains(&sign) {
                        return Err(MlError::ClassTooSmall { class, count: 0 });
                    }
                }
                let svm = smo_train(&rows, &labels, c, tolerance, max_passes).map_err(|e| {
                    match e {
                        MlError::NonConvergence { passes, .. } => {
                            MlError::NonConvergence { class_a: a, class_b: b, passes }
                        }
                        other => other,
                    }
                })?;
                pairs.push(PairSvm { class_pos: a, class_neg: b, svm });
            }
        }
        Ok(Self { n_classes, pairs })
    }

    pub fn predict(&self, x: &[f64]) -> usize {
        let mut votes = vec![0usize; self.n_classes];
        for pair in &self.pairs {
            let winner = if pair.svm.decision(x) >= 0.0 { pair.class_pos } else { pair.class_neg };
            votes[winner] += 1;
        }
        let top = *votes.iter().max().expect("at least two classes");
        votes.iter().position(|&v| v == top).expect("winner exists")
    }

    pub fn pair_machines(&self) -> impl Iterator<Item = (usize, usize, &BinarySvm)> {
        self.pairs.iter().map(|p| (p.class_pos, p.class_neg, p.svm_ref()))
    }
}

impl PairSvm {
    fn svm_ref(&self) -> &BinarySvm {
        &self.svm
    }
}
