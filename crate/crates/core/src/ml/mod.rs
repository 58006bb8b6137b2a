//! Supervised authorship classification over feature vectors: four
//! classifiers trained from scratch, stratified 10-fold cross-validation,
//! PCA projection, and a binomial significance test.
//!
//! Class ids are dense `0..n_classes` integers (callers map author names to
//! ids in sorted order, so "smallest class id" tie-breaks are stable).
//! Every random choice flows from an explicit seed; reports are bit-identical
//! across runs and worker counts.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::math;
use crate::rng::SplitMix64;
use crate::sampling::WindowSpec;

mod bayes;
mod knn;
mod pca;
mod svm;
mod tree;

pub use bayes::GaussianNb;
pub use knn::knn_classify;
pub use pca::{pca_project, PcaProjection};
pub use svm::{smo_train, BinarySvm, SvmModel};
pub use tree::{info_gain, DecisionTree};

#[derive(Debug, Clone, PartialEq)]
pub enum MlError {
    EmptyTrainingSet,
    TooFewClasses { n_classes: usize },
    BadLabel { label: usize, n_classes: usize },
    DimensionMismatch { expected: usize, got: usize },
    NonFiniteAttribute { row: usize, attribute: usize },
    BadNeighborCount { k: usize, train: usize },
    ClassTooSmall { class: usize, count: usize },
    /// SMO failed to reach the KKT tolerance for one class pair.
    NonConvergence { class_a: usize, class_b: usize, passes: usize },
    BadFoldCount { folds: usize },
    TooFewExamples { len: usize, folds: usize },
    TooFewGroups { groups: usize, folds: usize },
    TooFewRows { rows: usize, dims: usize },
}

impl fmt::Display for MlError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::EmptyTrainingSet => write!(f, "empty training set"),
            Self::TooFewClasses { n_classes } => {
                write!(f, "need at least 2 classes, got {n_classes}")
            }
            Self::BadLabel { label, n_classes } => {
                write!(f, "label {label} out of range for {n_classes} classes")
            }
            Self::DimensionMismatch { expected, got } => {
                write!(f, "expected {expected} attributes, got {got}")
            }
            Self::NonFiniteAttribute { row, attribute } => {
                write!(f, "non-finite attribute {attribute} in row {row}")
            }
            Self::BadNeighborCount { k, train } => {
                write!(f, "neighbor count {k} invalid for {train} training examples")
            }
            Self::ClassTooSmall { class, count } => {
                write!(f, "class {class} has {count} training examples, need >= 2")
            }
            Self::NonConvergence { class_a, class_b, passes } => {
                write!(f, "SVM pair ({class_a}, {class_b}) did not converge in {passes} passes")
            }
            Self::BadFoldCount { folds } => write!(f, "fold count {folds} must be >= 2"),
            Self::TooFewExamples { len, folds } => {
                write!(f, "{len} examples cannot fill {folds} folds")
            }
            Self::TooFewGroups { groups, folds } => {
                write!(f, "{groups} groups cannot fill {folds} folds")
            }
            Self::TooFewRows { rows, dims } => {
                write!(f, "PCA needs more than {dims} rows, got {rows}")
            }
        }
    }
}

impl core::error::Error for MlError {}

/// Feature rows with class labels and an optional grouping key (the source
/// book) used for leakage-free grouped folds.
#[derive(Debug, Clone)]
pub struct LabeledDataset {
    dim: usize,
    rows: Vec<Vec<f64>>,
    labels: Vec<usize>,
    groups: Vec<usize>,
    n_classes: usize,
}

impl LabeledDataset {
    pub fn new(
        rows: Vec<Vec<f64>>,
        labels: Vec<usize>,
        n_classes: usize,
    ) -> Result<Self, MlError> {
        let groups = (0..rows.len()).collect();
        Self::with_groups(rows, labels, groups, n_classes)
    }

    pub fn with_groups(
        rows: Vec<Vec<f64>>,
        labels: Vec<usize>,
        groups: Vec<usize>,
        n_classes: usize,
    ) -> Result<Self, MlError> {
        if rows.is_empty() {
            return Err(MlError::EmptyTrainingSet);
        }
        if n_classes < 2 {
            return Err(MlError::TooFewClasses { n_classes });
        }
        assert_eq!(rows.len(), labels.len());
        assert_eq!(rows.len(), groups.len());
        let dim = rows[0].len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(MlError::DimensionMismatch { expected: dim, got: row.len() });
            }
            for (a, v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(MlError::NonFiniteAttribute { row: i, attribute: a });
                }
            }
        }
        for &label in &labels {
            if label >= n_classes {
                return Err(MlError::BadLabel { label, n_classes });
            }
        }
        Ok(Self { dim, rows, labels, groups, n_classes })
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_classes(&self) -> usize {
        self.n_classes
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn label(&self, i: usize) -> usize {
        self.labels[i]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn group(&self, i: usize) -> usize {
        self.groups[i]
    }

    pub fn subset(&self, indices: &[usize]) -> Self {
        Self {
            dim: self.dim,
            rows: indices.iter().map(|&i| self.rows[i].clone()).collect(),
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
            groups: indices.iter().map(|&i| self.groups[i]).collect(),
            n_classes: self.n_classes,
        }
    }

    /// Same rows with labels shuffled by `seed`: the chance-level audit.
    pub fn permute_labels(&self, seed: u64) -> Self {
        let mut labels = self.labels.clone();
        SplitMix64::new(seed).shuffle(&mut labels);
        Self { labels, ..self.clone() }
    }
}

/// Z-score transform fitted on training data only. Constant attributes are
/// passed through unscaled and flagged.
#[derive(Debug, Clone)]
pub struct Standardizer {
    mean: Vec<f64>,
    std: Vec<f64>,
    constant: Vec<bool>,
}

impl Standardizer {
    pub fn fit(ds: &LabeledDataset) -> Self {
        let n = ds.len() as f64;
        let dim = ds.dim();
        let mut mean = vec![0.0; dim];
        for row in ds.rows() {
            for (m, v) in mean.iter_mut().zip(row) {
                *m += v;
            }
        }
        for m in &mut mean {
            *m /= n;
        }
        let mut var = vec![0.0; dim];
        for row in ds.rows() {
            for a in 0..dim {
                let d = row[a] - mean[a];
                var[a] += d * d;
            }
        }
        let mut std = Vec::with_capacity(dim);
        let mut constant = Vec::with_capacity(dim);
        for a in 0..dim {
            let s = math::sqrt(var[a] / n);
            // Relative threshold: float noise on a truly constant column
            // must not produce huge z-scores.
            let is_constant = s <= 1e-12 * (1.0 + math::abs(mean[a]));
            if is_constant {
                log::warn!("attribute {a} is constant on the training fold; passed through unscaled");
            }
            constant.push(is_constant);
            std.push(if is_constant { 1.0 } else { s });
        }
        Self { mean, std, constant }
    }

    pub fn transform_row(&self, row: &[f64]) -> Vec<f64> {
        row.iter()
            .enumerate()
            .map(|(a, v)| {
                if self.constant[a] {
                    *v
                } else {
                    (v - self.mean[a]) / self.std[a]
                }
            })
            .collect()
    }

    pub fn inverse_row(&self, row: &[f64]) -> Vec<f64> {
        row.iter()
            .enumerate()
            .map(|(a, v)| if self.constant[a] { *v } else { v * self.std[a] + self.mean[a] })
            .collect()
    }

    pub fn transform(&self, ds: &LabeledDataset) -> LabeledDataset {
        LabeledDataset {
            dim: ds.dim,
            rows: ds.rows.iter().map(|r| self.transform_row(r)).collect(),
            labels: ds.labels.clone(),
            groups: ds.groups.clone(),
            n_classes: ds.n_classes,
        }
    }

    pub fn constant_attributes(&self) -> &[bool] {
        &self.constant
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassifierKind {
    Knn,
    Bayes,
    C45,
    Svm,
}

impl ClassifierKind {
    pub const ALL: [ClassifierKind; 4] =
        [ClassifierKind::Knn, ClassifierKind::Bayes, ClassifierKind::C45, ClassifierKind::Svm];

    pub fn label(&self) -> &'static str {
        match self {
            Self::Knn => "knn",
            Self::Bayes => "bayes",
            Self::C45 => "c45",
            Self::Svm => "svm",
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        match text.trim() {
            "knn" => Some(Self::Knn),
            "bayes" => Some(Self::Bayes),
            "c45" => Some(Self::C45),
            "svm" => Some(Self::Svm),
            _ => None,
        }
    }
}

/// Hyperparameters for all four classifiers. The paper-era defaults: 1-NN,
/// Gaussian class conditionals with a 1e-9 variance floor, unpruned tree
/// with min_leaf 2, linear SVM at C = 1 solved to KKT tolerance 1e-3.
#[derive(Debug, Clone)]
pub struct ClassifierConfig {
    pub kind: ClassifierKind,
    pub knn_k: usize,
    pub variance_floor: f64,
    pub min_leaf: usize,
    pub svm_c: f64,
    pub svm_tolerance: f64,
    pub svm_max_passes: usize,
}

impl ClassifierConfig {
    pub fn new(kind: ClassifierKind) -> Self {
        Self {
            kind,
            knn_k: 1,
            variance_floor: 1e-9,
            min_leaf: 2,
            svm_c: 1.0,
            svm_tolerance: 1e-3,
            svm_max_passes: 500,
        }
    }
}

#[derive(Debug, Clone)]
enum ModelImpl {
    Knn { rows: Vec<Vec<f64>>, labels: Vec<usize>, n_classes: usize, k: usize },
    Bayes(GaussianNb),
    Tree(DecisionTree),
    Svm(SvmModel),
}

/// A fitted classifier plus the standardization statistics of its training
/// fold; prediction is a pure function of these parameters.
#[derive(Debug, Clone)]
pub struct TrainedModel {
    standardizer: Standardizer,
    inner: ModelImpl,
}

impl TrainedModel {
    pub fn train(train: &LabeledDataset, cfg: &ClassifierConfig) -> Result<Self, MlError> {
        let standardizer = Standardizer::fit(train);
        let std_train = standardizer.transform(train);
        let inner = match cfg.kind {
            ClassifierKind::Knn => {
                if cfg.knn_k == 0 || cfg.knn_k > std_train.len() {
                    return Err(MlError::BadNeighborCount { k: cfg.knn_k, train: std_train.len() });
                }
                ModelImpl::Knn {
                    rows: std_train.rows.clone(),
                    labels: std_train.labels.clone(),
                    n_classes: std_train.n_classes,
                    k: cfg.knn_k,
                }
            }
            ClassifierKind::Bayes => {
                ModelImpl::Bayes(GaussianNb::fit(&std_train, cfg.variance_floor)?)
            }
            ClassifierKind::C45 => ModelImpl::Tree(DecisionTree::fit(&std_train, cfg.min_leaf)?),
            ClassifierKind::Svm => ModelImpl::Svm(SvmModel::fit(
                &std_train,
                cfg.svm_c,
                cfg.svm_tolerance,
                cfg.svm_max_passes,
            )?),
        };
        Ok(Self { standardizer, inner })
    }

    pub fn predict(&self, raw_row: &[f64]) -> Result<usize, MlError> {
        let row = self.standardizer.transform_row(raw_row);
        match &self.inner {
            ModelImpl::Knn { rows, labels, n_classes, k } => {
                knn_classify(rows, labels, *n_classes, &row, *k)
            }
            ModelImpl::Bayes(nb) => Ok(nb.predict(&row)),
            ModelImpl::Tree(tree) => Ok(tree.predict(&row)),
            ModelImpl::Svm(svm) => Ok(svm.predict(&row)),
        }
    }

    pub fn standardizer(&self) -> &Standardizer {
        &self.standardizer
    }
}

/// Stratified fold assignment: per class, shuffle and deal round-robin with
/// a rolling cursor so total fold sizes stay balanced. Falls back to a
/// plain shuffled split (with a warning) when some class is smaller than
/// the fold count. Returns `(fold_of_example, stratified)`.
pub fn assign_folds(
    labels: &[usize],
    n_classes: usize,
    folds: usize,
    seed: u64,
) -> (Vec<usize>, bool) {
    let mut rng = SplitMix64::new(seed);
    let mut counts = vec![0usize; n_classes];
    for &l in labels {
        counts[l] += 1;
    }
    let stratified = counts.iter().all(|&c| c >= folds);
    let mut fold_of = vec![0usize; labels.len()];
    let mut cursor = 0usize;
    if stratified {
        for class in 0..n_classes {
            let mut idx: Vec<usize> =
                (0..labels.len()).filter(|&i| labels[i] == class).collect();
            rng.shuffle(&mut idx);
            for i in idx {
                fold_of[i] = cursor % folds;
                cursor += 1;
            }
        }
    } else {
        log::warn!("a class has fewer examples than folds; using non-stratified folds");
        let mut idx: Vec<usize> = (0..labels.len()).collect();
        rng.shuffle(&mut idx);
        for i in idx {
            fold_of[i] = cursor % folds;
            cursor += 1;
        }
    }
    (fold_of, stratified)
}

/// Grouped fold assignment: whole groups (books) go to one fold, stratified
/// by class when every class has at least `folds` groups.
pub fn assign_grouped_folds(
    labels: &[usize],
    groups: &[usize],
    n_classes: usize,
    folds: usize,
    seed: u64,
) -> Result<(Vec<usize>, bool), MlError> {
    let mut group_ids: Vec<usize> = groups.to_vec();
    group_ids.sort_unstable();
    group_ids.dedup();
    if group_ids.len() < folds {
        return Err(MlError::TooFewGroups { groups: group_ids.len(), folds });
    }
    // A group's class is the class of its first example.
    let group_class: Vec<usize> = group_ids
        .iter()
        .map(|&g| {
            let i = groups.iter().position(|&x| x == g).expect("group came from this slice");
            labels[i]
        })
        .collect();

    let (group_fold, stratified) = assign_folds(&group_class, n_classes, folds, seed);
    let fold_of = groups
        .iter()
        .map(|&g| {
            let gi = group_ids.binary_search(&g).expect("group came from this slice");
            group_fold[gi]
        })
        .collect();
    Ok((fold_of, stratified))
}

/// Cross-validation outcome for one (classifier, window) cell.
#[derive(Debug, Clone)]
pub struct CvReport {
    pub accuracy: f64,
    pub fold_accuracies: Vec<f64>,
    /// `confusion[true_class][predicted_class]`.
    pub confusion: Vec<Vec<usize>>,
    pub correct: usize,
    pub total: usize,
    pub p_value: f64,
    pub stratified: bool,
}

/// Runs seeded k-fold cross-validation: per fold, standardization and the
/// model are fitted on the other folds only, then evaluated on the held-out
/// fold. Fully reproducible from the seed.
pub fn cross_validate(
    ds: &LabeledDataset,
    cfg: &ClassifierConfig,
    folds: usize,
    seed: u64,
    group_by_book: bool,
) -> Result<CvReport, MlError> {
    if folds < 2 {
        return Err(MlError::BadFoldCount { folds });
    }
    if ds.len() < folds {
        return Err(MlError::TooFewExamples { len: ds.len(), folds });
    }
    let (fold_of, stratified) = if group_by_book {
        assign_grouped_folds(ds.labels(), &ds.groups, ds.n_classes(), folds, seed)?
    } else {
        assign_folds(ds.labels(), ds.n_classes(), folds, seed)
    };

    let n_classes = ds.n_classes();
    let mut confusion = vec![vec![0usize; n_classes]; n_classes];
    let mut fold_accuracies = Vec::with_capacity(folds);

    for fold in 0..folds {
        let train_idx: Vec<usize> =
            (0..ds.len()).filter(|&i| fold_of[i] != fold).collect();
        let test_idx: Vec<usize> = (0..ds.len()).filter(|&i| fold_of[i] == fold).collect();
        if test_idx.is_empty() {
            continue;
        }
        let model = TrainedModel::train(&ds.subset(&train_idx), cfg)?;
        let mut fold_correct = 0usize;
        for &i in &test_idx {
            let predicted = model.predict(ds.row(i))?;
            confusion[ds.label(i)][predicted] += 1;
            if predicted == ds.label(i) {
                fold_correct += 1;
            }
        }
        fold_accuracies.push(fold_correct as f64 / test_idx.len() as f64);
    }

    let correct: usize = (0..n_classes).map(|c| confusion[c][c]).sum();
    let total = ds.len();
    Ok(CvReport {
        accuracy: correct as f64 / total as f64,
        fold_accuracies,
        confusion,
        correct,
        total,
        p_value: pvalue_binomial(correct, total, n_classes),
        stratified,
    })
}

/// Upper-tail binomial p-value: P(X >= correct) for X ~ Bin(total,
/// 1/n_classes), the probability that label-blind guessing does at least
/// this well. Terms are assembled in log space.
pub fn pvalue_binomial(correct: usize, total: usize, n_classes: usize) -> f64 {
    debug_assert!(correct <= total);
    debug_assert!(n_classes >= 2);
    if correct == 0 {
        return 1.0;
    }
    let p = 1.0 / n_classes as f64;
    let ln_p = math::ln(p);
    let ln_q = math::ln(1.0 - p);

    // ln(k!) table up to total.
    let mut ln_fact = Vec::with_capacity(total + 1);
    ln_fact.push(0.0);
    for k in 1..=total {
        ln_fact.push(ln_fact[k - 1] + math::ln(k as f64));
    }

    let mut tail = 0.0;
    for k in correct..=total {
        let ln_choose = ln_fact[total] - ln_fact[k] - ln_fact[total - k];
        tail += math::exp(ln_choose + k as f64 * ln_p + (total - k) as f64 * ln_q);
    }
    tail.min(1.0)
}

/// The smallest fixed window whose accuracy reaches `theta * afb`, where
/// `afb` is the accuracy found with full books. Fraction windows are not
/// candidates; they are the reference side of the comparison.
pub fn lowest_sufficient_window(
    series: &[(WindowSpec, f64)],
    afb: f64,
    theta: f64,
) -> Option<WindowSpec> {
    let target = theta * afb;
    let mut fixed: Vec<(usize, f64)> = series
        .iter()
        .filter_map(|(spec, acc)| match spec {
            WindowSpec::Fixed(w) => Some((*w, *acc)),
            WindowSpec::Fraction(_) => None,
        })
        .collect();
    fixed.sort_by_key(|(w, _)| *w);
    fixed
        .into_iter()
        .find(|(_, acc)| *acc >= target)
        .map(|(w, _)| WindowSpec::Fixed(w))
}

/// Friendly label for threshold-analysis output.
pub fn window_label(spec: Option<WindowSpec>) -> String {
    match spec {
        Some(s) => s.label(),
        None => String::from("none"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn four_blob_dataset(per_class: usize, spread: f64, seed: u64) -> LabeledDataset {
        let centers = [
            [0.0, 0.0, 0.0],
            [10.0, 0.0, 0.0],
            [0.0, 10.0, 0.0],
            [0.0, 0.0, 10.0],
        ];
        let mut rng = SplitMix64::new(seed);
        let mut rows = Vec::new();
        let mut labels = Vec::new();
        for (c, center) in centers.iter().enumerate() {
            for _ in 0..per_class {
                rows.push(
                    center.iter().map(|m| m + (rng.next_f64() - 0.5) * spread).collect(),
                );
                labels.push(c);
            }
        }
        LabeledDataset::new(rows, labels, 4).unwrap()
    }

    #[test]
    fn standardize_train_to_zero_mean_unit_std() {
        let ds = four_blob_dataset(10, 2.0, 3);
        let st = Standardizer::fit(&ds);
        let out = st.transform(&ds);
        for a in 0..ds.dim() {
            let col: Vec<f64> = out.rows().iter().map(|r| r[a]).collect();
            let mean = crate::stats::mean(&col);
            let std = crate::stats::population_std(&col);
            assert!(mean.abs() < 1e-12, "attr {a} mean {mean}");
            assert!((std - 1.0).abs() < 1e-12, "attr {a} std {std}");
        }
    }

    #[test]
    fn standardize_constant_attribute_passes_through() {
        let rows = vec![vec![1.0, 5.0], vec![2.0, 5.0], vec![3.0, 5.0]];
        let ds = LabeledDataset::new(rows, vec![0, 1, 0], 2).unwrap();
        let st = Standardizer::fit(&ds);
        assert_eq!(st.constant_attributes(), &[false, true]);
        assert_eq!(st.transform_row(&[2.0, 5.0])[1], 5.0);
    }

    #[test]
    fn standardize_round_trip() {
        let ds = four_blob_dataset(8, 3.0, 11);
        let st = Standardizer::fit(&ds);
        for row in ds.rows() {
            let back = st.inverse_row(&st.transform_row(row));
            for (a, b) in row.iter().zip(&back) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn cross_validation_separable_data_is_perfect() {
        let ds = four_blob_dataset(10, 1.0, 21);
        for kind in ClassifierKind::ALL {
            let report =
                cross_validate(&ds, &ClassifierConfig::new(kind), 10, 7, false).unwrap();
            assert_eq!(report.accuracy, 1.0, "{}", kind.label());
            assert!(report.stratified);
            assert_eq!(report.total, 40);
            let sum: usize = report.confusion.iter().flatten().sum();
            assert_eq!(sum, 40);
        }
    }

    #[test]
    fn cross_validation_permuted_labels_near_chance() {
        let ds = four_blob_dataset(30, 1.0, 5).permute_labels(99);
        for kind in ClassifierKind::ALL {
            let report =
                cross_validate(&ds, &ClassifierConfig::new(kind), 10, 7, false).unwrap();
            assert!(
                (report.accuracy - 0.25).abs() <= 0.15,
                "{}: permuted accuracy {}",
                kind.label(),
                report.accuracy
            );
        }
    }

    #[test]
    fn cross_validation_is_seed_deterministic() {
        let ds = four_blob_dataset(10, 4.0, 2);
        let cfg = ClassifierConfig::new(ClassifierKind::Svm);
        let a = cross_validate(&ds, &cfg, 10, 42, false).unwrap();
        let b = cross_validate(&ds, &cfg, 10, 42, false).unwrap();
        assert_eq!(a.accuracy, b.accuracy);
        assert_eq!(a.confusion, b.confusion);
        assert_eq!(a.fold_accuracies, b.fold_accuracies);
    }

    #[test]
    fn folds_partition_and_stratify() {
        let labels: Vec<usize> = (0..40).map(|i| i % 4).collect();
        let (fold_of, stratified) = assign_folds(&labels, 4, 10, 1);
        assert!(stratified);
        let mut sizes = vec![0usize; 10];
        for &f in &fold_of {
            sizes[f] += 1;
        }
        assert!(sizes.iter().all(|&s| s == 4), "{sizes:?}");
    }

    #[test]
    fn fold_fallback_when_class_too_small() {
        let labels = vec![0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1];
        let (fold_of, stratified) = assign_folds(&labels, 2, 5, 1);
        assert!(!stratified);
        assert_eq!(fold_of.len(), 12);
    }

    #[test]
    fn grouped_folds_keep_groups_together() {
        // 8 groups of 5 examples, 2 classes.
        let labels: Vec<usize> = (0..40).map(|i| (i / 5) % 2).collect();
        let groups: Vec<usize> = (0..40).map(|i| i / 5).collect();
        let (fold_of, _) = assign_grouped_folds(&labels, &groups, 2, 4, 9).unwrap();
        for g in 0..8 {
            let folds: Vec<usize> =
                (0..40).filter(|&i| groups[i] == g).map(|i| fold_of[i]).collect();
            assert!(folds.windows(2).all(|w| w[0] == w[1]), "group {g} split across folds");
        }
        assert_eq!(
            assign_grouped_folds(&labels, &groups, 2, 10, 9).unwrap_err(),
            MlError::TooFewGroups { groups: 8, folds: 10 }
        );
    }

    #[test]
    fn pvalue_fixtures() {
        // All 10 of 10 correct with 4 classes: 0.25^10 = 1/1048576.
        let p = pvalue_binomial(10, 10, 4);
        assert!((p - 0.25f64.powi(10)).abs() < 1e-15);
        assert_eq!(pvalue_binomial(0, 10, 4), 1.0);

        // Exactly chance-level: summed tail stays comfortably insignificant.
        // Oracle: direct binomial sum for Bin(12, 1/4), P(X >= 3).
        let mut expected = 0.0;
        for k in 3..=12u32 {
            let mut choose = 1.0f64;
            for j in 0..k {
                choose *= (12 - j) as f64 / (j + 1) as f64;
            }
            expected += choose * 0.25f64.powi(k as i32) * 0.75f64.powi(12 - k as i32);
        }
        let p = pvalue_binomial(3, 12, 4);
        assert!((p - expected).abs() < 1e-12);
        assert!(p > 0.05);
    }

    #[test]
    fn threshold_rule_on_monotone_fixture() {
        // Monotone accuracies with an analytically known crossing: the
        // target is 0.85 * 0.80 = 0.68, first reached at W = 2000.
        let series = vec![
            (WindowSpec::Fixed(500), 0.40),
            (WindowSpec::Fixed(1000), 0.50),
            (WindowSpec::Fixed(1500), 0.60),
            (WindowSpec::Fixed(2000), 0.70),
            (WindowSpec::Fixed(2500), 0.80),
            (WindowSpec::Fixed(3000), 0.85),
            (WindowSpec::FULL, 0.80),
        ];
        let crossing = lowest_sufficient_window(&series, 0.80, 0.85);
        assert_eq!(crossing, Some(WindowSpec::Fixed(2000)));

        // Nothing qualifies when the bar is above every sampled accuracy.
        let crossing = lowest_sufficient_window(&series, 1.0, 0.99);
        assert_eq!(crossing, None);
        assert_eq!(window_label(None), "none");
    }

    #[test]
    fn dataset_validation() {
        assert_eq!(
            LabeledDataset::new(Vec::new(), Vec::new(), 2).unwrap_err(),
            MlError::EmptyTrainingSet
        );
        assert_eq!(
            LabeledDataset::new(vec![vec![1.0]], vec![0], 1).unwrap_err(),
            MlError::TooFewClasses { n_classes: 1 }
        );
        assert_eq!(
            LabeledDataset::new(vec![vec![1.0], vec![1.0, 2.0]], vec![0, 1], 2).unwrap_err(),
            MlError::DimensionMismatch { expected: 1, got: 2 }
        );
        assert_eq!(
            LabeledDataset::new(vec![vec![f64::NAN]], vec![0], 2).unwrap_err(),
            MlError::NonFiniteAttribute { row: 0, attribute: 0 }
        );
        assert_eq!(
            LabeledDataset::new(vec![vec![1.0]], vec![5], 2).unwrap_err(),
            MlError::BadLabel { label: 5, n_classes: 2 }
        );
    }
}
