//! Decision-tree induction over continuous attributes.
//!
//! Splits are binary thresholds (value <= t against value > t), chosen to
//! maximize information gain in bits; candidate thresholds are the
//! midpoints between consecutive distinct sorted values, the canonical
//! continuous-attribute adaptation. No post-pruning. Gain ties break to the
//! lowest attribute index, then the lowest threshold, so training is fully
//! deterministic.

use alloc::vec;
use alloc::vec::Vec;

use super::{LabeledDataset, MlError};
use crate::math;

fn entropy_bits(class_counts: &[usize], total: usize) -> f64 {
    if total == 0 {
        return 0.0;
    }
    let mut h = 0.0;
    for &c in class_counts {
        if c > 0 {
            let p = c as f64 / total as f64;
            h -= p * math::log2(p);
        }
    }
    h
}

fn subset_class_counts(ds: &LabeledDataset, indices: &[usize]) -> Vec<usize> {
    let mut counts = vec![0usize; ds.n_classes()];
    for &i in indices {
        counts[ds.label(i)] += 1;
    }
    counts
}

fn info_gain_subset(
    ds: &LabeledDataset,
    indices: &[usize],
    attribute: usize,
    threshold: f64,
) -> f64 {
    let total = indices.len();
    let parent = entropy_bits(&subset_class_counts(ds, indices), total);

    let mut left = vec![0usize; ds.n_classes()];
    let mut right = vec![0usize; ds.n_classes()];
    let mut n_left = 0usize;
    for &i in indices {
        if ds.row(i)[attribute] <= threshold {
            left[ds.label(i)] += 1;
            n_left += 1;
        } else {
            right[ds.label(i)] += 1;
        }
    }
    let n_right = total - n_left;
    let weighted = (n_left as f64 / total as f64) * entropy_bits(&left, n_left)
        + (n_right as f64 / total as f64) * entropy_bits(&right, n_right);
    parent - weighted
}

/// Information gain of the binary split `attribute <= threshold` on the
/// whole dataset, in bits.
pub fn info_gain(ds: &LabeledDataset, attribute: usize, threshold: f64) -> f64 {
    let all: Vec<usize> = (0..ds.len()).collect();
    info_gain_subset(ds, &all, attribute, threshold)
}

#[derive(Debug, Clone)]
enum Node {
    Leaf { class: usize },
    Split { attribute: usize, threshold: f64, left: usize, right: usize },
}

#[derive(Debug, Clone)]
pub struct DecisionTree {
    nodes: Vec<Node>,
}

impl DecisionTree {
    /// Grows the tree until nodes are pure, smaller than `2 * min_leaf`, or
    /// unsplittable (all attribute values identical).
    pub fn fit(train: &LabeledDataset, min_leaf: usize) -> Result<Self, MlError> {
        if train.is_empty() {
            return Err(MlError::EmptyTrainingSet);
        }
        let mut tree = Self { nodes: Vec::new() };
        let all: Vec<usize> = (0..train.len()).collect();
        tree.grow(train, all, min_leaf.max(1));
        Ok(tree)
    }

    fn grow(&mut self, ds: &LabeledDataset, indices: Vec<usize>, min_leaf: usize) -> usize {
        let counts = subset_class_counts(ds, &indices);
        let majority = majority_class(&counts);
        let pure = counts.iter().filter(|&&c| c > 0).count() <= 1;

        if pure || indices.len() < 2 * min_leaf {
            return self.push(Node::Leaf { class: majority });
        }

        let best = self.best_split(ds, &indices);
        let Some((attribute, threshold)) = best else {
            return self.push(Node::Leaf { class: majority });
        };

        let (left_idx, right_idx): (Vec<usize>, Vec<usize>) =
            indices.into_iter().partition(|&i| ds.row(i)[attribute] <= threshold);
        debug_assert!(!left_idx.is_empty() && !right_idx.is_empty());

        // Reserve this node's slot before the children claim theirs.
        let id = self.push(Node::Leaf { class: majority });
        let left = self.grow(ds, left_idx, min_leaf);
        let right = self.grow(ds, right_idx, min_leaf);
        self.nodes[id] = Node::Split { attribute, threshold, left, right };
        id
    }

    fn best_split(&self, ds: &LabeledDataset, indices: &[usize]) -> Option<(usize, f64)> {
        let mut best: Option<(f64, usize, f64)> = None;
        for attribute in 0..ds.dim() {
            let mut values: Vec<f64> = indices.iter().map(|&i| ds.row(i)[attribute]).collect();
            values.sort_unstable_by(f64::total_cmp);
            values.dedup();
            for pair in values.windows(2) {
                let threshold = (pair[0] + pair[1]) / 2.0;
                let gain = info_gain_subset(ds, indices, attribute, threshold);
                // Strict improvement keeps the earliest (attribute,
                // threshold) on ties.
                if best.map_or(true, |(g, _, _)| gain > g) {
                    best = Some((gain, attribute, threshold));
                }
            }
        }
        best.map(|(_, a, t)| (a, t))
    }

    fn push(&mut self, node: Node) -> usize {
        self.nodes.push(node);
        self.nodes.len() - 1
    }

    pub fn predict(&self, x: &[f64]) -> usize {
        let mut at = 0;
        loop {
            match &self.nodes[at] {
                Node::Leaf { class } => return *class,
                Node::Split { attribute, threshold, left, right } => {
                    at = if x[*attribute] <= *threshold { *left } else { *right };
                }
            }
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Root split as (attribute, threshold), if the root is not a leaf.
    pub fn root_split(&self) -> Option<(usize, f64)> {
        match self.nodes.first() {
            Some(Node::Split { attribute, threshold, .. }) => Some((*attribute, *threshold)),
            _ => None,
        }
    }
}

fn majority_class(counts: &[usize]) -> usize {
    let mut best = 0;
    for (c, &n) in counts.iter().enumerate().skip(1) {
        if n > counts[best] {
            best = c;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dataset(rows: Vec<Vec<f64>>, labels: Vec<usize>, n_classes: usize) -> LabeledDataset {
        LabeledDataset::new(rows, labels, n_classes).unwrap()
    }

    #[test]
    fn perfect_split_gain_equals_dataset_entropy() {
        let ds = dataset(
            (1..=8).map(|v| vec![v as f64]).collect(),
            vec![0, 0, 0, 0, 1, 1, 1, 1],
            2,
        );
        let gain = info_gain(&ds, 0, 4.5);
        assert!((gain - 1.0).abs() < 1e-12); // H(S) = 1 bit for a 4/4 split
    }

    #[test]
    fn one_sided_split_has_zero_gain() {
        let ds = dataset(
            (1..=8).map(|v| vec![v as f64]).collect(),
            vec![0, 1, 0, 1, 0, 1, 0, 1],
            2,
        );
        assert_eq!(info_gain(&ds, 0, 100.0), 0.0);
        assert_eq!(info_gain(&ds, 0, 0.0), 0.0);
    }

    #[test]
    fn eight_example_hand_computed_gain() {
        // Values 1..8, labels A A A B B B B B, threshold 3.5:
        // left is pure A (3), right is pure B (5), so the gain is the full
        // dataset entropy H(3/8, 5/8) = 0.954434002924965 bits.
        let ds = dataset(
            (1..=8).map(|v| vec![v as f64]).collect(),
            vec![0, 0, 0, 1, 1, 1, 1, 1],
            2,
        );
        let gain = info_gain(&ds, 0, 3.5);
        assert!((gain - 0.954434002924965).abs() < 1e-12, "gain = {gain}");

        // Threshold 5.5: left = {3A, 2B} (H = 0.970950594454668),
        // right = {3B} (pure). Gain = 0.954434.. - (5/8) * 0.970950..
        //       = 0.347589881390797.
        let gain = info_gain(&ds, 0, 5.5);
        assert!((gain - 0.347589881390797).abs() < 1e-12, "gain = {gain}");
    }

    #[test]
    fn pure_data_yields_single_leaf() {
        let ds = dataset(vec![vec![1.0], vec![2.0], vec![3.0]], vec![1, 1, 1], 2);
        let tree = DecisionTree::fit(&ds, 2).unwrap();
        assert_eq!(tree.node_count(), 1);
        assert_eq!(tree.predict(&[99.0]), 1);
    }

    #[test]
    fn threshold_separable_data_trains_to_depth_one() {
        let ds = dataset(
            (0..10).map(|v| vec![v as f64]).collect(),
            vec![0, 0, 0, 0, 0, 1, 1, 1, 1, 1],
            2,
        );
        let tree = DecisionTree::fit(&ds, 2).unwrap();
        assert_eq!(tree.node_count(), 3); // root and two leaves
        assert_eq!(tree.root_split(), Some((0, 4.5)));
        for i in 0..10 {
            assert_eq!(tree.predict(&[i as f64]), usize::from(i >= 5));
        }
    }

    #[test]
    fn root_split_matches_exhaustive_oracle() {
        // Oracle: brute-force gain over every (attribute, midpoint)
        // candidate using the public info_gain.
        let mut rng = crate::rng::SplitMix64::new(77);
        let rows: Vec<Vec<f64>> =
            (0..20).map(|_| (0..3).map(|_| rng.next_f64() * 6.0).collect()).collect();
        let labels: Vec<usize> = rows
            .iter()
            .map(|r| usize::from(r[1] + 0.3 * r[0] > 3.5) + usize::from(r[2] > 4.0))
            .collect();
        let ds = dataset(rows.clone(), labels, 3);
        let tree = DecisionTree::fit(&ds, 2).unwrap();

        let mut best: Option<(f64, usize, f64)> = None;
        for a in 0..3 {
            let mut vals: Vec<f64> = rows.iter().map(|r| r[a]).collect();
            vals.sort_unstable_by(f64::total_cmp);
            vals.dedup();
            for pair in vals.windows(2) {
                let t = (pair[0] + pair[1]) / 2.0;
                let g = info_gain(&ds, a, t);
                if best.map_or(true, |(bg, _, _)| g > bg) {
                    best = Some((g, a, t));
                }
            }
        }
        let (_, ba, bt) = best.unwrap();
        assert_eq!(tree.root_split(), Some((ba, bt)));
    }

    #[test]
    fn training_accuracy_non_decreasing_as_min_leaf_shrinks() {
        let mut rng = crate::rng::SplitMix64::new(5);
        let rows: Vec<Vec<f64>> =
            (0..60).map(|_| (0..4).map(|_| rng.next_f64()).collect()).collect();
        let labels: Vec<usize> = (0..60).map(|_| rng.next_below(3) as usize).collect();
        let ds = dataset(rows, labels, 3);

        let train_accuracy = |min_leaf: usize| {
            let tree = DecisionTree::fit(&ds, min_leaf).unwrap();
            let correct = (0..ds.len())
                .filter(|&i| tree.predict(ds.row(i)) == ds.label(i))
                .count();
            correct as f64 / ds.len() as f64
        };

        let mut last = 0.0;
        for min_leaf in [16, 8, 4, 2, 1] {
            let acc = train_accuracy(min_leaf);
            assert!(acc >= last - 1e-12, "min_leaf {min_leaf}: {acc} < {last}");
            last = acc;
        }
        assert_eq!(train_accuracy(1), 1.0); // distinct rows memorize fully
    }

    #[test]
    fn identical_rows_with_mixed_labels_become_a_leaf() {
        let ds = dataset(vec![vec![1.0], vec![1.0], vec![1.0], vec![1.0]], vec![0, 1, 0, 0], 2);
        let tree = DecisionTree::fit(&ds, 1).unwrap();
        assert_eq!(tree.node_count(), 1);
        assert_eq!(tree.predict(&[1.0]), 0);
    }
}
