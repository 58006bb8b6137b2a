//! Nearest-neighbor voting in standardized Euclidean space.

use alloc::vec;
use alloc::vec::Vec;

use super::MlError;

/// Majority label among the k nearest training points. Vote ties go to the
/// tied class with the closest single representative, then to the smallest
/// class id. Distance ties order by training index, so the result is
/// deterministic.
pub fn knn_classify(
    train_rows: &[Vec<f64>],
    train_labels: &[usize],
    n_classes: usize,
    x: &[f64],
    k: usize,
) -> Result<usize, MlError> {
    if train_rows.is_empty() {
        return Err(MlError::EmptyTrainingSet);
    }
    if k == 0 || k > train_rows.len() {
        return Err(MlError::BadNeighborCount { k, train: train_rows.len() });
    }

    let mut by_distance: Vec<(f64, usize)> = train_rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let d2: f64 = row.iter().zip(x).map(|(a, b)| (a - b) * (a - b)).sum();
            (d2, i)
        })
        .collect();
    by_distance.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

    let mut votes = vec![0usize; n_classes];
    // First position at which each class appears among the k neighbors.
    let mut first_seen = vec![usize::MAX; n_classes];
    for (rank, &(_, i)) in by_distance[..k].iter().enumerate() {
        let label = train_labels[i];
        votes[label] += 1;
        if first_seen[label] == usize::MAX {
            first_seen[label] = rank;
        }
    }

    let top = *votes.iter().max().expect("k >= 1");
    let winner = (0..n_classes)
        .filter(|&c| votes[c] == top)
        .min_by_key(|&c| (first_seen[c], c))
        .expect("at least one class voted");
    Ok(winner)
}
