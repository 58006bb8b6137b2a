//! Principal component analysis via cyclic Jacobi eigendecomposition of the
//! covariance matrix. The attribute count here is 11, so Jacobi is exact
//! enough and keeps the crate free of a linear-algebra dependency.

use alloc::vec;
use alloc::vec::Vec;

use super::MlError;
use crate::math;

#[derive(Debug, Clone)]
pub struct PcaProjection {
    /// One projected point per input row, `dims` coordinates each.
    pub points: Vec<Vec<f64>>,
    /// Fraction of total variance carried by each kept component.
    pub explained_variance_ratio: Vec<f64>,
    /// Kept eigenvectors, largest eigenvalue first.
    pub components: Vec<Vec<f64>>,
    /// Number of kept components with non-negligible eigenvalue.
    pub informative_dims: usize,
}

/// Eigenvalues and eigenvectors of a symmetric matrix by cyclic Jacobi
/// rotations. Returns (values, vectors) with vectors[k] the unit
/// eigenvector for values[k]; unsorted.
fn jacobi_eigen(matrix: &[Vec<f64>]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = matrix.len();
    let mut a: Vec<Vec<f64>> = matrix.to_vec();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();

    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += a[i][j] * a[i][j];
            }
        }
        if off <= 1e-30 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if math::abs(a[p][q]) <= 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = if theta >= 0.0 {
                    1.0 / (theta + math::sqrt(1.0 + theta * theta))
                } else {
                    -1.0 / (-theta + math::sqrt(1.0 + theta * theta))
                };
                let c = 1.0 / math::sqrt(1.0 + t * t);
                let s = t * c;

                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[k][p];
                    let vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }

    let values: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    let vectors: Vec<Vec<f64>> = (0..n).map(|k| (0..n).map(|i| v[i][k]).collect()).collect();
    (values, vectors)
}

/// Fixes the sign so the largest-magnitude coordinate of the eigenvector is
/// positive (ties to the earliest index), making projections reproducible.
fn fix_sign(vector: &mut [f64]) {
    let mut idx = 0;
    for (i, x) in vector.iter().enumerate() {
        if math::abs(*x) > math::abs(vector[idx]) {
            idx = i;
        }
    }
    if vector[idx] < 0.0 {
        for x in vector.iter_mut() {
            *x = -*x;
        }
    }
}

/// Centers the rows, eigendecomposes the population covariance, and
/// projects onto the top `dims` components ordered by eigenvalue.
pub fn pca_project(rows: &[Vec<f64>], dims: usize) -> Result<PcaProjection, MlError> {
    if rows.len() <= dims {
        return Err(MlError::TooFewRows { rows: rows.len(), dims });
    }
    let n = rows.len();
    let d = rows[0].len();
    debug_assert!(rows.iter().all(|r| r.len() == d));
    debug_assert!(dims >= 1 && dims <= d);

    let mut mean = vec![0.0; d];
    for row in rows {
        for (m, x) in mean.iter_mut().zip(row) {
            *m += x;
        }
    }
    for m in &mut mean {
        *m /= n as f64;
    }
    let centered: Vec<Vec<f64>> = rows
        .iter()
        .map(|row| row.iter().zip(&mean).map(|(x, m)| x - m).collect())
        .collect();

    let mut covariance = vec![vec![0.0; d]; d];
    for row in &centered {
        for i in 0..d {
            for j in i..d {
                covariance[i][j] += row[i] * row[j];
            }
        }
    }
    for i in 0..d {
        for j in i..d {
            covariance[i][j] /= n as f64;
            covariance[j][i] = covariance[i][j];
        }
    }

    let (values, mut vectors) = jacobi_eigen(&covariance);
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]).then(a.cmp(&b)));

    let total: f64 = values.iter().map(|&l| l.max(0.0)).sum();
    let mut components = Vec::with_capacity(dims);
    let mut explained = Vec::with_capacity(dims);
    let mut informative = 0;
    let top = values[order[0]].max(0.0);
    for &k in order.iter().take(dims) {
        let mut vector = core::mem::take(&mut vectors[k]);
        fix_sign(&mut vector);
        components.push(vector);
        let lambda = values[k].max(0.0);
        explained.push(if total > 0.0 { lambda / total } else { 0.0 });
        if lambda > 1e-12 * (1.0 + top) {
            informative += 1;
        }
    }
    if informative < dims {
        log::warn!("covariance is rank deficient: {informative} of {dims} components informative");
    }

    let points = centered
        .iter()
        .map(|row| components.iter().map(|c| row.iter().zip(c).map(|(x, v)| x * v).sum()).collect())
        .collect();

    Ok(PcaProjection { points, explained_variance_ratio: explained, components, informative_dims: informative })
}
