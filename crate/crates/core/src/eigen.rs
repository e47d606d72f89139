//! Eigen decomposition and the nonbinary descriptor.
//!
//! The nonbinary description of a subject is its position in the eigenspace
//! of the dataset's ROI vectors: a basis is fit from scratch (cyclic Jacobi
//! rotations on the covariance), components covering a fraction of the total
//! variance are retained, and every subject is summarized by its Euclidean
//! distance in that space to the darkest reference subject.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::sampling::RoiVector;
use crate::stats::Ranking;

const MAX_SWEEPS: usize = 100;

fn frobenius(a: &[Vec<f64>]) -> f64 {
    libm::sqrt(
        a.iter()
            .flat_map(|row| row.iter())
            .map(|&v| v * v)
            .sum::<f64>(),
    )
}

/// Flips a vector so its largest-magnitude component is positive, making
/// eigenvector signs reproducible across solvers and runs.
fn fix_sign(v: &mut [f64]) {
    let mut lead = 0usize;
    let mut best = f64::NEG_INFINITY;
    for (i, &x) in v.iter().enumerate() {
        let mag = libm::fabs(x);
        if mag > best {
            best = mag;
            lead = i;
        }
    }
    if v[lead] < 0.0 {
        for x in v.iter_mut() {
            *x = -*x;
        }
    }
}

/// Eigen decomposition of a real symmetric matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues in descending order with matching orthonormal
/// eigenvectors. Iterates until the largest off-diagonal magnitude falls
/// below `1e-12 * ||A||_F` or 100 sweeps have run.
pub fn eigensolve_symmetric(a: &[Vec<f64>]) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let n = a.len();
    if n == 0 {
        return Err(Error::Empty("matrix"));
    }
    for (i, row) in a.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotSquare {
                rows: n,
                row: i,
                cols: row.len(),
            });
        }
    }
    let norm = frobenius(a);
    let sym_tol = 1e-10 * norm.max(1.0);
    for i in 0..n {
        for j in i + 1..n {
            let delta = libm::fabs(a[i][j] - a[j][i]);
            if delta > sym_tol {
                return Err(Error::NotSymmetric {
                    row: i,
                    col: j,
                    delta,
                });
            }
        }
    }

    // Work on a symmetrized copy; accumulate rotations into v.
    let mut m: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| 0.5 * (a[i][j] + a[j][i])).collect())
        .collect();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();

    let stop = 1e-12 * norm;
    for _ in 0..MAX_SWEEPS {
        let mut max_off = 0.0f64;
        for i in 0..n {
            for j in i + 1..n {
                max_off = max_off.max(libm::fabs(m[i][j]));
            }
        }
        if max_off <= stop {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * apq);
                let t = {
                    let magnitude = 1.0 / (libm::fabs(theta) + libm::sqrt(theta * theta + 1.0));
                    if theta < 0.0 {
                        -magnitude
                    } else {
                        magnitude
                    }
                };
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;

                for k in 0..n {
                    let mkp = m[k][p];
                    let mkq = m[k][q];
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[p][k];
                    let mqk = m[q][k];
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
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

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[j][j].total_cmp(&m[i][i]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| m[i][i]).collect();
    let eigenvectors: Vec<Vec<f64>> = order
        .iter()
        .map(|&col| {
            let mut e: Vec<f64> = (0..n).map(|row| v[row][col]).collect();
            fix_sign(&mut e);
            e
        })
        .collect();
    Ok((eigenvalues, eigenvectors))
}

/// Which covariance the basis is derived from.
///
/// Both routes yield the same nonzero spectrum; `Auto` picks the smaller
/// eigenproblem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PcaRoute {
    Auto,
    /// Subject-by-subject Gram matrix (N x N), eigenvectors mapped back to
    /// data space. The practical route when vectors are longer than the
    /// dataset.
    Gram,
    /// Component-by-component scatter matrix (L x L), solved directly.
    Scatter,
}

/// PCA basis of a dataset of equal-length row vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenModel {
    mean: Vec<f64>,
    eigenvectors: Vec<Vec<f64>>,
    eigenvalues: Vec<f64>,
    retained: usize,
}

impl EigenModel {
    /// Mean row of the training data.
    pub fn mean(&self) -> &[f64] {
        &self.mean
    }

    /// Orthonormal data-space eigenvectors, by descending eigenvalue. Only
    /// directions with nonzero variance are stored.
    pub fn eigenvectors(&self) -> &[Vec<f64>] {
        &self.eigenvectors
    }

    /// Nonzero eigenvalues, descending.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Number of leading components used for projections.
    pub fn retained(&self) -> usize {
        self.retained
    }

    pub fn dimension(&self) -> usize {
        self.mean.len()
    }

    /// True when the training rows were all identical: no variance, nothing
    /// to project onto.
    pub fn is_degenerate(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Sets the retained component count to the smallest prefix of the
    /// spectrum covering `fraction` of the total variance.
    pub fn retain_fraction(&mut self, fraction: f64) -> Result<usize> {
        let n = select_components(&self.eigenvalues, fraction)?;
        self.retained = n;
        Ok(n)
    }
}

/// Fits the PCA basis, choosing the covariance route automatically.
pub fn fit_pca(rows: &[RoiVector]) -> Result<EigenModel> {
    fit_pca_route(rows, PcaRoute::Auto)
}

/// Fits the PCA basis via the requested covariance route.
pub fn fit_pca_route(rows: &[RoiVector], route: PcaRoute) -> Result<EigenModel> {
    let n = rows.len();
    if n < 2 {
        return Err(Error::TooFewSubjects { needed: 2, got: n });
    }
    let dim = rows[0].values.len();
    if dim == 0 {
        return Err(Error::Empty("row vector"));
    }
    for row in rows {
        if row.values.len() != dim {
            return Err(Error::LengthMismatch {
                expected: dim,
                got: row.values.len(),
            });
        }
    }

    let mut mean = vec![0.0; dim];
    for row in rows {
        for (m, &v) in mean.iter_mut().zip(&row.values) {
            *m += v;
        }
    }
    for m in mean.iter_mut() {
        *m /= n as f64;
    }
    let centered: Vec<Vec<f64>> = rows
        .iter()
        .map(|row| row.values.iter().zip(&mean).map(|(&v, &m)| v - m).collect())
        .collect();

    let use_gram = match route {
        PcaRoute::Auto => dim > n,
        PcaRoute::Gram => true,
        PcaRoute::Scatter => false,
    };

    let (mut eigenvalues, mut eigenvectors) = if use_gram {
        let mut gram = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in i..n {
                let dot: f64 = centered[i]
                    .iter()
                    .zip(&centered[j])
                    .map(|(&a, &b)| a * b)
                    .sum();
                gram[i][j] = dot;
                gram[j][i] = dot;
            }
        }
        let (values, subject_vectors) = eigensolve_symmetric(&gram)?;
        // Map subject-space eigenvectors back to data space and renormalize.
        let vectors: Vec<Vec<f64>> = subject_vectors
            .iter()
            .map(|u| {
                let mut e = vec![0.0; dim];
                for (k, &weight) in u.iter().enumerate() {
                    for (ek, &ck) in e.iter_mut().zip(&centered[k]) {
                        *ek += weight * ck;
                    }
                }
                e
            })
            .collect();
        (values, vectors)
    } else {
        let mut scatter = vec![vec![0.0; dim]; dim];
        for row in &centered {
            for a in 0..dim {
                for b in a..dim {
                    scatter[a][b] += row[a] * row[b];
                }
            }
        }
        for a in 0..dim {
            for b in 0..a {
                scatter[a][b] = scatter[b][a];
            }
        }
        eigensolve_symmetric(&scatter)?
    };

    // Keep only directions carrying real variance, at most min(N-1, L).
    let max_value = eigenvalues.first().copied().unwrap_or(0.0);
    let tol = max_value * 1e-9;
    let mut keep = eigenvalues
        .iter()
        .take_while(|&&value| value > tol && value > 0.0)
        .count();
    keep = keep.min(n - 1).min(dim);
    eigenvalues.truncate(keep);
    eigenvectors.truncate(keep);
    for vector in eigenvectors.iter_mut() {
        if use_gram {
            // Gram eigenvectors come back with norm sqrt(eigenvalue), which
            // is nonzero for every kept direction.
            let norm = libm::sqrt(vector.iter().map(|&x| x * x).sum::<f64>());
            for x in vector.iter_mut() {
                *x /= norm;
            }
        }
        fix_sign(vector);
    }

    let retained = keep;
    Ok(EigenModel {
        mean,
        eigenvectors,
        eigenvalues,
        retained,
    })
}

/// Smallest component count whose eigenvalue prefix reaches `fraction` of
/// the total variance. The boundary is inclusive.
pub fn select_components(eigenvalues: &[f64], fraction: f64) -> Result<usize> {
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(Error::InvalidFraction(fraction));
    }
    let total: f64 = eigenvalues.iter().sum();
    if eigenvalues.is_empty() || total <= 0.0 {
        return Err(Error::ZeroSpectrum);
    }
    let mut cumulative = 0.0;
    for (i, &value) in eigenvalues.iter().enumerate() {
        cumulative += value;
        if cumulative / total >= fraction {
            return Ok(i + 1);
        }
    }
    Ok(eigenvalues.len())
}

/// Coordinates of one subject in the retained eigenspace.
#[derive(Debug, Clone, PartialEq)]
pub struct Projection {
    pub subject_id: String,
    pub coefficients: Vec<f64>,
}

impl Projection {
    /// The nonbinary feature vector is exactly the retained coefficients.
    pub fn features(&self) -> &[f64] {
        &self.coefficients
    }
}

/// Projects a row onto the first `retained` eigenvectors.
pub fn project(model: &EigenModel, row: &RoiVector) -> Result<Projection> {
    if model.is_degenerate() {
        return Err(Error::DegenerateModel);
    }
    Ok(Projection {
        subject_id: row.subject_id.clone(),
        coefficients: project_onto(model, &row.values, model.retained)?,
    })
}

/// Coefficients against the full stored basis (every nonzero direction).
pub fn project_full(model: &EigenModel, values: &[f64]) -> Result<Vec<f64>> {
    project_onto(model, values, model.eigenvectors.len())
}

fn project_onto(model: &EigenModel, values: &[f64], count: usize) -> Result<Vec<f64>> {
    if values.len() != model.dimension() {
        return Err(Error::LengthMismatch {
            expected: model.dimension(),
            got: values.len(),
        });
    }
    let centered: Vec<f64> = values
        .iter()
        .zip(&model.mean)
        .map(|(&v, &m)| v - m)
        .collect();
    Ok(model.eigenvectors[..count]
        .iter()
        .map(|e| e.iter().zip(&centered).map(|(&a, &b)| a * b).sum())
        .collect())
}

/// Rebuilds a row as the weighted sum of the stored eigenvectors plus the
/// mean. `coefficients` must cover the full stored basis.
pub fn reconstruct(model: &EigenModel, coefficients: &[f64]) -> Result<Vec<f64>> {
    if coefficients.len() != model.eigenvectors.len() {
        return Err(Error::LengthMismatch {
            expected: model.eigenvectors.len(),
            got: coefficients.len(),
        });
    }
    let mut out = model.mean.clone();
    for (g, e) in coefficients.iter().zip(&model.eigenvectors) {
        for (o, &ek) in out.iter_mut().zip(e) {
            *o += g * ek;
        }
    }
    Ok(out)
}

/// The nonbinary description of a dataset: eigenspace distance of every
/// subject to the darkest reference subject.
#[derive(Debug, Clone, PartialEq)]
pub struct NonbinaryResult {
    /// Subject with the highest hypointensity load (first on ties).
    pub reference_id: String,
    /// (subject id, distance to reference) in dataset order.
    pub distances: Vec<(String, f64)>,
    /// Light to dark: descending distance to the darkest reference.
    pub ranking: Ranking,
}

/// Picks the darkest subject by load and ranks everyone by distance to it.
pub fn nonbinary_rank(projections: &[Projection], loads: &[f64]) -> Result<NonbinaryResult> {
    if projections.is_empty() {
        return Err(Error::Empty("projection list"));
    }
    if loads.len() != projections.len() {
        return Err(Error::LengthMismatch {
            expected: projections.len(),
            got: loads.len(),
        });
    }
    let dim = projections[0].coefficients.len();
    for p in projections {
        if p.coefficients.len() != dim {
            return Err(Error::LengthMismatch {
                expected: dim,
                got: p.coefficients.len(),
            });
        }
    }
    let mut reference = 0usize;
    for (i, &load) in loads.iter().enumerate() {
        if load > loads[reference] {
            reference = i;
        }
    }
    let distances: Vec<(String, f64)> = projections
        .iter()
        .map(|p| {
            let sum: f64 = p
                .coefficients
                .iter()
                .zip(&projections[reference].coefficients)
                .map(|(&a, &b)| (a - b) * (a - b))
                .sum();
            (p.subject_id.clone(), libm::sqrt(sum))
        })
        .collect();
    let mut order: Vec<usize> = (0..distances.len()).collect();
    // Far from the darkest reference means light; stable sort keeps dataset
    // order on ties.
    order.sort_by(|&a, &b| distances[b].1.total_cmp(&distances[a].1));
    let ranking = Ranking::new(order.iter().map(|&i| distances[i].0.clone()).collect())?;
    Ok(NonbinaryResult {
        reference_id: projections[reference].subject_id.clone(),
        distances,
        ranking,
    })
}
