//! Numeric verification of the eigen decomposition and the PCA fit:
//! closed-form oracles for small matrices, residual and orthonormality
//! bounds for larger ones, and the algebraic identities of the fit.

use hypoquant_core::eigen::{
    eigensolve_symmetric, fit_pca, fit_pca_route, project_full, reconstruct, PcaRoute,
};
use hypoquant_core::rng::SplitMix64;
use hypoquant_core::sampling::{RoiVector, SamplingMethod};

fn random_symmetric(n: usize, rng: &mut SplitMix64) -> Vec<Vec<f64>> {
    let mut a = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i..n {
            let v = rng.next_f64() * 20.0 - 10.0;
            a[i][j] = v;
            a[j][i] = v;
        }
    }
    a
}

fn frobenius(a: &[Vec<f64>]) -> f64 {
    a.iter()
        .flat_map(|r| r.iter())
        .map(|&v| v * v)
        .sum::<f64>()
        .sqrt()
}

/// Closed-form eigenvalues of symmetric matrices up to 3x3, straight from
/// the characteristic polynomial (trigonometric form for the cubic).
fn charpoly_eigenvalues(a: &[Vec<f64>]) -> Vec<f64> {
    match a.len() {
        1 => vec![a[0][0]],
        2 => {
            let trace = a[0][0] + a[1][1];
            let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
            let disc = (trace * trace - 4.0 * det).max(0.0).sqrt();
            vec![(trace + disc) / 2.0, (trace - disc) / 2.0]
        }
        3 => {
            let p1 = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
            if p1 == 0.0 {
                let mut values = vec![a[0][0], a[1][1], a[2][2]];
                values.sort_by(|x, y| y.total_cmp(x));
                return values;
            }
            let q = (a[0][0] + a[1][1] + a[2][2]) / 3.0;
            let p2 =
                (a[0][0] - q).powi(2) + (a[1][1] - q).powi(2) + (a[2][2] - q).powi(2) + 2.0 * p1;
            let p = (p2 / 6.0).sqrt();
            let mut b = vec![vec![0.0; 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    b[i][j] = (a[i][j] - if i == j { q } else { 0.0 }) / p;
                }
            }
            let det_b = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1])
                - b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0])
                + b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
            let r = (det_b / 2.0).clamp(-1.0, 1.0);
            let phi = r.acos() / 3.0;
            let eig1 = q + 2.0 * p * phi.cos();
            let eig3 = q + 2.0 * p * (phi + 2.0 * std::f64::consts::PI / 3.0).cos();
            let eig2 = 3.0 * q - eig1 - eig3;
            let mut values = vec![eig1, eig2, eig3];
            values.sort_by(|x, y| y.total_cmp(x));
            values
        }
        _ => unreachable!("oracle covers sizes 1..=3"),
    }
}

fn check_decomposition(a: &[Vec<f64>], tol_scale: f64) {
    let n = a.len();
    let (values, vectors) = eigensolve_symmetric(a).unwrap();
    let norm = frobenius(a).max(1e-30);
    // Residual ||A v - lambda v|| per pair.
    for (value, vector) in values.iter().zip(&vectors) {
        let mut residual = 0.0;
        for i in 0..n {
            let av: f64 = (0..n).map(|j| a[i][j] * vector[j]).sum();
            let r = av - value * vector[i];
            residual += r * r;
        }
        assert!(
            residual.sqrt() <= tol_scale * norm,
            "residual {} exceeds {} * {norm}",
            residual.sqrt(),
            tol_scale
        );
    }
    // Pairwise orthonormality.
    for i in 0..n {
        for j in i..n {
            let dot: f64 = vectors[i].iter().zip(&vectors[j]).map(|(a, b)| a * b).sum();
            let expected = if i == j { 1.0 } else { 0.0 };
            assert!(
                (dot - expected).abs() <= 1e-8,
                "orthonormality violated at ({i},{j}): {dot}"
            );
        }
    }
    // Descending order.
    for pair in values.windows(2) {
        assert!(pair[0] >= pair[1]);
    }
}

#[test]
fn small_matrices_match_characteristic_polynomial_oracle() {
    let mut rng = SplitMix64::new(2024);
    for round in 0..200 {
        let n = 1 + (round % 3);
        let a = random_symmetric(n, &mut rng);
        let (values, _) = eigensolve_symmetric(&a).unwrap();
        let expected = charpoly_eigenvalues(&a);
        let norm = frobenius(&a).max(1.0);
        for (got, want) in values.iter().zip(&expected) {
            assert!(
                (got - want).abs() <= 1e-8 * norm,
                "n={n} round={round}: {got} vs oracle {want}"
            );
        }
    }
}

#[test]
fn residuals_and_orthonormality_up_to_50() {
    let mut rng = SplitMix64::new(7);
    for round in 0..100 {
        let n = 2 + (rng.next_u64() % 49) as usize;
        let a = random_symmetric(n, &mut rng);
        check_decomposition(&a, 1e-8);
        let _ = round;
    }
}

fn random_rows(n: usize, dim: usize, rng: &mut SplitMix64) -> Vec<RoiVector> {
    (0..n)
        .map(|i| RoiVector {
            subject_id: format!("s{i}"),
            values: (0..dim).map(|_| rng.next_f64() * 100.0).collect(),
            method: SamplingMethod::Balanced,
            seed: None,
        })
        .collect()
}

#[test]
fn projections_of_training_rows_are_uncorrelated() {
    let mut rng = SplitMix64::new(11);
    for &(n, dim) in &[(6usize, 40usize), (12, 30), (20, 8)] {
        let rows = random_rows(n, dim, &mut rng);
        let model = fit_pca(&rows).unwrap();
        let coefficients: Vec<Vec<f64>> = rows
            .iter()
            .map(|r| project_full(&model, &r.values).unwrap())
            .collect();
        let k = model.eigenvalues().len();
        let mut covariance = vec![vec![0.0; k]; k];
        for c in &coefficients {
            for i in 0..k {
                for j in 0..k {
                    covariance[i][j] += c[i] * c[j];
                }
            }
        }
        let max_diag = (0..k).map(|i| covariance[i][i]).fold(0.0, f64::max);
        for i in 0..k {
            for j in 0..k {
                if i != j {
                    assert!(
                        covariance[i][j].abs() <= 1e-8 * max_diag,
                        "covariance ({i},{j}) = {} vs diag scale {max_diag}",
                        covariance[i][j]
                    );
                }
            }
        }
    }
}

#[test]
fn full_basis_reconstruction_recovers_training_rows() {
    let mut rng = SplitMix64::new(13);
    for &(n, dim) in &[(5usize, 25usize), (10, 40), (15, 6)] {
        let rows = random_rows(n, dim, &mut rng);
        let model = fit_pca(&rows).unwrap();
        for row in &rows {
            let g = project_full(&model, &row.values).unwrap();
            let back = reconstruct(&model, &g).unwrap();
            let scale = row
                .values
                .iter()
                .map(|v| v.abs())
                .fold(f64::MIN_POSITIVE, f64::max);
            for (a, b) in row.values.iter().zip(&back) {
                assert!(
                    (a - b).abs() <= 1e-6 * scale,
                    "reconstruction off: {a} vs {b} (scale {scale})"
                );
            }
        }
    }
}

#[test]
fn gram_and_scatter_routes_agree_on_nonzero_spectrum() {
    let mut rng = SplitMix64::new(17);
    for &(n, dim) in &[(4usize, 7usize), (7, 4), (6, 6), (9, 12)] {
        let rows = random_rows(n, dim, &mut rng);
        let gram = fit_pca_route(&rows, PcaRoute::Gram).unwrap();
        let scatter = fit_pca_route(&rows, PcaRoute::Scatter).unwrap();
        assert_eq!(
            gram.eigenvalues().len(),
            scatter.eigenvalues().len(),
            "nonzero counts differ for n={n} dim={dim}"
        );
        for (a, b) in gram.eigenvalues().iter().zip(scatter.eigenvalues()) {
            assert!(
                (a - b).abs() <= 1e-8 * a.max(*b),
                "eigenvalues diverge: {a} vs {b}"
            );
        }
        // Eigenvectors agree up to the fixed sign convention.
        for (ea, eb) in gram.eigenvectors().iter().zip(scatter.eigenvectors()) {
            for (x, y) in ea.iter().zip(eb) {
                assert!((x - y).abs() <= 1e-6, "eigenvectors diverge: {x} vs {y}");
            }
        }
    }
}
