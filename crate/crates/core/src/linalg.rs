//! Double-precision spectral helpers on top of nalgebra.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &DMatrix<Complex64>) -> Vec<f64> {
    let mut vals: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    vals.sort_by(f64::total_cmp);
    vals
}

/// Smallest eigenvalue of a Hermitian matrix and a unit eigenvector for it.
pub fn min_eigenpair(m: &DMatrix<Complex64>) -> (f64, Vec<Complex64>) {
    let eig = m.clone().symmetric_eigen();
    let (idx, &val) = eig.eigenvalues.iter().enumerate().min_by(|a, b| a.1.total_cmp(b.1)).expect("non-empty matrix");
    (val, eig.eigenvectors.column(idx).iter().copied().collect())
}

/// Eigenvalues of a real square matrix (not necessarily symmetric).
pub fn real_eigenvalues(m: &DMatrix<f64>) -> Vec<Complex64> {
    m.clone().complex_eigenvalues().iter().copied().collect()
}

/// Singular values of the matrix whose rows are `rows`, descending.
pub fn singular_values(rows: &[Vec<Complex64>]) -> Vec<f64> {
    if rows.is_empty() {
        return Vec::new();
    }
    let cols = rows[0].len();
    let m = DMatrix::from_fn(rows.len(), cols, |i, j| rows[i][j]);
    let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Number of singular values above `rel_tol * σ_max`.
pub fn numeric_rank(singular_values: &[f64], rel_tol: f64) -> usize {
    let Some(&top) = singular_values.first() else {
        return 0;
    };
    if top == 0.0 {
        return 0;
    }
    singular_values.iter().filter(|&&s| s > rel_tol * top).count()
}

pub fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn normalized(v: &[Complex64]) -> Vec<Complex64> {
    let n = norm(v);
    v.iter().map(|z| z / n).collect()
}

pub fn conj(v: &[Complex64]) -> Vec<Complex64> {
    v.iter().map(|z| z.conj()).collect()
}

/// `x ⊗ y`, row-major (index `i * len(y) + j`).
pub fn kron(x: &[Complex64], y: &[Complex64]) -> Vec<Complex64> {
    x.iter().flat_map(|a| y.iter().map(move |b| a * b)).collect()
}

/// Frobenius distance between the rank-one projectors of two unit vectors,
/// which ignores the global phase.
pub fn projector_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let mut acc = 0.0;
    for i in 0..a.len() {
        for j in 0..a.len() {
            acc += (a[i] * a[j].conj() - b[i] * b[j].conj()).norm_sqr();
        }
    }
    acc.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_dependent_rows() {
        let c = |x: f64| Complex64::new(x, 0.0);
        let rows = vec![vec![c(1.0), c(2.0)], vec![c(2.0), c(4.0)], vec![c(0.0), c(1e-12)]];
        let sv = singular_values(&rows);
        assert_eq!(numeric_rank(&sv, 1e-8), 1);
    }

    #[test]
    fn min_eigenpair_of_pauli_x() {
        let c = |x: f64| Complex64::new(x, 0.0);
        let m = DMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(1.0), c(0.0)]);
        let (val, v) = min_eigenpair(&m);
        assert!((val + 1.0).abs() < 1e-14);
        assert!((v[0] + v[1]).norm() < 1e-12);
    }
}
