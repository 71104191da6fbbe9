//! Dense symmetric-definite generalized eigensolver (Cholesky reduction to a
//! standard symmetric problem), plus a small LU-based solve helper.

use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector};

#[derive(Debug, Clone)]
pub struct GeneralizedEigenResult {
    /// Ascending eigenvalues of A x = e B x.
    pub eigenvalues: Vec<f64>,
    /// Columns are eigenvectors, B-orthonormal: G^T B G = I.
    pub eigenvectors: DMatrix<f64>,
}

/// Solve A x = e B x for symmetric A and SPD B via B = L L^T,
/// C = L^{-1} A L^{-T}, and a standard symmetric eigensolve on C.
pub fn sym_generalized_eigen(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Result<GeneralizedEigenResult> {
    if a.nrows() != a.ncols() || b.nrows() != b.ncols() || a.nrows() != b.nrows() {
        return Err(Error::Matrix("dimension mismatch in generalized eigenproblem".into()));
    }
    let chol = b
        .clone()
        .cholesky()
        .ok_or_else(|| Error::Matrix("metric matrix is not positive definite".into()))?;
    let linv = chol
        .l()
        .solve_lower_triangular(&DMatrix::identity(a.nrows(), a.ncols()))
        .ok_or_else(|| Error::Matrix("singular Cholesky factor".into()))?;
    let c = &linv * a * linv.transpose();
    // symmetrize against round-off before the symmetric solver
    let c = (&c + c.transpose()) * 0.5;
    let se = c.symmetric_eigen();
    // sort ascending
    let mut order: Vec<usize> = (0..se.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| se.eigenvalues[i].partial_cmp(&se.eigenvalues[j]).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| se.eigenvalues[i]).collect();
    let mut eigenvectors = DMatrix::zeros(a.nrows(), a.ncols());
    for (col, &i) in order.iter().enumerate() {
        let v = linv.transpose() * se.eigenvectors.column(i);
        eigenvectors.set_column(col, &v);
    }
    Ok(GeneralizedEigenResult { eigenvalues, eigenvectors })
}

/// Solve the dense linear system M x = rhs by LU with partial pivoting.
pub fn lu_solve(m: &DMatrix<f64>, rhs: &DVector<f64>) -> Result<DVector<f64>> {
    m.clone()
        .lu()
        .solve(rhs)
        .ok_or_else(|| Error::Matrix("singular linear system".into()))
}
