use nalgebra::{Cholesky, DMatrix, DVector, Dyn};

use crate::error::{Error, Result};

/// Relative jitter added to the diagonal when a regularized factorization fails.
pub const JITTER_SCALE: f64 = 1e-12;

/// Smallest accepted `min(L_ii)² / max(L_ii)²` for an unregularized system.
const PIVOT_RATIO: f64 = 1e-14;

/// Solves `A x = b` for symmetric positive-definite `A` by Cholesky.
///
/// When `regularized` and the factorization fails, retries once with
/// `1e-12 · trace(A)` on the diagonal and reports the jitter used. Without
/// regularization a failed or nearly singular factorization is an error.
pub(crate) fn spd_solve(
    mut a: DMatrix<f64>,
    b: &DVector<f64>,
    regularized: bool,
) -> Result<(DVector<f64>, Option<f64>)> {
    if let Some(chol) = Cholesky::new(a.clone()) {
        if regularized || well_conditioned(&chol) {
            return Ok((chol.solve(b), None));
        }
        return Err(Error::SingularSystem);
    }
    if !regularized {
        return Err(Error::SingularSystem);
    }
    let jitter = JITTER_SCALE * a.trace().abs().max(f64::MIN_POSITIVE);
    for i in 0..a.nrows() {
        a[(i, i)] += jitter;
    }
    let chol = Cholesky::new(a).ok_or(Error::SingularSystem)?;
    Ok((chol.solve(b), Some(jitter)))
}

fn well_conditioned(chol: &Cholesky<f64, Dyn>) -> bool {
    let l = chol.l_dirty();
    let diag = l.diagonal();
    let max = diag.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let min = diag.iter().fold(f64::INFINITY, |m, v| m.min(v.abs()));
    max > 0.0 && (min / max).powi(2) >= PIVOT_RATIO
}
