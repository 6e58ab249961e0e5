use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;

const RESCALE_ABOVE: f64 = 1e100;
const PIVOT_REL: f64 = 1e-14;

/// Eigenvectors of upper-triangular `t`, one column per diagonal entry.
///
/// Column `k` solves `(T - t_kk)x = 0` with `x_k = 1` and `x_j = 0` for `j > k`.
/// Near-zero pivots are replaced by `1e-14·‖T‖_max`.
pub(crate) fn triangular_eigenvectors(t: &CMatrix) -> Result<Vec<Vec<Complex64>>> {
    let n = t.dim();
    let tmax = t.max_abs();
    let small = (PIVOT_REL * tmax).max(f64::MIN_POSITIVE * n as f64 / f64::EPSILON);
    let mut out = Vec::with_capacity(n);

    for k in 0..n {
        let lambda = t[(k, k)];
        let mut x = vec![Complex64::new(0.0, 0.0); k + 1];
        x[k] = Complex64::new(1.0, 0.0);
        for i in (0..k).rev() {
            let row = t.row(i);
            let s: Complex64 = (i + 1..=k).map(|j| row[j] * x[j]).sum();
            let mut d = row[i] - lambda;
            if d.norm() < small {
                d = Complex64::new(small, 0.0);
            }
            x[i] = -s / d;
            let m = x[i].norm();
            if m > RESCALE_ABOVE {
                let inv = 1.0 / m;
                for v in &mut x[i..] {
                    *v *= inv;
                }
            }
        }
        if x.iter().any(|v| !v.is_finite()) || x.iter().all(|v| v.norm() == 0.0) {
            return Err(Error::DegenerateEigenvector { index: k });
        }
        out.push(x);
    }
    Ok(out)
}
