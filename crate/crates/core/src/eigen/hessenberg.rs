use num_complex::Complex64;

use crate::matrix::CMatrix;

/// `A = Q·H·Q*` with `H` upper Hessenberg and `Q` unitary.
#[derive(Debug, Clone)]
pub struct HessenbergForm {
    pub h: CMatrix,
    pub q: CMatrix,
}

/// Householder reduction to upper Hessenberg form.
///
/// Columns whose entries below the subdiagonal are already exactly zero are
/// skipped, so tridiagonal input comes back untouched with `Q = I`.
pub fn hessenberg(a: &CMatrix) -> HessenbergForm {
    let n = a.dim();
    let mut h = a.clone();
    let mut q = CMatrix::identity(n);
    let zero = Complex64::new(0.0, 0.0);

    for k in 0..n.saturating_sub(2) {
        if (k + 2..n).all(|i| h[(i, k)] == zero) {
            continue;
        }
        let x: Vec<Complex64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let xnorm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let phase = if x[0] == zero {
            Complex64::new(1.0, 0.0)
        } else {
            x[0] / x[0].norm()
        };
        let alpha = -phase * xnorm;
        let mut v = x;
        v[0] -= alpha;
        let vv = v.iter().map(|z| z.norm_sqr()).sum::<f64>();
        if vv == 0.0 {
            continue;
        }
        let tau = 2.0 / vv;

        // H ← P H, rows k+1.., columns k..
        for j in k..n {
            let s: Complex64 = v
                .iter()
                .enumerate()
                .map(|(i, vi)| vi.conj() * h[(k + 1 + i, j)])
                .sum();
            let s = s * tau;
            for (i, vi) in v.iter().enumerate() {
                h[(k + 1 + i, j)] -= vi * s;
            }
        }
        // H ← H P and Q ← Q P, columns k+1..
        for m in [&mut h, &mut q] {
            for r in 0..n {
                let s: Complex64 = v
                    .iter()
                    .enumerate()
                    .map(|(i, vi)| m[(r, k + 1 + i)] * vi)
                    .sum();
                let s = s * tau;
                for (i, vi) in v.iter().enumerate() {
                    m[(r, k + 1 + i)] -= s * vi.conj();
                }
            }
        }
        h[(k + 1, k)] = alpha;
        for i in k + 2..n {
            h[(i, k)] = zero;
        }
    }
    HessenbergForm { h, q }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::test_support::random_matrix;

    #[test]
    fn tridiagonal_input_is_untouched() {
        let n = 6;
        let a = CMatrix::from_fn(n, |i, j| {
            if i == j {
                Complex64::new(0.0, i as f64)
            } else if i.abs_diff(j) == 1 {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let hf = hessenberg(&a);
        assert_eq!(hf.h, a);
        assert_eq!(hf.q, CMatrix::identity(n));
    }

    #[test]
    fn two_by_two_is_untouched() {
        let a = random_matrix(2, 3);
        let hf = hessenberg(&a);
        assert_eq!(hf.h, a);
        assert_eq!(hf.q, CMatrix::identity(2));
    }

    #[test]
    fn dense_reconstruction() {
        for seed in 0..5 {
            let a = random_matrix(6, seed);
            let hf = hessenberg(&a);
            for i in 0..6usize {
                for j in 0..i.saturating_sub(1) {
                    assert_eq!(hf.h[(i, j)], Complex64::new(0.0, 0.0));
                }
            }
            let back = hf.q.matmul(&hf.h).matmul(&hf.q.adjoint());
            assert!(back.max_abs_diff(&a) <= 1e-12 * a.max_abs() * 6.0);
            let qq = hf.q.adjoint().matmul(&hf.q);
            assert!(qq.max_abs_diff(&CMatrix::identity(6)) <= 1e-12 * 6.0);
        }
    }
}
