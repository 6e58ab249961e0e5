use num_complex::Complex64;

use crate::matrix::CMatrix;

const RADIX: f64 = 2.0;
const MAX_PASSES: usize = 200;

/// Result of diagonal balancing: `matrix = D⁻¹ A D` with `D = diag(scale)`.
#[derive(Debug, Clone)]
pub struct Balanced {
    pub matrix: CMatrix,
    /// Powers of two, so the similarity is exact in floating point.
    pub scale: Vec<f64>,
}

impl Balanced {
    /// Maps an eigenvector of the balanced matrix back to one of `A`.
    pub fn unscale(&self, v: &mut [Complex64]) {
        for (x, &d) in v.iter_mut().zip(&self.scale) {
            *x *= d;
        }
    }
}

/// Parlett–Reinsch balancing without permutations.
///
/// Scales row/column pairs by powers of two until their off-diagonal 1-norms
/// are within a factor of the radix of each other.
pub fn balance(a: &CMatrix) -> Balanced {
    let n = a.dim();
    let mut m = a.clone();
    let mut scale = vec![1.0; n];

    for _ in 0..MAX_PASSES {
        let mut converged = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += m[(j, i)].l1_norm();
                    r += m[(i, j)].l1_norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / RADIX;
            while c < g {
                f *= RADIX;
                c *= RADIX * RADIX;
            }
            g = r * RADIX;
            while c >= g {
                f /= RADIX;
                c /= RADIX * RADIX;
            }
            if (c + r) / f < 0.95 * s {
                converged = false;
                scale[i] *= f;
                let inv = 1.0 / f;
                for j in 0..n {
                    m[(i, j)] *= inv;
                    m[(j, i)] *= f;
                }
            }
        }
        if converged {
            break;
        }
    }
    Balanced { matrix: m, scale }
}
