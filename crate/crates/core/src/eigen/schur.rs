use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;

pub const DEFAULT_MAX_SWEEPS: usize = 40;
pub const DEFAULT_DEFLATION_TOL: f64 = 1e-14;

/// `A = Z·T·Z*` with `T` upper triangular and `Z` unitary.
#[derive(Debug, Clone)]
pub struct SchurDecomposition {
    pub t: CMatrix,
    pub z: CMatrix,
}

impl SchurDecomposition {
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        self.t.diagonal()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QrOptions {
    /// QR sweeps allowed per deflated eigenvalue.
    pub max_sweeps: usize,
    /// Relative deflation threshold on subdiagonal entries.
    pub tol: f64,
}

impl Default for QrOptions {
    fn default() -> Self {
        Self {
            max_sweeps: DEFAULT_MAX_SWEEPS,
            tol: DEFAULT_DEFLATION_TOL,
        }
    }
}

/// Complex Schur form of an upper Hessenberg matrix.
pub fn schur(h: &CMatrix, opts: &QrOptions) -> Result<SchurDecomposition> {
    let mut t = h.clone();
    let mut z = CMatrix::identity(h.dim());
    schur_in_place(&mut t, &mut z, opts)?;
    Ok(SchurDecomposition { t, z })
}

/// Plane rotation `G = [[c, s], [-conj(s), c]]` with `G·[a, b]ᵀ = [r, 0]ᵀ`.
#[derive(Debug, Clone, Copy)]
struct Givens {
    c: f64,
    s: Complex64,
}

impl Givens {
    fn zeroing(a: Complex64, b: Complex64) -> Self {
        if b == Complex64::new(0.0, 0.0) {
            return Self {
                c: 1.0,
                s: Complex64::new(0.0, 0.0),
            };
        }
        let an = a.norm();
        if an == 0.0 {
            return Self {
                c: 0.0,
                s: b.conj() / b.norm(),
            };
        }
        let nrm = an.hypot(b.norm());
        Self {
            c: an / nrm,
            s: (a / an) * b.conj() / nrm,
        }
    }

    /// Rows `i, i+1` of `m`, columns `cols`.
    fn apply_left(&self, m: &mut CMatrix, i: usize, cols: std::ops::Range<usize>) {
        for j in cols {
            let x = m[(i, j)];
            let y = m[(i + 1, j)];
            m[(i, j)] = x * self.c + self.s * y;
            m[(i + 1, j)] = -self.s.conj() * x + y * self.c;
        }
    }

    /// Columns `i, i+1` of `m` times `G*`, rows `rows`.
    fn apply_right(&self, m: &mut CMatrix, i: usize, rows: std::ops::Range<usize>) {
        for r in rows {
            let x = m[(r, i)];
            let y = m[(r, i + 1)];
            m[(r, i)] = x * self.c + self.s.conj() * y;
            m[(r, i + 1)] = -self.s * x + y * self.c;
        }
    }
}

/// Eigenvalue of the trailing 2×2 block closest to its bottom-right entry.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half_tr = (a + d) * 0.5;
    let disc = ((a - d) * 0.5).powu(2) + b * c;
    let root = disc.sqrt();
    let l1 = half_tr + root;
    let l2 = half_tr - root;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Reduces Hessenberg `t` to upper triangular form in place, accumulating the
/// rotations into `z` (pass the Hessenberg `Q` to get the full transform).
pub(crate) fn schur_in_place(t: &mut CMatrix, z: &mut CMatrix, opts: &QrOptions) -> Result<()> {
    let n = t.dim();
    if n == 0 {
        return Ok(());
    }
    let zero = Complex64::new(0.0, 0.0);
    let mut hi = n - 1;
    let mut iter = 0usize;

    while hi > 0 {
        // Find the start of the unreduced block ending at `hi`.
        let mut lo = hi;
        while lo > 0 {
            let sub = t[(lo, lo - 1)].norm();
            let mut scale = t[(lo - 1, lo - 1)].norm() + t[(lo, lo)].norm();
            if scale == 0.0 {
                scale = block_norm(t, lo - 1, hi);
            }
            if sub <= opts.tol * scale || sub < f64::MIN_POSITIVE {
                t[(lo, lo - 1)] = zero;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            iter = 0;
            continue;
        }

        iter += 1;
        if iter > opts.max_sweeps {
            return Err(Error::NoConvergence { index: hi });
        }

        let shift = if iter.is_multiple_of(10) {
            // Exceptional shift to break cycles.
            t[(hi, hi)] + t[(hi, hi - 1)].norm() * 0.75
        } else {
            wilkinson_shift(
                t[(hi - 1, hi - 1)],
                t[(hi - 1, hi)],
                t[(hi, hi - 1)],
                t[(hi, hi)],
            )
        };

        // Implicit single-shift QR sweep on rows/columns lo..=hi.
        let mut g = Givens::zeroing(t[(lo, lo)] - shift, t[(lo + 1, lo)]);
        for k in lo..hi {
            if k > lo {
                g = Givens::zeroing(t[(k, k - 1)], t[(k + 1, k - 1)]);
            }
            let first_col = if k > lo { k - 1 } else { k };
            g.apply_left(t, k, first_col..n);
            if k > lo {
                t[(k + 1, k - 1)] = zero;
            }
            g.apply_right(t, k, 0..(k + 3).min(hi + 1));
            g.apply_right(z, k, 0..n);
        }
    }

    for i in 1..n {
        for j in 0..i {
            t[(i, j)] = zero;
        }
    }
    Ok(())
}

fn block_norm(t: &CMatrix, lo: usize, hi: usize) -> f64 {
    let mut s = 0.0;
    for i in lo..=hi {
        for j in lo.max(i.saturating_sub(1))..=hi {
            s += t[(i, j)].norm_sqr();
        }
    }
    s.sqrt()
}
