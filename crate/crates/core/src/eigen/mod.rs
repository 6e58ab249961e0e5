//! Dense eigensolver for general complex matrices.
//!
//! Pipeline: diagonal balancing, Householder reduction to Hessenberg form,
//! implicitly shifted complex QR down to Schur form, then eigenvectors by
//! back-substitution on the triangular factor. The transforms are undone in
//! reverse order and every vector is normalized and gauge-fixed.

mod balance;
mod hessenberg;
mod schur;
mod vectors;

use std::cmp::Ordering;

use num_complex::Complex64;

pub use balance::{balance, Balanced};
pub use hessenberg::{hessenberg, HessenbergForm};
pub use schur::{schur, QrOptions, SchurDecomposition, DEFAULT_DEFLATION_TOL, DEFAULT_MAX_SWEEPS};

use crate::error::Result;
use crate::matrix::CMatrix;

/// Eigenvalue with its unit-norm right eigenvector.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenpair {
    pub value: Complex64,
    /// ‖ψ‖₂ = 1, first significant entry real and positive.
    pub vector: Vec<Complex64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenOptions {
    pub balance: bool,
    pub qr: QrOptions,
}

impl Default for EigenOptions {
    fn default() -> Self {
        Self {
            balance: true,
            qr: QrOptions::default(),
        }
    }
}

/// Canonical spectrum order: ascending real part, then imaginary part.
pub fn canonical_cmp(a: &Complex64, b: &Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// All eigenpairs of `a` in canonical order.
pub fn eigenpairs(a: &CMatrix) -> Result<Vec<Eigenpair>> {
    eigenpairs_with(a, &EigenOptions::default())
}

pub fn eigenpairs_with(a: &CMatrix, opts: &EigenOptions) -> Result<Vec<Eigenpair>> {
    let n = a.dim();
    let balanced = if opts.balance {
        balance(a)
    } else {
        Balanced {
            matrix: a.clone(),
            scale: vec![1.0; n],
        }
    };
    let HessenbergForm { h, q } = hessenberg(&balanced.matrix);
    let mut t = h;
    let mut z = q;
    schur::schur_in_place(&mut t, &mut z, &opts.qr)?;

    let tri = vectors::triangular_eigenvectors(&t)?;
    let mut pairs: Vec<Eigenpair> = tri
        .into_iter()
        .enumerate()
        .map(|(k, x)| {
            let mut v: Vec<Complex64> = (0..n)
                .map(|r| {
                    let zr = z.row(r);
                    x.iter().zip(zr).map(|(xj, zj)| xj * zj).sum()
                })
                .collect();
            balanced.unscale(&mut v);
            normalize_and_fix_gauge(&mut v);
            Eigenpair {
                value: t[(k, k)],
                vector: v,
            }
        })
        .collect();
    pairs.sort_by(|p, q| canonical_cmp(&p.value, &q.value));
    Ok(pairs)
}

/// Eigenvalues only, in canonical order.
pub fn eigenvalues(a: &CMatrix) -> Result<Vec<Complex64>> {
    eigenvalues_with(a, &EigenOptions::default())
}

pub fn eigenvalues_with(a: &CMatrix, opts: &EigenOptions) -> Result<Vec<Complex64>> {
    let m = if opts.balance {
        balance(a).matrix
    } else {
        a.clone()
    };
    let hf = hessenberg(&m);
    let s = schur(&hf.h, &opts.qr)?;
    let mut ev = s.eigenvalues();
    ev.sort_by(canonical_cmp);
    Ok(ev)
}

fn normalize_and_fix_gauge(v: &mut [Complex64]) {
    let inf = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if inf == 0.0 {
        return;
    }
    // Pre-scale by the max entry so the 2-norm cannot overflow.
    for z in v.iter_mut() {
        *z /= inf;
    }
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let pivot = v
        .iter()
        .position(|z| z.norm() > 1e-8)
        .expect("max entry is 1 after pre-scaling");
    let rot = v[pivot].conj() / v[pivot].norm();
    for z in v.iter_mut() {
        *z = *z * rot / norm;
    }
    v[pivot].im = 0.0;
}

/// Residual ‖Aψ − Eψ‖₂.
pub fn residual(a: &CMatrix, pair: &Eigenpair) -> f64 {
    a.mul_vec(&pair.vector)
        .iter()
        .zip(&pair.vector)
        .map(|(av, v)| (av - pair.value * v).norm_sqr())
        .sum::<f64>()
        .sqrt()
}
