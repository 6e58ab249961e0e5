//! Test-only oracles, independent of the QR eigensolver.

#![allow(dead_code)]

use quasispec::Complex64;

/// Roots of the characteristic polynomial of the symmetric tridiagonal matrix
/// with diagonal `diag` and unit off-diagonals.
///
/// Coefficients come from the three-term recurrence
/// `p_k(E) = (E − d_k)·p_{k−1}(E) − p_{k−2}(E)`; roots are found with
/// Durand–Kerner and then polished by Newton steps that evaluate the
/// recurrence directly.
pub fn tridiagonal_char_roots(diag: &[Complex64]) -> Vec<Complex64> {
    let n = diag.len();
    let coeffs = char_poly(diag);
    let bound = 1.0
        + coeffs[..n]
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * (0.5 * bound)).collect();

    for _ in 0..5000 {
        let mut delta: f64 = 0.0;
        for i in 0..n {
            let zi = roots[i];
            let mut denom = Complex64::new(1.0, 0.0);
            for (j, &zj) in roots.iter().enumerate() {
                if j != i {
                    denom *= zi - zj;
                }
            }
            let step = horner(&coeffs, zi) / denom;
            roots[i] = zi - step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 * bound {
            break;
        }
    }
    for r in roots.iter_mut() {
        for _ in 0..20 {
            let (p, dp) = recurrence(diag, *r);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            *r -= step;
            if step.norm() < 1e-16 * r.norm().max(1.0) {
                break;
            }
        }
    }
    roots
}

/// Monic coefficients, lowest degree first (`coeffs[n] = 1`).
fn char_poly(diag: &[Complex64]) -> Vec<Complex64> {
    let zero = Complex64::new(0.0, 0.0);
    let mut prev2: Vec<Complex64> = vec![];
    let mut prev: Vec<Complex64> = vec![Complex64::new(1.0, 0.0)];
    for &d in diag {
        let mut next = vec![zero; prev.len() + 1];
        for (k, &c) in prev.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= d * c;
        }
        for (k, &c) in prev2.iter().enumerate() {
            next[k] -= c;
        }
        prev2 = prev;
        prev = next;
    }
    prev
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// `(p_n(E), p_n'(E))` by the recurrence.
fn recurrence(diag: &[Complex64], e: Complex64) -> (Complex64, Complex64) {
    let (mut p2, mut p1) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
    let (mut d2, mut d1) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    for (k, &d) in diag.iter().enumerate() {
        let (p, dp) = if k == 0 {
            (e - d, Complex64::new(1.0, 0.0))
        } else {
            ((e - d) * p1 - p2, p1 + (e - d) * d1 - d2)
        };
        p2 = p1;
        p1 = p;
        d2 = d1;
        d1 = dp;
    }
    (p1, d1)
}

/// Largest distance under a greedy nearest-neighbour matching of two
/// equal-size multisets.
pub fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for x in a {
        let (j, d) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, y)| (j, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .unwrap();
        used[j] = true;
        worst = worst.max(d);
    }
    worst
}

/// Open free chain of `l` sites: `2cos(kπ/(l+1))`, ascending.
pub fn free_chain_levels(l: usize) -> Vec<f64> {
    let mut v: Vec<f64> = (1..=l)
        .map(|k| 2.0 * (k as f64 * std::f64::consts::PI / (l as f64 + 1.0)).cos())
        .collect();
    v.sort_by(f64::total_cmp);
    v
}
