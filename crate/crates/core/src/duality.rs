//! Fourier-space check of eigenstates.
//!
//! With `f(θ) = L^{-1/2} Σ_n e^{iθn} ψ_n` on the grid `θ_m = 2πm/L`, a rational
//! frequency `α = p/L` and periodic closure, the eigen-equation becomes the
//! two-point relation
//!
//! ```text
//! e^{2πiφ}·[cos(θ+2πα) − V/2 − E/2]·f(θ+2πα) = [cos θ + V/2 − E/2]·f(θ)
//! ```
//!
//! obtained by multiplying the on-site term through by `e^{2πi(αn+φ)} − 1`.
//! [`dual_residual`] measures how far a vector is from satisfying it.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{Boundary, ModelParams};

/// Fourier amplitudes on the grid `θ_m = 2πm/L`, `m = 0..L`.
#[derive(Debug, Clone, PartialEq)]
pub struct DualState {
    pub values: Vec<Complex64>,
    pub norm: f64,
}

impl DualState {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Frequency `numerator / denominator`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RationalAlpha {
    pub numerator: u64,
    pub denominator: u64,
}

impl RationalAlpha {
    pub fn value(&self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }
}

fn roots_of_unity(l: usize) -> Vec<Complex64> {
    (0..l)
        .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / l as f64))
        .collect()
}

fn norm2(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `f(θ_m) = L^{-1/2} Σ_{n=1..L} e^{iθ_m n} ψ_n`.
pub fn fourier_dual(psi: &[Complex64]) -> Result<DualState> {
    let l = psi.len();
    if l < 2 {
        return Err(Error::invalid("L", format!("L >= 2 required, got {l}")));
    }
    let w = roots_of_unity(l);
    let s = 1.0 / (l as f64).sqrt();
    let values: Vec<Complex64> = (0..l)
        .map(|m| {
            psi.iter()
                .enumerate()
                .map(|(i, &x)| w[(m * (i + 1)) % l] * x)
                .sum::<Complex64>()
                * s
        })
        .collect();
    let norm = norm2(&values);
    Ok(DualState { values, norm })
}

/// Inverse of [`fourier_dual`].
pub fn inverse_fourier_dual(f: &DualState) -> Vec<Complex64> {
    let l = f.values.len();
    let w = roots_of_unity(l);
    let s = 1.0 / (l as f64).sqrt();
    (1..=l)
        .map(|n| {
            f.values
                .iter()
                .enumerate()
                .map(|(m, &x)| w[(m * n) % l].conj() * x)
                .sum::<Complex64>()
                * s
        })
        .collect()
}

/// Residual of the dual relation over the grid, divided by ‖f‖₂ and by the
/// largest coefficient modulus. Zero for the zero vector.
pub fn dual_residual(
    f: &DualState,
    energy: Complex64,
    strength: f64,
    alpha: RationalAlpha,
    phase: f64,
) -> Result<f64> {
    let l = f.values.len();
    if alpha.denominator != l as u64 {
        return Err(Error::GridMismatch {
            denominator: alpha.denominator,
            len: l,
        });
    }
    if f.norm == 0.0 {
        return Ok(0.0);
    }
    let shift = (alpha.numerator % alpha.denominator) as usize;
    let twist = Complex64::from_polar(1.0, 2.0 * PI * phase);
    let step = 2.0 * PI / l as f64;
    let half_e = energy * 0.5;
    let half_v = strength * 0.5;

    let mut acc = 0.0;
    let mut coeff_max: f64 = 0.0;
    for m in 0..l {
        let shifted = (m + shift) % l;
        let a = twist * ((step * shifted as f64).cos() - half_v - half_e);
        let b = Complex64::new((step * m as f64).cos() + half_v, 0.0) - half_e;
        coeff_max = coeff_max.max(a.norm()).max(b.norm());
        acc += (a * f.values[shifted] - b * f.values[m]).norm_sqr();
    }
    if coeff_max == 0.0 {
        return Ok(0.0);
    }
    Ok(acc.sqrt() / (f.norm * coeff_max))
}

/// `F_{k−1}/F_k` when `sites = F_k` is a Fibonacci number (≥ 2).
pub fn fibonacci_approximant(sites: usize) -> Option<RationalAlpha> {
    let (mut prev, mut cur) = (1u64, 2u64);
    while (cur as usize) < sites {
        let next = prev + cur;
        prev = cur;
        cur = next;
    }
    (cur as usize == sites).then_some(RationalAlpha {
        numerator: prev,
        denominator: cur,
    })
}

/// Phase used for duality runs: keeps `αn + φ` off the integers for `α = p/L`.
pub fn duality_phase(sites: usize) -> f64 {
    1.0 / (2.0 * sites as f64)
}

/// Model parameters for a duality run: Fibonacci approximant, phase
/// `1/(2L)`, periodic closure.
pub fn duality_params(sites: usize, strength: f64) -> Result<(ModelParams, RationalAlpha)> {
    let alpha = fibonacci_approximant(sites).ok_or_else(|| {
        Error::invalid(
            "L",
            format!("duality checks need a Fibonacci L (e.g. 89, 144, 377, 610), got {sites}"),
        )
    })?;
    let p = ModelParams::new(sites, strength)
        .with_alpha(alpha.value())
        .with_phase(duality_phase(sites))
        .with_boundary(Boundary::Periodic);
    p.validate()?;
    Ok((p, alpha))
}

/// Residuals of `samples` random unit vectors, the `i`-th paired with
/// `energies[i % energies.len()]`.
pub fn random_residuals(
    energies: &[Complex64],
    strength: f64,
    alpha: RationalAlpha,
    phase: f64,
    samples: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    if energies.is_empty() {
        return Err(Error::invalid("energies", "at least one energy is required"));
    }
    let l = alpha.denominator as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|i| {
            let psi = random_unit_vector(&mut rng, l);
            let f = fourier_dual(&psi)?;
            dual_residual(&f, energies[i % energies.len()], strength, alpha, phase)
        })
        .collect()
}

pub(crate) fn random_unit_vector(rng: &mut ChaCha8Rng, len: usize) -> Vec<Complex64> {
    let mut v: Vec<Complex64> = (0..len)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    let n = norm2(&v);
    for z in &mut v {
        *z /= n;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::eigenpairs;
    use crate::model::build_hamiltonian;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn delta_at_first_site() {
        let mut psi = vec![c(0.0, 0.0); 4];
        psi[0] = c(1.0, 0.0);
        let f = fourier_dual(&psi).unwrap();
        for (m, v) in f.values.iter().enumerate() {
            let theta = 2.0 * PI * m as f64 / 4.0;
            assert!((v - Complex64::from_polar(0.5, theta)).norm() < 1e-15);
        }
    }

    #[test]
    fn uniform_vector_is_concentrated_at_zero_mode() {
        let s = 1.0 / 8f64.sqrt();
        let f = fourier_dual(&[c(s, 0.0); 8]).unwrap();
        assert!((f.values[0].norm() - 1.0).abs() < 1e-12);
        for v in &f.values[1..] {
            assert!(v.norm() <= 1e-12);
        }
    }

    #[test]
    fn short_input_rejected() {
        assert!(fourier_dual(&[c(1.0, 0.0)]).is_err());
    }

    #[test]
    fn zero_vector_has_zero_residual() {
        let f = fourier_dual(&[c(0.0, 0.0); 8]).unwrap();
        let a = fibonacci_approximant(8).unwrap();
        assert_eq!(dual_residual(&f, c(0.3, 0.0), 1.0, a, 1.0 / 16.0).unwrap(), 0.0);
    }

    #[test]
    fn grid_mismatch_is_reported() {
        let f = fourier_dual(&[c(0.5, 0.0); 4]).unwrap();
        let a = RationalAlpha {
            numerator: 3,
            denominator: 5,
        };
        assert!(matches!(
            dual_residual(&f, c(0.0, 0.0), 1.0, a, 0.1),
            Err(Error::GridMismatch { denominator: 5, len: 4 })
        ));
    }

    #[test]
    fn fibonacci_lookup() {
        assert_eq!(
            fibonacci_approximant(610),
            Some(RationalAlpha { numerator: 377, denominator: 610 })
        );
        assert_eq!(
            fibonacci_approximant(144),
            Some(RationalAlpha { numerator: 89, denominator: 144 })
        );
        assert_eq!(fibonacci_approximant(2), Some(RationalAlpha { numerator: 1, denominator: 2 }));
        assert_eq!(fibonacci_approximant(100), None);
        assert!(duality_params(100, 1.0).is_err());
    }

    #[test]
    fn eigenstates_satisfy_dual_relation() {
        let (p, alpha) = duality_params(144, 1.0).unwrap();
        let h = build_hamiltonian(&p).unwrap();
        let pairs = eigenpairs(h.matrix()).unwrap();
        let mut worst: f64 = 0.0;
        for pair in &pairs {
            let f = fourier_dual(&pair.vector).unwrap();
            worst = worst.max(dual_residual(&f, pair.value, 1.0, alpha, p.phase).unwrap());
        }
        assert!(worst <= 1e-9, "worst eigenstate residual {worst}");
        let energies: Vec<Complex64> = pairs.iter().map(|p| p.value).collect();
        let random = random_residuals(&energies, 1.0, alpha, p.phase, 20, 7).unwrap();
        assert!(random.iter().all(|&r| r >= 0.1), "{random:?}");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn unitary_and_invertible(seed in any::<u64>(), l in 2usize..80) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let psi: Vec<Complex64> = (0..l)
                    .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                    .collect();
                let f = fourier_dual(&psi).unwrap();
                prop_assert!((f.norm - norm2(&psi)).abs() <= 1e-10);
                let back = inverse_fourier_dual(&f);
                for (x, y) in back.iter().zip(&psi) {
                    prop_assert!((x - y).norm() <= 1e-10);
                }
            }
        }
    }
}
