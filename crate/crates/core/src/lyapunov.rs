//! Lyapunov exponent of the eigen-equation: closed form and transfer-matrix
//! estimate.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{cot_potential, validate_strength, ModelParams};

pub const DEFAULT_STEPS: usize = 100_000;
pub const DEFAULT_BURN_IN: usize = 1_000;

/// Closed interval of real energies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandInterval {
    pub lower: f64,
    pub upper: f64,
}

impl BandInterval {
    /// Membership with the interval widened by `margin` on both sides.
    pub fn contains(&self, x: f64, margin: f64) -> bool {
        x >= self.lower - margin && x <= self.upper + margin
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

/// Real band `[V−2, 2−V]` of zero-exponent energies; empty above `V = 2`.
pub fn band_interval(strength: f64) -> Option<BandInterval> {
    (strength <= 2.0).then_some(BandInterval {
        lower: strength - 2.0,
        upper: 2.0 - strength,
    })
}

/// `arcosh((|z+2| + |z−2|)/4)`, i.e. `arcosh(1 + t)`.
///
/// `t` is assembled from non-negative pieces so that it is exactly zero for
/// real `z` in `[-2, 2]`, instead of going through `x − 1` with `x ≈ 1`.
fn branch(z: Complex64) -> Result<f64> {
    if !z.is_finite() {
        return Err(Error::Domain {
            argument: f64::NAN,
        });
    }
    let (a, b) = (z.re, z.im);
    let b2 = b * b;
    let plus = a + 2.0;
    let minus = a - 2.0;
    let p = plus.hypot(b);
    let q = minus.hypot(b);
    // |z+2| + |z−2| − 4
    let mut excess = 2.0 * (a.abs() - 2.0).max(0.0);
    if b2 > 0.0 {
        excess += b2 / (p + plus.abs()) + b2 / (q + minus.abs());
    }
    let t = excess / 4.0;
    if t < 0.0 {
        return Err(Error::Domain { argument: 1.0 + t });
    }
    Ok((t + (t * (t + 2.0)).sqrt()).ln_1p())
}

/// Closed-form exponent: the larger of the two cot-cocycle branches.
pub fn le_analytic(energy: Complex64, strength: f64) -> Result<f64> {
    validate_strength(strength)?;
    let g1 = branch(energy + strength)?;
    let g2 = branch(energy - strength)?;
    Ok(g1.max(g2))
}

/// Output of the transfer-matrix estimator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LyapunovEstimate {
    /// max(0, log_growth / (n_steps − burn_in)).
    pub gamma: f64,
    pub n_steps: usize,
    pub burn_in: usize,
    /// Sum of log rescale factors after the burn-in.
    pub log_growth: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferOptions {
    pub n_steps: usize,
    pub burn_in: usize,
    /// Phase used along the orbit in place of the model's phase.
    pub seed_phase: f64,
    pub start: [Complex64; 2],
}

impl Default for TransferOptions {
    fn default() -> Self {
        Self {
            n_steps: DEFAULT_STEPS,
            burn_in: DEFAULT_BURN_IN,
            seed_phase: 0.0,
            start: [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        }
    }
}

/// Growth rate of `(ψ_{n+1}, ψ_n)` under the transfer matrices
/// `[[E − V·i·cot(π(αn + φ)), −1], [1, 0]]`, `n = 1..=n_steps`.
///
/// Only `p.strength`, `p.alpha` and `p.singular_eps` are read from `p`.
pub fn le_transfer(
    energy: Complex64,
    p: &ModelParams,
    opts: &TransferOptions,
) -> Result<LyapunovEstimate> {
    validate_strength(p.strength)?;
    if opts.n_steps <= opts.burn_in {
        return Err(Error::invalid(
            "steps",
            format!("n_steps ({}) must exceed burn_in ({})", opts.n_steps, opts.burn_in),
        ));
    }
    if !energy.is_finite() {
        return Err(Error::invalid("E", "energy must be finite"));
    }
    let norm0 = opts.start[0].norm().hypot(opts.start[1].norm());
    if norm0 == 0.0 || !norm0.is_finite() {
        return Err(Error::invalid("start", "start vector must be nonzero"));
    }

    let mut u = opts.start[0] / norm0;
    let mut w = opts.start[1] / norm0;
    let mut log_growth = 0.0;
    for n in 1..=opts.n_steps {
        let v_n = cot_potential(n, p.strength, p.alpha, opts.seed_phase, p.singular_eps)?;
        let next = (energy - v_n) * u - w;
        w = u;
        u = next;
        let scale = u.norm().hypot(w.norm());
        u /= scale;
        w /= scale;
        if n > opts.burn_in {
            log_growth += scale.ln();
        }
    }
    let ratio = log_growth / (opts.n_steps - opts.burn_in) as f64;
    Ok(LyapunovEstimate {
        gamma: ratio.max(0.0),
        n_steps: opts.n_steps,
        burn_in: opts.burn_in,
        log_growth,
    })
}
