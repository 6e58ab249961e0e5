//! The lattice model: unit nearest-neighbour hopping plus the on-site
//! potential `V·i·cot(π(αn + φ))`, sites numbered `n = 1..=L`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;

/// (√5 − 1)/2.
pub const GOLDEN_ALPHA: f64 = 0.618_033_988_749_894_9;

pub const DEFAULT_SITES: usize = 610;
pub const DEFAULT_SINGULAR_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Boundary {
    #[default]
    Open,
    Periodic,
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Boundary::Open => "open",
            Boundary::Periodic => "periodic",
        })
    }
}

impl FromStr for Boundary {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "open" => Ok(Boundary::Open),
            "periodic" => Ok(Boundary::Periodic),
            other => Err(Error::invalid("bc", format!("expected open or periodic, got {other:?}"))),
        }
    }
}

/// Everything needed to build the Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Number of sites `L`.
    pub sites: usize,
    /// Potential strength `V`, real and non-negative.
    pub strength: f64,
    /// Frequency `α` in (0, 1).
    pub alpha: f64,
    /// Global phase offset `φ` in [0, 1).
    pub phase: f64,
    pub boundary: Boundary,
    /// Smallest |sin(π(αn + φ))| accepted before a site counts as singular.
    pub singular_eps: f64,
}

impl Default for ModelParams {
    fn default() -> Self {
        Self {
            sites: DEFAULT_SITES,
            strength: 1.0,
            alpha: GOLDEN_ALPHA,
            phase: 0.0,
            boundary: Boundary::Open,
            singular_eps: DEFAULT_SINGULAR_EPS,
        }
    }
}

impl ModelParams {
    pub fn new(sites: usize, strength: f64) -> Self {
        Self {
            sites,
            strength,
            ..Self::default()
        }
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_phase(mut self, phase: f64) -> Self {
        self.phase = phase;
        self
    }

    pub fn with_boundary(mut self, boundary: Boundary) -> Self {
        self.boundary = boundary;
        self
    }

    pub fn with_singular_eps(mut self, eps: f64) -> Self {
        self.singular_eps = eps;
        self
    }

    /// Checks the scalar invariants. Site singularities are checked when the
    /// potential is evaluated.
    pub fn validate(&self) -> Result<()> {
        if self.sites < 2 {
            return Err(Error::invalid("L", format!("L >= 2 required, got {}", self.sites)));
        }
        validate_strength(self.strength)?;
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::invalid(
                "alpha",
                format!("0 < alpha < 1 required, got {}", self.alpha),
            ));
        }
        if !(self.phase >= 0.0 && self.phase < 1.0) {
            return Err(Error::invalid(
                "phase",
                format!("0 <= phase < 1 required, got {}", self.phase),
            ));
        }
        if !(self.singular_eps > 0.0 && self.singular_eps.is_finite()) {
            return Err(Error::invalid(
                "singular_eps",
                format!("singular_eps > 0 required, got {}", self.singular_eps),
            ));
        }
        Ok(())
    }
}

pub(crate) fn validate_strength(v: f64) -> Result<()> {
    if v >= 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid("V", format!("finite V >= 0 required, got {v}")))
    }
}

/// `V·i·cot(π(αn + φ))` for an arbitrary (not necessarily in-lattice) index,
/// shared with the transfer-matrix recursion.
pub(crate) fn cot_potential(
    n: usize,
    strength: f64,
    alpha: f64,
    phase: f64,
    singular_eps: f64,
) -> Result<Complex64> {
    // Reduce mod 1 before multiplying by π; cot has period π.
    let x = (alpha * n as f64 + phase).rem_euclid(1.0);
    let (s, c) = (PI * x).sin_cos();
    if s.abs() < singular_eps {
        return Err(Error::SingularPotential {
            site: n,
            sin_abs: s.abs(),
            eps: singular_eps,
        });
    }
    Ok(Complex64::new(0.0, strength * c / s))
}

/// On-site energy at site `n` (1-based).
pub fn potential(n: usize, p: &ModelParams) -> Result<Complex64> {
    if n == 0 || n > p.sites {
        return Err(Error::invalid(
            "n",
            format!("site index must be in 1..={}, got {n}", p.sites),
        ));
    }
    cot_potential(n, p.strength, p.alpha, p.phase, p.singular_eps)
}

/// Dense Hamiltonian matrix of the chain.
#[derive(Debug, Clone, PartialEq)]
pub struct Hamiltonian {
    matrix: CMatrix,
}

impl Hamiltonian {
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }
}

pub fn build_hamiltonian(p: &ModelParams) -> Result<Hamiltonian> {
    p.validate()?;
    let l = p.sites;
    let mut m = CMatrix::zeros(l);
    let one = Complex64::new(1.0, 0.0);
    for i in 0..l {
        m[(i, i)] = potential(i + 1, p)?;
        if i + 1 < l {
            m[(i, i + 1)] = one;
            m[(i + 1, i)] = one;
        }
    }
    if p.boundary == Boundary::Periodic {
        // L = 2 already couples the two sites; the wrap adds a second bond.
        m[(0, l - 1)] += one;
        m[(l - 1, 0)] += one;
    }
    Ok(Hamiltonian { matrix: m })
}

#[cfg(test)]
mod tests {
    use super::*;

    // 30-digit mpmath values of cot(π·frac(αn)) for the golden frequency.
    const COT_N1: f64 = -0.388_800_733_560_206_4;
    const COT_N2: f64 = 1.091_605_437_328_222;
    const COT_N610: f64 = 434.174_150_379_585_2;

    #[test]
    fn zero_strength_gives_zero_potential() {
        let p = ModelParams::new(10, 0.0);
        assert_eq!(potential(1, &p).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn potential_matches_high_precision_cot() {
        let p = ModelParams::new(10, 1.0);
        let v = potential(1, &p).unwrap();
        assert_eq!(v.re, 0.0);
        assert!((v.im - COT_N1).abs() < 1e-12, "{v}");
        let p = ModelParams::new(10, 2.5);
        assert!((potential(2, &p).unwrap().im - 2.5 * COT_N2).abs() < 1e-12);
    }

    #[test]
    fn exact_resonance_is_rejected() {
        let p = ModelParams::new(4, 1.0).with_alpha(0.5);
        match potential(2, &p) {
            Err(Error::SingularPotential { site: 2, .. }) => {}
            other => panic!("expected SingularPotential, got {other:?}"),
        }
        match build_hamiltonian(&p) {
            Err(Error::SingularPotential { site: 2, .. }) => {}
            other => panic!("expected SingularPotential, got {other:?}"),
        }
    }

    #[test]
    fn out_of_range_site_is_rejected() {
        let p = ModelParams::new(4, 1.0);
        assert!(potential(0, &p).is_err());
        assert!(potential(5, &p).is_err());
    }

    #[test]
    fn validation_rejects_bad_scalars() {
        assert!(ModelParams::new(1, 1.0).validate().is_err());
        assert!(ModelParams::new(4, -0.1).validate().is_err());
        assert!(ModelParams::new(4, f64::NAN).validate().is_err());
        assert!(ModelParams::new(4, 1.0).with_alpha(1.0).validate().is_err());
        assert!(ModelParams::new(4, 1.0).with_alpha(0.0).validate().is_err());
        assert!(ModelParams::new(4, 1.0).with_phase(1.0).validate().is_err());
        assert!(ModelParams::new(4, 1.0).with_phase(-0.2).validate().is_err());
        assert!(ModelParams::new(4, 1.0).with_singular_eps(0.0).validate().is_err());
        assert!(ModelParams::new(2, 0.0).validate().is_ok());
    }

    #[test]
    fn free_open_chain_is_plain_tridiagonal() {
        let h = build_hamiltonian(&ModelParams::new(3, 0.0)).unwrap();
        let m = h.matrix();
        let z = Complex64::new(0.0, 0.0);
        let o = Complex64::new(1.0, 0.0);
        let expected = CMatrix::from_rows(&[vec![z, o, z], vec![o, z, o], vec![z, o, z]]);
        assert_eq!(*m, expected);
    }

    #[test]
    fn two_site_chain_diagonal() {
        let h = build_hamiltonian(&ModelParams::new(2, 1.0)).unwrap();
        let m = h.matrix();
        assert!((m[(0, 0)].im - COT_N1).abs() < 1e-12);
        assert!((m[(1, 1)].im - COT_N2).abs() < 1e-12);
        assert_eq!(m[(0, 1)], Complex64::new(1.0, 0.0));
        assert_eq!(m[(1, 0)], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn reference_size_builds_and_peaks_at_last_site() {
        let h = build_hamiltonian(&ModelParams::new(610, 1.0)).unwrap();
        let m = h.matrix();
        let (arg, peak) = (0..610)
            .map(|i| (i, m[(i, i)].norm()))
            .fold((0, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        assert_eq!(arg, 609);
        assert!((peak - COT_N610).abs() / COT_N610 < 1e-9, "peak {peak}");
    }

    #[test]
    fn periodic_adds_corner_bonds() {
        let p = ModelParams::new(5, 0.7).with_boundary(Boundary::Periodic);
        let m = build_hamiltonian(&p).unwrap().into_matrix();
        assert_eq!(m[(0, 4)], Complex64::new(1.0, 0.0));
        assert_eq!(m[(4, 0)], Complex64::new(1.0, 0.0));
        let open = build_hamiltonian(&p.with_boundary(Boundary::Open)).unwrap();
        assert_eq!(open.matrix()[(0, 4)], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn hamiltonian_is_complex_symmetric() {
        for bc in [Boundary::Open, Boundary::Periodic] {
            let p = ModelParams::new(40, 1.3).with_phase(0.17).with_boundary(bc);
            let m = build_hamiltonian(&p).unwrap().into_matrix();
            assert_eq!(m.transpose(), m);
            assert_ne!(m.adjoint(), m);
        }
    }

    #[test]
    fn zero_strength_is_hermitian() {
        let p = ModelParams::new(17, 0.0).with_boundary(Boundary::Periodic);
        let m = build_hamiltonian(&p).unwrap().into_matrix();
        assert_eq!(m.adjoint(), m);
    }

    #[test]
    fn boundary_parses() {
        assert_eq!("open".parse::<Boundary>().unwrap(), Boundary::Open);
        assert_eq!("periodic".parse::<Boundary>().unwrap(), Boundary::Periodic);
        assert!("closed".parse::<Boundary>().is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn potential_is_purely_imaginary(
                n in 1usize..2000,
                v in 0.0f64..10.0,
                alpha in 0.01f64..0.99,
                phase in 0.0f64..0.999,
            ) {
                let p = ModelParams::new(2000, v).with_alpha(alpha).with_phase(phase);
                if let Ok(z) = potential(n, &p) {
                    prop_assert_eq!(z.re, 0.0);
                }
            }

            #[test]
            fn construction_is_deterministic(l in 2usize..40, v in 0.0f64..4.0, phase in 0.0f64..0.999) {
                let p = ModelParams::new(l, v).with_phase(phase);
                let a = build_hamiltonian(&p);
                let b = build_hamiltonian(&p);
                if let (Ok(a), Ok(b)) = (a, b) {
                    prop_assert_eq!(a, b);
                }
            }
        }
    }
}
