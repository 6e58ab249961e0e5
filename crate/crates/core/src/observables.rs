//! Per-state diagnostics: inverse participation ratio and the
//! real-band / imaginary-axis classification of eigenvalues.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::eigen::Eigenpair;
use crate::error::{Error, Result};
use crate::lyapunov::{band_interval, le_analytic};
use crate::model::ModelParams;

pub const DEFAULT_RE_TOL: f64 = 1e-6;
pub const DEFAULT_IM_TOL: f64 = 1e-6;
const NORM_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpectralTag {
    RealBand,
    ImaginaryAxis,
    Other,
}

impl SpectralTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            SpectralTag::RealBand => "real_band",
            SpectralTag::ImaginaryAxis => "imaginary_axis",
            SpectralTag::Other => "other",
        }
    }
}

impl fmt::Display for SpectralTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SpectralTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "real_band" => Ok(SpectralTag::RealBand),
            "imaginary_axis" => Ok(SpectralTag::ImaginaryAxis),
            "other" => Ok(SpectralTag::Other),
            _ => Err(Error::invalid("class", format!("unknown class {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub re_tol: f64,
    pub im_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            re_tol: DEFAULT_RE_TOL,
            im_tol: DEFAULT_IM_TOL,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        if !(self.re_tol > 0.0 && self.re_tol.is_finite()) {
            return Err(Error::invalid("re_tol", format!("must be > 0, got {}", self.re_tol)));
        }
        if !(self.im_tol > 0.0 && self.im_tol.is_finite()) {
            return Err(Error::invalid("im_tol", format!("must be > 0, got {}", self.im_tol)));
        }
        Ok(())
    }
}

/// A tag together with the tolerances that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralClass {
    pub tag: SpectralTag,
    pub re_tol: f64,
    pub im_tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateDiagnostics {
    pub ipr: f64,
    pub class: SpectralClass,
    pub gamma_analytic: f64,
}

/// Σ|ψ_n|⁴ of a unit vector.
pub fn ipr(psi: &[Complex64]) -> Result<f64> {
    let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized { norm });
    }
    Ok(psi.iter().map(|z| z.norm_sqr().powi(2)).sum())
}

/// RealBand when `|Im E| ≤ im_tol` and `Re E` lies in the band widened by
/// `re_tol`; ImaginaryAxis when `|Re E| ≤ re_tol` and `|Im E| > im_tol`;
/// Other otherwise.
pub fn classify(energy: Complex64, strength: f64, tol: Tolerances) -> SpectralClass {
    let in_band = band_interval(strength)
        .map(|b| b.contains(energy.re, tol.re_tol))
        .unwrap_or(false);
    let tag = if energy.im.abs() <= tol.im_tol && in_band {
        SpectralTag::RealBand
    } else if energy.re.abs() <= tol.re_tol && energy.im.abs() > tol.im_tol {
        SpectralTag::ImaginaryAxis
    } else {
        SpectralTag::Other
    };
    SpectralClass {
        tag,
        re_tol: tol.re_tol,
        im_tol: tol.im_tol,
    }
}

/// IPR, class and closed-form exponent for each pair, order preserved.
pub fn diagnose_spectrum(
    pairs: &[Eigenpair],
    p: &ModelParams,
    tol: Tolerances,
) -> Result<Vec<StateDiagnostics>> {
    tol.validate()?;
    pairs
        .iter()
        .map(|pair| {
            Ok(StateDiagnostics {
                ipr: ipr(&pair.vector)?,
                class: classify(pair.value, p.strength, tol),
                gamma_analytic: le_analytic(pair.value, p.strength)?,
            })
        })
        .collect()
}

/// Median of a sample; `None` when empty.
pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    Some(if v.len().is_multiple_of(2) {
        0.5 * (v[mid - 1] + v[mid])
    } else {
        v[mid]
    })
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
    fn ipr_reference_vectors() {
        let uniform = vec![c(0.1, 0.0); 100];
        assert!((ipr(&uniform).unwrap() - 0.01).abs() < 1e-15);

        let mut delta = vec![c(0.0, 0.0); 10];
        delta[3] = c(0.0, 1.0);
        assert_eq!(ipr(&delta).unwrap(), 1.0);

        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((ipr(&[c(h, 0.0), c(0.0, -h), c(0.0, 0.0)]).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn ipr_rejects_unnormalized() {
        assert!(matches!(ipr(&[c(1.0, 0.0), c(1.0, 0.0)]), Err(Error::NotNormalized { .. })));
    }

    #[test]
    fn classification_examples() {
        let tol = Tolerances::default();
        assert_eq!(classify(c(0.5, 0.0), 1.0, tol).tag, SpectralTag::RealBand);
        assert_eq!(classify(c(0.0, 3.0), 3.0, tol).tag, SpectralTag::ImaginaryAxis);
        assert_eq!(classify(c(1.0, 1.0), 1.0, tol).tag, SpectralTag::Other);
    }

    #[test]
    fn band_edge_margin_is_re_tol_only() {
        let tol = Tolerances::default();
        assert_eq!(classify(c(1.0 + 0.9e-6, 0.0), 1.0, tol).tag, SpectralTag::RealBand);
        assert_eq!(classify(c(1.0 + 1.1e-6, 0.0), 1.0, tol).tag, SpectralTag::Other);
        // Real energy outside the band, away from zero.
        assert_eq!(classify(c(1.5, 0.0), 1.0, tol).tag, SpectralTag::Other);
        // No band at all above V = 2.
        assert_eq!(classify(c(0.0, 0.0), 2.5, tol).tag, SpectralTag::Other);
    }

    #[test]
    fn free_chain_is_extended_and_on_band() {
        let p = ModelParams::new(100, 0.0);
        let pairs = eigenpairs(build_hamiltonian(&p).unwrap().matrix()).unwrap();
        let diag = diagnose_spectrum(&pairs, &p, Tolerances::default()).unwrap();
        assert_eq!(diag.len(), 100);
        for d in &diag {
            assert_eq!(d.class.tag, SpectralTag::RealBand);
            assert!(d.ipr <= 0.03, "ipr {}", d.ipr);
            assert_eq!(d.gamma_analytic, 0.0);
        }
    }

    #[test]
    fn median_handles_even_and_odd() {
        assert_eq!(median(&[]), None);
        assert_eq!(median(&[3.0, 1.0, 2.0]), Some(2.0));
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), Some(2.5));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn ipr_bounds(raw in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 2..200)) {
                let norm = raw.iter().map(|(a, b)| a * a + b * b).sum::<f64>().sqrt();
                prop_assume!(norm > 1e-3);
                let psi: Vec<Complex64> = raw.iter().map(|&(a, b)| c(a / norm, b / norm)).collect();
                let x = ipr(&psi).unwrap();
                let l = psi.len() as f64;
                prop_assert!(x >= 1.0 / l - 1e-12 && x <= 1.0 + 1e-12);
            }

            #[test]
            fn exactly_one_tag(re in -4.0f64..4.0, im in -4.0f64..4.0, v in 0.0f64..3.0) {
                let tol = Tolerances::default();
                let t = classify(c(re, im), v, tol).tag;
                let real = im.abs() <= tol.im_tol
                    && band_interval(v).map(|b| b.contains(re, tol.re_tol)).unwrap_or(false);
                let imag = re.abs() <= tol.re_tol && im.abs() > tol.im_tol;
                prop_assert!(!(real && imag));
                prop_assert_eq!(t == SpectralTag::RealBand, real);
                prop_assert_eq!(t == SpectralTag::ImaginaryAxis, imag);
            }
        }
    }
}
