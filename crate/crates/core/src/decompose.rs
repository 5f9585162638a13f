//! Laguerre-Gaussian decomposition of the displaced Gaussian spot.
//!
//! The closed-form overlap is
//!
//! ```text
//! c_pℓ = (-1)^p √(1/((|ℓ|+p)! p!)) (r0/2w0)^{2p+|ℓ|} exp(-r0²/4w0²)
//! ```
//!
//! and summing `|c_pℓ|²` over `p` gives the angular momentum distribution
//!
//! ```text
//! P(ℓ) = exp(-r0²/2w0²) I_|ℓ|(r0²/2w0²)
//! ```
//!
//! a symmetric Skellam law with variance `r0²/2w0²`. Both exponents carry the
//! displacement `r0`, not the radial coordinate; [`coefficient_quadrature`]
//! is the independent check of that reading.
//!
//! The expansion runs over negative as well as positive `ℓ`; the coefficient
//! depends on `|ℓ|` only.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::modes::{lg_cartesian, BeamGeometry, ModeIndex, SampledField};
use crate::specfun::{bessel_i_scaled, log_factorial};
use crate::{Error, Result};

/// Default bound on the probability mass a truncated spectrum may leave out.
pub const TRUNCATION_TOLERANCE: f64 = 1e-10;

/// Closed-form coefficient `c_pℓ` of the displaced Gaussian, evaluated in
/// log space.
pub fn coefficient_analytic(mode: ModeIndex, geom: BeamGeometry) -> f64 {
    let ratio = geom.r0_over_w0();
    let power = mode.order();
    let sign = if mode.p.is_multiple_of(2) { 1.0 } else { -1.0 };
    if ratio == 0.0 {
        return if power == 0 { 1.0 } else { 0.0 };
    }
    let log_mag = -0.5 * (log_factorial(mode.abs_ell() + mode.p) + log_factorial(mode.p))
        + f64::from(power) * (0.5 * ratio).ln()
        - 0.25 * ratio * ratio;
    sign * log_mag.exp()
}

/// Overlap `∫∫ conj(u_pℓ) u dx dy` of a sampled field with a unit-waist LG
/// mode, by the trapezoidal rule on the field's grid.
///
/// The mode is evaluated directly from its Laguerre form, so this is
/// independent of the generating-function route behind
/// [`coefficient_analytic`]. Fails when the mode's outer turning radius comes
/// within `4 w0` of the grid edge.
pub fn coefficient_quadrature(mode: ModeIndex, field: &SampledField) -> Result<Complex64> {
    let grid = *field.grid();
    let usable = grid.half_extent - 4.0;
    let required = mode.outer_radius();
    if required > usable {
        return Err(Error::GridTooSmall { required, available: usable });
    }
    let n = grid.samples;
    let coords = grid.coords();
    let rows = crate::map_indexed(n, |iy| {
        let y = coords[iy];
        let mut acc = Complex64::new(0.0, 0.0);
        for (ix, &x) in coords.iter().enumerate() {
            let u = field.at(ix, iy);
            if u.re == 0.0 && u.im == 0.0 {
                continue;
            }
            acc += lg_cartesian(mode, x, y, 1.0).conj() * u * grid.weight(ix);
        }
        acc * grid.weight(iy)
    });
    Ok(rows.into_iter().sum())
}

/// `P(ℓ) = e^{-z} I_|ℓ|(z)` with `z = r0²/2w0²`.
pub fn angular_probability(ell: i32, geom: BeamGeometry) -> f64 {
    let ratio = geom.r0_over_w0();
    bessel_i_scaled(ell.unsigned_abs(), 0.5 * ratio * ratio)
}

/// Truncated set of LG coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LGSpectrum {
    pub coefficients: BTreeMap<ModeIndex, Complex64>,
    pub p_max: u32,
    pub ell_max: u32,
    /// `1 - Σ|c|²` over the retained modes, clamped at zero.
    pub truncation_mass: f64,
}

impl LGSpectrum {
    pub fn from_coefficients(coefficients: BTreeMap<ModeIndex, Complex64>) -> Self {
        let p_max = coefficients.keys().map(|m| m.p).max().unwrap_or(0);
        let ell_max = coefficients.keys().map(|m| m.abs_ell()).max().unwrap_or(0);
        let captured: f64 = coefficients.values().map(|c| c.norm_sqr()).sum();
        Self {
            coefficients,
            p_max,
            ell_max,
            truncation_mass: (1.0 - captured).max(0.0),
        }
    }

    pub fn captured_mass(&self) -> f64 {
        self.coefficients.values().map(|c| c.norm_sqr()).sum()
    }

    pub fn get(&self, mode: ModeIndex) -> Complex64 {
        self.coefficients.get(&mode).copied().unwrap_or_default()
    }

    /// `Σ_p |c_pℓ|²` over the retained radial indices.
    pub fn marginal(&self, ell: i32) -> f64 {
        self.coefficients
            .iter()
            .filter(|(m, _)| m.ell == ell)
            .map(|(_, c)| c.norm_sqr())
            .sum()
    }

    /// `Σ c_pℓ u_pℓ` on `grid`, unit waist.
    pub fn synthesize(&self, grid: crate::GridSpec) -> SampledField {
        let terms: Vec<(ModeIndex, Complex64)> = self
            .coefficients
            .iter()
            .filter(|(_, c)| c.norm_sqr() > 0.0)
            .map(|(&m, &c)| (m, c))
            .collect();
        crate::modes::sample_field(
            |x, y| terms.iter().map(|&(m, c)| c * lg_cartesian(m, x, y, 1.0)).sum(),
            grid,
        )
    }
}

/// All `c_pℓ` with `p ≤ p_max` and `|ℓ| ≤ ell_max`, failing when the left-out
/// mass exceeds [`TRUNCATION_TOLERANCE`].
pub fn full_spectrum(geom: BeamGeometry, p_max: u32, ell_max: u32) -> Result<LGSpectrum> {
    full_spectrum_with_tolerance(geom, p_max, ell_max, TRUNCATION_TOLERANCE)
}

pub fn full_spectrum_with_tolerance(
    geom: BeamGeometry,
    p_max: u32,
    ell_max: u32,
    tolerance: f64,
) -> Result<LGSpectrum> {
    let ell_max_i = i32::try_from(ell_max).map_err(|_| Error::invalid("ell_max too large"))?;
    let mut coefficients = BTreeMap::new();
    for p in 0..=p_max {
        for ell in -ell_max_i..=ell_max_i {
            let mode = ModeIndex::new(p, ell);
            coefficients.insert(mode, Complex64::new(coefficient_analytic(mode, geom), 0.0));
        }
    }
    let spectrum = LGSpectrum {
        truncation_mass: 0.0,
        p_max,
        ell_max,
        coefficients,
    };
    let truncation_mass = (1.0 - spectrum.captured_mass()).max(0.0);
    if truncation_mass > tolerance {
        return Err(Error::TruncationUnreachable { deficit: truncation_mass, tolerance });
    }
    Ok(LGSpectrum { truncation_mass, ..spectrum })
}

/// Grows shells of constant `2p + |ℓ|` until the missing mass drops below
/// `tolerance`.
pub fn adaptive_spectrum(geom: BeamGeometry, tolerance: f64) -> Result<LGSpectrum> {
    const MAX_ORDER: u32 = 4000;
    let mut coefficients = BTreeMap::new();
    let mut captured = 0.0;
    for order in 0..=MAX_ORDER {
        for p in 0..=order / 2 {
            let abs_ell = order - 2 * p;
            let ell = abs_ell as i32;
            for e in if ell == 0 { vec![0] } else { vec![ell, -ell] } {
                let mode = ModeIndex::new(p, e);
                let c = coefficient_analytic(mode, geom);
                captured += c * c;
                coefficients.insert(mode, Complex64::new(c, 0.0));
            }
        }
        // Shell masses follow a Poisson law in the order with mean r0²/2w0²,
        // so stop once past the mean and under tolerance.
        let mean_order = 0.5 * geom.r0_over_w0().powi(2);
        if f64::from(order) > mean_order && 1.0 - captured < tolerance {
            return Ok(LGSpectrum::from_coefficients(coefficients));
        }
    }
    Err(Error::TruncationUnreachable { deficit: 1.0 - captured, tolerance })
}

/// Angular momentum distribution over `-ell_max..=ell_max`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngularSpectrum {
    /// `(ℓ, P(ℓ))` in increasing `ℓ`.
    pub probabilities: Vec<(i32, f64)>,
    pub mean: f64,
    pub variance: f64,
    /// Probability outside the retained range.
    pub tail_mass: f64,
}

impl AngularSpectrum {
    fn from_probabilities(probabilities: Vec<(i32, f64)>) -> Self {
        let total: f64 = probabilities.iter().map(|&(_, p)| p).sum();
        let mean: f64 = probabilities.iter().map(|&(l, p)| f64::from(l) * p).sum::<f64>() / total;
        let variance = probabilities
            .iter()
            .map(|&(l, p)| (f64::from(l) - mean).powi(2) * p)
            .sum::<f64>()
            / total;
        Self {
            probabilities,
            mean,
            variance,
            tail_mass: (1.0 - total).max(0.0),
        }
    }

    pub fn total(&self) -> f64 {
        self.probabilities.iter().map(|&(_, p)| p).sum()
    }

    pub fn get(&self, ell: i32) -> f64 {
        self.probabilities
            .iter()
            .find(|&&(l, _)| l == ell)
            .map(|&(_, p)| p)
            .unwrap_or(0.0)
    }

    pub fn std_dev(&self) -> f64 {
        self.variance.sqrt()
    }

    /// `½ Σ |P - Q|` over the union of retained `ℓ`.
    pub fn total_variation(&self, other: &AngularSpectrum) -> f64 {
        let mut ells: Vec<i32> = self
            .probabilities
            .iter()
            .chain(&other.probabilities)
            .map(|&(l, _)| l)
            .collect();
        ells.sort_unstable();
        ells.dedup();
        0.5 * ells.iter().map(|&l| (self.get(l) - other.get(l)).abs()).sum::<f64>()
    }
}

/// `P(ℓ)` for `|ℓ| ≤ ell_max`; fails when the tail beyond `ell_max` holds
/// more than [`TRUNCATION_TOLERANCE`].
pub fn angular_spectrum(geom: BeamGeometry, ell_max: u32) -> Result<AngularSpectrum> {
    let ell_max = i32::try_from(ell_max).map_err(|_| Error::invalid("ell_max too large"))?;
    let probabilities: Vec<(i32, f64)> =
        (-ell_max..=ell_max).map(|l| (l, angular_probability(l, geom))).collect();
    let spectrum = AngularSpectrum::from_probabilities(probabilities);
    if spectrum.tail_mass > TRUNCATION_TOLERANCE {
        return Err(Error::TruncationUnreachable {
            deficit: spectrum.tail_mass,
            tolerance: TRUNCATION_TOLERANCE,
        });
    }
    Ok(spectrum)
}

/// Discrete Gaussian `∝ exp(-ℓ²/2Δℓ²)` with `Δℓ = r0/(√2 w0)`, normalized
/// over `|ℓ| ≤ ell_max`.
pub fn gaussian_approx_spectrum(geom: BeamGeometry, ell_max: u32) -> Result<AngularSpectrum> {
    let ratio = geom.r0_over_w0();
    if ratio == 0.0 {
        return Err(Error::invalid("gaussian approximation needs r0 > 0 (zero variance)"));
    }
    let ell_max = i32::try_from(ell_max).map_err(|_| Error::invalid("ell_max too large"))?;
    let var = 0.5 * ratio * ratio;
    let raw: Vec<(i32, f64)> = (-ell_max..=ell_max)
        .map(|l| (l, (-f64::from(l).powi(2) / (2.0 * var)).exp()))
        .collect();
    let norm: f64 = raw.iter().map(|&(_, p)| p).sum();
    let probabilities = raw.into_iter().map(|(l, p)| (l, p / norm)).collect();
    let mut spectrum = AngularSpectrum::from_probabilities(probabilities);
    spectrum.tail_mass = 0.0;
    Ok(spectrum)
}

/// Smallest `ell_max` whose `P(ℓ)` tail stays under `tolerance`.
pub fn ell_max_for(geom: BeamGeometry, tolerance: f64) -> u32 {
    let mut captured = angular_probability(0, geom);
    let mut ell = 0u32;
    while 1.0 - captured > tolerance && ell < 100_000 {
        ell += 1;
        captured += 2.0 * angular_probability(ell as i32, geom);
    }
    ell
}
