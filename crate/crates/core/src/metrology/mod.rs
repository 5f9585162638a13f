//! Minimum detectable rotation for the displacement and interferometric
//! schemes.
//!
//! Every result comes back as a [`ResolutionReport`] tagged with the formula
//! that produced it. Only the twin-number interferometer carries a numeric
//! prefactor (2.24); the squeezed and twin-number factors `f(N)` are pure
//! scalings with unit prefactor.

mod montecarlo;

pub use montecarlo::{
    interferometer_sweep, mc_interferometer, mc_split_detector, snr_crossing, split_detector_sweep,
    McStats, SnrPoint, SnrSweep, CHUNK_TRIALS,
};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::modes::BeamGeometry;
use crate::{Error, Result};

/// Prefactor of the twin-number (`|N/2⟩|N/2⟩`) interferometer limit.
pub const TWIN_NUMBER_PREFACTOR: f64 = 2.24;

/// `√π / 2`, the split-detector prefactor.
pub const SPLIT_DETECTOR_PREFACTOR: f64 = 0.886_226_925_452_758;

/// Rotator radius and beam waist.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ApertureSpec {
    pub radius: f64,
    pub w0: f64,
}

impl ApertureSpec {
    pub fn new(radius: f64, w0: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite() && w0 > 0.0 && w0.is_finite()) {
            return Err(Error::invalid(format!(
                "aperture radius and waist must be positive (R = {radius}, w0 = {w0})"
            )));
        }
        Ok(Self { radius, w0 })
    }

    pub fn unit(radius_over_w0: f64) -> Result<Self> {
        Self::new(radius_over_w0, 1.0)
    }

    /// Largest transmitted angular index, see [`max_angular_index`].
    pub fn max_angular_index(&self) -> u32 {
        max_angular_index(*self)
    }
}

/// `ℓ_M = ⌊(R/w0 - 1)²⌋`, zero when `R ≤ w0`.
///
/// The ring of a `p = 0` mode sits at `w0 √ℓ` and is treated as lost once
/// ring plus one waist reaches the aperture edge.
pub fn max_angular_index(aperture: ApertureSpec) -> u32 {
    let margin = aperture.radius / aperture.w0 - 1.0;
    if margin <= 0.0 {
        return 0;
    }
    let sq = margin * margin;
    // Exact squares such as (8 - 1)² must not floor to 48.
    (sq * (1.0 + 1e-12)).floor().min(f64::from(u32::MAX)) as u32
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PhotonStatistics {
    /// Coherent light, the shot-noise limit `N^{-1/2}`.
    Coherent,
    /// Coherent Gaussian mode plus a strongly squeezed flipped mode, `N^{-3/4}`.
    SqueezedFlipped,
    /// Two modes in number states `|N/2⟩`, `N^{-1}`.
    TwinNumber,
}

impl PhotonStatistics {
    pub const ALL: [PhotonStatistics; 3] = [
        PhotonStatistics::Coherent,
        PhotonStatistics::SqueezedFlipped,
        PhotonStatistics::TwinNumber,
    ];

    pub fn exponent(self) -> f64 {
        match self {
            PhotonStatistics::Coherent => -0.5,
            PhotonStatistics::SqueezedFlipped => -0.75,
            PhotonStatistics::TwinNumber => -1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PhotonStatistics::Coherent => "coherent",
            PhotonStatistics::SqueezedFlipped => "squeezed_flipped",
            PhotonStatistics::TwinNumber => "twin_number",
        }
    }
}

impl fmt::Display for PhotonStatistics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for PhotonStatistics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "coherent" => Ok(PhotonStatistics::Coherent),
            "squeezed_flipped" | "squeezed" => Ok(PhotonStatistics::SqueezedFlipped),
            "twin_number" | "twin" => Ok(PhotonStatistics::TwinNumber),
            other => Err(Error::invalid(format!("unknown photon statistics '{other}'"))),
        }
    }
}

fn check_photons(n: f64) -> Result<()> {
    if n > 0.0 && n.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(format!("mean photon number must be positive, got {n}")))
    }
}

/// `f(N)`.
pub fn statistical_factor(stats: PhotonStatistics, n: f64) -> Result<f64> {
    check_photons(n)?;
    Ok(match stats {
        PhotonStatistics::Coherent => 1.0 / n.sqrt(),
        PhotonStatistics::SqueezedFlipped => n.powf(-0.75),
        PhotonStatistics::TwinNumber => 1.0 / n,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    Displacement,
    Interferometric,
}

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Scheme::Displacement => "displacement",
            Scheme::Interferometric => "interferometric",
        }
    }
}

pub mod formula {
    pub const DISPLACEMENT_GEOMETRIC: &str = "displacement/geometric";
    pub const DISPLACEMENT_APERTURE: &str = "displacement/aperture-limited";
    pub const INTERFEROMETRIC: &str = "interferometric";
    pub const HEISENBERG: &str = "heisenberg/twin-number";
}

/// A minimum detectable rotation and how it was obtained.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResolutionReport {
    pub scheme: Scheme,
    #[serde(rename = "N")]
    pub n_photons: f64,
    /// `ℓ` for the interferometer or the displaced beam's `(r0/w0)²`,
    /// `ℓ_M` for aperture-limited results.
    pub ell: f64,
    pub stats: PhotonStatistics,
    pub delta_phi: f64,
    pub formula: String,
    /// Combined dependence on photon number and angular momentum.
    pub scaling: String,
}

fn n_scaling(stats: PhotonStatistics) -> &'static str {
    match stats {
        PhotonStatistics::Coherent => "N^(-1/2)",
        PhotonStatistics::SqueezedFlipped => "N^(-3/4)",
        PhotonStatistics::TwinNumber => "N^(-1)",
    }
}

/// `Δφ ≥ 1/(2ΔL)` with `ΔL` in units of `ħ`.
pub fn angle_uncertainty_lower_bound(delta_l: f64) -> Result<f64> {
    if !(delta_l > 0.0 && delta_l.is_finite()) {
        return Err(Error::invalid(format!("angular momentum spread must be positive, got {delta_l}")));
    }
    Ok(0.5 / delta_l)
}

/// Angle and angular momentum spreads, the latter in units of `ħ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UncertaintyPair {
    pub delta_phi: f64,
    pub delta_l: f64,
}

impl UncertaintyPair {
    pub fn product(&self) -> f64 {
        self.delta_phi * self.delta_l
    }

    /// The displaced Gaussian far off axis: `Δℓ = r0/(√2 w0)` and
    /// `Δφ = w0/(√2 r0)`, a minimum uncertainty product.
    pub fn displaced_gaussian(geom: BeamGeometry) -> Result<Self> {
        let ratio = geom.r0_over_w0();
        if ratio == 0.0 {
            return Err(Error::invalid("on-axis Gaussian has no angular spread"));
        }
        Ok(Self {
            delta_phi: 1.0 / (2f64.sqrt() * ratio),
            delta_l: ratio / 2f64.sqrt(),
        })
    }
}

/// Split-detector limit `Δx = (√π w0/2) f(N)`.
pub fn min_displacement(w0: f64, n: f64, stats: PhotonStatistics) -> Result<f64> {
    if !(w0 > 0.0) {
        return Err(Error::invalid(format!("beam waist must be positive, got {w0}")));
    }
    Ok(SPLIT_DETECTOR_PREFACTOR * w0 * statistical_factor(stats, n)?)
}

/// `δφ = (√π w0 / 2 r0) f(N)`.
pub fn displacement_scheme_resolution(
    geom: BeamGeometry,
    n: f64,
    stats: PhotonStatistics,
) -> Result<ResolutionReport> {
    if geom.r0 == 0.0 {
        return Err(Error::invalid("displacement scheme needs an off-axis beam (r0 > 0)"));
    }
    let delta_phi = SPLIT_DETECTOR_PREFACTOR * geom.w0 / geom.r0 * statistical_factor(stats, n)?;
    Ok(ResolutionReport {
        scheme: Scheme::Displacement,
        n_photons: n,
        ell: geom.r0_over_w0().powi(2),
        stats,
        delta_phi,
        formula: formula::DISPLACEMENT_GEOMETRIC.into(),
        scaling: format!("{} (r0/w0)^(-1)", n_scaling(stats)),
    })
}

/// `δφ = (√π/2) ℓ_M^{-1/2} f(N)`, the displacement scheme with the spot
/// pushed out to `r0 = R - w0`.
pub fn displacement_scheme_aperture_limited(
    aperture: ApertureSpec,
    n: f64,
    stats: PhotonStatistics,
) -> Result<ResolutionReport> {
    let ell_m = max_angular_index(aperture);
    if ell_m == 0 {
        return Err(Error::invalid("aperture transmits no angular momentum (l_M = 0)"));
    }
    let delta_phi = SPLIT_DETECTOR_PREFACTOR / f64::from(ell_m).sqrt() * statistical_factor(stats, n)?;
    let scaling = match stats {
        PhotonStatistics::Coherent => "(N ell_M)^(-1/2)".to_string(),
        other => format!("{} ell_M^(-1/2)", n_scaling(other)),
    };
    Ok(ResolutionReport {
        scheme: Scheme::Displacement,
        n_photons: n,
        ell: f64::from(ell_m),
        stats,
        delta_phi,
        formula: formula::DISPLACEMENT_APERTURE.into(),
        scaling,
    })
}

/// `δφ = f(N)/ℓ` for an angular momentum eigenmode in one interferometer arm.
pub fn interferometric_resolution(ell: u32, n: f64, stats: PhotonStatistics) -> Result<ResolutionReport> {
    if ell == 0 {
        return Err(Error::invalid("interferometric scheme needs ell >= 1"));
    }
    let delta_phi = statistical_factor(stats, n)? / f64::from(ell);
    Ok(ResolutionReport {
        scheme: Scheme::Interferometric,
        n_photons: n,
        ell: f64::from(ell),
        stats,
        delta_phi,
        formula: formula::INTERFEROMETRIC.into(),
        scaling: format!("{} ell^(-1)", n_scaling(stats)),
    })
}

/// `δφ = 2.24 / (ℓ_M N)` for twin-number inputs at the largest transmitted `ℓ`.
pub fn heisenberg_limit(aperture: ApertureSpec, n: f64) -> Result<ResolutionReport> {
    check_photons(n)?;
    let ell_m = max_angular_index(aperture);
    if ell_m == 0 {
        return Err(Error::invalid("aperture transmits no angular momentum (l_M = 0)"));
    }
    Ok(ResolutionReport {
        scheme: Scheme::Interferometric,
        n_photons: n,
        ell: f64::from(ell_m),
        stats: PhotonStatistics::TwinNumber,
        delta_phi: TWIN_NUMBER_PREFACTOR / (f64::from(ell_m) * n),
        formula: formula::HEISENBERG.into(),
        scaling: "(N ell_M)^(-1)".into(),
    })
}

/// Every scheme and statistics class at one aperture and photon number,
/// plus the Heisenberg row, sorted by decreasing `δφ`.
pub fn resolution_table(aperture: ApertureSpec, n: f64) -> Result<Vec<ResolutionReport>> {
    let ell_m = max_angular_index(aperture);
    let mut rows = Vec::with_capacity(7);
    for stats in PhotonStatistics::ALL {
        rows.push(displacement_scheme_aperture_limited(aperture, n, stats)?);
        rows.push(interferometric_resolution(ell_m, n, stats)?);
    }
    rows.push(heisenberg_limit(aperture, n)?);
    rows.sort_by(|a, b| b.delta_phi.total_cmp(&a.delta_phi));
    Ok(rows)
}
