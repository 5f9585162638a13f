//! WebAssembly bindings for the browser demo.
//!
//! Three views: an LG intensity image against an aperture, the OAM spectrum
//! of a displaced Gaussian, and rotation-resolution curves versus photon
//! number. The plain-Rust functions do the work and are tested natively; the
//! `#[wasm_bindgen]` wrappers only convert errors.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use oam_rotation::decompose::{angular_spectrum, ell_max_for, gaussian_approx_spectrum};
use oam_rotation::metrology::{
    displacement_scheme_aperture_limited, heisenberg_limit, interferometric_resolution, ApertureSpec,
    PhotonStatistics,
};
use oam_rotation::modes::{lg_cartesian, sample_field, BeamGeometry, GridSpec, ModeIndex};

/// Square intensity image, normalized to a peak of 1.
#[derive(Debug, Clone, Serialize)]
pub struct IntensityView {
    pub samples: usize,
    pub half_extent: f64,
    pub aperture: f64,
    pub ell_max: u32,
    pub ring_radius: f64,
    pub pixels: Vec<f32>,
}

pub fn intensity_view(ell: i32, p: u32, aperture: f64, samples: usize) -> oam_rotation::Result<IntensityView> {
    let aperture_spec = ApertureSpec::unit(aperture)?;
    let mode = ModeIndex::new(p, ell);
    let half_extent = aperture.max(mode.outer_radius()) + 1.0;
    let field = sample_field(|x, y| lg_cartesian(mode, x, y, 1.0), GridSpec::new(half_extent, samples)?);
    let intensity: Vec<f64> = field.values().iter().map(|v| v.norm_sqr()).collect();
    let peak = intensity.iter().copied().fold(0.0, f64::max);
    Ok(IntensityView {
        samples,
        half_extent,
        aperture,
        ell_max: aperture_spec.max_angular_index(),
        ring_radius: f64::from(ell.unsigned_abs()).sqrt(),
        pixels: intensity.iter().map(|&v| if peak > 0.0 { (v / peak) as f32 } else { 0.0 }).collect(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumView {
    pub ell: Vec<i32>,
    pub probability: Vec<f64>,
    /// Same-variance Gaussian; empty for an undisplaced beam.
    pub gaussian: Vec<f64>,
    pub variance: f64,
}

pub fn spectrum_view(r0: f64) -> oam_rotation::Result<SpectrumView> {
    let geom = BeamGeometry::unit(r0)?;
    let ell_max = 2 * ell_max_for(geom, 1e-10) + 4;
    let spec = angular_spectrum(geom, ell_max)?;
    let gaussian = if r0 > 0.0 {
        gaussian_approx_spectrum(geom, ell_max)?.probabilities.iter().map(|&(_, q)| q).collect()
    } else {
        Vec::new()
    };
    Ok(SpectrumView {
        ell: spec.probabilities.iter().map(|&(l, _)| l).collect(),
        probability: spec.probabilities.iter().map(|&(_, q)| q).collect(),
        gaussian,
        variance: spec.variance,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct Curve {
    pub label: String,
    pub delta_phi: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ResolutionView {
    pub ell_max: u32,
    pub photons: Vec<f64>,
    pub curves: Vec<Curve>,
}

/// `δφ(N)` on a log-spaced grid for each scheme and statistics class.
pub fn resolution_view(aperture: f64, n_min: f64, n_max: f64, points: usize) -> oam_rotation::Result<ResolutionView> {
    let spec = ApertureSpec::unit(aperture)?;
    let ell_m = spec.max_angular_index();
    if !(n_min > 0.0 && n_max > n_min && points >= 2) {
        return Err(oam_rotation::Error::InvalidArgument(format!(
            "need 0 < n_min < n_max and at least 2 points, got {n_min}, {n_max}, {points}"
        )));
    }
    let (lo, hi) = (n_min.log10(), n_max.log10());
    let photons: Vec<f64> =
        (0..points).map(|i| 10f64.powf(lo + (hi - lo) * i as f64 / (points - 1) as f64)).collect();
    let mut curves = Vec::new();
    for stats in PhotonStatistics::ALL {
        let disp = photons
            .iter()
            .map(|&n| displacement_scheme_aperture_limited(spec, n, stats).map(|r| r.delta_phi))
            .collect::<oam_rotation::Result<_>>()?;
        curves.push(Curve { label: format!("displacement / {stats}"), delta_phi: disp });
        let interf = photons
            .iter()
            .map(|&n| interferometric_resolution(ell_m, n, stats).map(|r| r.delta_phi))
            .collect::<oam_rotation::Result<_>>()?;
        curves.push(Curve { label: format!("interferometric / {stats}"), delta_phi: interf });
    }
    let heis = photons
        .iter()
        .map(|&n| heisenberg_limit(spec, n).map(|r| r.delta_phi))
        .collect::<oam_rotation::Result<_>>()?;
    curves.push(Curve { label: "Heisenberg limit".into(), delta_phi: heis });
    Ok(ResolutionView { ell_max: ell_m, photons, curves })
}

fn to_json<T: Serialize>(r: oam_rotation::Result<T>) -> Result<String, JsError> {
    let v = r.map_err(|e| JsError::new(&e.to_string()))?;
    serde_json::to_string(&v).map_err(|e| JsError::new(&e.to_string()))
}

/// JSON-encoded [`IntensityView`].
#[wasm_bindgen(js_name = intensityView)]
pub fn intensity_view_js(ell: i32, p: u32, aperture: f64, samples: usize) -> Result<String, JsError> {
    to_json(intensity_view(ell, p, aperture, samples))
}

/// JSON-encoded [`SpectrumView`].
#[wasm_bindgen(js_name = spectrumView)]
pub fn spectrum_view_js(r0: f64) -> Result<String, JsError> {
    to_json(spectrum_view(r0))
}

/// JSON-encoded [`ResolutionView`].
#[wasm_bindgen(js_name = resolutionView)]
pub fn resolution_view_js(aperture: f64, n_min: f64, n_max: f64, points: usize) -> Result<String, JsError> {
    to_json(resolution_view(aperture, n_min, n_max, points))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intensity_peaks_on_the_ring() {
        let v = intensity_view(49, 0, 8.0, 257).unwrap();
        assert_eq!(v.ell_max, 49);
        assert_eq!(v.pixels.len(), 257 * 257);
        let (k, _) = v.pixels.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap();
        let step = 2.0 * v.half_extent / 256.0;
        let (x, y) = ((k % 257) as f64 * step - v.half_extent, (k / 257) as f64 * step - v.half_extent);
        assert!((x.hypot(y) - 7.0).abs() <= step, "{}", x.hypot(y));
        assert!(v.pixels.iter().all(|&p| (0.0..=1.0).contains(&p)));
    }

    #[test]
    fn spectrum_matches_variance() {
        let v = spectrum_view(3.0).unwrap();
        assert!((v.variance - 4.5).abs() < 1e-8);
        assert_eq!(v.ell.len(), v.gaussian.len());
        assert!(spectrum_view(0.0).unwrap().gaussian.is_empty());
        assert!(spectrum_view(-1.0).is_err());
    }

    #[test]
    fn resolution_curves_are_decreasing() {
        let v = resolution_view(8.0, 1.0, 1e6, 25).unwrap();
        assert_eq!(v.curves.len(), 7);
        for c in &v.curves {
            assert_eq!(c.delta_phi.len(), 25);
            assert!(c.delta_phi.windows(2).all(|w| w[1] < w[0]), "{}", c.label);
        }
        assert!(resolution_view(8.0, 10.0, 1.0, 5).is_err());
    }
}
