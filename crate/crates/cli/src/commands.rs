//! Subcommand implementations. Each returns a [`Document`] with a fully
//! resolved header; nothing is written here.

use serde::Serialize;

use oam_rotation::decompose::{
    adaptive_spectrum, angular_spectrum, ell_max_for, full_spectrum_with_tolerance, gaussian_approx_spectrum,
};
use oam_rotation::io::{
    coefficient_rows, coefficients_to_csv, resolution_to_csv, CoefficientRow, MonteCarloRecord, SpectrumRecord,
};
use oam_rotation::metrology::{
    interferometer_sweep, max_angular_index, resolution_table, split_detector_sweep, ApertureSpec,
    ResolutionReport, SPLIT_DETECTOR_PREFACTOR,
};
use oam_rotation::modes::{lg_amplitude, lg_cartesian, sample_field, BeamGeometry, GridSpec, ModeIndex};

use crate::error::CliError;
use crate::output::{Document, Header};

/// Grid overrides shared by the field-producing subcommands.
#[derive(Debug, Clone, Copy)]
pub struct GridOverride {
    pub samples: Option<usize>,
    pub half_extent: Option<f64>,
}

impl GridOverride {
    fn resolve(self, default: GridSpec) -> Result<GridSpec, CliError> {
        Ok(GridSpec::new(
            self.half_extent.unwrap_or(default.half_extent),
            self.samples.unwrap_or(default.samples),
        )?)
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct RadialSample {
    pub rho: f64,
    pub intensity: f64,
}

#[derive(Debug, Serialize)]
pub struct IntensityData {
    pub radial: Vec<RadialSample>,
    pub maxima: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<IntensityImage>,
}

#[derive(Debug, Serialize)]
pub struct IntensityImage {
    pub grid: GridSpec,
    /// Row-major, `y` as the row index.
    pub intensity: Vec<f64>,
}

/// Local maxima of a sampled curve, refined by a parabola through the three
/// samples around each peak.
fn radial_maxima(samples: &[RadialSample]) -> Vec<f64> {
    let peak = samples.iter().map(|s| s.intensity).fold(0.0, f64::max);
    let mut out = Vec::new();
    for w in samples.windows(3) {
        let (a, b, c) = (w[0].intensity, w[1].intensity, w[2].intensity);
        if b > a && b >= c && b > 1e-9 * peak {
            let denom = a - 2.0 * b + c;
            let shift = if denom < 0.0 { 0.5 * (a - c) / denom } else { 0.0 };
            out.push(w[1].rho + shift * (w[2].rho - w[1].rho));
        }
    }
    out
}

pub fn intensity(
    ell: i32,
    p: u32,
    aperture: f64,
    two_d: bool,
    grid: GridOverride,
    seed: u64,
) -> Result<Document<IntensityData>, CliError> {
    let aperture_spec = ApertureSpec::unit(aperture)?;
    let mode = ModeIndex::new(p, ell);
    let default = GridSpec::default_for(0.0, ell);
    let default = GridSpec { half_extent: default.half_extent.max(mode.outer_radius() + 4.0), ..default };
    let grid = grid.resolve(default)?;

    // Radial profile on [0, half_extent] with the same spacing as the 2-D grid.
    let n_radial = grid.samples.div_ceil(2);
    let step = grid.half_extent / (n_radial - 1) as f64;
    let radial: Vec<RadialSample> = (0..n_radial)
        .map(|i| {
            let rho = i as f64 * step;
            RadialSample { rho, intensity: lg_amplitude(mode, rho, 0.0, 1.0).norm_sqr() }
        })
        .collect();
    let maxima = radial_maxima(&radial);
    let outer = maxima.last().copied();
    let at_boundary = outer.is_some_and(|r| r >= aperture - step);

    let field = two_d.then(|| {
        let f = sample_field(|x, y| lg_cartesian(mode, x, y, 1.0), grid);
        IntensityImage { grid, intensity: f.values().iter().map(|v| v.norm_sqr()).collect() }
    });

    let mut csv_body = String::new();
    match &field {
        Some(img) => {
            csv_body.push_str("x,y,intensity\n");
            let coords = grid.coords();
            for (k, v) in img.intensity.iter().enumerate() {
                let (ix, iy) = (k % grid.samples, k / grid.samples);
                csv_body.push_str(&format!("{},{},{v}\n", coords[ix], coords[iy]));
            }
        }
        None => {
            csv_body.push_str("rho,intensity\n");
            for s in &radial {
                csv_body.push_str(&format!("{},{}\n", s.rho, s.intensity));
            }
        }
    }

    let header = Header::new("intensity", seed)
        .param("ell", ell)
        .param("p", p)
        .param("aperture_over_w0", aperture)
        .param("two_d", two_d)
        .param("samples", grid.samples)
        .param("half_extent", grid.half_extent)
        .result("aperture_radius", aperture)
        .result("ell_M", max_angular_index(aperture_spec))
        .result("radial_maxima", &maxima)
        .result("rings", maxima.len())
        .result("at_boundary", at_boundary);
    Ok(Document { header, csv_body, data: IntensityData { radial, maxima, field } })
}

pub fn spectrum(r0: f64, ell_max: Option<u32>, seed: u64) -> Result<Document<SpectrumRecord>, CliError> {
    let geom = BeamGeometry::unit(r0)?;
    // The tail decays super-exponentially; doubling the 1e-10 cutoff leaves
    // it far below what the variance can resolve.
    let ell_max = ell_max.unwrap_or_else(|| 2 * ell_max_for(geom, 1e-10) + 4);
    let spec = angular_spectrum(geom, ell_max)?;
    let gauss = if r0 > 0.0 { Some(gaussian_approx_spectrum(geom, ell_max)?) } else { None };
    let record = SpectrumRecord::new(r0, &spec, gauss.as_ref());

    let mut header = Header::new("spectrum", seed)
        .param("r0_over_w0", r0)
        .param("ell_max", ell_max)
        .result("mean", spec.mean)
        .result("variance", spec.variance)
        .result("truncation_mass", spec.tail_mass)
        .result("gaussian_overlay", gauss.is_some());
    if let Some(tv) = record.total_variation {
        header = header.result("total_variation", tv);
    }
    Ok(Document { header, csv_body: record.to_csv(), data: record })
}

pub fn coefficients(
    r0: f64,
    p_max: Option<u32>,
    ell_max: Option<u32>,
    tolerance: f64,
    seed: u64,
) -> Result<Document<Vec<CoefficientRow>>, CliError> {
    if !(tolerance > 0.0 && tolerance < 1.0) {
        return Err(CliError::Usage(format!("tolerance must lie in (0, 1), got {tolerance}")));
    }
    let geom = BeamGeometry::unit(r0)?;
    // Without explicit bounds, size the rectangle from the order reached by
    // the adaptive shell expansion.
    let (p_max, ell_max) = match (p_max, ell_max) {
        (Some(p), Some(l)) => (p, l),
        (p, l) => {
            let shells = adaptive_spectrum(geom, tolerance)?;
            let order = shells.coefficients.keys().map(|m| m.order()).max().unwrap_or(0);
            (p.unwrap_or(order.div_ceil(2)), l.unwrap_or(order))
        }
    };
    let spec = full_spectrum_with_tolerance(geom, p_max, ell_max, tolerance)?;
    let rows = coefficient_rows(&spec);
    let header = Header::new("coefficients", seed)
        .param("r0_over_w0", r0)
        .param("p_max", p_max)
        .param("ell_max", ell_max)
        .param("tolerance", tolerance)
        .result("captured_mass", spec.captured_mass())
        .result("truncation_mass", spec.truncation_mass);
    Ok(Document { header, csv_body: coefficients_to_csv(&rows), data: rows })
}

#[derive(Debug, Serialize)]
pub struct ResolutionData {
    #[serde(rename = "ell_M")]
    pub ell_m: u32,
    pub rows: Vec<ResolutionReport>,
}

pub fn resolution(aperture: f64, photons: &[f64], seed: u64) -> Result<Document<ResolutionData>, CliError> {
    if !(aperture > 1.0) {
        return Err(CliError::Usage(format!("aperture radius must exceed w0, got {aperture}")));
    }
    if photons.is_empty() {
        return Err(CliError::Usage("at least one photon number is required".into()));
    }
    let spec = ApertureSpec::unit(aperture)?;
    let mut rows = Vec::new();
    for &n in photons {
        rows.extend(resolution_table(spec, n)?);
    }
    let header = Header::new("resolution", seed)
        .param("aperture_over_w0", aperture)
        .param("N", photons)
        .result("ell_M", spec.max_angular_index());
    Ok(Document {
        header,
        csv_body: resolution_to_csv(spec, &rows),
        data: ResolutionData { ell_m: spec.max_angular_index(), rows },
    })
}

#[derive(Debug, Clone, Copy)]
pub enum Experiment {
    Split { r0: f64 },
    Interferometer { ell: u32 },
}

#[derive(Debug, Clone, Copy)]
pub struct SweepSettings {
    pub mean_n: f64,
    pub trials: usize,
    pub points: usize,
    pub max_signal: Option<f64>,
}

pub fn montecarlo(
    experiment: Experiment,
    settings: SweepSettings,
    seed: u64,
) -> Result<Document<MonteCarloRecord>, CliError> {
    let SweepSettings { mean_n, trials, points, max_signal } = settings;
    if points < 2 {
        return Err(CliError::Usage(format!("a sweep needs at least 2 points, got {points}")));
    }
    if !(mean_n > 0.0 && mean_n.is_finite()) {
        return Err(CliError::Usage(format!("mean photon number must be positive, got {mean_n}")));
    }
    let predicted = match experiment {
        Experiment::Split { .. } => SPLIT_DETECTOR_PREFACTOR / mean_n.sqrt(),
        Experiment::Interferometer { ell } => 1.0 / (f64::from(ell.max(1)) * mean_n.sqrt()),
    };
    let hi = max_signal.unwrap_or(2.0 * predicted);
    if !(hi > 0.0 && hi.is_finite()) {
        return Err(CliError::Usage(format!("max signal must be positive, got {hi}")));
    }
    let sweep: Vec<f64> = (0..points).map(|i| hi * i as f64 / (points - 1) as f64).collect();

    let mut header = Header::new("montecarlo", seed);
    let record = match experiment {
        Experiment::Split { r0 } => {
            header = header.param("experiment", "split").param("r0_over_w0", r0);
            let s = split_detector_sweep(BeamGeometry::unit(r0)?, mean_n, trials, seed, &sweep)?;
            MonteCarloRecord::new("split", None, &s)
        }
        Experiment::Interferometer { ell } => {
            header = header.param("experiment", "interferometer").param("ell", ell);
            let s = interferometer_sweep(ell, mean_n, trials, seed, &sweep)?;
            MonteCarloRecord::new("interferometer", Some(ell), &s)
        }
    };
    let header = header
        .param("mean_n", mean_n)
        .param("trials", trials)
        .param("points", points)
        .param("max_signal", hi)
        .result("crossing", record.crossing)
        .result("prediction", record.prediction)
        .result("relative_deviation", record.relative_deviation);
    Ok(Document { header, csv_body: record.to_csv(), data: record })
}
