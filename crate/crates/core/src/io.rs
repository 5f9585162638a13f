//! Tabular and JSON encodings of fields, spectra, resolution tables and Monte
//! Carlo sweeps.
//!
//! CSV bodies carry a single header row; JSON records are plain serde
//! structs so callers can wrap them in their own envelopes.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::decompose::{AngularSpectrum, LGSpectrum};
use crate::metrology::{ApertureSpec, ResolutionReport, SnrSweep};
use crate::modes::{GridSpec, SampledField};

/// Row-major `x,y,re,im`.
pub fn field_to_csv(field: &SampledField) -> String {
    let mut out = String::from("x,y,re,im\n");
    for (x, y, v) in field.iter_nodes() {
        let _ = writeln!(out, "{x},{y},{},{}", v.re, v.im);
    }
    out
}

/// `{grid, values}` envelope of a sampled field; `values` holds `[re, im]`
/// pairs in row-major order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldRecord {
    pub grid: GridSpec,
    pub values: Vec<[f64; 2]>,
}

impl From<&SampledField> for FieldRecord {
    fn from(field: &SampledField) -> Self {
        Self {
            grid: *field.grid(),
            values: field.values().iter().map(|v| [v.re, v.im]).collect(),
        }
    }
}

impl FieldRecord {
    pub fn into_field(self) -> crate::Result<SampledField> {
        let values = self
            .values
            .into_iter()
            .map(|[re, im]| crate::Complex64::new(re, im))
            .collect();
        SampledField::from_values(self.grid, values)
    }
}

/// `{"r0_over_w0", "P", "variance", "truncation_mass"}`, plus the
/// same-variance Gaussian when one exists.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRecord {
    pub r0_over_w0: f64,
    #[serde(rename = "P")]
    pub probabilities: Vec<(i32, f64)>,
    pub variance: f64,
    pub truncation_mass: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub gaussian: Option<Vec<(i32, f64)>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub total_variation: Option<f64>,
}

impl SpectrumRecord {
    pub fn new(r0_over_w0: f64, spectrum: &AngularSpectrum, gaussian: Option<&AngularSpectrum>) -> Self {
        Self {
            r0_over_w0,
            probabilities: spectrum.probabilities.clone(),
            variance: spectrum.variance,
            truncation_mass: spectrum.tail_mass,
            gaussian: gaussian.map(|g| g.probabilities.clone()),
            total_variation: gaussian.map(|g| spectrum.total_variation(g)),
        }
    }

    /// `ell,P` with a `P_gauss` column when the Gaussian is present.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        match &self.gaussian {
            Some(g) => {
                out.push_str("ell,P,P_gauss\n");
                for (&(l, p), &(_, q)) in self.probabilities.iter().zip(g) {
                    let _ = writeln!(out, "{l},{p},{q}");
                }
            }
            None => {
                out.push_str("ell,P\n");
                for &(l, p) in &self.probabilities {
                    let _ = writeln!(out, "{l},{p}");
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoefficientRow {
    pub p: u32,
    pub ell: i32,
    pub c: f64,
    pub abs_sq: f64,
}

/// Coefficient table in `(p, ℓ)` order. The displaced Gaussian has real
/// coefficients; the real part is reported.
pub fn coefficient_rows(spectrum: &LGSpectrum) -> Vec<CoefficientRow> {
    spectrum
        .coefficients
        .iter()
        .map(|(m, c)| CoefficientRow { p: m.p, ell: m.ell, c: c.re, abs_sq: c.norm_sqr() })
        .collect()
}

pub fn coefficients_to_csv(rows: &[CoefficientRow]) -> String {
    let mut out = String::from("p,ell,c,abs_sq\n");
    for r in rows {
        let _ = writeln!(out, "{},{},{},{}", r.p, r.ell, r.c, r.abs_sq);
    }
    out
}

/// `N,ell_M,scheme,stats,delta_phi,formula`.
pub fn resolution_to_csv(aperture: ApertureSpec, rows: &[ResolutionReport]) -> String {
    let ell_m = aperture.max_angular_index();
    let mut out = String::from("N,ell_M,scheme,stats,delta_phi,formula\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.n_photons,
            ell_m,
            r.scheme.name(),
            r.stats.name(),
            r.delta_phi,
            r.formula
        );
    }
    out
}

/// Monte Carlo run: configuration, SNR curve and crossing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloRecord {
    pub experiment: String,
    pub seed: u64,
    pub trials: usize,
    pub mean_n: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ell: Option<u32>,
    pub sweep: Vec<f64>,
    pub snr: Vec<f64>,
    pub mean_signal: Vec<f64>,
    pub signal_std: Vec<f64>,
    pub crossing: Option<f64>,
    pub prediction: f64,
    pub relative_deviation: Option<f64>,
}

impl MonteCarloRecord {
    pub fn new(experiment: &str, ell: Option<u32>, sweep: &SnrSweep) -> Self {
        Self {
            experiment: experiment.into(),
            seed: sweep.seed,
            trials: sweep.trials,
            mean_n: sweep.mean_n,
            ell,
            sweep: sweep.points.iter().map(|p| p.signal).collect(),
            snr: sweep.points.iter().map(|p| p.snr).collect(),
            mean_signal: sweep.points.iter().map(|p| p.mean).collect(),
            signal_std: sweep.points.iter().map(|p| p.std).collect(),
            crossing: sweep.crossing,
            prediction: sweep.prediction,
            relative_deviation: sweep.relative_deviation,
        }
    }

    /// `signal,mean,std,snr`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("signal,mean,std,snr\n");
        for i in 0..self.sweep.len() {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                self.sweep[i], self.mean_signal[i], self.signal_std[i], self.snr[i]
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::{angular_spectrum, full_spectrum, gaussian_approx_spectrum};
    use crate::metrology::resolution_table;
    use crate::modes::{sample_field, BeamGeometry};
    use crate::Complex64;

    #[test]
    fn field_csv_layout() {
        let grid = GridSpec::new(1.0, 16).unwrap();
        let f = sample_field(Complex64::new, grid);
        let csv = field_to_csv(&f);
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "x,y,re,im");
        assert_eq!(lines.len(), 1 + 256);
        assert_eq!(lines[1], "-1,-1,-1,-1");
        // Second row starts after 16 x-values of the first.
        assert!(lines[17].starts_with("-1,-0.8666"));
    }

    #[test]
    fn field_record_roundtrip() {
        let grid = GridSpec::new(2.0, 16).unwrap();
        let f = sample_field(|x, y| Complex64::new(x * y, x - y), grid);
        let json = serde_json::to_string(&FieldRecord::from(&f)).unwrap();
        assert!(json.starts_with("{\"grid\":{\"half_extent\":2.0,\"samples\":16},\"values\":[["));
        let back: FieldRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back.into_field().unwrap(), f);
    }

    #[test]
    fn spectrum_record_shape() {
        let g = BeamGeometry::unit(3.0).unwrap();
        let s = angular_spectrum(g, 40).unwrap();
        let gs = gaussian_approx_spectrum(g, 40).unwrap();
        let rec = SpectrumRecord::new(3.0, &s, Some(&gs));
        let v: serde_json::Value = serde_json::to_value(&rec).unwrap();
        assert_eq!(v["r0_over_w0"], 3.0);
        assert_eq!(v["P"].as_array().unwrap().len(), 81);
        assert_eq!(v["P"][40][0], 0);
        assert!((v["variance"].as_f64().unwrap() - 4.5).abs() < 1e-8);
        assert!(v["truncation_mass"].as_f64().unwrap() < 1e-10);
        assert!(rec.to_csv().starts_with("ell,P,P_gauss\n-40,"));

        let s0 = angular_spectrum(BeamGeometry::unit(0.0).unwrap(), 2).unwrap();
        let rec0 = SpectrumRecord::new(0.0, &s0, None);
        assert_eq!(rec0.to_csv(), "ell,P\n-2,0\n-1,0\n0,1\n1,0\n2,0\n");
        assert!(serde_json::to_value(&rec0).unwrap().get("gaussian").is_none());
    }

    #[test]
    fn coefficient_table() {
        let s = full_spectrum(BeamGeometry::unit(0.0).unwrap(), 1, 1).unwrap();
        let csv = coefficients_to_csv(&coefficient_rows(&s));
        assert!(csv.starts_with("p,ell,c,abs_sq\n0,-1,0,0\n0,0,1,1\n"));
    }

    #[test]
    fn resolution_csv_and_json() {
        let ap = ApertureSpec::unit(8.0).unwrap();
        let rows = resolution_table(ap, 100.0).unwrap();
        let csv = resolution_to_csv(ap, &rows);
        assert!(csv.starts_with("N,ell_M,scheme,stats,delta_phi,formula\n100,49,displacement,coherent,"));
        let v = serde_json::to_value(&rows[0]).unwrap();
        for key in ["scheme", "N", "ell", "stats", "delta_phi", "formula"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
    }
}
