//! Acceptance criteria, one line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so the PASS/FAIL table is
//! always printed; the process exits non-zero if any criterion fails.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use oam_rotation::decompose::{
    angular_probability, angular_spectrum, coefficient_analytic, coefficient_quadrature, full_spectrum,
    LGSpectrum,
};
use oam_rotation::metrology::{
    displacement_scheme_aperture_limited, heisenberg_limit, interferometer_sweep, interferometric_resolution,
    max_angular_index, split_detector_sweep, ApertureSpec, PhotonStatistics,
};
use oam_rotation::modes::{displaced_gaussian, lg_cartesian, sample_field, BeamGeometry, GridSpec, ModeIndex};
use oam_rotation::rotation::{rotate_field, rotate_spectrum, RotationAngle};
use oam_rotation::Complex64;

type Outcome = Result<String, String>;

struct Criterion {
    id: &'static str,
    title: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Aperture bound and the ℓ = 49 bright ring.
fn c1_aperture_bound() -> Outcome {
    let ell_m = max_angular_index(ApertureSpec::unit(8.0).unwrap());
    let grid = GridSpec::default_for(0.0, 49);
    let field = sample_field(|x, y| lg_cartesian(ModeIndex::new(0, 49), x, y, 1.0), grid);
    let (x, y, _) = field.peak();
    let r = x.hypot(y);
    let tol = grid.spacing();
    check(
        ell_m == 49 && (r - 7.0).abs() <= tol,
        format!("l_M = {ell_m}, ring at r = {r:.4} w0 (tolerance {tol:.4} at {0}x{0})", grid.samples),
    )
}

/// Closed-form coefficients against overlap quadrature.
fn c2_oracle_equivalence() -> Outcome {
    let grid = GridSpec::new(16.0, 512).unwrap();
    let mut worst = (0.0f64, ModeIndex::new(0, 0), 0.0);
    for r0 in [0.5, 1.0, 3.0] {
        let geom = BeamGeometry::unit(r0).unwrap();
        let field = sample_field(|x, y| displaced_gaussian(geom, x, y).into(), grid);
        for p in 0..=10u32 {
            for ell in -15..=15 {
                let mode = ModeIndex::new(p, ell);
                let q = coefficient_quadrature(mode, &field).map_err(|e| e.to_string())?;
                let a = coefficient_analytic(mode, geom);
                let err = (q - Complex64::new(a, 0.0)).norm();
                if err > worst.0 {
                    worst = (err, mode, r0);
                }
            }
        }
    }
    check(
        worst.0 < 1e-8,
        format!(
            "max |analytic - quadrature| = {:.2e} at (p={}, l={}), r0/w0 = {} over 1023 coefficients",
            worst.0, worst.1.p, worst.1.ell, worst.2
        ),
    )
}

/// Normalization, marginalization and variance of P(ℓ).
fn c3_spectrum_identities() -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    for (r0, ell_max, p_max) in [(3.0, 60u32, 60u32), (10.0, 160, 160)] {
        let geom = BeamGeometry::unit(r0).unwrap();
        let spec = angular_spectrum(geom, ell_max).map_err(|e| e.to_string())?;
        let norm_err = (spec.total() - 1.0).abs();
        let coeffs = full_spectrum(geom, p_max, ell_max).map_err(|e| e.to_string())?;
        let marg_err = (-(ell_max as i32)..=ell_max as i32)
            .map(|l| (coeffs.marginal(l) - angular_probability(l, geom)).abs())
            .fold(0.0, f64::max);
        let var_err = (spec.variance - 0.5 * r0 * r0).abs();
        ok &= norm_err < 1e-10 && marg_err < 1e-8 && var_err < 1e-8;
        details.push(format!(
            "r0={r0}: |sum P - 1| = {norm_err:.1e}, max marginal err = {marg_err:.1e}, var err = {var_err:.1e}"
        ));
    }
    check(ok, details.join("; "))
}

/// Real-space rotation of LG modes equals a uniform phase e^{iℓδφ}.
fn c4_rotation_as_phase() -> Outcome {
    let mut worst = (0.0f64, 0, 0.0);
    for ell in [1, 7, 49] {
        let grid = GridSpec::default_for(0.0, ell);
        let field = sample_field(|x, y| lg_cartesian(ModeIndex::new(0, ell), x, y, 1.0), grid);
        for dphi in [0.01, 0.2] {
            let rotated = rotate_field(&field, RotationAngle::new(dphi).unwrap());
            let phase = Complex64::from_polar(1.0, f64::from(ell) * dphi);
            let expected = field.map(|v| v * phase);
            let err = rotated.field.max_abs_diff(&expected).map_err(|e| e.to_string())?;
            if err > worst.0 {
                worst = (err, ell, dphi);
            }
        }
    }
    check(
        worst.0 < 1e-3,
        format!("max abs error {:.2e} (l = {}, dphi = {}) at 512x512", worst.0, worst.1, worst.2),
    )
}

/// Real-space and mode-space rotation of a random superposition agree.
fn c5_representation_consistency() -> Outcome {
    // Fixed LCG so the superposition is reproducible without extra deps.
    let mut state = 0x9e37_79b9_7f4a_7c15u64;
    let mut uniform = move || {
        state = state.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(1_442_695_040_888_963_407);
        (state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
    };
    let mut coefficients = std::collections::BTreeMap::new();
    for p in 0..=5u32 {
        for ell in -10..=10i32 {
            let mode = ModeIndex::new(p, ell);
            if mode.order() <= 10 {
                coefficients.insert(mode, Complex64::new(uniform(), uniform()));
            }
        }
    }
    let norm: f64 = coefficients.values().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    for c in coefficients.values_mut() {
        *c /= norm;
    }
    let spectrum = LGSpectrum::from_coefficients(coefficients);
    let grid = GridSpec::new(12.0, 512).unwrap();
    let angle = RotationAngle::new(0.37).unwrap();

    let via_field = rotate_field(&spectrum.synthesize(grid), angle).field;
    let via_spectrum = rotate_spectrum(&spectrum, angle).synthesize(grid);
    let dist = via_field.l2_distance(&via_spectrum).map_err(|e| e.to_string())?;
    check(
        dist < 1e-3,
        format!(
            "L2 distance {dist:.2e} for {} modes with 2p+|l| <= 10, dphi = 0.37",
            spectrum.coefficients.len()
        ),
    )
}

fn linspace(hi: f64, points: usize) -> Vec<f64> {
    (0..points).map(|i| hi * i as f64 / (points - 1) as f64).collect()
}

/// Split-detector Monte Carlo against (√π w0/2) N^{-1/2}.
fn c6_split_detector_mc() -> Outcome {
    let mean_n: f64 = 1e4;
    let geom = BeamGeometry::unit(5.0).unwrap();
    let offsets = linspace(2.0 / mean_n.sqrt(), 41);
    let sweep = split_detector_sweep(geom, mean_n, 10_000, 42, &offsets).map_err(|e| e.to_string())?;
    let expected = PI.sqrt() / 2.0 * 1e-2;
    let crossing = sweep.crossing.ok_or("no SNR = 1 crossing in sweep")?;
    let dev = (crossing - expected) / expected;
    check(
        dev.abs() < 0.05,
        format!("SNR=1 at dx = {crossing:.5e} w0, predicted {expected:.5e} ({:+.2}%)", 100.0 * dev),
    )
}

/// Interferometer Monte Carlo against 1/(ℓ √N).
fn c7_interferometer_mc() -> Outcome {
    let (ell, mean_n) = (10u32, 1e4f64);
    let angles = linspace(2.0 / (f64::from(ell) * mean_n.sqrt()), 41);
    let sweep = interferometer_sweep(ell, mean_n, 10_000, 42, &angles).map_err(|e| e.to_string())?;
    let crossing = sweep.crossing.ok_or("no SNR = 1 crossing in sweep")?;
    let dev = (crossing - 1e-3) / 1e-3;
    check(
        dev.abs() < 0.05,
        format!("SNR=1 at dphi = {crossing:.5e} rad, predicted 1.00000e-3 ({:+.2}%)", 100.0 * dev),
    )
}

fn c8_heisenberg_arithmetic() -> Outcome {
    let r = heisenberg_limit(ApertureSpec::unit(8.0).unwrap(), 100.0).map_err(|e| e.to_string())?;
    let expected = 2.24 / 4900.0;
    let rel = (r.delta_phi - expected).abs() / expected;
    check(rel <= 1e-15, format!("dphi = {:.6e}, relative error {rel:.1e}", r.delta_phi))
}

/// displacement/coherent > interferometric/coherent > heisenberg over the sweep.
fn c9_hierarchy() -> Outcome {
    let mut violations = Vec::new();
    let mut checked = 0;
    for ell_m in [4u32, 16, 49, 100] {
        let aperture = ApertureSpec::unit(1.0 + f64::from(ell_m).sqrt()).unwrap();
        assert_eq!(aperture.max_angular_index(), ell_m);
        for n in [4.0, 100.0, 1e4] {
            let d = displacement_scheme_aperture_limited(aperture, n, PhotonStatistics::Coherent).unwrap();
            let i = interferometric_resolution(ell_m, n, PhotonStatistics::Coherent).unwrap();
            let h = heisenberg_limit(aperture, n).unwrap();
            checked += 1;
            if !(d.delta_phi > i.delta_phi && i.delta_phi > h.delta_phi) {
                violations.push(format!(
                    "(l_M={ell_m}, N={n}: disp {:.4e}, interf {:.4e}, heis {:.4e})",
                    d.delta_phi, i.delta_phi, h.delta_phi
                ));
            }
        }
    }
    check(
        violations.is_empty(),
        if violations.is_empty() {
            format!("strict ordering holds at all {checked} sweep points")
        } else {
            format!(
                "{} of {checked} points violate the ordering: {}",
                violations.len(),
                violations.join(" ")
            )
        },
    )
}

fn main() {
    let criteria = [
        Criterion { id: "1", title: "aperture bound l_M(8 w0) = 49, ring at 7 w0", limit: Some(Duration::from_secs(5)), run: c1_aperture_bound },
        Criterion { id: "2", title: "analytic vs quadrature coefficients < 1e-8", limit: Some(Duration::from_secs(60)), run: c2_oracle_equivalence },
        Criterion { id: "3", title: "spectrum normalization, marginals, variance", limit: Some(Duration::from_secs(10)), run: c3_spectrum_identities },
        Criterion { id: "4", title: "rotation of LG modes is a phase e^{i l dphi}", limit: Some(Duration::from_secs(30)), run: c4_rotation_as_phase },
        Criterion { id: "5", title: "field vs spectrum rotation consistency", limit: Some(Duration::from_secs(30)), run: c5_representation_consistency },
        Criterion { id: "6", title: "split-detector MC reproduces sqrt(pi) w0/(2 sqrt N)", limit: Some(Duration::from_secs(60)), run: c6_split_detector_mc },
        Criterion { id: "7", title: "interferometer MC reproduces 1/(l sqrt N)", limit: Some(Duration::from_secs(60)), run: c7_interferometer_mc },
        Criterion { id: "8", title: "Heisenberg limit 2.24/(l_M N) arithmetic", limit: Some(Duration::from_secs(1)), run: c8_heisenberg_arithmetic },
        Criterion { id: "9", title: "limit hierarchy over l_M x N sweep", limit: Some(Duration::from_secs(1)), run: c9_hierarchy },
    ];

    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let over_time = c.limit.is_some_and(|l| elapsed > l);
        let (tag, detail) = match (&outcome, over_time) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; exceeded {:?}", c.limit.unwrap())),
            (Err(d), _) => ("FAIL", d.clone()),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!("{tag} criterion {:>2} [{:>7.2}s] {}: {detail}", c.id, elapsed.as_secs_f64(), c.title);
    }
    println!(
        "SKIP criterion 10 [   0.00s] squeezed-light and twin-Fock experiments: excluded, their N^(-3/4) and N^(-1) laws are checked as formula arithmetic in unit tests"
    );
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
