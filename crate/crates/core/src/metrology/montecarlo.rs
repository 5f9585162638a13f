//! Semiclassical photon-counting simulations of the two shot-noise-limited
//! measurements.
//!
//! Trials are split into fixed chunks of [`CHUNK_TRIALS`]; chunk `k` draws
//! from ChaCha8 stream `base + k` under the caller's seed, so results do not
//! depend on how many threads run them.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution, Poisson};
use serde::{Deserialize, Serialize};

use crate::modes::BeamGeometry;
use crate::{Error, Result};

pub const CHUNK_TRIALS: usize = 1000;

/// Sample mean and spread of a simulated difference signal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McStats {
    pub mean: f64,
    pub std: f64,
    pub trials: usize,
    pub seed: u64,
}

impl McStats {
    /// Standard error of [`McStats::mean`].
    pub fn std_error(&self) -> f64 {
        self.std / (self.trials as f64).sqrt()
    }

    pub fn snr(&self) -> f64 {
        if self.std > 0.0 {
            self.mean / self.std
        } else {
            0.0
        }
    }
}

fn poisson_draw(lambda: f64, rng: &mut ChaCha8Rng) -> Result<u64> {
    if lambda == 0.0 {
        return Ok(0);
    }
    let d = Poisson::new(lambda).map_err(|e| Error::invalid(format!("poisson mean {lambda}: {e}")))?;
    Ok(d.sample(rng) as u64)
}

/// Runs `trials` draws of `draw` and accumulates the integer signal exactly.
fn run_trials<F>(seed: u64, stream_base: u64, trials: usize, draw: F) -> Result<McStats>
where
    F: Fn(&mut ChaCha8Rng) -> Result<i64> + Sync + Send,
{
    let chunks = trials.div_ceil(CHUNK_TRIALS);
    let partial = crate::map_indexed(chunks, |k| -> Result<(i128, i128)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_base + k as u64);
        let count = CHUNK_TRIALS.min(trials - k * CHUNK_TRIALS);
        let (mut s, mut s2) = (0i128, 0i128);
        for _ in 0..count {
            let v = i128::from(draw(&mut rng)?);
            s += v;
            s2 += v * v;
        }
        Ok((s, s2))
    });
    let (mut s, mut s2) = (0i128, 0i128);
    for p in partial {
        let (a, b) = p?;
        s += a;
        s2 += b;
    }
    let n = trials as f64;
    let mean = s as f64 / n;
    // Σ(v - mean)² = Σv² - (Σv)²/n, exact in integers before the division.
    let centered = (s2 as f64) - (s as f64) * (s as f64) / n;
    let std = if trials > 1 { (centered.max(0.0) / (n - 1.0)).sqrt() } else { 0.0 };
    Ok(McStats { mean, std, trials, seed })
}

fn check_common(mean_n: f64, trials: usize) -> Result<()> {
    if !(mean_n > 0.0 && mean_n.is_finite()) {
        return Err(Error::invalid(format!("mean photon number must be positive, got {mean_n}")));
    }
    if trials < 2 {
        return Err(Error::invalid("need at least two trials"));
    }
    Ok(())
}

/// Probability that a photon from the spot displaced by `dx` lands on the
/// positive half of a detector split through the undisplaced centre.
///
/// Photon positions follow `|u_I|²`, a normal law of standard deviation
/// `w0/√2` along the displacement, so this is `½ erfc(-dx/w0)`.
pub fn split_probability(geom: BeamGeometry, dx: f64) -> f64 {
    0.5 * libm::erfc(-dx / geom.w0)
}

fn split_stats(geom: BeamGeometry, dx: f64, mean_n: f64, trials: usize, seed: u64, stream_base: u64) -> Result<McStats> {
    check_common(mean_n, trials)?;
    let p_plus = split_probability(geom, dx);
    let total = Poisson::new(mean_n).map_err(|e| Error::invalid(e.to_string()))?;
    run_trials(seed, stream_base, trials, |rng| {
        let n = total.sample(rng) as u64;
        // Independent placement of n photons, each on the + side with p_plus.
        let plus = Binomial::new(n, p_plus)
            .map_err(|e| Error::invalid(e.to_string()))?
            .sample(rng);
        Ok(plus as i64 - (n - plus) as i64)
    })
}

/// Split-detector difference signal (positive minus negative half) for a
/// Poisson number of photons with mean `mean_n`, spot displaced by `dx`
/// perpendicular to the split line.
pub fn mc_split_detector(
    geom: BeamGeometry,
    dx: f64,
    mean_n: f64,
    trials: usize,
    seed: u64,
) -> Result<McStats> {
    split_stats(geom, dx, mean_n, trials, seed, 0)
}

fn interferometer_stats(
    ell: u32,
    delta_phi: f64,
    mean_n: f64,
    trials: usize,
    seed: u64,
    stream_base: u64,
) -> Result<McStats> {
    if ell == 0 {
        return Err(Error::invalid("interferometer needs ell >= 1"));
    }
    check_common(mean_n, trials)?;
    let s = (f64::from(ell) * delta_phi).sin();
    let (mean_a, mean_b) = (0.5 * mean_n * (1.0 + s), 0.5 * mean_n * (1.0 - s));
    run_trials(seed, stream_base, trials, |rng| {
        let a = poisson_draw(mean_a, rng)?;
        let b = poisson_draw(mean_b, rng)?;
        Ok(a as i64 - b as i64)
    })
}

/// Output-port difference of an interferometer biased at quadrature, with
/// each port Poisson with mean `(N/2)(1 ± sin(ℓ δφ))`.
pub fn mc_interferometer(
    ell: u32,
    delta_phi: f64,
    mean_n: f64,
    trials: usize,
    seed: u64,
) -> Result<McStats> {
    interferometer_stats(ell, delta_phi, mean_n, trials, seed, 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SnrPoint {
    /// Displacement (in `w0`) or rotation angle (radians).
    pub signal: f64,
    pub mean: f64,
    pub std: f64,
    pub snr: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SnrSweep {
    pub seed: u64,
    pub trials: usize,
    pub mean_n: f64,
    pub points: Vec<SnrPoint>,
    /// First signal value where the SNR reaches 1, linearly interpolated.
    pub crossing: Option<f64>,
    /// Closed-form minimum detectable signal.
    pub prediction: f64,
    pub relative_deviation: Option<f64>,
}

/// First upward crossing of `SNR = 1`, interpolated between sweep points.
pub fn snr_crossing(points: &[SnrPoint]) -> Option<f64> {
    points.windows(2).find_map(|w| {
        let (a, b) = (w[0], w[1]);
        if a.snr < 1.0 && b.snr >= 1.0 {
            let t = (1.0 - a.snr) / (b.snr - a.snr);
            Some(a.signal + t * (b.signal - a.signal))
        } else {
            None
        }
    })
}

fn finish_sweep(seed: u64, trials: usize, mean_n: f64, points: Vec<SnrPoint>, prediction: f64) -> SnrSweep {
    let crossing = snr_crossing(&points);
    SnrSweep {
        seed,
        trials,
        mean_n,
        relative_deviation: crossing.map(|c| (c - prediction) / prediction),
        crossing,
        prediction,
        points,
    }
}

/// Split-detector SNR over `offsets`; point `i` uses streams from `(i+1)·2³²`.
pub fn split_detector_sweep(
    geom: BeamGeometry,
    mean_n: f64,
    trials: usize,
    seed: u64,
    offsets: &[f64],
) -> Result<SnrSweep> {
    let points = offsets
        .iter()
        .enumerate()
        .map(|(i, &dx)| {
            let st = split_stats(geom, dx, mean_n, trials, seed, (i as u64 + 1) << 32)?;
            Ok(SnrPoint { signal: dx, mean: st.mean, std: st.std, snr: st.snr() })
        })
        .collect::<Result<Vec<_>>>()?;
    let prediction = super::SPLIT_DETECTOR_PREFACTOR * geom.w0 / mean_n.sqrt();
    Ok(finish_sweep(seed, trials, mean_n, points, prediction))
}

/// Interferometer SNR over `angles`.
pub fn interferometer_sweep(
    ell: u32,
    mean_n: f64,
    trials: usize,
    seed: u64,
    angles: &[f64],
) -> Result<SnrSweep> {
    let points = angles
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            let st = interferometer_stats(ell, a, mean_n, trials, seed, (i as u64 + 1) << 32)?;
            Ok(SnrPoint { signal: a, mean: st.mean, std: st.std, snr: st.snr() })
        })
        .collect::<Result<Vec<_>>>()?;
    let prediction = 1.0 / (f64::from(ell.max(1)) * mean_n.sqrt());
    Ok(finish_sweep(seed, trials, mean_n, points, prediction))
}
