//! Transverse field profiles at the beam waist and their sampling on a
//! uniform Cartesian grid.
//!
//! Lengths are in units of the beam waist `w0`; functions that accept `w0`
//! do so only to keep the formulas dimensionally explicit.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::specfun::{hermite, jacobi_at_zero, laguerre, log_factorial};
use crate::{Error, Result};

/// Radial index `p` and angular index `ℓ` of a Laguerre-Gaussian mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModeIndex {
    pub p: u32,
    pub ell: i32,
}

impl ModeIndex {
    pub const fn new(p: u32, ell: i32) -> Self {
        Self { p, ell }
    }

    pub fn abs_ell(&self) -> u32 {
        self.ell.unsigned_abs()
    }

    /// Mode order `2p + |ℓ|`; modes of equal order share a Gouy phase and
    /// form the natural truncation shells of a spectrum.
    pub fn order(&self) -> u32 {
        2 * self.p + self.abs_ell()
    }

    /// Outer classical turning radius `√(2(2p + |ℓ| + 1))` in units of
    /// `w0`. Beyond it the mode decays like a Gaussian.
    pub fn outer_radius(&self) -> f64 {
        (2.0 * (f64::from(self.order()) + 1.0)).sqrt()
    }
}

/// Waist and lateral offset of the displaced Gaussian spot.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BeamGeometry {
    pub w0: f64,
    pub r0: f64,
}

impl BeamGeometry {
    pub fn new(w0: f64, r0: f64) -> Result<Self> {
        if !(w0 > 0.0 && w0.is_finite()) {
            return Err(Error::invalid(format!("beam waist must be positive, got {w0}")));
        }
        if !(r0 >= 0.0 && r0.is_finite()) {
            return Err(Error::invalid(format!("displacement must be non-negative, got {r0}")));
        }
        Ok(Self { w0, r0 })
    }

    /// Unit waist, displacement `r0` in waists.
    pub fn unit(r0_over_w0: f64) -> Result<Self> {
        Self::new(1.0, r0_over_w0)
    }

    pub fn r0_over_w0(&self) -> f64 {
        self.r0 / self.w0
    }
}

/// Square grid spanning `[-half_extent, half_extent]` on both axes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub half_extent: f64,
    pub samples: usize,
}

impl GridSpec {
    pub const MIN_SAMPLES: usize = 16;
    pub const DEFAULT_SAMPLES: usize = 512;
    pub const DEFAULT_MARGIN: f64 = 8.0;

    pub fn new(half_extent: f64, samples: usize) -> Result<Self> {
        if !(half_extent > 0.0 && half_extent.is_finite()) {
            return Err(Error::invalid(format!("half_extent must be positive, got {half_extent}")));
        }
        if samples < Self::MIN_SAMPLES {
            return Err(Error::invalid(format!(
                "grid needs at least {} samples per axis, got {samples}",
                Self::MIN_SAMPLES
            )));
        }
        Ok(Self { half_extent, samples })
    }

    /// `max(r0/w0, √|ℓ|) + 8` at 512 samples: Gaussian tails are below
    /// `1e-14` at the edge for `r0/w0 ≤ 10`, `|ℓ| ≤ 100`.
    pub fn default_for(r0_over_w0: f64, ell: i32) -> Self {
        let reach = r0_over_w0.max(f64::from(ell.unsigned_abs()).sqrt());
        Self {
            half_extent: reach + Self::DEFAULT_MARGIN,
            samples: Self::DEFAULT_SAMPLES,
        }
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_extent / (self.samples - 1) as f64
    }

    pub fn coord(&self, i: usize) -> f64 {
        -self.half_extent + i as f64 * self.spacing()
    }

    pub fn coords(&self) -> Vec<f64> {
        (0..self.samples).map(|i| self.coord(i)).collect()
    }

    pub fn len(&self) -> usize {
        self.samples * self.samples
    }

    pub fn is_empty(&self) -> bool {
        self.samples == 0
    }

    /// Trapezoid weight of node `i` along one axis.
    pub fn weight(&self, i: usize) -> f64 {
        let h = self.spacing();
        if i == 0 || i + 1 == self.samples {
            0.5 * h
        } else {
            h
        }
    }
}

/// Complex field sampled on a [`GridSpec`], stored row-major with `y` as the
/// row index and `x` as the column index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledField {
    grid: GridSpec,
    values: Vec<Complex64>,
}

impl SampledField {
    pub fn from_values(grid: GridSpec, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::invalid(format!(
                "expected {} values for a {}x{} grid, got {}",
                grid.len(),
                grid.samples,
                grid.samples,
                values.len()
            )));
        }
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::invalid("sampled field contains non-finite values"));
        }
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    /// Value at column `ix` (x) and row `iy` (y).
    pub fn at(&self, ix: usize, iy: usize) -> Complex64 {
        self.values[iy * self.grid.samples + ix]
    }

    /// Iterates `(x, y, value)` in storage order.
    pub fn iter_nodes(&self) -> impl Iterator<Item = (f64, f64, Complex64)> + '_ {
        let n = self.grid.samples;
        self.values.iter().enumerate().map(move |(idx, &v)| {
            let (iy, ix) = (idx / n, idx % n);
            (self.grid.coord(ix), self.grid.coord(iy), v)
        })
    }

    /// Trapezoidal `∫∫ conj(self) · other dx dy`.
    pub fn inner(&self, other: &SampledField) -> Result<Complex64> {
        if self.grid != other.grid {
            return Err(Error::invalid("fields live on different grids"));
        }
        let n = self.grid.samples;
        let rows = crate::map_indexed(n, |iy| {
            let wy = self.grid.weight(iy);
            let mut acc = Complex64::new(0.0, 0.0);
            for ix in 0..n {
                let k = iy * n + ix;
                acc += self.values[k].conj() * other.values[k] * self.grid.weight(ix);
            }
            acc * wy
        });
        Ok(rows.into_iter().sum())
    }

    /// Trapezoidal `∫∫ |u|² dx dy`.
    pub fn norm_sq(&self) -> f64 {
        self.inner(self).map(|c| c.re).unwrap_or(f64::NAN)
    }

    /// `‖self - other‖₂` on the shared grid.
    pub fn l2_distance(&self, other: &SampledField) -> Result<f64> {
        let diff = self.zip_with(other, |a, b| a - b)?;
        Ok(diff.norm_sq().sqrt())
    }

    pub fn max_abs_diff(&self, other: &SampledField) -> Result<f64> {
        if self.grid != other.grid {
            return Err(Error::invalid("fields live on different grids"));
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> SampledField {
        SampledField {
            grid: self.grid,
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn zip_with(
        &self,
        other: &SampledField,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<SampledField> {
        if self.grid != other.grid {
            return Err(Error::invalid("fields live on different grids"));
        }
        Ok(SampledField {
            grid: self.grid,
            values: self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    /// Grid coordinates and value of the node with the largest `|u|`.
    pub fn peak(&self) -> (f64, f64, f64) {
        self.iter_nodes()
            .map(|(x, y, v)| (x, y, v.norm()))
            .fold((0.0, 0.0, f64::NEG_INFINITY), |best, cur| if cur.2 > best.2 { cur } else { best })
    }
}

/// Normalized Laguerre-Gaussian amplitude at the waist, in polar coordinates:
///
/// `(1/w0) √(p!/(π(|ℓ|+p)!)) e^{-r²/2w0²} (r/w0)^{|ℓ|} L_p^{|ℓ|}(r²/w0²) e^{iℓφ}`.
///
/// The prefactor and the power of `r` are combined in log space so that
/// `|ℓ|` in the hundreds does not overflow.
pub fn lg_amplitude(mode: ModeIndex, r: f64, phi: f64, w0: f64) -> Complex64 {
    let radial = lg_radial(mode.p, mode.abs_ell(), r / w0) / w0;
    Complex64::from_polar(1.0, f64::from(mode.ell) * phi) * radial
}

/// Same as [`lg_amplitude`] at the Cartesian point `(x, y)`.
pub fn lg_cartesian(mode: ModeIndex, x: f64, y: f64, w0: f64) -> Complex64 {
    lg_amplitude(mode, x.hypot(y), y.atan2(x), w0)
}

/// Real radial factor of a unit-waist LG mode at `rho = r/w0`.
pub(crate) fn lg_radial(p: u32, abs_ell: u32, rho: f64) -> f64 {
    let lag = laguerre(p, abs_ell, rho * rho);
    if rho == 0.0 {
        if abs_ell > 0 {
            return 0.0;
        }
        return (0.5 * (log_factorial(p) - PI.ln() - log_factorial(p))).exp() * lag;
    }
    let log_mag = 0.5 * (log_factorial(p) - PI.ln() - log_factorial(abs_ell + p))
        - 0.5 * rho * rho
        + f64::from(abs_ell) * rho.ln();
    log_mag.exp() * lag
}

/// Gaussian spot of waist `w0` centred at `(r0, 0)`, normalized to unit power.
pub fn displaced_gaussian(geom: BeamGeometry, x: f64, y: f64) -> f64 {
    let w0 = geom.w0;
    let dx = x - geom.r0;
    (-(dx * dx + y * y) / (2.0 * w0 * w0)).exp() / (PI.sqrt() * w0)
}

/// Odd partner of the displaced Gaussian, `u_I(x, y) sign(y)` with
/// `sign(0) = 0`.
pub fn flipped_mode(geom: BeamGeometry, x: f64, y: f64) -> f64 {
    let s = if y > 0.0 {
        1.0
    } else if y < 0.0 {
        -1.0
    } else {
        0.0
    };
    s * displaced_gaussian(geom, x, y)
}

/// Radius `w0 √|ℓ|` of the single bright ring of a `p = 0` mode.
pub fn bright_ring_radius(ell: i32, w0: f64) -> f64 {
    w0 * f64::from(ell.unsigned_abs()).sqrt()
}

/// One term of the Hermite-Gaussian expansion of an LG mode:
/// `coefficient · H_{x_order}(x/w0) H_{y_order}(y/w0) e^{-r²/2w0²} / w0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermiteTerm {
    pub k: u32,
    pub x_order: u32,
    pub y_order: u32,
    pub coefficient: Complex64,
}

/// Expansion of `u_{pℓ}` (`ℓ ≥ 0`) over products of Hermite polynomials,
///
/// `(-1)^p / 2^{2p+ℓ} √(1/(π(ℓ+p)! p!)) Σ_k (2i)^k P_k^{(ℓ+p-k, p-k)}(0)
///  H_{ℓ+2p-k}(x) H_k(y)`.
///
/// Negative `ℓ` is the complex conjugate of `+|ℓ|` and is rejected here.
pub fn lg_in_hermite_basis(mode: ModeIndex) -> Result<Vec<HermiteTerm>> {
    if mode.ell < 0 {
        return Err(Error::invalid(format!(
            "lg_in_hermite_basis needs ell >= 0 (got {}); conjugate the expansion of |ell|",
            mode.ell
        )));
    }
    let p = mode.p;
    let ell = mode.abs_ell();
    let order = ell + 2 * p;
    let log_norm = -0.5 * (PI.ln() + log_factorial(ell + p) + log_factorial(p));
    let sign = if p.is_multiple_of(2) { 1.0 } else { -1.0 };
    (0..=order)
        .map(|k| {
            let jac = jacobi_at_zero(k, ell + p, p)?;
            // (2i)^k / 2^{2p+ℓ} = i^k 2^{k - order}
            let scale = sign * jac * (log_norm + (f64::from(k) - f64::from(order)) * 2f64.ln()).exp();
            let i_pow = match k % 4 {
                0 => Complex64::new(1.0, 0.0),
                1 => Complex64::new(0.0, 1.0),
                2 => Complex64::new(-1.0, 0.0),
                _ => Complex64::new(0.0, -1.0),
            };
            Ok(HermiteTerm {
                k,
                x_order: order - k,
                y_order: k,
                coefficient: i_pow * scale,
            })
        })
        .collect()
}

/// Evaluates a Hermite expansion from [`lg_in_hermite_basis`] at `(x, y)`.
pub fn eval_hermite_expansion(terms: &[HermiteTerm], x: f64, y: f64, w0: f64) -> Result<Complex64> {
    let (u, v) = (x / w0, y / w0);
    let envelope = (-(u * u + v * v) / 2.0).exp() / w0;
    let mut acc = Complex64::new(0.0, 0.0);
    for t in terms {
        acc += t.coefficient * (hermite(t.x_order, u)? * hermite(t.y_order, v)?);
    }
    Ok(acc * envelope)
}

/// Evaluates `profile` at every node of `grid`.
pub fn sample_field<F>(profile: F, grid: GridSpec) -> SampledField
where
    F: Fn(f64, f64) -> Complex64 + Sync + Send,
{
    let n = grid.samples;
    let rows = crate::map_indexed(n, |iy| {
        let y = grid.coord(iy);
        (0..n).map(|ix| profile(grid.coord(ix), y)).collect::<Vec<_>>()
    });
    SampledField {
        grid,
        values: rows.into_iter().flatten().collect(),
    }
}

/// Both sides of the large-`|ℓ|` radial Gaussian form of a `p = 0` mode
/// around its bright ring, with `d` in units of `w0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGaussianCheck {
    /// `|u_{0ℓ}(r̄ + d)|²`.
    pub lhs: f64,
    /// `|u_{0ℓ}(r̄)|² e^{-2d²}`: an amplitude Gaussian of waist `w0` seen in
    /// intensity. Converges to `lhs` as `|ℓ|` grows.
    pub rhs: f64,
    /// `|u_{0ℓ}(r̄)|² e^{-d²}`, the same profile with the amplitude exponent
    /// applied to the intensity. Stays off by `e^{-d²}`.
    pub rhs_amplitude_exponent: f64,
}

impl RadialGaussianCheck {
    pub fn ratio(&self) -> f64 {
        self.lhs / self.rhs
    }
}

pub fn radial_gaussian_check(ell: i32, d: f64) -> Result<RadialGaussianCheck> {
    if ell == 0 {
        return Err(Error::invalid("radial gaussian form needs |ell| >= 1"));
    }
    let abs_ell = ell.unsigned_abs();
    let ring = bright_ring_radius(ell, 1.0);
    let at = |rho: f64| lg_radial(0, abs_ell, rho).powi(2);
    let peak = at(ring);
    Ok(RadialGaussianCheck {
        lhs: at(ring + d),
        rhs: peak * (-2.0 * d * d).exp(),
        rhs_amplitude_exponent: peak * (-d * d).exp(),
    })
}
