//! Numerical toolkit for the resolution limits of optical rotation
//! measurements.
//!
//! The crate covers four layers:
//!
//! * [`specfun`]: Hermite, associated Laguerre and modified Bessel functions,
//!   Jacobi polynomials at the origin and log-factorials.
//! * [`modes`]: Laguerre-Gaussian modes, the displaced Gaussian spot, the
//!   flipped (odd) mode and uniform Cartesian sampling.
//! * [`decompose`]: the Laguerre-Gaussian spectrum of a displaced Gaussian,
//!   both in closed form and by overlap quadrature, and its angular momentum
//!   distribution `P(ℓ)`.
//! * [`rotation`] and [`metrology`]: image rotation in real space and in
//!   mode space, and the minimum detectable rotation of the displacement and
//!   interferometric schemes, with Monte Carlo checks of the shot-noise cases.
//!
//! All lengths are measured in units of the beam waist `w0`.

pub mod decompose;
pub mod error;
pub mod io;
pub mod metrology;
pub mod modes;
pub mod rotation;
pub mod specfun;

pub use error::{Error, Result};
pub use num_complex::Complex64;

pub use decompose::{AngularSpectrum, LGSpectrum};
pub use metrology::{ApertureSpec, PhotonStatistics, ResolutionReport, Scheme};
pub use modes::{BeamGeometry, GridSpec, ModeIndex, SampledField};
pub use rotation::RotationAngle;

/// Runs `f` over `0..n` and collects the results in index order, in parallel
/// when the `parallel` feature is enabled.
pub(crate) fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}
