//! Numerical validation of the distinguished de Rham 3-form.
//!
//! Identify `H = C^2` by `q = z + w j`, and on `C^2 \ {0}` consider
//!
//! ```text
//! omega_e = [ conj(z) dz^dw^dwbar - conj(w) dz^dw^dzbar ] / r^{2e},
//! r^2 = |z|^2 + |w|^2.
//! ```
//!
//! This module pins down the exponent `e` that makes `omega_e` closed
//! (it is `e = 2`, and the probe in [`omega`] rediscovers that rather
//! than assuming it), measures the dilation behavior
//! `lambda^3 omega(lambda p) = omega(p)`, computes the normalization
//! constant `C` with `C * integral_{S^3} omega = 1` by two independent
//! quadrature schemes, and pulls the form back along hyperplane
//! functionals of an arrangement to check that the pullbacks are closed
//! `(2, 1)`-forms and that overlong wedges vanish identically.
//!
//! Everything is driven by seeds, so reports are reproducible
//! bit-for-bit.  All floating-point work happens in `f64`; the
//! tolerances below are pinned next to each other so their relative
//! sizes are visible at a glance.

use alloc::vec::Vec;

pub mod form;
pub mod omega;
pub mod pullback;
pub mod sphere;

pub use form::{numeric_d, DiffForm};
pub use omega::{
    closedness_residual, determine_exponent, eval_omega, omega_field, scale_equivariance_residual,
    ExponentProbe, Numerator,
};
pub use pullback::{
    pair_wedge_check, pullback_check, sample_complement, wedge_is_structurally_zero,
    PairWedgeReport, PullbackMap, PullbackReport,
};
pub use sphere::{
    integrate_omega, sphere_normalization, Normalization, Orientation, QuadratureSpec, Scheme,
    SphereIntegral,
};

use crate::arrangement::Arrangement;
use crate::error::Result;

/// Step for the finite-difference stencils.  With the fourth-order
/// stencil in [`form::numeric_d`] the truncation error near the unit
/// sphere sits around `1e-12`, comfortably under [`CLOSEDNESS_TOL`].
pub const STEP: f64 = 1e-4;

/// `|d omega|` must stay below this at every probe point.
pub const CLOSEDNESS_TOL: f64 = 1e-8;

/// How many annulus points the closedness sweep uses.
pub const CLOSEDNESS_POINTS: usize = 100;

/// Exponents offered to the probe.  The winner must beat the runner-up
/// by [`EXPONENT_MARGIN_MIN`], otherwise the probe refuses to answer.
pub const EXPONENT_CANDIDATES: [u8; 3] = [1, 2, 3];
pub const EXPONENT_MARGIN_MIN: f64 = 1e4;
pub const EXPONENT_PROBE_POINTS: usize = 100;

/// Tolerance for `lambda^3 omega(lambda p) = omega(p)`.
pub const SCALE_TOL: f64 = 1e-10;

/// `C * integral` must land within this of 1, and the two quadrature
/// schemes must agree within their combined error bars.
pub const ROUND_TRIP_TOL: f64 = 1e-6;

/// A scheme whose full- and half-resolution answers drift apart by more
/// than this (relatively) has not converged.
pub const QUADRATURE_CONVERGENCE_TOL: f64 = 1e-4;

/// Error bars never shrink below this fraction of the value.
pub const ERROR_FLOOR_REL: f64 = 1e-8;

/// Integrals smaller than this are treated as degenerate rather than
/// inverted into a normalization constant.
pub const MIN_INTEGRAL: f64 = 1e-3;

/// Complement points keep `|a(p)| >= delta * |p| * |a|` with this delta.
pub const PULLBACK_MIN_REL_DIST: f64 = 0.35;
/// Radius of the sphere the complement points are drawn from.
pub const PULLBACK_POINT_RADIUS: f64 = 1.5;
/// Points per pullback check.
pub const PULLBACK_POINTS: usize = 25;
/// Sampling aborts once the rejection rate exceeds this.
pub const REJECTION_RATE_MAX: f64 = 0.99;

/// Pullback closedness tolerance: same budget as the form itself.
pub const PULLBACK_CLOSEDNESS_TOL: f64 = 1e-8;
/// Wedges of two pullbacks carry products of coefficients, so their
/// derivative residuals are allowed the same headroom (the observed
/// values sit near `4e-10`).
pub const WEDGE_CLOSEDNESS_TOL: f64 = 1e-8;

/// Outcome of the full validation pipeline for one arrangement.
#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub seed: u64,
    pub samples: usize,
    /// The exponent probe, including its residual table and margin.
    pub probe: ExponentProbe,
    pub closedness_max: f64,
    pub closedness_points: usize,
    pub closedness_pass: bool,
    pub scale_residual: f64,
    pub scale_pass: bool,
    pub normalization: Normalization,
    pub round_trip: f64,
    pub round_trip_pass: bool,
    pub schemes_agree: bool,
    pub pullbacks: Vec<PullbackReport>,
    pub pair_wedge: Option<PairWedgeReport>,
    /// `Some(true)` iff an overlong wedge was tested and came out empty.
    pub excess_wedge_empty: Option<bool>,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.closedness_pass
            && self.scale_pass
            && self.round_trip_pass
            && self.schemes_agree
            && self.pullbacks.iter().all(|p| p.pass)
            && self.pair_wedge.as_ref().is_none_or(|p| p.pass)
            && self.excess_wedge_empty.unwrap_or(true)
    }
}

/// Run the whole pipeline: probe the exponent, sweep closedness and
/// dilation, normalize over the 3-sphere with both schemes, then pull
/// the form back along every hyperplane of `arr` (plus a pair wedge and,
/// when the arrangement is crowded enough, an overlong wedge).
pub fn validate_form(arr: &Arrangement, samples: usize, seed: u64) -> Result<ValidationReport> {
    let probe = determine_exponent(seed)?;
    let exponent = probe.exponent;

    let closedness_max = closedness_residual(exponent, seed ^ 0xC105_EDFF, CLOSEDNESS_POINTS);
    let closedness_pass = closedness_max <= CLOSEDNESS_TOL;

    let scale_residual =
        scale_equivariance_residual(exponent, seed ^ 0x5CA1_E000, CLOSEDNESS_POINTS);
    let scale_pass = scale_residual <= SCALE_TOL;

    let normalization = sphere_normalization(
        &QuadratureSpec::new(samples, seed ^ 0x0511_E7E5, Scheme::AngleGrid),
        exponent,
    )?;
    let round_trip = (normalization.constant * normalization.integral.value - 1.0).abs();
    let round_trip_pass = round_trip <= ROUND_TRIP_TOL;

    let mut pullbacks = Vec::with_capacity(arr.hyperplane_count());
    for index in 0..arr.hyperplane_count() {
        pullbacks.push(pullback_check(
            arr,
            index,
            exponent,
            seed ^ 0x9u64.wrapping_shl(32),
            PULLBACK_POINTS,
        )?);
    }

    let pair_wedge = if arr.hyperplane_count() >= 2 {
        Some(pair_wedge_check(
            arr,
            (0, 1),
            exponent,
            seed ^ 0xAB,
            PULLBACK_POINTS,
        )?)
    } else {
        None
    };

    let excess_wedge_empty = if arr.hyperplane_count() > arr.ambient_dim() {
        let indices: Vec<usize> = (0..=arr.ambient_dim()).collect();
        Some(wedge_is_structurally_zero(
            arr,
            &indices,
            exponent,
            seed ^ 0xE0,
        )?)
    } else {
        None
    };

    Ok(ValidationReport {
        seed,
        samples,
        probe,
        closedness_max,
        closedness_points: CLOSEDNESS_POINTS,
        closedness_pass,
        scale_residual,
        scale_pass,
        normalization,
        round_trip,
        round_trip_pass,
        schemes_agree: normalization.schemes_agree,
        pullbacks,
        pair_wedge,
        excess_wedge_empty,
    })
}
