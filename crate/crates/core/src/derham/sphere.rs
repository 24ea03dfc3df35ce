//! Quadrature of the 3-form over the unit sphere `S^3` in `C^2`, two
//! unrelated ways, and the normalization constant derived from it.
//!
//! * An angle grid in Hopf coordinates
//!   `(z, w) = (cos(eta) e^{i xi_1}, sin(eta) e^{i xi_2})`, Gauss–Legendre
//!   in `eta` and uniform midpoints in the two angles.  The chart frame
//!   `(d_eta, d_xi1, d_xi2)` is *negatively* oriented with respect to the
//!   outward normal (the determinant of `(p, d_eta, d_xi1, d_xi2)` in
//!   `R^4` is negative), hence the sign flip on the raw chart integral.
//! * Quasi–Monte Carlo with a shifted Halton sequence, evaluating the
//!   form on the global tangent frame `(p i, p j, p k)`, which is
//!   positively oriented.
//!
//! Each scheme reports the value together with an error estimate from
//! comparing against its own half-resolution run; the two schemes
//! agreeing within combined error bars is the real acceptance check, since
//! they share neither points nor weights nor frames.  All summation is
//! sequential in a fixed order, so a fixed seed reproduces bit-identical
//! results.

use alloc::vec;
use alloc::vec::Vec;

use core::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::sampling::rng_from_seed;

use super::omega::eval_omega;
use super::{ERROR_FLOOR_REL, MIN_INTEGRAL, QUADRATURE_CONVERGENCE_TOL};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    AngleGrid,
    Halton,
}

impl Scheme {
    pub fn other(self) -> Scheme {
        match self {
            Scheme::AngleGrid => Scheme::Halton,
            Scheme::Halton => Scheme::AngleGrid,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Scheme::AngleGrid => "grid",
            Scheme::Halton => "halton",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Outward,
    Inward,
}

#[derive(Clone, Copy, Debug)]
pub struct QuadratureSpec {
    pub samples: usize,
    pub seed: u64,
    pub scheme: Scheme,
    pub orientation: Orientation,
}

impl QuadratureSpec {
    pub fn new(samples: usize, seed: u64, scheme: Scheme) -> Self {
        QuadratureSpec {
            samples,
            seed,
            scheme,
            orientation: Orientation::Outward,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SphereIntegral {
    pub value: f64,
    /// Half-resolution discrepancy, floored at a roundoff allowance.
    pub error: f64,
    pub samples: usize,
    pub scheme: Scheme,
}

/// Integrate `omega_e` over the oriented unit sphere.
pub fn integrate_omega(spec: &QuadratureSpec, exponent: u8) -> Result<SphereIntegral> {
    let (outward, coarse) = match spec.scheme {
        Scheme::AngleGrid => {
            let n_xi = ((spec.samples as f64).cbrt().round() as usize).max(4);
            let n_eta = (spec.samples / (n_xi * n_xi)).max(4);
            let full = -grid_chart_integral(n_eta, n_xi, exponent);
            let half = -grid_chart_integral((n_eta / 2).max(2), (n_xi / 2).max(2), exponent);
            (full, half)
        }
        Scheme::Halton => {
            let mut rng = rng_from_seed(spec.seed);
            let shift = [rng.gen::<f64>(), rng.gen::<f64>(), rng.gen::<f64>()];
            halton_integral(spec.samples.max(2), shift, exponent)
        }
    };
    let relative_shift = (outward - coarse).abs() / outward.abs().max(f64::MIN_POSITIVE);
    if relative_shift > QUADRATURE_CONVERGENCE_TOL {
        return Err(Error::QuadratureNotConverged { relative_shift });
    }
    let error = (outward - coarse)
        .abs()
        .max(ERROR_FLOOR_REL * outward.abs());
    let sign = match spec.orientation {
        Orientation::Outward => 1.0,
        Orientation::Inward => -1.0,
    };
    Ok(SphereIntegral {
        value: sign * outward,
        error,
        samples: spec.samples,
        scheme: spec.scheme,
    })
}

/// The normalization `C` with `C * integral = 1`, plus the cross-scheme
/// check.
#[derive(Clone, Copy, Debug)]
pub struct Normalization {
    pub constant: f64,
    pub integral: SphereIntegral,
    pub cross_check: SphereIntegral,
    pub discrepancy: f64,
    pub schemes_agree: bool,
}

pub fn sphere_normalization(spec: &QuadratureSpec, exponent: u8) -> Result<Normalization> {
    let integral = integrate_omega(spec, exponent)?;
    let cross_spec = QuadratureSpec {
        scheme: spec.scheme.other(),
        ..*spec
    };
    let cross_check = integrate_omega(&cross_spec, exponent)?;
    if integral.value.abs() < MIN_INTEGRAL {
        return Err(Error::DegenerateIntegral {
            value: integral.value,
        });
    }
    let discrepancy = (integral.value - cross_check.value).abs();
    Ok(Normalization {
        constant: 1.0 / integral.value,
        integral,
        cross_check,
        discrepancy,
        schemes_agree: discrepancy <= integral.error + cross_check.error,
    })
}

fn hopf_point(eta: f64, xi1: f64, xi2: f64) -> [Complex64; 2] {
    [
        Complex64::from_polar(eta.cos(), xi1),
        Complex64::from_polar(eta.sin(), xi2),
    ]
}

/// Raw chart integral over `(eta, xi1, xi2)`, no orientation correction.
fn grid_chart_integral(n_eta: usize, n_xi: usize, exponent: u8) -> f64 {
    let nodes = gauss_legendre(n_eta);
    let d_xi = 2.0 * PI / n_xi as f64;
    let mut acc = 0.0;
    for &(x, w) in &nodes {
        // Map [-1, 1] to [0, pi/2].
        let eta = (x + 1.0) * PI / 4.0;
        let w_eta = w * PI / 4.0;
        for a in 0..n_xi {
            let xi1 = d_xi * (a as f64 + 0.5);
            for b in 0..n_xi {
                let xi2 = d_xi * (b as f64 + 0.5);
                let p = hopf_point(eta, xi1, xi2);
                let t_eta = [
                    Complex64::from_polar(eta.sin(), xi1) * -1.0,
                    Complex64::from_polar(eta.cos(), xi2),
                ];
                let t_xi1 = [
                    Complex64::new(0.0, 1.0) * Complex64::from_polar(eta.cos(), xi1),
                    Complex64::new(0.0, 0.0),
                ];
                let t_xi2 = [
                    Complex64::new(0.0, 0.0),
                    Complex64::new(0.0, 1.0) * Complex64::from_polar(eta.sin(), xi2),
                ];
                let value = eval_omega(&p, exponent).apply(&[&t_eta, &t_xi1, &t_xi2]).re;
                acc += w_eta * d_xi * d_xi * value;
            }
        }
    }
    acc
}

/// The tangent frame `(p i, p j, p k)` of `S^3` at `p = z + w j`, in
/// complex pairs.
fn quaternion_frame(p: &[Complex64; 2]) -> [[Complex64; 2]; 3] {
    let i = Complex64::new(0.0, 1.0);
    let (z, w) = (p[0], p[1]);
    [
        [i * z, -(i * w)], // p i
        [-w, z],           // p j
        [i * w, i * z],    // p k
    ]
}

fn halton(mut index: u64, base: u64) -> f64 {
    let mut factor = 1.0;
    let mut result = 0.0;
    while index > 0 {
        factor /= base as f64;
        result += factor * (index % base) as f64;
        index /= base;
    }
    result
}

/// Outward integral by shifted Halton sampling, with the value over the
/// first half of the sequence as the coarse companion.
fn halton_integral(samples: usize, shift: [f64; 3], exponent: u8) -> (f64, f64) {
    let mut sum = 0.0;
    let mut half_sum = 0.0;
    let half = samples / 2;
    for s in 1..=samples {
        let u1 = (halton(s as u64, 2) + shift[0]).fract();
        let u2 = (halton(s as u64, 3) + shift[1]).fract();
        let u3 = (halton(s as u64, 5) + shift[2]).fract();
        // Uniform measure on S^3 in Hopf coordinates has density
        // proportional to cos(eta) sin(eta); invert its CDF sin^2(eta).
        let eta = u1.sqrt().asin();
        let p = hopf_point(eta, 2.0 * PI * u2, 2.0 * PI * u3);
        let frame = quaternion_frame(&p);
        let value = eval_omega(&p, exponent)
            .apply(&[&frame[0], &frame[1], &frame[2]])
            .re;
        sum += value;
        if s <= half {
            half_sum += value;
        }
    }
    let volume = 2.0 * PI * PI;
    (
        volume * sum / samples as f64,
        volume * half_sum / half.max(1) as f64,
    )
}

fn legendre_p_dp(n: usize, x: f64) -> (f64, f64) {
    debug_assert!(n >= 1);
    let mut p_prev = 1.0;
    let mut p = x;
    for k in 2..=n {
        let pk = ((2 * k - 1) as f64 * x * p - (k - 1) as f64 * p_prev) / k as f64;
        p_prev = p;
        p = pk;
    }
    let dp = n as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

/// Nodes and weights on `[-1, 1]` by Newton iteration on the Legendre
/// recurrence.
fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = vec![(0.0, 0.0); n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_p_dp(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_p_dp(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out[i] = (-x, w);
        out[n - 1 - i] = (x, w);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const ORACLE: f64 = 4.0 * PI * PI; // Stokes over the unit ball.

    #[test]
    fn gauss_legendre_is_exact_on_polynomials() {
        for n in [2usize, 5, 8] {
            let nodes = gauss_legendre(n);
            let total: f64 = nodes.iter().map(|&(_, w)| w).sum();
            assert!((total - 2.0).abs() < 1e-13);
            // x^4 integrates to 2/5 for n >= 3.
            if n >= 3 {
                let quartic: f64 = nodes.iter().map(|&(x, w)| w * x.powi(4)).sum();
                assert!((quartic - 0.4).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn halton_prefix() {
        assert_eq!(halton(1, 2), 0.5);
        assert_eq!(halton(2, 2), 0.25);
        assert_eq!(halton(3, 2), 0.75);
        assert!((halton(1, 3) - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn chart_integrand_matches_the_closed_form() {
        // At eta = pi/4 the pulled-back density is -2 cos(eta) sin(eta)
        // = -1.
        let eta = PI / 4.0;
        let p = hopf_point(eta, 0.0, 0.0);
        let t_eta = [
            Complex64::from_polar(eta.sin(), 0.0) * -1.0,
            Complex64::from_polar(eta.cos(), 0.0),
        ];
        let t1 = [
            Complex64::new(0.0, 1.0) * Complex64::from_polar(eta.cos(), 0.0),
            Complex64::new(0.0, 0.0),
        ];
        let t2 = [
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 1.0) * Complex64::from_polar(eta.sin(), 0.0),
        ];
        let value = eval_omega(&p, 2).apply(&[&t_eta, &t1, &t2]);
        assert!((value.re + 1.0).abs() < 1e-14);
        assert!(value.im.abs() < 1e-14);
    }

    #[test]
    fn frame_integrand_is_two_on_the_axis() {
        let p = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        let frame = quaternion_frame(&p);
        let value = eval_omega(&p, 2).apply(&[&frame[0], &frame[1], &frame[2]]);
        assert!((value.re - 2.0).abs() < 1e-14);
    }

    #[test]
    fn both_schemes_hit_the_oracle() {
        let grid = integrate_omega(&QuadratureSpec::new(20_000, 5, Scheme::AngleGrid), 2).unwrap();
        assert!(
            (grid.value - ORACLE).abs() < 1e-6 * ORACLE,
            "grid: {} vs {}",
            grid.value,
            ORACLE
        );
        let qmc = integrate_omega(&QuadratureSpec::new(20_000, 5, Scheme::Halton), 2).unwrap();
        assert!((qmc.value - ORACLE).abs() < 1e-6 * ORACLE);
        assert!((grid.value - qmc.value).abs() <= grid.error + qmc.error);
    }

    #[test]
    fn orientation_flip_negates() {
        let spec = QuadratureSpec::new(5_000, 1, Scheme::Halton);
        let inward = QuadratureSpec {
            orientation: Orientation::Inward,
            ..spec
        };
        let a = integrate_omega(&spec, 2).unwrap().value;
        let b = integrate_omega(&inward, 2).unwrap().value;
        assert_eq!(a, -b);
    }

    #[test]
    fn tiny_grids_refuse_to_report() {
        let err = integrate_omega(&QuadratureSpec::new(8, 1, Scheme::AngleGrid), 2);
        assert!(matches!(err, Err(Error::QuadratureNotConverged { .. })));
    }

    #[test]
    fn normalization_round_trip() {
        let spec = QuadratureSpec::new(20_000, 11, Scheme::AngleGrid);
        let n = sphere_normalization(&spec, 2).unwrap();
        assert!(n.schemes_agree);
        assert!((n.constant * n.integral.value - 1.0).abs() < 1e-12);
        assert!((n.constant - 1.0 / ORACLE).abs() < 1e-6 / ORACLE);
        // Same seed, same bits.
        let again = sphere_normalization(&spec, 2).unwrap();
        assert_eq!(n.integral.value, again.integral.value);
        assert_eq!(n.cross_check.value, again.cross_check.value);
    }
}
