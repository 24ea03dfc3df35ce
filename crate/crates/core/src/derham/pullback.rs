//! Pulling the 3-form back along hyperplane functionals.
//!
//! A coefficient row `a` defines `q(v) = sum v_r a_r`, a map
//! `H^n -> H = C^2`.  Writing `v_r = alpha_r + beta_r j` and
//! `a_r = A_r + B_r j`, the two complex components of the image are
//!
//! ```text
//! z = sum (A_r alpha_r - conj(B_r) beta_r)
//! w = sum (B_r alpha_r + conj(A_r) beta_r)
//! ```
//!
//! — complex-*linear* in the coordinates `(alpha_r, beta_r)`, never
//! touching their conjugates.  That is why the pullback of the form keeps
//! bidegree `(2, 1)` on the nose, and why a wedge of more than `n`
//! pullbacks dies structurally: it would need more than `2n` unbarred
//! symbols.

use alloc::vec::Vec;

use num_complex::Complex64;

#[allow(unused_imports)]
use num_traits::Float;

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::quaternion::Quaternion;
use crate::sampling::rng_from_seed;

use super::form::{numeric_d, DiffForm};
use super::omega::sample_annulus;
use super::{
    PULLBACK_CLOSEDNESS_TOL, PULLBACK_MIN_REL_DIST, PULLBACK_POINT_RADIUS, REJECTION_RATE_MAX,
    SCALE_TOL, STEP, WEDGE_CLOSEDNESS_TOL,
};

/// The complex-pair data of one coefficient row, ready for evaluation on
/// points of `C^{2n}`.  Complex coordinate `2r` is `alpha_r`, coordinate
/// `2r + 1` is `beta_r`.
#[derive(Clone, Debug)]
pub struct PullbackMap {
    pairs: Vec<(Complex64, Complex64)>,
}

impl PullbackMap {
    pub fn from_row(row: &[Quaternion]) -> Self {
        let pairs = row
            .iter()
            .map(|q| {
                let (a, b) = q.complex_pair();
                (
                    Complex64::new(a.re.to_f64(), a.im.to_f64()),
                    Complex64::new(b.re.to_f64(), b.im.to_f64()),
                )
            })
            .collect();
        PullbackMap { pairs }
    }

    /// Number of complex coordinates upstairs.
    pub fn coords_in(&self) -> usize {
        2 * self.pairs.len()
    }

    /// Image `(z, w)` of a point.
    pub fn apply(&self, p: &[Complex64]) -> [Complex64; 2] {
        assert_eq!(p.len(), self.coords_in());
        let mut z = Complex64::new(0.0, 0.0);
        let mut w = Complex64::new(0.0, 0.0);
        for (r, (a, b)) in self.pairs.iter().enumerate() {
            let alpha = p[2 * r];
            let beta = p[2 * r + 1];
            z += a * alpha - b.conj() * beta;
            w += b * alpha + a.conj() * beta;
        }
        [z, w]
    }

    /// `sqrt(|z|^2 + |w|^2)` of the image: distance-like size of `a(p)`.
    pub fn image_norm(&self, p: &[Complex64]) -> f64 {
        let [z, w] = self.apply(p);
        (z.norm_sqr() + w.norm_sqr()).sqrt()
    }

    /// Euclidean norm of the coefficient row.
    pub fn row_norm(&self) -> f64 {
        self.pairs
            .iter()
            .map(|(a, b)| a.norm_sqr() + b.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// The constant 1-forms `dz`, `dw` pulled back, plus their conjugates.
    fn one_forms(&self) -> [DiffForm; 4] {
        let n = self.coords_in();
        let mut dz = DiffForm::zero(n, 1);
        let mut dw = DiffForm::zero(n, 1);
        let mut dzbar = DiffForm::zero(n, 1);
        let mut dwbar = DiffForm::zero(n, 1);
        for (r, (a, b)) in self.pairs.iter().enumerate() {
            let alpha = 2 * (2 * r) as u32; // symbol of d(alpha_r)
            let beta = 2 * (2 * r + 1) as u32; // symbol of d(beta_r)
            dz.add_term(1 << alpha, *a);
            dz.add_term(1 << beta, -b.conj());
            dw.add_term(1 << alpha, *b);
            dw.add_term(1 << beta, a.conj());
            // Conjugates live on the barred symbols with conjugated
            // coefficients.
            dzbar.add_term(1 << (alpha + 1), a.conj());
            dzbar.add_term(1 << (beta + 1), -*b);
            dwbar.add_term(1 << (alpha + 1), b.conj());
            dwbar.add_term(1 << (beta + 1), *a);
        }
        [dz, dw, dzbar, dwbar]
    }

    /// The pullback of `omega_e` at a point upstairs.
    pub fn pullback_omega(&self, p: &[Complex64], exponent: u8) -> DiffForm {
        let [z, w] = self.apply(p);
        let r2 = z.norm_sqr() + w.norm_sqr();
        let denom = r2.powi(exponent as i32);
        let [dz, dw, dzbar, dwbar] = self.one_forms();
        let first = dz.wedge(&dw).wedge(&dwbar).scale(z.conj() / denom);
        let second = dz.wedge(&dw).wedge(&dzbar).scale(w.conj() / denom);
        first.sub(&second)
    }
}

/// Points on the sphere of radius [`PULLBACK_POINT_RADIUS`] that keep a
/// relative distance of at least [`PULLBACK_MIN_REL_DIST`] from every
/// hyperplane.  The arrangement is central, so fixing the radius loses
/// nothing, and it keeps the differentiation stencils well conditioned.
pub fn sample_complement(
    arr: &Arrangement,
    seed: u64,
    count: usize,
) -> Result<Vec<Vec<Complex64>>> {
    let maps: Vec<PullbackMap> = arr
        .hyperplanes()
        .iter()
        .map(|h| PullbackMap::from_row(h.coeffs()))
        .collect();
    let mut rng = rng_from_seed(seed);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while out.len() < count {
        attempts += 1;
        if attempts >= 200 && (attempts - out.len()) as f64 / attempts as f64 > REJECTION_RATE_MAX {
            return Err(Error::SamplingFailure {
                rejection_rate: (attempts - out.len()) as f64 / attempts as f64,
            });
        }
        let p = sample_annulus(
            &mut rng,
            2 * arr.ambient_dim(),
            PULLBACK_POINT_RADIUS,
            PULLBACK_POINT_RADIUS,
        );
        let clear = maps.iter().all(|m| {
            m.image_norm(&p) >= PULLBACK_MIN_REL_DIST * PULLBACK_POINT_RADIUS * m.row_norm()
        });
        if clear {
            out.push(p);
        }
    }
    Ok(out)
}

/// Everything measured about one pulled-back form.
#[derive(Clone, Debug)]
pub struct PullbackReport {
    pub index: usize,
    pub points: usize,
    /// Max `|d(a^* omega)|` over the sample.
    pub max_d_residual: f64,
    /// All terms have two unbarred and one barred symbol.
    pub bidegree_ok: bool,
    /// Max deviation from `lambda^3 (a^* omega)(lambda p) = (a^* omega)(p)`.
    pub scale_residual: f64,
    pub pass: bool,
}

/// Closedness, bidegree, and dilation behavior of the pullback along
/// hyperplane `index`, on seeded complement points.
pub fn pullback_check(
    arr: &Arrangement,
    index: usize,
    exponent: u8,
    seed: u64,
    points: usize,
) -> Result<PullbackReport> {
    if index >= arr.hyperplane_count() {
        return Err(Error::IndexOutOfRange {
            index,
            len: arr.hyperplane_count(),
        });
    }
    let map = PullbackMap::from_row(arr.hyperplanes()[index].coeffs());
    let sample = sample_complement(arr, seed ^ (index as u64).wrapping_mul(0x9E37_79B9), points)?;
    let field = |p: &[Complex64]| map.pullback_omega(p, exponent);
    let mut max_d = 0.0f64;
    let mut scale_residual = 0.0f64;
    let mut bidegree_ok = true;
    for p in &sample {
        max_d = max_d.max(numeric_d(&field, p, STEP).inf_norm());
        let value = field(p);
        bidegree_ok &= value
            .bidegrees()
            .into_iter()
            .all(|bidegree| bidegree == (2, 1));
        for lambda in [0.5f64, 2.0] {
            let scaled: Vec<Complex64> = p.iter().map(|c| c * lambda).collect();
            let pulled = field(&scaled).scale(Complex64::new(lambda.powi(3), 0.0));
            scale_residual = scale_residual.max(pulled.sub(&value).inf_norm());
        }
    }
    let pass = max_d <= PULLBACK_CLOSEDNESS_TOL && bidegree_ok && scale_residual <= SCALE_TOL;
    Ok(PullbackReport {
        index,
        points: sample.len(),
        max_d_residual: max_d,
        bidegree_ok,
        scale_residual,
        pass,
    })
}

/// The wedge of two pulled-back forms: still closed, bidegree `(4, 2)`.
#[derive(Clone, Debug)]
pub struct PairWedgeReport {
    pub indices: (usize, usize),
    pub points: usize,
    pub max_d_residual: f64,
    pub bidegree_ok: bool,
    pub pass: bool,
}

pub fn pair_wedge_check(
    arr: &Arrangement,
    indices: (usize, usize),
    exponent: u8,
    seed: u64,
    points: usize,
) -> Result<PairWedgeReport> {
    let (i, j) = indices;
    for index in [i, j] {
        if index >= arr.hyperplane_count() {
            return Err(Error::IndexOutOfRange {
                index,
                len: arr.hyperplane_count(),
            });
        }
    }
    let map_i = PullbackMap::from_row(arr.hyperplanes()[i].coeffs());
    let map_j = PullbackMap::from_row(arr.hyperplanes()[j].coeffs());
    let field = |p: &[Complex64]| {
        map_i
            .pullback_omega(p, exponent)
            .wedge(&map_j.pullback_omega(p, exponent))
    };
    let sample = sample_complement(arr, seed ^ 0x5EED_CAFE, points)?;
    let mut max_d = 0.0f64;
    let mut bidegree_ok = true;
    for p in &sample {
        max_d = max_d.max(numeric_d(&field, p, STEP).inf_norm());
        bidegree_ok &= field(p)
            .bidegrees()
            .into_iter()
            .all(|bidegree| bidegree == (4, 2));
    }
    Ok(PairWedgeReport {
        indices,
        points: sample.len(),
        max_d_residual: max_d,
        bidegree_ok,
        pass: max_d <= WEDGE_CLOSEDNESS_TOL && bidegree_ok,
    })
}

/// Wedge the pullbacks along the given hyperplanes and report whether the
/// result is structurally empty.  For more than `ambient_dim` factors it
/// must be: each factor carries two unbarred symbols and only `2n` exist.
pub fn wedge_is_structurally_zero(
    arr: &Arrangement,
    indices: &[usize],
    exponent: u8,
    seed: u64,
) -> Result<bool> {
    for &index in indices {
        if index >= arr.hyperplane_count() {
            return Err(Error::IndexOutOfRange {
                index,
                len: arr.hyperplane_count(),
            });
        }
    }
    let sample = sample_complement(arr, seed ^ 0x00D1_F00D, 3)?;
    let maps: Vec<PullbackMap> = indices
        .iter()
        .map(|&i| PullbackMap::from_row(arr.hyperplanes()[i].coeffs()))
        .collect();
    let n = 2 * arr.ambient_dim();
    for p in &sample {
        let mut acc = DiffForm::zero(n, 0);
        acc.add_term(0, Complex64::new(1.0, 0.0));
        for map in &maps {
            acc = acc.wedge(&map.pullback_omega(p, exponent));
        }
        if !acc.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}
