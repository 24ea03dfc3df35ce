//! Seeded random generators for tests, cross-checks, and the catalog's
//! generic arrangements.
//!
//! Everything routes through [`rng_from_seed`] so that any reported value
//! can be reproduced from its seed alone.

use alloc::vec::Vec;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arrangement::Arrangement;
use crate::hlinalg::{CoefficientRow, HMatrix};
use crate::os::ExteriorElement;
use crate::quaternion::{Quaternion, Rational};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small rational with numerator in `[-3, 3]` and denominator in `{1, 2}`.
pub fn random_rational(rng: &mut impl Rng) -> Rational {
    Rational::new(rng.gen_range(-3..=3), rng.gen_range(1..=2))
}

pub fn random_quaternion(rng: &mut impl Rng) -> Quaternion {
    Quaternion::new(
        random_rational(rng),
        random_rational(rng),
        random_rational(rng),
        random_rational(rng),
    )
}

pub fn random_nonzero_quaternion(rng: &mut impl Rng) -> Quaternion {
    loop {
        let q = random_quaternion(rng);
        if !q.is_zero() {
            return q;
        }
    }
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> HMatrix {
    let entries = (0..rows * cols).map(|_| random_quaternion(rng)).collect();
    HMatrix::new(rows, cols, entries)
}

/// Nonzero coefficient row of length `n`.
pub fn random_row(rng: &mut impl Rng, n: usize) -> CoefficientRow {
    loop {
        let row: CoefficientRow = (0..n).map(|_| random_quaternion(rng)).collect();
        if row.iter().any(|q| !q.is_zero()) {
            return row;
        }
    }
}

/// Random central arrangement with `1..=max_dim` ambient dimension and up
/// to `max_count` distinct hyperplanes.  Rows that canonicalize to an
/// already-seen hyperplane are redrawn; if the ambient dimension only
/// admits fewer distinct hyperplanes than requested (as in `H^1`), the
/// arrangement simply comes out smaller.
pub fn random_arrangement(rng: &mut impl Rng, max_dim: usize, max_count: usize) -> Arrangement {
    let dim = rng.gen_range(1..=max_dim);
    let count = rng.gen_range(1..=max_count);
    let mut rows: Vec<CoefficientRow> = Vec::new();
    let mut kept: Vec<CoefficientRow> = Vec::new();
    let mut attempts = 0;
    while kept.len() < count && attempts < 60 * count {
        attempts += 1;
        let row = random_row(rng, dim);
        let canonical = crate::arrangement::canonicalize(&row).expect("row is nonzero");
        if !kept.contains(&canonical) {
            kept.push(canonical);
            rows.push(row);
        }
    }
    Arrangement::new(dim, rows).expect("rows are distinct by construction")
}

/// Sparse exterior element over `ground` generators with at most
/// `max_terms` monomials.
pub fn random_exterior_element(
    rng: &mut impl Rng,
    ground: usize,
    max_terms: usize,
) -> ExteriorElement {
    assert!(ground <= 16, "keep test elements small");
    let mut e = ExteriorElement::zero();
    let terms = rng.gen_range(1..=max_terms);
    for _ in 0..terms {
        let mask = rng.gen::<u64>() & ((1u64 << ground) - 1);
        e.add_term(mask, random_rational(rng));
    }
    e
}

/// Element whose terms all use exactly `degree` generators, so it has a
/// well-defined parity for the Leibniz rule.
pub fn random_homogeneous_element(
    rng: &mut impl Rng,
    ground: usize,
    degree: usize,
    max_terms: usize,
) -> ExteriorElement {
    assert!(degree <= ground && ground <= 16);
    let mut e = ExteriorElement::zero();
    let terms = rng.gen_range(1..=max_terms);
    for _ in 0..terms {
        let mut mask = 0u64;
        while (mask.count_ones() as usize) < degree {
            mask |= 1u64 << rng.gen_range(0..ground);
        }
        e.add_term(mask, random_rational(rng));
    }
    e
}
