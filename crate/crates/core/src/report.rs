//! Poincaré polynomials, Betti numbers, and the deletion–restriction
//! recurrence.
//!
//! The complement of an arrangement has torsion-free cohomology
//! concentrated in degrees divisible by three, so the Poincaré polynomial
//! lives in `Z[t^3]` and the rank-`k` graded piece contributes in degree
//! `3k`.  Removing one hyperplane (deletion) and slicing onto it
//! (restriction) are related by
//! `P(X) = P(X') + t^3 P(X'')`, which [`verify_recurrence`] checks — with
//! the two sides produced by *different* engines, counting nbc sets on the
//! left and Möbius values on the right, so a shared bug cannot cancel out.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::arrangement::Arrangement;
use crate::error::Result;
use crate::matroid::{whitney_poincare, Matroid};
use crate::os;

/// A polynomial with nonnegative integer coefficients, the generating
/// function of Betti numbers.  Zero coefficients are not stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PoincarePolynomial {
    coeffs: BTreeMap<usize, u64>,
}

impl PoincarePolynomial {
    pub fn zero() -> Self {
        PoincarePolynomial::default()
    }

    pub fn one() -> Self {
        let mut p = PoincarePolynomial::zero();
        p.add_coeff(0, 1);
        p
    }

    /// Graded dimensions indexed by `k` become coefficients in degree
    /// `3k`.
    pub fn from_graded_dims(dims: &[u64]) -> Self {
        let mut p = PoincarePolynomial::zero();
        for (k, &d) in dims.iter().enumerate() {
            p.add_coeff(3 * k, d);
        }
        p
    }

    pub fn add_coeff(&mut self, degree: usize, c: u64) {
        if c == 0 {
            return;
        }
        *self.coeffs.entry(degree).or_insert(0) += c;
    }

    pub fn coeff(&self, degree: usize) -> u64 {
        self.coeffs.get(&degree).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&d, &c) in &other.coeffs {
            out.add_coeff(d, c);
        }
        out
    }

    /// Multiply by `t^shift`.
    pub fn shifted(&self, shift: usize) -> Self {
        let mut out = PoincarePolynomial::zero();
        for (&d, &c) in &self.coeffs {
            out.add_coeff(d + shift, c);
        }
        out
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn max_degree(&self) -> usize {
        self.coeffs.keys().next_back().copied().unwrap_or(0)
    }

    /// Sum of all coefficients: the total Betti rank, `P(1)`.
    pub fn total_rank(&self) -> u64 {
        self.coeffs.values().sum()
    }

    /// `P(-1)`, the Euler characteristic of the complement.
    pub fn euler_characteristic(&self) -> i64 {
        self.coeffs
            .iter()
            .map(|(&d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    pub fn supported_on_multiples_of(&self, step: usize) -> bool {
        self.coeffs.keys().all(|d| d % step == 0)
    }

    /// Betti vector `b_0..b_top`; degrees beyond `top` must not occur.
    pub fn betti_vector(&self, top: usize) -> Vec<u64> {
        let mut out = alloc::vec![0u64; top + 1];
        for (&d, &c) in &self.coeffs {
            assert!(d <= top, "coefficient in degree {d} beyond top {top}");
            out[d] = c;
        }
        out
    }
}

impl fmt::Display for PoincarePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&d, &c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (d, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, c) => write!(f, "{c}t")?,
                (d, 1) => write!(f, "t^{d}")?,
                (d, c) => write!(f, "{c}t^{d}")?,
            }
        }
        Ok(())
    }
}

/// Poincaré polynomial of the complement, by counting nbc sets.
pub fn poincare(arr: &Arrangement) -> PoincarePolynomial {
    let counts = Matroid::from_arrangement(arr).nbc_counts();
    PoincarePolynomial::from_graded_dims(&counts)
}

/// Same polynomial from Whitney numbers of the intersection lattice.
pub fn poincare_whitney(arr: &Arrangement) -> PoincarePolynomial {
    whitney_poincare(arr)
}

/// Same polynomial from brute-force row reduction in the algebra.
pub fn poincare_bruteforce(arr: &Arrangement) -> Result<PoincarePolynomial> {
    Ok(PoincarePolynomial::from_graded_dims(
        &os::graded_dims_bruteforce(arr)?,
    ))
}

/// Betti numbers, total rank, and Euler characteristic in one record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiSummary {
    /// `b_0..b_{3n}` for ambient dimension `n`; nonzero entries sit in
    /// degrees divisible by three.
    pub betti: Vec<u64>,
    pub total_rank: u64,
    pub euler: i64,
}

/// Betti table of the complement, padded to the top conceivable degree
/// `3n`.
pub fn euler_and_ranks(arr: &Arrangement) -> BettiSummary {
    let p = poincare(arr);
    BettiSummary {
        betti: p.betti_vector(3 * arr.ambient_dim()),
        total_rank: p.total_rank(),
        euler: p.euler_characteristic(),
    }
}

/// One index of the deletion–restriction check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceEntry {
    pub index: usize,
    /// `P(X)`, counted via nbc sets.
    pub parent: PoincarePolynomial,
    /// `P(X')` for the deletion, via Whitney numbers.
    pub deletion: PoincarePolynomial,
    /// `P(X'')` for the restriction, via Whitney numbers.
    pub restriction: PoincarePolynomial,
    /// `deletion + t^3 * restriction`.
    pub rhs: PoincarePolynomial,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceReport {
    pub entries: Vec<RecurrenceEntry>,
}

impl RecurrenceReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }
}

/// Check `P(X) = P(X') + t^3 P(X'')` at every hyperplane index.
///
/// The parent polynomial comes from the nbc count, both right-hand
/// polynomials from lattice Möbius values; the recurrence ties together
/// two independent engines and three different arrangements per index.
pub fn verify_recurrence(arr: &Arrangement) -> Result<RecurrenceReport> {
    let parent = poincare(arr);
    let mut entries = Vec::with_capacity(arr.hyperplane_count());
    for index in 0..arr.hyperplane_count() {
        let deletion = poincare_whitney(&arr.deletion(index)?);
        let restriction = poincare_whitney(&arr.restriction(index)?);
        let rhs = deletion.add(&restriction.shifted(3));
        let pass = parent == rhs;
        entries.push(RecurrenceEntry {
            index,
            parent: parent.clone(),
            deletion,
            restriction,
            rhs,
            pass,
        });
    }
    Ok(RecurrenceReport { entries })
}
