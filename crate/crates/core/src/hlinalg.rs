//! Linear algebra over the quaternions.
//!
//! Rows of a coefficient matrix span a *right* `H`-submodule, and the rank
//! used throughout is the dimension of that right span.  Gaussian
//! elimination works over a division ring as long as every row update
//! multiplies the pivot row by the correction *on the right*:
//! `row_i <- row_i - row_p * (p^{-1} m)` keeps the right span intact.
//!
//! [`rank_via_adjoint`] recomputes the same number through the complex
//! adjoint picture, where a quaternionic matrix of rank `r` becomes a
//! complex matrix of rank `2r`.  The two engines share no code and keep
//! each other honest.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::quaternion::{GaussianRational, Quaternion};

/// A raw coefficient row, one quaternion per coordinate of `H^n`.
pub type CoefficientRow = Vec<Quaternion>;

/// Dense row-major quaternionic matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Quaternion>,
}

impl HMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Quaternion>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        HMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows(rows: Vec<CoefficientRow>) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(nr * nc);
        for row in rows {
            assert_eq!(row.len(), nc, "ragged rows");
            entries.extend(row);
        }
        HMatrix::new(nr, nc, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Quaternion {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Quaternion] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// Entrywise quaternionic conjugate.  Conjugation swaps the roles of
    /// left and right row spans, which the duality tests exploit.
    pub fn conj_entrywise(&self) -> HMatrix {
        HMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(Quaternion::conj).collect(),
        }
    }

    fn rows_vec(&self) -> Vec<CoefficientRow> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }
}

/// Apply a functional with coefficient row `coeffs` to the vector `v`:
/// `v_1 a_1 + ... + v_n a_n`.  Coordinates multiply from the left,
/// coefficients from the right.
pub fn apply_row(v: &[Quaternion], coeffs: &[Quaternion]) -> Quaternion {
    assert_eq!(v.len(), coeffs.len(), "length mismatch");
    let mut acc = Quaternion::zero();
    for (vr, ar) in v.iter().zip(coeffs) {
        acc = &acc + &(vr * ar);
    }
    acc
}

/// Dimension of the right span of the rows, by Gaussian elimination with
/// right-acting corrections.  First nonzero entry in a column is the pivot.
pub fn rank_right_span(m: &HMatrix) -> usize {
    let mut rows = m.rows_vec();
    let (nr, nc) = (m.rows, m.cols);
    let mut rank = 0;
    for col in 0..nc {
        let Some(p) = (rank..nr).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot_inv = rows[rank][col].inv().expect("pivot is nonzero");
        let (top, below) = rows.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in below.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            // row -= pivot_row * (pivot^{-1} * row[col])
            let factor = &pivot_inv * &row[col];
            for (entry, base) in row.iter_mut().zip(pivot_row).skip(col) {
                let delta = base * &factor;
                *entry = &*entry - &delta;
            }
            debug_assert!(row[col].is_zero());
        }
        rank += 1;
        if rank == nr {
            break;
        }
    }
    rank
}

/// Rank of a complex matrix by ordinary Gaussian elimination.
pub fn complex_rank(mut rows: Vec<Vec<GaussianRational>>) -> usize {
    let nr = rows.len();
    let nc = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..nc {
        let Some(p) = (rank..nr).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        let (top, below) = rows.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in below.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone() / pivot.clone();
            for (entry, base) in row.iter_mut().zip(pivot_row).skip(col) {
                *entry = entry.clone() - base.clone() * factor.clone();
            }
        }
        rank += 1;
        if rank == nr {
            break;
        }
    }
    rank
}

/// Rank through the complex adjoint: each quaternion entry `a + bj` becomes
/// the 2x2 block `[[a, b], [-conj(b), conj(a)]]`, and the complex rank of
/// the doubled matrix is exactly twice the quaternionic rank.  An odd
/// complex rank is impossible and reported as an error.
pub fn rank_via_adjoint(m: &HMatrix) -> Result<usize> {
    let zero = GaussianRational::zero();
    let mut rows = vec![vec![zero; 2 * m.cols]; 2 * m.rows];
    for r in 0..m.rows {
        for c in 0..m.cols {
            let block = m.get(r, c).adjoint();
            for (dr, row) in block.entries.iter().enumerate() {
                for (dc, entry) in row.iter().enumerate() {
                    rows[2 * r + dr][2 * c + dc] = entry.clone();
                }
            }
        }
    }
    let doubled = complex_rank(rows);
    if doubled & 1 != 0 {
        return Err(Error::OddAdjointRank { rank: doubled });
    }
    Ok(doubled / 2)
}

/// Basis of the kernel of a single functional, together with the pivot
/// coordinate it eliminates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelBasis {
    /// `n - 1` vectors in `H^n`, one per non-pivot coordinate, in
    /// coordinate order.
    pub basis: Vec<Vec<Quaternion>>,
    /// Index of the first nonzero coefficient of the functional.
    pub pivot_index: usize,
}

/// Left `H`-basis of `ker(a)` for a nonzero row `a`.
///
/// With pivot `r0` (first nonzero coefficient), the basis vector attached
/// to coordinate `s != r0` is `e_s - (a_s a_{r0}^{-1}) e_{r0}`; applying
/// `a` gives `a_s - a_s a_{r0}^{-1} a_{r0} = 0`.
pub fn kernel_basis(a: &[Quaternion]) -> Result<KernelBasis> {
    let r0 = a.iter().position(|q| !q.is_zero()).ok_or(Error::ZeroRow)?;
    let pivot_inv = a[r0].inv()?;
    let n = a.len();
    let mut basis = Vec::with_capacity(n.saturating_sub(1));
    for s in 0..n {
        if s == r0 {
            continue;
        }
        let mut v = vec![Quaternion::zero(); n];
        v[s] = Quaternion::one();
        v[r0] = -&(&a[s] * &pivot_inv);
        basis.push(v);
    }
    Ok(KernelBasis {
        basis,
        pivot_index: r0,
    })
}

/// Coefficient row of the functional `b` restricted to `ker(a)`, expressed
/// in the kernel basis `k`: entry `s` is `b` applied to the `s`-th basis
/// vector.  The zero row means `b` is a right multiple of `a`, i.e. the
/// hyperplanes are parallel (equal), which is an error.
pub fn restrict_row(b: &[Quaternion], k: &KernelBasis) -> Result<CoefficientRow> {
    let out: Vec<Quaternion> = k.basis.iter().map(|v| apply_row(v, b)).collect();
    if out.iter().all(Quaternion::is_zero) {
        return Err(Error::ParallelHyperplane);
    }
    Ok(out)
}
