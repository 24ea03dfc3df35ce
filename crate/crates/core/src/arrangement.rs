//! Central arrangements of quaternionic hyperplanes and the
//! deletion/restriction constructions.
//!
//! A hyperplane is stored through a canonical coefficient row: the row is
//! multiplied on the right by the inverse of its first nonzero entry, so
//! that entry becomes 1.  Right multiplication is the correct side — the
//! kernel of `v -> sum v_r a_r` is unchanged exactly under `a -> a q`
//! for `q != 0` — and it makes "same hyperplane" a plain equality test.

use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};
use crate::hlinalg::{self, CoefficientRow, HMatrix};
use crate::quaternion::Quaternion;
use crate::sampling;

/// Right-scale a row so its first nonzero entry becomes 1.
pub fn canonicalize(row: &[Quaternion]) -> Result<CoefficientRow> {
    let r0 = row
        .iter()
        .position(|q| !q.is_zero())
        .ok_or(Error::ZeroRow)?;
    let inv = row[r0].inv()?;
    Ok(row.iter().map(|q| q * &inv).collect())
}

/// A hyperplane `ker(a)` in `H^n`, kept in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    coeffs: CoefficientRow,
}

impl Hyperplane {
    pub fn new(row: &[Quaternion]) -> Result<Self> {
        Ok(Hyperplane {
            coeffs: canonicalize(row)?,
        })
    }

    pub fn coeffs(&self) -> &[Quaternion] {
        &self.coeffs
    }

    pub fn ambient_dim(&self) -> usize {
        self.coeffs.len()
    }
}

/// A finite central arrangement in `H^n`, with distinct hyperplanes in
/// input order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    ambient_dim: usize,
    hyperplanes: Vec<Hyperplane>,
}

impl Arrangement {
    /// Build from raw coefficient rows.  Rows are canonicalized; zero rows,
    /// length mismatches, and duplicates (equality after canonicalization)
    /// are rejected with the offending indices.
    pub fn new(ambient_dim: usize, rows: Vec<CoefficientRow>) -> Result<Self> {
        let mut hyperplanes: Vec<Hyperplane> = Vec::with_capacity(rows.len());
        for (index, row) in rows.iter().enumerate() {
            if row.len() != ambient_dim {
                return Err(Error::RowLengthMismatch {
                    index,
                    expected: ambient_dim,
                    found: row.len(),
                });
            }
            if row.iter().all(Quaternion::is_zero) {
                return Err(Error::ZeroRowAt { index });
            }
            let h = Hyperplane::new(row).expect("nonzero row");
            if let Some(first) = hyperplanes.iter().position(|g| *g == h) {
                return Err(Error::DuplicateHyperplane {
                    first,
                    second: index,
                });
            }
            hyperplanes.push(h);
        }
        Ok(Arrangement {
            ambient_dim,
            hyperplanes,
        })
    }

    pub fn empty(ambient_dim: usize) -> Self {
        Arrangement {
            ambient_dim,
            hyperplanes: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn hyperplane_count(&self) -> usize {
        self.hyperplanes.len()
    }

    /// Stacked canonical coefficient rows.
    pub fn coefficient_matrix(&self) -> HMatrix {
        HMatrix::from_rows(self.hyperplanes.iter().map(|h| h.coeffs.clone()).collect())
    }

    /// Coefficient matrix of the selected hyperplanes, in index order.
    pub fn submatrix(&self, indices: &[usize]) -> HMatrix {
        HMatrix::from_rows(
            indices
                .iter()
                .map(|&i| self.hyperplanes[i].coeffs.clone())
                .collect(),
        )
    }

    /// The arrangement with hyperplane `index` removed.
    pub fn deletion(&self, index: usize) -> Result<Self> {
        if index >= self.hyperplanes.len() {
            return Err(Error::IndexOutOfRange {
                index,
                len: self.hyperplanes.len(),
            });
        }
        let mut hyperplanes = self.hyperplanes.clone();
        hyperplanes.remove(index);
        Ok(Arrangement {
            ambient_dim: self.ambient_dim,
            hyperplanes,
        })
    }

    /// The induced arrangement on the hyperplane `index`, of ambient
    /// dimension `n - 1` in its kernel coordinates.  Distinct hyperplanes
    /// may restrict to the same one; the image keeps first occurrences.
    pub fn restriction(&self, index: usize) -> Result<Self> {
        if index >= self.hyperplanes.len() {
            return Err(Error::IndexOutOfRange {
                index,
                len: self.hyperplanes.len(),
            });
        }
        let kernel = hlinalg::kernel_basis(self.hyperplanes[index].coeffs())?;
        let mut hyperplanes: Vec<Hyperplane> = Vec::new();
        for (j, h) in self.hyperplanes.iter().enumerate() {
            if j == index {
                continue;
            }
            // Distinct canonical rows are never right multiples of each
            // other, so the restriction cannot produce a zero row here.
            let row = hlinalg::restrict_row(h.coeffs(), &kernel)?;
            let image = Hyperplane::new(&row)?;
            if !hyperplanes.contains(&image) {
                hyperplanes.push(image);
            }
        }
        Ok(Arrangement {
            ambient_dim: self.ambient_dim - 1,
            hyperplanes,
        })
    }

    /// The same hyperplanes read in permuted coordinates.  Useful for
    /// checking pivot-choice independence: permuting coordinates forces
    /// different pivots in every kernel computation.
    pub fn permute_coordinates(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.ambient_dim {
            return Err(Error::IndexOutOfRange {
                index: perm.len(),
                len: self.ambient_dim,
            });
        }
        let mut seen = alloc::vec![false; self.ambient_dim];
        for &p in perm {
            if p >= self.ambient_dim || seen[p] {
                return Err(Error::IndexOutOfRange {
                    index: p,
                    len: self.ambient_dim,
                });
            }
            seen[p] = true;
        }
        let rows = self
            .hyperplanes
            .iter()
            .map(|h| perm.iter().map(|&p| h.coeffs[p].clone()).collect())
            .collect();
        Arrangement::new(self.ambient_dim, rows)
    }
}

/// Coordinate hyperplanes `v_r = 0` in `H^n`.
pub fn boolean(n: usize) -> Arrangement {
    let rows = (0..n)
        .map(|r| {
            let mut row = alloc::vec![Quaternion::zero(); n];
            row[r] = Quaternion::one();
            row
        })
        .collect();
    Arrangement::new(n, rows).expect("coordinate rows are distinct")
}

/// Diagonal hyperplanes `v_r = v_s`, `r < s`, in `H^n`.
pub fn braid(n: usize) -> Arrangement {
    let mut rows = Vec::new();
    for r in 0..n {
        for s in (r + 1)..n {
            let mut row = alloc::vec![Quaternion::zero(); n];
            row[r] = Quaternion::one();
            row[s] = -&Quaternion::one();
            rows.push(row);
        }
    }
    Arrangement::new(n, rows).expect("diagonal rows are distinct")
}

/// Three hyperplanes in `H^2` with coefficient rows `(1, i)`, `(1, j)`,
/// `(1, k)`: any two are independent, all three are not.  The smallest
/// arrangement whose combinatorics is not boolean.
pub fn u23() -> Arrangement {
    Arrangement::new(
        2,
        alloc::vec![
            alloc::vec![Quaternion::one(), Quaternion::i()],
            alloc::vec![Quaternion::one(), Quaternion::j()],
            alloc::vec![Quaternion::one(), Quaternion::k()],
        ],
    )
    .expect("the three rows are pairwise non-proportional")
}

/// `m` random hyperplanes in `H^n` in general position: every subset of
/// size at most `n` has full codimension.  Deterministic in `seed`.
pub fn generic(n: usize, m: usize, seed: u64) -> Result<Arrangement> {
    let mut rng = sampling::rng_from_seed(seed);
    'attempt: for _ in 0..200 {
        let mut rows: Vec<CoefficientRow> = Vec::with_capacity(m);
        let mut canon: Vec<CoefficientRow> = Vec::with_capacity(m);
        while rows.len() < m {
            let row = sampling::random_row(&mut rng, n);
            let c = canonicalize(&row).expect("row is nonzero");
            if canon.contains(&c) {
                continue 'attempt;
            }
            canon.push(c);
            rows.push(row);
        }
        let arr = Arrangement::new(n, rows).expect("rows are distinct");
        // Independence of every min(n, m)-subset implies it for all
        // smaller subsets, since subsets of independent sets stay
        // independent.
        let k = n.min(m);
        if subsets_of_size(m, k)
            .into_iter()
            .all(|s| hlinalg::rank_right_span(&arr.submatrix(&s)) == k)
        {
            return Ok(arr);
        }
    }
    Err(Error::SamplingFailure {
        rejection_rate: 1.0,
    })
}

fn subsets_of_size(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, m: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for e in start..m {
            current.push(e);
            rec(e + 1, m, k, current, out);
            current.pop();
        }
    }
    rec(0, m, k, &mut current, &mut out);
    out
}

/// Named arrangements used by the command line and the test corpus.
/// `n` and `m` default to `2`/`3`/`(2, 4)` where they are not given;
/// `seed` only matters for `generic`.
pub fn catalog(name: &str, n: Option<usize>, m: Option<usize>, seed: u64) -> Result<Arrangement> {
    match name {
        "boolean" => Ok(boolean(n.unwrap_or(2))),
        "braid" => Ok(braid(n.unwrap_or(3))),
        "u23" => Ok(u23()),
        "generic" => {
            let n = n.unwrap_or(2);
            generic(n, m.unwrap_or(n + 2), seed)
        }
        other => Err(Error::UnknownCatalog(alloc::string::String::from(other))),
    }
}

/// A seeded random arrangement, as used by the recurrence sweeps: ambient
/// dimension up to `max_dim`, at most `max_count` hyperplanes.
pub fn random(seed: u64, max_dim: usize, max_count: usize) -> Arrangement {
    let mut rng = sampling::rng_from_seed(seed);
    // Burn a draw so consecutive seeds do not share their first row.
    let _ = rng.gen::<u64>();
    sampling::random_arrangement(&mut rng, max_dim, max_count)
}
