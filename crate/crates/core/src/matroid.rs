//! The matroid of an arrangement and its intersection lattice.
//!
//! Subsets of hyperplanes are bitmasks; the rank of a subset is the
//! codimension of its intersection, i.e. the right row rank of the stacked
//! coefficient rows.  Rank calls are memoized per matroid, since lattice
//! and circuit enumeration revisit the same subsets constantly.
//!
//! Flats are closed subsets ordered by inclusion; the Möbius function is
//! computed straight from its defining recursion, and the Whitney numbers
//! `sum |mu(0, F)|` over flats of fixed rank give the third, purely
//! lattice-theoretic route to the graded dimensions.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;

use crate::arrangement::Arrangement;
use crate::hlinalg;
use crate::report::PoincarePolynomial;

pub fn mask_to_indices(mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut rest = mask;
    while rest != 0 {
        out.push(rest.trailing_zeros() as usize);
        rest &= rest - 1;
    }
    out
}

pub fn indices_to_mask(indices: &[usize]) -> u64 {
    indices.iter().fold(0u64, |m, &i| m | (1u64 << i))
}

/// The matroid of the hyperplanes of an arrangement, with memoized ranks.
///
/// The cache sits in a `RefCell`, so a `Matroid` is cheap to query but not
/// `Sync`; clone one per thread if that ever matters.
#[derive(Clone, Debug)]
pub struct Matroid {
    arrangement: Arrangement,
    ground: usize,
    rank_cache: RefCell<BTreeMap<u64, usize>>,
}

impl Matroid {
    pub fn from_arrangement(arr: &Arrangement) -> Self {
        let ground = arr.hyperplane_count();
        assert!(ground <= 64, "bitmask representation caps the ground set");
        Matroid {
            arrangement: arr.clone(),
            ground,
            rank_cache: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn full_mask(&self) -> u64 {
        if self.ground == 64 {
            u64::MAX
        } else {
            (1u64 << self.ground) - 1
        }
    }

    /// Rank of a subset: codimension of the intersection of its
    /// hyperplanes.
    pub fn rank_mask(&self, mask: u64) -> usize {
        debug_assert_eq!(mask & !self.full_mask(), 0);
        if let Some(&r) = self.rank_cache.borrow().get(&mask) {
            return r;
        }
        let indices = mask_to_indices(mask);
        let r = hlinalg::rank_right_span(&self.arrangement.submatrix(&indices));
        self.rank_cache.borrow_mut().insert(mask, r);
        r
    }

    pub fn rank_indices(&self, indices: &[usize]) -> usize {
        self.rank_mask(indices_to_mask(indices))
    }

    /// Rank of the whole arrangement.
    pub fn rank(&self) -> usize {
        self.rank_mask(self.full_mask())
    }

    pub fn is_independent(&self, mask: u64) -> bool {
        self.rank_mask(mask) == mask.count_ones() as usize
    }

    /// Smallest flat containing `mask`: all elements whose addition does
    /// not raise the rank.
    pub fn closure(&self, mask: u64) -> u64 {
        let r = self.rank_mask(mask);
        let mut out = mask;
        for e in 0..self.ground {
            let bit = 1u64 << e;
            if out & bit != 0 {
                continue;
            }
            if self.rank_mask(mask | bit) == r {
                out |= bit;
            }
        }
        out
    }

    /// All circuits (minimal dependent sets), sorted by their ascending
    /// index lists.  Enumeration grows independent sets one element at a
    /// time instead of scanning the power set; every circuit shows up
    /// exactly once, as `I + max(C)` over its deletion `I`.
    pub fn circuits(&self) -> Vec<u64> {
        let mut independents: BTreeSet<u64> = BTreeSet::new();
        independents.insert(0);
        let mut frontier: Vec<u64> = vec![0];
        let mut circuits: Vec<u64> = Vec::new();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &s in &frontier {
                let size = s.count_ones() as usize;
                let start = if s == 0 {
                    0
                } else {
                    64 - s.leading_zeros() as usize
                };
                for e in start..self.ground {
                    let cand = s | (1u64 << e);
                    if self.rank_mask(cand) == size + 1 {
                        independents.insert(cand);
                        next.push(cand);
                    } else {
                        // `cand` is dependent; it is a circuit iff every
                        // single deletion is independent.  All independent
                        // sets of size <= size are already enumerated.
                        let minimal = mask_to_indices(cand)
                            .into_iter()
                            .all(|f| independents.contains(&(cand & !(1u64 << f))));
                        if minimal {
                            circuits.push(cand);
                        }
                    }
                }
            }
            frontier = next;
        }
        sort_masks_lex(&mut circuits);
        circuits
    }

    /// Broken circuits: each circuit with its least element dropped.
    pub fn broken_circuits(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self.circuits().into_iter().map(|c| c & (c - 1)).collect();
        out.sort_unstable();
        out.dedup();
        sort_masks_lex(&mut out);
        out
    }

    /// Subsets containing no broken circuit, grouped by size.  Containing
    /// no broken circuit already forces independence, so these are the
    /// classical monomial-basis index sets.
    pub fn nbc_masks_by_size(&self) -> Vec<Vec<u64>> {
        let broken = self.broken_circuits();
        let rank = self.rank();
        let mut by_size: Vec<Vec<u64>> = vec![Vec::new(); rank + 1];
        by_size[0].push(0);
        let mut stack: Vec<(u64, usize)> = vec![(0, 0)];
        while let Some((mask, start)) = stack.pop() {
            for e in start..self.ground {
                let cand = mask | (1u64 << e);
                if broken.iter().any(|&bc| bc & !cand == 0) {
                    continue;
                }
                debug_assert!(self.is_independent(cand));
                let size = cand.count_ones() as usize;
                by_size[size].push(cand);
                if size < rank {
                    stack.push((cand, e + 1));
                }
            }
        }
        for level in &mut by_size {
            sort_masks_lex(level);
        }
        by_size
    }

    /// Number of no-broken-circuit sets of each size, `0..=rank`.
    pub fn nbc_counts(&self) -> Vec<u64> {
        self.nbc_masks_by_size()
            .iter()
            .map(|level| level.len() as u64)
            .collect()
    }

    /// The lattice of flats with Möbius values, ranks, and cover
    /// relations.
    pub fn lattice(&self) -> IntersectionLattice {
        let bottom = self.closure(0);
        let mut levels: Vec<Vec<u64>> = vec![vec![bottom]];
        loop {
            let last = levels.last().unwrap();
            let mut next: BTreeSet<u64> = BTreeSet::new();
            for &f in last {
                for e in 0..self.ground {
                    let bit = 1u64 << e;
                    if f & bit != 0 {
                        continue;
                    }
                    next.insert(self.closure(f | bit));
                }
            }
            if next.is_empty() {
                break;
            }
            levels.push(next.into_iter().collect());
        }
        let mut flats: Vec<Flat> = Vec::new();
        for (rank, level) in levels.iter().enumerate() {
            let mut masks = level.clone();
            sort_masks_lex(&mut masks);
            for mask in masks {
                flats.push(Flat {
                    elements: mask,
                    rank,
                    mobius: 0,
                });
            }
        }
        // Möbius by its recursion: mu(bottom) = 1, and the values below
        // any flat sum to zero.  Flats are already in rank order.
        for i in 0..flats.len() {
            if flats[i].elements == bottom {
                flats[i].mobius = 1;
                continue;
            }
            let mask = flats[i].elements;
            let below: i64 = flats[..i]
                .iter()
                .filter(|g| g.elements & !mask == 0)
                .map(|g| g.mobius)
                .sum();
            flats[i].mobius = -below;
        }
        let lower_covers = flats
            .iter()
            .map(|f| {
                flats
                    .iter()
                    .enumerate()
                    .filter(|(_, g)| g.rank + 1 == f.rank && g.elements & !f.elements == 0)
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();
        IntersectionLattice {
            flats,
            lower_covers,
        }
    }
}

fn sort_masks_lex(masks: &mut [u64]) {
    masks.sort_by_key(|&m| mask_to_indices(m));
}

/// A flat of the matroid: a closed set of hyperplanes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flat {
    pub elements: u64,
    pub rank: usize,
    /// `mu(bottom, this)` in the lattice of flats.
    pub mobius: i64,
}

/// Flats ordered by (rank, ascending index list), with lower covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionLattice {
    flats: Vec<Flat>,
    lower_covers: Vec<Vec<usize>>,
}

impl IntersectionLattice {
    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    /// Indices of the flats covered by flat `i`.
    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.lower_covers[i]
    }

    pub fn top_rank(&self) -> usize {
        self.flats.last().map_or(0, |f| f.rank)
    }

    /// Unsigned Whitney numbers `sum_F |mu(0, F)|` by rank.
    pub fn whitney_coefficients(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.top_rank() + 1];
        for f in &self.flats {
            out[f.rank] += f.mobius.unsigned_abs();
        }
        out
    }
}

/// Poincaré polynomial from lattice data alone: `|mu(0, F)|` contributes
/// in degree `3 rank(F)`.
pub fn whitney_poincare(arr: &Arrangement) -> PoincarePolynomial {
    let lattice = Matroid::from_arrangement(arr).lattice();
    PoincarePolynomial::from_graded_dims(&lattice.whitney_coefficients())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement;
    use crate::sampling;
    use rand::Rng;

    /// Power-set circuit oracle: minimal dependent subsets by scanning
    /// every mask.
    fn circuits_by_power_set(m: &Matroid) -> Vec<u64> {
        let full = m.full_mask();
        let mut out = Vec::new();
        for mask in 1..=full {
            if m.is_independent(mask) {
                continue;
            }
            let minimal = mask_to_indices(mask)
                .into_iter()
                .all(|f| m.is_independent(mask & !(1u64 << f)));
            if minimal {
                out.push(mask);
            }
        }
        sort_masks_lex(&mut out);
        out
    }

    #[test]
    fn u23_basics() {
        let m = Matroid::from_arrangement(&arrangement::u23());
        assert_eq!(m.rank(), 2);
        assert_eq!(m.rank_indices(&[0, 1]), 2);
        assert_eq!(m.circuits(), vec![0b111]);
        assert_eq!(m.closure(0b011), 0b111);
        assert_eq!(m.broken_circuits(), vec![0b110]);
        assert_eq!(m.nbc_counts(), vec![1, 3, 2]);
        assert_eq!(
            m.nbc_masks_by_size()[2],
            vec![0b011, 0b101] // {0,1} and {0,2}; {1,2} is broken
        );
    }

    #[test]
    fn u23_lattice() {
        let m = Matroid::from_arrangement(&arrangement::u23());
        let lat = m.lattice();
        let data: Vec<(u64, usize, i64)> = lat
            .flats()
            .iter()
            .map(|f| (f.elements, f.rank, f.mobius))
            .collect();
        assert_eq!(
            data,
            vec![
                (0b000, 0, 1),
                (0b001, 1, -1),
                (0b010, 1, -1),
                (0b100, 1, -1),
                (0b111, 2, 2),
            ]
        );
        assert_eq!(lat.whitney_coefficients(), vec![1, 3, 2]);
        assert_eq!(lat.lower_covers(4), &[1, 2, 3]);
    }

    #[test]
    fn boolean_lattice_is_the_subset_lattice() {
        let m = Matroid::from_arrangement(&arrangement::boolean(3));
        assert!(m.circuits().is_empty());
        let lat = m.lattice();
        assert_eq!(lat.flats().len(), 8);
        for f in lat.flats() {
            assert_eq!(f.rank, f.elements.count_ones() as usize);
            let expected = if f.rank % 2 == 0 { 1 } else { -1 };
            assert_eq!(f.mobius, expected);
        }
        assert_eq!(lat.whitney_coefficients(), vec![1, 3, 3, 1]);
    }

    #[test]
    fn braid_combinatorics() {
        let m3 = Matroid::from_arrangement(&arrangement::braid(3));
        assert_eq!(m3.rank(), 2);
        assert_eq!(m3.circuits(), vec![0b111]);
        assert_eq!(m3.nbc_counts(), vec![1, 3, 2]);
        // braid(4): rows indexed (0,1), (0,2), (0,3), (1,2), (1,3), (2,3);
        // Whitney numbers match the factored form (1+t)(1+2t)(1+3t).
        let m4 = Matroid::from_arrangement(&arrangement::braid(4));
        assert_eq!(m4.rank(), 3);
        assert_eq!(m4.nbc_counts(), vec![1, 6, 11, 6]);
        assert_eq!(m4.lattice().whitney_coefficients(), vec![1, 6, 11, 6]);
        // Triple circuits {rs, rt, st} for each triangle, plus the
        // quadrilaterals on four indices.
        assert_eq!(m4.circuits().len(), 4 + 3);
    }

    #[test]
    fn circuits_match_power_set_oracle() {
        let mut rng = sampling::rng_from_seed(0xC1AC);
        for _ in 0..25 {
            let arr = sampling::random_arrangement(&mut rng, 3, 5);
            let m = Matroid::from_arrangement(&arr);
            assert_eq!(m.circuits(), circuits_by_power_set(&m), "{arr:?}");
        }
    }

    #[test]
    fn closure_is_a_closure_operator() {
        let mut rng = sampling::rng_from_seed(0xC105);
        for _ in 0..20 {
            let arr = sampling::random_arrangement(&mut rng, 3, 5);
            let m = Matroid::from_arrangement(&arr);
            let mask = rng.gen::<u64>() & m.full_mask();
            let c = m.closure(mask);
            assert_eq!(mask & !c, 0, "extensive");
            assert_eq!(m.closure(c), c, "idempotent");
            assert_eq!(m.rank_mask(c), m.rank_mask(mask), "rank-preserving");
        }
    }

    #[test]
    fn mobius_values_sum_to_zero_below_every_flat() {
        for arr in [
            arrangement::u23(),
            arrangement::braid(4),
            arrangement::generic(2, 4, 5).unwrap(),
        ] {
            let lat = Matroid::from_arrangement(&arr).lattice();
            for (i, f) in lat.flats().iter().enumerate() {
                if i == 0 {
                    assert_eq!(f.mobius, 1);
                    continue;
                }
                let total: i64 = lat
                    .flats()
                    .iter()
                    .filter(|g| g.elements & !f.elements == 0)
                    .map(|g| g.mobius)
                    .sum();
                assert_eq!(total, 0);
            }
        }
    }

    #[test]
    fn rank_is_invariant_under_coordinate_permutation() {
        // Permuting coordinates forces different pivots through every
        // kernel and elimination step; the matroid must not notice.
        let mut rng = sampling::rng_from_seed(0x9E9E);
        for _ in 0..10 {
            let arr = sampling::random_arrangement(&mut rng, 4, 5);
            let n = arr.ambient_dim();
            let mut perm: Vec<usize> = (0..n).collect();
            perm.reverse();
            let permuted = arr.permute_coordinates(&perm).unwrap();
            let m1 = Matroid::from_arrangement(&arr);
            let m2 = Matroid::from_arrangement(&permuted);
            for mask in 0..=m1.full_mask() {
                assert_eq!(m1.rank_mask(mask), m2.rank_mask(mask));
            }
        }
    }

    #[test]
    fn restriction_matroid_is_pivot_independent() {
        // Restricting to a hyperplane parametrises its kernel off the first
        // nonzero coefficient. Reversing the coordinates moves that pivot,
        // so the restricted rows come out different — but they must describe
        // the same matroid. Hyperplanes of the restriction are ordered by
        // first occurrence in the parent, which permutation preserves, so
        // ground sets correspond index by index.
        let mut rng = sampling::rng_from_seed(0x9147);
        for _ in 0..10 {
            let arr = sampling::random_arrangement(&mut rng, 3, 5);
            if arr.ambient_dim() < 2 {
                continue;
            }
            let mut perm: Vec<usize> = (0..arr.ambient_dim()).collect();
            perm.reverse();
            let permuted = arr.permute_coordinates(&perm).unwrap();
            for i in 0..arr.hyperplane_count() {
                let r1 = arr.restriction(i).unwrap();
                let r2 = permuted.restriction(i).unwrap();
                assert_eq!(r1.hyperplane_count(), r2.hyperplane_count());
                let m1 = Matroid::from_arrangement(&r1);
                let m2 = Matroid::from_arrangement(&r2);
                for mask in 0..=m1.full_mask() {
                    assert_eq!(m1.rank_mask(mask), m2.rank_mask(mask));
                }
            }
        }
    }

    #[test]
    fn whitney_poincare_of_u23() {
        let p = whitney_poincare(&arrangement::u23());
        assert_eq!(alloc::format!("{p}"), "1 + 3t^3 + 2t^6");
    }
}
