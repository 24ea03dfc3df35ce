//! The degree-3 Orlik–Solomon algebra of an arrangement.
//!
//! One exterior generator `e_l` of degree 3 per hyperplane; products are
//! indexed by subsets of hyperplanes (bitmasks).  Because all generators
//! sit in odd degree, the sign rules are the classical alternating ones
//! with "number of generators" playing the role of degree.  The boundary
//! `d` drops one generator at a time with alternating signs, and the
//! defining ideal is spanned by `d(e_C)` over dependent sets `C`; circuits
//! alone suffice, which is what the fast engine uses, while the
//! brute-force engine keeps every dependent set as an independent check.
//!
//! Graded dimensions are computed three unrelated ways: row reduction over
//! `Q` (here), counting sets with no broken circuit (via [`crate::matroid`]),
//! and Möbius/Whitney numbers of the intersection lattice.  Agreement of
//! the three is one of the headline cross-checks of the crate.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::matroid::{mask_to_indices, Matroid};
use crate::quaternion::Rational;

/// Largest ground set the subset-enumerating engines will touch.
pub const BRUTE_FORCE_LIMIT: usize = 20;

/// Sign of the shuffle merging two disjoint ascending index sets:
/// `(-1)^inversions` where an inversion is a pair `a in s`, `b in t`
/// with `a > b`.
pub(crate) fn shuffle_sign(s: u64, t: u64) -> i32 {
    debug_assert_eq!(s & t, 0);
    let mut inversions = 0u32;
    let mut tt = t;
    while tt != 0 {
        let b = tt.trailing_zeros();
        inversions += (s >> (b + 1)).count_ones();
        tt &= tt - 1;
    }
    if inversions & 1 == 0 {
        1
    } else {
        -1
    }
}

/// A sparse element of the free graded-commutative algebra on generators
/// `e_0, e_1, ...`, each of degree 3.  Keys are generator bitmasks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExteriorElement {
    terms: BTreeMap<u64, Rational>,
}

impl ExteriorElement {
    pub fn zero() -> Self {
        ExteriorElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        ExteriorElement::monomial(0)
    }

    pub fn generator(l: usize) -> Self {
        assert!(l < 64);
        ExteriorElement::monomial(1u64 << l)
    }

    /// The product of the generators in `mask`, ascending, coefficient 1.
    pub fn monomial(mask: u64) -> Self {
        let mut e = ExteriorElement::zero();
        e.add_term(mask, Rational::integer(1));
        e
    }

    pub fn add_term(&mut self, mask: u64, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(mask).or_insert_with(Rational::zero);
        *entry = &*entry + &coeff;
        if entry.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn coeff(&self, mask: u64) -> Rational {
        self.terms
            .get(&mask)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u64, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (mask, c) in &other.terms {
            out.add_term(*mask, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (mask, c) in &other.terms {
            out.add_term(*mask, -c);
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = ExteriorElement::zero();
        for (mask, v) in &self.terms {
            out.add_term(*mask, v * c);
        }
        out
    }

    /// Wedge product with the shuffle sign; repeated generators kill the
    /// term.
    pub fn wedge(&self, other: &Self) -> Self {
        let mut out = ExteriorElement::zero();
        for (ms, cs) in &self.terms {
            for (mt, ct) in &other.terms {
                if ms & mt != 0 {
                    continue;
                }
                let sign = shuffle_sign(*ms, *mt);
                let mut c = cs * ct;
                if sign < 0 {
                    c = -c;
                }
                out.add_term(ms | mt, c);
            }
        }
        out
    }

    /// The boundary `d(e_{b_1} ... e_{b_k}) = sum_l (-1)^{l-1}
    /// e_{b_1} ... (drop b_l) ... e_{b_k}`, extended linearly.  In
    /// particular `d(e_l) = 1` and `d` satisfies the graded Leibniz rule
    /// with parity given by the number of generators.
    pub fn boundary(&self) -> Self {
        let mut out = ExteriorElement::zero();
        for (mask, c) in &self.terms {
            let mut rest = *mask;
            let mut l = 0usize;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                let coeff = if l & 1 == 0 { c.clone() } else { -c };
                out.add_term(mask & !bit, coeff);
                rest &= rest - 1;
                l += 1;
            }
        }
        out
    }

    /// Terms with exactly `k` generators.
    pub fn degree_part(&self, k: usize) -> Self {
        let mut out = ExteriorElement::zero();
        for (mask, c) in &self.terms {
            if mask.count_ones() as usize == k {
                out.add_term(*mask, c.clone());
            }
        }
        out
    }

    /// Number of generators if all terms agree on it.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(|m| m.count_ones() as usize);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }
}

impl fmt::Display for ExteriorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mask, c) in &self.terms {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let monomial: String = if *mask == 0 {
                String::from("1")
            } else {
                let mut s = String::new();
                for i in mask_to_indices(*mask) {
                    s.push_str(&alloc::format!("e{i}"));
                }
                s
            };
            if mag.is_one() && *mask != 0 {
                write!(f, "{monomial}")?;
            } else if *mask == 0 {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag}*{monomial}")?;
            }
        }
        Ok(())
    }
}

/// Row space over `Q` with columns indexed by generator masks; used to
/// reduce elements modulo a span and to count its dimension.
#[derive(Clone, Debug, Default)]
pub(crate) struct RowSpan {
    // pivot column -> row, normalized so the pivot coefficient is 1 and
    // the row has no support before its pivot.
    pivots: BTreeMap<u64, BTreeMap<u64, Rational>>,
}

impl RowSpan {
    pub(crate) fn new() -> Self {
        RowSpan::default()
    }

    pub(crate) fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub(crate) fn reduce(&self, mut row: BTreeMap<u64, Rational>) -> BTreeMap<u64, Rational> {
        for (col, pivot_row) in &self.pivots {
            let Some(c) = row.get(col).cloned() else {
                continue;
            };
            for (pc, pv) in pivot_row {
                let delta = pv * &c;
                let entry = row.entry(*pc).or_insert_with(Rational::zero);
                *entry = &*entry - &delta;
                if entry.is_zero() {
                    row.remove(pc);
                }
            }
            debug_assert!(!row.contains_key(col));
        }
        row
    }

    /// Reduce and keep the row if independent; reports whether the rank
    /// grew.
    pub(crate) fn insert(&mut self, row: BTreeMap<u64, Rational>) -> bool {
        let reduced = self.reduce(row);
        let Some((&col, coeff)) = reduced.iter().next() else {
            return false;
        };
        let inv = coeff.inv().expect("leading coefficient is nonzero");
        let normalized: BTreeMap<u64, Rational> =
            reduced.iter().map(|(m, v)| (*m, v * &inv)).collect();
        self.pivots.insert(col, normalized);
        true
    }
}

fn binomial(m: usize, k: usize) -> u64 {
    if k > m {
        return 0;
    }
    let mut acc = 1u64;
    for i in 0..k.min(m - k) {
        acc = acc * (m - i) as u64 / (i + 1) as u64;
    }
    acc
}

fn guard_ground(size: usize) -> Result<()> {
    if size > BRUTE_FORCE_LIMIT {
        return Err(Error::GroundSetTooLarge {
            size,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    Ok(())
}

/// One relation `d(e_C)` per circuit `C`, in circuit order.
pub fn ideal_generators(matroid: &Matroid) -> Vec<ExteriorElement> {
    matroid
        .circuits()
        .into_iter()
        .map(|c| ExteriorElement::monomial(c).boundary())
        .collect()
}

/// Spans of the ideal's graded pieces, one [`RowSpan`] per degree, from
/// the given set of dependent masks.
fn ideal_spans(ground: usize, dependents: &[u64]) -> Vec<RowSpan> {
    let mut spans: Vec<RowSpan> = (0..=ground).map(|_| RowSpan::new()).collect();
    let all_masks: Vec<u64> = (0..(1u64 << ground)).collect();
    for &d in dependents {
        let gen = ExteriorElement::monomial(d).boundary();
        let gen_degree = d.count_ones() as usize - 1;
        for &m in &all_masks {
            let k = gen_degree + m.count_ones() as usize;
            if k > ground {
                continue;
            }
            let product = ExteriorElement::monomial(m).wedge(&gen);
            if product.is_zero() {
                continue;
            }
            let row: BTreeMap<u64, Rational> =
                product.terms().map(|(m, c)| (*m, c.clone())).collect();
            spans[k].insert(row);
        }
    }
    spans
}

fn dims_from_spans(ground: usize, spans: &[RowSpan]) -> Vec<u64> {
    let mut dims: Vec<u64> = (0..=ground)
        .map(|k| binomial(ground, k) - spans[k].rank() as u64)
        .collect();
    while dims.len() > 1 && *dims.last().unwrap() == 0 {
        dims.pop();
    }
    dims
}

/// Graded dimensions by explicit row reduction, with the ideal spanned by
/// *every* dependent subset — deliberately wasteful, so it cannot share a
/// blind spot with the circuit-based fast path.
pub fn graded_dims_bruteforce(arr: &Arrangement) -> Result<Vec<u64>> {
    let ground = arr.hyperplane_count();
    guard_ground(ground)?;
    let matroid = Matroid::from_arrangement(arr);
    let dependents: Vec<u64> = (0..(1u64 << ground))
        .filter(|&s| {
            let size = s.count_ones() as usize;
            matroid.rank_mask(s) < size
        })
        .collect();
    let spans = ideal_spans(ground, &dependents);
    Ok(dims_from_spans(ground, &spans))
}

/// Graded dimensions by counting sets with no broken circuit.
pub fn graded_dims_nbc(arr: &Arrangement) -> Vec<u64> {
    Matroid::from_arrangement(arr).nbc_counts()
}

/// The algebra with reduction data: graded dimensions from the
/// circuit-generated ideal, plus normal forms of arbitrary elements.
pub struct OSAlgebra {
    ground: usize,
    spans: Vec<RowSpan>,
    dims: Vec<u64>,
    nbc_by_size: Vec<Vec<u64>>,
    circuit_count: usize,
}

impl OSAlgebra {
    pub fn new(arr: &Arrangement) -> Result<Self> {
        let ground = arr.hyperplane_count();
        guard_ground(ground)?;
        let matroid = Matroid::from_arrangement(arr);
        let circuits = matroid.circuits();
        let spans = ideal_spans(ground, &circuits);
        let dims = dims_from_spans(ground, &spans);
        Ok(OSAlgebra {
            ground,
            spans,
            dims,
            nbc_by_size: matroid.nbc_masks_by_size(),
            circuit_count: circuits.len(),
        })
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    /// Dimensions of the graded pieces; index `k` holds the piece of
    /// topological degree `3k`.
    pub fn graded_dims(&self) -> &[u64] {
        &self.dims
    }

    /// Monomial basis indexed by sets with no broken circuit, by size.
    pub fn nbc_basis(&self) -> &[Vec<u64>] {
        &self.nbc_by_size
    }

    pub fn ideal_generator_count(&self) -> usize {
        self.circuit_count
    }

    /// Normal form modulo the ideal, degree by degree.
    pub fn reduce(&self, x: &ExteriorElement) -> ExteriorElement {
        let mut out = ExteriorElement::zero();
        let mut by_degree: BTreeMap<usize, BTreeMap<u64, Rational>> = BTreeMap::new();
        for (mask, c) in x.terms() {
            by_degree
                .entry(mask.count_ones() as usize)
                .or_default()
                .insert(*mask, c.clone());
        }
        for (k, row) in by_degree {
            let reduced = if k < self.spans.len() {
                self.spans[k].reduce(row)
            } else {
                row
            };
            for (mask, c) in reduced {
                out.add_term(mask, c);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement;
    use crate::sampling;
    use alloc::vec;
    use rand::Rng;

    #[test]
    fn wedge_signs() {
        let e0 = ExteriorElement::generator(0);
        let e1 = ExteriorElement::generator(1);
        let e01 = e0.wedge(&e1);
        assert_eq!(e01, ExteriorElement::monomial(0b11));
        // Odd generators anticommute.
        assert_eq!(e1.wedge(&e0), e01.scale(&Rational::integer(-1)));
        assert!(e0.wedge(&e0).is_zero());
        // (e0 e2) ^ e1 moves e1 past e2: one inversion.
        let e02 = ExteriorElement::monomial(0b101);
        assert_eq!(
            e02.wedge(&e1),
            ExteriorElement::monomial(0b111).scale(&Rational::integer(-1))
        );
    }

    #[test]
    fn boundary_of_small_monomials() {
        assert_eq!(
            ExteriorElement::generator(4).boundary(),
            ExteriorElement::one()
        );
        let d01 = ExteriorElement::monomial(0b11).boundary();
        let expected = ExteriorElement::generator(1).sub(&ExteriorElement::generator(0));
        assert_eq!(d01, expected);
        // d(e0 e1 e2) = e1e2 - e0e2 + e0e1.
        let d012 = ExteriorElement::monomial(0b111).boundary();
        let mut expected = ExteriorElement::monomial(0b110);
        expected.add_term(0b101, Rational::integer(-1));
        expected.add_term(0b011, Rational::integer(1));
        assert_eq!(d012, expected);
        assert!(d012.boundary().is_zero());
    }

    #[test]
    fn boundary_squares_to_zero_on_random_elements() {
        let mut rng = sampling::rng_from_seed(42);
        for _ in 0..50 {
            let x = sampling::random_exterior_element(&mut rng, 6, 5);
            assert!(x.boundary().boundary().is_zero());
        }
    }

    #[test]
    fn graded_leibniz() {
        let mut rng = sampling::rng_from_seed(43);
        for _ in 0..50 {
            let degree = rng.gen_range(0..=4);
            let x = sampling::random_homogeneous_element(&mut rng, 6, degree, 4);
            let y = sampling::random_exterior_element(&mut rng, 6, 4);
            let lhs = x.wedge(&y).boundary();
            let mut rhs = x.boundary().wedge(&y);
            let signed = if degree % 2 == 0 {
                x.wedge(&y.boundary())
            } else {
                x.wedge(&y.boundary()).scale(&Rational::integer(-1))
            };
            rhs = rhs.add(&signed);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn u23_dimensions_three_ways() {
        let arr = arrangement::u23();
        let brute = graded_dims_bruteforce(&arr).unwrap();
        let nbc = graded_dims_nbc(&arr);
        let algebra = OSAlgebra::new(&arr).unwrap();
        assert_eq!(brute, vec![1, 3, 2]);
        assert_eq!(nbc, vec![1, 3, 2]);
        assert_eq!(algebra.graded_dims(), &[1, 3, 2]);
        assert_eq!(algebra.ideal_generator_count(), 1);
    }

    #[test]
    fn boolean_algebra_is_exterior() {
        let arr = arrangement::boolean(3);
        assert_eq!(graded_dims_bruteforce(&arr).unwrap(), vec![1, 3, 3, 1]);
        assert_eq!(graded_dims_nbc(&arr), vec![1, 3, 3, 1]);
        let algebra = OSAlgebra::new(&arr).unwrap();
        assert_eq!(algebra.ideal_generator_count(), 0);
        // Nothing reduces in a free algebra.
        let x = ExteriorElement::monomial(0b101);
        assert_eq!(algebra.reduce(&x), x);
    }

    #[test]
    fn u23_reduction() {
        let arr = arrangement::u23();
        let algebra = OSAlgebra::new(&arr).unwrap();
        // e0 ^ d(e0e1e2) = e0e1e2, so the top monomial lies in the ideal.
        let top = ExteriorElement::monomial(0b111);
        assert!(algebra.reduce(&top).is_zero());
        // In degree one piece nothing collapses.
        let e2 = ExteriorElement::generator(2);
        assert_eq!(algebra.reduce(&e2), e2);
        // e1e2 is congruent to a combination of the nbc monomials
        // e0e1, e0e2; check the reduction is idempotent and kills the
        // ideal generator.
        let gen = ExteriorElement::monomial(0b111).boundary();
        assert!(algebra.reduce(&gen).is_zero());
        let reduced = algebra.reduce(&ExteriorElement::monomial(0b110));
        assert_eq!(algebra.reduce(&reduced), reduced);
        assert!(!reduced.is_zero());
    }

    #[test]
    fn display_reads_naturally() {
        let mut x = ExteriorElement::monomial(0b011);
        x.add_term(0b101, Rational::new(-1, 2));
        assert_eq!(alloc::format!("{x}"), "e0e1 - 1/2*e0e2");
        assert_eq!(alloc::format!("{}", ExteriorElement::zero()), "0");
    }

    #[test]
    fn bruteforce_guard_trips() {
        // 21 coordinate hyperplanes would need 2^21 subsets.
        let arr = arrangement::boolean(21);
        assert!(matches!(
            graded_dims_bruteforce(&arr),
            Err(Error::GroundSetTooLarge {
                size: 21,
                limit: 20
            })
        ));
    }
}
