//! A small engine for differential forms on `C^n` with numerical
//! coefficients, written in the `dz`/`dzbar` basis.
//!
//! Symbol `2c` stands for `dz_c` and symbol `2c + 1` for `d(conj z_c)`;
//! a term is a symbol bitmask plus a complex coefficient.  Forms of one
//! fixed degree are enough here.  Everything is dense in the coefficients
//! but sparse in the terms, and a form with no terms is *structurally*
//! zero — which is how bidegree vanishing shows up, with no tolerance
//! involved.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::os::shuffle_sign;

#[derive(Clone, Debug)]
pub struct DiffForm {
    coords: usize,
    degree: usize,
    terms: BTreeMap<u32, Complex64>,
}

impl DiffForm {
    /// A degree beyond `2 * coords` is deliberately allowed: such a form
    /// can hold no term, so wedging past the top degree yields an empty
    /// form instead of a panic.
    pub fn zero(coords: usize, degree: usize) -> Self {
        assert!(coords <= 16, "symbol masks are 32-bit");
        DiffForm {
            coords,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// The basis 1-form for a raw symbol index.
    pub fn symbol(coords: usize, symbol: u32) -> Self {
        let mut f = DiffForm::zero(coords, 1);
        f.add_term(1 << symbol, Complex64::new(1.0, 0.0));
        f
    }

    /// `dz_c`.
    pub fn dz(coords: usize, c: usize) -> Self {
        DiffForm::symbol(coords, 2 * c as u32)
    }

    /// `d(conj z_c)`.
    pub fn dzbar(coords: usize, c: usize) -> Self {
        DiffForm::symbol(coords, 2 * c as u32 + 1)
    }

    pub fn coords(&self) -> usize {
        self.coords
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn add_term(&mut self, mask: u32, coeff: Complex64) {
        debug_assert_eq!(mask.count_ones() as usize, self.degree);
        debug_assert_eq!(mask >> (2 * self.coords), 0);
        if coeff == Complex64::new(0.0, 0.0) {
            return;
        }
        let entry = self
            .terms
            .entry(mask)
            .or_insert_with(|| Complex64::new(0.0, 0.0));
        *entry += coeff;
        if *entry == Complex64::new(0.0, 0.0) {
            self.terms.remove(&mask);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u32, &Complex64)> {
        self.terms.iter()
    }

    /// True when the form has no terms at all.  Exact cancellations and
    /// impossible symbol combinations land here; small-but-nonzero
    /// coefficients do not.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = DiffForm::zero(self.coords, self.degree);
        for (mask, v) in &self.terms {
            out.add_term(*mask, v * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.coords, other.coords);
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (mask, v) in &other.terms {
            out.add_term(*mask, *v);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.coords, other.coords);
        let mut out = DiffForm::zero(self.coords, self.degree + other.degree);
        for (ms, cs) in &self.terms {
            for (mt, ct) in &other.terms {
                if ms & mt != 0 {
                    continue;
                }
                let sign = shuffle_sign(*ms as u64, *mt as u64) as f64;
                out.add_term(ms | mt, cs * ct * sign);
            }
        }
        out
    }

    /// Largest coefficient magnitude; zero for the empty form.
    pub fn inf_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Counts of (unbarred, barred) symbols over all terms.
    pub fn bidegrees(&self) -> BTreeSet<(usize, usize)> {
        self.terms
            .keys()
            .map(|mask| {
                let unbarred = (mask & 0x5555_5555).count_ones() as usize;
                let barred = (mask & 0xAAAA_AAAA).count_ones() as usize;
                (unbarred, barred)
            })
            .collect()
    }

    /// Evaluate on `degree` tangent vectors.  A tangent vector of
    /// `R^{2n} = C^n` is given by its complex coordinates; `dz_c` pairs to
    /// the coordinate, `dzbar_c` to its conjugate, and a monomial becomes
    /// the determinant of the pairing matrix.
    pub fn apply(&self, vectors: &[&[Complex64]]) -> Complex64 {
        assert_eq!(vectors.len(), self.degree);
        let mut acc = Complex64::new(0.0, 0.0);
        for (mask, coeff) in &self.terms {
            let symbols = mask_symbols(*mask);
            let matrix: Vec<Vec<Complex64>> = symbols
                .iter()
                .map(|&s| vectors.iter().map(|v| pair_symbol(s, v)).collect())
                .collect();
            acc += coeff * det(&matrix);
        }
        acc
    }
}

fn mask_symbols(mask: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut rest = mask;
    while rest != 0 {
        out.push(rest.trailing_zeros());
        rest &= rest - 1;
    }
    out
}

fn pair_symbol(symbol: u32, v: &[Complex64]) -> Complex64 {
    let c = (symbol / 2) as usize;
    if symbol & 1 == 0 {
        v[c]
    } else {
        v[c].conj()
    }
}

/// Cofactor expansion; the matrices here are at most 4x4.
fn det(m: &[Vec<Complex64>]) -> Complex64 {
    let n = m.len();
    match n {
        0 => Complex64::new(1.0, 0.0),
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        _ => {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if m[0][j] == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let minor: Vec<Vec<Complex64>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, v)| *v)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                acc += m[0][j] * det(&minor) * sign;
            }
            acc
        }
    }
}

/// Exterior derivative by fourth-order central differences, assembled
/// from Wirtinger derivatives:
/// `d phi = sum_c dz_c ^ (d phi / d z_c) + dzbar_c ^ (d phi / d zbar_c)`
/// with `d/dz = (D_x - i D_y)/2` along the real and imaginary axes of
/// each complex coordinate.
///
/// The five-point stencil `(f(-2h) - 8f(-h) + 8f(h) - f(2h)) / 12h` keeps
/// the truncation error at `O(h^4)`, which the closedness tolerances rely
/// on; a plain second-order stencil would bottom out near `1e-5` for the
/// forms measured here and mask nothing.
pub fn numeric_d<F>(field: &F, p: &[Complex64], h: f64) -> DiffForm
where
    F: Fn(&[Complex64]) -> DiffForm,
{
    let base = field(p);
    let coords = base.coords();
    let mut out = DiffForm::zero(coords, base.degree() + 1);
    let eval = |c: usize, re: f64, im: f64| {
        let mut q = p.to_vec();
        q[c] += Complex64::new(re, im);
        field(&q)
    };
    let stencil = |a: DiffForm, b: DiffForm, c: DiffForm, d: DiffForm| {
        // (a - 8b + 8c - d) / 12h with a at -2h, b at -h, c at +h, d at +2h.
        a.sub(&b.scale(Complex64::new(8.0, 0.0)))
            .add(&c.scale(Complex64::new(8.0, 0.0)))
            .sub(&d)
            .scale(Complex64::new(1.0 / (12.0 * h), 0.0))
    };
    for c in 0..p.len() {
        let dx = stencil(
            eval(c, -2.0 * h, 0.0),
            eval(c, -h, 0.0),
            eval(c, h, 0.0),
            eval(c, 2.0 * h, 0.0),
        );
        let dy = stencil(
            eval(c, 0.0, -2.0 * h),
            eval(c, 0.0, -h),
            eval(c, 0.0, h),
            eval(c, 0.0, 2.0 * h),
        );
        let d_dz = dx
            .scale(Complex64::new(0.5, 0.0))
            .add(&dy.scale(Complex64::new(0.0, -0.5)));
        let d_dzbar = dx
            .scale(Complex64::new(0.5, 0.0))
            .add(&dy.scale(Complex64::new(0.0, 0.5)));
        out = out
            .add(&DiffForm::dz(coords, c).wedge(&d_dz))
            .add(&DiffForm::dzbar(coords, c).wedge(&d_dzbar));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn wedge_anticommutes_on_one_forms() {
        let dz = DiffForm::dz(2, 0);
        let dw = DiffForm::dz(2, 1);
        let a = dz.wedge(&dw);
        let b = dw.wedge(&dz);
        assert_eq!(a.sub(&b.scale(c(-1.0, 0.0))).inf_norm(), 0.0);
        assert!(dz.wedge(&dz).is_empty());
    }

    #[test]
    fn apply_is_a_determinant() {
        // (dz ^ dw)(e_z, e_w) = 1 and swapping arguments flips the sign.
        let form = DiffForm::dz(2, 0).wedge(&DiffForm::dz(2, 1));
        let ez = [c(1.0, 0.0), c(0.0, 0.0)];
        let ew = [c(0.0, 0.0), c(1.0, 0.0)];
        assert_eq!(form.apply(&[&ez, &ew]), c(1.0, 0.0));
        assert_eq!(form.apply(&[&ew, &ez]), c(-1.0, 0.0));
        // dzbar pairs conjugated: dzbar(i e_z) = -i.
        let izbar = DiffForm::dzbar(2, 0);
        let iez = [c(0.0, 1.0), c(0.0, 0.0)];
        assert_eq!(izbar.apply(&[&iez]), c(0.0, -1.0));
    }

    #[test]
    fn bidegrees_split_symbols() {
        let f = DiffForm::dz(2, 0)
            .wedge(&DiffForm::dz(2, 1))
            .wedge(&DiffForm::dzbar(2, 1));
        assert_eq!(f.bidegrees().into_iter().collect::<Vec<_>>(), vec![(2, 1)]);
    }

    #[test]
    fn numeric_d_on_polynomial_field() {
        // phi = z^2 dw: d phi = 2z dz ^ dw, computed here to stencil
        // accuracy at a generic point.
        let field = |p: &[Complex64]| {
            let mut f = DiffForm::zero(2, 1);
            f.add_term(1 << 2, p[0] * p[0]);
            f
        };
        let p = vec![c(0.3, -0.7), c(1.1, 0.2)];
        let d = numeric_d(&field, &p, 1e-4);
        let mut expected = DiffForm::zero(2, 2);
        expected.add_term(0b0101, 2.0 * p[0]);
        assert!(d.sub(&expected).inf_norm() < 1e-10);
    }

    #[test]
    fn numeric_d_sees_antiholomorphic_parts() {
        // phi = conj(z): d phi = dzbar.
        let field = |p: &[Complex64]| {
            let mut f = DiffForm::zero(1, 0);
            f.add_term(0, p[0].conj());
            f
        };
        let p = vec![c(0.4, 0.9)];
        let d = numeric_d(&field, &p, 1e-4);
        let expected = DiffForm::dzbar(1, 0);
        assert!(d.sub(&expected).inf_norm() < 1e-10);
    }
}
