//! Exact scalars: rationals, quaternions over the rationals, and the
//! complex adjoint representation used to cross-check rank computations.
//!
//! Multiplication in `H` follows the usual Hamilton table
//! `i^2 = j^2 = k^2 = ijk = -1`, `ij = k`.  Because `H` is noncommutative,
//! the side on which scalars act matters everywhere downstream: functionals
//! multiply coordinates on the right, and hyperplane rows are normalized by
//! right multiplication.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Rem, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, kept in lowest terms with positive
/// denominator (the invariant is maintained by `num_rational`).
///
/// The newtype pins down the textual form used at every interface:
/// `Display` and `FromStr` speak `"p/q"`, or just `"p"` when the
/// denominator is one.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn integer(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_big(numer: BigInt, denom: BigInt) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer, denom)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.0.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    /// Nearest `f64`; only the numerical layer calls this.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

macro_rules! rational_binop {
    ($trait:ident, $method:ident) => {
        impl<'a, 'b> $trait<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                (&self).$method(&rhs)
            }
        }
    };
}

rational_binop!(Add, add);
rational_binop!(Sub, sub);
rational_binop!(Mul, mul);
rational_binop!(Div, div);
rational_binop!(Rem, rem);

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational(BigRational::one())
    }
}

impl Num for Rational {
    type FromStrRadixErr = <BigRational as Num>::FromStrRadixErr;
    fn from_str_radix(s: &str, radix: u32) -> core::result::Result<Self, Self::FromStrRadixErr> {
        BigRational::from_str_radix(s, radix).map(Rational)
    }
}

impl Signed for Rational {
    fn abs(&self) -> Self {
        Rational(self.0.abs())
    }
    fn abs_sub(&self, other: &Self) -> Self {
        Rational(self.0.abs_sub(&other.0))
    }
    fn signum(&self) -> Self {
        Rational(self.0.signum())
    }
    fn is_positive(&self) -> bool {
        self.0.is_positive()
    }
    fn is_negative(&self) -> bool {
        self.0.is_negative()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::ParseNumber(s.to_string());
        match s.split_once('/') {
            None => {
                let n = BigInt::from_str(s).map_err(|_| bad())?;
                Ok(Rational(BigRational::from_integer(n)))
            }
            Some((p, q)) => {
                let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
                let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
                if q.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(Rational(BigRational::new(p, q)))
            }
        }
    }
}

/// Gaussian rational, the scalar of the complex adjoint picture.
pub type GaussianRational = Complex<Rational>;

/// Quaternion `w + xi + yj + zk` with rational components.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quaternion {
    pub w: Rational,
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

impl Quaternion {
    pub fn new(w: Rational, x: Rational, y: Rational, z: Rational) -> Self {
        Quaternion { w, x, y, z }
    }

    pub fn from_ints(w: i64, x: i64, y: i64, z: i64) -> Self {
        Quaternion::new(
            Rational::integer(w),
            Rational::integer(x),
            Rational::integer(y),
            Rational::integer(z),
        )
    }

    pub fn zero() -> Self {
        Quaternion::from_ints(0, 0, 0, 0)
    }

    pub fn one() -> Self {
        Quaternion::from_ints(1, 0, 0, 0)
    }

    pub fn i() -> Self {
        Quaternion::from_ints(0, 1, 0, 0)
    }

    pub fn j() -> Self {
        Quaternion::from_ints(0, 0, 1, 0)
    }

    pub fn k() -> Self {
        Quaternion::from_ints(0, 0, 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.w.is_zero() && self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn conj(&self) -> Self {
        Quaternion::new(self.w.clone(), -&self.x, -&self.y, -&self.z)
    }

    /// `|q|^2 = q conj(q)`, a nonnegative rational.
    pub fn norm_sq(&self) -> Rational {
        &(&self.w * &self.w)
            + &(&(&self.x * &self.x) + &(&(&self.y * &self.y) + &(&self.z * &self.z)))
    }

    /// Two-sided inverse `conj(q) / |q|^2`.
    pub fn inv(&self) -> Result<Self> {
        let n = self.norm_sq();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n_inv = n.inv()?;
        let c = self.conj();
        Ok(Quaternion::new(
            &c.w * &n_inv,
            &c.x * &n_inv,
            &c.y * &n_inv,
            &c.z * &n_inv,
        ))
    }

    pub fn components(&self) -> [&Rational; 4] {
        [&self.w, &self.x, &self.y, &self.z]
    }

    pub fn from_components(c: [Rational; 4]) -> Self {
        let [w, x, y, z] = c;
        Quaternion::new(w, x, y, z)
    }

    /// The pair `(a, b)` with `q = a + b j`, where `a = w + xi` and
    /// `b = y + zi` live in the complex subfield generated by `i`.
    pub fn complex_pair(&self) -> (GaussianRational, GaussianRational) {
        (
            Complex::new(self.w.clone(), self.x.clone()),
            Complex::new(self.y.clone(), self.z.clone()),
        )
    }

    /// Complex adjoint of `q = a + bj`: the matrix of right multiplication
    /// on `C^2 = H`, `[[a, b], [-conj(b), conj(a)]]`.
    pub fn adjoint(&self) -> ComplexAdjoint {
        let (a, b) = self.complex_pair();
        ComplexAdjoint {
            entries: [[a.clone(), b.clone()], [-b.conj(), a.conj()]],
        }
    }
}

impl Add for &Quaternion {
    type Output = Quaternion;
    fn add(self, rhs: &Quaternion) -> Quaternion {
        Quaternion::new(
            &self.w + &rhs.w,
            &self.x + &rhs.x,
            &self.y + &rhs.y,
            &self.z + &rhs.z,
        )
    }
}

impl Sub for &Quaternion {
    type Output = Quaternion;
    fn sub(self, rhs: &Quaternion) -> Quaternion {
        Quaternion::new(
            &self.w - &rhs.w,
            &self.x - &rhs.x,
            &self.y - &rhs.y,
            &self.z - &rhs.z,
        )
    }
}

impl Neg for &Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-&self.w, -&self.x, -&self.y, -&self.z)
    }
}

impl Mul for &Quaternion {
    type Output = Quaternion;
    /// Hamilton product; mind the order, `pq != qp` in general.
    fn mul(self, rhs: &Quaternion) -> Quaternion {
        let (w1, x1, y1, z1) = (&self.w, &self.x, &self.y, &self.z);
        let (w2, x2, y2, z2) = (&rhs.w, &rhs.x, &rhs.y, &rhs.z);
        Quaternion::new(
            &(w1 * w2) - &(&(x1 * x2) + &(&(y1 * y2) + &(z1 * z2))),
            &(&(w1 * x2) + &(x1 * w2)) + &(&(y1 * z2) - &(z1 * y2)),
            &(&(w1 * y2) - &(x1 * z2)) + &(&(y1 * w2) + &(z1 * x2)),
            &(&(w1 * z2) + &(x1 * y2)) + &(&(z1 * w2) - &(y1 * x2)),
        )
    }
}

macro_rules! quaternion_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Quaternion {
            type Output = Quaternion;
            fn $method(self, rhs: Quaternion) -> Quaternion {
                (&self).$method(&rhs)
            }
        }
    };
}

quaternion_owned_binop!(Add, add);
quaternion_owned_binop!(Sub, sub);
quaternion_owned_binop!(Mul, mul);

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        -&self
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (coeff, unit) in [
            (&self.w, ""),
            (&self.x, "i"),
            (&self.y, "j"),
            (&self.z, "k"),
        ] {
            if coeff.is_zero() {
                continue;
            }
            let mag = coeff.abs();
            let body = if unit.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                unit.to_string()
            } else {
                alloc::format!("{mag}{unit}")
            };
            if coeff.is_negative() {
                if parts.is_empty() {
                    parts.push(alloc::format!("-{body}"));
                } else {
                    parts.push(alloc::format!("- {body}"));
                }
            } else if parts.is_empty() {
                parts.push(body);
            } else {
                parts.push(alloc::format!("+ {body}"));
            }
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" "))
    }
}

/// 2x2 Gaussian-rational matrix, the adjoint image of a quaternion.
///
/// The embedding is a ring homomorphism, which is what makes the doubled
/// complex rank a trustworthy independent oracle for quaternionic rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexAdjoint {
    pub entries: [[GaussianRational; 2]; 2],
}

impl ComplexAdjoint {
    pub fn identity() -> Self {
        let one = GaussianRational::new(Rational::integer(1), Rational::integer(0));
        let zero = GaussianRational::new(Rational::integer(0), Rational::integer(0));
        ComplexAdjoint {
            entries: [[one.clone(), zero.clone()], [zero, one]],
        }
    }
}

impl Mul for &ComplexAdjoint {
    type Output = ComplexAdjoint;
    fn mul(self, rhs: &ComplexAdjoint) -> ComplexAdjoint {
        let mut out = ComplexAdjoint::identity();
        for r in 0..2 {
            for c in 0..2 {
                let mut acc = GaussianRational::new(Rational::integer(0), Rational::integer(0));
                for t in 0..2 {
                    acc = acc + self.entries[r][t].clone() * rhs.entries[t][c].clone();
                }
                out.entries[r][c] = acc;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn q(w: i64, x: i64, y: i64, z: i64) -> Quaternion {
        Quaternion::from_ints(w, x, y, z)
    }

    #[test]
    fn rational_display_and_parse() {
        let r: Rational = "-3/6".parse().unwrap();
        assert_eq!(r, Rational::new(-1, 2));
        assert_eq!(r.to_string(), "-1/2");
        assert_eq!(Rational::new(14, -7).to_string(), "-2");
        assert_eq!("7".parse::<Rational>().unwrap(), Rational::integer(7));
        assert!(matches!(
            " 1/0 ".parse::<Rational>(),
            Err(Error::DivisionByZero)
        ));
        assert!(matches!(
            "2x".parse::<Rational>(),
            Err(Error::ParseNumber(_))
        ));
    }

    #[test]
    fn hamilton_table() {
        let (i, j, k) = (Quaternion::i(), Quaternion::j(), Quaternion::k());
        let m1 = -&Quaternion::one();
        assert_eq!(&i * &j, k);
        assert_eq!(&j * &k, i);
        assert_eq!(&k * &i, j);
        assert_eq!(&i * &i, m1);
        assert_eq!(&j * &j, m1);
        assert_eq!(&k * &k, m1);
        assert_eq!(&j * &i, -&k);
        assert_ne!(&i * &j, &j * &i);
    }

    #[test]
    fn worked_product() {
        // (i - k)(j - k) expanded term by term from the Hamilton table:
        // ij - ik - kj + k^2 = k + j + i - 1.
        let p = q(0, 1, 0, -1);
        let r = q(0, 0, 1, -1);
        assert_eq!(&p * &r, q(-1, 1, 1, 1));
    }

    #[test]
    fn conjugation_and_norm() {
        let p = q(1, 2, -3, 4);
        let r = q(-2, 0, 5, 1);
        assert_eq!((&p * &r).conj(), &r.conj() * &p.conj());
        assert_eq!((&p * &r).norm_sq(), &p.norm_sq() * &r.norm_sq());
        assert_eq!(p.norm_sq(), Rational::integer(30));
    }

    #[test]
    fn inverse() {
        let p = q(1, 1, 1, 1);
        let expected = Quaternion::new(
            Rational::new(1, 4),
            Rational::new(-1, 4),
            Rational::new(-1, 4),
            Rational::new(-1, 4),
        );
        assert_eq!(p.inv().unwrap(), expected);
        assert_eq!(&p * &p.inv().unwrap(), Quaternion::one());
        assert_eq!(&p.inv().unwrap() * &p, Quaternion::one());
        assert!(matches!(
            Quaternion::zero().inv(),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn adjoint_is_multiplicative() {
        let pairs = vec![
            (q(0, 1, 0, -1), q(0, 0, 1, -1)),
            (q(1, 2, 3, 4), q(-1, 0, 2, 5)),
            (q(0, 0, 1, 0), q(0, 1, 0, 0)),
        ];
        for (p, r) in pairs {
            assert_eq!((&p * &r).adjoint(), &p.adjoint() * &r.adjoint());
        }
    }

    #[test]
    fn adjoint_entries() {
        // i |-> diag(i, -i); j |-> [[0, 1], [-1, 0]].
        let zero = Rational::integer(0);
        let one = Rational::integer(1);
        let ad_i = Quaternion::i().adjoint();
        assert_eq!(
            ad_i.entries[0][0],
            GaussianRational::new(zero.clone(), one.clone())
        );
        assert_eq!(
            ad_i.entries[1][1],
            GaussianRational::new(zero.clone(), -&one)
        );
        assert!(ad_i.entries[0][1].is_zero() && ad_i.entries[1][0].is_zero());
        let ad_j = Quaternion::j().adjoint();
        assert_eq!(
            ad_j.entries[0][1],
            GaussianRational::new(one.clone(), zero.clone())
        );
        assert_eq!(
            ad_j.entries[1][0],
            GaussianRational::new(-&one, zero.clone())
        );
    }

    #[test]
    fn quaternion_display() {
        assert_eq!(q(1, 0, -1, 0).to_string(), "1 - j");
        assert_eq!(
            Quaternion::new(
                Rational::integer(0),
                Rational::new(-1, 2),
                Rational::integer(0),
                Rational::integer(3),
            )
            .to_string(),
            "-1/2i + 3k"
        );
        assert_eq!(Quaternion::zero().to_string(), "0");
    }
}
