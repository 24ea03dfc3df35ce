//! Exact invariants of complements of central quaternionic hyperplane
//! arrangements.
//!
//! A hyperplane here is the kernel of a left-linear functional
//! `a(v) = v_1 a_1 + ... + v_n a_n` on `H^n`, with quaternion coefficients
//! acting on the right.  Everything combinatorial (ranks, the intersection
//! lattice, Orlik–Solomon graded dimensions, Poincaré polynomials) is
//! computed in exact rational arithmetic; floating point only enters in
//! [`derham`], which validates an explicit closed 3-form numerically.
//!
//! The crate is `no_std`-compatible (with `alloc`); the default `std`
//! feature is only needed for `std::error::Error` integration.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod arrangement;
pub mod derham;
pub mod error;
pub mod hlinalg;
pub mod matroid;
pub mod os;
pub mod quaternion;
pub mod report;
pub mod sampling;

pub use arrangement::{Arrangement, Hyperplane};
pub use error::{Error, Result};
pub use matroid::{IntersectionLattice, Matroid};
pub use os::ExteriorElement;
pub use quaternion::{Quaternion, Rational};
pub use report::PoincarePolynomial;
