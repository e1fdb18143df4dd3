//! Exact computation of singularity invariants for isolated
//! (semi-)quasi-homogeneous hypersurface singularities over the rationals,
//! and the K-theoretic consequences that follow from them.
//!
//! The crate is organised bottom-up:
//!
//! * [`polycore`] — exact rationals, sparse multivariate polynomials,
//!   monomial orders and a polynomial parser;
//! * [`groebner`] — Buchberger engine: reduced Gröbner bases, normal forms,
//!   membership, intersections, colon ideals, staircases and quotient
//!   dimensions;
//! * [`milnor`] — Milnor algebras, the weighted filtration on them,
//!   geometric genus, the multiplication-by-f kernel and Du Bois invariants
//!   of surface singularities, minimal exponents;
//! * [`cones`] — closed-form cohomology for affine cones over smooth plane
//!   curves and the vanishing criterion for higher-dimensional cones;
//! * [`classify`] — the theorem layer turning numeric profiles into
//!   K-regularity windows, Du Bois levels, regularity verdicts and reports.

pub mod classify;
mod linalg;
pub mod cones;
pub mod groebner;
pub mod milnor;
pub mod polycore;
pub mod table;

pub use polycore::{MonomialOrder, Polynomial, Rational, Ring, WeightSystem};
