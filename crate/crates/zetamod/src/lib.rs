//! Zeta functions of locally finite modules over the profinite integers.
//!
//! A locally finite module is a set on which a single invertible map `phi`
//! (the Frobenius) acts with finite orbits, each orbit counted by its degree.
//! Everything in this crate is organised around three equivalent descriptions
//! of such a module's zeta function and the checks that tie them together:
//!
//! * an Euler product over orbits, grouped by degree,
//! * an exponential of fixed-point counts `N_r`,
//! * a power series whose coefficients count effective divisors `A_m`.
//!
//! The crate layers:
//!
//! * [`exact`] — arbitrary-precision rationals, truncated power series,
//!   integer polynomials, Newton's identities, Möbius inversion.
//! * [`spectrum`] — orbit spectra and fixed-point tables, restriction of the
//!   acting group, disjoint unions, faithfulness.
//! * [`zeta`] — the three zeta expressions, the quotient by the projective
//!   line factor, polynomial detection, divisor-count and power-sum checks.
//! * [`rha`] — the Riemann-hypothesis-analogue verdict for polynomial
//!   quotients: root magnitudes, exact functional-equation and bound checks,
//!   restriction equivalence, covering-order estimates.
//! * [`ffgeom`] — finite fields, plane projective curves, brute-force point
//!   counting, and the classical spectra (projective line, a non-projective
//!   family) used as reference modules.
//! * [`covmodel`] — finite permutation models of coverings: commuting group
//!   actions, quotients, inertia, Burnside-style identities, twists.
//! * [`input`] — the one structured text format shared by all object kinds.

// Series and polynomial code indexes by exponent throughout; iterator
// rewrites of those loops hide the arithmetic they exist to show.
#![allow(clippy::needless_range_loop)]

pub mod covmodel;
pub mod exact;
pub mod ffgeom;
pub mod input;
pub mod rha;
pub mod spectrum;
pub mod zeta;
