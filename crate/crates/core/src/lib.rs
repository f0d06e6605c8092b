//! Certified numerics and semi-decision procedures for `l1`-norm bounds on
//! simplicial fundamental classes.
//!
//! The crate is organized in layers:
//!
//! * [`rational`] and [`dyadic`] form the exact arithmetic kernel. Every
//!   certified quantity in the crate is ultimately a pair of dyadic bounds.
//! * [`enclosure`] produces rigorous interval enclosures of pi, arccos/arcsin,
//!   square roots, and logarithms on the unit circle.
//! * [`urm`] and [`re_set`] provide an unlimited register machine, a total
//!   numbering of its programs, and budgeted enumerators for recursively
//!   enumerable sets.
//! * [`streams`] builds one-sided approximation streams (upper/lower bound
//!   sequences) and the combinators needed to manipulate them soundly.
//! * [`scl`] evaluates rotation and stable-commutator-length data for a
//!   family of parabolic-limit matrices, together with the derived volume
//!   sequence `alpha`.
//! * [`fields`] implements exact arithmetic in multiquadratic extensions of
//!   the rationals adjoined with `i`, and exact/numeric multiplicative
//!   relation searches used for independence certificates.
//! * [`simplicial`] contains the simplicial complex machinery: homology via
//!   Smith normal form, barycentric subdivision with its chain operator,
//!   fundamental cycles, and the combinatorial-chain search that semi-decides
//!   `l1`-norm bounds.

pub mod dyadic;
pub mod enclosure;
pub mod fields;
pub mod rational;
pub mod re_set;
pub mod scl;
pub mod simplicial;
pub mod streams;
pub mod urm;

pub use dyadic::{Dyadic, DyadicInterval};
pub use rational::Rational;
