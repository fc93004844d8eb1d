//! Exact-rational workbench for functorial semi-norms.
//!
//! A finitely presented category with a functor into finite-dimensional
//! rational vector spaces is described by [`fincat::PresentedCategory`].
//! On top of that the crate computes, entirely in exact arithmetic:
//!
//! * semi-norms generated by weighted families of elements, as weighted
//!   l1-minimization problems ([`seminorm`], [`simplex`]),
//! * vanishing loci and universality certificates ([`locus`]),
//! * diagonal weight sequences that dominate countably many semi-norms at
//!   once, with the constant `Q` controlling the loss ([`diagonal`]),
//! * the sequence-object category whose universal semi-norm evaluation is
//!   pinned between explicit bounds ([`counterexample`]),
//! * simplicial l1-semi-norms on homology ([`homology`]).
//!
//! No floating point enters any computation path; every reported number is
//! an exact rational (or an explicit infinity marker).

pub mod counterexample;
pub mod diagonal;
pub mod exactq;
pub mod fincat;
pub mod homology;
pub mod locus;
pub mod seminorm;
pub mod simplex;

pub use exactq::{Rational, RationalMatrix, Subspace};
pub use fincat::{CatFunctor, Element, PresentedCategory};
pub use seminorm::{GeneratingFamily, NatTransform, SeminormHandle, TruncatedValue, Value};


