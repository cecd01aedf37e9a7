//! Bicomplex algebra with a forward bicomplex Laplace transform and two
//! inversion engines: numerical Bromwich contour quadrature applied per
//! idempotent component, and exact residue summation for rational images.
//!
//! Every bicomplex quantity is handled through its idempotent splitting
//! `ξ = ξ₁e₁ + ξ₂e₂`, in which the ring operations act componentwise.
//! The transform and its inverse therefore reduce to two independent complex
//! problems whose results are recombined at the end.

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bicomplex;
pub mod cli;
pub mod error;
pub mod forward;
pub mod inverse;
pub mod poly;
pub mod quadrature;
pub mod signal;

pub use bicomplex::{Bicomplex, IdempotentPair};
pub use error::{Error, Result};
pub use forward::{in_region, laplace_grid, laplace_point, QuadratureConfig};
pub use inverse::{
    bromwich_component, bromwich_invert, find_poles, invert_grid, residue_at, residue_invert,
    BromwichConfig, InversionPoint, Method, PoleSet,
};
pub use signal::{
    catalog_lookup, decay_check, CatalogEntry, DecayReport, ImageFunction, PairId,
    RationalFunction, SignalSpec,
};

pub use num_complex::Complex64;
