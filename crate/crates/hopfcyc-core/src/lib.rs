//! Exact symbolic engine for matched pairs of Lie groups, their
//! bicrossed-product Hopf algebras, Hopf cyclic cohomology, and the chain
//! maps that transport Lie algebra cohomology classes to cyclic cocycles on
//! the convolution algebra `C_c^∞(G₁) ⋊ G₂`.
//!
//! The crate is `no_std` and only needs `alloc`.  Everything is exact:
//! rational arithmetic, canonical symbolic forms, no floating point.
#![no_std]
#![forbid(unsafe_code)]
#![warn(missing_docs)]
// Matrix and structure-constant loops index several arrays at once.
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod bicomplex;
pub mod cochain;
pub mod conv;
pub mod cyclic;
pub mod emit;
pub mod error;
pub mod form;
pub mod group;
pub mod hopf;
pub mod lie;
pub mod linalg;
pub mod models;
pub mod parse;
pub mod phi;
pub mod scalar;
pub mod simplex;

pub use error::{Error, Result};
pub use form::PolyForm;
pub use scalar::{q, qf, FuncAtom, Monomial, ScalarExpr, Var, Q};
