//! Exterior calculus for eleven-dimensional supergravity backgrounds of the
//! form `M̃^{3,1} × M⁷`.
//!
//! The crate works at frame level: forms live on pseudo-orthonormal coframes,
//! homogeneous spaces are described by structure constants, and every
//! algorithm runs either in exact rational arithmetic or in `f64`.
//!
//! * [`exterior`]: wedge, interior product, inner product, Hodge star.
//! * [`product`]: the `(3,1) × (7,0)` product frame and flux 4-forms.
//! * [`g2`]: generic 3-forms, induced metrics, orbit classification.
//! * [`homogeneous`]: Lie algebras, reductive spaces, invariant forms, Ricci.
//! * [`sugra`]: Maxwell and Einstein conditions and background reports.
//! * [`models`]: the built-in homogeneous examples.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod exterior;
pub mod g2;
pub mod homogeneous;
pub mod linalg;
pub mod models;
pub mod product;
pub mod scalar;
pub mod sugra;

pub use error::{Error, Result};
pub use exterior::{Frame, FrameVector, KForm};
pub use linalg::Matrix;
pub use scalar::{Rational, Scalar, Tolerance};
