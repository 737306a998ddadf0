//! Operator theory on the symmetrized polydisc, at matrix scale.
//!
//! The closed symmetrized `n`-disc `Γ_n` is the image of the closed unit
//! polydisc under the elementary-symmetric-polynomial map.  This crate makes
//! the associated operator theory computable for dense complex matrices:
//!
//! * [`matrix`] — dense complex primitives: operator norm, numerical radius,
//!   defect operators, Hermitian spectral calculus, a complex Schur kernel.
//! * [`geometry`] — scalar geometry of `G_n`, `Γ_n`, its topological and
//!   distinguished boundaries, and the pencil inequalities.
//! * [`spectrum`] — Taylor joint spectra of commuting tuples by constructive
//!   simultaneous triangularization.
//! * [`gamma`] — `Γ_n`-contraction checks, fundamental operator tuples and
//!   their identity suite, tuple classification, pure-tuple generators.
//! * [`variety`] — distinguished varieties in `G_n`: construction from pencil
//!   data, fiber computation and tracing, separation certificates, the
//!   variety-level von Neumann check.
//! * [`hardy`] — truncated vector-valued Hardy-space machinery:
//!   characteristic functions, explicit isometric dilations, functional-model
//!   compressions, admissibility and coincidence certificates.
//!
//! All operations are pure functions of their inputs and deterministic:
//! decompositions use fixed orderings and random sampling is keyed by
//! `(seed, purpose tag, index)` counters (see [`sample`]).
//!
//! ```
//! use symdisc::geometry::{classify, symmetrize, Region};
//! use symdisc::matrix::re;
//!
//! // symmetrization of (1, 1, 1) sits on the distinguished boundary
//! let x = symmetrize(&[re(1.0), re(1.0), re(1.0)])?;
//! assert_eq!(classify(&x, 1e-8), Region::DistinguishedBoundary);
//!
//! // while (2, 5/2, 1/2) is not in the closed domain at all
//! let y = symdisc::geometry::SymPoint::new(vec![re(2.0), re(2.5)], re(0.5))?;
//! assert_eq!(classify(&y, 1e-8), Region::Outside);
//! # Ok::<(), symdisc::Error>(())
//! ```

// index loops mirror the block arithmetic throughout; iterator rewrites
// would obscure the matrix indices
#![allow(clippy::needless_range_loop)]

pub mod acceptance;
pub mod error;
pub mod gamma;
pub mod geometry;
pub mod hardy;
pub mod matrix;
pub mod poly;
pub mod sample;
pub mod spectrum;
pub mod variety;

pub use error::{Error, Result};
pub use gamma::{FundamentalTuple, GammaTuple, TupleClass};
pub use geometry::{Region, SymPoint};
pub use matrix::{CMatrix, DefectData};
pub use spectrum::{CommutingTuple, JointSpectrum};
pub use variety::{FiberSample, VarietyRep};
