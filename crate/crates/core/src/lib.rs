//! Finite spaces whose distances are extended reals: negative, zero, positive
//! or infinite, and not necessarily symmetric. Exact rational arithmetic
//! throughout.
//!
//! Layers, bottom up: [`extended`] arithmetic, [`space`] and its min-plus
//! [`closure`], categorical [`constructions`], [`symmetry`] (symmetrized
//! metrics and preorders), [`topology`], [`paths`] and their valuations, then
//! the [`properties`] suite and the [`cli`].

pub mod closure;
pub mod error;
pub mod extended;
pub mod gen;
pub mod space;
pub mod constructions;
pub mod oracle;
pub mod symmetry;
pub mod topology;
pub mod paths;
pub mod io;
pub mod properties;
pub mod cli;

pub use error::{Error, Result};
pub use extended::{Coeff, ExtReal, Weight};
pub use space::{CostMatrix, FiniteRhoSpace, PointMap};
