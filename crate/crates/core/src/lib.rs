//! Symbolic computation with Dwyer's higher divided squares over the field
//! with two elements.
//!
//! The crate is organised by the algebra it models:
//!
//! * [`f2`]: scalars, binomial parities, graded dimension tables;
//! * [`delta`]: the operation algebra spanned by admissible composites of
//!   the `δ_i`, with Adem rewriting, the `θ(s,t)` composites and α/δ
//!   reindexing;
//! * [`gamma`]: free divided power algebras, the homotopy `𝒮(W)` of free
//!   simplicial commutative algebras and the unstable action on it;
//! * [`spectral`]: E¹ pages of Quillen's fundamental spectral sequence;
//! * [`artin`]: Artin local rings given by monomial ideals and divided
//!   square nilpotency over them;
//! * [`expr`]: the text grammars and JSON forms shared with the CLI.

pub mod artin;
pub mod delta;
pub mod error;
pub mod expr;
pub mod f2;
pub mod gamma;
pub mod spectral;

pub use error::{Error, ErrorKind, Result};
