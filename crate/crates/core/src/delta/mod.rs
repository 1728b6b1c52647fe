//! The operation algebra spanned by admissible composites `δ_I`.
//!
//! A word `(i₁,…,i_s)` stands for `δ_{i₁}∘…∘δ_{i_s}` (rightmost applied
//! first). Elements are sums over GF(2), stored as sets of admissible words;
//! any composite is brought to that form by Adem rewriting, see [`reduce`].

mod alpha;
mod element;
mod theta;
mod word;

pub use alpha::{alpha_adem_check, alpha_to_delta, AlphaAdemCheck, AlphaWord};
pub use element::{adem_pair, adem_step, compose, reduce, reduce_with, DeltaElement, Strategy};
pub use theta::{annihilation_order, theta, Annihilation};
pub use word::DeltaWord;
