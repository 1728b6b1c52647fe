//! Artin local GF(2)-algebras `GF(2)[x₁,…,x_k]/I` with `I` a monomial ideal,
//! and the divided square nilpotency argument over them.
//!
//! For `w = Σ tᵢxᵢ` with every `tᵢ` in the maximal ideal and `xᵢ` of positive
//! degree, `γ₂^s(w) ≡ Σ tᵢ^{2^s}γ₂^s(xᵢ)` modulo products, so `γ₂` acts
//! nilpotently as soon as the maximal ideal is nilpotent. Pushed through
//! `∂α₁^s(y) = γ₂^s(∂y)` this makes the André operation nilpotent on the
//! indecomposables of `Tor`.

mod nilpotency;
mod ring;

pub use nilpotency::{
    andre_report, closed_form_projection, gamma2_nilpotency_index, gamma2_oracle_expand, oracle_index,
    AndreReport, ChainGen, MixedElement, WitnessReport, ORACLE_MAX_S, ORACLE_MAX_TERMS,
};
pub use ring::{ArtinRing, Exponents, RingElement};
