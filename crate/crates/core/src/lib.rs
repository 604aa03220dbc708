//! Common zeros of normalized order-two recursive polynomial sequences.
//!
//! A sequence `W_n(z) = A(z)W_{n-1}(z) + B(z)W_{n-2}(z)` with `W_0 = 1`
//! has a common zero `c` when two distinct members vanish at `c`. This crate
//! decides that question pointwise at high precision, emits a certificate
//! (period `p`, residue `r`, angular orders of the ratios `u` and `v`), and
//! cross-checks the decision by brute-force root finding of the expanded
//! polynomials.

pub mod characterize;
pub mod error;
pub mod numerics;
pub mod polyseq;
pub mod search;

pub use error::{Error, Result};
