//! Skew constacyclic codes over the chain ring `R_k = F_{p^m}[u]/(u^k)`.
//!
//! The crate is layered bottom-up:
//!
//! - [`field`]: `F_{p^m}` arithmetic, Frobenius maps, prime-degree roots.
//! - [`chain`]: `R_k`, its units and its automorphism group.
//! - [`skew`]: the skew polynomial ring `R_k[x; Θ]` with `x·a = Θ(a)·x`.
//! - [`factor`]: central factorizations of `x^N - λ` and linear right factors.
//! - [`crt`]: idempotents and the Chinese-remainder decomposition.
//! - [`code`]: codes as left ideals of `R_k[x; Θ]/(M)` for central `M`.
//! - [`metrics`]: Hamming weight, minimum distance, MDS checks.
//! - [`tables`]: reference MDS tables over `F_{7^7}` and `F_{5^5}`.
//! - [`text`]: parsing and printing of elements and polynomials.

pub mod chain;
pub mod code;
pub mod conway;
pub mod crt;
pub mod factor;
pub mod field;
pub mod linalg;
pub mod metrics;
pub mod skew;
pub mod tables;
pub mod text;

pub use chain::{Automorphism, ChainRing, RingElem};
pub use field::{Field, Fq};
pub use skew::{SkewPoly, SkewRing};
