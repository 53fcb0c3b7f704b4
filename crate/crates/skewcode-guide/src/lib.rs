//! The guide's listings, compiled and run as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/rings.md")]
pub mod rings {}

#[doc = include_str!("../../../book/src/skew_polynomials.md")]
pub mod skew_polynomials {}

#[doc = include_str!("../../../book/src/factorization.md")]
pub mod factorization {}

#[doc = include_str!("../../../book/src/decomposition.md")]
pub mod decomposition {}

#[doc = include_str!("../../../book/src/codes.md")]
pub mod codes {}

#[doc = include_str!("../../../book/src/duality.md")]
pub mod duality {}

#[doc = include_str!("../../../book/src/distance.md")]
pub mod distance {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
