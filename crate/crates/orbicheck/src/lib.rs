//! Exact arithmetic for finite group actions on closed surfaces: vcd of
//! mapping class groups, Riemann-Hurwitz admissible orbifold signatures,
//! branched cover enumeration, and exhaustive desk-scale verification of
//! the vcd inequalities, with machine-checkable certificates.
//!
//! Start with [`model`] for the closed-form formulas, [`enumeration`] for
//! the signature/cover searches and the subgroup DAG, and [`verification`]
//! for the certificate-emitting checkers. [`oracle`] holds the naive
//! brute-force references used to cross-check the pruned engines, and
//! [`cache`] the on-disk enumeration cache used by the CLI.
//!
//! The narrative guide lives in `book/`; its code snippets compile and run
//! as doc-tests of this crate (see the `guide` module).

pub mod cache;
pub mod enumeration;
pub mod model;
pub mod oracle;
pub mod verification;

pub use model::{harer_vcd, lambda_upper, rh_admissible, Rational, Signature, VcdValue};

// The mdbook chapters double as doc-tests: each chapter's Rust snippets
// are compiled and executed by `cargo test --doc`, which keeps the guide
// in sync with the library.
#[doc = include_str!("../book/src/introduction.md")]
mod _guide_introduction {}
#[doc = include_str!("../book/src/vcd.md")]
mod _guide_vcd {}
#[doc = include_str!("../book/src/riemann-hurwitz.md")]
mod _guide_riemann_hurwitz {}
#[doc = include_str!("../book/src/covers.md")]
mod _guide_covers {}
#[doc = include_str!("../book/src/verification.md")]
mod _guide_verification {}
#[doc = include_str!("../book/src/cli.md")]
mod _guide_cli {}
