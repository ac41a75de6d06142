//! Exact doubling analysis of the self-similar measures `μ_p` of the IFS
//! `{x/β, x/β + 1 - 1/β}`, where β is the m-bonacci Pisot number.
//!
//! The crate builds the partition levels `X_n` exactly (points in `Z[β][1/β]`,
//! weights as rationals), scans their weight triples, computes measures of
//! basic intervals in closed form, and produces certificates that a measure is
//! not doubling. See the `book/` directory for a guided tour.

pub mod algebra;
pub mod error;
pub mod golden;
pub mod levels;
pub mod matrix;
pub mod measure;
pub mod prob;
pub mod report;
pub mod substitution;
pub mod verify;
pub mod witness;

pub use algebra::{FieldElement, GapAlphabet, PisotField};
pub use error::{Error, Result};
pub use levels::{CheckFailure, ImbalanceReport, Level, RefineOptions};
pub use matrix::{TransitionMatrix, WeightTriple};
pub use prob::ProbabilityPair;
pub use substitution::{LabelWord, Letter};

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/field.md")]
    mod field {}
    #[doc = include_str!("../../../book/src/substitution.md")]
    mod substitution {}
    #[doc = include_str!("../../../book/src/levels.md")]
    mod levels {}
    #[doc = include_str!("../../../book/src/measure.md")]
    mod measure {}
    #[doc = include_str!("../../../book/src/witness.md")]
    mod witness {}
    #[doc = include_str!("../../../book/src/golden.md")]
    mod golden {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
