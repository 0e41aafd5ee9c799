//! Exact Čech cohomology of finite simplicial complexes with finitely
//! generated abelian coefficients, and the cocycle calculus of abelian
//! gerbed towers built on it.
//!
//! ```
//! use cechtower::abelian::AbelianGroup;
//! use cechtower::cech::cohomology;
//! use cechtower::complexes::catalog;
//!
//! let rp2 = catalog("rp2_6").unwrap();
//! let h2 = cohomology(&rp2, &AbelianGroup::integers(), 2);
//! assert_eq!(h2.invariants().to_string(), "Z/2");
//! ```
//!
//! [`complexes`] holds the spaces, [`abelian`] the groups and the Smith form
//! machinery, [`cech`] cochains and cohomology, [`towers`] tower cocycles,
//! [`spectral`] the spectral sequence of a stack of links, [`exactseq`]
//! connecting maps and long exact sequences, and [`io`] the JSON formats.

pub mod abelian;
pub mod cech;
pub mod complexes;
mod error;
pub mod exactseq;
pub mod io;
pub mod spectral;
pub mod towers;

pub use error::{Error, Result};

/// Arbitrary-precision integer used for every coefficient.
pub type Int = num_bigint::BigInt;

// The guide's snippets run as doc-tests through these modules.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/complexes.md")]
    mod complexes {}
    #[doc = include_str!("../../../book/src/groups.md")]
    mod groups {}
    #[doc = include_str!("../../../book/src/cohomology.md")]
    mod cohomology {}
    #[doc = include_str!("../../../book/src/towers.md")]
    mod towers {}
    #[doc = include_str!("../../../book/src/spectral.md")]
    mod spectral {}
    #[doc = include_str!("../../../book/src/exact-sequences.md")]
    mod exact_sequences {}
    #[doc = include_str!("../../../book/src/formats.md")]
    mod formats {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
