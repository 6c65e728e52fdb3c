//! Numerical semigroups, plane branches and minimal embedding dimension.
//!
//! [`semigroup`] holds the combinatorics, [`kunz`] the multiplicity-4 Kunz
//! cone, [`puiseux`] Puiseux characteristics and the planarity test, and
//! [`series`] with [`oracle`] compute value semigroups of parameterized
//! curves exactly. [`honest`] combines them into verdicts on `me(S)` with
//! witness curves. [`cli`] backs the `semigroup-forge` binary.
//!
//! ```
//! use semigroup_forge::honest::minimal_embedding_dimension;
//! use semigroup_forge::semigroup::NumericalSemigroup;
//!
//! let s = NumericalSemigroup::from_generators(&[4, 6, 13, 15]).unwrap();
//! let v = minimal_embedding_dimension(&s).unwrap();
//! assert_eq!(v.me(), Some(3));
//! assert_eq!(v.witness.unwrap().order, 15);
//! ```

pub mod cli;
pub mod honest;
pub mod kunz;
pub mod oracle;
pub mod puiseux;
pub mod semigroup;
pub mod series;

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/introduction.md")]
mod book_introduction {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/semigroups.md")]
mod book_semigroups {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/kunz.md")]
mod book_kunz {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/puiseux.md")]
mod book_puiseux {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/curves.md")]
mod book_curves {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/embedding-dimension.md")]
mod book_embedding_dimension {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod book_cli {}
