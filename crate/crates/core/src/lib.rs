//! Finite categories and their autoequivalences.
//!
//! The crate decides, for explicit finite categories, whether an equivalence is
//! naturally isomorphic to an isomorphism and whether a category admits
//! autoequivalences that are not isomorphic to any automorphism. Every
//! construction is certified on the spot, and every decision procedure comes
//! with a brute-force counterpart that enumerates functors and natural
//! transformations outright.
//!
//! ```
//! use std::sync::Arc;
//! use fincat::{catalog, equivalence, search::SearchOptions};
//!
//! let c = Arc::new(catalog::p4());
//! let analysis =
//!     equivalence::has_proper_autoequivalence(&c, equivalence::Mode::Both, SearchOptions::default())
//!         .unwrap();
//! assert_eq!(analysis.verdict, equivalence::Verdict::Proper);
//! assert_eq!(analysis.agreement(), Some(true));
//! ```

#![allow(clippy::needless_range_loop)]

pub mod catalog;
pub mod category;
pub mod cli;
pub mod concrete;
pub mod equivalence;
pub mod error;
pub mod functor;
pub mod io;
pub mod monoid;
pub mod natural;
pub mod quotient;
pub mod report;
pub mod search;
pub mod skeleton;
pub mod suite;

pub use category::{FinCat, IsoPartition, RawCategory};
pub use error::{Error, Result};
pub use functor::{FinFunctor, FunctorFlags};
pub use natural::NatTransformation;
pub use search::SearchOptions;
