//! Rank-r subshifts of finite type.
//!
//! A [`TileSystem`] is an alphabet and `r` square {0,1}-matrices. A word of
//! shape `m` assigns letters to the integer box `[0, m]` so that each unit
//! step `l -> l + e_j` is allowed by `M_j`, with `M_j(b, a) = 1` meaning
//! `a -> b` is allowed. The crate provides:
//!
//! * words, restriction, translates and periodicity ([`word`]),
//! * unit extension and unique products of words ([`completion`]),
//! * exhaustive enumeration, used as an oracle ([`enumerate`]),
//! * checks of the standing conditions H0-H3* ([`verify`]),
//! * the constructive witnesses built from them ([`witness`]),
//! * block dimensions and the Bratteli diagram of the AF core ([`af`]),
//! * tensor products, redecoration and fixtures ([`builders`]),
//! * the JSON system file format ([`format`]).

pub mod af;
pub mod builders;
pub mod completion;
pub mod enumerate;
pub mod error;
pub mod format;
pub mod matrix;
pub mod shape;
pub mod system;
pub mod verify;
pub mod witness;
pub mod word;

pub use error::{Error, Result};
pub use matrix::{BoolMatrix, CountMatrix};
pub use shape::{shape_lattice, Shape, Translate};
pub use system::{Alphabet, Decoration, DecorationMap, Letter, TileSystem};
pub use word::{DecoratedWord, Restricted, Violation, Word, WordLike};
