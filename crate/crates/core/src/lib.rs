//! Exact fiber distributions of word maps on finite groups, and the
//! structure that can be read back out of them: nilpotency, abelianness,
//! abelian isomorphism type and Sylow factorization.

pub mod analysis;
pub mod catalog;
pub mod engine;
pub mod error;
pub mod group;
pub mod num;
pub mod report;
pub mod sample;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
pub use group::{builtin_group, GroupTable};
pub use word::{parse_word, Word};
