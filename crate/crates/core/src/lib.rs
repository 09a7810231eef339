//! Exact computational algebra for infinitesimal Hecke algebras, rational
//! Cherednik algebras, Dunkl operators and category O.
//!
//! Every computation is carried out over arbitrary-precision rationals (or
//! exact cyclotomic fields for character tables); there is no floating point.

pub mod error;
pub mod category_o;
pub mod dunkl;
pub mod exact;
pub mod genfun;
pub mod hecke;
pub mod lie;
pub mod wreath;

pub use error::{Error, Result};
