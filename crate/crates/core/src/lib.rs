//! Exact character sums and difference operators over finite fields.
//!
//! Everything here works on dense tables: a function `F_q^d -> F_q` is a
//! vector of element indices in canonical point order, and every check
//! (perfect nonlinearity, bentness, Salem constants, difference-operator
//! reconstruction, distance-one perturbations) reduces to exact integer
//! or cyclotomic-integer arithmetic on those tables.
//!
//! The crate is `no_std` + `alloc` unless the `std` feature is on. The
//! default `parallel` feature pulls in rayon and spreads the exhaustive
//! sweeps over the current thread pool; results are reduced to the least
//! witness so they do not depend on scheduling.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod catalog;
pub mod cyclotomic;
pub mod decomp;
mod error;
pub mod field;
pub mod funcs;
mod linalg;
pub mod mindist;
mod par;
pub mod salem;
pub mod space;
pub mod spectrum;
mod transform;

pub use cyclotomic::CycInt;
pub use error::{Error, Result};
pub use field::{Field, FieldElement, FpBasis};
pub use funcs::{FnSpec, FnTable, PnVerdict, Witness};
pub use space::{Point, Space, SpaceBasis};
