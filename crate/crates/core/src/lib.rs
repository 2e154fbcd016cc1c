//! Level-restricted generalized Kostka polynomials for type A.
//!
//! Every evaluation route lives here: energy on paths of rectangular
//! tableaux, generalized charge on LR tableaux, rigged configurations,
//! the quantum-number bijection between the last two, fermionic sums and
//! branching-function series.  The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod branching;
pub mod error;
pub mod fermionic;
pub mod kss;
pub mod lr;
pub mod partition;
pub mod path;
pub mod psi;
pub mod qpoly;
pub mod rc;
pub mod tableau;

pub use error::{Error, Result};
pub use partition::{Partition, Rect, RectSeq};
pub use qpoly::{QPoly, QSeries};
pub use tableau::{Tableau, Word};
