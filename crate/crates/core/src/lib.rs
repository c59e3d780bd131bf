//! Polynomial invariants of four-qubit pure states and certified upper
//! bounds on the three-tangle of their three-qubit reduced states.
//!
//! Amplitudes are stored with qubit A1 as the most significant bit: the index
//! of `|i1 i2 i3 i4>` is `8 i1 + 4 i2 + 2 i3 + i4`. Invariant sets are always
//! taken with respect to the focus qubit A1; the traced qubit is A2, A3 or A4.

pub mod acceptance;
pub mod bounds;
pub mod classes;
pub mod cli;
pub mod error;
pub mod fonts;
pub mod invariants;
pub mod io;
pub mod qstate;
pub mod quartic;
pub mod rank2;

pub use error::{Error, Result};
pub use qstate::C64;
