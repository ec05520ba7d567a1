//! Stabilizer quantum error-correcting codes over the binary symplectic
//! representation: GF(2) linear algebra, Pauli arithmetic, code validation and
//! logical extraction, standard and product constructions, Pauli channels,
//! decoders, and a reproducible Monte Carlo harness.

pub mod channels;
pub mod constructions;
pub mod decode;
pub mod error;
pub mod gf2;
pub mod harness;
pub mod pauli;
pub mod stabilizer;

pub use error::{Error, Result};
