//! Fermionic and bosonic multiline queues on the ring `Z_n`, their projections
//! onto multispecies TASEP and 0-TAZRP states, and exact Markov-chain tools.
//!
//! Sites are 1-indexed in every public constructor and accessor. Rows of a
//! queue are stored bottom first, so `rows[0]` is `Q_1`.
#![no_std]
extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod combinatorics;
pub mod error;
pub mod markov;
pub mod mlq;
pub mod pairing;
pub mod projection;
pub mod words;

pub use error::{Error, Result};
pub use mlq::{BosonicMlq, Bosonic, Fermionic, FermionicMlq, Kind, Mlq, Monomial, Statistic};
pub use pairing::{par_bosonic, par_fermionic, PairingResult};
pub use words::{BosonicIndicator, BosonicWord, FermionicIndicator, FermionicWord, Row, Word};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
