//! Rational points of bounded height on the Fermat cubic surface via its
//! conic bundle.
//!
//! The crate is organised bottom-up:
//!
//! * [`arithmetic`]: factorization, characters, multiplicative functions,
//!   Kloosterman sums.
//! * [`conics`]: the fibres `Q_{s,t}`, local solubility and exact point counts.
//! * [`densities`]: p-adic and archimedean Hardy-Littlewood densities.
//! * [`counting`]: exact counts on the Fermat surface and on `X`, the fibration
//!   identity and the log-power fit.
//! * [`sums`]: progression sums, Euler-product constants and the divisor sum `D(x)`.
//! * [`bt_bundle`]: heights and counts on the biprojective cubic bundle.

pub mod arithmetic;
pub mod bt_bundle;
pub mod conics;
pub mod counting;
pub mod densities;
mod error;
pub mod sums;

pub use error::{Error, Result};
