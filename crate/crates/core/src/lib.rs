//! Exact computations around the Verlinde category `Ver_p`.
//!
//! The crate is organised bottom-up:
//!
//! * [`cyclotomic`]: the ring `O_p = Z[2cos(π/p)]` in the quantum-integer basis.
//! * [`fusion`]: `Ver_p` as a based fusion ring, with Frobenius–Perron
//!   dimensions, Frobenius functors and McKay graphs.
//! * [`modrep`]: exact GF(p) linear algebra for `C_p`-modules. Every closed
//!   formula in [`fusion`] and [`dimensions`] has a brute-force counterpart here.
//! * [`dimensions`]: the invariants `ℓ`, `gd`, `sd`, `ad`, the growth rate `δ`
//!   and the p-adic dimension.
//! * [`partitions`]: p-regular partitions, p-cores, conormal boxes and the
//!   envelope construction for symmetric groups.
//! * [`verify`]: seeded batch property suites, shared by the CLI and tests.

pub mod cli;
pub mod cyclotomic;
pub mod dimensions;
mod error;
pub mod fusion;
pub mod modrep;
pub mod partitions;
mod primes;
pub mod verify;

pub use error::{Error, Result};
pub use primes::{check_prime, is_prime};

/// Default bound on the dimension of any tensor-power space built by [`modrep`].
pub const DEFAULT_CAP: usize = 20_000;

/// Dimension cap, honouring the `VERLINDE_LAB_CAP` environment variable.
pub fn cap_from_env() -> usize {
    std::env::var("VERLINDE_LAB_CAP")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_CAP)
}
