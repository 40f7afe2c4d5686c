//! Design and analysis of inhomogeneous XX spin-chain quantum wires.
//!
//! A chain of `N+1` spins with nearest-neighbor XX couplings acts, in its
//! one-excitation sector, as a real symmetric tridiagonal (Jacobi) matrix.
//! This crate covers the full design loop for using such a chain to move a
//! qubit from one end to the other:
//!
//! * [`jacobi`]: the [`JacobiMatrix`] type, its spectral decomposition
//!   into eigenvalues and first-component weights, orthonormal-polynomial
//!   recurrences, and reconstruction of a chain from a discrete measure.
//! * [`chains`]: closed-form families: the uniform chain, the Krawtchouk
//!   chain (perfect transfer, but couplings that outgrow hardware), and the
//!   surgered family that interpolates between them with capped couplings.
//! * [`surgery`]: spectral surgery: Christoffel transforms that delete the
//!   extreme eigenvalue pair, shortening a chain by two sites while keeping
//!   persymmetry and transfer quality; an independent numerical oracle for
//!   the closed-form surgered family.
//! * [`transfer`]: end-to-end amplitude, fidelity deficit `δ(t) = 1-|A(t)|`,
//!   the persymmetry + odd-gap test for perfect state transfer, and a
//!   deterministic scan/refine optimizer for the transfer time.
//!
//! # Example
//!
//! ```
//! use spinwire::chains::{surgered_chain, surgered_spectral_data, coupling_ratio};
//! use spinwire::transfer::fidelity_deficit;
//!
//! // A 101-site chain carved out of a 121-site uniform parent: its
//! // coupling ratio stays near 5 (the Krawtchouk chain of the same length
//! // needs 25.5) while the transfer deficit at t = 0.51 stays near 5%.
//! let chain = surgered_chain(100, 120, 1.0).unwrap();
//! assert!(coupling_ratio(&chain) < 6.0);
//!
//! let spectral = surgered_spectral_data(100, 120, 1.0, true).unwrap();
//! let deficit = fidelity_deficit(&spectral, 0.51);
//! assert!(deficit < 0.07);
//! ```

pub mod chains;
pub mod error;
pub mod jacobi;
pub mod surgery;
pub mod transfer;

mod tridiag;

pub use chains::ChainFamily;
pub use error::{Error, Result};
pub use jacobi::{JacobiMatrix, SpectralData};
pub use transfer::{PstReport, TransferReport};
