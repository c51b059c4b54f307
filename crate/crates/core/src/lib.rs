//! Convolution algebra on the Heisenberg group, realized numerically.
//!
//! One algebra element (a convolution kernel, handled through its Euclidean
//! Fourier transform) is mapped to every irreducible representation of the
//! group: the infinite-dimensional ones give quantum observables indexed by a
//! Planck parameter, the one-dimensional ones give a classical phase-space
//! function, and the crate provides the machinery to verify that the quantum
//! family converges to the classical one.
//!
//! The crate is `no_std` (with `alloc`); all IO, file formats and the
//! experiment CLI live in the companion `plainmech` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod convolution;
pub mod fft;
pub mod fock;
pub mod grid;
pub mod heisenberg;
pub mod pdo;
pub mod representation;
pub mod symbol;

pub use error::{Error, Result};
pub use heisenberg::{GroupPoint, LieMap};
