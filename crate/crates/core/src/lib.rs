//! Amplitude-level model of photon pairs in coherent superposition with the
//! vacuum, passing through half-wave plates and a pump-driven conditional-phase
//! switch, then measured on a four-detector coincidence discriminator.
//!
//! The crate is `no_std` (it needs `alloc` for circuits and the Fock-space
//! oracle). File formats, reporting and the command line live in the
//! `bellswitch` crate.
//!
//! Basis order for the pair sector is always `(HH, HV, VH, VV)`, where the
//! first letter is the polarization in spatial mode 1.
#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

pub mod circuits;
pub mod detection;
pub mod elements;
mod error;
pub mod oracle;
pub mod state;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Complex double used for every amplitude in the crate.
pub type C64 = Complex64;

/// Fixed tolerance for exact-algebra comparisons.
pub const EXACT_TOL: f64 = 1e-12;

#[inline]
pub(crate) const fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}
