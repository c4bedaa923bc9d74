//! Achievable rate regions for the half-duplex causal cognitive radio channel.
//!
//! The crate is organised bottom-up:
//!
//! - [`probability`]: dense finite pmfs, the factorized input law, the
//!   half-duplex channel law and their structural validators.
//! - [`info`]: entropy, conditional mutual information (discrete and
//!   Gaussian log-det) and Gaussian-mixture entropy.
//! - [`region`]: the eighteen rate constraints, the rate-split polytope,
//!   its projection onto `(R_P, R_C)` and 2-D region algebra.
//! - [`gaussian`]: Gaussian signaling, the protocol baselines and sweeps.
//! - [`config`]: the TOML file formats read by the command-line tool.
//!
//! All rates are in bits per channel use.

pub mod config;
pub mod error;
pub mod gaussian;
pub mod info;
pub mod probability;
pub mod region;

pub use error::{Error, Result};
