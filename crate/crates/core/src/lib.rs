//! Simulator and analysis toolkit for a multiple-unicast quantum network code
//! built on quantum invertible linear operations.
//!
//! The quantum code is exercised through its two classical shadows: bit-basis
//! inputs travel through the transfer matrix `K`, phase-basis inputs through
//! `(K^T)^{-1}`. The crate provides exact finite-field arithmetic, the
//! encoder/decoder on each shadow, a Monte Carlo harness for the bit and phase
//! error probabilities, and a tiny exact state-vector oracle that checks the
//! shadow reduction itself.

pub mod cli;
pub mod codec;
pub mod gf;
pub mod linalg;
pub mod montecarlo;
pub mod network;
pub mod oracle;
