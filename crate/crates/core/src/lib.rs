//! Stochastic macrospin simulation of a spin-torque MTJ neuron, sigmoid
//! extraction of its switching probability, and a 784-25-10 perceptron whose
//! activation slope and shift are trained alongside the weights.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod actfit;
#[cfg(feature = "cli")]
pub mod cli;
pub mod dataio;
pub mod error;
pub mod magdyn;
pub mod montecarlo;
pub mod neuronet;
pub mod rng;
pub mod vec3;

pub use error::{Error, Result};
