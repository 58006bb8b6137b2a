//! Models texts as word-adjacency networks and measures how stable their
//! topology is across fixed-length subtext samples.
//!
//! The crate is organized as a pipeline: [`preprocess`] turns raw text into a
//! canonical token stream, [`sampling`] cuts the stream into non-overlapping
//! windows, [`network`] builds the adjacency graph of a window, [`measures`]
//! computes per-node topology and per-word intermittency, [`features`]
//! aggregates them into an 11-attribute vector, and [`ml`] runs supervised
//! authorship classification over those vectors.
//!
//! Everything here is pure computation over `alloc` types; file formats, the
//! CLI, and parallel orchestration live in the companion `textnet` crate.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod features;
mod math;
pub mod measures;
pub mod ml;
pub mod network;
pub mod preprocess;
pub mod rng;
pub mod sampling;
pub mod stats;
