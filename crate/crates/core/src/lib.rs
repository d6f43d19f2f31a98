// Enum tags parse with Option-returning inherent from_str; FromStr's Err
// plumbing buys nothing for closed keyword sets.
#![allow(clippy::should_implement_trait)]

//! Compiles written car-accident reports into timed top-down 2D animations.
//!
//! The pipeline has two halves that communicate through a small formal
//! accident-description language (the FD format):
//!
//! - [`extract`] reads free text and fills an FD template using a lexicon of
//!   cue words, shallow chunking, and grammatical-relation heuristics. It is
//!   goal-driven: any input, even a poem, yields a well-formed description of
//!   a collision between two cars.
//! - [`plan`] compiles an FD into per-vehicle trajectories whose points carry
//!   normalized time values in [0,1], via five subplanners (consistency,
//!   positions, trajectories, accidents, time).
//! - [`render`] draws the resulting animation plan as top-down SVG frames.
//!
//! [`fd`] defines the description language itself (data model, parser,
//! serializer, validator) and [`lexicon`] the cue-word tables driving
//! extraction.

pub mod cli;
pub mod extract;
pub mod fd;
pub mod lexicon;
pub mod plan;
pub mod render;
