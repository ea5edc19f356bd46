//! Affine-invariant glyph recognition by largest-triangle template maps.
//!
//! A drawn path is resampled to a fixed number of milestone points, its
//! largest internal triangles are found through a normalized determinant
//! matrix, and every template is projected onto the input through the affine
//! map pairing the same logical triangle on both glyphs. The projection with
//! the smallest summed squared distance wins and doubles as a visual
//! "shadow" of the match.
//!
//! The geometric core is generic over [`Scalar`] (`f32` or `f64`); the
//! aliases below fix it to `f64`, which the store, bench harness and service
//! use.

// `!(x > 0)` is deliberate: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bench;
pub mod error;
pub mod geometry;
pub mod glyphs;
pub mod ntm;
pub mod path;
pub mod recognizer;
pub mod scalar;
pub mod store;

pub use error::{Error, Result};
pub use ntm::{Dimensionality, TriangleIndex};
pub use recognizer::RecognizerConfig;
pub use scalar::Scalar;

pub type Point = geometry::Point<f64>;
pub type Point32 = geometry::Point<f32>;
pub type AffineTransform = geometry::AffineTransform<f64>;
pub type AffineTransform32 = geometry::AffineTransform<f32>;
pub type RawPath = path::RawPath<f64>;
pub type RegularPath = path::RegularPath<f64>;
pub type MilestonePath = path::MilestonePath<f64>;
pub type Ntm = ntm::Ntm<f64>;
pub type Ntm32 = ntm::Ntm<f32>;
pub type Template = recognizer::Template<f64>;
pub type Library = recognizer::Library<f64>;
pub type Library32 = recognizer::Library<f32>;
pub type MatchResult = recognizer::MatchResult<f64>;
pub type Recognition = recognizer::Recognition<f64>;
pub type Config = recognizer::RecognizerConfig<f64>;
