#![allow(dead_code)]

use squiggle_core::glyphs::{self, build_library, GlyphSpec};
use squiggle_core::{Config, Library};
use squiggle_service::WirePoint;

pub fn prototype_library() -> Library {
    build_library(&glyphs::prototype_glyphs(), &Config::default()).unwrap()
}

/// Glyph points stamped 8 ms apart, optionally mapped.
pub fn timed(g: &GlyphSpec, f: impl Fn(f64, f64) -> (f64, f64)) -> Vec<WirePoint> {
    g.points
        .iter()
        .enumerate()
        .map(|(i, &(x, y))| {
            let (x, y) = f(x, y);
            [x, y, i as f64 * 8.0]
        })
        .collect()
}

/// 600-point wandering scribble.
pub fn scribble() -> Vec<WirePoint> {
    (0..600)
        .map(|i| {
            let t = i as f64 / 599.0;
            let a = t * 9.0;
            [
                200.0 + 120.0 * a.cos() * (1.0 + 0.3 * (3.1 * a).sin()),
                200.0 + 90.0 * (1.7 * a).sin() + 40.0 * t,
                i as f64 * 4.0,
            ]
        })
        .collect()
}
