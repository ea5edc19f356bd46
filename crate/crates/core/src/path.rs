//! Raw pen input to fixed-length milestone paths.
//!
//! Input is first regularized into segments of equal arc length (removing
//! device jitter and sampling-rate effects), then interpolated by index down
//! to `n` milestone points.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::scalar::Scalar;

pub const DEFAULT_SEGMENT_LENGTH: f64 = 3.0;
pub const DEFAULT_MILESTONES: usize = 16;

/// Index fractions below this are treated as landing exactly on a point.
const INDEX_FRACTION_EPSILON: f64 = 1e-9;

/// A pen path as captured from the device.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct RawPath<T: Scalar = f64> {
    points: Vec<Point<T>>,
    /// Per-point timestamps in milliseconds. Carried for streaming clients,
    /// never read by recognition.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    timestamps: Option<Vec<f64>>,
}

impl<T: Scalar> RawPath<T> {
    pub fn new(points: Vec<Point<T>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyPath);
        }
        if let Some(index) = points.iter().position(|p| !p.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(RawPath {
            points,
            timestamps: None,
        })
    }

    pub fn with_timestamps(points: Vec<Point<T>>, timestamps: Vec<f64>) -> Result<Self> {
        if timestamps.len() != points.len() {
            return Err(Error::LengthMismatch {
                left: points.len(),
                right: timestamps.len(),
            });
        }
        let mut path = Self::new(points)?;
        path.timestamps = Some(timestamps);
        Ok(path)
    }

    pub fn from_xy(coords: &[(f64, f64)]) -> Result<Self> {
        Self::new(coords.iter().map(|&(x, y)| Point::new(T::lit(x), T::lit(y))).collect())
    }

    pub fn points(&self) -> &[Point<T>] {
        &self.points
    }

    pub fn timestamps(&self) -> Option<&[f64]> {
        self.timestamps.as_deref()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Same path with every point mapped through `f`; timestamps are kept.
    pub fn map_points(&self, f: impl Fn(Point<T>) -> Point<T>) -> Result<Self> {
        let mut out = Self::new(self.points.iter().map(|&p| f(p)).collect())?;
        out.timestamps = self.timestamps.clone();
        Ok(out)
    }
}

/// A path resampled into equal segments.
#[derive(Clone, Debug, PartialEq)]
pub struct RegularPath<T: Scalar = f64> {
    pub points: Vec<Point<T>>,
    /// Shortfall of the final partial segment, in pixels. Not used by recognition.
    pub residual_error: T,
}

impl<T: Scalar> RegularPath<T> {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Polyline length of the regularized points.
    pub fn arc_length(&self) -> T {
        polyline_length(&self.points)
    }
}

/// Exactly `n` milestone points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "", transparent)]
pub struct MilestonePath<T: Scalar = f64> {
    points: Vec<Point<T>>,
}

impl<T: Scalar> MilestonePath<T> {
    /// Wraps already-resampled points. Requires at least two finite points.
    pub fn from_points(points: Vec<Point<T>>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::PathTooShort {
                found: points.len(),
                required: 2,
            });
        }
        if let Some(index) = points.iter().position(|p| !p.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(MilestonePath { points })
    }

    pub fn points(&self) -> &[Point<T>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn into_points(self) -> Vec<Point<T>> {
        self.points
    }

    pub fn length(&self) -> T {
        path_length(self)
    }
}

/// Resamples `path` so consecutive points are `segment_length` apart along
/// the polyline, then appends the original final point.
///
/// The walk steps from the last emitted point toward the next raw point and
/// emits a new point whenever that raw point lies strictly farther than
/// `segment_length` away. A single-point path is returned unchanged.
pub fn regularize<T: Scalar>(path: &RawPath<T>, segment_length: T) -> RegularPath<T> {
    let raw = path.points();
    if raw.len() < 2 || !(segment_length > T::zero()) {
        return RegularPath {
            points: raw.to_vec(),
            residual_error: T::zero(),
        };
    }
    let dist2 = segment_length * segment_length;
    let mut out = Vec::with_capacity(raw.len() + 1);
    let mut p = raw[0];
    out.push(p);
    let mut error2 = T::zero();
    let mut i = 0;
    while i < raw.len() {
        let next = raw[i];
        let d2 = (next - p).length_squared();
        error2 = d2 - dist2;
        if error2 > T::zero() {
            let t = segment_length / d2.sqrt();
            p = p.lerp(next, t);
            out.push(p);
        } else {
            i += 1;
        }
    }
    out.push(raw[raw.len() - 1]);
    RegularPath {
        points: out,
        residual_error: segment_length - (error2 + dist2).sqrt(),
    }
}

/// Picks `n` points at evenly spaced fractional indices over `points`,
/// linearly interpolating between neighbours. Endpoints are copied exactly.
pub fn interpolate<T: Scalar>(points: &[Point<T>], n: usize) -> Result<MilestonePath<T>> {
    if points.len() < 2 {
        return Err(Error::PathTooShort {
            found: points.len(),
            required: 2,
        });
    }
    if n < 2 {
        return Err(Error::InvalidConfig(format!("milestone count must be at least 2, got {n}")));
    }
    let span = T::from_count(points.len() - 1);
    let denom = T::from_count(n - 1);
    let eps = T::lit(INDEX_FRACTION_EPSILON);
    let out = (0..n)
        .map(|i| {
            let pos = span * T::from_count(i) / denom;
            let whole = pos.floor();
            let frac = pos - whole;
            let k = whole.to_usize().unwrap_or(0);
            if frac < eps {
                points[k]
            } else {
                points[k].lerp(points[k + 1], frac)
            }
        })
        .collect();
    MilestonePath::from_points(out)
}

/// Sum of segment lengths; a lower bound on the length of the path the
/// milestones were sampled from.
pub fn path_length<T: Scalar>(path: &MilestonePath<T>) -> T {
    polyline_length(path.points())
}

pub fn polyline_length<T: Scalar>(points: &[Point<T>]) -> T {
    points.windows(2).map(|w| w[0].distance(w[1])).sum()
}
