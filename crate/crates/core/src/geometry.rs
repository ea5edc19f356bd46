//! 2-D points and 3×2 affine transforms in SVG column order.
//!
//! A transform `(a, b, c, d, e, f)` holds the columns `(a, b)`, `(c, d)` and
//! `(e, f)` and maps `(x, y)` to `(a·x + c·y + e, b·x + d·y + f)`. Points are
//! treated as row vectors, so `multiply(m1, m2)` applies `m1` first.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Transforms whose linear part has `|det|` below this are treated as singular.
pub const SINGULARITY_FLOOR: f64 = 1e-12;

/// A point (or vector) in pixel coordinates.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Point<T = f64> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point<T> {
    #[inline]
    pub fn new(x: T, y: T) -> Self {
        Point { x, y }
    }

    #[inline]
    pub fn zero() -> Self {
        Point::new(T::zero(), T::zero())
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    #[inline]
    pub fn dot(self, other: Self) -> T {
        self.x * other.x + self.y * other.y
    }

    #[inline]
    pub fn length_squared(self) -> T {
        self.dot(self)
    }

    #[inline]
    pub fn length(self) -> T {
        self.length_squared().sqrt()
    }

    #[inline]
    pub fn distance(self, other: Self) -> T {
        (other - self).length()
    }

    /// Linear interpolation `self·(1−t) + other·t`, written out the same way
    /// the resampling code has always computed it.
    #[inline]
    pub fn lerp(self, other: Self, t: T) -> Self {
        let s = T::one() - t;
        Point::new(self.x * s + other.x * t, self.y * s + other.y * t)
    }

    pub fn cast<U: Scalar>(self) -> Point<U> {
        Point::new(U::lit(self.x.as_f64()), U::lit(self.y.as_f64()))
    }
}

impl<T: Scalar> Add for Point<T> {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl<T: Scalar> Sub for Point<T> {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl<T: Scalar> Mul<T> for Point<T> {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: T) -> Self {
        Point::new(self.x * rhs, self.y * rhs)
    }
}

impl<T: Scalar> Neg for Point<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Point::new(-self.x, -self.y)
    }
}

impl<T: Scalar> From<(T, T)> for Point<T> {
    fn from((x, y): (T, T)) -> Self {
        Point::new(x, y)
    }
}

impl<T: Scalar> Serialize for Point<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.x.as_f64(), self.y.as_f64()].serialize(s)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for Point<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [x, y] = <[f64; 2]>::deserialize(d)?;
        Ok(Point::new(T::lit(x), T::lit(y)))
    }
}

/// Twice the signed area of the triangle spanned by two edge vectors.
#[inline]
pub fn det2<T: Scalar>(col1: Point<T>, col2: Point<T>) -> T {
    col1.x * col2.y - col2.x * col1.y
}

/// 3×2 affine transform in SVG order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AffineTransform<T = f64> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
    pub e: T,
    pub f: T,
}

impl<T: Scalar> AffineTransform<T> {
    pub fn new(a: T, b: T, c: T, d: T, e: T, f: T) -> Self {
        AffineTransform { a, b, c, d, e, f }
    }

    pub fn identity() -> Self {
        let (o, z) = (T::one(), T::zero());
        AffineTransform::new(o, z, z, o, z, z)
    }

    pub fn translation(tx: T, ty: T) -> Self {
        let (o, z) = (T::one(), T::zero());
        AffineTransform::new(o, z, z, o, tx, ty)
    }

    pub fn scale(sx: T, sy: T) -> Self {
        let z = T::zero();
        AffineTransform::new(sx, z, z, sy, z, z)
    }

    pub fn rotation(radians: T) -> Self {
        let (s, c) = radians.sin_cos();
        AffineTransform::new(c, s, -s, c, T::zero(), T::zero())
    }

    /// Maps the unit triangle `(0,0), (1,0), (0,1)` onto `p0, p1, p2`.
    ///
    /// Degenerate triangles produce a singular transform; callers are
    /// expected to filter them before inverting.
    pub fn from_triangle(p0: Point<T>, p1: Point<T>, p2: Point<T>) -> Self {
        let u = p1 - p0;
        let v = p2 - p0;
        AffineTransform::new(u.x, u.y, v.x, v.y, p0.x, p0.y)
    }

    /// Determinant of the linear part.
    #[inline]
    pub fn determinant(&self) -> T {
        self.a * self.d - self.c * self.b
    }

    /// Composition: `self` is applied first, then `then`.
    pub fn multiply(&self, then: &Self) -> Self {
        let (x, y) = (self, then);
        AffineTransform::new(
            x.a * y.a + x.b * y.c,
            x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c,
            x.c * y.b + x.d * y.d,
            x.e * y.a + x.f * y.c + y.e,
            x.e * y.b + x.f * y.d + y.f,
        )
    }

    /// Closed-form inverse of the implied 3×3 matrix with bottom row `[0 0 1]`.
    pub fn inverse(&self) -> Result<Self> {
        let det = self.determinant();
        if !(det.abs() >= T::lit(SINGULARITY_FLOOR)) {
            return Err(Error::SingularTransform { det: det.as_f64() });
        }
        let AffineTransform { a, b, c, d, e, f } = *self;
        Ok(AffineTransform::new(
            d / det,
            -b / det,
            -c / det,
            a / det,
            (c * f - d * e) / det,
            -(a * f - b * e) / det,
        ))
    }

    #[inline]
    pub fn apply(&self, p: Point<T>) -> Point<T> {
        Point::new(
            p.x * self.a + p.y * self.c + self.e,
            p.x * self.b + p.y * self.d + self.f,
        )
    }

    pub fn apply_all(&self, points: &[Point<T>]) -> Vec<Point<T>> {
        points.iter().map(|&p| self.apply(p)).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|v| v.is_finite())
    }

    pub fn to_array(&self) -> [T; 6] {
        [self.a, self.b, self.c, self.d, self.e, self.f]
    }

    pub fn from_array([a, b, c, d, e, f]: [T; 6]) -> Self {
        AffineTransform::new(a, b, c, d, e, f)
    }
}

impl<T: Scalar> Default for AffineTransform<T> {
    fn default() -> Self {
        Self::identity()
    }
}

impl<T: Scalar> Serialize for AffineTransform<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_array().map(Scalar::as_f64).serialize(s)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for AffineTransform<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(Self::from_array(<[f64; 6]>::deserialize(d)?.map(T::lit)))
    }
}

/// Free-function form of [`AffineTransform::from_triangle`].
pub fn transform_from_triangle<T: Scalar>(p0: Point<T>, p1: Point<T>, p2: Point<T>) -> AffineTransform<T> {
    AffineTransform::from_triangle(p0, p1, p2)
}

/// `m1` first, then `m2`.
pub fn multiply<T: Scalar>(m1: &AffineTransform<T>, m2: &AffineTransform<T>) -> AffineTransform<T> {
    m1.multiply(m2)
}

pub fn inverse<T: Scalar>(m: &AffineTransform<T>) -> Result<AffineTransform<T>> {
    m.inverse()
}

pub fn apply<T: Scalar>(m: &AffineTransform<T>, p: Point<T>) -> Point<T> {
    m.apply(p)
}
