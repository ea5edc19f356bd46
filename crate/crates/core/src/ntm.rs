//! Normalized triangle determinant matrix (NTM).
//!
//! For a milestone path `p` of `n` points and total length `λ`, entry
//! `(a, b, c)` with `a < b < c` holds `det[p_b − p_a, p_c − p_a] · 4 / λ²`:
//! twice the signed triangle area scaled so that the largest triangle any
//! path of length `λ` can form (a right-angled "L" with legs `λ/2`) scores 1.
//!
//! Entries are stored flat in lexicographic `(a, b, c)` order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::det2;
use crate::path::{path_length, MilestonePath};
use crate::scalar::Scalar;

/// Paths whose largest normalized triangle is below this are line glyphs.
pub const DEFAULT_LINE_EPSILON: f64 = 0.004;
/// Triangles below this normalized size cannot anchor a 2-D affine map.
pub const DEGENERATE_EPSILON: f64 = 1e-8;
/// Regularized paths with at most this many points are taps.
pub const TAP_MAX_POINTS: usize = 4;
/// Pivot bisection stops once its bracket is narrower than this.
pub const PIVOT_RANGE_EPSILON: f64 = 1e-8;

pub const DEFAULT_PIVOT_COUNT: usize = 8;
pub const DEFAULT_PIVOT_ALLOW: usize = 2;

/// Corner indices of a triangle, `a < b < c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "[usize; 3]", try_from = "[usize; 3]")]
pub struct TriangleIndex {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl TriangleIndex {
    pub fn new(a: usize, b: usize, c: usize) -> Option<Self> {
        (a < b && b < c).then_some(TriangleIndex { a, b, c })
    }

    pub fn as_array(&self) -> [usize; 3] {
        [self.a, self.b, self.c]
    }
}

impl From<TriangleIndex> for [usize; 3] {
    fn from(t: TriangleIndex) -> Self {
        t.as_array()
    }
}

impl TryFrom<[usize; 3]> for TriangleIndex {
    type Error = String;

    fn try_from([a, b, c]: [usize; 3]) -> std::result::Result<Self, String> {
        TriangleIndex::new(a, b, c).ok_or_else(|| format!("triangle indices must increase: [{a}, {b}, {c}]"))
    }
}

/// `C(n, 3)`.
pub const fn triangle_count(n: usize) -> usize {
    if n < 3 {
        0
    } else {
        n * (n - 1) * (n - 2) / 6
    }
}

const fn pairs(m: usize) -> usize {
    if m < 2 {
        0
    } else {
        m * (m - 1) / 2
    }
}

/// 0-D taps, 1-D line glyphs and full 2-D glyphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Dimensionality {
    Tap,
    Line,
    Planar,
}

impl Dimensionality {
    pub fn as_str(&self) -> &'static str {
        match self {
            Dimensionality::Tap => "tap",
            Dimensionality::Line => "line",
            Dimensionality::Planar => "planar",
        }
    }
}

impl std::fmt::Display for Dimensionality {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Ntm<T: Scalar = f64> {
    n: usize,
    entries: Vec<T>,
    min: T,
    max: T,
    line: bool,
    path_length: T,
}

impl<T: Scalar> Ntm<T> {
    /// Builds the matrix for `path`.
    ///
    /// `known_length` overrides the milestone segment sum as `λ` (for example
    /// with the regularized path's length). `line_epsilon` sets the line flag.
    pub fn build(path: &MilestonePath<T>, known_length: Option<T>, line_epsilon: T) -> Result<Self> {
        let pts = path.points();
        let n = pts.len();
        if n < 3 {
            return Err(Error::PathTooShort { found: n, required: 3 });
        }
        let length = known_length.unwrap_or_else(|| path_length(path));
        if !(length > T::zero()) || !length.is_finite() {
            return Err(Error::ZeroLengthPath);
        }
        let scale = T::lit(4.0) / (length * length);

        let mut entries = Vec::with_capacity(triangle_count(n));
        let mut min = T::infinity();
        let mut max = T::neg_infinity();
        for a in 0..n - 2 {
            let pa = pts[a];
            for b in a + 1..n - 1 {
                let u = pts[b] - pa;
                for &pc in &pts[b + 1..] {
                    let v = det2(u, pc - pa) * scale;
                    min = min.min(v);
                    max = max.max(v);
                    entries.push(v);
                }
            }
        }
        let line = min.abs().max(max.abs()) < line_epsilon;
        Ok(Ntm {
            n,
            entries,
            min,
            max,
            line,
            path_length: length,
        })
    }

    /// Builds with the default line epsilon and milestone-sum length.
    pub fn from_path(path: &MilestonePath<T>) -> Result<Self> {
        Self::build(path, None, T::lit(DEFAULT_LINE_EPSILON))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn count(&self) -> usize {
        self.entries.len()
    }

    pub fn min(&self) -> T {
        self.min
    }

    pub fn max(&self) -> T {
        self.max
    }

    pub fn is_line(&self) -> bool {
        self.line
    }

    pub fn path_length(&self) -> T {
        self.path_length
    }

    /// Flat entries in lexicographic `(a, b, c)` order.
    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    fn offset(&self, a: usize, b: usize, c: usize) -> usize {
        let n = self.n;
        // triangles whose first corner precedes `a`
        let before_a = triangle_count(n) - triangle_count(n - a);
        // pairs (b', c') over the m points after `a`
        let m = n - a - 1;
        let (b, c) = (b - a - 1, c - a - 1);
        before_a + pairs(m) - pairs(m - b) + (c - b - 1)
    }

    /// Stored normalized determinant for `t`.
    pub fn entry(&self, t: TriangleIndex) -> Result<T> {
        let TriangleIndex { a, b, c } = t;
        if !(a < b && b < c && c < self.n) {
            return Err(Error::IndexOutOfRange { a, b, c, n: self.n });
        }
        Ok(self.entries[self.offset(a, b, c)])
    }

    /// Iterates `(triangle, value)` in storage order.
    pub fn iter(&self) -> impl Iterator<Item = (TriangleIndex, T)> + '_ {
        triangles(self.n).zip(self.entries.iter().copied())
    }

    /// Entry of maximum magnitude, earliest triangle on ties.
    pub fn top_entry(&self) -> (TriangleIndex, T) {
        let mut best = (TriangleIndex { a: 0, b: 1, c: 2 }, self.entries[0]);
        for (t, v) in self.iter().skip(1) {
            if v.abs() > best.1.abs() {
                best = (t, v);
            }
        }
        best
    }

    /// Number of entries with `|value| >= pivot`.
    pub fn pivot_count(&self, pivot: T) -> usize {
        self.entries.iter().filter(|v| v.abs() >= pivot).count()
    }

    /// Finds a magnitude threshold selecting roughly the `m` largest triangles.
    ///
    /// Bisects `[0, 1]` until the selected count lands in `[m − allow, m + allow]`.
    /// When ties make that window unreachable the bracket collapses below
    /// [`PIVOT_RANGE_EPSILON`] and the lower bound is returned, which selects
    /// every tied triangle rather than none of them. Matrices with at most
    /// `m` entries return 0 so that everything is selected.
    pub fn pivot_for(&self, m: usize, allow: usize) -> T {
        if self.count() <= m {
            return T::zero();
        }
        let lo_target = m.saturating_sub(allow);
        let hi_target = m + allow;
        let eps = T::lit(PIVOT_RANGE_EPSILON);
        let two = T::lit(2.0);
        let mut top = T::one();
        let mut bottom = T::zero();
        loop {
            let mid = (top + bottom) / two;
            let count = self.pivot_count(mid);
            if (lo_target..=hi_target).contains(&count) {
                return mid;
            }
            if count > m {
                bottom = mid;
            } else {
                top = mid;
            }
            if top - bottom < eps {
                return bottom;
            }
        }
    }

    /// All `(triangle, value)` with `|value| >= pivot`, in storage order.
    pub fn pivot_set(&self, pivot: T) -> Vec<(TriangleIndex, T)> {
        self.iter().filter(|(_, v)| v.abs() >= pivot).collect()
    }

    /// `pivot_for` followed by `pivot_set`.
    pub fn largest(&self, m: usize, allow: usize) -> Vec<(TriangleIndex, T)> {
        self.pivot_set(self.pivot_for(m, allow))
    }
}

/// All triangles over `n` points in lexicographic order.
pub fn triangles(n: usize) -> impl Iterator<Item = TriangleIndex> {
    (0..n).flat_map(move |a| {
        (a + 1..n).flat_map(move |b| (b + 1..n).map(move |c| TriangleIndex { a, b, c }))
    })
}

/// Tap when the regularized path has at most [`TAP_MAX_POINTS`] points,
/// otherwise Line or Planar from the matrix's line flag. Without a matrix a
/// non-tap is reported as Planar.
pub fn classify<T: Scalar>(regularized_points: usize, ntm: Option<&Ntm<T>>) -> Dimensionality {
    if regularized_points <= TAP_MAX_POINTS {
        Dimensionality::Tap
    } else if ntm.is_some_and(Ntm::is_line) {
        Dimensionality::Line
    } else {
        Dimensionality::Planar
    }
}
