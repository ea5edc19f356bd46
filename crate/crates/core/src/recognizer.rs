//! Template matching through largest-triangle affine maps.
//!
//! For every candidate triangle taken from the input's largest triangles, each
//! template is mapped so that its copy of the same logical triangle lands
//! exactly on the input's. The projected template (its *shadow*) is scored
//! against the input by summed squared point distance and the lowest score
//! wins.

use crate::error::{Error, Result};
use crate::geometry::{AffineTransform, Point};
use crate::ntm::{
    classify, Dimensionality, Ntm, TriangleIndex, DEFAULT_LINE_EPSILON, DEFAULT_PIVOT_ALLOW, DEFAULT_PIVOT_COUNT,
    DEGENERATE_EPSILON, TAP_MAX_POINTS,
};
use crate::path::{interpolate, regularize, MilestonePath, RawPath, RegularPath, DEFAULT_MILESTONES, DEFAULT_SEGMENT_LENGTH};
use crate::scalar::Scalar;

pub const DEFAULT_SIMILARITY_THRESHOLD: f64 = 2.12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RecognizerConfig<T: Scalar = f64> {
    /// Milestone points per path; uniform across a library.
    pub n: usize,
    pub segment_length: T,
    /// Number of input triangles to try, give or take `allow`.
    pub m: usize,
    pub allow: usize,
    pub line_epsilon: T,
    pub degenerate_epsilon: T,
    pub similarity_threshold: T,
    pub orientation_enabled: bool,
}

impl<T: Scalar> Default for RecognizerConfig<T> {
    fn default() -> Self {
        RecognizerConfig {
            n: DEFAULT_MILESTONES,
            segment_length: T::lit(DEFAULT_SEGMENT_LENGTH),
            m: DEFAULT_PIVOT_COUNT,
            allow: DEFAULT_PIVOT_ALLOW,
            line_epsilon: T::lit(DEFAULT_LINE_EPSILON),
            degenerate_epsilon: T::lit(DEGENERATE_EPSILON),
            similarity_threshold: T::lit(DEFAULT_SIMILARITY_THRESHOLD),
            orientation_enabled: false,
        }
    }
}

impl<T: Scalar> RecognizerConfig<T> {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.n < 3 {
            return bad(format!("n must be at least 3, got {}", self.n));
        }
        if !(self.segment_length > T::zero()) {
            return bad(format!("segment length must be positive, got {}", self.segment_length));
        }
        if self.m == 0 {
            return bad("m must be at least 1".into());
        }
        if !(self.line_epsilon > T::zero()) || !(self.degenerate_epsilon > T::zero()) {
            return bad("epsilon values must be positive".into());
        }
        let limit = T::lit(3.0);
        if !(self.similarity_threshold > -limit && self.similarity_threshold < limit) {
            return bad(format!(
                "similarity threshold must lie in (-3, 3), got {}",
                self.similarity_threshold
            ));
        }
        Ok(())
    }

    pub fn with_orientation(mut self, enabled: bool) -> Self {
        self.orientation_enabled = enabled;
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Template<T: Scalar = f64> {
    pub name: String,
    pub milestones: MilestonePath<T>,
    pub ntm: Ntm<T>,
    /// Allow matches through triangle pairs of opposite orientation.
    pub mirror_allowed: bool,
    /// Subject to the orientation gate when the configuration enables it.
    pub orientation_gate: bool,
}

impl<T: Scalar> Template<T> {
    pub fn from_milestones(
        name: impl Into<String>,
        milestones: MilestonePath<T>,
        mirror_allowed: bool,
        orientation_gate: bool,
        line_epsilon: T,
    ) -> Result<Self> {
        let ntm = Ntm::build(&milestones, None, line_epsilon)?;
        Ok(Template {
            name: name.into(),
            milestones,
            ntm,
            mirror_allowed,
            orientation_gate,
        })
    }

    pub fn dimensionality(&self) -> Dimensionality {
        if self.ntm.is_line() {
            Dimensionality::Line
        } else {
            Dimensionality::Planar
        }
    }
}

/// Ordered, uniquely named templates sharing one milestone count.
#[derive(Clone, Debug, PartialEq)]
pub struct Library<T: Scalar = f64> {
    n: usize,
    templates: Vec<Template<T>>,
}

impl<T: Scalar> Library<T> {
    pub fn new(n: usize) -> Self {
        Library { n, templates: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn templates(&self) -> &[Template<T>] {
        &self.templates
    }

    pub fn len(&self) -> usize {
        self.templates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.templates.is_empty()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.templates.iter().map(|t| t.name.as_str())
    }

    pub fn get(&self, name: &str) -> Option<&Template<T>> {
        self.templates.iter().find(|t| t.name == name)
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.templates.iter().position(|t| t.name == name)
    }

    /// Regularizes and resamples `path` under `cfg` and appends it.
    pub fn add_template(
        &mut self,
        name: impl Into<String>,
        path: &RawPath<T>,
        mirror_allowed: bool,
        cfg: &RecognizerConfig<T>,
    ) -> Result<&Template<T>> {
        let name = name.into();
        self.check_config(cfg)?;
        if self.get(&name).is_some() {
            return Err(Error::DuplicateName(name));
        }
        let regular = regularize(path, cfg.segment_length);
        if regular.len() <= TAP_MAX_POINTS {
            return Err(Error::PathTooShort {
                found: regular.len(),
                required: TAP_MAX_POINTS + 1,
            });
        }
        let milestones = interpolate(&regular.points, self.n)?;
        let template = Template::from_milestones(name, milestones, mirror_allowed, true, cfg.line_epsilon)?;
        self.templates.push(template);
        Ok(self.templates.last().expect("just pushed"))
    }

    /// Appends a prepared template.
    pub fn insert(&mut self, template: Template<T>) -> Result<()> {
        if template.milestones.len() != self.n {
            return Err(Error::ConfigMismatch {
                library: self.n,
                config: template.milestones.len(),
            });
        }
        if self.get(&template.name).is_some() {
            return Err(Error::DuplicateName(template.name));
        }
        self.templates.push(template);
        Ok(())
    }

    pub fn remove(&mut self, name: &str) -> Result<Template<T>> {
        let i = self.position(name).ok_or_else(|| Error::UnknownTemplate(name.to_owned()))?;
        Ok(self.templates.remove(i))
    }

    pub fn set_mirror_allowed(&mut self, name: &str, allowed: bool) -> Result<()> {
        let i = self.position(name).ok_or_else(|| Error::UnknownTemplate(name.to_owned()))?;
        self.templates[i].mirror_allowed = allowed;
        Ok(())
    }

    pub fn set_orientation_gate(&mut self, name: &str, gated: bool) -> Result<()> {
        let i = self.position(name).ok_or_else(|| Error::UnknownTemplate(name.to_owned()))?;
        self.templates[i].orientation_gate = gated;
        Ok(())
    }

    pub fn check_config(&self, cfg: &RecognizerConfig<T>) -> Result<()> {
        cfg.validate()?;
        if cfg.n != self.n {
            return Err(Error::ConfigMismatch {
                library: self.n,
                config: cfg.n,
            });
        }
        Ok(())
    }
}

/// Affine map sending `template`'s triangle `t` onto `input`'s triangle `t`.
pub fn alignment<T: Scalar>(
    input: &[Point<T>],
    template: &[Point<T>],
    t: TriangleIndex,
) -> Result<AffineTransform<T>> {
    let g = AffineTransform::from_triangle(input[t.a], input[t.b], input[t.c]);
    let h = AffineTransform::from_triangle(template[t.a], template[t.b], template[t.c]);
    Ok(h.inverse()?.multiply(&g))
}

/// Projects `template` into the input's coordinate system through triangle `t`.
pub fn project<T: Scalar>(
    input: &MilestonePath<T>,
    template: &MilestonePath<T>,
    t: TriangleIndex,
) -> Result<Vec<Point<T>>> {
    check_triangle(t, input.len().min(template.len()))?;
    let map = alignment(input.points(), template.points(), t)?;
    Ok(map.apply_all(template.points()))
}

fn check_triangle(t: TriangleIndex, n: usize) -> Result<()> {
    if t.a < t.b && t.b < t.c && t.c < n {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange {
            a: t.a,
            b: t.b,
            c: t.c,
            n,
        })
    }
}

/// Sum of squared distances between paired points (no square root).
pub fn geometric_metric<T: Scalar>(g: &[Point<T>], r: &[Point<T>]) -> Result<T> {
    if g.len() != r.len() {
        return Err(Error::LengthMismatch {
            left: g.len(),
            right: r.len(),
        });
    }
    Ok(g.iter().zip(r).map(|(&p, &q)| (p - q).length_squared()).sum())
}

fn triangle_edges<T: Scalar>(p: &[Point<T>], t: TriangleIndex) -> [Point<T>; 3] {
    let (p0, p1, p2) = (p[t.a], p[t.b], p[t.c]);
    [p0 - p1, p1 - p2, p2 - p0]
}

/// Sum of the cosines between corresponding edges of triangle `t` in both
/// paths; 3 for identical orientation, 0 at a quarter turn, −3 reversed.
pub fn tri_similarity<T: Scalar>(g: &MilestonePath<T>, h: &MilestonePath<T>, t: TriangleIndex) -> Result<T> {
    check_triangle(t, g.len().min(h.len()))?;
    let ge = triangle_edges(g.points(), t);
    let he = triangle_edges(h.points(), t);
    let mut sum = T::zero();
    for (edge, (u, v)) in ge.iter().zip(he.iter()).enumerate() {
        let norms = u.length() * v.length();
        if !(norms > T::zero()) {
            return Err(Error::DegenerateEdge { edge });
        }
        sum = sum + u.dot(*v) / norms;
    }
    Ok(sum)
}

/// Winning template alignment for an input glyph.
#[derive(Clone, Debug, PartialEq)]
pub struct MatchResult<T: Scalar = f64> {
    pub template_name: String,
    pub template_index: usize,
    pub triangle: TriangleIndex,
    /// Summed squared pixel distance between input and shadow.
    pub metric: T,
    /// Template projected into input coordinates.
    pub shadow: Vec<Point<T>>,
    pub dimensionality: Dimensionality,
    /// Input path length used to normalize the metric.
    pub input_length: T,
}

impl<T: Scalar> MatchResult<T> {
    /// `metric / λ²`: a scale-free score for display thresholds.
    pub fn normalized_metric(&self) -> T {
        self.metric / (self.input_length * self.input_length)
    }
}

/// Tests every `(template, candidate triangle)` pair and keeps the lowest metric.
///
/// Only templates of the input's line type are considered. For 2-D inputs a
/// pair is skipped when either triangle is degenerate, when the triangles
/// have opposite orientation and the template disallows reflection, or when
/// the orientation gate is active and the triangle similarity does not
/// exceed the threshold. Line inputs apply none of these gates. Earlier
/// templates and candidates win ties.
pub fn match_glyph<T: Scalar>(
    input: &MilestonePath<T>,
    input_ntm: &Ntm<T>,
    candidates: &[(TriangleIndex, T)],
    library: &[Template<T>],
    cfg: &RecognizerConfig<T>,
) -> Option<MatchResult<T>> {
    let line = input_ntm.is_line();
    let g = input.points();
    let mut best: Option<(T, usize, TriangleIndex, AffineTransform<T>)> = None;

    for (index, template) in library.iter().enumerate() {
        if template.ntm.is_line() != line {
            continue;
        }
        for &(t, _) in candidates {
            if !line && !passes_gates(input, input_ntm, template, t, cfg) {
                continue;
            }
            let Ok(map) = alignment(g, template.milestones.points(), t) else {
                continue;
            };
            let metric: T = g
                .iter()
                .zip(template.milestones.points())
                .map(|(&p, &h)| (p - map.apply(h)).length_squared())
                .sum();
            if !metric.is_finite() {
                continue;
            }
            if best.as_ref().is_none_or(|b| metric < b.0) {
                best = Some((metric, index, t, map));
            }
        }
    }

    best.map(|(metric, index, triangle, map)| {
        let template = &library[index];
        MatchResult {
            template_name: template.name.clone(),
            template_index: index,
            triangle,
            metric,
            shadow: map.apply_all(template.milestones.points()),
            dimensionality: if line { Dimensionality::Line } else { Dimensionality::Planar },
            input_length: input_ntm.path_length(),
        }
    })
}

fn passes_gates<T: Scalar>(
    input: &MilestonePath<T>,
    input_ntm: &Ntm<T>,
    template: &Template<T>,
    t: TriangleIndex,
    cfg: &RecognizerConfig<T>,
) -> bool {
    let (Ok(nd1), Ok(nd2)) = (input_ntm.entry(t), template.ntm.entry(t)) else {
        return false;
    };
    if nd1.abs() < cfg.degenerate_epsilon || nd2.abs() < cfg.degenerate_epsilon {
        return false;
    }
    if nd1 * nd2 < T::zero() && !template.mirror_allowed {
        return false;
    }
    if cfg.orientation_enabled && template.orientation_gate {
        return matches!(
            tri_similarity(input, &template.milestones, t),
            Ok(s) if s > cfg.similarity_threshold
        );
    }
    true
}

/// Intermediate products of the input pipeline.
#[derive(Clone, Debug, PartialEq)]
pub struct Analysis<T: Scalar = f64> {
    pub regular: RegularPath<T>,
    /// Absent for taps.
    pub milestones: Option<MilestonePath<T>>,
    pub ntm: Option<Ntm<T>>,
    pub dimensionality: Dimensionality,
}

/// Regularizes, classifies and (for non-taps) resamples and builds the matrix.
pub fn analyze<T: Scalar>(path: &RawPath<T>, cfg: &RecognizerConfig<T>) -> Result<Analysis<T>> {
    cfg.validate()?;
    let regular = regularize(path, cfg.segment_length);
    if classify::<T>(regular.len(), None) == Dimensionality::Tap {
        return Ok(Analysis {
            regular,
            milestones: None,
            ntm: None,
            dimensionality: Dimensionality::Tap,
        });
    }
    let milestones = interpolate(&regular.points, cfg.n)?;
    let ntm = Ntm::build(&milestones, None, cfg.line_epsilon)?;
    let dimensionality = classify(regular.len(), Some(&ntm));
    Ok(Analysis {
        regular,
        milestones: Some(milestones),
        ntm: Some(ntm),
        dimensionality,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum Recognition<T: Scalar = f64> {
    /// Too few regularized points to form a path.
    Tap,
    /// Every template/triangle pair was gated out or no template shares the
    /// input's line type.
    NoMatch(Dimensionality),
    Match(MatchResult<T>),
}

impl<T: Scalar> Recognition<T> {
    pub fn dimensionality(&self) -> Dimensionality {
        match self {
            Recognition::Tap => Dimensionality::Tap,
            Recognition::NoMatch(d) => *d,
            Recognition::Match(m) => m.dimensionality,
        }
    }

    pub fn matched(&self) -> Option<&MatchResult<T>> {
        match self {
            Recognition::Match(m) => Some(m),
            _ => None,
        }
    }

    pub fn template_name(&self) -> Option<&str> {
        self.matched().map(|m| m.template_name.as_str())
    }
}

/// Full pipeline: regularize, classify taps, resample, build the matrix,
/// pick the largest triangles and match against `library`.
pub fn recognize<T: Scalar>(
    path: &RawPath<T>,
    library: &Library<T>,
    cfg: &RecognizerConfig<T>,
) -> Result<Recognition<T>> {
    library.check_config(cfg)?;
    let analysis = analyze(path, cfg)?;
    Ok(recognize_analysis(&analysis, library, cfg))
}

/// Matching stage of [`recognize`] on an already analyzed input.
pub fn recognize_analysis<T: Scalar>(
    analysis: &Analysis<T>,
    library: &Library<T>,
    cfg: &RecognizerConfig<T>,
) -> Recognition<T> {
    let (Some(milestones), Some(ntm)) = (&analysis.milestones, &analysis.ntm) else {
        return Recognition::Tap;
    };
    let candidates = ntm.largest(cfg.m, cfg.allow);
    match match_glyph(milestones, ntm, &candidates, library.templates(), cfg) {
        Some(m) => Recognition::Match(m),
        None => Recognition::NoMatch(analysis.dimensionality),
    }
}
