//! Procedurally drawn reference glyphs.
//!
//! These are hand-constructed approximations of familiar unistroke templates
//! (the classic 16-gesture demo set and a larger 33-glyph prototype set that
//! adds line strokes, letters and loops). They are densely sampled at roughly
//! one pixel so that they behave like a pen trace when fed through the
//! pipeline. Screen coordinates: `y` grows downward.

use std::f64::consts::{PI, TAU};

use crate::error::Result;
use crate::path::RawPath;
use crate::recognizer::{Library, RecognizerConfig};

/// A named dense path plus its reflection policy.
#[derive(Clone, Debug, PartialEq)]
pub struct GlyphSpec {
    pub name: &'static str,
    pub mirror_allowed: bool,
    pub points: Vec<(f64, f64)>,
}

impl GlyphSpec {
    pub fn raw_path(&self) -> RawPath {
        RawPath::from_xy(&self.points).expect("glyph paths are finite and non-empty")
    }
}

/// Incremental stroke builder sampling at about one pixel.
#[derive(Clone, Debug, Default)]
pub struct Stroke {
    points: Vec<(f64, f64)>,
}

const STEP: f64 = 1.0;

impl Stroke {
    pub fn start(x: f64, y: f64) -> Self {
        Stroke { points: vec![(x, y)] }
    }

    fn last(&self) -> (f64, f64) {
        *self.points.last().expect("stroke has a start point")
    }

    pub fn line_to(mut self, x: f64, y: f64) -> Self {
        let (x0, y0) = self.last();
        let steps = (((x - x0).hypot(y - y0)) / STEP).ceil().max(1.0) as usize;
        for i in 1..=steps {
            let t = i as f64 / steps as f64;
            self.points.push((x0 + (x - x0) * t, y0 + (y - y0) * t));
        }
        self
    }

    pub fn lines(self, pts: &[(f64, f64)]) -> Self {
        pts.iter().fold(self, |s, &(x, y)| s.line_to(x, y))
    }

    /// Circular arc around `(cx, cy)` from angle `a0` to `a1` (radians).
    /// Jumps to the arc start with a straight segment if needed.
    pub fn arc(self, cx: f64, cy: f64, r: f64, a0: f64, a1: f64) -> Self {
        self.curve(|t| {
            let a = a0 + (a1 - a0) * t;
            (cx + r * a.cos(), cy + r * a.sin())
        })
    }

    pub fn cubic_to(self, c1: (f64, f64), c2: (f64, f64), end: (f64, f64)) -> Self {
        let p0 = self.last();
        self.curve(move |t| {
            let u = 1.0 - t;
            let (a, b, c, d) = (u * u * u, 3.0 * u * u * t, 3.0 * u * t * t, t * t * t);
            (
                a * p0.0 + b * c1.0 + c * c2.0 + d * end.0,
                a * p0.1 + b * c1.1 + c * c2.1 + d * end.1,
            )
        })
    }

    /// Appends `f(t)` for `t ∈ [0, 1]`, adaptively sampled to about one pixel.
    pub fn curve(mut self, f: impl Fn(f64) -> (f64, f64)) -> Self {
        let (sx, sy) = f(0.0);
        let (lx, ly) = self.last();
        if (sx - lx).hypot(sy - ly) > 1e-9 {
            self = self.line_to(sx, sy);
        }
        // fine polyline, thinned to roughly one point per pixel of travel
        let probe = 8192;
        let mut since = 0.0;
        let mut prev = f(0.0);
        for i in 1..=probe {
            let p = f(i as f64 / probe as f64);
            since += (p.0 - prev.0).hypot(p.1 - prev.1);
            prev = p;
            if since >= STEP || i == probe {
                self.points.push(p);
                since = 0.0;
            }
        }
        self
    }

    pub fn finish(self) -> Vec<(f64, f64)> {
        self.points
    }
}

fn spec(name: &'static str, mirror_allowed: bool, stroke: Stroke) -> GlyphSpec {
    GlyphSpec {
        name,
        mirror_allowed,
        points: stroke.finish(),
    }
}

/// Sub-pixel wobble so straight strokes are not exactly collinear, as with
/// real pen input.
fn wobbly_line(waypoints: &[(f64, f64)]) -> Stroke {
    let straight = Stroke::start(waypoints[0].0, waypoints[0].1).lines(&waypoints[1..]).finish();
    let pts = straight
        .iter()
        .enumerate()
        .map(|(i, &(x, y))| (x, y + 0.08 * (i as f64 * 0.05).sin()))
        .collect();
    Stroke { points: pts }
}

pub fn arrow() -> GlyphSpec {
    spec("arrow", false, Stroke::start(10.0, 130.0).lines(&[(120.0, 40.0), (78.0, 42.0), (120.0, 40.0), (110.0, 82.0)]))
}

pub fn caret() -> GlyphSpec {
    spec("caret", false, Stroke::start(0.0, 100.0).lines(&[(50.0, 0.0), (100.0, 100.0)]))
}

pub fn check() -> GlyphSpec {
    spec("check", false, Stroke::start(0.0, 55.0).lines(&[(30.0, 100.0), (100.0, 0.0)]))
}

pub fn circle() -> GlyphSpec {
    // starts at the top and runs counter-clockwise on screen
    spec("circle", false, Stroke::start(60.0, 0.0).arc(60.0, 60.0, 60.0, -PI / 2.0, -PI / 2.0 - TAU))
}

pub fn delete_mark() -> GlyphSpec {
    spec("delete_mark", false, Stroke::start(0.0, 0.0).lines(&[(100.0, 100.0), (0.0, 100.0), (100.0, 0.0)]))
}

pub fn left_curly_brace() -> GlyphSpec {
    let s = Stroke::start(50.0, 0.0)
        .cubic_to((20.0, 0.0), (30.0, 48.0), (0.0, 60.0))
        .cubic_to((30.0, 72.0), (20.0, 120.0), (50.0, 120.0));
    spec("left_curly_brace", false, s)
}

pub fn right_curly_brace() -> GlyphSpec {
    let s = Stroke::start(0.0, 0.0)
        .cubic_to((30.0, 0.0), (20.0, 48.0), (50.0, 60.0))
        .cubic_to((20.0, 72.0), (30.0, 120.0), (0.0, 120.0));
    spec("right_curly_brace", false, s)
}

pub fn left_sq_bracket() -> GlyphSpec {
    spec("left_sq_bracket", false, Stroke::start(45.0, 0.0).lines(&[(0.0, 0.0), (0.0, 120.0), (45.0, 120.0)]))
}

pub fn right_sq_bracket() -> GlyphSpec {
    spec("right_sq_bracket", false, Stroke::start(0.0, 0.0).lines(&[(45.0, 0.0), (45.0, 120.0), (0.0, 120.0)]))
}

pub fn pigtail() -> GlyphSpec {
    // prolate cycloid: one loop between two tails
    let s = Stroke::start(0.0, 50.0).curve(|t| {
        let a = t * TAU;
        (16.0 * a - 45.0 * a.sin(), 50.0 * a.cos())
    });
    spec("pigtail", false, s)
}

pub fn rectangle() -> GlyphSpec {
    spec("rectangle", false, Stroke::start(0.0, 0.0).lines(&[(0.0, 80.0), (120.0, 80.0), (120.0, 0.0), (0.0, 0.0)]))
}

pub fn star() -> GlyphSpec {
    let outer = |k: f64| {
        let a = -PI / 2.0 + k * TAU / 5.0;
        (60.0 + 60.0 * a.cos(), 60.0 + 60.0 * a.sin())
    };
    // bottom-left point, then every second outer vertex
    let order = [3.0, 0.0, 2.0, 4.0, 1.0, 3.0];
    let pts: Vec<(f64, f64)> = order.iter().map(|&k| outer(k)).collect();
    spec("star", false, Stroke::start(pts[0].0, pts[0].1).lines(&pts[1..]))
}

pub fn triangle() -> GlyphSpec {
    spec("triangle", false, Stroke::start(0.0, 90.0).lines(&[(52.0, 0.0), (104.0, 90.0), (0.0, 90.0)]))
}

pub fn v() -> GlyphSpec {
    spec("v", false, Stroke::start(0.0, 0.0).lines(&[(45.0, 100.0), (90.0, 0.0)]))
}

pub fn x() -> GlyphSpec {
    spec("x", false, Stroke::start(0.0, 0.0).lines(&[(100.0, 100.0), (100.0, 0.0), (0.0, 100.0)]))
}

pub fn zig_zag() -> GlyphSpec {
    spec(
        "zig_zag",
        false,
        Stroke::start(0.0, 0.0).lines(&[(30.0, 80.0), (60.0, 0.0), (90.0, 80.0), (120.0, 0.0), (150.0, 80.0)]),
    )
}

pub fn question_mark() -> GlyphSpec {
    let s = Stroke::start(10.0, 35.0)
        .arc(45.0, 35.0, 35.0, PI, TAU + PI / 2.0)
        .line_to(45.0, 110.0);
    spec("question_mark", false, s)
}

pub fn center_circle() -> GlyphSpec {
    let s = Stroke::start(60.0, 60.0).line_to(120.0, 60.0).arc(60.0, 60.0, 60.0, 0.0, TAU);
    spec("center_circle", false, s)
}

pub fn infinity() -> GlyphSpec {
    // lemniscate of Bernoulli, starting and ending at the crossing
    let s = Stroke::start(80.0, 40.0).curve(|t| {
        let a = PI / 2.0 + t * TAU;
        let d = 1.0 + a.sin() * a.sin();
        (80.0 + 80.0 * a.cos() / d, 40.0 + 80.0 * a.sin() * a.cos() / d)
    });
    spec("infinity", true, s)
}

pub fn line() -> GlyphSpec {
    spec("line", true, wobbly_line(&[(0.0, 0.0), (160.0, 0.0)]))
}

pub fn double_line() -> GlyphSpec {
    spec("double_line", true, wobbly_line(&[(0.0, 0.0), (160.0, 0.0), (0.0, 0.0)]))
}

pub fn triple_line() -> GlyphSpec {
    spec("triple_line", true, wobbly_line(&[(0.0, 0.0), (160.0, 0.0), (0.0, 0.0), (160.0, 0.0)]))
}

pub fn s() -> GlyphSpec {
    let s = Stroke::start(80.0, 10.0)
        .arc(45.0, 32.0, 35.0, -0.6, -PI / 2.0 - PI)
        .arc(45.0, 98.0, 35.0, -PI / 2.0, PI / 2.0 + 0.6);
    spec("s", false, s)
}

pub fn z() -> GlyphSpec {
    spec("z", false, Stroke::start(0.0, 0.0).lines(&[(100.0, 0.0), (0.0, 110.0), (100.0, 110.0)]))
}

pub fn n() -> GlyphSpec {
    spec("n", false, Stroke::start(0.0, 110.0).lines(&[(0.0, 0.0), (90.0, 110.0), (90.0, 0.0)]))
}

pub fn p() -> GlyphSpec {
    let s = Stroke::start(0.0, 130.0).line_to(0.0, 0.0).line_to(35.0, 0.0).arc(35.0, 32.0, 32.0, -PI / 2.0, PI / 2.0).line_to(0.0, 64.0);
    spec("p", true, s)
}

pub fn alpha() -> GlyphSpec {
    // fish-shaped loop crossing itself near the tail
    let s = Stroke::start(120.0, 10.0).cubic_to((-60.0, 130.0), (-60.0, -30.0), (120.0, 110.0));
    spec("alpha", true, s)
}

pub fn u() -> GlyphSpec {
    let s = Stroke::start(0.0, 0.0).line_to(0.0, 60.0).arc(45.0, 60.0, 45.0, PI, 0.0).line_to(90.0, 0.0);
    spec("u", false, s)
}

pub fn w() -> GlyphSpec {
    spec("w", false, Stroke::start(0.0, 0.0).lines(&[(30.0, 100.0), (60.0, 35.0), (90.0, 100.0), (120.0, 0.0)]))
}

pub fn m() -> GlyphSpec {
    let s = Stroke::start(0.0, 100.0)
        .line_to(0.0, 40.0)
        .arc(30.0, 40.0, 30.0, PI, TAU)
        .line_to(60.0, 70.0)
        .line_to(60.0, 40.0)
        .arc(90.0, 40.0, 30.0, PI, TAU)
        .line_to(120.0, 100.0);
    spec("m", false, s)
}

pub fn spiral() -> GlyphSpec {
    let s = Stroke::start(80.0, 80.0).curve(|t| {
        let a = t * 2.5 * TAU;
        let r = 6.0 + 70.0 * t;
        (80.0 + r * a.cos(), 80.0 + r * a.sin())
    });
    spec("spiral", false, s)
}

pub fn heart() -> GlyphSpec {
    let s = Stroke::start(60.0, 30.0).curve(|t| {
        let a = t * TAU;
        let x = 16.0 * a.sin().powi(3);
        let y = 13.0 * a.cos() - 5.0 * (2.0 * a).cos() - 2.0 * (3.0 * a).cos() - (4.0 * a).cos();
        (60.0 + 4.0 * x, 50.0 - 4.0 * y)
    });
    spec("heart", true, s)
}

pub fn e() -> GlyphSpec {
    let s = Stroke::start(0.0, 50.0).line_to(100.0, 50.0).arc(50.0, 50.0, 50.0, 0.0, -1.75 * PI);
    spec("e", false, s)
}

/// The 15 classic demo templates (the zig-zag is left out).
pub fn dollar_glyphs() -> Vec<GlyphSpec> {
    vec![
        arrow(),
        caret(),
        check(),
        circle(),
        delete_mark(),
        left_curly_brace(),
        left_sq_bracket(),
        pigtail(),
        rectangle(),
        right_curly_brace(),
        right_sq_bracket(),
        star(),
        triangle(),
        v(),
        x(),
    ]
}

/// The 33-glyph prototype set.
pub fn prototype_glyphs() -> Vec<GlyphSpec> {
    let mut all = dollar_glyphs();
    all.extend([
        zig_zag(),
        question_mark(),
        center_circle(),
        infinity(),
        line(),
        double_line(),
        triple_line(),
        s(),
        z(),
        n(),
        p(),
        alpha(),
        u(),
        w(),
        m(),
        spiral(),
        heart(),
        e(),
    ]);
    all
}

pub fn by_name(name: &str) -> Option<GlyphSpec> {
    prototype_glyphs().into_iter().find(|g| g.name == name)
}

/// Builds a library from `specs` under `cfg`, in order.
pub fn build_library(specs: &[GlyphSpec], cfg: &RecognizerConfig) -> Result<Library> {
    let mut lib = Library::new(cfg.n);
    for g in specs {
        lib.add_template(g.name, &g.raw_path(), g.mirror_allowed, cfg)?;
    }
    Ok(lib)
}
