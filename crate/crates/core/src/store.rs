//! Template library persistence and gesture dataset ingestion.
//!
//! Libraries are stored as versioned JSON holding post-pipeline milestones
//! only; NTMs are rebuilt on load. Floats are written in shortest
//! round-trip form, so a save/load cycle is bit-exact.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use walkdir::WalkDir;

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::ntm::DEFAULT_LINE_EPSILON;
use crate::path::{MilestonePath, RawPath};
use crate::recognizer::{Library, Template};
use crate::scalar::Scalar;

pub const LIBRARY_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LibraryFile {
    pub version: u32,
    pub n: usize,
    pub templates: Vec<TemplateRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TemplateRecord {
    pub name: String,
    pub mirror_allowed: bool,
    #[serde(default = "default_true")]
    pub orientation_gate: bool,
    pub milestones: Vec<[f64; 2]>,
}

fn default_true() -> bool {
    true
}

impl LibraryFile {
    pub fn from_library<T: Scalar>(library: &Library<T>) -> Self {
        LibraryFile {
            version: LIBRARY_VERSION,
            n: library.n(),
            templates: library
                .templates()
                .iter()
                .map(|t| TemplateRecord {
                    name: t.name.clone(),
                    mirror_allowed: t.mirror_allowed,
                    orientation_gate: t.orientation_gate,
                    milestones: t.milestones.points().iter().map(|p| [p.x.as_f64(), p.y.as_f64()]).collect(),
                })
                .collect(),
        }
    }

    /// Validates the document and rebuilds every template's NTM.
    pub fn into_library<T: Scalar>(self, line_epsilon: T) -> Result<Library<T>> {
        if self.version != LIBRARY_VERSION {
            return Err(Error::VersionMismatch {
                found: self.version,
                expected: LIBRARY_VERSION,
            });
        }
        if self.n < 3 {
            return Err(Error::parse(format!("n = {} is below the minimum of 3", self.n)));
        }
        let mut lib = Library::new(self.n);
        for rec in self.templates {
            if rec.milestones.len() != self.n {
                return Err(Error::parse(format!(
                    "template {:?} has {} milestones, expected {}",
                    rec.name,
                    rec.milestones.len(),
                    self.n
                )));
            }
            if rec.name.is_empty() {
                return Err(Error::parse("template name is empty"));
            }
            let pts = rec
                .milestones
                .iter()
                .map(|&[x, y]| Point::new(T::lit(x), T::lit(y)))
                .collect();
            let ms = MilestonePath::from_points(pts)?;
            let name = rec.name;
            let tpl = Template::from_milestones(name, ms, rec.mirror_allowed, rec.orientation_gate, line_epsilon)?;
            lib.insert(tpl)?;
        }
        Ok(lib)
    }

    /// Canonical text: one milestone per line, fixed key order.
    pub fn to_canonical_string(&self) -> String {
        let num = |v: f64| serde_json::to_string(&v).expect("finite float");
        let mut out = String::new();
        let _ = writeln!(out, "{{");
        let _ = writeln!(out, "  \"version\": {},", self.version);
        let _ = writeln!(out, "  \"n\": {},", self.n);
        let _ = write!(out, "  \"templates\": [");
        for (i, t) in self.templates.iter().enumerate() {
            out.push_str(if i == 0 { "\n" } else { ",\n" });
            let name = serde_json::to_string(&t.name).expect("string");
            let _ = writeln!(out, "    {{");
            let _ = writeln!(out, "      \"name\": {name},");
            let _ = writeln!(out, "      \"mirror_allowed\": {},", t.mirror_allowed);
            let _ = writeln!(out, "      \"orientation_gate\": {},", t.orientation_gate);
            let _ = writeln!(out, "      \"milestones\": [");
            for (j, [x, y]) in t.milestones.iter().enumerate() {
                let sep = if j + 1 == t.milestones.len() { "" } else { "," };
                let _ = writeln!(out, "        [{}, {}]{sep}", num(*x), num(*y));
            }
            let _ = writeln!(out, "      ]");
            let _ = write!(out, "    }}");
        }
        if self.templates.is_empty() {
            out.push_str("]\n}\n");
        } else {
            out.push_str("\n  ]\n}\n");
        }
        out
    }
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse {
        message: e.to_string(),
        line: Some(e.line()),
        column: Some(e.column()),
    }
}

pub fn library_to_string<T: Scalar>(library: &Library<T>) -> Result<String> {
    if library.is_empty() {
        return Err(Error::EmptyLibrary);
    }
    Ok(LibraryFile::from_library(library).to_canonical_string())
}

pub fn library_from_str<T: Scalar>(text: &str, line_epsilon: T) -> Result<Library<T>> {
    let file: LibraryFile = serde_json::from_str(text).map_err(json_error)?;
    file.into_library(line_epsilon)
}

/// Writes `library` to `dest` via a sibling temp file and a rename.
pub fn save_library<T: Scalar>(library: &Library<T>, dest: impl AsRef<Path>) -> Result<()> {
    let text = library_to_string(library)?;
    write_atomic(dest.as_ref(), text.as_bytes())
}

pub fn load_library<T: Scalar>(src: impl AsRef<Path>, line_epsilon: T) -> Result<Library<T>> {
    let src = src.as_ref();
    let text = fs::read_to_string(src).map_err(|e| Error::io(src, e))?;
    library_from_str(&text, line_epsilon)
}

pub fn load_library_default(src: impl AsRef<Path>) -> Result<Library> {
    load_library(src, DEFAULT_LINE_EPSILON)
}

pub fn write_atomic(dest: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match dest.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let file_name = dest
        .file_name()
        .ok_or_else(|| Error::io(dest, std::io::Error::new(std::io::ErrorKind::InvalidInput, "no file name")))?;
    let tmp = dir.join(format!(".{}.tmp{}", file_name.to_string_lossy(), std::process::id()));
    let res = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, dest)
    })();
    if let Err(e) = res {
        let _ = fs::remove_file(&tmp);
        return Err(Error::io(dest, e));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Speed {
    Fast,
    Medium,
    Slow,
}

impl Speed {
    pub fn parse(s: &str) -> Option<Speed> {
        match s.trim().to_ascii_lowercase().as_str() {
            "fast" => Some(Speed::Fast),
            "medium" => Some(Speed::Medium),
            "slow" => Some(Speed::Slow),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Speed::Fast => "fast",
            Speed::Medium => "medium",
            Speed::Slow => "slow",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GestureSample {
    pub subject: String,
    pub glyph_label: String,
    pub speed: Option<Speed>,
    pub raw: RawPath,
    pub source: PathBuf,
}

#[derive(Clone, Debug, Default)]
pub struct Dataset {
    pub samples: Vec<GestureSample>,
    /// Files that could not be read or parsed, with the reason.
    pub warnings: Vec<String>,
}

impl Dataset {
    pub fn labels(&self) -> Vec<String> {
        let mut l: Vec<String> = self.samples.iter().map(|s| s.glyph_label.clone()).collect();
        l.sort();
        l.dedup();
        l
    }
}

/// `"circle01"` → `"circle"`; `"question_mark10"` → `"question_mark"`.
pub fn label_from_name(name: &str) -> &str {
    let trimmed = name.trim_end_matches(|c: char| c.is_ascii_digit());
    if trimmed.is_empty() {
        name
    } else {
        trimmed
    }
}

/// One gesture parsed from an XML point log.
#[derive(Clone, Debug, PartialEq)]
pub struct GestureLog {
    pub name: Option<String>,
    pub subject: Option<String>,
    pub speed: Option<Speed>,
    pub raw: RawPath,
}

fn xml_error(e: roxmltree::Error) -> Error {
    let pos = e.pos();
    Error::Parse {
        message: e.to_string(),
        line: Some(pos.row as usize),
        column: Some(pos.col as usize),
    }
}

/// Parses `<Gesture Name=.. Subject=.. Speed=..><Point X=.. Y=.. T=../>..</Gesture>`.
pub fn parse_gesture_xml(text: &str) -> Result<GestureLog> {
    let doc = roxmltree::Document::parse(text).map_err(xml_error)?;
    let root = doc.root_element();
    if !root.has_tag_name("Gesture") {
        return Err(Error::parse(format!("root element is <{}>, expected <Gesture>", root.tag_name().name())));
    }
    let mut points = Vec::new();
    let mut times = Vec::new();
    for node in root.descendants().filter(|n| n.has_tag_name("Point")) {
        let attr = |k: &str| -> Result<Option<f64>> {
            match node.attribute(k) {
                None => Ok(None),
                Some(v) => v
                    .trim()
                    .parse::<f64>()
                    .map(Some)
                    .map_err(|_| attr_error(&doc, node, k, v)),
            }
        };
        let x = attr("X")?.ok_or_else(|| missing(&doc, node, "X"))?;
        let y = attr("Y")?.ok_or_else(|| missing(&doc, node, "Y"))?;
        points.push(Point::new(x, y));
        times.push(attr("T")?);
    }
    if points.is_empty() {
        return Err(Error::EmptyPath);
    }
    let raw = if times.iter().all(Option::is_some) {
        RawPath::with_timestamps(points, times.into_iter().flatten().collect())?
    } else {
        RawPath::new(points)?
    };
    Ok(GestureLog {
        name: root.attribute("Name").map(str::to_string),
        subject: root.attribute("Subject").map(str::to_string),
        speed: root.attribute("Speed").and_then(Speed::parse),
        raw,
    })
}

fn node_pos(doc: &roxmltree::Document, node: roxmltree::Node) -> (Option<usize>, Option<usize>) {
    let p = doc.text_pos_at(node.range().start);
    (Some(p.row as usize), Some(p.col as usize))
}

fn attr_error(doc: &roxmltree::Document, node: roxmltree::Node, key: &str, value: &str) -> Error {
    let (line, column) = node_pos(doc, node);
    Error::Parse {
        message: format!("attribute {key}={value:?} is not a number"),
        line,
        column,
    }
}

fn missing(doc: &roxmltree::Document, node: roxmltree::Node, key: &str) -> Error {
    let (line, column) = node_pos(doc, node);
    Error::Parse {
        message: format!("<Point> without {key} attribute"),
        line,
        column,
    }
}

/// Parses a JSON gesture: `[[x, y], ...]`, `[[x, y, t], ...]` or
/// `{"points": [...]}`.
pub fn parse_gesture_json(text: &str) -> Result<RawPath> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Doc {
        Bare(Vec<Vec<f64>>),
        Wrapped { points: Vec<Vec<f64>> },
    }
    let doc: Doc = serde_json::from_str(text).map_err(json_error)?;
    let rows = match doc {
        Doc::Bare(r) | Doc::Wrapped { points: r } => r,
    };
    let mut points = Vec::with_capacity(rows.len());
    let mut times = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        match row.as_slice() {
            [x, y] => {
                points.push(Point::new(*x, *y));
            }
            [x, y, t] => {
                points.push(Point::new(*x, *y));
                times.push(*t);
            }
            _ => return Err(Error::parse(format!("point {i} has {} components, expected 2 or 3", row.len()))),
        }
    }
    if !times.is_empty() && times.len() == points.len() {
        RawPath::with_timestamps(points, times)
    } else {
        RawPath::new(points)
    }
}

/// Reads a gesture file, choosing the format by extension (`.xml` or JSON).
pub fn read_gesture_file(path: impl AsRef<Path>) -> Result<RawPath> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let is_xml = path
        .extension()
        .map(|e| e.eq_ignore_ascii_case("xml"))
        .unwrap_or(false)
        || text.trim_start().starts_with('<');
    if is_xml {
        parse_gesture_xml(&text).map(|g| g.raw)
    } else {
        parse_gesture_json(&text)
    }
}

pub fn load_gesture_dataset(root: impl AsRef<Path>) -> Result<Dataset> {
    load_gesture_dataset_excluding(root, &[])
}

/// Walks `root` in sorted order reading every `.xml` point log. Labels whose
/// name appears in `exclude` are skipped. Subject and speed fall back to the
/// enclosing directory names (`.../s02/medium/circle01.xml`).
pub fn load_gesture_dataset_excluding(root: impl AsRef<Path>, exclude: &[&str]) -> Result<Dataset> {
    let root = root.as_ref();
    let mut ds = Dataset::default();
    let walker = WalkDir::new(root).sort_by_file_name();
    for entry in walker {
        let entry = match entry {
            Ok(e) => e,
            Err(e) => {
                ds.warnings.push(format!("{e}"));
                continue;
            }
        };
        let path = entry.path();
        if !entry.file_type().is_file() || !path.extension().is_some_and(|e| e.eq_ignore_ascii_case("xml")) {
            continue;
        }
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                ds.warnings.push(format!("{}: {e}", path.display()));
                continue;
            }
        };
        let log = match parse_gesture_xml(&text) {
            Ok(l) => l,
            Err(e) => {
                ds.warnings.push(format!("{}: {e}", path.display()));
                continue;
            }
        };
        let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        let label = label_from_name(log.name.as_deref().unwrap_or(&stem)).to_string();
        if label.is_empty() || exclude.contains(&label.as_str()) {
            continue;
        }
        let parent_names: Vec<String> = path
            .ancestors()
            .skip(1)
            .take_while(|a| *a != root)
            .filter_map(|a| a.file_name().map(|n| n.to_string_lossy().into_owned()))
            .collect();
        let speed = log.speed.or_else(|| parent_names.iter().find_map(|n| Speed::parse(n)));
        let subject = log.subject.clone().unwrap_or_else(|| {
            parent_names
                .iter()
                .find(|n| Speed::parse(n).is_none())
                .cloned()
                .unwrap_or_default()
        });
        ds.samples.push(GestureSample {
            subject,
            glyph_label: label,
            speed,
            raw: log.raw,
            source: path.to_path_buf(),
        });
    }
    if ds.samples.is_empty() {
        return Err(Error::NoSamplesFound(root.to_path_buf()));
    }
    Ok(ds)
}

/// Writes a gesture as an XML point log in the dataset's attribute style.
pub fn gesture_to_xml(name: &str, subject: &str, speed: Option<Speed>, raw: &RawPath) -> String {
    let mut out = String::new();
    let _ = write!(out, "<?xml version=\"1.0\" encoding=\"utf-8\" standalone=\"yes\"?>\n<Gesture Name=\"{}\" Subject=\"{}\"", xml_escape(name), xml_escape(subject));
    if let Some(s) = speed {
        let _ = write!(out, " Speed=\"{}\"", s.as_str());
    }
    let _ = writeln!(out, " NumPts=\"{}\">", raw.len());
    for (i, p) in raw.points().iter().enumerate() {
        let _ = write!(out, "  <Point X=\"{}\" Y=\"{}\"", p.x, p.y);
        if let Some(ts) = raw.timestamps() {
            let _ = write!(out, " T=\"{}\"", ts[i]);
        }
        out.push_str(" />\n");
    }
    out.push_str("</Gesture>\n");
    out
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('"', "&quot;").replace('<', "&lt;").replace('>', "&gt;")
}
