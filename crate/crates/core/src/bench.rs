//! Accuracy and throughput benchmark over a labeled gesture set.

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::recognizer::{recognize, Library, Recognition, RecognizerConfig};
use crate::store::GestureSample;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BenchOptions {
    /// Timed passes over the full sample set.
    pub trials: usize,
    pub parallel: bool,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions {
            trials: 5,
            parallel: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchReport {
    /// Template names in library order; rows and columns of `confusion`.
    pub labels: Vec<String>,
    pub total: usize,
    pub correct: usize,
    pub accuracy: f64,
    /// `confusion[actual][recognized]`.
    pub confusion: Vec<Vec<usize>>,
    /// Per actual label: samples that produced a tap or no surviving pair.
    pub unrecognized: Vec<usize>,
    /// Median wall-clock seconds of one pass, recognition only.
    pub runtime_core: f64,
    /// Mean of the three most consistent passes.
    pub runtime_best3: f64,
    pub trial_seconds: Vec<f64>,
}

impl BenchReport {
    pub fn confusion_sum(&self) -> usize {
        self.confusion.iter().flatten().sum()
    }

    pub fn unrecognized_sum(&self) -> usize {
        self.unrecognized.iter().sum()
    }

    pub fn row(&self, label: &str) -> Option<&[usize]> {
        let i = self.labels.iter().position(|l| l == label)?;
        Some(&self.confusion[i])
    }

    pub fn count(&self, actual: &str, recognized: &str) -> Option<usize> {
        let j = self.labels.iter().position(|l| l == recognized)?;
        self.row(actual).map(|r| r[j])
    }

    fn label_rows(&self) -> impl Iterator<Item = (usize, &String)> {
        self.labels.iter().enumerate()
    }
}

fn classify_all(samples: &[GestureSample], library: &Library, cfg: &RecognizerConfig, parallel: bool) -> Vec<Option<usize>> {
    let one = |s: &GestureSample| match recognize(&s.raw, library, cfg) {
        Ok(Recognition::Match(m)) => Some(m.template_index),
        _ => None,
    };
    if parallel {
        samples.par_iter().map(one).collect()
    } else {
        samples.iter().map(one).collect()
    }
}

/// Mean of the three sorted neighbours with the smallest spread.
pub fn best_three_mean(times: &[f64]) -> f64 {
    let mut t = times.to_vec();
    t.sort_by(f64::total_cmp);
    if t.len() < 3 {
        return t.iter().sum::<f64>() / t.len().max(1) as f64;
    }
    let w = t
        .windows(3)
        .min_by(|a, b| (a[2] - a[0]).total_cmp(&(b[2] - b[0])))
        .expect("at least one window");
    w.iter().sum::<f64>() / 3.0
}

pub fn median(times: &[f64]) -> f64 {
    let mut t = times.to_vec();
    t.sort_by(f64::total_cmp);
    match t.len() {
        0 => 0.0,
        n if n % 2 == 1 => t[n / 2],
        n => (t[n / 2 - 1] + t[n / 2]) / 2.0,
    }
}

/// Recognizes every sample against the whole library.
pub fn run_benchmark(
    samples: &[GestureSample],
    library: &Library,
    cfg: &RecognizerConfig,
    opts: BenchOptions,
) -> Result<BenchReport> {
    cfg.validate()?;
    library.check_config(cfg)?;
    if samples.is_empty() {
        return Err(Error::InvalidConfig("benchmark needs at least one sample".into()));
    }
    let labels: Vec<String> = library.names().map(str::to_string).collect();
    let actual: Vec<usize> = samples
        .iter()
        .map(|s| library.position(&s.glyph_label).ok_or_else(|| Error::LabelMismatch(s.glyph_label.clone())))
        .collect::<Result<_>>()?;

    let trials = opts.trials.max(1);
    let mut trial_seconds = Vec::with_capacity(trials);
    let mut outcome = None;
    for _ in 0..trials {
        let start = Instant::now();
        let got = classify_all(samples, library, cfg, opts.parallel);
        trial_seconds.push(start.elapsed().as_secs_f64());
        outcome.get_or_insert(got);
    }
    let outcome = outcome.expect("at least one trial");

    let k = labels.len();
    let mut confusion = vec![vec![0usize; k]; k];
    let mut unrecognized = vec![0usize; k];
    let mut correct = 0;
    for (&a, got) in actual.iter().zip(&outcome) {
        match *got {
            Some(j) => {
                confusion[a][j] += 1;
                if j == a {
                    correct += 1;
                }
            }
            None => unrecognized[a] += 1,
        }
    }
    let total = samples.len();
    Ok(BenchReport {
        labels,
        total,
        correct,
        accuracy: correct as f64 / total as f64,
        confusion,
        unrecognized,
        runtime_core: median(&trial_seconds),
        runtime_best3: best_three_mean(&trial_seconds),
        trial_seconds,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Csv,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" | "txt" => Ok(ReportFormat::Text),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(Error::InvalidConfig(format!("unknown report format {other:?}"))),
        }
    }
}

pub fn render_report(report: &BenchReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Text => render_text(report),
        ReportFormat::Csv => render_csv(report),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn render_csv(r: &BenchReport) -> String {
    let mut out = String::from("actual");
    for l in &r.labels {
        out.push(',');
        out.push_str(&csv_field(l));
    }
    out.push('\n');
    for (i, l) in r.label_rows() {
        out.push_str(&csv_field(l));
        for c in &r.confusion[i] {
            let _ = write!(out, ",{c}");
        }
        out.push('\n');
    }
    let _ = writeln!(
        out,
        "summary,total={},correct={},accuracy={:.6},unrecognized={},runtime_core_s={:.6}",
        r.total,
        r.correct,
        r.accuracy,
        r.unrecognized_sum(),
        r.runtime_core
    );
    out
}

fn render_text(r: &BenchReport) -> String {
    let name_w = r.labels.iter().map(String::len).max().unwrap_or(0).max(6);
    let col_w = r
        .confusion
        .iter()
        .flatten()
        .map(|c| c.to_string().len())
        .max()
        .unwrap_or(1)
        .max(3);
    let mut out = String::new();
    let _ = write!(out, "{:name_w$}", "actual");
    for i in 0..r.labels.len() {
        let _ = write!(out, " {:>col_w$}", i + 1);
    }
    let _ = writeln!(out, " {:>col_w$}", "-");
    for (i, l) in r.label_rows() {
        let _ = write!(out, "{l:name_w$}");
        for c in &r.confusion[i] {
            let _ = write!(out, " {c:>col_w$}");
        }
        let _ = writeln!(out, " {:>col_w$}", r.unrecognized[i]);
    }
    out.push('\n');
    for (i, l) in r.label_rows() {
        let _ = writeln!(out, "{:>3} = {l}", i + 1);
    }
    let _ = writeln!(out, "  - = unrecognized (tap or no surviving pair)");
    out.push('\n');
    let _ = writeln!(out, "samples:      {}", r.total);
    let _ = writeln!(out, "correct:      {}", r.correct);
    let _ = writeln!(out, "accuracy:     {:.2}%", 100.0 * r.accuracy);
    let _ = writeln!(out, "unrecognized: {}", r.unrecognized_sum());
    let _ = writeln!(out, "runtime:      {:.4} s median, {:.4} s best-3 mean", r.runtime_core, r.runtime_best3);
    out
}
