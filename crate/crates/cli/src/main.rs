use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use squiggle_core::bench::{render_report, run_benchmark, BenchOptions, ReportFormat};
use squiggle_core::recognizer::{analyze, recognize_analysis};
use squiggle_core::store::{load_gesture_dataset_excluding, load_library, read_gesture_file, save_library, write_atomic};
use squiggle_core::{Config, Dimensionality, Error, Library, Point, RawPath, Recognition};
use squiggle_service::AppState;

const EXIT_ERROR: u8 = 1;
const EXIT_TAP: u8 = 2;
const EXIT_NO_MATCH: u8 = 3;

#[derive(Parser)]
#[command(name = "squiggle", version, about = "Affine-invariant glyph recognizer")]
struct Cli {
    #[command(flatten)]
    tuning: Tuning,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Tuning {
    /// Milestone points per path (defaults to the library's).
    #[arg(long, global = true)]
    n: Option<usize>,
    #[arg(long, global = true, default_value_t = 3.0)]
    segment_length: f64,
    /// Input triangles to try.
    #[arg(long, global = true, default_value_t = 8)]
    m: usize,
    /// Slack on `m` for the pivot search.
    #[arg(long, global = true, default_value_t = 2)]
    allow: usize,
    #[arg(long, global = true, default_value_t = 0.004)]
    line_epsilon: f64,
    #[arg(long, global = true, value_enum, default_value_t = Switch::Off)]
    orientation: Switch,
    #[arg(long, global = true, default_value_t = 2.12)]
    similarity_threshold: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Subcommand)]
enum Command {
    /// Add a gesture to a library file, creating the file if needed.
    AddTemplate {
        #[arg(long)]
        library: PathBuf,
        name: String,
        /// Gesture as XML point log or JSON point list.
        gesture: PathBuf,
        /// Allow reflected matches.
        #[arg(long)]
        mirror: bool,
    },
    /// Recognize one gesture. Exit code 0 on a match, 2 for a tap, 3 when no
    /// template survives the gates.
    Recognize {
        #[arg(long)]
        library: PathBuf,
        gesture: PathBuf,
    },
    /// Run a gesture corpus against a library and write text and CSV reports.
    Bench {
        #[arg(long)]
        library: PathBuf,
        #[arg(long)]
        dataset: PathBuf,
        /// Report path prefix; writes `<out>.txt` and `<out>.csv`.
        #[arg(long, default_value = "bench")]
        out: PathBuf,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        /// Labels to skip, comma separated.
        #[arg(long, value_delimiter = ',')]
        exclude: Vec<String>,
        #[arg(long)]
        serial: bool,
    },
    /// Write an SVG with the input, its aligning triangle and the winning shadow.
    ExportShadow {
        #[arg(long)]
        library: PathBuf,
        gesture: PathBuf,
        out: PathBuf,
    },
    /// Serve the streaming recognition protocol on localhost.
    Serve {
        #[arg(long)]
        library: PathBuf,
        #[arg(long, default_value_t = 7878)]
        port: u16,
    },
}

impl Tuning {
    fn config(&self, library_n: Option<usize>) -> Config {
        Config {
            n: self.n.or(library_n).unwrap_or(squiggle_core::path::DEFAULT_MILESTONES),
            segment_length: self.segment_length,
            m: self.m,
            allow: self.allow,
            line_epsilon: self.line_epsilon,
            degenerate_epsilon: squiggle_core::ntm::DEGENERATE_EPSILON,
            similarity_threshold: self.similarity_threshold,
            orientation_enabled: self.orientation == Switch::On,
        }
    }

    fn load(&self, path: &Path) -> Result<(Library, Config), Error> {
        let lib = load_library(path, self.line_epsilon)?;
        let cfg = self.config(Some(lib.n()));
        lib.check_config(&cfg)?;
        Ok((lib, cfg))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Box<dyn std::error::Error>> {
    let t = &cli.tuning;
    match &cli.command {
        Command::AddTemplate {
            library,
            name,
            gesture,
            mirror,
        } => {
            let (mut lib, cfg) = if library.exists() {
                t.load(library)?
            } else {
                let cfg = t.config(None);
                (Library::new(cfg.n), cfg)
            };
            let raw = read_gesture_file(gesture)?;
            let dim = lib.add_template(name.as_str(), &raw, *mirror, &cfg)?.dimensionality();
            save_library(&lib, library)?;
            println!("added {name} ({dim}); {} templates", lib.len());
            Ok(0)
        }
        Command::Recognize { library, gesture } => {
            let (lib, cfg) = t.load(library)?;
            let raw = read_gesture_file(gesture)?;
            let r = recognize_raw(&raw, &lib, &cfg)?;
            println!("{}", describe(&r));
            Ok(exit_code(&r))
        }
        Command::Bench {
            library,
            dataset,
            out,
            trials,
            exclude,
            serial,
        } => {
            let (lib, cfg) = t.load(library)?;
            let skip: Vec<&str> = exclude.iter().map(String::as_str).collect();
            let ds = load_gesture_dataset_excluding(dataset, &skip)?;
            for w in &ds.warnings {
                eprintln!("warning: {w}");
            }
            let report = run_benchmark(
                &ds.samples,
                &lib,
                &cfg,
                BenchOptions {
                    trials: *trials,
                    parallel: !serial,
                },
            )?;
            for (ext, fmt) in [("txt", ReportFormat::Text), ("csv", ReportFormat::Csv)] {
                let path = with_extension(out, ext);
                write_atomic(&path, render_report(&report, fmt).as_bytes())?;
            }
            println!(
                "accuracy {:.2}% ({}/{}), {} unrecognized, core time {:.3} s",
                report.accuracy * 100.0,
                report.correct,
                report.total,
                report.unrecognized_sum(),
                report.runtime_core
            );
            Ok(0)
        }
        Command::ExportShadow { library, gesture, out } => {
            let (lib, cfg) = t.load(library)?;
            let raw = read_gesture_file(gesture)?;
            let analysis = analyze(&raw, &cfg)?;
            let r = recognize_analysis(&analysis, &lib, &cfg);
            let svg = shadow_svg(&raw, analysis.milestones.as_ref().map(|m| m.points()), &r);
            write_atomic(out, svg.as_bytes())?;
            println!("{}", describe(&r));
            Ok(exit_code(&r))
        }
        Command::Serve { library, port } => {
            tracing_subscriber::fmt().with_writer(std::io::stderr).init();
            let (lib, cfg) = t.load(library)?;
            let state = Arc::new(AppState::new(lib, cfg, Some(library.clone()))?);
            let rt = tokio::runtime::Runtime::new()?;
            rt.block_on(async move {
                let listener = tokio::net::TcpListener::bind(("127.0.0.1", *port)).await?;
                println!("listening on {}", listener.local_addr()?);
                squiggle_service::serve(listener, state).await
            })?;
            Ok(0)
        }
    }
}

fn recognize_raw(raw: &RawPath, lib: &Library, cfg: &Config) -> Result<Recognition, Error> {
    squiggle_core::recognizer::recognize(raw, lib, cfg)
}

fn with_extension(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

fn exit_code(r: &Recognition) -> u8 {
    match r {
        Recognition::Match(_) => 0,
        Recognition::Tap => EXIT_TAP,
        Recognition::NoMatch(_) => EXIT_NO_MATCH,
    }
}

fn describe(r: &Recognition) -> String {
    match r {
        Recognition::Tap => "tap".to_string(),
        Recognition::NoMatch(d) => format!("no match ({d})"),
        Recognition::Match(m) => format!(
            "{} metric={} normalized_metric={} triangle={},{},{} dimensionality={}",
            m.template_name,
            m.metric,
            m.normalized_metric(),
            m.triangle.a,
            m.triangle.b,
            m.triangle.c,
            m.dimensionality
        ),
    }
}

fn points_attr(pts: impl IntoIterator<Item = Point>) -> String {
    let mut s = String::new();
    for p in pts {
        if !s.is_empty() {
            s.push(' ');
        }
        let _ = write!(s, "{},{}", p.x, p.y);
    }
    s
}

/// Layers: `input` (raw stroke and milestones), `triangle` (2-D matches
/// only) and `shadow`. Coordinates are written unrounded.
fn shadow_svg(raw: &RawPath, milestones: Option<&[Point]>, r: &Recognition) -> String {
    let mut all: Vec<Point> = raw.points().to_vec();
    if let Some(m) = r.matched() {
        all.extend(&m.shadow);
    }
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in &all {
        x0 = x0.min(p.x);
        y0 = y0.min(p.y);
        x1 = x1.max(p.x);
        y1 = y1.max(p.y);
    }
    let pad = 10.0;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
        x0 - pad,
        y0 - pad,
        (x1 - x0) + 2.0 * pad,
        (y1 - y0) + 2.0 * pad
    );
    out.push_str("  <g id=\"input\" fill=\"none\" stroke=\"black\" stroke-width=\"2\">\n");
    let _ = writeln!(out, "    <polyline id=\"input-raw\" points=\"{}\"/>", points_attr(raw.points().iter().copied()));
    if let Some(ms) = milestones {
        let _ = writeln!(
            out,
            "    <polyline id=\"input-milestones\" stroke-dasharray=\"2 2\" points=\"{}\"/>",
            points_attr(ms.iter().copied())
        );
    }
    out.push_str("  </g>\n");
    if let (Some(m), Some(ms)) = (r.matched(), milestones) {
        if m.dimensionality == Dimensionality::Planar {
            let t = m.triangle;
            let _ = writeln!(
                out,
                "  <g id=\"triangle\" fill=\"none\" stroke=\"blue\">\n    <polygon points=\"{}\"/>\n  </g>",
                points_attr([ms[t.a], ms[t.b], ms[t.c]])
            );
        }
        let _ = writeln!(
            out,
            "  <g id=\"shadow\" data-template=\"{}\" fill=\"none\" stroke=\"gray\" stroke-opacity=\"0.6\" stroke-width=\"6\">\n    <polyline points=\"{}\"/>\n  </g>",
            xml_attr(&m.template_name),
            points_attr(m.shadow.iter().copied())
        );
    }
    out.push_str("</svg>\n");
    out
}

fn xml_attr(s: &str) -> String {
    s.replace('&', "&amp;").replace('"', "&quot;").replace('<', "&lt;")
}
