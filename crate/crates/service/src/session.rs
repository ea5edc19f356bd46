//! Per-connection stroke accumulation. Every points batch re-runs the whole
//! pipeline on the stroke so far.

use squiggle_core::recognizer::recognize;
use squiggle_core::{Config, Library, Point, RawPath, Recognition};

use crate::protocol::{MatchPayload, StreamMessage, WirePoint};

#[derive(Debug, Default)]
pub struct Session {
    stroke: Option<Stroke>,
}

#[derive(Debug)]
struct Stroke {
    id: u64,
    points: Vec<Point>,
    times: Vec<f64>,
    seq: u64,
}

impl Session {
    pub fn new() -> Self {
        Session::default()
    }

    /// Id of the stroke being drawn, if any.
    pub fn active_stroke(&self) -> Option<u64> {
        self.stroke.as_ref().map(|s| s.id)
    }

    /// Applies one client message and returns the reply, if the message
    /// calls for one. A `stroke_start` replaces any unfinished stroke.
    pub fn handle(&mut self, msg: StreamMessage, library: &Library, cfg: &Config) -> Option<StreamMessage> {
        match msg {
            StreamMessage::StrokeStart { stroke } => {
                self.stroke = Some(Stroke {
                    id: stroke,
                    points: Vec::new(),
                    times: Vec::new(),
                    seq: 0,
                });
                None
            }
            StreamMessage::StrokePoints { stroke, points } => Some(self.append(stroke, &points, library, cfg)),
            StreamMessage::StrokeEnd { stroke } => Some(self.finish(stroke, library, cfg)),
            other => Some(StreamMessage::error(
                None,
                format!("{} is a server message", other.kind()),
            )),
        }
    }

    /// Parses one text frame and applies it. Malformed frames get an error
    /// reply and leave the session unchanged.
    pub fn handle_text(&mut self, text: &str, library: &Library, cfg: &Config) -> Option<StreamMessage> {
        match StreamMessage::from_json(text) {
            Ok(msg) => self.handle(msg, library, cfg),
            Err(e) => Some(StreamMessage::error(self.active_stroke(), format!("bad message: {e}"))),
        }
    }

    fn current(&mut self, stroke: u64) -> Result<&mut Stroke, StreamMessage> {
        match self.stroke.as_ref().map(|s| s.id) {
            Some(id) if id == stroke => Ok(self.stroke.as_mut().expect("checked")),
            Some(id) => Err(StreamMessage::error(
                Some(stroke),
                format!("stroke {stroke} is not active (active stroke is {id})"),
            )),
            None => Err(StreamMessage::error(
                Some(stroke),
                format!("stroke {stroke} was not started"),
            )),
        }
    }

    fn append(&mut self, stroke: u64, batch: &[WirePoint], library: &Library, cfg: &Config) -> StreamMessage {
        let s = match self.current(stroke) {
            Ok(s) => s,
            Err(e) => return e,
        };
        if let Some(i) = batch.iter().position(|p| !p.iter().all(|v| v.is_finite())) {
            return StreamMessage::error(Some(stroke), format!("point {i} of batch is not finite"));
        }
        s.points.extend(batch.iter().map(|&[x, y, _]| Point::new(x, y)));
        s.times.extend(batch.iter().map(|p| p[2]));
        if s.points.is_empty() {
            return StreamMessage::error(Some(stroke), "stroke has no points yet");
        }
        let seq = s.seq;
        s.seq += 1;
        reply(stroke, seq, false, s.raw(), library, cfg)
    }

    fn finish(&mut self, stroke: u64, library: &Library, cfg: &Config) -> StreamMessage {
        let s = match self.current(stroke) {
            Ok(s) => s,
            Err(e) => return e,
        };
        let out = if s.points.is_empty() {
            StreamMessage::error(Some(stroke), "stroke ended without points")
        } else {
            reply(stroke, s.seq, true, s.raw(), library, cfg)
        };
        self.stroke = None;
        out
    }
}

impl Stroke {
    fn raw(&self) -> Result<RawPath, String> {
        RawPath::with_timestamps(self.points.clone(), self.times.clone()).map_err(|e| e.to_string())
    }
}

fn reply(
    stroke: u64,
    seq: u64,
    is_final: bool,
    raw: Result<RawPath, String>,
    library: &Library,
    cfg: &Config,
) -> StreamMessage {
    let recognition = raw.and_then(|raw| recognize(&raw, library, cfg).map_err(|e| e.to_string()));
    match recognition {
        Ok(r) => recognition_message(stroke, seq, is_final, &r),
        Err(e) => StreamMessage::error(Some(stroke), e),
    }
}

pub fn recognition_message(stroke: u64, seq: u64, is_final: bool, r: &Recognition) -> StreamMessage {
    match r {
        Recognition::Tap => StreamMessage::Tap { stroke, seq, is_final },
        other => StreamMessage::MatchUpdate {
            stroke,
            seq,
            is_final,
            dimensionality: other.dimensionality(),
            matched: other.matched().map(MatchPayload::from),
        },
    }
}

/// Recognizes a complete point list in one step; equal to the final reply of
/// a stream carrying the same points.
pub fn recognize_once(stroke: u64, seq: u64, points: &[WirePoint], library: &Library, cfg: &Config) -> StreamMessage {
    if points.is_empty() {
        return StreamMessage::error(Some(stroke), "stroke ended without points");
    }
    if let Some(i) = points.iter().position(|p| !p.iter().all(|v| v.is_finite())) {
        return StreamMessage::error(Some(stroke), format!("point {i} of batch is not finite"));
    }
    let pts = points.iter().map(|&[x, y, _]| Point::new(x, y)).collect();
    let times = points.iter().map(|p| p[2]).collect();
    let raw = RawPath::with_timestamps(pts, times).map_err(|e| e.to_string());
    reply(stroke, seq, true, raw, library, cfg)
}
