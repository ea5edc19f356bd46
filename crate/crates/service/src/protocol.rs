//! Wire schema: one JSON object per WebSocket text frame, discriminated by
//! `kind`. See `PROTOCOL.md` for transcripts.

use serde::{Deserialize, Serialize};
use squiggle_core::{Dimensionality, MatchResult};

/// `[x, y, t_ms]`.
pub type WirePoint = [f64; 3];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum StreamMessage {
    StrokeStart {
        stroke: u64,
    },
    StrokePoints {
        stroke: u64,
        points: Vec<WirePoint>,
    },
    StrokeEnd {
        stroke: u64,
    },
    /// Reply to every points batch and to `stroke_end`. `match` is null when
    /// no template survived the gates.
    MatchUpdate {
        stroke: u64,
        seq: u64,
        #[serde(rename = "final")]
        is_final: bool,
        dimensionality: Dimensionality,
        #[serde(rename = "match")]
        matched: Option<MatchPayload>,
    },
    Tap {
        stroke: u64,
        seq: u64,
        #[serde(rename = "final")]
        is_final: bool,
    },
    Error {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        stroke: Option<u64>,
        message: String,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatchPayload {
    pub template: String,
    pub metric: f64,
    pub normalized_metric: f64,
    pub shadow: Vec<[f64; 2]>,
    pub triangle: [usize; 3],
    pub dimensionality: Dimensionality,
}

impl From<&MatchResult> for MatchPayload {
    fn from(m: &MatchResult) -> Self {
        MatchPayload {
            template: m.template_name.clone(),
            metric: m.metric,
            normalized_metric: m.normalized_metric(),
            shadow: m.shadow.iter().map(|p| [p.x, p.y]).collect(),
            triangle: m.triangle.as_array(),
            dimensionality: m.dimensionality,
        }
    }
}

impl StreamMessage {
    pub fn error(stroke: Option<u64>, message: impl Into<String>) -> Self {
        StreamMessage::Error {
            stroke,
            message: message.into(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            StreamMessage::StrokeStart { .. } => "stroke_start",
            StreamMessage::StrokePoints { .. } => "stroke_points",
            StreamMessage::StrokeEnd { .. } => "stroke_end",
            StreamMessage::MatchUpdate { .. } => "match_update",
            StreamMessage::Tap { .. } => "tap",
            StreamMessage::Error { .. } => "error",
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("messages always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}
