use std::sync::Arc;

use axum::extract::ws::{Message, WebSocket, WebSocketUpgrade};
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::serve::ListenerExt;
use axum::routing::{delete, get, post, put};
use axum::{Json, Router};
use serde::Deserialize;
use squiggle_core::{Error, Point, RawPath};
use tokio::net::TcpListener;

use crate::protocol::{StreamMessage, WirePoint};
use crate::session::{recognize_once, Session};
use crate::state::AppState;

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/templates", get(list_templates).post(add_template))
        .route("/templates/{name}", delete(remove_template))
        .route("/templates/{name}/mirror", put(set_mirror))
        .route("/recognize", post(recognize))
        .route("/ws", get(stream))
        .with_state(state)
}

/// Serves until the listener fails.
pub async fn serve(listener: TcpListener, state: Arc<AppState>) -> std::io::Result<()> {
    if let Ok(addr) = listener.local_addr() {
        tracing::info!("listening on {addr}");
    }
    // replies are small and latency-bound
    let listener = listener.tap_io(|tcp| {
        if let Err(e) = tcp.set_nodelay(true) {
            tracing::warn!("failed to set TCP_NODELAY: {e}");
        }
    });
    axum::serve(listener, router(state)).await
}

struct ApiError(StatusCode, String);

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::DuplicateName(_) | Error::EmptyLibrary => StatusCode::CONFLICT,
            Error::UnknownTemplate(_) => StatusCode::NOT_FOUND,
            Error::PathTooShort { .. } | Error::ZeroLengthPath | Error::NonFinite { .. } | Error::EmptyPath => {
                StatusCode::UNPROCESSABLE_ENTITY
            }
            Error::Io { .. } => StatusCode::INTERNAL_SERVER_ERROR,
            _ => StatusCode::BAD_REQUEST,
        };
        ApiError(status, e.to_string())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.0, Json(serde_json::json!({ "error": self.1 }))).into_response()
    }
}

async fn list_templates(State(state): State<Arc<AppState>>) -> impl IntoResponse {
    Json(state.list())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NewTemplate {
    name: String,
    /// `[x, y]` or `[x, y, t_ms]`.
    points: Vec<Vec<f64>>,
    #[serde(default)]
    mirror_allowed: bool,
}

fn raw_from_lists(points: &[Vec<f64>]) -> Result<RawPath, ApiError> {
    let pts = points
        .iter()
        .enumerate()
        .map(|(i, p)| match p.as_slice() {
            [x, y] | [x, y, _] => Ok(Point::new(*x, *y)),
            _ => Err(ApiError(
                StatusCode::BAD_REQUEST,
                format!("point {i} must be [x, y] or [x, y, t]"),
            )),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RawPath::new(pts)?)
}

async fn add_template(
    State(state): State<Arc<AppState>>,
    Json(body): Json<NewTemplate>,
) -> Result<impl IntoResponse, ApiError> {
    if body.name.is_empty() {
        return Err(ApiError(StatusCode::BAD_REQUEST, "template name is empty".into()));
    }
    let raw = raw_from_lists(&body.points)?;
    let summary = state.add(&body.name, &raw, body.mirror_allowed)?;
    Ok((StatusCode::CREATED, Json(summary)))
}

async fn remove_template(State(state): State<Arc<AppState>>, Path(name): Path<String>) -> Result<StatusCode, ApiError> {
    state.remove(&name)?;
    Ok(StatusCode::NO_CONTENT)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MirrorFlag {
    allowed: bool,
}

async fn set_mirror(
    State(state): State<Arc<AppState>>,
    Path(name): Path<String>,
    Json(body): Json<MirrorFlag>,
) -> Result<impl IntoResponse, ApiError> {
    Ok(Json(state.set_mirror(&name, body.allowed)?))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OneShot {
    points: Vec<WirePoint>,
}

async fn recognize(State(state): State<Arc<AppState>>, Json(body): Json<OneShot>) -> Json<StreamMessage> {
    let lib = state.snapshot();
    Json(recognize_once(0, 0, &body.points, &lib, state.config()))
}

async fn stream(ws: WebSocketUpgrade, State(state): State<Arc<AppState>>) -> Response {
    ws.on_upgrade(move |socket| run_session(socket, state))
}

async fn run_session(mut socket: WebSocket, state: Arc<AppState>) {
    let mut session = Session::new();
    while let Some(frame) = socket.recv().await {
        let reply = match frame {
            Ok(Message::Text(text)) => {
                let lib = state.snapshot();
                session.handle_text(text.as_str(), &lib, state.config())
            }
            Ok(Message::Binary(_)) => Some(StreamMessage::error(None, "binary frames are not supported")),
            Ok(Message::Close(_)) => break,
            Ok(_) => None,
            Err(e) => {
                tracing::debug!("socket error: {e}");
                break;
            }
        };
        if let Some(r) = reply {
            if socket.send(Message::Text(r.to_json().into())).await.is_err() {
                break;
            }
        }
    }
}
