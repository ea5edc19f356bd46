//! Local recognition service: a WebSocket stroke stream that replies with the
//! current best match after every batch, and REST endpoints to edit the
//! template library.

pub mod protocol;
pub mod server;
pub mod session;
pub mod state;

pub use protocol::{MatchPayload, StreamMessage, WirePoint};
pub use server::{router, serve};
pub use session::{recognize_once, Session};
pub use state::{AppState, TemplateSummary};
