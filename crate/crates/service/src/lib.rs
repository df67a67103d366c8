//! Hosts exploration sessions behind a small JSON protocol, served over
//! stdio or WebSocket.

pub mod host;
pub mod protocol;
pub mod stdio;
pub mod ws;

pub use host::ServiceSession;
pub use protocol::{PointerPhase, Request, Response};
