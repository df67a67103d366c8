//! WebSocket front end: one session per connection, JSON text frames.

use std::io;
use std::net::{TcpListener, TcpStream};
use std::sync::Arc;
use std::thread;

use eqnav_core::navigator::Mode;
use eqnav_core::{Dom, EquationBundle, SonifyParams};
use tungstenite::{accept, Message};

use crate::host::ServiceSession;
use crate::protocol::{Request, Response};

#[derive(Debug, Clone)]
pub struct ServeConfig {
    pub bundle: Arc<EquationBundle>,
    pub dom: Arc<Dom>,
    pub params: SonifyParams,
    pub mode: Mode,
}

/// Accepts connections forever, each served on its own thread.
pub fn serve(listener: TcpListener, config: ServeConfig) -> io::Result<()> {
    for stream in listener.incoming() {
        let stream = stream?;
        let config = config.clone();
        thread::spawn(move || {
            if let Err(e) = serve_connection(stream, &config) {
                eprintln!("eqnav: connection closed: {e}");
            }
        });
    }
    Ok(())
}

type WsResult = Result<(), Box<tungstenite::Error>>;

fn send(ws: &mut tungstenite::WebSocket<TcpStream>, responses: &[Response]) -> WsResult {
    for r in responses {
        ws.send(Message::text(r.to_json())).map_err(Box::new)?;
    }
    Ok(())
}

pub fn serve_connection(stream: TcpStream, config: &ServeConfig) -> WsResult {
    let mut ws = accept(stream).map_err(|e| match e {
        tungstenite::HandshakeError::Failure(e) => e,
        tungstenite::HandshakeError::Interrupted(_) => tungstenite::Error::ConnectionClosed,
    })
    .map_err(Box::new)?;
    let (mut session, mut initial) = ServiceSession::with_parts(config.bundle.clone(), config.dom.clone(), config.params);
    if config.mode == Mode::Graphical {
        initial.extend(session.handle(Request::Mode { mode: Mode::Graphical }));
    }
    send(&mut ws, &initial)?;
    loop {
        match ws.read() {
            Ok(Message::Text(text)) => {
                let responses = session.handle_json(&text);
                send(&mut ws, &responses)?;
            }
            Ok(Message::Binary(_)) => send(&mut ws, &[Response::status("Requests must be JSON text frames.")])?,
            Ok(Message::Close(_)) | Err(tungstenite::Error::ConnectionClosed) => return Ok(()),
            Ok(_) => {}
            Err(e) => return Err(Box::new(e)),
        }
    }
}
