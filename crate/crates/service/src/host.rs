//! One exploration session behind the message protocol.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use eqnav_core::navigator::{Mode, MoveResult, Session, SonifyRequest};
use eqnav_core::shell::Shell;
use eqnav_core::sonify::{sonify_column, sonify_region, sonify_segment};
use eqnav_core::{build_dom, load_bundle, AudioClip, BundleError, Dom, EquationBundle, Primary, SonifyParams};

use crate::protocol::{PointerPhase, Request, Response};

/// Writes every emitted clip as `0001.wav`, `0002.wav`, ...
#[derive(Debug, Clone)]
struct AudioDump {
    dir: PathBuf,
    next: usize,
}

#[derive(Debug, Clone)]
pub struct ServiceSession {
    shell: Shell,
    params: SonifyParams,
    dump: Option<AudioDump>,
}

/// Parses the bundle and builds its graph once, for sharing between sessions.
pub fn prepare(path: impl AsRef<Path>) -> Result<(Arc<EquationBundle>, Arc<Dom>), BundleError> {
    let bundle = load_bundle(path)?;
    let dom = build_dom(&bundle);
    Ok((Arc::new(bundle), Arc::new(dom)))
}

fn arrow(key: &str) -> Option<Primary> {
    match key {
        "ArrowLeft" => Some(Primary::Left),
        "ArrowUp" => Some(Primary::Up),
        "ArrowRight" => Some(Primary::Right),
        "ArrowDown" => Some(Primary::Down),
        _ => None,
    }
}

impl ServiceSession {
    /// Opens a session in text mode. The returned responses are the
    /// automatic description of the initial focus.
    pub fn open(path: impl AsRef<Path>) -> Result<(Self, Vec<Response>), BundleError> {
        let (bundle, dom) = prepare(path)?;
        Ok(Self::with_parts(bundle, dom, SonifyParams::default()))
    }

    pub fn with_parts(bundle: Arc<EquationBundle>, dom: Arc<Dom>, params: SonifyParams) -> (Self, Vec<Response>) {
        let mut s = ServiceSession { shell: Shell::new(Session::with_dom(bundle, dom)), params, dump: None };
        let block = s.shell.start();
        let mut out = vec![Response::TextBlock { block }];
        out.push(s.focus_response());
        s.drain_queues(&mut out);
        (s, out)
    }

    /// From now on, also write each clip to `dir` as a numbered WAV file.
    pub fn dump_audio_to(&mut self, dir: impl Into<PathBuf>) {
        self.dump = Some(AudioDump { dir: dir.into(), next: 1 });
    }

    pub fn shell(&self) -> &Shell {
        &self.shell
    }

    pub fn session(&self) -> &Session {
        self.shell.session()
    }

    fn focus_response(&self) -> Response {
        let s = self.shell.session();
        let focus = s.focus();
        Response::FocusChanged {
            element: focus,
            text: s.text_of(focus).to_string(),
            bbox: s.bundle().element(focus).expect("focus is an element").bbox.into(),
        }
    }

    fn render(&self, req: &SonifyRequest) -> Result<AudioClip, String> {
        let bundle = self.shell.session().bundle();
        match *req {
            SonifyRequest::Region(region) => sonify_region(bundle, &region, &self.params),
            SonifyRequest::Column { x, emphasis_row } => sonify_column(bundle, x, emphasis_row, &self.params),
            SonifyRequest::Segment { p1, p2 } => sonify_segment(bundle, p1, p2, &self.params),
        }
        .map_err(|e| e.to_string())
    }

    /// Turns queued sonifications into audio responses, in queue order.
    fn drain_queues(&mut self, out: &mut Vec<Response>) {
        let session = self.shell.session_mut();
        session.take_announcements();
        let requests = session.take_sonifications();
        for req in requests {
            match self.render(&req) {
                Ok(clip) => {
                    if let Some(dump) = &mut self.dump {
                        let path = dump.dir.join(format!("{:04}.wav", dump.next));
                        dump.next += 1;
                        if let Err(e) = clip.write_wav(&path) {
                            out.push(Response::status(format!("Could not write {}: {e}", path.display())));
                        }
                    }
                    out.push(Response::audio(&clip));
                }
                Err(e) => out.push(Response::status(format!("Could not sonify: {e}"))),
            }
        }
    }

    fn status_of(result: &MoveResult) -> Response {
        Response::status(result.announcements.join(", "))
    }

    /// Handles one request; the responses are in delivery order.
    pub fn handle(&mut self, request: Request) -> Vec<Response> {
        let before = self.shell.session().focus();
        let mut out = Vec::new();
        match request {
            Request::Command { text } => {
                let block = self.shell.execute_line(&text);
                out.push(Response::TextBlock { block });
            }
            Request::ActivateLink { link } => {
                let block = self.shell.activate_link(link).unwrap_or_else(|e| {
                    eqnav_core::shell::OutputBlock { spans: vec![eqnav_core::shell::Span::Text { text: e.to_string() }] }
                });
                out.push(Response::TextBlock { block });
            }
            Request::Key { key } => self.key(&key, &mut out),
            Request::Mode { mode } => {
                let session = self.shell.session_mut();
                if session.mode() == mode {
                    out.push(Response::status(format!("Already in {} mode.", mode_name(mode))));
                } else {
                    let result = session.switch_mode(mode);
                    out.push(Self::status_of(&result));
                }
            }
            Request::Pointer { phase, points } => self.pointer(phase, &points, &mut out),
        }
        if self.shell.session().focus() != before {
            out.insert(0, self.focus_response());
        }
        self.drain_queues(&mut out);
        out
    }

    fn key(&mut self, key: &str, out: &mut Vec<Response>) {
        let session = self.shell.session_mut();
        if let Some(dir) = arrow(key) {
            match session.cursor_move(dir) {
                Ok(result) => out.push(Self::status_of(&result)),
                Err(_) => out.push(Response::status("Arrow keys work in graphical mode; press m to switch.")),
            }
            return;
        }
        match key {
            "m" | "M" => {
                let target = match session.mode() {
                    Mode::Text => Mode::Graphical,
                    Mode::Graphical => Mode::Text,
                };
                let result = session.switch_mode(target);
                out.push(Self::status_of(&result));
            }
            " " => {
                let focus = session.focus();
                let text = session.text_of(focus).to_string();
                session
                    .sonify_request(eqnav_core::navigator::SonifyTarget::Focus)
                    .expect("the focus always has a region");
                out.push(Response::status(text));
            }
            other => out.push(Response::status(format!("The key {other:?} does nothing."))),
        }
    }

    fn pointer(&mut self, phase: PointerPhase, points: &[[u32; 2]], out: &mut Vec<Response>) {
        let session = self.shell.session_mut();
        if session.mode() != Mode::Graphical {
            out.push(Response::status("Touch exploration works in graphical mode."));
            return;
        }
        if phase == PointerPhase::End {
            return;
        }
        let result = match points {
            [[x, y]] => session.touch_column(*x, *y),
            [p1, p2] => session.touch_segment((p1[0], p1[1]), (p2[0], p2[1])),
            _ => {
                out.push(Response::status("A pointer request carries one or two points."));
                return;
            }
        };
        if let Err(e) = result {
            out.push(Response::status(format!("Pointer ignored: {e}.")));
        }
    }

    /// Handles one JSON-encoded request; malformed input yields a status.
    pub fn handle_json(&mut self, line: &str) -> Vec<Response> {
        match serde_json::from_str::<Request>(line) {
            Ok(req) => self.handle(req),
            Err(e) => vec![Response::status(format!("Malformed request: {e}"))],
        }
    }
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Text => "text",
        Mode::Graphical => "graphical",
    }
}
