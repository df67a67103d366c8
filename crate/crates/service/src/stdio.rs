//! Line-oriented front end. Lines starting with `{` are JSON requests and
//! get JSON replies, one per line; any other line is text-mode input and
//! gets terminal-friendly prose, with links shown as `[n] label`.

use std::io::{self, BufRead, Write};

use crate::host::ServiceSession;
use crate::protocol::Response;

fn emit(out: &mut impl Write, responses: &[Response], json: bool) -> io::Result<()> {
    for r in responses {
        if json {
            writeln!(out, "{}", r.to_json())?;
        } else {
            out.write_all(r.render_human().as_bytes())?;
        }
    }
    out.flush()
}

/// Runs until end of input or a `quit` line. `initial` is written first,
/// as JSON when `json_initial` is set.
pub fn run(
    session: &mut ServiceSession,
    initial: &[Response],
    json_initial: bool,
    input: impl BufRead,
    mut output: impl Write,
) -> io::Result<()> {
    emit(&mut output, initial, json_initial)?;
    for line in input.lines() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.eq_ignore_ascii_case("quit") || trimmed.eq_ignore_ascii_case("exit") {
            break;
        }
        if trimmed.starts_with('{') {
            let responses = session.handle_json(trimmed);
            emit(&mut output, &responses, true)?;
        } else {
            let responses = session.handle(crate::protocol::Request::Command { text: trimmed.to_string() });
            emit(&mut output, &responses, false)?;
        }
    }
    Ok(())
}
