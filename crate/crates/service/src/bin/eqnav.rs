use std::io::{self, BufReader};
use std::net::TcpListener;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use eqnav_core::navigator::Mode;
use eqnav_core::SonifyParams;
use eqnav_service::host::{prepare, ServiceSession};
use eqnav_service::ws::{serve, ServeConfig};
use eqnav_service::{stdio, Request};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Text,
    Graphical,
}

/// Explore a typeset equation by text commands and sound.
#[derive(Debug, Parser)]
#[command(name = "eqnav", version)]
struct Args {
    /// Equation bundle (JSON).
    #[arg(long)]
    bundle: PathBuf,
    /// Serve the session protocol over WebSocket on this port instead of stdio.
    #[arg(long, value_name = "PORT")]
    serve: Option<u16>,
    /// Mode at session start.
    #[arg(long, value_enum, default_value = "text")]
    mode: ModeArg,
    /// Write every emitted clip as a numbered WAV file in this directory.
    #[arg(long, value_name = "DIR")]
    dump_audio: Option<PathBuf>,
    /// Print the element graph and exit.
    #[arg(long)]
    dump_dom: bool,
    /// Write the opening responses as JSON (stdio only).
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let (bundle, dom) = match prepare(&args.bundle) {
        Ok(parts) => parts,
        Err(e) => {
            eprintln!("eqnav: {e}");
            return ExitCode::from(2);
        }
    };
    if args.dump_dom {
        print!("{}", dom.adjacency_listing(&bundle));
        return ExitCode::SUCCESS;
    }
    let mode = match args.mode {
        ModeArg::Text => Mode::Text,
        ModeArg::Graphical => Mode::Graphical,
    };

    if let Some(port) = args.serve {
        let listener = match TcpListener::bind(("127.0.0.1", port)) {
            Ok(l) => l,
            Err(e) => {
                eprintln!("eqnav: cannot listen on port {port}: {e}");
                return ExitCode::FAILURE;
            }
        };
        eprintln!("eqnav: serving {} on ws://127.0.0.1:{port}", args.bundle.display());
        let config = ServeConfig { bundle, dom, params: SonifyParams::default(), mode };
        return match serve(listener, config) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("eqnav: {e}");
                ExitCode::FAILURE
            }
        };
    }

    let (mut session, mut initial) = ServiceSession::with_parts(bundle, dom, SonifyParams::default());
    if let Some(dir) = &args.dump_audio {
        if let Err(e) = std::fs::create_dir_all(dir) {
            eprintln!("eqnav: {}: {e}", dir.display());
            return ExitCode::FAILURE;
        }
        session.dump_audio_to(dir);
    }
    if mode == Mode::Graphical {
        initial.extend(session.handle(Request::Mode { mode }));
    }
    let stdin = io::stdin();
    match stdio::run(&mut session, &initial, args.json, BufReader::new(stdin.lock()), io::stdout().lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("eqnav: {e}");
            ExitCode::FAILURE
        }
    }
}
