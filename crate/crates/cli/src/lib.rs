//! The `fence` command line tool.
//!
//! Exit codes: 0 success, 1 invalid fence, 2 usage error, 3 file error.

use std::ffi::OsString;
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::net::TcpListener;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::thread;
use std::time::Duration;

use clap::{Parser, Subcommand};
use fence_core::io::{parse_config, render_ascii, serialize_config, serve_session};
use fence_core::rules::score_band;
use fence_core::solver::{
    best_single_move, default_box, improve_local, search_branch_and_bound, solve_exhaustive,
    SolveOptions,
};
use fence_core::{
    validate_fence, BoardConfig, Cell, GameState, Move, PieceLibrary, Rotation, ScoreMode,
    Transform,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FILE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "fence",
    version,
    about = "Build, score and search polyomino fences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a configuration; prints the report as JSON.
    Validate { file: PathBuf },
    /// Print the enclosed area of a configuration.
    Area { file: PathBuf },
    /// Search for maximum-area fences.
    Solve {
        /// `tetromino`, `pentomino`, or labels such as `i,l,o`.
        #[arg(long)]
        pieces: String,
        /// Time budget in seconds.
        #[arg(long)]
        time: Option<f64>,
        /// Run to completion, ignoring the default time budget.
        #[arg(long)]
        exhaustive: bool,
        /// Bounding box as `WxH`.
        #[arg(long, value_parser = parse_box)]
        r#box: Option<(u32, u32)>,
        /// Directory for one JSON file per solution.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hill-climb a configuration by single-piece moves.
    Improve {
        file: PathBuf,
        #[arg(long, default_value_t = 100)]
        budget: usize,
    },
    /// Play the relocation game on the terminal.
    Play {
        #[arg(long)]
        players: usize,
        #[arg(long)]
        start: PathBuf,
        #[arg(long, default_value = "standard")]
        mode: ScoreMode,
    },
    /// Run the JSON session service.
    Serve {
        #[arg(long, conflicts_with = "stdio")]
        port: Option<u16>,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        /// Serve one session on standard input and output.
        #[arg(long)]
        stdio: bool,
    },
}

const DEFAULT_TIME: f64 = 60.0;

fn parse_box(s: &str) -> Result<(u32, u32), String> {
    let (w, h) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected WxH, got {s:?}"))?;
    let side = |v: &str| v.trim().parse::<u32>().map_err(|e| format!("{v:?}: {e}"));
    Ok((side(w)?, side(h)?))
}

struct Failure(i32, String);

type Outcome = Result<i32, Failure>;

fn file_error(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure(EXIT_FILE, format!("{}: {e}", path.display()))
}

fn library() -> Result<PieceLibrary, Failure> {
    PieceLibrary::from_env().map_err(|e| Failure(EXIT_FILE, format!("piece definitions: {e}")))
}

fn load(path: &Path, lib: &PieceLibrary) -> Result<BoardConfig, Failure> {
    let text = fs::read_to_string(path).map_err(|e| file_error(path, e))?;
    parse_config(&text, lib).map_err(|e| file_error(path, format!("{}: {e}", e.code())))
}

/// Runs the tool with `argv` (program name first). `input` feeds `play` and
/// `serve --stdio`.
pub fn run<I, T>(argv: I, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let result = match cli.command {
        Command::Validate { file } => validate(&file, out),
        Command::Area { file } => area(&file, out, err),
        Command::Solve {
            pieces,
            time,
            exhaustive,
            r#box,
            out: dir,
        } => solve(&pieces, time, exhaustive, r#box, dir.as_deref(), out, err),
        Command::Improve { file, budget } => improve(&file, budget, out, err),
        Command::Play {
            players,
            start,
            mode,
        } => play(players, &start, mode, input, out),
        Command::Serve { port, host, stdio } => serve(port, &host, stdio, input, out, err),
    };
    match result {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "fence: {msg}");
            code
        }
    }
}

fn io_failure(e: std::io::Error) -> Failure {
    Failure(EXIT_FILE, e.to_string())
}

fn validate(file: &Path, out: &mut dyn Write) -> Outcome {
    let lib = library()?;
    let text = fs::read_to_string(file).map_err(|e| file_error(file, e))?;
    let config = fence_core::io::ConfigDocument::from_json(&text)
        .and_then(|d| d.to_config_lenient(&lib))
        .map_err(|e| file_error(file, format!("{}: {e}", e.code())))?;
    let report = validate_fence(&config);
    let json = serde_json::to_string_pretty(&report).expect("reports serialize");
    writeln!(out, "{json}").map_err(io_failure)?;
    Ok(if report.valid { EXIT_OK } else { EXIT_INVALID })
}

fn area(file: &Path, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let config = load(file, &library()?)?;
    let report = validate_fence(&config);
    writeln!(out, "{}", report.area).map_err(io_failure)?;
    if report.valid {
        return Ok(EXIT_OK);
    }
    for v in &report.violations {
        writeln!(err, "fence: {v}").map_err(io_failure)?;
    }
    Ok(EXIT_INVALID)
}

fn solve(
    pieces: &str,
    time: Option<f64>,
    exhaustive: bool,
    bbox: Option<(u32, u32)>,
    dir: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let lib = library()?;
    let set = lib
        .piece_set(pieces)
        .map_err(|e| Failure(EXIT_USAGE, e.to_string()))?;
    let seconds = match (time, exhaustive) {
        (Some(t), _) if !(t > 0.0 && t.is_finite()) => {
            return Err(Failure(
                EXIT_USAGE,
                format!("--time must be positive, got {t}"),
            ))
        }
        (Some(t), _) => Some(t),
        (None, true) => None,
        (None, false) => Some(DEFAULT_TIME),
    };
    let found = match (bbox, seconds) {
        (None, Some(t)) if !exhaustive => search_branch_and_bound(&set, Duration::from_secs_f64(t)),
        _ => {
            let (w, h) = bbox.unwrap_or_else(|| default_box(&set));
            let mut opts = SolveOptions::new(w, h);
            opts.time_budget = seconds.map(Duration::from_secs_f64);
            solve_exhaustive(&set, &opts)
        }
    }
    .map_err(|e| Failure(EXIT_USAGE, e.to_string()))?;

    if let Some(dir) = dir {
        fs::create_dir_all(dir).map_err(|e| file_error(dir, e))?;
        for (i, s) in found.solutions.iter().enumerate() {
            let path = dir.join(format!("solution-{:03}.json", i + 1));
            fs::write(&path, serialize_config(s)).map_err(|e| file_error(&path, e))?;
        }
    }
    let json = serde_json::to_string_pretty(&found.summary()).expect("summaries serialize");
    writeln!(out, "{json}").map_err(io_failure)?;
    if !found.exhaustive {
        writeln!(
            err,
            "fence: time budget reached; results are the best found so far"
        )
        .map_err(io_failure)?;
    }
    Ok(EXIT_OK)
}

fn improve(file: &Path, budget: usize, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let config = load(file, &library()?)?;
    let result = improve_local(&config, budget).map_err(|e| {
        let kinds: Vec<&str> = e.0.violations.iter().map(|v| v.kind()).collect();
        Failure(
            EXIT_INVALID,
            format!("not a valid fence: {}", kinds.join(", ")),
        )
    })?;
    write!(out, "{}", serialize_config(&result.config)).map_err(io_failure)?;
    writeln!(
        err,
        "area {} -> {} in {} moves{}",
        validate_fence(&config).area,
        result.area,
        result.steps,
        if result.local_optimum {
            " (local optimum)"
        } else {
            ""
        }
    )
    .map_err(io_failure)?;
    Ok(EXIT_OK)
}

const PLAY_HELP: &str = "commands: move <piece> <rot> [flip] <x> <y> | pass | hint | show | quit";

fn parse_play_move(words: &[&str]) -> Result<Move, String> {
    let (piece, rest) = words.split_first().ok_or("move needs a piece")?;
    let (flip, rest) = match rest {
        [rot, "flip", x, y] => (true, [*rot, *x, *y]),
        [rot, x, y] => (false, [*rot, *x, *y]),
        _ => return Err("expected: move <piece> <rot> [flip] <x> <y>".into()),
    };
    let num = |s: &str| s.parse::<i64>().map_err(|_| format!("not a number: {s}"));
    let rot = Rotation::from_degrees(num(rest[0])?)
        .ok_or_else(|| format!("rotation {} is not a quarter turn", rest[0]))?;
    let anchor = Cell::new(num(rest[1])? as i32, num(rest[2])? as i32);
    Ok(Move::relocate(*piece, Transform::new(rot, flip), anchor))
}

fn show(state: &GameState, out: &mut dyn Write) -> std::io::Result<()> {
    write!(out, "{}", render_ascii(state.config()))?;
    writeln!(
        out,
        "area {}{} | budgets {:?} | {}",
        state.area(),
        score_band(state.area())
            .map(|b| format!(" ({b})"))
            .unwrap_or_default(),
        state.moves_remaining(),
        if state.is_terminal() {
            "game over".to_string()
        } else {
            format!("player {} to move", state.current_player())
        }
    )
}

fn play(
    players: usize,
    start: &Path,
    mode: ScoreMode,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
) -> Outcome {
    let config = load(start, &library()?)?;
    let mut state =
        GameState::new(config, players, mode).map_err(|e| Failure(EXIT_INVALID, e.to_string()))?;
    writeln!(out, "{PLAY_HELP}").map_err(io_failure)?;
    show(&state, out).map_err(io_failure)?;
    let mut line = String::new();
    while !state.is_terminal() {
        line.clear();
        if input.read_line(&mut line).map_err(io_failure)? == 0 {
            break;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        let mv = match words.as_slice() {
            [] => continue,
            ["quit"] | ["q"] => break,
            ["show"] => {
                show(&state, out).map_err(io_failure)?;
                continue;
            }
            ["hint"] => {
                match best_single_move(state.config(), mode) {
                    Ok(Some((_, r))) => writeln!(
                        out,
                        "hint: {} rot {}{} at {} {} -> area {}",
                        r.placement.piece,
                        r.placement.transform.rot.degrees(),
                        if r.placement.transform.flip {
                            " flip"
                        } else {
                            ""
                        },
                        r.placement.anchor.x,
                        r.placement.anchor.y,
                        r.area
                    ),
                    _ => writeln!(out, "hint: no single move improves the score"),
                }
                .map_err(io_failure)?;
                continue;
            }
            ["pass"] => Move::Pass,
            ["move", rest @ ..] => match parse_play_move(rest) {
                Ok(m) => m,
                Err(e) => {
                    writeln!(out, "error: {e}").map_err(io_failure)?;
                    continue;
                }
            },
            _ => {
                writeln!(out, "error: unknown command; {PLAY_HELP}").map_err(io_failure)?;
                continue;
            }
        };
        match state.apply_move(&mv) {
            Ok(next) => {
                state = next;
                show(&state, out).map_err(io_failure)?;
            }
            Err(e) => writeln!(out, "rejected: {e}").map_err(io_failure)?,
        }
    }
    let (valid, area) = state.outcome();
    writeln!(
        out,
        "final area {area}{}",
        if valid { "" } else { " (invalid)" }
    )
    .map_err(io_failure)?;
    Ok(EXIT_OK)
}

fn serve(
    port: Option<u16>,
    host: &str,
    stdio: bool,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let lib = Arc::new(library()?);
    if stdio {
        serve_session(lib, input, out).map_err(io_failure)?;
        return Ok(EXIT_OK);
    }
    let port = port.ok_or_else(|| Failure(EXIT_USAGE, "serve needs --port or --stdio".into()))?;
    let listener = TcpListener::bind((host, port))
        .map_err(|e| Failure(EXIT_FILE, format!("cannot listen on {host}:{port}: {e}")))?;
    let addr = listener.local_addr().map_err(io_failure)?;
    writeln!(err, "fence: listening on {addr}").map_err(io_failure)?;
    err.flush().map_err(io_failure)?;
    for stream in listener.incoming() {
        let Ok(stream) = stream else { continue };
        let lib = lib.clone();
        thread::spawn(move || {
            let Ok(reader) = stream.try_clone() else {
                return;
            };
            let _ = serve_session(lib, BufReader::new(reader), stream);
        });
    }
    Ok(EXIT_OK)
}
