//! Newline-delimited JSON session protocol.
//!
//! Each request line is `{"id": ..., "op": ..., "args": {...}}` and gets
//! exactly one response line, in order:
//! `{"id": ..., "ok": true, "result": ...}` or
//! `{"id": ..., "ok": false, "error": {"code": ..., "message": ...}}`.
//!
//! A session holds at most one game. Ops: `validate`, `area`, `newGame`,
//! `applyMove`, `passMove`, `state`, `solveHint`.

use std::io::{BufRead, Write};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::board::BoardConfig;
use crate::game::{GameError, GameState, Move};
use crate::geom::{Cell, PieceLabel};
use crate::io::ascii::render_ascii;
use crate::io::document::{ConfigDocument, PlacementDocument};
use crate::pieces::PieceLibrary;
use crate::rules::{score_band, validate_fence, ScoreMode};
use crate::solver::local::best_single_move;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Request {
    #[serde(default)]
    pub id: Value,
    pub op: String,
    #[serde(default)]
    pub args: Value,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub code: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Response {
    pub id: Value,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorBody>,
}

pub mod codes {
    pub const BAD_REQUEST: &str = "bad-request";
    pub const ILLEGAL_MOVE: &str = "illegal-move";
    pub const NOT_YOUR_TURN: &str = "not-your-turn";
    pub const GAME_OVER: &str = "game-over";
    pub const INVALID_CONFIG: &str = "invalid-config";
}

struct Failure(&'static str, String);

impl Failure {
    fn bad(msg: impl Into<String>) -> Self {
        Failure(codes::BAD_REQUEST, msg.into())
    }
}

impl From<GameError> for Failure {
    fn from(e: GameError) -> Self {
        let code = match &e {
            GameError::NoPlayers | GameError::NoSuchPlayer(_) => codes::BAD_REQUEST,
            GameError::InvalidStart(_) => codes::INVALID_CONFIG,
            GameError::IllegalMove(_) | GameError::UnknownPiece(_) | GameError::Config(_) => {
                codes::ILLEGAL_MOVE
            }
            GameError::NotYourTurn { .. } => codes::NOT_YOUR_TURN,
            GameError::OutOfBudget(_) | GameError::GameOver => codes::GAME_OVER,
        };
        let message = match &e {
            GameError::IllegalMove(r) | GameError::InvalidStart(r) => format!(
                "{e}: {}",
                r.violations
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join("; ")
            ),
            _ => e.to_string(),
        };
        Failure(code, message)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigArgs {
    config: Value,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
struct NewGameArgs {
    players: usize,
    start: Value,
    #[serde(default)]
    mode: ScoreMode,
    #[serde(default)]
    starting_player: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MoveArgs {
    #[serde(default)]
    player: Option<usize>,
    piece: PieceLabel,
    #[serde(default)]
    rot: i64,
    #[serde(default)]
    flip: bool,
    anchor: Cell,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PassArgs {
    #[serde(default)]
    player: Option<usize>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct HintArgs {
    #[serde(default)]
    config: Option<Value>,
}

fn args<T: for<'de> Deserialize<'de>>(v: &Value) -> Result<T, Failure> {
    let v = if v.is_null() { json!({}) } else { v.clone() };
    serde_json::from_value(v).map_err(|e| Failure::bad(format!("bad arguments: {e}")))
}

pub fn move_json(mv: &Move) -> Value {
    match mv {
        Move::Pass => json!({"type": "pass"}),
        Move::Relocate {
            piece,
            transform,
            anchor,
        } => json!({
            "type": "relocate",
            "piece": piece,
            "rot": transform.rot.degrees(),
            "flip": transform.flip,
            "anchor": anchor,
        }),
    }
}

/// The JSON view of a game that clients render.
pub fn state_json(state: &GameState, best_area: Option<usize>) -> Value {
    let config = state.config();
    let history: Vec<Value> = state
        .history()
        .iter()
        .map(|h| json!({"player": h.player, "move": move_json(&h.mv), "area": h.area}))
        .collect();
    json!({
        "area": state.area(),
        "ascii": render_ascii(config),
        "band": score_band(state.area()),
        "bestArea": best_area,
        "budgets": state.moves_remaining(),
        "config": ConfigDocument::from(config),
        "currentPlayer": state.current_player(),
        "enclosedCells": crate::topology::topology(config).enclosed_cells,
        "history": history,
        "mode": state.score_mode(),
        "players": state.player_count(),
        "terminal": state.is_terminal(),
    })
}

/// One client's session: at most one game plus the best area seen so far.
pub struct Session {
    library: Arc<PieceLibrary>,
    game: Option<GameState>,
    best_area: Option<usize>,
}

impl Session {
    pub fn new(library: Arc<PieceLibrary>) -> Self {
        Self {
            library,
            game: None,
            best_area: None,
        }
    }

    pub fn game(&self) -> Option<&GameState> {
        self.game.as_ref()
    }

    pub fn best_area(&self) -> Option<usize> {
        self.best_area
    }

    /// Handles one request line and returns the response line, without the
    /// trailing newline.
    pub fn handle_line(&mut self, line: &str) -> String {
        let response = match serde_json::from_str::<Request>(line) {
            Ok(req) => self.handle(&req),
            Err(e) => {
                let id = serde_json::from_str::<Value>(line)
                    .ok()
                    .and_then(|v| v.get("id").cloned())
                    .unwrap_or(Value::Null);
                failure(id, Failure::bad(format!("malformed request: {e}")))
            }
        };
        serde_json::to_string(&response).expect("responses always serialize")
    }

    pub fn handle(&mut self, req: &Request) -> Response {
        match self.dispatch(req) {
            Ok(result) => Response {
                id: req.id.clone(),
                ok: true,
                result: Some(result),
                error: None,
            },
            Err(f) => failure(req.id.clone(), f),
        }
    }

    fn config(&self, v: &Value, strict: bool) -> Result<BoardConfig, Failure> {
        let doc = ConfigDocument::from_value(v.clone())
            .map_err(|e| Failure(codes::INVALID_CONFIG, e.to_string()))?;
        let built = if strict {
            doc.to_config(&self.library)
        } else {
            doc.to_config_lenient(&self.library)
        };
        built.map_err(|e| Failure(codes::INVALID_CONFIG, format!("{}: {e}", e.code())))
    }

    fn game_ref(&self) -> Result<&GameState, Failure> {
        self.game
            .as_ref()
            .ok_or_else(|| Failure::bad("no game in this session; send newGame first"))
    }

    fn record(&mut self, state: GameState) -> Value {
        self.best_area = Some(self.best_area.map_or(state.area(), |b| b.max(state.area())));
        let v = state_json(&state, self.best_area);
        self.game = Some(state);
        v
    }

    fn play(&mut self, player: Option<usize>, mv: Move) -> Result<Value, Failure> {
        let game = self.game_ref()?;
        let next = match player {
            Some(p) => game.apply_move_as(p, &mv)?,
            None => game.apply_move(&mv)?,
        };
        Ok(self.record(next))
    }

    fn dispatch(&mut self, req: &Request) -> Result<Value, Failure> {
        match req.op.as_str() {
            "validate" => {
                let a: ConfigArgs = args(&req.args)?;
                let config = self.config(&a.config, false)?;
                Ok(serde_json::to_value(validate_fence(&config)).expect("reports serialize"))
            }
            "area" => {
                let a: ConfigArgs = args(&req.args)?;
                let config = self.config(&a.config, false)?;
                let report = validate_fence(&config);
                Ok(json!({"area": report.area, "valid": report.valid}))
            }
            "newGame" => {
                let a: NewGameArgs = args(&req.args)?;
                let start = self.config(&a.start, true)?;
                let state =
                    GameState::with_starting_player(start, a.players, a.mode, a.starting_player)?;
                Ok(self.record(state))
            }
            "applyMove" => {
                let a: MoveArgs = args(&req.args)?;
                let doc = PlacementDocument {
                    anchor: a.anchor,
                    flip: a.flip,
                    piece: a.piece,
                    rot: a.rot,
                };
                let transform = doc.transform().ok_or_else(|| {
                    Failure::bad(format!("rotation {} is not a quarter turn", a.rot))
                })?;
                self.play(a.player, Move::relocate(doc.piece, transform, doc.anchor))
            }
            "passMove" => {
                let a: PassArgs = args(&req.args)?;
                self.play(a.player, Move::Pass)
            }
            "state" => {
                let game = self.game_ref()?;
                Ok(state_json(game, self.best_area))
            }
            "solveHint" => {
                let a: HintArgs = args(&req.args)?;
                let (config, mode) = match &a.config {
                    Some(v) => (self.config(v, true)?, ScoreMode::Standard),
                    None => {
                        let g = self.game_ref()?;
                        (g.config().clone(), g.score_mode())
                    }
                };
                let current = validate_fence(&config);
                if !current.valid {
                    return Err(Failure(
                        codes::INVALID_CONFIG,
                        "hints need a valid fence".to_string(),
                    ));
                }
                let hint = best_single_move(&config, mode)
                    .map_err(|e| Failure(codes::INVALID_CONFIG, e.to_string()))?;
                Ok(match hint {
                    Some((_, r)) => json!({
                        "area": r.area,
                        "currentArea": current.area,
                        "move": move_json(&Move::relocate(
                            r.placement.piece, r.placement.transform, r.placement.anchor)),
                    }),
                    None => {
                        json!({"area": current.area, "currentArea": current.area, "move": null})
                    }
                })
            }
            other => Err(Failure::bad(format!("unknown op {other:?}"))),
        }
    }
}

fn failure(id: Value, f: Failure) -> Response {
    Response {
        id,
        ok: false,
        result: None,
        error: Some(ErrorBody {
            code: f.0.to_string(),
            message: f.1,
        }),
    }
}

/// Serves one session over a line-oriented stream until end of input.
pub fn serve_session(
    library: Arc<PieceLibrary>,
    input: impl BufRead,
    mut output: impl Write,
) -> std::io::Result<()> {
    let mut session = Session::new(library);
    for line in input.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        writeln!(output, "{}", session.handle_line(&line))?;
        output.flush()?;
    }
    Ok(())
}
