//! Argument loading and the report/exit-code envelope shared by every command.

use std::fs;

use gaeta_core::{json, Error};
use serde_json::{json as j, Value};

/// Exit status: every check passed or the value was computed.
pub const OK: i32 = 0;
/// A checked condition fails.
pub const FAIL: i32 = 1;
/// Unsupported, Unknown, or malformed input.
pub const UNSUPPORTED: i32 = 2;

pub struct Outcome {
    pub report: Value,
    pub code: i32,
}

impl Outcome {
    pub fn new(report: Value, ok: bool) -> Self {
        Outcome {
            report,
            code: if ok { OK } else { FAIL },
        }
    }

    pub fn with_code(report: Value, code: i32) -> Self {
        Outcome { report, code }
    }
}

/// Reads a JSON argument given inline (starting with `{` or `[`) or as a file path.
pub fn load(arg: &str, name: &str) -> Result<Value, Error> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return json::parse_text(arg, name);
    }
    let text = fs::read_to_string(arg).map_err(|e| Error::Parse {
        path: name.to_string(),
        msg: format!("cannot read {arg}: {e}"),
    })?;
    json::parse_text(&text, name)
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse { .. } => "parse",
        Error::P2Unsupported | Error::InadmissibleSurface => "unsupported",
        Error::Incomplete(_) => "unknown",
        Error::Internal(_) => "internal",
        _ => "invalid",
    }
}

/// The report written for a command that could not run.
pub fn error_outcome(command: &str, e: &Error) -> Outcome {
    let mut err = serde_json::Map::new();
    err.insert("kind".into(), j!(error_kind(e)));
    err.insert("message".into(), j!(e.to_string()));
    if let Error::Parse { path, .. } = e {
        err.insert("path".into(), j!(path));
    }
    Outcome::with_code(j!({"command": command, "error": err}), UNSUPPORTED)
}

pub fn verdicts(items: &[(&str, bool)]) -> Value {
    Value::Array(items.iter().map(|(tag, ok)| j!({"tag": tag, "ok": ok})).collect())
}
