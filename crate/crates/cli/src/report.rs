use serde::{Deserialize, Serialize};

pub const EXIT_OK: u8 = 0;
pub const EXIT_OTHER: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_BAD_CUT: u8 = 3;
pub const EXIT_INVARIANCE: u8 = 4;
pub const EXIT_COUNTEREXAMPLE: u8 = 5;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputInfo {
    /// SHA-256 of the analysed graph (or corpus) in JSON edge-list form.
    pub digest: String,
    pub source: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graphs: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub command: String,
    pub input: InputInfo,
    pub findings: serde_json::Value,
    pub timing: Timing,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    pub exit_code: u8,
}

/// A finished command: the report plus the human summary printed without `--json`.
pub struct Outcome {
    pub report: Report,
    pub summary: Vec<String>,
}

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
        }
    }
}

impl From<tightcut::Error> for CliError {
    fn from(e: tightcut::Error) -> Self {
        use tightcut::Error::*;
        let code = match e {
            Parse(_) | UnknownGraph(_) | LoopRejected(_) | BadVertex { .. } | TooManyVertices { .. } => {
                EXIT_PARSE
            }
            BadShore(_) | EvenShore(_) | TrivialCut | NotTight => EXIT_BAD_CUT,
            _ => EXIT_OTHER,
        };
        CliError::new(code, e.to_string())
    }
}
