use std::time::Duration;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use semiring_lab::{BinRelation, Error, Partition, SemiringTable};

pub const SCHEMA_VERSION: u32 = 1;

/// Process exit codes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Exit {
    Ok = 0,
    Parse = 2,
    Precondition = 3,
    Budget = 4,
    Internal = 5,
}

impl Exit {
    pub fn for_error(e: &Error) -> Exit {
        match e {
            Error::Parse(_) | Error::Structure(_) | Error::Unknown(_) => Exit::Parse,
            Error::NotIdempotentSemiring(_) | Error::Precondition(_) => Exit::Precondition,
            Error::Resource(_) => Exit::Budget,
            Error::Consistency(_) => Exit::Internal,
        }
    }
}

#[derive(Serialize, Debug)]
pub struct Failure {
    pub kind: &'static str,
    pub message: String,
}

/// Machine-readable command output. `failures` is empty iff the exit code is 0.
#[derive(Serialize, Debug)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub input_digest: String,
    pub results: Value,
    pub failures: Vec<Failure>,
    /// Wall-clock seconds; omitted unless requested so reports stay byte-stable.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<f64>,
    #[serde(skip)]
    pub exit: Exit,
}

impl Report {
    pub fn new(command: String, input_digest: String) -> Report {
        Report {
            schema: SCHEMA_VERSION,
            command,
            input_digest,
            results: Value::Null,
            failures: Vec::new(),
            timing: None,
            exit: Exit::Ok,
        }
    }

    pub fn fail(&mut self, exit: Exit, kind: &'static str, message: impl Into<String>) {
        if self.exit == Exit::Ok || (exit as i32) > (self.exit as i32) {
            self.exit = exit;
        }
        self.failures.push(Failure { kind, message: message.into() });
    }

    pub fn fail_with(&mut self, e: &Error) {
        let exit = Exit::for_error(e);
        let kind = match exit {
            Exit::Parse => "parse",
            Exit::Precondition => "precondition",
            Exit::Budget => "budget",
            _ => "internal",
        };
        self.fail(exit, kind, e.to_string());
    }

    pub fn with_timing(&mut self, elapsed: Option<Duration>) {
        self.timing = elapsed.map(|d| d.as_secs_f64());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Partition as sorted lists of sorted element names.
pub fn partition_json(t: &SemiringTable, p: &Partition) -> Value {
    serde_json::to_value(p.named_blocks(t)).expect("blocks serialize")
}

/// Relation as a list of `[a, b]` name pairs in row-major order.
pub fn relation_json(t: &SemiringTable, r: &BinRelation) -> Value {
    let pairs: Vec<[String; 2]> = r.named_pairs(t).into_iter().map(|(a, b)| [a, b]).collect();
    serde_json::to_value(pairs).expect("pairs serialize")
}
