use std::time::Instant;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    /// SHA-256 of each input file, in argument order.
    pub input_digest: Vec<String>,
    pub results: Value,
    pub version: &'static str,
    pub wall_time_ms: f64,
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl Report {
    pub fn new(command: Vec<String>, inputs: &[&[u8]], results: Value, started: Instant) -> Self {
        Report {
            command,
            input_digest: inputs.iter().map(|b| digest(b)).collect(),
            results,
            version: env!("CARGO_PKG_VERSION"),
            wall_time_ms: started.elapsed().as_secs_f64() * 1e3,
        }
    }

    pub fn to_json(&self) -> String {
        crate::description::to_json(self)
    }
}
