//! Record of one CLI run: inputs, outputs written, and OEIS cache keys used.

use serde::{Deserialize, Serialize};
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub path: String,
    pub bytes: u64,
    /// FNV-1a 64 of the file contents, hex.
    pub fnv1a: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub args: Vec<String>,
    pub piece: Option<String>,
    pub q: Option<usize>,
    pub n_range: Option<(u32, u32)>,
    pub outputs: Vec<OutputRecord>,
    pub cache_keys: Vec<String>,
    pub started_unix: u64,
    pub finished_unix: u64,
    pub exit_code: i32,
}

pub fn now_unix() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs())
}

pub fn fnv1a(data: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in data {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

impl RunManifest {
    pub fn new(command: &str, args: Vec<String>) -> Self {
        RunManifest { command: command.into(), args, started_unix: now_unix(), ..Default::default() }
    }

    /// Writes `data` to `path` and records it.
    pub fn write_output(&mut self, path: &Path, data: &str) -> std::io::Result<()> {
        std::fs::write(path, data)?;
        self.outputs.push(OutputRecord {
            path: path.display().to_string(),
            bytes: data.len() as u64,
            fnv1a: format!("{:016x}", fnv1a(data.as_bytes())),
        });
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).unwrap()
    }
}
