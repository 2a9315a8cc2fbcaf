use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use lvcert::{Error, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::commands::Command;
use crate::output::Format;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Record of one run; `(command, flags, format, seed, version)` determines
/// `output_sha256`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub flags: Command,
    pub format: Format,
    pub seed: u64,
    pub version: String,
    /// Directory that relative input paths in `flags` refer to.
    pub cwd: PathBuf,
    pub started_unix_ms: u128,
    pub finished_unix_ms: u128,
    pub output: PathBuf,
    pub output_sha256: String,
}

pub fn now_ms() -> u128 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_millis()).unwrap_or(0)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// `out.json` -> `out.manifest.json`.
pub fn manifest_path(output: &Path) -> PathBuf {
    output.with_extension("manifest.json")
}

impl RunManifest {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let value = serde_json::to_value(self).expect("manifest serializes");
        let text = serde_json::to_string_pretty(&value).expect("json") + "\n";
        std::fs::write(path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }
}

/// Where two texts first part ways.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiffSummary {
    pub differing_lines: usize,
    pub first_line: usize,
    pub expected: Option<String>,
    pub found: Option<String>,
}

pub fn diff_summary(expected: &str, found: &str) -> Option<DiffSummary> {
    let a: Vec<&str> = expected.lines().collect();
    let b: Vec<&str> = found.lines().collect();
    let n = a.len().max(b.len());
    let differs = |i: usize| a.get(i) != b.get(i);
    let first = (0..n).find(|&i| differs(i))?;
    Some(DiffSummary {
        differing_lines: (0..n).filter(|&i| differs(i)).count(),
        first_line: first + 1,
        expected: a.get(first).map(|s| s.to_string()),
        found: b.get(first).map(|s| s.to_string()),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReplayReport {
    pub manifest: PathBuf,
    pub command: String,
    pub recorded_sha256: String,
    pub replayed_sha256: String,
    /// Digest of the output file as it is now; `None` when it is missing.
    pub on_disk_sha256: Option<String>,
    pub version_mismatch: bool,
    pub matches: bool,
    /// Replayed output against the file on disk.
    pub diff: Option<DiffSummary>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diffs() {
        assert_eq!(diff_summary("a\nb\n", "a\nb\n"), None);
        let d = diff_summary("a\nb\nc\n", "a\nx\n").unwrap();
        assert_eq!(d.first_line, 2);
        assert_eq!(d.differing_lines, 2);
        assert_eq!(d.found.as_deref(), Some("x"));
        assert_eq!(d.expected.as_deref(), Some("b"));
    }

    #[test]
    fn manifest_beside_output() {
        assert_eq!(manifest_path(Path::new("runs/out.json")), PathBuf::from("runs/out.manifest.json"));
        assert_eq!(manifest_path(Path::new("out")), PathBuf::from("out.manifest.json"));
    }
}
