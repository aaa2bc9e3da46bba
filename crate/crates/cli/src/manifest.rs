use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Debug, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

/// Provenance block embedded in every output. `duration_s` is the only field
/// that varies between identical runs and is kept last.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub subcommand: &'static str,
    pub version: &'static str,
    pub config: Value,
    pub inputs: Vec<InputDigest>,
    pub duration_s: f64,
}

pub struct ManifestBuilder {
    subcommand: &'static str,
    config: Value,
    inputs: Vec<InputDigest>,
    started: Instant,
}

impl ManifestBuilder {
    pub fn new(subcommand: &'static str) -> Self {
        Self {
            subcommand,
            config: Value::Null,
            inputs: Vec::new(),
            started: Instant::now(),
        }
    }

    pub fn config<T: Serialize>(&mut self, config: &T) {
        self.config = serde_json::to_value(config).expect("config serializes");
    }

    pub fn input(&mut self, path: &Path, bytes: &[u8]) {
        self.inputs.push(InputDigest {
            path: path.display().to_string(),
            sha256: hex::encode(Sha256::digest(bytes)),
        });
    }

    pub fn finish(self) -> RunManifest {
        RunManifest {
            subcommand: self.subcommand,
            version: env!("CARGO_PKG_VERSION"),
            config: self.config,
            inputs: self.inputs,
            duration_s: self.started.elapsed().as_secs_f64(),
        }
    }
}

/// `{"manifest": …, "result": …}`, pretty-printed.
pub fn wrap_json<T: Serialize>(manifest: &RunManifest, result: &T) -> String {
    let doc = serde_json::json!({ "manifest": manifest, "result": result });
    let mut text = serde_json::to_string_pretty(&doc).expect("output serializes");
    text.push('\n');
    text
}

/// The manifest as a `# manifest:` comment line ahead of CSV data.
pub fn wrap_csv(manifest: &RunManifest, csv: &str) -> String {
    let line = serde_json::to_string(manifest).expect("manifest serializes");
    format!("# manifest: {line}\n{csv}")
}
