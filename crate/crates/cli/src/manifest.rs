use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Record of one run: what was asked for and the SHA-256 of every artifact.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub config_path: Option<String>,
    pub seed: Option<u64>,
    pub output_dir: String,
    pub parameters: serde_json::Value,
    pub artifact_checksums: BTreeMap<String, String>,
}

pub const MANIFEST_FILE: &str = "manifest.json";
