//! Run manifests: enough metadata next to every output to re-execute
//! the run bit-identically on the same inputs.

use std::path::Path;

use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub inputs: Vec<ManifestInput>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile_hash: Option<String>,
    /// Effective settings after flag/config/default resolution.
    pub effective_config: serde_json::Value,
    pub artifact_version: String,
    pub timestamp: String,
}

#[derive(Debug, Serialize)]
pub struct ManifestInput {
    pub role: String,
    pub path: String,
}

impl RunManifest {
    pub fn new(command: &str, effective_config: serde_json::Value) -> Self {
        RunManifest {
            command: command.to_string(),
            inputs: Vec::new(),
            profile_hash: None,
            effective_config,
            artifact_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: chrono::Utc::now().to_rfc3339(),
        }
    }

    pub fn input(mut self, role: &str, path: &Path) -> Self {
        self.inputs.push(ManifestInput {
            role: role.to_string(),
            path: path.display().to_string(),
        });
        self
    }

    pub fn profile_hash(mut self, hash: String) -> Self {
        self.profile_hash = Some(hash);
        self
    }

    /// Write to `<output>.manifest.json`.
    pub fn write_next_to(&self, output: &Path) -> anyhow::Result<()> {
        let path = manifest_path(output);
        let json = serde_json::to_string_pretty(self)?;
        std::fs::write(&path, json + "\n")?;
        Ok(())
    }
}

pub fn manifest_path(output: &Path) -> std::path::PathBuf {
    let mut name = output.as_os_str().to_os_string();
    name.push(".manifest.json");
    std::path::PathBuf::from(name)
}
