use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::{json, Value};

pub struct OutDir {
    dir: PathBuf,
}

impl OutDir {
    pub fn create(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir).with_context(|| format!("cannot create output directory {}", dir.display()))?;
        Ok(Self { dir: dir.to_path_buf() })
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.dir.join(name)
    }

    pub fn write(&self, name: &str, contents: &str) -> Result<PathBuf> {
        let path = self.path(name);
        fs::write(&path, contents).with_context(|| format!("cannot write {}", path.display()))?;
        eprintln!("wrote {}", path.display());
        Ok(path)
    }

    /// Writes `{version, command, config, result}` as pretty JSON.
    pub fn report(&self, name: &str, command: &str, config: &impl Serialize, result: Value) -> Result<PathBuf> {
        let doc = envelope(command, config, result)?;
        self.write(name, &(serde_json::to_string_pretty(&doc)? + "\n"))
    }
}

pub fn envelope(command: &str, config: &impl Serialize, result: Value) -> Result<Value> {
    Ok(json!({
        "version": zetalab::VERSION,
        "command": command,
        "config": serde_json::to_value(config)?,
        "result": result,
    }))
}
