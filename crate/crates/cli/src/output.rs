use std::fs;
use std::path::{Path, PathBuf};

use isentropes_core::export::to_json;
use serde::Serialize;

use crate::error::CliError;

/// Output directory that remembers what was written, in order.
pub struct Output {
    dir: PathBuf,
    pub artifacts: Vec<String>,
}

impl Output {
    pub fn create(dir: &Path) -> Result<Output, CliError> {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        Ok(Output { dir: dir.to_path_buf(), artifacts: Vec::new() })
    }

    pub fn bytes(&mut self, name: &str, data: &[u8]) -> Result<(), CliError> {
        let path = self.dir.join(name);
        fs::write(&path, data).map_err(|e| CliError::io(&path, e))?;
        self.artifacts.push(name.to_string());
        Ok(())
    }

    pub fn text(&mut self, name: &str, data: &str) -> Result<(), CliError> {
        self.bytes(name, data.as_bytes())
    }

    pub fn json<T: Serialize + ?Sized>(&mut self, name: &str, value: &T) -> Result<(), CliError> {
        let s = to_json(value)?;
        self.text(name, &s)
    }
}
