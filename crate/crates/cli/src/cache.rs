//! On-disk report cache.
//!
//! One JSON file per (command, parameters, engine version). Writes go to a
//! temporary file in the same directory and are renamed into place.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::report::ReportDocument;

pub const CACHE_DIR_ENV: &str = "GBF_CACHE_DIR";

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    /// `$GBF_CACHE_DIR`, else `$XDG_CACHE_HOME/gbf`, else `~/.cache/gbf`.
    pub fn from_env() -> Option<Self> {
        if let Some(d) = std::env::var_os(CACHE_DIR_ENV) {
            return Some(Cache::new(d));
        }
        if let Some(d) = std::env::var_os("XDG_CACHE_HOME") {
            return Some(Cache::new(Path::new(&d).join("gbf")));
        }
        std::env::var_os("HOME").map(|h| Cache::new(Path::new(&h).join(".cache").join("gbf")))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, command: &str, key: &str) -> PathBuf {
        let safe: String = key
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
            .collect();
        self.dir.join(format!("{command}-{safe}-v{}.json", env!("CARGO_PKG_VERSION")))
    }

    /// A missing or unreadable entry is a miss.
    pub fn load(&self, command: &str, key: &str) -> Option<ReportDocument> {
        let text = fs::read_to_string(self.path_for(command, key)).ok()?;
        serde_json::from_str(&text).ok()
    }

    pub fn store(&self, command: &str, key: &str, report: &ReportDocument) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        serde_json::to_writer(&mut tmp, report)?;
        tmp.flush()?;
        tmp.persist(self.path_for(command, key)).map_err(|e| e.error)?;
        Ok(())
    }
}
