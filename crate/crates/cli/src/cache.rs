//! Binary table cache keyed by system and table kind.
//!
//! Files are named `<name>-<crc of matrix and twist>-<kind>.klvt`. A file
//! that fails to load is reported and recomputed, never trusted.

use std::fs;
use std::path::{Path, PathBuf};

use klv_core::coxeter::CoxeterSystem;

use crate::tablefile::{TableFile, TableFileError, TableKind};

pub const CACHE_ENV: &str = "KLV_CACHE_DIR";

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    /// The cache named by `KLV_CACHE_DIR`, if set and nonempty.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_ENV)
            .filter(|d| !d.is_empty())
            .map(Cache::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, system: &CoxeterSystem, kind: TableKind) -> PathBuf {
        let key = serde_json::to_vec(&(system.matrix(), system.twist())).expect("key serializes");
        let name: String = system
            .name()
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
            .collect();
        self.dir.join(format!(
            "{name}-{:08x}-{}.klvt",
            crc32fast::hash(&key),
            kind.name()
        ))
    }

    /// `Ok(None)` when nothing is cached for this key.
    pub fn load(
        &self,
        system: &CoxeterSystem,
        kind: TableKind,
    ) -> Result<Option<TableFile>, TableFileError> {
        let path = self.path(system, kind);
        match fs::read(&path) {
            Ok(bytes) => TableFile::from_binary(&bytes).map(Some),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e.into()),
        }
    }

    /// Writes through a temporary file so a partial write is never visible.
    pub fn store(&self, system: &CoxeterSystem, file: &TableFile) -> Result<(), TableFileError> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path(system, file.header.kind);
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, file.to_binary())?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }
}
