//! On-disk cache of completed field reports.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use weakper_core::{FieldSpec, Mode, Potency};

/// Everything a cached report depends on. Job count is deliberately absent:
/// reports do not depend on it.
#[derive(Debug, Clone)]
pub struct CacheKey {
    pub kind: &'static str,
    pub field: FieldSpec,
    pub n: usize,
    pub mode: Mode,
    pub potency: Potency,
    pub brute_cap: u64,
    pub enum_cap: u64,
}

impl CacheKey {
    fn file_name(&self) -> String {
        let modulus: Vec<String> = self.field.modulus().iter().map(|c| c.to_string()).collect();
        let name = format!(
            "{}_p{}_l{}_m{}_n{}_{}_{}_b{}_e{}_{}.json",
            self.kind,
            self.field.p(),
            self.field.degree(),
            modulus.join("-"),
            self.n,
            self.mode.name(),
            self.potency.name(),
            self.brute_cap,
            self.enum_cap,
            weakper_core::VERSION,
        );
        name.chars()
            .map(|c| if c.is_ascii_alphanumeric() || "._-".contains(c) { c } else { '_' })
            .collect()
    }
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: &Path) -> Result<Cache> {
        fs::create_dir_all(dir).with_context(|| format!("creating cache directory {}", dir.display()))?;
        Ok(Cache { dir: dir.to_path_buf() })
    }

    pub fn path(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(key.file_name())
    }

    pub fn load(&self, key: &CacheKey) -> Option<String> {
        fs::read_to_string(self.path(key)).ok()
    }

    pub fn store(&self, key: &CacheKey, contents: &str) -> Result<()> {
        write_atomic(&self.path(key), contents)
    }
}

/// Write through a temporary file in the target directory, then rename.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating a temporary file in {}", dir.display()))?;
    tmp.write_all(contents.as_bytes())?;
    tmp.flush()?;
    tmp.persist(path)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}
