//! Reading and writing artifact files.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context as _, Result};
use sha2::{Digest, Sha256};
use weakhopf::io::{Artifact, Document};

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// A parsed artifact with the hash of its bytes.
pub struct Loaded {
    pub path: PathBuf,
    pub sha256: String,
    pub artifact: Artifact,
}

impl Loaded {
    pub fn document(&self) -> &Document {
        &self.artifact.document
    }

    /// Path as given, for report inputs.
    pub fn name(&self) -> String {
        self.path.display().to_string()
    }
}

pub fn load(path: &Path) -> Result<Loaded> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| crate::usage(format!("{} is not UTF-8", path.display())))?;
    let artifact = Artifact::from_json(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(Loaded {
        path: path.to_path_buf(),
        sha256: sha256_hex(&bytes),
        artifact,
    })
}

/// Resolves a path stored inside an artifact relative to that artifact.
pub fn relative_to(base: &Path, file: &str) -> PathBuf {
    let p = Path::new(file);
    if p.is_absolute() {
        return p.to_path_buf();
    }
    base.parent().map(|d| d.join(p)).unwrap_or_else(|| p.to_path_buf())
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, text: &str) -> Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).with_context(|| format!("creating a temporary file in {}", dir.display()))?;
    tmp.write_all(text.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

/// Writes to `path`, or stdout when absent.
pub fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => write_atomic(p, text),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}
