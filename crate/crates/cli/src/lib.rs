//! Support library for the `memvqe` binary: the Hamiltonian file format,
//! metrics serialization, and output-path resolution.

pub mod format;
pub mod metrics;

use std::path::{Path, PathBuf};

/// Environment variable naming the default directory for output files.
pub const OUTPUT_DIR_VAR: &str = "MEMVQE_OUTPUT_DIR";

/// Prefixes a relative output path with [`OUTPUT_DIR_VAR`] when that
/// variable is set and non-empty. Input paths are never rewritten.
pub fn resolve_output(path: &Path) -> PathBuf {
    if path.is_absolute() {
        return path.to_path_buf();
    }
    match std::env::var(OUTPUT_DIR_VAR) {
        Ok(dir) if !dir.is_empty() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}
