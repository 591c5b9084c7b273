//! Access to the bundled data files. Override the directory with the
//! `FLAGFORGE_DATA` environment variable.

use std::path::PathBuf;

use anyhow::{Context, Result};

pub fn data_dir() -> PathBuf {
    match std::env::var_os("FLAGFORGE_DATA") {
        Some(dir) => PathBuf::from(dir),
        None => PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data"),
    }
}

pub fn read_data_file(name: &str) -> Result<String> {
    let path = data_dir().join(name);
    std::fs::read_to_string(&path).with_context(|| format!("reading data file {}", path.display()))
}
