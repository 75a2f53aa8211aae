use anyhow::{Context, Result};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

/// Problem with the files or arguments supplied by the user.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct InputError(pub String);

pub fn input_err(msg: impl Into<String>) -> anyhow::Error {
    InputError(msg.into()).into()
}

/// 2 for bad input, 1 for anything else.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.downcast_ref::<InputError>().is_some() {
            return 2;
        }
        if let Some(e) = cause.downcast_ref::<vidalign::Error>() {
            return if e.is_input_error() { 2 } else { 1 };
        }
    }
    1
}

pub fn read_input(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| input_err(format!("cannot read {}: {e}", path.display())))
}

/// Parses a whole input file, tagging failures with its path.
pub fn parse_file<T>(path: &Path, parse: impl FnOnce(&[u8]) -> vidalign::Result<T>) -> Result<T> {
    let bytes = read_input(path)?;
    parse(&bytes).with_context(|| path.display().to_string())
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating a temporary file in {}", dir.display()))?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path)
        .with_context(|| format!("writing {}", path.display()))?;
    log::info!("wrote {}", path.display());
    Ok(())
}

/// Serializes into memory with `write`, then stores the bytes atomically.
pub fn emit(path: &Path, write: impl FnOnce(&mut Vec<u8>) -> vidalign::Result<()>) -> Result<()> {
    let mut buf = Vec::new();
    write(&mut buf).with_context(|| format!("encoding {}", path.display()))?;
    write_atomic(path, &buf)
}

/// Resolves `p` against the directory holding `base`.
pub fn relative_to(base: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        return p.to_path_buf();
    }
    base.parent().map_or_else(|| p.to_path_buf(), |d| d.join(p))
}

/// Video ids double as file names.
pub fn check_file_id(id: &str) -> Result<()> {
    let bad = id.is_empty()
        || id.starts_with('.')
        || id.chars().any(|c| c == '/' || c == '\\' || c.is_control());
    if bad {
        return Err(input_err(format!(
            "video id {id:?} cannot be used as a file name"
        )));
    }
    Ok(())
}
