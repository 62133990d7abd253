//! File formats: Matrix Market, JSON documents, CSV tables and dense binary
//! states.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use maxqp_core::matrix::{
    parse_matrix_market, parse_matrix_market_general, write_matrix_market, CooMatrix, DenseMatrix,
    SparseSymMatrix,
};
use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};

pub fn read_matrix(path: &Path) -> Result<SparseSymMatrix> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_matrix_market(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn read_general_matrix(path: &Path) -> Result<CooMatrix> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_matrix_market_general(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn write_matrix(a: &SparseSymMatrix, path: &Path) -> Result<()> {
    write_text(path, &write_matrix_market(a))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_text(path, &text)
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn csv_writer(path: &Path) -> Result<csv::Writer<fs::File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    csv::Writer::from_path(path).with_context(|| format!("creating {}", path.display()))
}

/// Row-major little-endian `f64` bytes of a dense matrix.
pub fn dense_bytes(m: &DenseMatrix) -> Vec<u8> {
    m.as_slice().iter().flat_map(|v| v.to_le_bytes()).collect()
}

pub fn dense_from_bytes(n: usize, bytes: &[u8]) -> Result<DenseMatrix> {
    anyhow::ensure!(
        bytes.len() == 8 * n * n,
        "expected {} bytes for a {n}x{n} matrix, found {}",
        8 * n * n,
        bytes.len()
    );
    let data = bytes
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().expect("chunk of 8")))
        .collect();
    Ok(DenseMatrix::from_row_major(n, data)?)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// `dir/stem.suffix` next to `path`.
pub fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "out".into());
    path.with_file_name(format!("{stem}.{suffix}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sibling_paths() {
        assert_eq!(
            sibling(Path::new("a/b/result.json"), "manifest.json"),
            Path::new("a/b/result.manifest.json")
        );
        assert_eq!(sibling(Path::new("x.mtx"), "json"), Path::new("x.json"));
    }

    #[test]
    fn dense_round_trip() {
        let m = DenseMatrix::from_row_major(2, vec![0.1, -2.0, 3e-300, 4.0]).unwrap();
        let back = dense_from_bytes(2, &dense_bytes(&m)).unwrap();
        assert_eq!(m, back);
    }
}
