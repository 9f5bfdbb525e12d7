use std::path::Path;

use clap::ValueEnum;
use clarforce::{parse_hexagonal_text, parse_polyomino, PlaneBipartiteGraph};
use sha2::{Digest, Sha256};

use crate::error::CliError;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// ASCII grid, `#` for a cell and `.` for empty.
    Poly,
    /// One axial `q r` pair per line.
    Hex,
}

impl Format {
    /// Hexagonal when any line holds a digit, polyomino otherwise.
    pub fn detect(text: &str) -> Format {
        if text.chars().any(|c| c.is_ascii_digit()) {
            Format::Hex
        } else {
            Format::Poly
        }
    }
}

pub struct Input {
    pub graph: PlaneBipartiteGraph,
    /// SHA-256 of the raw input bytes, hex encoded.
    pub fingerprint: String,
}

pub fn parse(text: &str, format: Option<Format>) -> Result<Input, CliError> {
    let graph = match format.unwrap_or_else(|| Format::detect(text)) {
        Format::Poly => parse_polyomino(text)?,
        Format::Hex => parse_hexagonal_text(text)?,
    };
    Ok(Input {
        graph,
        fingerprint: sha256_hex(text.as_bytes()),
    })
}

pub fn load(path: &Path, format: Option<Format>) -> Result<Input, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    parse(&text, format)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn detects_formats() {
        assert_eq!(Format::detect("##\n.#\n"), Format::Poly);
        assert_eq!(Format::detect("0 0\n1 0\n"), Format::Hex);
        assert_eq!(Format::detect("# naphthalene\n0 0\n1 0\n"), Format::Hex);
        assert_eq!(Format::detect("#x\n"), Format::Poly);
    }

    #[test]
    fn fingerprint_is_sha256() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }
}
