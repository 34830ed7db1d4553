//! Bundled reference data: the subdivisions of `Δ(4)` and `Δ(5)` with
//! their adjacency graphs, checksum-locked.
//!
//! A directory given explicitly, or through `SPINORTROP_FIXTURES`, replaces
//! the bundle; it must contain the same file names and, if it has a
//! `SHA256SUMS` file, match it.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::combinatorics::Subset;
use crate::delta_matroid::DeltaMatroid;
use crate::error::{Error, Result};
use crate::polyhedra::{Cell, Subdivision};

pub const APPENDIX_FILE: &str = "appendix_a.json";
pub const TABLE2_FILE: &str = "table2.json";
pub const CHECKSUM_FILE: &str = "SHA256SUMS";
pub const ENV_VAR: &str = "SPINORTROP_FIXTURES";

const BUNDLED_APPENDIX: &str = include_str!("../fixtures/appendix_a.json");
const BUNDLED_TABLE2: &str = include_str!("../fixtures/table2.json");
const BUNDLED_SUMS: &str = include_str!("../fixtures/SHA256SUMS");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Erratum {
    pub cell: usize,
    pub printed: Vec<Subset>,
    pub reason: String,
}

/// One subdivision of `Δ(5)`, cells in reference order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AppendixEntry {
    pub index: i32,
    pub dim: usize,
    pub rays: Vec<usize>,
    pub cells: Vec<Vec<Subset>>,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub errata: Vec<Erratum>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AppendixFixture {
    pub subdivisions: Vec<AppendixEntry>,
}

/// One subdivision of `Δ(4)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table2Entry {
    pub name: String,
    pub rays: Vec<usize>,
    pub cells: Vec<Vec<Subset>>,
    pub edges: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table2Fixture {
    pub subdivisions: Vec<Table2Entry>,
}

impl AppendixEntry {
    pub fn cell_list(&self) -> Vec<Cell> {
        self.cells.iter().map(|c| Cell::new(c.iter().copied())).collect()
    }

    /// Subdivision of `Δ(5)` with the cells in reference order.
    pub fn subdivision(&self) -> Result<Subdivision> {
        Ok(Subdivision::from_cells(DeltaMatroid::full(5)?, self.cell_list()))
    }

    /// Cells as printed, before errata.
    pub fn printed_cells(&self) -> Vec<Cell> {
        let mut cells = self.cell_list();
        for e in &self.errata {
            if e.cell < cells.len() {
                cells[e.cell] = Cell::new(e.printed.iter().copied());
            }
        }
        cells
    }
}

impl Table2Entry {
    pub fn cell_list(&self) -> Vec<Cell> {
        self.cells.iter().map(|c| Cell::new(c.iter().copied())).collect()
    }

    pub fn subdivision(&self) -> Result<Subdivision> {
        Ok(Subdivision::from_cells(DeltaMatroid::full(4)?, self.cell_list()))
    }
}

impl AppendixFixture {
    pub fn entry(&self, index: i32) -> Option<&AppendixEntry> {
        self.subdivisions.iter().find(|e| e.index == index)
    }
}

pub fn sha256_hex(data: &[u8]) -> String {
    Sha256::digest(data).iter().map(|b| format!("{b:02x}")).collect()
}

fn expected_sum(sums: &str, file: &str) -> Option<String> {
    sums.lines().find_map(|l| {
        let mut parts = l.split_whitespace();
        let digest = parts.next()?;
        let name = parts.next()?.trim_start_matches('*');
        (name == file).then(|| digest.to_string())
    })
}

fn verify(sums: &str, file: &str, text: &str) -> Result<()> {
    match expected_sum(sums, file) {
        Some(d) if d == sha256_hex(text.as_bytes()) => Ok(()),
        Some(_) => Err(Error::Fixture(format!("{file}: checksum mismatch"))),
        None => Err(Error::Fixture(format!("{file}: no checksum entry"))),
    }
}

/// Where fixtures come from: an explicit directory, the environment
/// variable, or the compiled-in bundle.
#[derive(Clone, Debug, Default)]
pub struct FixtureSource {
    dir: Option<PathBuf>,
}

impl FixtureSource {
    pub fn bundled() -> Self {
        FixtureSource { dir: None }
    }

    pub fn from_dir(dir: impl AsRef<Path>) -> Self {
        FixtureSource {
            dir: Some(dir.as_ref().to_path_buf()),
        }
    }

    /// `dir` if given, else `SPINORTROP_FIXTURES` if set, else the bundle.
    pub fn resolve(dir: Option<&Path>) -> Self {
        match dir {
            Some(d) => Self::from_dir(d),
            None => match std::env::var_os(ENV_VAR) {
                Some(d) if !d.is_empty() => Self::from_dir(PathBuf::from(d)),
                _ => Self::bundled(),
            },
        }
    }

    fn read(&self, file: &str, bundled: &'static str) -> Result<String> {
        match &self.dir {
            None => {
                verify(BUNDLED_SUMS, file, bundled)?;
                Ok(bundled.to_string())
            }
            Some(d) => {
                let text = std::fs::read_to_string(d.join(file))
                    .map_err(|e| Error::Fixture(format!("{}: {e}", d.join(file).display())))?;
                if let Ok(sums) = std::fs::read_to_string(d.join(CHECKSUM_FILE)) {
                    verify(&sums, file, &text)?;
                }
                Ok(text)
            }
        }
    }

    pub fn appendix(&self) -> Result<AppendixFixture> {
        let text = self.read(APPENDIX_FILE, BUNDLED_APPENDIX)?;
        serde_json::from_str(&text).map_err(|e| Error::Fixture(format!("{APPENDIX_FILE}: {e}")))
    }

    pub fn table2(&self) -> Result<Table2Fixture> {
        let text = self.read(TABLE2_FILE, BUNDLED_TABLE2)?;
        serde_json::from_str(&text).map_err(|e| Error::Fixture(format!("{TABLE2_FILE}: {e}")))
    }
}

/// Canonical text of a fixture value: pretty JSON with a trailing newline.
pub fn to_canonical_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("fixture values serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_checksums_hold() {
        let src = FixtureSource::bundled();
        assert_eq!(src.appendix().unwrap().subdivisions.len(), 19);
        assert_eq!(src.table2().unwrap().subdivisions.len(), 2);
    }

    #[test]
    fn bundled_files_are_canonical() {
        let a: AppendixFixture = serde_json::from_str(BUNDLED_APPENDIX).unwrap();
        assert_eq!(to_canonical_json(&a), BUNDLED_APPENDIX);
        let t: Table2Fixture = serde_json::from_str(BUNDLED_TABLE2).unwrap();
        assert_eq!(to_canonical_json(&t), BUNDLED_TABLE2);
    }

    #[test]
    fn tampering_is_detected() {
        let mut text = BUNDLED_TABLE2.to_string();
        text.push(' ');
        assert!(verify(BUNDLED_SUMS, TABLE2_FILE, &text).is_err());
        assert!(verify(BUNDLED_SUMS, "missing.json", BUNDLED_TABLE2).is_err());
    }
}
