//! Normal-form tables kept on disk between runs.
//!
//! One JSON file per (family, maxdeg, format version), named
//! `<family>.d<maxdeg>.v<version>.json` with every byte of the family name
//! outside `[A-Za-z0-9]` written as `_xx` in hex. Each degree lists its
//! rows as a pivot monomial and the replacement terms.

use std::cell::Cell;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use assoc_core::families::Family;
use assoc_core::quotient::{NormalFormTable, TableCache, TableProvider};
use assoc_core::series::parse_rational;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct StoredRow {
    pivot: String,
    /// `(coefficient, monomial)` pairs.
    tail: Vec<(String, String)>,
}

#[derive(Serialize, Deserialize)]
struct StoredTable {
    format_version: u32,
    family: String,
    maxdeg: u32,
    degrees: Vec<Vec<StoredRow>>,
}

pub fn file_name(family: &Family, maxdeg: u32) -> String {
    let mut name = String::new();
    for b in family.to_string().bytes() {
        if b.is_ascii_alphanumeric() {
            name.push(b as char);
        } else {
            name.push_str(&format!("_{b:02x}"));
        }
    }
    format!("{name}.d{maxdeg}.v{FORMAT_VERSION}.json")
}

fn encode(table: &NormalFormTable) -> StoredTable {
    let ctx = table.context();
    let degrees = (0..=table.maxdeg())
        .map(|d| {
            table
                .rows(d)
                .map(|(p, tail)| StoredRow {
                    pivot: ctx.format_monomial(p),
                    tail: tail.iter().map(|(m, c)| (c.to_string(), ctx.format_monomial(m))).collect(),
                })
                .collect()
        })
        .collect();
    StoredTable { format_version: FORMAT_VERSION, family: table.family().to_string(), maxdeg: table.maxdeg(), degrees }
}

fn decode(stored: StoredTable, family: &Family, maxdeg: u32) -> Result<NormalFormTable, String> {
    if stored.format_version != FORMAT_VERSION || stored.family != family.to_string() || stored.maxdeg != maxdeg {
        return Err(format!(
            "holds {} at maxdeg {} (format {}), expected {family} at maxdeg {maxdeg} (format {FORMAT_VERSION})",
            stored.family, stored.maxdeg, stored.format_version
        ));
    }
    let ctx = family.context(maxdeg).map_err(|e| e.to_string())?;
    let mut rows = Vec::new();
    for degree in stored.degrees {
        let mut out = Vec::new();
        for row in degree {
            let pivot = ctx.parse_monomial(&row.pivot).map_err(|e| e.to_string())?;
            let tail = row
                .tail
                .iter()
                .map(|(c, m)| Ok((ctx.parse_monomial(m)?, parse_rational(c)?)))
                .collect::<assoc_core::Result<Vec<_>>>()
                .map_err(|e| e.to_string())?;
            out.push((pivot, tail));
        }
        rows.push(out);
    }
    NormalFormTable::from_rows(family, maxdeg, rows).map_err(|e| e.to_string())
}

/// In-memory cache backed by an optional directory.
pub struct DiskTables {
    memory: TableCache,
    dir: Option<PathBuf>,
    /// Tables read from disk and built in this run.
    loaded: Cell<usize>,
    built: Cell<usize>,
}

impl DiskTables {
    pub fn new(cap: u128, dir: Option<PathBuf>) -> Self {
        DiskTables { memory: TableCache::with_cap(cap), dir, loaded: Cell::new(0), built: Cell::new(0) }
    }

    #[cfg(test)]
    pub fn loaded(&self) -> usize {
        self.loaded.get()
    }

    #[cfg(test)]
    pub fn built(&self) -> usize {
        self.built.get()
    }

    fn load(&self, path: &Path, family: &Family, maxdeg: u32) -> CliResult<Option<NormalFormTable>> {
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(CliError::io(path, e)),
        };
        let cache_err = |message: String| CliError::Cache { path: path.to_path_buf(), message };
        let stored: StoredTable = serde_json::from_str(&text).map_err(|e| cache_err(e.to_string()))?;
        decode(stored, family, maxdeg).map(Some).map_err(cache_err)
    }

    fn store(&self, dir: &Path, table: &NormalFormTable) -> CliResult<()> {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        let path = dir.join(file_name(table.family(), table.maxdeg()));
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        let json = serde_json::to_string(&encode(table)).expect("table serializes");
        fs::write(&tmp, json).map_err(|e| CliError::io(&tmp, e))?;
        fs::rename(&tmp, &path).map_err(|e| CliError::io(&path, e))
    }

    /// Like [`TableProvider::table`] but keeps the CLI error.
    pub fn get(&self, family: &Family, maxdeg: u32) -> CliResult<Arc<NormalFormTable>> {
        if let Some(t) = self.memory.cached(family, maxdeg) {
            return Ok(t);
        }
        let Some(dir) = &self.dir else {
            return Ok(self.memory.table(family, maxdeg)?);
        };
        let path = dir.join(file_name(family, maxdeg));
        if let Some(table) = self.load(&path, family, maxdeg)? {
            self.loaded.set(self.loaded.get() + 1);
            let table = Arc::new(table);
            self.memory.insert(table.clone());
            return Ok(table);
        }
        let table = self.memory.table(family, maxdeg)?;
        self.built.set(self.built.get() + 1);
        // a table of higher degree may have come from memory
        if table.maxdeg() == maxdeg {
            self.store(dir, &table)?;
        }
        Ok(table)
    }
}

impl TableProvider for DiskTables {
    fn table(&self, family: &Family, maxdeg: u32) -> assoc_core::Result<Arc<NormalFormTable>> {
        self.get(family, maxdeg).map_err(|e| match e {
            CliError::Engine(e) => e,
            other => assoc_core::Error::Parse(other.to_string()),
        })
    }
}
