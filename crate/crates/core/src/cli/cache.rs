use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::chevalley::{derive_commutator_table, export_tables, import_tables, CommutatorTable, Representation};
use crate::error::Result;

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn digest(text: &str) -> String {
    hex(&Sha256::digest(text.as_bytes()))
}

/// Derived tables on disk, one file per `(system, convention, representation)`.
///
/// A file is the `chevtab v1` export followed by a `sha256` line over it; files
/// that fail the checksum or do not import are recomputed and rewritten.
#[derive(Debug, Clone, Default)]
pub struct TableCache {
    dir: Option<PathBuf>,
}

impl TableCache {
    pub fn new(dir: Option<&Path>) -> Self {
        let dir = dir.filter(|d| fs::create_dir_all(d).is_ok()).map(Path::to_path_buf);
        TableCache { dir }
    }

    pub fn disabled() -> Self {
        TableCache { dir: None }
    }

    /// Content-addressed file name for the tables of `rep`.
    pub fn path_for(&self, rep: &Representation) -> Option<PathBuf> {
        let key = format!("chevtab v1 {} {} {}", rep.rs.id, rep.table.convention, rep.kind.short_name());
        self.dir.as_ref().map(|d| d.join(format!("{}.chevtab", &digest(&key)[..16])))
    }

    fn load(&self, rep: &Representation) -> Option<CommutatorTable> {
        let text = fs::read_to_string(self.path_for(rep)?).ok()?;
        let (body, sum) = text.rsplit_once("sha256 ")?;
        if sum.trim() != digest(body) {
            return None;
        }
        let imported = import_tables(body).ok()?;
        let expected = format!("chevtab v1 {} {}", rep.rs.id, rep.table.convention);
        (body.lines().next() == Some(expected.as_str())).then_some(imported.comm)
    }

    pub fn commutator_table(&self, rep: &Representation) -> Result<CommutatorTable> {
        if let Some(t) = self.load(rep) {
            return Ok(t);
        }
        let comm = derive_commutator_table(rep)?;
        if let Some(path) = self.path_for(rep) {
            let body = export_tables(&rep.table, &comm);
            let _ = fs::write(path, format!("{body}sha256 {}\n", digest(&body)));
        }
        Ok(comm)
    }
}
