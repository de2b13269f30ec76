use std::path::Path;
use std::sync::Arc;

use super::{
    compile_group_to_ring, compile_ring_to_group, note_value, parse_system, verify_equisolvability, GroupVarEncoding,
    PairReport, System,
};
use crate::chevalley::{representation_for, RepKind, Representation};
use crate::error::{Error, Result};

/// One `.ring` or `.group` file.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub text: String,
    pub system: System,
}

/// Every `*.ring` and `*.group` file in `dir`, sorted by file name.
pub fn load_corpus(dir: &Path) -> Result<Vec<CorpusEntry>> {
    let mut paths: Vec<_> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| matches!(p.extension().and_then(|e| e.to_str()), Some("ring" | "group")))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let text = std::fs::read_to_string(&p)?;
            let name = p.file_name().unwrap_or_default().to_string_lossy().into_owned();
            let system = parse_system(&text).map_err(|e| Error::InFile { file: name.clone(), inner: Box::new(e) })?;
            Ok(CorpusEntry { name, text, system })
        })
        .collect()
}

/// The representation named by a `# context <system> <rep>` note; SL3 otherwise.
pub fn context_of(sys: &System) -> Result<Arc<Representation>> {
    let text = note_value(sys.notes(), "context").unwrap_or("A2 sl");
    let mut it = text.split_whitespace();
    let (Some(id), Some(kind), None) = (it.next(), it.next(), it.next()) else {
        return Err(Error::UnknownSymbol(format!("context {text}")));
    };
    representation_for(id.parse()?, RepKind::parse(kind)?)
}

/// Ring systems go to the group named by their context, group systems through the matrix scheme.
pub fn compile_other_side(sys: &System) -> Result<System> {
    Ok(match sys {
        System::Ring(r) => System::Group(compile_ring_to_group(r, context_of(sys)?, None)?.0),
        System::Group(g) => System::Ring(compile_group_to_ring(g, GroupVarEncoding::Scheme)?),
    })
}

/// Whether printing and reparsing both the source and its compilation gives back the same systems.
pub fn reparses(sys: &System) -> bool {
    let once = |s: &System| parse_system(&s.to_string()).is_ok_and(|p| p == *s);
    once(sys) && compile_other_side(sys).is_ok_and(|c| once(&c))
}

#[derive(Debug, Clone)]
pub struct RoundtripEntry {
    pub name: String,
    pub reparses: bool,
    pub expected: Option<bool>,
    pub pair: PairReport,
}

impl RoundtripEntry {
    pub fn passed(&self) -> bool {
        let matches_expectation = match self.expected {
            Some(e) => self.pair.source == if e { super::Verdict::Sat } else { super::Verdict::Unsat },
            None => true,
        };
        self.reparses && matches_expectation && self.pair.agrees()
    }
}

#[derive(Debug, Clone, Default)]
pub struct RoundtripReport {
    pub entries: Vec<RoundtripEntry>,
}

impl RoundtripReport {
    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(RoundtripEntry::passed)
    }
}

/// Compiles every entry to the other side and checks parsing, expectations and equisolvability.
pub fn run_roundtrip(entries: &[CorpusEntry], element_cap: usize, budget: u64) -> Result<RoundtripReport> {
    let mut pairs = Vec::new();
    for e in entries {
        pairs.push((e.name.clone(), e.system.clone(), compile_other_side(&e.system)?));
    }
    let eq = verify_equisolvability(&pairs, element_cap, budget)?;
    let entries = entries
        .iter()
        .zip(eq.pairs)
        .map(|(e, pair)| RoundtripEntry {
            name: e.name.clone(),
            reparses: reparses(&e.system),
            expected: e.system.expected(),
            pair,
        })
        .collect();
    Ok(RoundtripReport { entries })
}

