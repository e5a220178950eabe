//! Term tables for the commands, optionally backed by a cache file.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::PathBuf;

use apery_core::sequences::{
    canonical_table, generate, load_tables, save_tables, Normalization, SequenceId, TermSource,
    TermTable,
};
use apery_core::{Error, Result};

/// Where terms come from on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Source {
    Formula,
    Recurrence,
    /// Closed-form reading checked against the recurrence on a prefix.
    Canonical,
}

/// Cached prefixes are re-derived up to this index before being trusted.
const VERIFY_PREFIX: usize = 16;

pub struct Store {
    normalization: Normalization,
    cache_path: Option<PathBuf>,
    cached: BTreeMap<(SequenceId, &'static str), TermTable>,
    dirty: bool,
}

impl Store {
    pub fn open(cache_path: Option<PathBuf>, normalization: Normalization) -> Result<Self> {
        let mut cached = BTreeMap::new();
        if let Some(path) = cache_path.as_ref().filter(|p| p.exists()) {
            for table in load_tables(BufReader::new(File::open(path)?))? {
                cached.insert((table.id(), table.source().as_str()), table);
            }
        }
        Ok(Store {
            normalization,
            cache_path,
            cached,
            dirty: false,
        })
    }

    fn compute(&self, id: SequenceId, source: Source, n_max: usize) -> Result<TermTable> {
        match source {
            Source::Formula => generate(id.spec(), TermSource::Formula, n_max),
            Source::Recurrence => generate(id.spec(), TermSource::Recurrence, n_max),
            Source::Canonical => canonical_table(id.spec(), n_max, self.normalization),
        }
    }

    fn storage_source(&self, id: SequenceId, source: Source) -> TermSource {
        match source {
            Source::Formula => TermSource::Formula,
            Source::Recurrence => TermSource::Recurrence,
            Source::Canonical
                if id.has_doubled_formula() && self.normalization == Normalization::Recurrence =>
            {
                TermSource::Recurrence
            }
            Source::Canonical => TermSource::Formula,
        }
    }

    /// Terms `u_0..=u_{n_max}`. Cached entries must agree with a fresh
    /// computation on a short prefix; a disagreement is an integrity error.
    pub fn table(&mut self, id: SequenceId, source: Source, n_max: usize) -> Result<TermTable> {
        let key = (id, self.storage_source(id, source).as_str());
        if let Some(hit) = self.cached.get(&key).filter(|t| t.n_max() >= n_max) {
            let check = self.compute(id, source, n_max.min(VERIFY_PREFIX))?;
            if let Some(index) = check
                .terms()
                .iter()
                .zip(hit.terms())
                .position(|(a, b)| a != b)
            {
                return Err(Error::PrefixMismatch {
                    sequence: format!("{id} (cache)"),
                    index,
                });
            }
            return hit.truncated(n_max);
        }
        let table = self.compute(id, source, n_max)?;
        if self.cache_path.is_some() {
            let stored =
                TermTable::new(id, self.storage_source(id, source), table.terms().to_vec())?;
            self.cached.insert(key, stored);
            self.dirty = true;
        }
        Ok(table)
    }

    /// Writes the cache back if anything new was computed.
    pub fn flush(&mut self) -> Result<()> {
        if let (true, Some(path)) = (self.dirty, &self.cache_path) {
            let tables: Vec<TermTable> = self.cached.values().cloned().collect();
            save_tables(&tables, BufWriter::new(File::create(path)?))?;
            self.dirty = false;
        }
        Ok(())
    }
}
