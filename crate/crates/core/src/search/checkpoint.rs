//! Checkpoint file (`p_completed=<integer>`) plus a JSONL journal of the
//! records found for every completed `p`.
//!
//! The journal lives next to the checkpoint at `<checkpoint>.journal.jsonl`.
//! Records are appended before the checkpoint is advanced, so after a crash
//! the journal may hold lines for `p > p_completed`; those are dropped on
//! resume and recomputed.

use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{CubeRecord, Provenance, SearchConfig, SearchError};

const KEY: &str = "p_completed=";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JournalEntry {
    pub p: u64,
    pub q: u64,
    pub di: u64,
    pub dj: u64,
    pub a: [u128; 3],
}

impl JournalEntry {
    fn from_record(r: &CubeRecord) -> Self {
        let a = [0, 1, 2].map(|i| r.cube.parts[i].to_u128().expect("search parts fit u128"));
        let Provenance { p, q, di, dj } = r.provenance;
        JournalEntry { p, q, di, dj, a }
    }

    fn into_record(self) -> CubeRecord {
        CubeRecord::from_parts(
            self.p * self.p,
            self.a,
            Provenance {
                p: self.p,
                q: self.q,
                di: self.di,
                dj: self.dj,
            },
        )
    }
}

pub fn journal_path(checkpoint: &Path) -> PathBuf {
    let mut s = checkpoint.as_os_str().to_owned();
    s.push(".journal.jsonl");
    PathBuf::from(s)
}

/// Reads the last completed `p`, or `None` when no checkpoint exists yet.
pub fn load_checkpoint(path: &Path) -> Result<Option<u64>, SearchError> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let bad = |reason: &str| SearchError::Checkpoint {
        path: path.to_owned(),
        reason: reason.to_owned(),
    };
    let line = text.trim();
    let value = line.strip_prefix(KEY).ok_or_else(|| bad("missing p_completed="))?;
    value.parse().map(Some).map_err(|_| bad("p_completed is not an integer"))
}

/// Atomically replaces the checkpoint with `p_completed=<p>`.
pub fn store_checkpoint(path: &Path, p: u64) -> Result<(), SearchError> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    {
        let mut f = File::create(&tmp)?;
        writeln!(f, "{KEY}{p}")?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

pub(super) fn resume(
    path: &Path,
    cfg: &SearchConfig,
) -> Result<(Option<u64>, Vec<CubeRecord>), SearchError> {
    let Some(done) = load_checkpoint(path)? else {
        return Ok((None, Vec::new()));
    };
    let jpath = journal_path(path);
    let mut kept = Vec::new();
    match File::open(&jpath) {
        Ok(f) => {
            for (n, line) in BufReader::new(f).lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let entry: JournalEntry = match serde_json::from_str(&line) {
                    Ok(e) => e,
                    // a torn final line from an interrupted append
                    Err(_) => break,
                };
                if entry.p > done {
                    continue;
                }
                let rec = entry.into_record();
                if cfg.reduced_only && !rec.reduced {
                    return Err(SearchError::Checkpoint {
                        path: jpath.clone(),
                        reason: format!("line {} holds a non-reduced cube but --reduced is set", n + 1),
                    });
                }
                kept.push(rec);
            }
        }
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
        Err(e) => return Err(e.into()),
    }
    Ok((Some(done), kept))
}

pub(super) struct Journal {
    out: BufWriter<File>,
}

impl Journal {
    /// Rewrites the journal with `kept` and opens it for appending.
    pub(super) fn open(checkpoint: &Path, kept: &[CubeRecord]) -> Result<Self, SearchError> {
        let jpath = journal_path(checkpoint);
        let mut out = BufWriter::new(File::create(&jpath)?);
        for r in kept {
            write_entry(&mut out, r)?;
        }
        out.flush()?;
        let f = OpenOptions::new().append(true).open(&jpath)?;
        Ok(Journal {
            out: BufWriter::new(f),
        })
    }

    pub(super) fn append(&mut self, records: &[CubeRecord]) -> Result<(), SearchError> {
        for r in records {
            write_entry(&mut self.out, r)?;
        }
        self.out.flush()?;
        self.out.get_ref().sync_data()?;
        Ok(())
    }
}

fn write_entry(out: &mut impl Write, r: &CubeRecord) -> Result<(), SearchError> {
    let line = serde_json::to_string(&JournalEntry::from_record(r)).expect("journal entry serializes");
    writeln!(out, "{line}")?;
    Ok(())
}
