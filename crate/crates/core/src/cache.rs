//! Append-only JSON-lines store for the hypersimplex, cuspidal and W memo tables.
//!
//! One record per line:
//! `{"v":1,"kind":"hypersimplex","key":[2,5],"cd":{"cccc":"1","ccd":"8",…}}`.

use std::collections::HashSet;
use std::fs::{self, File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::cuspidal::{cd_cuspidal, CuspidalKey};
use crate::engine::{w_term, WKey};
use crate::error::{CdError, Result};
use crate::hypersimplex::cd_hypersimplex;
use crate::memo::{CacheKind, Memo};
use crate::ncpoly::{NcPoly, Word};

pub const VERSION: u64 = 1;

#[derive(Serialize, Deserialize)]
struct Record {
    v: u64,
    kind: String,
    key: Vec<usize>,
    cd: Map<String, Value>,
}

/// `{word: "coeff"}` in canonical word order.
pub fn poly_to_json(p: &NcPoly) -> Map<String, Value> {
    p.terms()
        .map(|(w, c)| (w.to_string(), Value::String(c.to_string())))
        .collect()
}

pub fn poly_from_json(map: &Map<String, Value>) -> Result<NcPoly> {
    let mut out = NcPoly::zero();
    for (word, coeff) in map {
        let coeff = coeff
            .as_str()
            .ok_or_else(|| CdError::Parse(format!("coefficient of {word:?} is not a string")))?;
        let coeff: BigInt = coeff
            .parse()
            .map_err(|_| CdError::Parse(format!("bad coefficient {coeff:?}")))?;
        out.add_term(word.parse::<Word>()?, coeff);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CacheEntry {
    pub kind: CacheKind,
    pub key: Vec<usize>,
    pub value: NcPoly,
}

#[derive(Debug)]
pub struct CacheFile {
    path: PathBuf,
    entries: Vec<CacheEntry>,
    known: HashSet<(CacheKind, Vec<usize>)>,
    /// Set when a damaged trailing record was dropped on load.
    pub truncated: bool,
}

impl CacheFile {
    /// Reads the store, creating nothing if the file is absent. A damaged last
    /// line is cut off with a warning; damage anywhere else is an error.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut cache = CacheFile {
            path: path.clone(),
            entries: Vec::new(),
            known: HashSet::new(),
            truncated: false,
        };
        let text = match fs::read_to_string(&path) {
            Ok(text) => text,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(cache),
            Err(e) => return Err(CdError::io(&path, e)),
        };
        let lines: Vec<(usize, &str)> = line_offsets(&text);
        let last = lines.iter().rposition(|(_, l)| !l.trim().is_empty());
        for (idx, &(offset, line)) in lines.iter().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            match parse_record(line) {
                Ok(entry) => cache.push(entry),
                Err(CdError::CacheVersionMismatch { found, expected }) => {
                    return Err(CdError::CacheVersionMismatch { found, expected })
                }
                Err(e) if Some(idx) == last => {
                    eprintln!(
                        "warning: {}: dropping damaged trailing record ({e})",
                        path.display()
                    );
                    let file = OpenOptions::new()
                        .write(true)
                        .open(&path)
                        .map_err(|e| CdError::io(&path, e))?;
                    file.set_len(offset as u64)
                        .map_err(|e| CdError::io(&path, e))?;
                    cache.truncated = true;
                }
                Err(e) => {
                    return Err(CdError::CacheCorrupt(format!(
                        "{} line {}: {e}",
                        path.display(),
                        idx + 1
                    )))
                }
            }
        }
        Ok(cache)
    }

    fn push(&mut self, entry: CacheEntry) {
        if self.known.insert((entry.kind, entry.key.clone())) {
            self.entries.push(entry);
        }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn entries(&self) -> &[CacheEntry] {
        &self.entries
    }

    pub fn seed(&self, memo: &Memo) {
        for e in &self.entries {
            memo.insert(e.kind, &e.key, e.value.clone());
        }
    }

    /// Recomputes every stored value from scratch and compares.
    pub fn verify(&self) -> Result<()> {
        let fresh = Memo::new();
        for e in &self.entries {
            let expected = recompute(&fresh, e.kind, &e.key)?;
            if *expected != e.value {
                return Err(CdError::CacheCorrupt(format!(
                    "{} {:?} stores {} but recomputes to {}",
                    e.kind, e.key, e.value, expected
                )));
            }
        }
        Ok(())
    }

    /// Appends memo entries not yet in the file; returns how many were written.
    pub fn append_new(&mut self, memo: &Memo) -> Result<usize> {
        let fresh: Vec<_> = memo
            .entries()
            .into_iter()
            .filter(|(kind, key, _)| !self.known.contains(&(*kind, key.clone())))
            .collect();
        if fresh.is_empty() {
            return Ok(0);
        }
        if let Some(dir) = self.path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir).map_err(|e| CdError::io(dir, e))?;
        }
        let mut file: File = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .map_err(|e| CdError::io(&self.path, e))?;
        let mut buf = String::new();
        for (kind, key, value) in &fresh {
            let record = Record {
                v: VERSION,
                kind: kind.as_str().to_string(),
                key: key.clone(),
                cd: poly_to_json(value),
            };
            buf.push_str(&serde_json::to_string(&record).expect("record serializes"));
            buf.push('\n');
        }
        file.write_all(buf.as_bytes())
            .map_err(|e| CdError::io(&self.path, e))?;
        for (kind, key, value) in fresh.iter().cloned() {
            self.push(CacheEntry {
                kind,
                key,
                value: (*value).clone(),
            });
        }
        Ok(fresh.len())
    }
}

fn line_offsets(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        out.push((offset, line.trim_end_matches('\n')));
        offset += line.len();
    }
    out
}

fn parse_record(line: &str) -> Result<CacheEntry> {
    let value: Value = serde_json::from_str(line).map_err(|e| CdError::Parse(e.to_string()))?;
    if let Some(v) = value.get("v").and_then(Value::as_u64) {
        if v != VERSION {
            return Err(CdError::CacheVersionMismatch {
                found: v,
                expected: VERSION,
            });
        }
    }
    let record: Record =
        serde_json::from_value(value).map_err(|e| CdError::Parse(e.to_string()))?;
    let kind: CacheKind = record.kind.parse()?;
    if record.key.len() != kind.key_len() {
        return Err(CdError::Parse(format!(
            "{kind} key needs {} entries, got {}",
            kind.key_len(),
            record.key.len()
        )));
    }
    Ok(CacheEntry {
        kind,
        key: record.key,
        value: poly_from_json(&record.cd)?,
    })
}

fn recompute(memo: &Memo, kind: CacheKind, key: &[usize]) -> Result<std::sync::Arc<NcPoly>> {
    match (kind, key) {
        (CacheKind::Hypersimplex, &[k, n]) => cd_hypersimplex(memo, k, n),
        (CacheKind::Cuspidal, &[k, n, r, h]) => cd_cuspidal(memo, CuspidalKey::new(k, n, r, h)?),
        (CacheKind::W, &[alpha, beta, a, b, n]) => w_term(memo, WKey::new(alpha, beta, a, b, n)?),
        _ => Err(CdError::Parse(format!("bad {kind} key {key:?}"))),
    }
}
