//! Rendering records and managing the append-then-rewrite sieve output file.

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use thiserror::Error;

use crate::config::Format;
use crate::record::{Payload, ResultRecord, CSV_HEADER};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub type PairKey = (BigUint, BigUint);

fn csv_line(fields: &[String]) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(fields)?;
    let bytes = w.into_inner().map_err(|e| io::Error::other(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("utf-8 input").trim_end_matches('\n').to_string())
}

pub fn csv_header() -> String {
    CSV_HEADER.join(",")
}

/// One record in the requested format, without the trailing newline.
pub fn render(record: &ResultRecord, format: Format) -> Result<String, CliError> {
    match format {
        Format::Jsonl => Ok(serde_json::to_string(record)?),
        Format::Csv => match &record.payload {
            Payload::Sieve(s) => csv_line(&s.csv_row()),
            _ => Err(usage("--format csv is only available for sieve")),
        },
        Format::Pretty => Ok(pretty(record)),
    }
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

fn pretty(record: &ResultRecord) -> String {
    match &record.payload {
        Payload::Solutions(s) => format!(
            "{}({},{},{}) max_z={} max_bits={}: {} solution(s) {}{}",
            s.mode,
            s.a,
            s.b,
            s.c,
            s.max_z,
            s.max_bits,
            s.count,
            join(&s.solutions, " "),
            if s.exhaustive { "" } else { " [not exhaustive]" }
        ),
        Payload::Sieve(s) => format!(
            "p={} q={} cong48={} val_order={} order_parity={} octic={} size_p={} size_q={} survives={}",
            s.p, s.q, s.cong48, s.val_order, s.order_parity, s.octic, s.size_p, s.size_q, s.survives
        ),
        Payload::Expansion(cf) => {
            let mut out = format!("sqrt({}) = [{}; {}] s={}", cf.d, cf.a0, cf.period.join(","), cf.s);
            for c in &cf.convergents {
                out.push_str(&format!("\n  m={} P={} Q={} k={}", c.m, c.p, c.q, c.k));
            }
            if let Some(cl) = &cf.closed_form {
                out.push_str(&format!("\n  closed form p={} n={} period=[{}] match={}", cl.p, cl.n, cl.expected_period.join(","), cl.matches));
            }
            out
        }
        Payload::Golden(g) => {
            let parts: Vec<String> = g
                .instances
                .iter()
                .map(|i| format!("({},{},{}) {}", i.a, i.b, i.c, join(&i.found, " ")))
                .collect();
            format!("{} {}: {}", g.label, if g.matches { "ok" } else { "MISMATCH" }, parts.join("; "))
        }
        Payload::Violation(v) => format!("VIOLATION {}: {}", v.suite, v.detail),
        Payload::Abc(a) => format!("Q({},{},{}) = {:.6} rad={}", a.a, a.b, a.c, a.quality, a.rad),
    }
}

/// Writes complete output to stdout, or atomically to `path`.
pub fn emit(path: Option<&Path>, format: Format, lines: &[String]) -> Result<(), CliError> {
    let mut body = String::new();
    if format == Format::Csv {
        body.push_str(&csv_header());
        body.push('\n');
    }
    for l in lines {
        body.push_str(l);
        body.push('\n');
    }
    match path {
        Some(p) => write_atomic(p, &body),
        None => {
            io::stdout().lock().write_all(body.as_bytes())?;
            Ok(())
        }
    }
}

fn write_atomic(path: &Path, body: &str) -> Result<(), CliError> {
    let mut tmp = PathBuf::from(path);
    let name = path.file_name().ok_or_else(|| usage("--out must name a file"))?.to_string_lossy().into_owned();
    tmp.set_file_name(format!(".{name}.tmp"));
    fs::write(&tmp, body)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn parse_key(line: &str, format: Format) -> Option<PairKey> {
    let (p, q) = match format {
        Format::Jsonl => match serde_json::from_str::<ResultRecord>(line).ok()?.payload {
            Payload::Sieve(s) => (s.p, s.q),
            _ => return None,
        },
        Format::Csv => {
            let mut r = csv::ReaderBuilder::new().has_headers(false).from_reader(line.as_bytes());
            let rec = r.records().next()?.ok()?;
            if rec.len() != CSV_HEADER.len() {
                return None;
            }
            (rec.get(0)?.to_string(), rec.get(1)?.to_string())
        }
        Format::Pretty => return None,
    };
    Some((p.parse().ok()?, q.parse().ok()?))
}

/// Sieve output keyed by `(p, q)`. New records are appended as they are
/// produced; `finish` rewrites the file sorted and deduplicated.
pub struct SieveStore {
    path: Option<PathBuf>,
    format: Format,
    records: BTreeMap<PairKey, String>,
    append: Option<File>,
}

impl SieveStore {
    pub fn open(path: Option<&Path>, format: Format, resume: bool) -> Result<Self, CliError> {
        if format == Format::Pretty && path.is_some() {
            return Err(usage("--format pretty cannot be written to --out for sieve"));
        }
        if resume && path.is_none() {
            return Err(usage("--resume needs --out"));
        }
        let mut store = Self { path: path.map(Path::to_path_buf), format, records: BTreeMap::new(), append: None };
        if let Some(p) = path {
            if resume && p.exists() {
                store.load(p)?;
            }
            // start from a clean file so appends never land after a torn line
            store.rewrite()?;
            store.append = Some(OpenOptions::new().append(true).open(p)?);
        }
        Ok(store)
    }

    fn load(&mut self, path: &Path) -> Result<(), CliError> {
        let text = fs::read_to_string(path)?;
        let mut lines: Vec<&str> = text.split_inclusive('\n').collect();
        // an interrupted write leaves a final line without its newline
        if lines.last().is_some_and(|l| !l.ends_with('\n')) {
            lines.pop();
        }
        let lines: Vec<&str> = lines.iter().map(|l| l.trim_end_matches('\n')).filter(|l| !l.is_empty()).collect();
        let n = lines.len();
        for (i, line) in lines.into_iter().enumerate() {
            if self.format == Format::Csv && *line == csv_header() {
                continue;
            }
            match parse_key(line, self.format) {
                Some(k) => {
                    self.records.entry(k).or_insert_with(|| line.to_string());
                }
                None if i + 1 == n => {}
                None => return Err(usage(format!("{}: unreadable record on line {}", path.display(), i + 1))),
            }
        }
        Ok(())
    }

    fn rewrite(&self) -> Result<(), CliError> {
        let lines: Vec<String> = self.records.values().cloned().collect();
        emit(self.path.as_deref(), self.format, &lines)
    }

    pub fn contains(&self, key: &PairKey) -> bool {
        self.records.contains_key(key)
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn push_chunk(&mut self, chunk: Vec<(PairKey, String)>) -> Result<(), CliError> {
        if let Some(f) = self.append.as_mut() {
            let mut buf = String::new();
            for (_, line) in &chunk {
                buf.push_str(line);
                buf.push('\n');
            }
            f.write_all(buf.as_bytes())?;
            f.flush()?;
        }
        for (k, line) in chunk {
            self.records.entry(k).or_insert(line);
        }
        Ok(())
    }

    pub fn finish(mut self) -> Result<(), CliError> {
        self.append = None;
        if self.path.is_some() {
            self.rewrite()
        } else {
            let lines: Vec<String> = self.records.into_values().collect();
            emit(None, self.format, &lines)
        }
    }
}
