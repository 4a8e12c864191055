//! Append-only JSONL log of revision entries.

use std::fs::{File, OpenOptions};
use std::io::{Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};

use textsql_core::review::RevisionEntry;

#[derive(Debug, thiserror::Error)]
pub enum JournalError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: line {line} is not a revision entry: {message}")]
    Corrupt { path: PathBuf, line: usize, message: String },
}

pub struct Journal {
    path: PathBuf,
    file: File,
    len: usize,
}

/// Entries read back from a journal file.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Replay {
    pub entries: Vec<RevisionEntry>,
    /// Bytes dropped from an incomplete last line, 0 if none.
    pub torn_bytes: usize,
}

/// Parses journal text. A last line that is unterminated or unreadable is a
/// torn write and is dropped; a bad line anywhere else is corruption.
pub fn parse_journal(text: &str, path: &Path) -> Result<(Replay, usize), JournalError> {
    let mut entries = Vec::new();
    let mut good = 0;
    let mut offset = 0;
    let lines: Vec<&str> = text.split_inclusive('\n').collect();
    for (i, line) in lines.iter().enumerate() {
        offset += line.len();
        let last = i + 1 == lines.len();
        let body = line.strip_suffix('\n');
        if body.is_some_and(|b| b.trim().is_empty()) {
            good = offset;
            continue;
        }
        match body.map(serde_json::from_str::<RevisionEntry>) {
            Some(Ok(e)) => {
                entries.push(e);
                good = offset;
            }
            _ if last => break,
            Some(Err(e)) => {
                return Err(JournalError::Corrupt { path: path.to_path_buf(), line: i + 1, message: e.to_string() })
            }
            None => unreachable!("only the last piece lacks a newline"),
        }
    }
    Ok((Replay { entries, torn_bytes: text.len() - good }, good))
}

impl Journal {
    /// Opens or creates the journal and reads its entries. A torn tail is
    /// cut off the file, with a warning.
    pub fn open(path: &Path) -> Result<(Journal, Replay), JournalError> {
        let io = |source| JournalError::Io { path: path.to_path_buf(), source };
        let text = if path.exists() {
            let bytes = std::fs::read(path).map_err(io)?;
            String::from_utf8_lossy(&bytes).into_owned()
        } else {
            String::new()
        };
        let (replay, good) = parse_journal(&text, path)?;
        let mut file = OpenOptions::new().create(true).read(true).write(true).truncate(false).open(path).map_err(io)?;
        if replay.torn_bytes > 0 {
            log::warn!("{}: discarding {} bytes of an incomplete last entry", path.display(), replay.torn_bytes);
            file.set_len(good as u64).map_err(io)?;
            file.sync_all().map_err(io)?;
        }
        file.seek(SeekFrom::End(0)).map_err(io)?;
        let len = replay.entries.len();
        Ok((Journal { path: path.to_path_buf(), file, len }, replay))
    }

    /// Writes one entry as a single line and syncs it to disk.
    pub fn append(&mut self, entry: &RevisionEntry) -> Result<(), JournalError> {
        let io = |source| JournalError::Io { path: self.path.clone(), source };
        let mut line = serde_json::to_string(entry).expect("entry serializes");
        line.push('\n');
        self.file.write_all(line.as_bytes()).map_err(io)?;
        self.file.sync_data().map_err(io)?;
        self.len += 1;
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn path(&self) -> &Path {
        &self.path
    }
}
