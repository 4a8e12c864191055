use std::io::Write;

use textsql::cache::{source_hash, CachedBackend};
use textsql::journal::{parse_journal, Journal, JournalError};
use textsql_core::corpus::Status;
use textsql_core::review::RevisionEntry;
use textsql_core::translate::{BackendError, TranslationBackend};
use textsql_core::Language;

fn entry(i: usize) -> RevisionEntry {
    RevisionEntry {
        id: format!("pt/dev-{i}"),
        timestamp: "2026-01-02T03:04:05Z".into(),
        previous_question: "a identificação do aluno".into(),
        new_question: "o id do aluno".into(),
        status: Status::Revised,
        reviewer: "ana".into(),
    }
}

#[test]
fn journal_appends_and_replays() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("journal.jsonl");
    let (mut j, replay) = Journal::open(&p).unwrap();
    assert!(replay.entries.is_empty() && j.is_empty());
    j.append(&entry(0)).unwrap();
    j.append(&entry(1)).unwrap();
    assert_eq!(j.len(), 2);
    drop(j);
    let (j, replay) = Journal::open(&p).unwrap();
    assert_eq!(replay.entries, vec![entry(0), entry(1)]);
    assert_eq!((j.len(), replay.torn_bytes), (2, 0));
}

#[test]
fn torn_tail_is_discarded() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("journal.jsonl");
    let (mut j, _) = Journal::open(&p).unwrap();
    j.append(&entry(0)).unwrap();
    drop(j);
    let good_len = std::fs::metadata(&p).unwrap().len();
    let line = serde_json::to_string(&entry(1)).unwrap();
    let mut f = std::fs::OpenOptions::new().append(true).open(&p).unwrap();
    f.write_all(&line.as_bytes()[..line.len() / 2]).unwrap();
    drop(f);

    let (mut j, replay) = Journal::open(&p).unwrap();
    assert_eq!(replay.entries, vec![entry(0)]);
    assert_eq!(replay.torn_bytes, line.len() / 2);
    assert_eq!(std::fs::metadata(&p).unwrap().len(), good_len);
    j.append(&entry(2)).unwrap();
    drop(j);
    assert_eq!(Journal::open(&p).unwrap().1.entries, vec![entry(0), entry(2)]);
}

#[test]
fn corrupt_middle_line_is_an_error() {
    let a = serde_json::to_string(&entry(0)).unwrap();
    let text = format!("{a}\nnot json\n{a}\n");
    let err = parse_journal(&text, std::path::Path::new("j")).unwrap_err();
    assert!(matches!(err, JournalError::Corrupt { line: 2, .. }));
    let (r, good) = parse_journal(&format!("{a}\n\n{a}\n"), std::path::Path::new("j")).unwrap();
    assert_eq!(r.entries.len(), 2);
    assert_eq!(good, 2 * a.len() + 3);
}

struct Counting {
    seen: Vec<String>,
    fail: bool,
}

impl TranslationBackend for Counting {
    fn kind(&self) -> &'static str {
        "counting"
    }

    fn translate_batch(&mut self, texts: &[String], _: Language, _: Language) -> Result<Vec<String>, BackendError> {
        if self.fail {
            return Err(BackendError::Failed("down".into()));
        }
        self.seen.extend(texts.iter().cloned());
        Ok(texts.iter().map(|t| format!("pt:{t}")).collect())
    }
}

fn texts(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

#[test]
fn cache_makes_reruns_offline() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("cache.jsonl");
    let mut c = CachedBackend::open(Counting { seen: vec![], fail: false }, &p).unwrap();
    let out = c.translate_batches(&[texts(&["a", "b"]), texts(&["c"])], Language::En, Language::Pt);
    assert_eq!(out[0].as_ref().unwrap(), &texts(&["pt:a", "pt:b"]));
    assert_eq!(c.len(), 3);
    let out = c.translate_batch(&texts(&["a", "d"]), Language::En, Language::Pt).unwrap();
    assert_eq!(out, texts(&["pt:a", "pt:d"]));
    assert_eq!((c.hits, c.misses), (1, 4));
    assert_eq!(c.into_inner().seen, texts(&["a", "b", "c", "d"]));

    let mut again = CachedBackend::open(Counting { seen: vec![], fail: true }, &p).unwrap();
    assert_eq!(again.len(), 4);
    let out = again.translate_batch(&texts(&["d", "c", "b", "a"]), Language::En, Language::Pt).unwrap();
    assert_eq!(out, texts(&["pt:d", "pt:c", "pt:b", "pt:a"]));
    assert!(again.translate_batch(&texts(&["e"]), Language::En, Language::Pt).is_err());
}

#[test]
fn cache_keys_include_languages() {
    assert_ne!(source_hash("a", Language::En), source_hash("a", Language::Pt));
    assert_eq!(source_hash("a", Language::En).len(), 64);
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("cache.jsonl");
    let mut c = CachedBackend::open(Counting { seen: vec![], fail: false }, &p).unwrap();
    c.translate_batch(&texts(&["a"]), Language::En, Language::Pt).unwrap();
    c.translate_batch(&texts(&["a"]), Language::En, Language::En).unwrap();
    assert_eq!(c.misses, 2);
    let line = std::fs::read_to_string(&p).unwrap();
    let first: serde_json::Value = serde_json::from_str(line.lines().next().unwrap()).unwrap();
    assert_eq!(first["target"], "pt");
    assert_eq!(first["translation"], "pt:a");
}
