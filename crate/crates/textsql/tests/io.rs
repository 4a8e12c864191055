use std::path::Path;

use textsql::io::*;
use textsql_core::{merge_bilingual, Corpus, Language, OriginFile, Status};

mod pt_examples;

use pt_examples::{pt_corpus, record, PT_EXAMPLES};

const DEV_JSON: &str = r#"[
  {"db_id": "concert_singer", "query": "SELECT count(*) FROM singer", "question": "How many singers do we have?",
   "question_toks": ["How", "many"], "query_toks": ["SELECT"], "sql": {"select": [false, []]}},
  {"db_id": "flight_2", "query": "SELECT count(*) FROM flights", "question": "Flights to 'Aberdeen', please?"}
]"#;

#[test]
fn loads_spider_json() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("dev.json");
    std::fs::write(&p, DEV_JSON).unwrap();
    let c = load_spider(&p).unwrap();
    assert_eq!(c.len(), 2);
    assert_eq!(c.records[0].id, "dev-0");
    assert_eq!(c.records[1].id, "dev-1");
    assert_eq!(c.records[0].origin_file, OriginFile::Dev);
    assert_eq!(c.records[0].language, Language::En);
    assert_eq!(c.records[0].status, Status::Original);
    assert!(c.records[0].extra.contains_key("query_toks"));
    assert!(!c.records[0].extra.contains_key("question_toks"));
}

#[test]
fn empty_array_is_an_empty_corpus() {
    let c = parse_spider("[]", Path::new("dev.json"), OriginFile::Dev).unwrap();
    assert!(c.is_empty());
}

#[test]
fn reports_load_errors() {
    let p = Path::new("x.json");
    assert!(matches!(parse_spider("{", p, OriginFile::Dev), Err(IoError::MalformedJson { .. })));
    assert!(matches!(parse_spider("{}", p, OriginFile::Dev), Err(IoError::MalformedJson { .. })));
    let missing = r#"[{"question": "q", "query": "SELECT 1", "db_id": "d"}, {"question": "q", "db_id": "d"}]"#;
    assert!(matches!(
        parse_spider(missing, p, OriginFile::Dev),
        Err(IoError::MissingField { name: "query", index: 1, .. })
    ));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, b"[{\"question\": \"caf\xe9\"}]").unwrap();
    assert!(matches!(load_spider(&bad), Err(IoError::InvalidUtf8 { offset: 18, .. })));
}

#[test]
fn json_is_written_as_literal_utf8() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("dev_pt.json");
    let c = pt_corpus(&PT_EXAMPLES);
    save_corpus(&c, &p, CorpusFormat::SpiderJson).unwrap();
    let bytes = std::fs::read(&p).unwrap();
    let text = String::from_utf8(bytes.clone()).unwrap();
    assert!(!text.contains("\\u"));
    for needle in ["é", "ã", "ç", "nós"] {
        assert!(bytes.windows(needle.len()).any(|w| w == needle.as_bytes()), "{needle}");
    }
    let back = load_spider(&p).unwrap();
    assert_eq!(back.records, c.records);
}

#[test]
fn saved_json_keeps_spider_fields() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("dev.json");
    std::fs::write(&src, DEV_JSON).unwrap();
    let c = load_spider(&src).unwrap();
    let out = dir.path().join("out.json");
    save_corpus(&c, &out, CorpusFormat::SpiderJson).unwrap();
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let first = &v[0];
    assert_eq!(first["query"], "SELECT count(*) FROM singer");
    assert_eq!(first["question_toks"], serde_json::json!(["How", "many", "singers", "do", "we", "have", "?"]));
    assert_eq!(first["sql"], serde_json::json!({"select": [false, []]}));
    assert_eq!(load_spider(&out).unwrap().records, c.records);
}

#[test]
fn csv_round_trips_with_quoting() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("pairs.csv");
    let en = Corpus::new(
        vec![
            record(0, "How many singers do we have?", Language::En),
            record(1, "Names, countries and \"quoted\"\nlines?", Language::En),
        ],
        "dev.json",
    );
    let pt = pt_corpus(&["Quantos cantores nós temos?", "Nomes, países e \"aspas\"?"]);
    let merged = merge_bilingual(&en, &pt).unwrap();
    save_corpus(&merged, &p, CorpusFormat::Csv).unwrap();
    let text = std::fs::read_to_string(&p).unwrap();
    assert!(text.starts_with("id,db_id,sql,question_en,question_pt\n"));
    assert!(text.contains("\"Names, countries and \"\"quoted\"\"\nlines?\""));
    let back = load_corpus(&p).unwrap();
    assert_eq!(back.records, merged.records);
    assert_eq!(back.records[2].language, Language::Pt);
}

#[test]
fn empty_corpus_csv_has_a_header() {
    assert_eq!(pairs_csv_string(&Corpus::default()), "id,db_id,sql,question_en,question_pt\n");
}

#[test]
fn merged_json_keeps_language_tags() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("dev_en_pt.json");
    let en = Corpus::new(vec![record(0, "How many singers do we have?", Language::En)], "dev.json");
    let merged = merge_bilingual(&en, &pt_corpus(&PT_EXAMPLES[..1])).unwrap();
    save_corpus(&merged, &p, CorpusFormat::SpiderJson).unwrap();
    let back = load_corpus(&p).unwrap();
    assert_eq!(back.records, merged.records);
    assert_eq!(back.records[1].id, "pt/dev-0");
}

#[test]
fn extracted_questions_match_the_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("q.txt");
    write_questions(&pt_corpus(&PT_EXAMPLES), &p).unwrap();
    let text = std::fs::read_to_string(&p).unwrap();
    assert_eq!(text.lines().collect::<Vec<_>>(), PT_EXAMPLES);
}

#[test]
fn gold_and_prediction_files() {
    let dir = tempfile::tempdir().unwrap();
    let gold = dir.path().join("gold.sql");
    std::fs::write(&gold, "SELECT count(*) FROM singer\tconcert_singer\n\nSELECT 1\tx\n").unwrap();
    let g = load_gold(&gold).unwrap();
    assert_eq!(g.len(), 2);
    assert_eq!(g[1].db_id, "x");
    assert_eq!(gold_file_string(&g), "SELECT count(*) FROM singer\tconcert_singer\nSELECT 1\tx\n");
    std::fs::write(&gold, "no tab\n").unwrap();
    assert!(matches!(load_gold(&gold), Err(IoError::BadLine { line: 1, .. })));

    let pred = dir.path().join("pred.sql");
    std::fs::write(&pred, "SELECT 1\n\nSELECT 2\n").unwrap();
    assert_eq!(load_predictions(&pred).unwrap(), vec!["SELECT 1", "", "SELECT 2"]);
}

#[test]
fn tokens_split_punctuation() {
    assert_eq!(question_tokens("Quantos cantores nós temos?"), vec!["Quantos", "cantores", "nós", "temos", "?"]);
}

#[test]
fn unknown_extension_is_rejected() {
    assert!(matches!(load_corpus(Path::new("x.txt")), Err(IoError::UnknownFormat(_))));
    assert_eq!(CorpusFormat::parse("spider-json"), Some(CorpusFormat::SpiderJson));
}

#[test]
fn utf8_round_trip_is_byte_exact() {
    pt_examples::utf8_round_trip_is_byte_exact().unwrap();
}
