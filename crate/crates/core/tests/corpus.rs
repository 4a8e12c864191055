use std::collections::BTreeMap;

use textsql_core::corpus::*;

fn rec(origin: OriginFile, i: usize, q: &str, sql: &str, db: &str) -> ExampleRecord {
    ExampleRecord {
        id: ExampleRecord::make_id(&origin, i),
        db_id: db.into(),
        question: q.into(),
        language: Language::En,
        sql: sql.into(),
        origin_file: origin,
        status: Status::Original,
        extra: BTreeMap::new(),
    }
}

fn english() -> Corpus {
    Corpus::new(
        vec![
            rec(OriginFile::Dev, 0, "How many singers do we have?", "SELECT count(*) FROM singer", "concert_singer"),
            rec(
                OriginFile::Dev,
                1,
                "How many United Airlines flights go to City 'Aberdeen'?",
                "SELECT count(*) FROM flights",
                "flight_2",
            ),
            rec(OriginFile::Dev, 2, "List names, countries and ages.", "SELECT name, country, age FROM singer", "concert_singer"),
        ],
        "dev.json",
    )
}

fn portuguese() -> Corpus {
    let mut c = english();
    let pt = [
        "Quantos cantores nós temos?",
        "Quantos voos da United Airlines vão para a cidade de 'Aberdeen'?",
        "Liste nomes, países e idades.",
    ];
    for (r, q) in c.records.iter_mut().zip(pt) {
        r.question = q.into();
        r.language = Language::Pt;
        r.status = Status::MachineTranslated;
    }
    c
}

#[test]
fn stats_counts_questions_and_code_points() {
    let s = stats(&portuguese());
    assert_eq!(s.question_count, 3);
    let want: usize = portuguese().records.iter().map(|r| r.question.chars().count()).sum();
    assert_eq!(s.character_count, want);
    assert!(s.character_count < portuguese().records.iter().map(|r| r.question.len()).sum());
    assert_eq!(stats(&Corpus::default()), CorpusStats { question_count: 0, character_count: 0 });
}

#[test]
fn stats_is_additive_over_merge() {
    let m = merge_bilingual(&english(), &portuguese()).unwrap();
    assert_eq!(stats(&m).question_count, stats(&english()).question_count + stats(&portuguese()).question_count);
    assert_eq!(stats(&m).character_count, stats(&english()).character_count + stats(&portuguese()).character_count);
}

#[test]
fn extraction_has_one_line_per_question() {
    let mut c = portuguese();
    c.records[2].question = "two\nlines".into();
    let text = extract_questions(&c);
    assert_eq!(text.lines().count(), c.len());
    assert_eq!(text.lines().next(), Some("Quantos cantores nós temos?"));
    assert_eq!(text.lines().nth(2), Some("two lines"));
    assert_eq!(extract_questions(&Corpus::default()), "");
}

#[test]
fn merge_doubles_with_english_first() {
    let m = merge_bilingual(&english(), &portuguese()).unwrap();
    assert_eq!(m.len(), 6);
    assert!(m.records[..3].iter().all(|r| r.language == Language::En));
    assert!(m.records[3..].iter().all(|r| r.language == Language::Pt));
    assert_eq!(m.records[0].id, "en/dev-0");
    assert_eq!(m.records[3].id, "pt/dev-0");
    assert_eq!(m.records[3].base_id(), "dev-0");
    assert_eq!(m.records[3].question, "Quantos cantores nós temos?");
    assert_eq!(m.provenance.steps.last().map(String::as_str), Some("merge-bilingual"));
    m.validate().unwrap();
}

#[test]
fn merge_rejects_mismatched_pairs() {
    let mut pt = portuguese();
    pt.records[1].sql = "SELECT 1".into();
    assert_eq!(merge_bilingual(&english(), &pt), Err(MergeError::PairMismatch(1)));
    pt.records.pop();
    assert_eq!(merge_bilingual(&english(), &pt), Err(MergeError::LengthMismatch { en: 3, pt: 2 }));
}

#[test]
fn merge_of_empty_corpora_is_empty() {
    assert!(merge_bilingual(&Corpus::default(), &Corpus::default()).unwrap().is_empty());
}

#[test]
fn pair_rows_line_up_translations() {
    let m = merge_bilingual(&english(), &portuguese()).unwrap();
    let rows = pair_rows(&m);
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0].id, "dev-0");
    assert_eq!(rows[0].question_en, "How many singers do we have?");
    assert_eq!(rows[0].question_pt, "Quantos cantores nós temos?");
    let back = corpus_from_pairs(&rows, OriginFile::Dev, "pairs.csv");
    assert_eq!(back.records, m.records);

    let only_en = pair_rows(&english());
    assert!(only_en.iter().all(|r| r.question_pt.is_empty()));
    assert_eq!(corpus_from_pairs(&only_en, OriginFile::Dev, "x").records, english().records);
}

#[test]
fn validate_catches_bad_records() {
    let mut c = english();
    c.records[1].id = c.records[0].id.clone();
    assert!(matches!(c.validate(), Err(CorpusError::DuplicateId(_))));
    let mut c = english();
    c.records[0].question = "  ".into();
    assert!(matches!(c.validate(), Err(CorpusError::EmptyQuestion(_))));
    let mut c = english();
    c.records[0].status = Status::Revised;
    assert!(matches!(c.validate(), Err(CorpusError::EnglishNotOriginal(_))));
}

#[test]
fn names_and_parsing() {
    assert_eq!(ExampleRecord::make_id(&OriginFile::TrainSpider, 7), "train_spider-7");
    assert_eq!(OriginFile::from_stem("train_others"), OriginFile::TrainOthers);
    assert_eq!(OriginFile::from_stem("custom").name(), "custom");
    for s in Status::ALL {
        assert_eq!(Status::parse(s.name()), Some(s));
    }
    assert_eq!(Language::parse("PT"), Some(Language::Pt));
    assert_eq!(Language::parse("fr"), None);
    let h = portuguese().status_histogram();
    assert_eq!(h.get(&Status::MachineTranslated), Some(&3));
}
