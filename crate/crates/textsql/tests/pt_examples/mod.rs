use std::collections::BTreeMap;
use std::path::Path;

use proptest::prelude::*;
use proptest::test_runner::TestRunner;
use textsql::io::{pairs_csv_string, parse_pairs_csv, parse_spider, spider_json_string};
use textsql_core::{Corpus, ExampleRecord, Language, OriginFile, Status};

pub const PT_EXAMPLES: [&str; 4] = [
    "Quantos cantores nós temos?",
    "Encontre o número de animais de estimação para cada aluno que possui algum animal de estimação e a identificação do aluno.",
    "Quantos voos da United Airlines vão para a cidade de 'Aberdeen'?",
    "Qual é o nome da loja que está contratando o maior número de funcionários?",
];

pub fn record(i: usize, q: &str, lang: Language) -> ExampleRecord {
    ExampleRecord {
        id: ExampleRecord::make_id(&OriginFile::Dev, i),
        db_id: "concert_singer".into(),
        question: q.into(),
        language: lang,
        sql: "SELECT count(*) FROM singer".into(),
        origin_file: OriginFile::Dev,
        status: if lang == Language::En { Status::Original } else { Status::MachineTranslated },
        extra: BTreeMap::new(),
    }
}

pub fn pt_corpus(questions: &[&str]) -> Corpus {
    Corpus::new(questions.iter().enumerate().map(|(i, q)| record(i, q, Language::Pt)).collect(), "dev_pt.json")
}

/// JSON and CSV round trips of the Portuguese examples keep every byte.
pub fn utf8_round_trip_is_byte_exact() -> Result<(), String> {
    let config = ProptestConfig { cases: 1000, failure_persistence: None, ..ProptestConfig::default() };
    let strategy = (prop::collection::vec(0usize..4, 1..6), "[ a-zA-Zçãõéêáíóúâ,\"'\n]{0,20}", any::<bool>());
    TestRunner::new(config)
        .run(&strategy, |(picks, noise, csv)| {
            let questions: Vec<String> = picks.iter().map(|&i| format!("{}{}", PT_EXAMPLES[i], noise.trim())).collect();
            let refs: Vec<&str> = questions.iter().map(String::as_str).collect();
            let c = pt_corpus(&refs);
            let back = if csv {
                parse_pairs_csv(&pairs_csv_string(&c), Path::new("p.csv")).unwrap()
            } else {
                parse_spider(&spider_json_string(&c), Path::new("p.json"), OriginFile::Dev).unwrap()
            };
            for (a, b) in c.records.iter().zip(&back.records) {
                prop_assert_eq!(a.question.as_bytes(), b.question.as_bytes());
                prop_assert_eq!((&a.sql, &a.db_id, a.language), (&b.sql, &b.db_id, b.language));
            }
            prop_assert_eq!(c.len(), back.len());
            Ok(())
        })
        .map_err(|e| e.to_string())
}
