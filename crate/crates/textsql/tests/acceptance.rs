//! One line per acceptance criterion: PASS, FAIL or BLOCKED.
//!
//! Criteria that need the Spider release read it from `SPIDER_DIR` (dev.json,
//! train_spider.json, train_others.json, tables.json). The Portuguese side of
//! the merge comes from `SPIDER_PT_DIR` (same file names) when set. Published
//! prediction files are read from `PREDICTIONS_DIR` as `row1.sql` .. `row7.sql`.
//! With `ACCEPTANCE_REQUIRE_DATA=1` a BLOCKED criterion fails the run.

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use textsql::io::{load_gold, load_predictions, load_schemas, load_spider};
use textsql_core::esm::{classify_hardness, evaluate_corpus, exact_set_match, EvalMode, GoldRecord, Hardness, LevelTally};
use textsql_core::report::Cell;
use textsql_core::schema::parse_tables_json;
use textsql_core::sql::{parse_query, render, strip_values};
use textsql_core::translate::{translate_corpus, IdentityBackend, TranslateOptions};
use textsql_core::{merge_bilingual, stats, Corpus};

#[path = "../../core/tests/props/mod.rs"]
mod props;
mod pt_examples;

const TABLES: &str = include_str!("../../core/tests/fixtures/tables.json");
const PAIRS: &str = include_str!("../../core/tests/fixtures/esm_pairs.tsv");
const GOLDEN: &str = include_str!("../../core/tests/fixtures/esm_golden.tsv");

enum Outcome {
    Pass(String),
    Fail(String),
    Blocked(String),
}

use Outcome::*;

struct Criterion {
    name: &'static str,
    budget: Option<Duration>,
    check: fn() -> Outcome,
}

fn data_dir(var: &str) -> Option<PathBuf> {
    std::env::var_os(var).map(PathBuf::from).filter(|p| p.is_dir())
}

fn spider() -> Result<PathBuf, Outcome> {
    data_dir("SPIDER_DIR").ok_or_else(|| Blocked("data-gated: set SPIDER_DIR to the Spider release".into()))
}

fn levels(t: &LevelTally) -> String {
    format!("{}/{}/{}/{} total {}", t.count[0], t.count[1], t.count[2], t.count[3], t.total())
}

fn hardness_golden_set() -> Outcome {
    let golden = [
        ("SELECT count(*) FROM singer", Hardness::Easy),
        (
            "SELECT count(*), T1.stuid FROM student AS T1 JOIN has_pet AS T2 ON T1.stuid=T2.stuid GROUP BY T1.stuid",
            Hardness::Medium,
        ),
        (
            "SELECT count(*) FROM FLIGHTS AS T1 JOIN AIRPORTS AS T2 ON T1.DestAirport = T2.AirportCode JOIN AIRLINES AS T3 ON T3.uid = T1.Airline WHERE T2.City = \"Aberdeen\" AND T3.Airline = \"United Airlines\"",
            Hardness::Hard,
        ),
        (
            "SELECT t2.name FROM hiring AS t1 JOIN shop AS t2 ON t1.shop_id = t2.shop_id GROUP BY t1.shop_id ORDER BY count(*) DESC LIMIT 1",
            Hardness::Extra,
        ),
    ];
    let got: Vec<Hardness> = golden.iter().map(|(sql, _)| classify_hardness(&parse_query(sql).unwrap())).collect();
    let want: Vec<Hardness> = golden.iter().map(|(_, h)| *h).collect();
    let names = |v: &[Hardness]| v.iter().map(|h| h.name()).collect::<Vec<_>>().join("/");
    if got == want {
        Pass(names(&got))
    } else {
        Fail(format!("got {}, want {}", names(&got), names(&want)))
    }
}

fn classify_all(gold: &[GoldRecord]) -> Result<LevelTally, String> {
    let mut t = LevelTally::default();
    for (i, g) in gold.iter().enumerate() {
        let ast = parse_query(&g.sql).map_err(|e| format!("record {i}: {e}"))?;
        t.add(classify_hardness(&ast), false);
    }
    Ok(t)
}

fn dev_distribution() -> Outcome {
    let dir = match spider() {
        Ok(d) => d,
        Err(o) => return o,
    };
    let gold = match load_gold(&dir.join("dev.json")) {
        Ok(g) => g,
        Err(e) => return Fail(e.to_string()),
    };
    match classify_all(&gold) {
        Ok(t) if t.count == [248, 446, 174, 166] => Pass(levels(&t)),
        Ok(t) => Fail(format!("{} (want 248/446/174/166 total 1034)", levels(&t))),
        Err(e) => Fail(e),
    }
}

fn corpus_statistics() -> Outcome {
    let dir = match spider() {
        Ok(d) => d,
        Err(o) => return o,
    };
    let expected = [("dev.json", 1034, 70_362.0), ("train_others.json", 1659, 80_571.0), ("train_spider.json", 7000, 496_054.0)];
    let mut seen = Vec::new();
    let mut wrong = Vec::new();
    for (file, questions, chars) in expected {
        let s = match load_spider(&dir.join(file)) {
            Ok(c) => stats(&c),
            Err(e) => return Fail(e.to_string()),
        };
        let drift = (s.character_count as f64 - chars).abs() / chars;
        seen.push(format!("{file} {} q {} chars", s.question_count, s.character_count));
        if s.question_count != questions || drift > 0.01 {
            wrong.push(format!("{file}: {} questions, {} chars ({:.2}% off)", s.question_count, s.character_count, drift * 100.0));
        }
    }
    if wrong.is_empty() {
        Pass(seen.join(", "))
    } else {
        Fail(wrong.join("; "))
    }
}

/// The Portuguese file when one is supplied, else the identity translation.
fn portuguese(en: &Corpus, file: &str) -> Result<(Corpus, &'static str), String> {
    if let Some(dir) = data_dir("SPIDER_PT_DIR") {
        return load_spider(&dir.join(file)).map(|c| (c, "pt from SPIDER_PT_DIR")).map_err(|e| e.to_string());
    }
    let opts = TranslateOptions::default();
    let out = translate_corpus(en, &mut IdentityBackend, &opts).map_err(|e| e.to_string())?;
    Ok((out.corpus, "pt side from the identity backend"))
}

fn bilingual_merge() -> Outcome {
    let dir = match spider() {
        Ok(d) => d,
        Err(o) => return o,
    };
    let mut sizes = Vec::new();
    let mut source = "";
    let mut dev_levels = None;
    for file in ["dev.json", "train_spider.json", "train_others.json"] {
        let en = match load_spider(&dir.join(file)) {
            Ok(c) => c,
            Err(e) => return Fail(e.to_string()),
        };
        let (pt, s) = match portuguese(&en, file) {
            Ok(p) => p,
            Err(e) => return Fail(e),
        };
        source = s;
        let merged = match merge_bilingual(&en, &pt) {
            Ok(m) => m,
            Err(e) => return Fail(format!("{file}: {e}")),
        };
        if file == "dev.json" {
            let gold: Vec<GoldRecord> = merged.records.iter().map(|r| GoldRecord::new(&r.sql, &r.db_id)).collect();
            match classify_all(&gold) {
                Ok(t) => dev_levels = Some(t),
                Err(e) => return Fail(e),
            }
        }
        sizes.push(merged.len());
    }
    let dev = dev_levels.expect("dev merged");
    let train = sizes[1] + sizes[2];
    let detail = format!("dev {} ({}), train {train}; {source}", sizes[0], levels(&dev));
    if sizes[0] == 2068 && dev.count == [496, 892, 348, 332] && train == 17_318 {
        Pass(detail)
    } else {
        Fail(format!("{detail} (want dev 2068 with 496/892/348/332, train 17318)"))
    }
}

fn oracle_equivalence() -> Outcome {
    let catalog = parse_tables_json(TABLES).unwrap();
    let pairs: Vec<&str> = PAIRS.lines().skip(1).collect();
    let golden: Vec<&str> = GOLDEN.lines().skip(1).collect();
    if pairs.len() != golden.len() || pairs.len() < 200 {
        return Fail(format!("{} pairs, {} golden labels", pairs.len(), golden.len()));
    }
    let mut disagree = 0;
    for (pair, label) in pairs.iter().zip(&golden) {
        let p: Vec<&str> = pair.split('\t').collect();
        let expected = label.split('\t').nth(3) == Some("1");
        let schema = catalog.get(p[1]).unwrap();
        let got = exact_set_match(p[2], p[3], schema, EvalMode::WithoutValues).map(|m| m.matched);
        if got != Ok(expected) {
            disagree += 1;
        }
    }
    let agree = pairs.len() - disagree;
    let detail = format!("{agree}/{} decisions agree with the reference labels", pairs.len());
    if disagree == 0 {
        Pass(detail)
    } else {
        Fail(detail)
    }
}

fn value_masking() -> Outcome {
    let abilene = "SELECT Count(*) FROM airlines JOIN airports WHERE airports.City = \"Abilene\"";
    let rendered = render(&strip_values(&parse_query(abilene).unwrap()));
    if !rendered.ends_with("airports.City = \"terminal\"") || rendered.contains("Abilene") {
        return Fail(format!("rendered {rendered}"));
    }
    let catalog = parse_tables_json(TABLES).unwrap();
    let schema = catalog.get("flight_2").unwrap();
    let other = abilene.replace("Abilene", "Aberdeen");
    let without = exact_set_match(abilene, &other, schema, EvalMode::WithoutValues).unwrap().matched;
    let with = exact_set_match(abilene, &other, schema, EvalMode::WithValues).unwrap().matched;
    if without && !with {
        Pass(rendered)
    } else {
        Fail(format!("Abilene vs Aberdeen: without-values {without}, with-values {with}"))
    }
}

fn property_suites() -> Outcome {
    let mut all: Vec<props::Property> = props::ALL.to_vec();
    all.push(("utf8_round_trip_is_byte_exact", pt_examples::utf8_round_trip_is_byte_exact));
    let failed: Vec<String> = all.iter().filter_map(|(name, run)| run().err().map(|e| format!("{name}: {e}"))).collect();
    if failed.is_empty() {
        Pass(format!("{} properties x {} cases", all.len(), props::CASES))
    } else {
        Fail(failed.join("; "))
    }
}

/// Per-level accuracies stated for each result row; row 7 runs on the merged
/// bilingual dev set.
const PUBLISHED: [(&str, [f64; 5]); 7] = [
    ("row1", [0.899, 0.744, 0.667, 0.428, 0.718]),
    ("row2", [0.560, 0.422, 0.333, 0.277, 0.417]),
    ("row3", [0.851, 0.679, 0.546, 0.386, 0.651]),
    ("row4", [0.762, 0.599, 0.529, 0.361, 0.588]),
    ("row5", [0.863, 0.682, 0.569, 0.422, 0.664]),
    ("row6", [0.827, 0.596, 0.511, 0.331, 0.595]),
    ("row7", [0.847, 0.639, 0.537, 0.380, 0.630]),
];

fn accuracies(t: &LevelTally) -> [f64; 5] {
    let c = |i: usize| Cell::new(t.count[i], t.matched[i]).accuracy;
    [c(0), c(1), c(2), c(3), Cell::new(t.total(), t.total_matched()).accuracy]
}

fn published_predictions() -> Outcome {
    let dir = match spider() {
        Ok(d) => d,
        Err(o) => return o,
    };
    let Some(preds) = data_dir("PREDICTIONS_DIR") else {
        return Blocked("data-gated: set PREDICTIONS_DIR to the published prediction files".into());
    };
    let gold = match load_gold(&dir.join("dev.json")) {
        Ok(g) => g,
        Err(e) => return Fail(e.to_string()),
    };
    let doubled: Vec<GoldRecord> = gold.iter().chain(&gold).cloned().collect();
    let schemas = match load_schemas(&dir.join("tables.json")) {
        Ok(s) => s,
        Err(e) => return Fail(e.to_string()),
    };
    let mut checked = Vec::new();
    let mut wrong = Vec::new();
    for (row, want) in PUBLISHED {
        let file = preds.join(format!("{row}.sql"));
        if !file.is_file() {
            continue;
        }
        let gold = if row == "row7" { &doubled } else { &gold };
        let run = load_predictions(&file)
            .map_err(|e| e.to_string())
            .and_then(|p| evaluate_corpus(gold, &p, &schemas, EvalMode::WithoutValues).map_err(|e| e.to_string()));
        match run {
            Ok(run) => {
                let got = accuracies(&run.tally());
                if got.iter().zip(want).any(|(g, w)| (g - w).abs() > 0.001 + 1e-9) {
                    wrong.push(format!("{row}: got {got:.3?}, want {want:?}"));
                }
                checked.push(row);
            }
            Err(e) => wrong.push(format!("{row}: {e}")),
        }
    }
    match (checked.is_empty(), wrong.is_empty()) {
        (_, false) => Fail(wrong.join("; ")),
        (true, true) => Blocked(format!("data-gated: no rowN.sql files in {}", display(&preds))),
        (false, true) => Pass(format!("{} within 0.001", checked.join(", "))),
    }
}

fn display(p: &Path) -> String {
    p.display().to_string()
}

const CRITERIA: [Criterion; 8] = [
    Criterion { name: "hardness golden set", budget: Some(Duration::from_secs(1)), check: hardness_golden_set },
    Criterion { name: "dev split distribution", budget: Some(Duration::from_secs(10)), check: dev_distribution },
    Criterion { name: "corpus statistics", budget: Some(Duration::from_secs(5)), check: corpus_statistics },
    Criterion { name: "bilingual merge", budget: None, check: bilingual_merge },
    Criterion { name: "oracle equivalence", budget: Some(Duration::from_secs(5)), check: oracle_equivalence },
    Criterion { name: "value masking", budget: None, check: value_masking },
    Criterion { name: "property suites", budget: Some(Duration::from_secs(60)), check: property_suites },
    Criterion { name: "published predictions", budget: None, check: published_predictions },
];

#[test]
fn acceptance() {
    let require_data = std::env::var("ACCEPTANCE_REQUIRE_DATA").is_ok_and(|v| v == "1");
    let mut failed = Vec::new();
    for c in &CRITERIA {
        let started = Instant::now();
        let mut outcome = (c.check)();
        let took = started.elapsed();
        if let (Pass(detail), Some(budget)) = (&outcome, c.budget) {
            if took > budget {
                outcome = Fail(format!("{detail}; took {took:.2?}, budget {budget:?}"));
            }
        }
        let (tag, detail) = match &outcome {
            Pass(d) => ("PASS", d),
            Fail(d) => ("FAIL", d),
            Blocked(d) => ("BLOCKED", d),
        };
        println!("{tag:<8} {} ({took:.2?}): {detail}", c.name);
        if matches!(outcome, Fail(_)) || (require_data && matches!(outcome, Blocked(_))) {
            failed.push(c.name);
        }
    }
    assert!(failed.is_empty(), "failed: {}", failed.join(", "));
}
