use std::collections::BTreeMap;

use proptest::prelude::*;
use proptest::sample::subsequence;
use proptest::test_runner::TestRunner;
use textsql_core::corpus::*;
use textsql_core::esm::{exact_set_match, EvalMode};
use textsql_core::review::{ReviewState, RevisionRequest};
use textsql_core::schema::parse_tables_json;
use textsql_core::sql::{canonicalize, parse_query, render};
use textsql_core::translate::{protect_or_passthrough, LemmaDictionary, PlaceholderStyle};
use textsql_core::{DbSchema, SchemaCatalog};

const TABLES: &str = include_str!("../fixtures/tables.json");

const TEXT_COLS: [&str; 3] = ["name", "country", "song_name"];
const NUM_COLS: [&str; 3] = ["age", "singer_id", "song_release_year"];
const AGGS: [&str; 5] = ["max", "min", "avg", "sum", "count"];
const OPS: [&str; 6] = ["=", ">", "<", ">=", "<=", "!="];
const WORDS: [&str; 6] = ["France", "Netherlands", "Joe Sharp", "Love", "United States", "Rose White"];

fn catalog() -> &'static SchemaCatalog {
    static CAT: std::sync::OnceLock<SchemaCatalog> = std::sync::OnceLock::new();
    CAT.get_or_init(|| parse_tables_json(TABLES).unwrap())
}

fn schema() -> &'static DbSchema {
    catalog().get("concert_singer").unwrap()
}

#[derive(Debug, Clone)]
struct Cond {
    column: &'static str,
    op: &'static str,
    value: String,
}

#[derive(Debug, Clone)]
struct Query {
    select: Vec<(Option<&'static str>, &'static str)>,
    conds: Vec<Cond>,
    order: Vec<&'static str>,
    desc: bool,
    limit: Option<u32>,
}

fn cond() -> impl Strategy<Value = Cond> {
    prop_oneof![
        (prop::sample::select(&TEXT_COLS[..]), prop::sample::select(&WORDS[..]), any::<bool>()).prop_map(
            |(column, w, like)| Cond {
                column,
                op: if like { "LIKE" } else { "=" },
                value: if like { format!("'%{w}%'") } else { format!("'{w}'") },
            }
        ),
        (prop::sample::select(&NUM_COLS[..]), prop::sample::select(&OPS[..]), 0u32..3000)
            .prop_map(|(column, op, n)| Cond { column, op, value: n.to_string() }),
    ]
}

fn query() -> impl Strategy<Value = Query> {
    let all_cols: Vec<&'static str> = TEXT_COLS.iter().chain(&NUM_COLS).copied().collect();
    (
        subsequence(all_cols.clone(), 1..=3).prop_shuffle(),
        prop::collection::vec(prop::option::of(prop::sample::select(&AGGS[..])), 3),
        prop::collection::vec(cond(), 0..=3),
        subsequence(all_cols, 0..=2),
        any::<bool>(),
        prop::option::of(1u32..20),
    )
        .prop_map(|(cols, aggs, conds, order, desc, limit)| {
            let mut seen = std::collections::BTreeSet::new();
            let conds = conds.into_iter().filter(|c| seen.insert(c.column)).collect();
            let select = cols.into_iter().zip(aggs).map(|(c, a)| (a, c)).collect();
            Query { select, conds, order, desc, limit }
        })
}

#[derive(Debug, Clone, Copy, Default)]
struct Variant {
    upper: bool,
    rotate_select: usize,
    rotate_conds: usize,
    swap_order: bool,
}

impl Query {
    fn sql(&self, v: Variant) -> String {
        let kw = |s: &str| if v.upper { s.to_uppercase() } else { s.to_lowercase() };
        let id = |s: &str| if v.upper { s.to_uppercase() } else { s.to_string() };
        let mut sel = self.select.clone();
        let n = sel.len();
        sel.rotate_left(v.rotate_select % n);
        let items: Vec<String> = sel
            .iter()
            .map(|(agg, c)| match agg {
                Some(a) => format!("{}({})", kw(a), id(c)),
                None => id(c),
            })
            .collect();
        let mut sql = format!("{} {} {} {}", kw("select"), items.join(", "), kw("from"), id("singer"));
        if !self.conds.is_empty() {
            let mut conds = self.conds.clone();
            let n = conds.len();
            conds.rotate_left(v.rotate_conds % n);
            let parts: Vec<String> =
                conds.iter().map(|c| format!("{} {} {}", id(c.column), kw(c.op), c.value)).collect();
            sql += &format!(" {} {}", kw("where"), parts.join(&format!(" {} ", kw("and"))));
        }
        if !self.order.is_empty() {
            let mut order = self.order.clone();
            if v.swap_order {
                order.reverse();
            }
            let cols: Vec<String> = order.iter().map(|c| id(c)).collect();
            sql += &format!(" {} {}", kw("order by"), cols.join(", "));
            if self.desc {
                sql += &format!(" {}", kw("desc"));
            }
        }
        if let Some(l) = self.limit {
            sql += &format!(" {} {l}", kw("limit"));
        }
        sql
    }

    fn with_other_literals(&self) -> Query {
        let mut q = self.clone();
        for c in &mut q.conds {
            c.value = if c.value.starts_with('\'') { "'Somewhere Else'".into() } else { "424242".into() };
        }
        q
    }
}

fn esm(gold: &str, pred: &str, mode: EvalMode) -> bool {
    exact_set_match(gold, pred, schema(), mode).unwrap().matched
}

pub const CASES: u32 = 1000;

fn check<S: Strategy>(strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    let config = ProptestConfig { cases: CASES, failure_persistence: None, ..ProptestConfig::default() };
    TestRunner::new(config).run(&strategy, test).map_err(|e| e.to_string())
}

pub fn parse_render_round_trip() -> Result<(), String> {
    check((query(), any::<bool>()), |(q, upper)| {
        let ast = parse_query(&q.sql(Variant { upper, ..Variant::default() })).unwrap();
        prop_assert_eq!(parse_query(&render(&ast)).unwrap(), ast);
        Ok(())
    })
}

pub fn canonicalize_is_idempotent() -> Result<(), String> {
    check(query(), |q| {
        let c = canonicalize(&parse_query(&q.sql(Variant::default())).unwrap(), schema()).unwrap();
        prop_assert_eq!(canonicalize(&c, schema()).unwrap(), c);
        Ok(())
    })
}

pub fn canonical_form_ignores_case() -> Result<(), String> {
    check(query(), |q| {
        let lower = canonicalize(&parse_query(&q.sql(Variant::default())).unwrap(), schema()).unwrap();
        let upper = canonicalize(&parse_query(&q.sql(Variant { upper: true, ..Variant::default() })).unwrap(), schema())
            .unwrap();
        prop_assert_eq!(lower, upper);
        Ok(())
    })
}

pub fn esm_is_reflexive() -> Result<(), String> {
    check(query(), |q| {
        let s = q.sql(Variant::default());
        prop_assert!(esm(&s, &s, EvalMode::WithoutValues));
        prop_assert!(esm(&s, &s, EvalMode::WithValues));
        Ok(())
    })
}

pub fn esm_is_symmetric() -> Result<(), String> {
    check((query(), query()), |(a, b)| {
        let (a, b) = (a.sql(Variant::default()), b.sql(Variant::default()));
        for mode in [EvalMode::WithoutValues, EvalMode::WithValues] {
            prop_assert_eq!(esm(&a, &b, mode), esm(&b, &a, mode));
        }
        Ok(())
    })
}

pub fn esm_ignores_select_and_conjunct_order() -> Result<(), String> {
    check((query(), 0usize..3, 0usize..3, any::<bool>()), |(q, rs, rc, upper)| {
        let gold = q.sql(Variant::default());
        let pred = q.sql(Variant { upper, rotate_select: rs, rotate_conds: rc, swap_order: false });
        prop_assert!(esm(&gold, &pred, EvalMode::WithValues));
        Ok(())
    })
}

pub fn esm_sees_order_by_swaps() -> Result<(), String> {
    check((query(), subsequence(TEXT_COLS.iter().chain(&NUM_COLS).copied().collect::<Vec<_>>(), 2)), |(mut q, pair)| {
        q.order = pair;
        let gold = q.sql(Variant::default());
        let pred = q.sql(Variant { swap_order: true, ..Variant::default() });
        prop_assert!(!esm(&gold, &pred, EvalMode::WithoutValues));
        Ok(())
    })
}

pub fn without_values_ignores_literals() -> Result<(), String> {
    check(query(), |q| {
        let gold = q.sql(Variant::default());
        let pred = q.with_other_literals().sql(Variant::default());
        prop_assert!(esm(&gold, &pred, EvalMode::WithoutValues));
        Ok(())
    })
}

pub fn protect_then_restore_is_identity() -> Result<(), String> {
    check("[a-zA-Z ',\"?⟨V0⟩é]{0,40}", |s| {
        let style = PlaceholderStyle::default();
        let (p, _) = protect_or_passthrough(&s, &style);
        prop_assert_eq!(p.restore(&style).unwrap(), s);
        Ok(())
    })
}

pub fn lemmatize_is_idempotent() -> Result<(), String> {
    check(("[a-zà-ú]{1,12}", any::<prop::sample::Index>(), any::<bool>()), |(w, pick, pt)| {
        let d = LemmaDictionary::builtin();
        let lang = if pt { Language::Pt } else { Language::En };
        let words = ["cantores", "músicas", "singers", "names", "nomes", "média", "songs", "countries"];
        for word in [w.as_str(), words[pick.index(words.len())]] {
            let once = d.lemmatize(word, lang);
            prop_assert_eq!(d.lemmatize(&once, lang), once);
        }
        Ok(())
    })
}

pub fn journal_replay_is_deterministic() -> Result<(), String> {
    check(prop::collection::vec((0usize..4, "[a-zçãé ]{1,20}", any::<bool>()), 0..20), |edits| {
        let records = (0..4)
            .map(|i| ExampleRecord {
                id: format!("pt/dev-{i}"),
                db_id: "concert_singer".into(),
                question: format!("pergunta {i}"),
                language: Language::Pt,
                sql: "SELECT count(*) FROM singer".into(),
                origin_file: OriginFile::Dev,
                status: Status::MachineTranslated,
                extra: BTreeMap::new(),
            })
            .collect();
        let base = Corpus::new(records, "p");
        let mut live = ReviewState::new(base.clone());
        let mut journal = Vec::new();
        for (i, q, approve) in edits {
            let req = RevisionRequest {
                question: q,
                status: if approve { Status::Approved } else { Status::Revised },
                reviewer: String::new(),
                previous_question: None,
            };
            if let Ok(e) = live.prepare(&format!("pt/dev-{i}"), &req, "2026-01-01T00:00:00Z") {
                live.apply(&e).unwrap();
                journal.push(e);
            }
        }
        let a = ReviewState::replay(base.clone(), &journal).unwrap();
        let b = ReviewState::replay(base, &journal).unwrap();
        prop_assert_eq!(&a, &live);
        prop_assert_eq!(a, b);
        Ok(())
    })
}

pub type Property = (&'static str, fn() -> Result<(), String>);

pub const ALL: [Property; 11] = [
    ("parse_render_round_trip", parse_render_round_trip),
    ("canonicalize_is_idempotent", canonicalize_is_idempotent),
    ("canonical_form_ignores_case", canonical_form_ignores_case),
    ("esm_is_reflexive", esm_is_reflexive),
    ("esm_is_symmetric", esm_is_symmetric),
    ("esm_ignores_select_and_conjunct_order", esm_ignores_select_and_conjunct_order),
    ("esm_sees_order_by_swaps", esm_sees_order_by_swaps),
    ("without_values_ignores_literals", without_values_ignores_literals),
    ("protect_then_restore_is_identity", protect_then_restore_is_identity),
    ("lemmatize_is_idempotent", lemmatize_is_idempotent),
    ("journal_replay_is_deterministic", journal_replay_is_deterministic),
];
