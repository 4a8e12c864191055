use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use super::lemma::{BilingualDictionary, LemmaDictionary};
use crate::corpus::{ExampleRecord, Language};
use crate::schema::DbSchema;
use crate::sql::ast::*;
use crate::sql::{canonicalize_with, parse_query, ColumnResolution, ParseError};

/// Question words that point at each aggregate.
pub const AGGREGATE_WORDS: [(AggFunc, &[&str]); 5] = [
    (AggFunc::Avg, &["avg", "average", "mean"]),
    (AggFunc::Count, &["count", "number", "many"]),
    (AggFunc::Max, &["max", "maximum", "largest", "highest", "most"]),
    (AggFunc::Min, &["min", "minimum", "smallest", "lowest", "least"]),
    (AggFunc::Sum, &["sum", "total"]),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlignedPair {
    /// The word as written in the question.
    pub word: String,
    pub lemma: String,
    /// Schema identifier part or aggregate name it matched.
    pub item: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlignmentReport {
    pub id: String,
    pub language: Language,
    /// Identifier parts of the tables and columns used, plus aggregate names.
    pub gold_items: Vec<String>,
    pub pairs: Vec<AlignedPair>,
    /// Distinct matched items over gold items; 0 when there are none.
    pub score: f64,
}

/// Splits `song_name` or `DestAirport` into lowercase words.
pub fn identifier_parts(ident: &str) -> Vec<String> {
    let mut out = Vec::new();
    for chunk in ident.split(['_', ' ', '-']) {
        let mut cur = String::new();
        let mut prev_lower = false;
        for c in chunk.chars() {
            if c.is_uppercase() && prev_lower && !cur.is_empty() {
                out.push(core::mem::take(&mut cur).to_lowercase());
            }
            prev_lower = c.is_lowercase() || c.is_ascii_digit();
            cur.push(c);
        }
        if !cur.is_empty() {
            out.push(cur.to_lowercase());
        }
    }
    out
}

/// Words of a question, split on anything that is not a letter or digit.
pub fn question_words(question: &str) -> Vec<&str> {
    question.split(|c: char| !c.is_alphanumeric()).filter(|w| !w.is_empty()).collect()
}

struct Collector {
    idents: BTreeSet<String>,
    aggs: BTreeSet<AggFunc>,
}

impl Collector {
    fn unit(&mut self, u: &ColUnit) {
        if u.agg != AggFunc::None {
            self.aggs.insert(u.agg);
        }
        if !u.column.is_star() {
            self.idents.insert(u.column.column.clone());
        }
    }

    fn expr(&mut self, e: &ValueExpr) {
        for u in e.col_units() {
            self.unit(u);
        }
    }

    fn query(&mut self, q: &QueryAst) {
        for s in &q.select {
            if s.agg != AggFunc::None {
                self.aggs.insert(s.agg);
            }
            self.expr(&s.expr);
        }
        for item in &q.from.items {
            if let TableRef::Named { name, .. } = &item.table {
                self.idents.insert(name.clone());
            }
        }
        let trees = q.from.join_conditions().chain(q.where_clause.as_ref()).chain(q.having.as_ref());
        for t in trees {
            for c in t.leaves() {
                self.expr(&c.lhs);
                for op in core::iter::once(&c.rhs).chain(c.rhs2.as_ref()) {
                    if let Operand::Column(u) = op {
                        self.unit(u);
                    }
                }
            }
        }
        for g in &q.group_by {
            if !g.is_star() {
                self.idents.insert(g.column.clone());
            }
        }
        for o in &q.order_by {
            self.expr(&o.expr);
        }
        for sub in q.subqueries() {
            self.query(sub);
        }
    }
}

/// Which question words name a table, column or aggregate of the gold query.
///
/// Question words are lemmatized; Portuguese lemmas are then mapped to
/// English through `bilingual`. Schema identifiers are split into words and
/// lemmatized as English.
pub fn keyword_alignment_report(
    record: &ExampleRecord,
    schema: &DbSchema,
    lemmas: &LemmaDictionary,
    bilingual: &BilingualDictionary,
) -> Result<AlignmentReport, ParseError> {
    let ast = parse_query(&record.sql)?;
    let ast = canonicalize_with(&ast, schema, ColumnResolution::FirstFromTable).unwrap_or(ast);
    let mut c = Collector { idents: BTreeSet::new(), aggs: BTreeSet::new() };
    c.query(&ast);

    let mut items: BTreeSet<String> = BTreeSet::new();
    for ident in &c.idents {
        for part in identifier_parts(ident) {
            items.insert(lemmas.lemmatize(&part, Language::En));
        }
    }
    for a in &c.aggs {
        items.insert(a.name().to_string());
    }

    let mut pairs = Vec::new();
    let mut matched: BTreeSet<String> = BTreeSet::new();
    for word in question_words(&record.question) {
        let lemma = lemmas.lemmatize(word, record.language);
        let mut english: Vec<String> = match record.language {
            Language::En => alloc::vec![lemma.clone()],
            Language::Pt => bilingual.translations(&lemma).to_vec(),
        };
        if record.language == Language::Pt && english.is_empty() {
            english.push(lemma.clone());
        }
        let mut hits: BTreeSet<String> = BTreeSet::new();
        for en in &english {
            if items.contains(en) {
                hits.insert(en.clone());
            }
            for (agg, words) in AGGREGATE_WORDS {
                if words.contains(&en.as_str()) && c.aggs.contains(&agg) {
                    hits.insert(agg.name().to_string());
                }
            }
        }
        for item in hits {
            matched.insert(item.clone());
            pairs.push(AlignedPair { word: word.to_string(), lemma: lemma.clone(), item });
        }
    }

    let score = if items.is_empty() { 0.0 } else { matched.len() as f64 / items.len() as f64 };
    Ok(AlignmentReport {
        id: record.id.clone(),
        language: record.language,
        gold_items: items.into_iter().collect(),
        pairs,
        score,
    })
}
