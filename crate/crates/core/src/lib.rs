//! Core of the multilingual text-to-SQL benchmark toolkit.
//!
//! Everything here is pure and `no_std` (with `alloc`): the Spider-subset SQL
//! parser and canonicalizer, exact-set-match scoring and hardness levels, the
//! corpus model, translation helpers, report building and revision replay.
//! File formats, HTTP and the command line live in the `textsql` crate.

#![no_std]

extern crate alloc;

pub mod corpus;
pub mod esm;
pub mod report;
pub mod review;
pub mod schema;
pub mod sql;
pub mod translate;

pub use corpus::{merge_bilingual, stats, Corpus, CorpusStats, ExampleRecord, Language, OriginFile, Status};
pub use esm::{
    classify_hardness, decompose, evaluate_corpus, exact_set_match, ComponentSets, EvalMode,
    EvalRun, Hardness, MatchResult,
};
pub use schema::{DbSchema, SchemaCatalog};
pub use sql::{canonicalize, parse_query, render, strip_values, tokenize, QueryAst};
