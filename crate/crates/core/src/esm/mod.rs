//! Exact set match scoring and hardness levels.

pub mod components;
pub mod evaluate;
pub mod hardness;
pub mod matching;

pub use components::{decompose, ComponentSets, DecomposeError, EvalMode, SqlKey};
pub use evaluate::{
    check_inputs, evaluate_corpus, score_record, EvalError, EvalRun, GoldRecord, LevelTally, RecordOutcome,
};
pub use hardness::{classify_hardness, hardness_counts, Hardness, HardnessCounts};
pub use matching::{compare, exact_set_match, match_against, prepare, EsmError, MatchResult, COMPONENTS};
