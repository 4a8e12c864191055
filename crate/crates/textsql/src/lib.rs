//! File formats, translation backends, the review service and the
//! `textsql` command line, on top of `textsql-core`.

pub mod cache;
pub mod cli;
pub mod io;
pub mod journal;
pub mod remote;
pub mod service;

use rayon::prelude::*;
use textsql_core::esm::{check_inputs, score_record, EvalError, GoldRecord};
use textsql_core::{EvalMode, EvalRun, SchemaCatalog};

/// [`textsql_core::evaluate_corpus`] with records scored on all cores.
pub fn evaluate_parallel(
    gold: &[GoldRecord],
    pred: &[String],
    schemas: &SchemaCatalog,
    mode: EvalMode,
) -> Result<EvalRun, EvalError> {
    check_inputs(gold, pred, schemas)?;
    let records = gold
        .par_iter()
        .zip(pred.par_iter())
        .enumerate()
        .map(|(i, (g, p))| score_record(i, g, p, schemas.get(&g.db_id).expect("checked"), mode))
        .collect();
    Ok(EvalRun { mode, records })
}
