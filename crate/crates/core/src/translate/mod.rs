//! Question translation with value protection, lemmatization and the
//! keyword alignment diagnostic.

pub mod alignment;
pub mod lemma;
pub mod pipeline;
pub mod protect;

pub use alignment::{keyword_alignment_report, AlignedPair, AlignmentReport};
pub use lemma::{BilingualDictionary, LemmaDictionary, LemmaError};
pub use pipeline::{
    plan_batches, translate_corpus, BackendError, DictionaryBackend, IdentityBackend, PerRecordFailure,
    TranslateError, TranslateOptions, TranslationBackend, TranslationOutcome,
};
pub use protect::{
    protect_literals, protect_literals_with, protect_or_passthrough, restore_literals, restore_literals_with,
    PlaceholderStyle, ProtectError, ProtectedQuestion, RestoreError,
};
