//! The Spider SQL subset: tokens, syntax tree, parser, renderer and
//! canonical form.

pub mod ast;
pub mod canon;
pub mod parser;
pub mod render;
pub mod token;

pub use ast::*;
pub use canon::{canonicalize, canonicalize_with, strip_values, CanonError, ColumnResolution};
pub use parser::{parse_query, ParseError};
pub use render::{render, render_with, KeywordCase};
pub use token::{tokenize, Token, TokenKind, TokenizeError};
