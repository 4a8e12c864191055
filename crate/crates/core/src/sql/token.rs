use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Range;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenKind {
    Keyword,
    Identifier,
    Number,
    String,
    Operator,
    Punctuation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    pub span: Range<usize>,
}

impl Token {
    /// Case-insensitive keyword test.
    pub fn is_keyword(&self, kw: &str) -> bool {
        self.kind == TokenKind::Keyword && self.text.eq_ignore_ascii_case(kw)
    }

    pub fn is_symbol(&self, sym: &str) -> bool {
        matches!(self.kind, TokenKind::Operator | TokenKind::Punctuation) && self.text == sym
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TokenizeError {
    #[error("unterminated string literal starting at byte {0}")]
    UnterminatedString(usize),
    #[error("illegal character at byte {0}")]
    IllegalCharacter(usize),
}

const KEYWORDS: &[&str] = &[
    "select", "from", "where", "group", "by", "having", "order", "asc", "desc", "limit", "join",
    "on", "as", "and", "or", "not", "in", "between", "like", "is", "null", "distinct",
    "intersect", "union", "except", "all", "count", "max", "min", "sum", "avg", "exists", "inner",
    "left", "right", "outer", "full", "cross", "natural", "using", "case", "when", "then", "else",
    "end", "cast", "with", "insert", "update", "delete", "create", "drop", "alter", "into",
    "values", "set", "offset",
];

pub fn is_keyword(word: &str) -> bool {
    KEYWORDS.iter().any(|k| k.eq_ignore_ascii_case(word))
}

fn is_ident_start(c: char) -> bool {
    c == '_' || c.is_alphabetic()
}

fn is_ident_char(c: char) -> bool {
    c == '_' || c.is_alphanumeric()
}

/// Splits SQL text into tokens. Whitespace is dropped, but spans index into
/// the original text so the gaps can always be recovered.
pub fn tokenize(text: &str) -> Result<Vec<Token>, TokenizeError> {
    let mut tokens = Vec::new();
    let mut chars = text.char_indices().peekable();

    while let Some(&(start, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let kind;
        let mut end;
        if c == '\'' || c == '"' || c == '`' {
            chars.next();
            let mut close = None;
            while let Some((i, d)) = chars.next() {
                if d == c {
                    // a doubled quote is an escaped quote
                    if matches!(chars.peek(), Some(&(_, e)) if e == c) {
                        chars.next();
                        continue;
                    }
                    close = Some(i + 1);
                    break;
                }
            }
            end = close.ok_or(TokenizeError::UnterminatedString(start))?;
            kind = if c == '`' { TokenKind::Identifier } else { TokenKind::String };
        } else if c.is_ascii_digit() || (c == '.' && next_is_digit(text, start + 1)) {
            end = consume_while(&mut chars, |d| d.is_ascii_digit() || d == '.');
            let mut k = TokenKind::Number;
            // identifiers such as 18_49_rating_share start with digits
            if matches!(chars.peek(), Some(&(_, d)) if is_ident_char(d)) {
                end = consume_while(&mut chars, is_ident_char);
                k = TokenKind::Identifier;
            }
            kind = k;
        } else if is_ident_start(c) {
            end = consume_while(&mut chars, is_ident_char);
            kind = if is_keyword(&text[start..end]) {
                TokenKind::Keyword
            } else {
                TokenKind::Identifier
            };
        } else {
            chars.next();
            end = start + c.len_utf8();
            kind = match c {
                '(' | ')' | ',' | '.' | ';' => TokenKind::Punctuation,
                '+' | '-' | '*' | '/' | '%' | '=' => TokenKind::Operator,
                '<' | '>' | '!' => {
                    if let Some(&(_, d)) = chars.peek() {
                        if d == '=' || (c == '<' && d == '>') {
                            chars.next();
                            end += 1;
                        }
                    }
                    if c == '!' && end == start + 1 {
                        return Err(TokenizeError::IllegalCharacter(start));
                    }
                    TokenKind::Operator
                }
                _ => return Err(TokenizeError::IllegalCharacter(start)),
            };
        }
        tokens.push(Token { kind, text: String::from(&text[start..end]), span: start..end });
    }
    Ok(tokens)
}

fn next_is_digit(text: &str, at: usize) -> bool {
    text.as_bytes().get(at).is_some_and(|b| b.is_ascii_digit())
}

fn consume_while<I, F>(chars: &mut core::iter::Peekable<I>, pred: F) -> usize
where
    I: Iterator<Item = (usize, char)>,
    F: Fn(char) -> bool,
{
    let mut end = 0;
    while let Some(&(i, d)) = chars.peek() {
        if !pred(d) {
            return i;
        }
        end = i + d.len_utf8();
        chars.next();
    }
    end
}
