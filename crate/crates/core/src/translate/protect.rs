use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

/// Marker pair around a placeholder index, `⟨V0⟩` by default.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaceholderStyle {
    pub open: String,
    pub close: String,
}

impl Default for PlaceholderStyle {
    fn default() -> Self {
        PlaceholderStyle { open: String::from("⟨V"), close: String::from("⟩") }
    }
}

impl PlaceholderStyle {
    pub fn placeholder(&self, n: usize) -> String {
        format!("{}{}{}", self.open, n, self.close)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProtectedQuestion {
    pub template: String,
    pub literals: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProtectError {
    #[error("unbalanced quote at byte {0}")]
    UnbalancedQuotes(usize),
    #[error("question already contains the placeholder marker")]
    MarkerInText,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RestoreError {
    #[error("placeholder {0} is missing from the translation")]
    PlaceholderLost(usize),
    #[error("placeholder {0} appears more than once in the translation")]
    PlaceholderDuplicated(usize),
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric()
}

/// Replaces every quoted span with a placeholder, keeping the quotes.
///
/// A single quote between two letters (`singer's`) or right after a letter is
/// an apostrophe, not an opening quote.
pub fn protect_literals_with(question: &str, style: &PlaceholderStyle) -> Result<ProtectedQuestion, ProtectError> {
    if question.contains(style.open.as_str()) {
        return Err(ProtectError::MarkerInText);
    }
    let mut template = String::with_capacity(question.len());
    let mut literals = Vec::new();
    let mut prev: Option<char> = None;
    let mut iter = question.char_indices().peekable();
    while let Some((i, c)) = iter.next() {
        let opens = c == '"' || (c == '\'' && !prev.is_some_and(is_word_char));
        if !opens {
            template.push(c);
            prev = Some(c);
            continue;
        }
        let body_start = i + c.len_utf8();
        let close = find_close(question, body_start, c).ok_or(ProtectError::UnbalancedQuotes(i))?;
        let literal = &question[body_start..close];
        template.push(c);
        template.push_str(&style.placeholder(literals.len()));
        template.push(c);
        literals.push(String::from(literal));
        while iter.peek().is_some_and(|&(j, _)| j <= close) {
            iter.next();
        }
        prev = Some(c);
    }
    Ok(ProtectedQuestion { template, literals })
}

pub fn protect_literals(question: &str) -> Result<ProtectedQuestion, ProtectError> {
    protect_literals_with(question, &PlaceholderStyle::default())
}

/// Like [`protect_literals_with`], but an unprotectable question passes
/// through whole, with the problem returned as a warning.
pub fn protect_or_passthrough(question: &str, style: &PlaceholderStyle) -> (ProtectedQuestion, Option<ProtectError>) {
    match protect_literals_with(question, style) {
        Ok(p) => (p, None),
        Err(e) => (ProtectedQuestion { template: String::from(question), literals: Vec::new() }, Some(e)),
    }
}

fn find_close(text: &str, from: usize, quote: char) -> Option<usize> {
    let mut chars = text[from..].char_indices().peekable();
    while let Some((off, c)) = chars.next() {
        if c != quote {
            continue;
        }
        if quote == '\'' {
            // an apostrophe inside the quoted span, as in 'O'Brien'
            let next = chars.peek().map(|&(_, n)| n);
            let before = text[..from + off].chars().next_back();
            if before.is_some_and(is_word_char) && next.is_some_and(is_word_char) {
                continue;
            }
        }
        return Some(from + off);
    }
    None
}

/// Puts the literals back in place of their placeholders.
pub fn restore_literals_with(
    translated: &str,
    literals: &[String],
    style: &PlaceholderStyle,
) -> Result<String, RestoreError> {
    let mut out = String::from(translated);
    for (n, lit) in literals.iter().enumerate() {
        let ph = style.placeholder(n);
        match out.matches(ph.as_str()).count() {
            0 => return Err(RestoreError::PlaceholderLost(n)),
            1 => {}
            _ => return Err(RestoreError::PlaceholderDuplicated(n)),
        }
        out = out.replacen(ph.as_str(), lit, 1);
    }
    Ok(out)
}

pub fn restore_literals(translated: &str, literals: &[String]) -> Result<String, RestoreError> {
    restore_literals_with(translated, literals, &PlaceholderStyle::default())
}

impl ProtectedQuestion {
    pub fn restore(&self, style: &PlaceholderStyle) -> Result<String, RestoreError> {
        restore_literals_with(&self.template, &self.literals, style)
    }
}
