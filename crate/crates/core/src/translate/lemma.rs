use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::corpus::Language;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LemmaError {
    #[error("unknown language {0}")]
    UnknownLanguage(String),
    #[error("line {line}: expected `surface<TAB>lemma`")]
    MalformedLine { line: usize },
}

const EN_TSV: &str = include_str!("../../data/lemmas/en.tsv");
const PT_TSV: &str = include_str!("../../data/lemmas/pt.tsv");
const PT_EN_TSV: &str = include_str!("../../data/lemmas/pt_en.tsv");

/// Parses `surface<TAB>lemma` lines. Blank lines and `#` comments are skipped.
pub fn parse_tsv(text: &str) -> Result<BTreeMap<String, String>, LemmaError> {
    let mut map = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let (surface, lemma) = line.split_once('\t').ok_or(LemmaError::MalformedLine { line: i + 1 })?;
        let (surface, lemma) = (surface.trim(), lemma.trim());
        if surface.is_empty() || lemma.is_empty() {
            return Err(LemmaError::MalformedLine { line: i + 1 });
        }
        map.insert(surface.to_lowercase(), lemma.to_lowercase());
    }
    Ok(map)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LemmaDictionary {
    maps: BTreeMap<Language, BTreeMap<String, String>>,
}

impl LemmaDictionary {
    /// The small English and Portuguese dictionaries shipped with the crate.
    pub fn builtin() -> LemmaDictionary {
        let mut d = LemmaDictionary::default();
        d.insert(Language::En, parse_tsv(EN_TSV).expect("builtin en dictionary"));
        d.insert(Language::Pt, parse_tsv(PT_TSV).expect("builtin pt dictionary"));
        d
    }

    /// Adds entries for `lang`, replacing existing ones. Chains such as
    /// a→b, b→c are collapsed so every lemma maps to itself.
    pub fn insert(&mut self, lang: Language, entries: BTreeMap<String, String>) {
        let map = self.maps.entry(lang).or_default();
        map.extend(entries);
        let keys: Vec<String> = map.keys().cloned().collect();
        for k in keys {
            let mut target = map[&k].clone();
            let mut steps = 0;
            while let Some(next) = map.get(&target) {
                if *next == target || steps > map.len() {
                    break;
                }
                target = next.clone();
                steps += 1;
            }
            map.insert(k, target);
        }
        // a lemma that is also a surface form must map to itself
        let lemmas: Vec<String> = map.values().cloned().collect();
        for l in lemmas {
            if map.get(&l).is_some_and(|t| *t != l) {
                map.insert(l.clone(), l);
            }
        }
    }

    pub fn len(&self, lang: Language) -> usize {
        self.maps.get(&lang).map_or(0, |m| m.len())
    }

    /// Lowercases `token` and looks it up; unknown words are their own lemma.
    pub fn lemmatize(&self, token: &str, lang: Language) -> String {
        let lower = token.to_lowercase();
        match self.maps.get(&lang).and_then(|m| m.get(&lower)) {
            Some(l) => l.clone(),
            None => lower,
        }
    }

    /// [`lemmatize`](Self::lemmatize) with the language given as a code.
    pub fn lemmatize_code(&self, token: &str, lang: &str) -> Result<String, LemmaError> {
        let lang = Language::parse(lang).ok_or_else(|| LemmaError::UnknownLanguage(String::from(lang)))?;
        Ok(self.lemmatize(token, lang))
    }
}

/// Word-to-word translation used to align Portuguese lemmas with English
/// schema names.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BilingualDictionary {
    pub pt_to_en: BTreeMap<String, Vec<String>>,
}

impl BilingualDictionary {
    pub fn builtin() -> BilingualDictionary {
        BilingualDictionary::from_tsv(PT_EN_TSV).expect("builtin pt-en dictionary")
    }

    /// `pt<TAB>en` lines; a word may have several lines.
    pub fn from_tsv(text: &str) -> Result<BilingualDictionary, LemmaError> {
        let mut pt_to_en: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (pt, en) = line.split_once('\t').ok_or(LemmaError::MalformedLine { line: i + 1 })?;
            let slot = pt_to_en.entry(pt.trim().to_lowercase()).or_default();
            let en = en.trim().to_lowercase();
            if !slot.contains(&en) {
                slot.push(en);
            }
        }
        Ok(BilingualDictionary { pt_to_en })
    }

    pub fn translations(&self, pt_lemma: &str) -> &[String] {
        self.pt_to_en.get(pt_lemma).map_or(&[], |v| v.as_slice())
    }
}
