//! Word lists driving entity parsing: entity nouns (animals and objects),
//! attribute colors, and determiners.
//!
//! File format: UTF-8 text, one entry per line, `category<TAB>word`, with
//! `#` comments and blank lines ignored. Multi-word nouns are supported and
//! matched longest-first.

use std::collections::HashMap;
use std::path::Path;

use crate::error::{Error, Result};

const DEFAULT_LEXICON: &str = include_str!("../assets/default.lex");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Category {
    Animal,
    Object,
    Color,
    Determiner,
}

impl Category {
    fn parse(s: &str) -> Result<Self> {
        match s {
            "animal" => Ok(Self::Animal),
            "object" => Ok(Self::Object),
            "color" => Ok(Self::Color),
            "determiner" => Ok(Self::Determiner),
            other => Err(Error::InvalidInput(format!("unknown lexicon category {other:?}"))),
        }
    }

    pub fn is_entity(self) -> bool {
        matches!(self, Self::Animal | Self::Object)
    }
}

/// Stable identifier of an entity noun; the order of first appearance in the
/// lexicon source. Doubles as the class label in box matching.
pub type NounId = usize;

#[derive(Debug, Clone)]
struct NounEntry {
    words: Vec<String>,
    category: Category,
}

#[derive(Debug, Clone)]
pub struct Lexicon {
    nouns: Vec<NounEntry>,
    /// noun text (space-joined, lowercase) -> id
    noun_index: HashMap<String, NounId>,
    colors: Vec<String>,
    determiners: Vec<String>,
    max_noun_words: usize,
}

impl Lexicon {
    /// The lexicon shipped with the crate: both evaluation vocabularies, the
    /// procedural shape nouns, common detection-class and caption nouns, the
    /// 11 colors, and the determiners.
    pub fn builtin() -> Self {
        Self::from_str(DEFAULT_LEXICON).expect("builtin lexicon parses")
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_str(&text)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn from_str(text: &str) -> Result<Self> {
        let mut lex = Self {
            nouns: Vec::new(),
            noun_index: HashMap::new(),
            colors: Vec::new(),
            determiners: Vec::new(),
            max_noun_words: 1,
        };
        lex.extend_from_str(text)?;
        Ok(lex)
    }

    /// Add entries from another lexicon source. Duplicate entries are ignored.
    pub fn extend_from_str(&mut self, text: &str) -> Result<()> {
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (cat, word) = line.split_once('\t').ok_or_else(|| {
                Error::InvalidInput(format!("lexicon line {} lacks a tab separator: {line:?}", lineno + 1))
            })?;
            let category = Category::parse(cat.trim())?;
            let word = word.trim().to_lowercase();
            if word.is_empty() {
                return Err(Error::InvalidInput(format!("lexicon line {} has an empty word", lineno + 1)));
            }
            match category {
                Category::Animal | Category::Object => {
                    if !self.noun_index.contains_key(&word) {
                        let words: Vec<String> = word.split_whitespace().map(str::to_string).collect();
                        self.max_noun_words = self.max_noun_words.max(words.len());
                        self.noun_index.insert(word.clone(), self.nouns.len());
                        self.nouns.push(NounEntry { words, category });
                    }
                }
                Category::Color => {
                    if !self.colors.iter().any(|c| c == &word) {
                        self.colors.push(word);
                    }
                }
                Category::Determiner => {
                    if !self.determiners.iter().any(|d| d == &word) {
                        self.determiners.push(word);
                    }
                }
            }
        }
        Ok(())
    }

    pub fn colors(&self) -> &[String] {
        &self.colors
    }

    pub fn is_color(&self, word: &str) -> bool {
        let w = word.to_lowercase();
        self.colors.iter().any(|c| c == &w)
    }

    pub fn is_determiner(&self, word: &str) -> bool {
        let w = word.to_lowercase();
        self.determiners.iter().any(|d| d == &w)
    }

    pub fn noun_count(&self) -> usize {
        self.nouns.len()
    }

    pub fn noun_text(&self, id: NounId) -> String {
        self.nouns[id].words.join(" ")
    }

    pub fn noun_category(&self, id: NounId) -> Category {
        self.nouns[id].category
    }

    /// Longest noun beginning at `tokens[start]`, as (id, token length).
    pub fn longest_noun_at(&self, tokens: &[&str], start: usize) -> Option<(NounId, usize)> {
        let max_len = self.max_noun_words.min(tokens.len() - start);
        for len in (1..=max_len).rev() {
            let candidate = tokens[start..start + len].join(" ").to_lowercase();
            if let Some(&id) = self.noun_index.get(&candidate) {
                return Some((id, len));
            }
            if len == 1 {
                if let Some(id) = self.singular_lookup(&candidate) {
                    return Some((id, 1));
                }
            }
        }
        None
    }

    /// Resolve a word or phrase to an entity noun; tries the exact form,
    /// then a naive singular of the final word ("fruits" -> "fruit").
    pub fn resolve_noun(&self, text: &str) -> Option<NounId> {
        let lowered = text.to_lowercase();
        if let Some(&id) = self.noun_index.get(&lowered) {
            return Some(id);
        }
        self.singular_lookup(&lowered)
    }

    fn singular_lookup(&self, word: &str) -> Option<NounId> {
        if let Some(stem) = word.strip_suffix("es") {
            if stem.len() >= 3 && stem.chars().all(|c| c.is_alphabetic() || c == ' ') {
                if let Some(&id) = self.noun_index.get(stem) {
                    return Some(id);
                }
            }
        }
        if let Some(stem) = word.strip_suffix('s') {
            if stem.len() >= 3 && stem.chars().all(|c| c.is_alphabetic() || c == ' ') {
                if let Some(&id) = self.noun_index.get(stem) {
                    return Some(id);
                }
            }
        }
        None
    }

    /// The longest entity noun that ends the phrase, if any. Used to find the
    /// head noun of spans produced by external parsers.
    pub fn head_noun_of_phrase(&self, phrase: &str) -> Option<NounId> {
        let tokens: Vec<&str> = phrase.split_whitespace().collect();
        if tokens.is_empty() {
            return None;
        }
        let max_len = self.max_noun_words.min(tokens.len());
        for len in (1..=max_len).rev() {
            let tail = tokens[tokens.len() - len..].join(" ");
            if let Some(id) = self.resolve_noun(&tail) {
                return Some(id);
            }
        }
        None
    }

    /// All distinct single words across every category; the tokenizer builds
    /// its vocabulary from this.
    pub fn all_words(&self) -> Vec<String> {
        let mut words: Vec<String> = Vec::new();
        let mut push = |w: &str| {
            if !words.iter().any(|x| x == w) {
                words.push(w.to_string());
            }
        };
        for entry in &self.nouns {
            for w in &entry.words {
                push(w);
            }
        }
        for c in &self.colors {
            push(c);
        }
        for d in &self.determiners {
            push(d);
        }
        words
    }
}

impl Default for Lexicon {
    fn default() -> Self {
        Self::builtin()
    }
}
