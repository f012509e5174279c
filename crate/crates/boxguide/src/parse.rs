//! Rule-based extraction of entity-with-attribute spans from a text prompt.
//!
//! The chunker matches `[determiner]? [attribute]* [noun]` where the noun is
//! resolvable in the lexicon (longest match for multi-word nouns) and
//! attributes are lexicon colors. Overlapping candidates are resolved by
//! preferring the longer span, then the earlier one.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lexicon::Lexicon;

/// One entity-with-attribute phrase, located both in characters and tokens.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntitySpan {
    /// Exact prompt substring at `char_range`.
    pub phrase: String,
    pub head_noun: String,
    /// Attribute words inside the span (space-joined), if any.
    pub attribute: Option<String>,
    /// `[start, end)` character offsets into the prompt.
    pub char_range: (usize, usize),
    /// Strictly increasing indices into the prompt tokenization.
    pub token_indices: Vec<usize>,
}

impl EntitySpan {
    pub fn validate(&self, prompt: &str) -> Result<()> {
        let (s, e) = self.char_range;
        if e > prompt.len() || s >= e {
            return Err(Error::InvalidInput(format!(
                "char_range {:?} out of bounds for prompt of length {}",
                self.char_range,
                prompt.len()
            )));
        }
        if &prompt[s..e] != self.phrase {
            return Err(Error::TokenAlignment { prompt: prompt.to_string(), span: self.phrase.clone() });
        }
        if self.token_indices.is_empty() || !self.token_indices.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(format!(
                "token_indices must be nonempty and strictly increasing, got {:?}",
                self.token_indices
            )));
        }
        Ok(())
    }
}

/// A prompt plus its ordered entity spans.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParsedPrompt {
    pub prompt: String,
    pub spans: Vec<EntitySpan>,
    pub tokenizer_id: String,
}

impl ParsedPrompt {
    pub fn n_entities(&self) -> usize {
        self.spans.len()
    }
}

/// A token with its `[start, end)` character extent in the source text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub text: String,
    pub range: (usize, usize),
}

/// Tokenization with character alignments, as used for denoiser conditioning.
pub trait Tokenizer {
    fn tokenize(&self, text: &str) -> Vec<Token>;
    fn id(&self) -> &str;
}

/// Whitespace tokenizer with punctuation trimmed from token edges. It emits
/// no begin/end specials, so token indices map directly to conditioning keys.
#[derive(Debug, Clone, Default)]
pub struct WhitespaceTokenizer;

impl Tokenizer for WhitespaceTokenizer {
    fn tokenize(&self, text: &str) -> Vec<Token> {
        let mut tokens = Vec::new();
        let bytes = text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            if bytes[i].is_ascii_whitespace() {
                i += 1;
                continue;
            }
            let start = i;
            while i < bytes.len() && !bytes[i].is_ascii_whitespace() {
                i += 1;
            }
            let (mut s, mut e) = (start, i);
            let is_punct = |b: u8| matches!(b, b'.' | b',' | b'!' | b'?' | b';' | b':' | b'"');
            while s < e && is_punct(bytes[s]) {
                s += 1;
            }
            while e > s && is_punct(bytes[e - 1]) {
                e -= 1;
            }
            if s == e {
                // all punctuation: keep the raw chunk
                s = start;
                e = i;
            }
            tokens.push(Token { text: text[s..e].to_string(), range: (s, e) });
        }
        tokens
    }

    fn id(&self) -> &str {
        "whitespace-v1"
    }
}

/// Extract maximal non-overlapping entity spans from `prompt`.
///
/// A prompt containing no resolvable entity noun yields zero spans; the
/// caller decides whether to run uncontrolled generation.
pub fn parse_entities(prompt: &str, lexicon: &Lexicon) -> Result<ParsedPrompt> {
    if prompt.trim().is_empty() {
        return Err(Error::InvalidInput("prompt must be nonempty".into()));
    }
    let tokenizer = WhitespaceTokenizer;
    let tokens = tokenizer.tokenize(prompt);
    let words: Vec<&str> = tokens.iter().map(|t| t.text.as_str()).collect();

    // Candidate spans: one per noun start, extended left over attributes and
    // an optional determiner.
    struct Candidate {
        tok_start: usize,
        tok_end: usize,
        attrs: Vec<String>,
        noun: String,
    }
    let mut candidates = Vec::new();
    for j in 0..words.len() {
        let Some((_, noun_len)) = lexicon.longest_noun_at(&words, j) else {
            continue;
        };
        let mut k = j;
        let mut attrs = Vec::new();
        while k > 0 && lexicon.is_color(words[k - 1]) {
            k -= 1;
            attrs.insert(0, words[k].to_lowercase());
        }
        if k > 0 && lexicon.is_determiner(words[k - 1]) {
            k -= 1;
        }
        candidates.push(Candidate {
            tok_start: k,
            tok_end: j + noun_len,
            attrs,
            noun: words[j..j + noun_len].join(" ").to_lowercase(),
        });
    }

    // Longer span wins, then the earlier one.
    candidates.sort_by(|a, b| {
        (b.tok_end - b.tok_start).cmp(&(a.tok_end - a.tok_start)).then(a.tok_start.cmp(&b.tok_start))
    });
    let mut taken: Vec<(usize, usize)> = Vec::new();
    let mut spans = Vec::new();
    for c in candidates {
        if taken.iter().any(|&(s, e)| c.tok_start < e && s < c.tok_end) {
            continue;
        }
        taken.push((c.tok_start, c.tok_end));
        let char_start = tokens[c.tok_start].range.0;
        let char_end = tokens[c.tok_end - 1].range.1;
        spans.push(EntitySpan {
            phrase: prompt[char_start..char_end].to_string(),
            head_noun: c.noun,
            attribute: if c.attrs.is_empty() { None } else { Some(c.attrs.join(" ")) },
            char_range: (char_start, char_end),
            token_indices: (c.tok_start..c.tok_end).collect(),
        });
    }
    spans.sort_by_key(|s| s.char_range.0);

    Ok(ParsedPrompt { prompt: prompt.to_string(), spans, tokenizer_id: tokenizer.id().to_string() })
}

/// Drop spans whose head noun does not resolve to an entity noun in the
/// lexicon (pronouns, relational nouns, attribute words, and similar).
pub fn filter_spans(spans: &[EntitySpan], lexicon: &Lexicon) -> Vec<EntitySpan> {
    spans
        .iter()
        .filter(|s| lexicon.head_noun_of_phrase(&s.phrase).is_some())
        .cloned()
        .collect()
}

/// Indices of all tokens whose character extent intersects the span's
/// `char_range`, under the denoiser's tokenization.
pub fn token_indices(prompt: &str, span: &EntitySpan, tokenizer: &dyn Tokenizer) -> Result<Vec<usize>> {
    let (s, e) = span.char_range;
    if e > prompt.len() || s >= e || &prompt[s..e] != span.phrase {
        return Err(Error::TokenAlignment { prompt: prompt.to_string(), span: span.phrase.clone() });
    }
    let tokens = tokenizer.tokenize(prompt);
    let indices: Vec<usize> = tokens
        .iter()
        .enumerate()
        .filter(|(_, t)| t.range.0 < e && s < t.range.1)
        .map(|(i, _)| i)
        .collect();
    if indices.is_empty() {
        return Err(Error::TokenAlignment { prompt: prompt.to_string(), span: span.phrase.clone() });
    }
    Ok(indices)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn span_with_phrase(phrase: &str) -> EntitySpan {
        EntitySpan {
            phrase: phrase.to_string(),
            head_noun: String::new(),
            attribute: None,
            char_range: (0, phrase.len()),
            token_indices: vec![0],
        }
    }

    #[test]
    fn parses_two_colored_animals() {
        let lex = Lexicon::builtin();
        let parsed = parse_entities("a black cat and a yellow dog", &lex).unwrap();
        let phrases: Vec<&str> = parsed.spans.iter().map(|s| s.phrase.as_str()).collect();
        assert_eq!(phrases, vec!["a black cat", "a yellow dog"]);
        let heads: Vec<&str> = parsed.spans.iter().map(|s| s.head_noun.as_str()).collect();
        assert_eq!(heads, vec!["cat", "dog"]);
        let attrs: Vec<Option<&str>> = parsed.spans.iter().map(|s| s.attribute.as_deref()).collect();
        assert_eq!(attrs, vec![Some("black"), Some("yellow")]);
        assert_eq!(parsed.spans[0].token_indices, vec![0, 1, 2]);
        assert_eq!(parsed.spans[1].token_indices, vec![4, 5, 6]);
    }

    #[test]
    fn parses_multiword_noun() {
        let lex = Lexicon::builtin();
        let parsed = parse_entities("a red teddy bear is sitting next to a black bird", &lex).unwrap();
        let phrases: Vec<&str> = parsed.spans.iter().map(|s| s.phrase.as_str()).collect();
        assert_eq!(phrases, vec!["a red teddy bear", "a black bird"]);
    }

    #[test]
    fn empty_prompt_rejected() {
        let lex = Lexicon::builtin();
        assert!(parse_entities("", &lex).is_err());
        assert!(parse_entities("   ", &lex).is_err());
    }

    #[test]
    fn no_resolvable_entities_yields_zero_spans() {
        let lex = Lexicon::from_str("animal\tcat\nanimal\tdog\n").unwrap();
        let parsed = parse_entities("sunset over mountains", &lex).unwrap();
        assert_eq!(parsed.n_entities(), 0);
    }

    #[test]
    fn filter_drops_unresolvable_heads() {
        let lex = Lexicon::builtin();
        let spans = vec![span_with_phrase("a man"), span_with_phrase("the back"), span_with_phrase("an elephant")];
        let kept: Vec<String> = filter_spans(&spans, &lex).into_iter().map(|s| s.phrase).collect();
        assert_eq!(kept, vec!["a man", "an elephant"]);
    }

    #[test]
    fn filter_keeps_clock_tower() {
        let lex = Lexicon::builtin();
        let spans = vec![span_with_phrase("a white clock tower"), span_with_phrase("a clock"), span_with_phrase("it 's")];
        let kept: Vec<String> = filter_spans(&spans, &lex).into_iter().map(|s| s.phrase).collect();
        assert_eq!(kept, vec!["a white clock tower", "a clock"]);
    }

    #[test]
    fn filter_empty_input() {
        let lex = Lexicon::builtin();
        assert!(filter_spans(&[], &lex).is_empty());
    }

    #[test]
    fn filter_is_idempotent() {
        let lex = Lexicon::builtin();
        let spans = vec![
            span_with_phrase("many different fruits"),
            span_with_phrase("each other"),
            span_with_phrase("a large red umbrella"),
            span_with_phrase("other colors"),
            span_with_phrase("the center pole"),
        ];
        let once = filter_spans(&spans, &lex);
        let twice = filter_spans(&once, &lex);
        assert_eq!(once, twice);
        let kept: Vec<&str> = once.iter().map(|s| s.phrase.as_str()).collect();
        assert_eq!(kept, vec!["many different fruits", "a large red umbrella"]);
    }

    #[test]
    fn token_indices_whitespace_alignment() {
        let lex = Lexicon::builtin();
        let prompt = "a black cat and a yellow dog";
        let parsed = parse_entities(prompt, &lex).unwrap();
        let tok = WhitespaceTokenizer;
        let idx = token_indices(prompt, &parsed.spans[0], &tok).unwrap();
        assert_eq!(idx, vec![0, 1, 2]);

        // span covering only the final word
        let dog = EntitySpan {
            phrase: "dog".into(),
            head_noun: "dog".into(),
            attribute: None,
            char_range: (25, 28),
            token_indices: vec![6],
        };
        assert_eq!(token_indices(prompt, &dog, &tok).unwrap(), vec![6]);
    }

    #[test]
    fn token_indices_misaligned_span_errors() {
        let tok = WhitespaceTokenizer;
        let bad = EntitySpan {
            phrase: "a blue fox".into(),
            head_noun: "fox".into(),
            attribute: None,
            char_range: (0, 10),
            token_indices: vec![0],
        };
        assert!(token_indices("a black cat sits", &bad, &tok).is_err());
    }

    #[test]
    fn token_round_trip_reproduces_phrase_substrings() {
        let lex = Lexicon::builtin();
        let tok = WhitespaceTokenizer;
        let prompt = "a green bench and an orange suitcase and a pink elephant";
        let parsed = parse_entities(prompt, &lex).unwrap();
        assert_eq!(parsed.n_entities(), 3);
        let tokens = tok.tokenize(prompt);
        for span in &parsed.spans {
            for &i in &span.token_indices {
                assert!(span.phrase.contains(&tokens[i].text));
            }
        }
        // distinct spans have disjoint token indices
        for a in 0..parsed.spans.len() {
            for b in a + 1..parsed.spans.len() {
                for i in &parsed.spans[a].token_indices {
                    assert!(!parsed.spans[b].token_indices.contains(i));
                }
            }
        }
    }

    #[test]
    fn overlap_tiebreak_prefers_longer_then_earlier() {
        // "teddy bear" (len 2 noun) overlaps the bare "bear" candidate.
        let lex = Lexicon::builtin();
        let parsed = parse_entities("a red teddy bear", &lex).unwrap();
        assert_eq!(parsed.spans.len(), 1);
        assert_eq!(parsed.spans[0].phrase, "a red teddy bear");
        assert_eq!(parsed.spans[0].head_noun, "teddy bear");
    }
}
