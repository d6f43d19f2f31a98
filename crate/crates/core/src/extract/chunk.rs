//! Tokenization and finite-state chunking over part-of-speech tags.
//!
//! Sentences split on terminal punctuation. Within a sentence, maximal noun
//! groups (determiner/adjective/noun runs, plus standalone pronouns), verb
//! groups (clitics + auxiliaries + verb, with voice), and prepositional
//! groups (preposition + following noun group) are carved out in one pass.
//! Out-of-vocabulary words degrade to single-token `other` groups, never
//! errors.

use crate::lexicon::{Lexicon, PosTag};

#[derive(Debug, Clone)]
pub struct Token {
    pub form: String,
    pub lemma: String,
    pub tag: PosTag,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKind {
    Noun,
    Verb,
    Prepositional,
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Voice {
    Active,
    Passive,
}

/// A contiguous token span `start..end` within its sentence.
#[derive(Debug, Clone, Copy)]
pub struct Group {
    pub kind: GroupKind,
    pub start: usize,
    pub end: usize,
    /// Verb groups only.
    pub voice: Option<Voice>,
    /// Prepositional groups: index of the first token of the inner noun part.
    pub inner_start: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct Sentence {
    pub tokens: Vec<Token>,
    pub groups: Vec<Group>,
}

impl Sentence {
    pub fn group_tokens(&self, g: &Group) -> &[Token] {
        &self.tokens[g.start..g.end]
    }
}

#[derive(Debug, Clone, Default)]
pub struct ChunkedText {
    pub sentences: Vec<Sentence>,
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '-' || c == '\''
}

/// Split raw text into sentences of word forms. Terminal punctuation (.!?)
/// closes a sentence and is dropped; other punctuation stays as a token.
/// A token with an apostrophe is split after the apostrophe when the prefix
/// (apostrophe included) is a known word form, so French elisions like "m'a"
/// come apart while "didn't" stays whole.
fn split_tokens(text: &str, lex: &Lexicon) -> Vec<Vec<String>> {
    let mut sentences = Vec::new();
    let mut sentence: Vec<String> = Vec::new();
    let mut word = String::new();

    let flush_word = |sentence: &mut Vec<String>, word: &mut String| {
        if word.is_empty() {
            return;
        }
        let mut rest = std::mem::take(word);
        loop {
            if let Some(apos) = rest.find('\'') {
                let (prefix, tail) = rest.split_at(apos + 1);
                if !tail.is_empty() && lex.pos.contains_key(&prefix.to_lowercase()) {
                    sentence.push(prefix.to_string());
                    rest = tail.to_string();
                    continue;
                }
            }
            sentence.push(rest);
            break;
        }
    };

    for c in text.chars() {
        if is_word_char(c) {
            word.push(c);
        } else {
            flush_word(&mut sentence, &mut word);
            if matches!(c, '.' | '!' | '?') {
                if !sentence.is_empty() {
                    sentences.push(std::mem::take(&mut sentence));
                }
            } else if !c.is_whitespace() {
                sentence.push(c.to_string());
            }
        }
    }
    flush_word(&mut sentence, &mut word);
    if !sentence.is_empty() {
        sentences.push(sentence);
    }
    sentences
}

fn tag_tokens(forms: Vec<String>, lex: &Lexicon) -> Vec<Token> {
    forms
        .into_iter()
        .map(|form| {
            if form.chars().all(|c| !is_word_char(c)) {
                let lemma = form.to_lowercase();
                return Token { form, lemma, tag: PosTag::Punct };
            }
            let entry = lex.tag(&form);
            Token { form, lemma: entry.lemma, tag: entry.tag }
        })
        .collect()
}

fn is_single_capital(form: &str) -> bool {
    let mut chars = form.chars();
    matches!((chars.next(), chars.next()), (Some(c), None) if c.is_uppercase())
}

fn chunk_sentence(tokens: Vec<Token>, lex: &Lexicon) -> Sentence {
    let mut groups = Vec::new();
    let n = tokens.len();
    let mut i = 0;

    while i < n {
        let tag = tokens[i].tag;

        // Verb group: [clitic pronouns] (aux | adv)* verb? with trailing advs.
        let clitic_start = tag == PosTag::Pron
            && lex.pronoun(&tokens[i].lemma).map(|p| p.clitic).unwrap_or(false)
            && tokens
                .get(i + 1)
                .map(|t| {
                    matches!(t.tag, PosTag::Aux | PosTag::Verb | PosTag::Ger)
                        || (t.tag == PosTag::Pron
                            && lex.pronoun(&t.lemma).map(|p| p.clitic).unwrap_or(false))
                })
                .unwrap_or(false);
        if clitic_start || matches!(tag, PosTag::Aux | PosTag::Verb | PosTag::Ger) {
            let start = i;
            while i < n
                && tokens[i].tag == PosTag::Pron
                && lex.pronoun(&tokens[i].lemma).map(|p| p.clitic).unwrap_or(false)
            {
                i += 1;
            }
            let mut seen_main = false;
            while i < n {
                match tokens[i].tag {
                    PosTag::Aux if !seen_main => i += 1,
                    PosTag::Adv => i += 1,
                    PosTag::Verb | PosTag::Ger if !seen_main => {
                        seen_main = true;
                        i += 1;
                    }
                    _ => break,
                }
            }
            if i > start {
                groups.push(Group {
                    kind: GroupKind::Verb,
                    start,
                    end: i,
                    voice: Some(Voice::Active),
                    inner_start: None,
                });
                continue;
            }
        }

        // Noun group: (det|poss)? (adj|num|noun)* with at least one noun,
        // absorbing single capital letters after a noun ("vehicle B").
        if matches!(tag, PosTag::Det | PosTag::Poss | PosTag::Adj | PosTag::Num | PosTag::Noun) {
            if let Some(end) = noun_run(&tokens, i) {
                groups.push(Group {
                    kind: GroupKind::Noun,
                    start: i,
                    end,
                    voice: None,
                    inner_start: None,
                });
                i = end;
                continue;
            }
        }

        // Standalone pronoun acts as a noun group.
        if tag == PosTag::Pron {
            groups.push(Group {
                kind: GroupKind::Noun,
                start: i,
                end: i + 1,
                voice: None,
                inner_start: None,
            });
            i += 1;
            continue;
        }

        // Prepositional group: preposition + immediately following noun group
        // or pronoun.
        if tag == PosTag::Prep {
            let inner = i + 1;
            if inner < n {
                if let Some(end) = noun_run(&tokens, inner) {
                    groups.push(Group {
                        kind: GroupKind::Prepositional,
                        start: i,
                        end,
                        voice: None,
                        inner_start: Some(inner),
                    });
                    i = end;
                    continue;
                }
                if tokens[inner].tag == PosTag::Pron {
                    groups.push(Group {
                        kind: GroupKind::Prepositional,
                        start: i,
                        end: inner + 1,
                        voice: None,
                        inner_start: Some(inner),
                    });
                    i = inner + 1;
                    continue;
                }
            }
        }

        groups.push(Group {
            kind: GroupKind::Other,
            start: i,
            end: i + 1,
            voice: None,
            inner_start: None,
        });
        i += 1;
    }

    let mut sentence = Sentence { tokens, groups };
    mark_voice(&mut sentence, lex);
    sentence
}

/// Maximal determiner/adjective/noun run starting at `i`; `None` when the run
/// never reaches a noun. Determiners and possessives only lead.
fn noun_run(tokens: &[Token], i: usize) -> Option<usize> {
    let n = tokens.len();
    let mut j = i;
    let mut seen_noun = false;
    while j < n {
        match tokens[j].tag {
            PosTag::Det | PosTag::Poss if !seen_noun => j += 1,
            PosTag::Adj | PosTag::Num => j += 1,
            PosTag::Noun => {
                seen_noun = true;
                j += 1;
            }
            _ if seen_noun && is_single_capital(&tokens[j].form) => j += 1,
            _ => break,
        }
    }
    if seen_noun {
        Some(j)
    } else {
        None
    }
}

/// A verb group is passive when a passive auxiliary is followed by a plain
/// verb form inside the group, or when an agent-preposition group comes right
/// after it.
fn mark_voice(sentence: &mut Sentence, lex: &Lexicon) {
    let tokens = &sentence.tokens;
    let n_groups = sentence.groups.len();
    for gi in 0..n_groups {
        if sentence.groups[gi].kind != GroupKind::Verb {
            continue;
        }
        let g = sentence.groups[gi];
        let mut aux_at = None;
        let mut passive = false;
        for (idx, t) in tokens.iter().enumerate().take(g.end).skip(g.start) {
            if t.tag == PosTag::Aux && lex.passive_aux.contains(&t.form.to_lowercase()) {
                aux_at.get_or_insert(idx);
            }
            if t.tag == PosTag::Verb {
                if let Some(a) = aux_at {
                    if idx > a {
                        passive = true;
                    }
                }
            }
        }
        if !passive {
            if let Some(next) = sentence.groups.get(gi + 1) {
                if next.kind == GroupKind::Prepositional
                    && lex.agent_preps.contains(&tokens[next.start].lemma)
                {
                    passive = true;
                }
            }
        }
        sentence.groups[gi].voice = Some(if passive { Voice::Passive } else { Voice::Active });
    }
}

/// Lexical analysis plus partial parsing: tokenized sentences segmented into
/// noun, verb, and prepositional groups. Total on any input.
pub fn chunk(text: &str, lex: &Lexicon) -> ChunkedText {
    let sentences = split_tokens(text, lex)
        .into_iter()
        .map(|forms| chunk_sentence(tag_tokens(forms, lex), lex))
        .collect();
    ChunkedText { sentences }
}

/// True when the lemma sequence `seq` matches the tokens starting at `at`.
pub(crate) fn lemmas_match(tokens: &[Token], at: usize, seq: &[String]) -> bool {
    seq.len() <= tokens.len() - at
        && seq.iter().zip(&tokens[at..]).all(|(want, tok)| want == &tok.lemma)
}
