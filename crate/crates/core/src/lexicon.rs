//! Cue-word tables driving the extraction rules.
//!
//! A lexicon is a UTF-8, line-oriented file of `category<TAB>lemma<TAB>payload`
//! records. All extraction rules are lexicon-driven and language-neutral; the
//! built-in tables are English, and a sample French cue set ships alongside.
//! Cue lookups are by lemma and support multi-word cues ("stop sign",
//! "turn left") as space-separated lemma sequences.

use crate::fd::{EventKind, LightColor, RoadKind, VehicleKind};
use std::collections::{HashMap, HashSet};
use std::path::Path;
use thiserror::Error;

pub const ENGLISH: &str = include_str!("../data/english.lex");
pub const FRENCH_CUES: &str = include_str!("../data/french_cues.lex");

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("cannot read lexicon file: {0}")]
    Io(#[from] std::io::Error),
    #[error("lexicon line {line}: {message}")]
    Record { line: usize, message: String },
}

/// Part-of-speech tags used by the chunker.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PosTag {
    Det,
    Poss,
    Adj,
    Noun,
    Pron,
    Verb,
    /// Gerund / present participle: joins verb groups but never marks passive voice.
    Ger,
    Aux,
    Adv,
    Prep,
    Conj,
    Num,
    Punct,
    Other,
}

impl PosTag {
    fn from_str(s: &str) -> Option<Self> {
        match s {
            "det" => Some(PosTag::Det),
            "poss" => Some(PosTag::Poss),
            "adj" => Some(PosTag::Adj),
            "noun" => Some(PosTag::Noun),
            "pron" => Some(PosTag::Pron),
            "verb" => Some(PosTag::Verb),
            "ger" => Some(PosTag::Ger),
            "aux" => Some(PosTag::Aux),
            "adv" => Some(PosTag::Adv),
            "prep" => Some(PosTag::Prep),
            "conj" => Some(PosTag::Conj),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Person {
    First,
    Third,
}

#[derive(Debug, Clone, Copy)]
pub struct PronounInfo {
    pub person: Person,
    /// Pre-verbal object clitic: joins the following verb group.
    pub clitic: bool,
    pub reflexive: bool,
}

#[derive(Debug, Clone)]
pub struct PosEntry {
    pub tag: PosTag,
    pub lemma: String,
}

/// The kind of static object a cue introduces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum StaticCue {
    Tree,
    Light,
    StopSign,
    Crossing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartCue {
    Front,
    Rear,
    Left,
    Right,
}

/// A cue over one or more lemmas, in token order.
pub type LemmaSeq = Vec<String>;

#[derive(Debug, Default)]
pub struct Lexicon {
    pub collision_verbs: HashSet<String>,
    pub road_cues: Vec<(LemmaSeq, RoadKind)>,
    pub static_cues: Vec<(LemmaSeq, StaticCue)>,
    pub part_cues: HashMap<String, PartCue>,
    pub part_nouns: HashSet<String>,
    pub vehicle_nouns: HashMap<String, VehicleKind>,
    pub collision_nouns: HashSet<String>,
    pub event_verbs: Vec<(LemmaSeq, Vec<EventKind>)>,
    pub pronouns: HashMap<String, PronounInfo>,
    pub agent_preps: HashSet<String>,
    pub passive_aux: HashSet<String>,
    pub color_cues: HashMap<String, LightColor>,
    pub pos: HashMap<String, PosEntry>,
}

impl Lexicon {
    /// The built-in English tables.
    pub fn english() -> Lexicon {
        Lexicon::parse(ENGLISH).expect("built-in english lexicon parses")
    }

    /// The built-in English tables merged with the sample French cues.
    pub fn english_with_french() -> Lexicon {
        let mut lex = Lexicon::english();
        lex.merge_str(FRENCH_CUES).expect("built-in french cues parse");
        lex
    }

    pub fn load(path: &Path) -> Result<Lexicon, LexiconError> {
        Lexicon::parse(&std::fs::read_to_string(path)?)
    }

    pub fn parse(text: &str) -> Result<Lexicon, LexiconError> {
        let mut lex = Lexicon::default();
        lex.merge_str(text)?;
        Ok(lex)
    }

    /// Add the records in `text` on top of the current tables. Later pos
    /// records override earlier ones; cue lists accumulate.
    pub fn merge_str(&mut self, text: &str) -> Result<(), LexiconError> {
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut fields = raw.splitn(3, '\t');
            let category = fields.next().unwrap_or("").trim();
            let lemma = fields.next().unwrap_or("").trim().to_lowercase();
            let payload = fields.next().unwrap_or("").trim().to_lowercase();
            if lemma.is_empty() {
                return Err(LexiconError::Record {
                    line,
                    message: "expected category<TAB>lemma[<TAB>payload]".into(),
                });
            }
            let seq = || lemma.split_whitespace().map(str::to_string).collect::<LemmaSeq>();
            let bad = |message: String| LexiconError::Record { line, message };
            match category {
                "collision_verb" => {
                    self.collision_verbs.insert(lemma.clone());
                }
                "road_cue" => {
                    let kind = RoadKind::from_str(&payload)
                        .ok_or_else(|| bad(format!("unknown road kind `{payload}`")))?;
                    self.road_cues.push((seq(), kind));
                }
                "static_cue" => {
                    let kind = match payload.as_str() {
                        "tree" => StaticCue::Tree,
                        "light" => StaticCue::Light,
                        "stopsign" => StaticCue::StopSign,
                        "crossing" => StaticCue::Crossing,
                        other => return Err(bad(format!("unknown static kind `{other}`"))),
                    };
                    self.static_cues.push((seq(), kind));
                }
                "part_cue" => {
                    let cue = match payload.as_str() {
                        "front" => PartCue::Front,
                        "rear" => PartCue::Rear,
                        "left" => PartCue::Left,
                        "right" => PartCue::Right,
                        other => return Err(bad(format!("unknown part cue `{other}`"))),
                    };
                    self.part_cues.insert(lemma.clone(), cue);
                }
                "part_noun" => {
                    self.part_nouns.insert(lemma.clone());
                }
                "vehicle_noun" => {
                    let kind = if payload.is_empty() {
                        VehicleKind::Car
                    } else {
                        VehicleKind::from_str(&payload)
                            .ok_or_else(|| bad(format!("unknown vehicle kind `{payload}`")))?
                    };
                    self.vehicle_nouns.insert(lemma.clone(), kind);
                }
                "collision_noun" => {
                    self.collision_nouns.insert(lemma.clone());
                }
                "event_verb" => {
                    let mut events = Vec::new();
                    for part in payload.split(',') {
                        let part = part.trim();
                        let ev = EventKind::from_str(part)
                            .ok_or_else(|| bad(format!("unknown event kind `{part}`")))?;
                        events.push(ev);
                    }
                    if events.is_empty() {
                        return Err(bad("event_verb needs a non-empty event list".into()));
                    }
                    self.event_verbs.push((seq(), events));
                }
                "pronoun" => {
                    let mut person = None;
                    let mut clitic = false;
                    let mut reflexive = false;
                    for flag in payload.split(',') {
                        match flag.trim() {
                            "first" => person = Some(Person::First),
                            "third" => person = Some(Person::Third),
                            "clitic" => clitic = true,
                            "reflexive" => reflexive = true,
                            other => return Err(bad(format!("unknown pronoun flag `{other}`"))),
                        }
                    }
                    let person =
                        person.ok_or_else(|| bad("pronoun needs first or third".into()))?;
                    self.pronouns.insert(lemma.clone(), PronounInfo { person, clitic, reflexive });
                }
                "agent_prep" => {
                    self.agent_preps.insert(lemma.clone());
                }
                "passive_aux" => {
                    self.passive_aux.insert(lemma.clone());
                }
                "color_cue" => {
                    let color = LightColor::from_str(&payload)
                        .ok_or_else(|| bad(format!("unknown color `{payload}`")))?;
                    self.color_cues.insert(lemma.clone(), color);
                }
                "pos" => {
                    let (tag, lem) = match payload.split_once(':') {
                        Some((t, l)) => (t, l.to_string()),
                        None => (payload.as_str(), lemma.clone()),
                    };
                    let tag = PosTag::from_str(tag)
                        .ok_or_else(|| bad(format!("unknown pos tag `{tag}`")))?;
                    self.pos.insert(lemma.clone(), PosEntry { tag, lemma: lem });
                }
                other => {
                    return Err(bad(format!("unknown category `{other}`")));
                }
            }
        }
        // Longest cues must win over their prefixes ("stop sign" before "stop").
        self.road_cues.sort_by_key(|(s, _)| std::cmp::Reverse(s.len()));
        self.static_cues.sort_by_key(|(s, _)| std::cmp::Reverse(s.len()));
        self.event_verbs.sort_by_key(|(s, _)| std::cmp::Reverse(s.len()));
        Ok(())
    }

    /// Tag a token form: lexicon lookup, numbers, or Other for the rest.
    pub fn tag(&self, form: &str) -> PosEntry {
        let lower = form.to_lowercase();
        if let Some(entry) = self.pos.get(&lower) {
            return entry.clone();
        }
        if lower.chars().any(|c| c.is_ascii_digit())
            && lower.chars().all(|c| c.is_ascii_digit() || c == '.' || c == ',')
        {
            return PosEntry { tag: PosTag::Num, lemma: lower };
        }
        PosEntry { tag: PosTag::Other, lemma: lower }
    }

    pub fn pronoun(&self, lemma: &str) -> Option<PronounInfo> {
        self.pronouns.get(lemma).copied()
    }

    pub fn is_first_person(&self, lemma: &str) -> bool {
        matches!(self.pronoun(lemma), Some(PronounInfo { person: Person::First, .. }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_english_loads() {
        let lex = Lexicon::english();
        assert!(lex.collision_verbs.contains("collide"));
        assert!(lex.agent_preps.contains("by"));
        assert_eq!(lex.vehicle_nouns.get("truck"), Some(&VehicleKind::Truck));
        assert_eq!(lex.tag("collided").tag, PosTag::Verb);
        assert_eq!(lex.tag("collided").lemma, "collide");
        assert_eq!(lex.tag("40").tag, PosTag::Num);
        assert_eq!(lex.tag("zzzz").tag, PosTag::Other);
    }

    #[test]
    fn french_cues_merge() {
        let lex = Lexicon::english_with_french();
        assert!(lex.collision_verbs.contains("percuter"));
        assert!(lex.agent_preps.contains("par"));
        assert!(lex.pronoun("m'").map(|p| p.clitic && p.reflexive).unwrap_or(false));
    }

    #[test]
    fn multi_word_cues_sort_longest_first() {
        let lex = Lexicon::english();
        let first_static = &lex.static_cues[0].0;
        assert!(first_static.len() >= lex.static_cues.last().unwrap().0.len());
        let turn_left = vec!["turn".to_string(), "left".to_string()];
        let ev = lex.event_verbs.iter().find(|(s, _)| s == &turn_left);
        assert_eq!(ev.map(|(_, e)| e.clone()), Some(vec![EventKind::TurnLeft]));
    }

    #[test]
    fn rejects_bad_records() {
        assert!(Lexicon::parse("road_cue\tfoo\tnotaroad").is_err());
        assert!(Lexicon::parse("nonsense\tx\ty").is_err());
        assert!(Lexicon::parse("event_verb\trestart\tstop,driving_forward").is_ok());
        assert!(Lexicon::parse("event_verb\trestart\tstop,warp_speed").is_err());
    }
}
