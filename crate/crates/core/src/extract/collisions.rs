//! Collision candidates: a verb, an actor, a victim, and participating parts.
//!
//! For each collision-verb group the voice decides which grammatical relation
//! carries which role: active pairs subject/object with actor/victim, passive
//! pairs subject/agent with victim/actor.

use super::chunk::{ChunkedText, Group, GroupKind, Sentence, Token, Voice};
use crate::fd::VehiclePart;
use crate::lexicon::{Lexicon, PartCue, PosTag, StaticCue};

/// A resolved text span standing for a participant. Owns copies of its
/// tokens so later stages need no chunk access.
#[derive(Debug, Clone)]
pub struct Mention {
    pub sentence: usize,
    pub start: usize,
    pub end: usize,
    pub tokens: Vec<Token>,
}

impl Mention {
    fn from_span(si: usize, sentence: &Sentence, start: usize, end: usize) -> Self {
        Mention { sentence: si, start, end, tokens: sentence.tokens[start..end].to_vec() }
    }

    pub fn text(&self) -> String {
        self.tokens.iter().map(|t| t.form.as_str()).collect::<Vec<_>>().join(" ")
    }
}

/// One collision-verb occurrence with whatever roles could be resolved.
/// Unresolved mentions stay absent; defaults apply later.
#[derive(Debug, Clone)]
pub struct CollisionCandidate {
    pub sentence: usize,
    pub verb_group: usize,
    pub actor: Option<Mention>,
    pub victim: Option<Mention>,
    pub actor_part: VehiclePart,
    pub victim_part: VehiclePart,
}

/// A noun group plus its trailing prepositional complements, e.g.
/// "the metallic protection" + "of a tree". Units are what validity checks
/// and part-cue searches run over.
fn unit_end(sentence: &Sentence, group_index: usize) -> usize {
    let mut end = sentence.groups[group_index].end;
    for g in &sentence.groups[group_index + 1..] {
        if g.kind == GroupKind::Prepositional {
            end = g.end;
        } else {
            break;
        }
    }
    end
}

fn mention_unit(si: usize, sentence: &Sentence, group_index: usize) -> Mention {
    let g = &sentence.groups[group_index];
    let start = g.inner_start.unwrap_or(g.start);
    Mention::from_span(si, sentence, start, unit_end(sentence, group_index))
}

pub(crate) fn has_vehicle_noun(tokens: &[Token], lex: &Lexicon) -> bool {
    tokens.iter().any(|t| lex.vehicle_nouns.contains_key(&t.lemma))
}

pub(crate) fn has_first_person(tokens: &[Token], lex: &Lexicon) -> bool {
    tokens.iter().any(|t| lex.is_first_person(&t.lemma))
}

pub(crate) fn static_cue_in(tokens: &[Token], lex: &Lexicon) -> Option<StaticCue> {
    for i in 0..tokens.len() {
        for (seq, kind) in &lex.static_cues {
            if i + seq.len() <= tokens.len()
                && seq.iter().zip(&tokens[i..]).all(|(want, tok)| want == &tok.lemma)
                && matches!(kind, StaticCue::Tree | StaticCue::Light)
            {
                return Some(*kind);
            }
        }
    }
    None
}

fn is_pronoun_group(tokens: &[Token], lex: &Lexicon) -> bool {
    tokens.len() == 1 && lex.pronoun(&tokens[0].lemma).is_some()
}

/// A valid actor is a vehicle mention or an actor pronoun; a first-person
/// possessive also marks the narrator's vehicle ("my rear fender").
fn is_valid_actor(tokens: &[Token], lex: &Lexicon) -> bool {
    has_vehicle_noun(tokens, lex) || is_pronoun_group(tokens, lex) || has_first_person(tokens, lex)
}

/// Valid victims are vehicles and collidable static objects (trees, lights).
fn is_valid_victim(tokens: &[Token], lex: &Lexicon) -> bool {
    is_valid_actor(tokens, lex) || static_cue_in(tokens, lex).is_some()
}

/// The last noun group before the verb that describes a valid actor.
/// Validity is judged on the bare noun group; the returned mention carries
/// its trailing complements for part extraction.
pub fn find_subject(
    verb: &Group,
    si: usize,
    sentence: &Sentence,
    lex: &Lexicon,
) -> Option<Mention> {
    let mut found = None;
    for (gi, g) in sentence.groups.iter().enumerate() {
        if g.start >= verb.start {
            break;
        }
        if g.kind != GroupKind::Noun {
            continue;
        }
        if is_valid_actor(sentence.group_tokens(g), lex) {
            found = Some(mention_unit(si, sentence, gi));
        }
    }
    found
}

/// For an active verb: the first noun unit after the verb describing a valid
/// victim; failing that, a reflexive or personal pronoun inside the verb
/// group; failing that, the first noun unit after the verb regardless of
/// validity.
pub fn find_object(verb: &Group, si: usize, sentence: &Sentence, lex: &Lexicon) -> Option<Mention> {
    let mut fallback = None;
    let mut prev_end = 0;
    for (gi, g) in sentence.groups.iter().enumerate() {
        if g.start < verb.end {
            continue;
        }
        if !matches!(g.kind, GroupKind::Noun | GroupKind::Prepositional) || g.start < prev_end {
            continue;
        }
        let unit = mention_unit(si, sentence, gi);
        prev_end = unit.end;
        if is_valid_victim(&unit.tokens, lex) {
            return Some(unit);
        }
        if fallback.is_none() {
            fallback = Some(unit);
        }
    }
    for idx in verb.start..verb.end {
        if sentence.tokens[idx].tag == PosTag::Pron {
            return Some(Mention::from_span(si, sentence, idx, idx + 1));
        }
    }
    fallback
}

/// For a passive verb: the valid-actor noun unit inside the first
/// agent-preposition group after the verb.
pub fn find_agent(verb: &Group, si: usize, sentence: &Sentence, lex: &Lexicon) -> Option<Mention> {
    for (gi, g) in sentence.groups.iter().enumerate() {
        if g.start < verb.end || g.kind != GroupKind::Prepositional {
            continue;
        }
        if !lex.agent_preps.contains(&sentence.tokens[g.start].lemma) {
            continue;
        }
        let unit = mention_unit(si, sentence, gi);
        if is_valid_actor(&unit.tokens, lex) {
            return Some(unit);
        }
        return None;
    }
    None
}

/// Map the part cues in a mention to the participating part. Side cues win
/// over front/rear only when the side cue modifies a part noun ("fender on
/// the left side"); for actor mentions without any cue, collision-local
/// phrases in the sentence ("a second frontal collision") are searched.
pub fn extract_part(
    mention: &Mention,
    is_actor: bool,
    sentence: Option<&Sentence>,
    lex: &Lexicon,
) -> VehiclePart {
    let mut cues = part_cues_in(&mention.tokens, lex);
    if cues.is_empty() && is_actor {
        if let Some(s) = sentence {
            cues = collision_local_cues(s, lex);
        }
    }
    resolve_part(&cues)
}

fn part_cues_in(tokens: &[Token], lex: &Lexicon) -> Vec<(PartCue, bool)> {
    let mut out = Vec::new();
    for (i, t) in tokens.iter().enumerate() {
        if let Some(cue) = lex.part_cues.get(&t.lemma) {
            let near_part_noun = tokens
                .iter()
                .enumerate()
                .any(|(j, u)| i.abs_diff(j) <= 2 && lex.part_nouns.contains(&u.lemma));
            out.push((*cue, near_part_noun));
        }
    }
    out
}

/// Part cues adjacent to a collision noun anywhere in the sentence.
fn collision_local_cues(sentence: &Sentence, lex: &Lexicon) -> Vec<(PartCue, bool)> {
    let toks = &sentence.tokens;
    let mut out = Vec::new();
    for (i, t) in toks.iter().enumerate() {
        if lex.part_cues.contains_key(&t.lemma) {
            let near_collision = (i > 0 && lex.collision_nouns.contains(&toks[i - 1].lemma))
                || toks.get(i + 1).map(|u| lex.collision_nouns.contains(&u.lemma)).unwrap_or(false);
            if near_collision {
                out.push((lex.part_cues[&t.lemma], false));
            }
        }
    }
    out
}

fn resolve_part(cues: &[(PartCue, bool)]) -> VehiclePart {
    let side = cues.iter().find(|(c, _)| matches!(c, PartCue::Left | PartCue::Right));
    let front_rear = cues.iter().find(|(c, _)| matches!(c, PartCue::Front | PartCue::Rear));
    let side_modifies_part =
        cues.iter().any(|(c, near)| *near && matches!(c, PartCue::Left | PartCue::Right));
    match (side, front_rear) {
        (Some((c, _)), None) => side_part(*c),
        (Some((c, _)), Some(_)) if side_modifies_part => side_part(*c),
        (_, Some((PartCue::Front, _))) => VehiclePart::Front,
        (_, Some((PartCue::Rear, _))) => VehiclePart::Rear,
        _ => VehiclePart::Unknown,
    }
}

fn side_part(c: PartCue) -> VehiclePart {
    match c {
        PartCue::Left => VehiclePart::LeftSide,
        PartCue::Right => VehiclePart::RightSide,
        _ => VehiclePart::Unknown,
    }
}

/// One candidate per collision-verb group, in text order.
pub fn extract_collisions(chunks: &ChunkedText, lex: &Lexicon) -> Vec<CollisionCandidate> {
    let mut out = Vec::new();
    for (si, sentence) in chunks.sentences.iter().enumerate() {
        for (gi, g) in sentence.groups.iter().enumerate() {
            if g.kind != GroupKind::Verb {
                continue;
            }
            let is_collision = sentence.group_tokens(g).iter().any(|t| {
                matches!(t.tag, PosTag::Verb | PosTag::Ger)
                    && lex.collision_verbs.contains(&t.lemma)
            });
            if !is_collision {
                continue;
            }
            let (actor, victim) = match g.voice {
                Some(Voice::Passive) => {
                    (find_agent(g, si, sentence, lex), find_subject(g, si, sentence, lex))
                }
                _ => (find_subject(g, si, sentence, lex), find_object(g, si, sentence, lex)),
            };
            let actor_part = actor
                .as_ref()
                .map(|m| extract_part(m, true, Some(sentence), lex))
                .unwrap_or(VehiclePart::Unknown);
            let victim_part = victim
                .as_ref()
                .map(|m| extract_part(m, false, None, lex))
                .unwrap_or(VehiclePart::Unknown);
            out.push(CollisionCandidate {
                sentence: si,
                verb_group: gi,
                actor,
                victim,
                actor_part,
                victim_part,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extract::chunk::chunk;

    fn en() -> Lexicon {
        Lexicon::english()
    }

    fn first_verb(sentence: &Sentence) -> Group {
        *sentence.groups.iter().find(|g| g.kind == GroupKind::Verb).unwrap()
    }

    #[test]
    fn subject_is_last_valid_noun_group_before_verb() {
        let lex = en();
        let text =
            "Vehicle B arrived from my left, ignored the priority and collided with my vehicle.";
        let c = chunk(text, &lex);
        let s = &c.sentences[0];
        let collided = s
            .groups
            .iter()
            .find(|g| g.kind == GroupKind::Verb && s.group_tokens(g)[0].lemma == "collide")
            .unwrap();
        let subject = find_subject(collided, 0, s, &lex).unwrap();
        assert_eq!(subject.text(), "Vehicle B");
    }

    #[test]
    fn subject_skips_invalid_actors() {
        let lex = en();
        let c = chunk("The tree fell and I swerved.", &lex);
        let s = &c.sentences[0];
        let swerved = s
            .groups
            .iter()
            .find(|g| g.kind == GroupKind::Verb && s.group_tokens(g)[0].lemma == "swerve")
            .unwrap();
        assert_eq!(find_subject(swerved, 0, s, &lex).unwrap().text(), "I");
    }

    #[test]
    fn subject_absent_when_nothing_precedes() {
        let lex = en();
        let c = chunk("Was hit hard.", &lex);
        let s = &c.sentences[0];
        assert!(find_subject(&first_verb(s), 0, s, &lex).is_none());
    }

    #[test]
    fn object_unit_includes_trailing_complements() {
        let lex = en();
        let c = chunk("I hit the metallic protection of a tree.", &lex);
        let s = &c.sentences[0];
        let object = find_object(&first_verb(s), 0, s, &lex).unwrap();
        assert_eq!(object.text(), "the metallic protection of a tree");
    }

    #[test]
    fn object_falls_back_to_pronoun_inside_verb_group() {
        let lex = Lexicon::english_with_french();
        let c = chunk("il m'a percuté", &lex);
        let s = &c.sentences[0];
        let object = find_object(&first_verb(s), 0, s, &lex).unwrap();
        assert_eq!(object.text(), "m'");
    }

    #[test]
    fn object_absent_when_no_noun_follows() {
        let lex = en();
        let c = chunk("He crashed suddenly.", &lex);
        let s = &c.sentences[0];
        assert!(find_object(&first_verb(s), 0, s, &lex).is_none());
    }

    #[test]
    fn agent_found_in_by_group() {
        let lex = en();
        let c = chunk("My vehicle was hit by vehicle B.", &lex);
        let s = &c.sentences[0];
        let agent = find_agent(&first_verb(s), 0, s, &lex).unwrap();
        assert_eq!(agent.text(), "vehicle B");
    }

    #[test]
    fn agent_absent_without_by_group() {
        let lex = en();
        let c = chunk("My vehicle was hit.", &lex);
        let s = &c.sentences[0];
        assert!(find_agent(&first_verb(s), 0, s, &lex).is_none());
    }

    #[test]
    fn agent_takes_first_by_group() {
        let lex = en();
        let c = chunk("I was hit by the third car coming from the left.", &lex);
        let s = &c.sentences[0];
        let agent = find_agent(&first_verb(s), 0, s, &lex).unwrap();
        assert_eq!(agent.text(), "the third car");
    }

    #[test]
    fn side_cue_wins_when_modifying_part_noun() {
        let lex = en();
        let c = chunk("my rear fender on the left side", &lex);
        let s = &c.sentences[0];
        let mention = Mention::from_span(0, s, 0, s.tokens.len());
        assert_eq!(extract_part(&mention, false, None, &lex), VehiclePart::LeftSide);
    }

    #[test]
    fn actor_part_from_collision_local_phrase() {
        let lex = en();
        let c = chunk("I hit the tree, hence a second frontal collision.", &lex);
        let s = &c.sentences[0];
        let mention = Mention::from_span(0, s, 0, 1); // "I"
        assert_eq!(extract_part(&mention, true, Some(s), &lex), VehiclePart::Front);
    }

    #[test]
    fn no_cue_gives_unknown() {
        let lex = en();
        let c = chunk("my vehicle", &lex);
        let s = &c.sentences[0];
        let mention = Mention::from_span(0, s, 0, s.tokens.len());
        assert_eq!(extract_part(&mention, false, None, &lex), VehiclePart::Unknown);
    }

    #[test]
    fn active_and_passive_candidates() {
        let lex = en();
        let c = chunk("My car was struck by a truck.", &lex);
        let cands = extract_collisions(&c, &lex);
        assert_eq!(cands.len(), 1);
        assert_eq!(cands[0].actor.as_ref().unwrap().text(), "a truck");
        assert_eq!(cands[0].victim.as_ref().unwrap().text(), "My car");
    }

    #[test]
    fn candidates_in_text_order() {
        let lex = en();
        let text = "Vehicle B collided with my vehicle. \
                    On the first impact, my rear fender on the left side was hit \
                    and because of the slippery road, I lost control of my vehicle \
                    and hit the metallic protection of a tree, hence a second frontal collision.";
        let cands = extract_collisions(&chunk(text, &lex), &lex);
        assert_eq!(cands.len(), 3);
        assert_eq!(cands[0].actor.as_ref().unwrap().text(), "Vehicle B");
        assert_eq!(cands[0].victim.as_ref().unwrap().text(), "my vehicle");
        assert!(cands[1].actor.is_none());
        assert_eq!(cands[1].victim.as_ref().unwrap().text(), "my rear fender on the left side");
        assert_eq!(cands[1].victim_part, VehiclePart::LeftSide);
        assert_eq!(cands[2].actor.as_ref().unwrap().text(), "I");
        assert_eq!(cands[2].actor_part, VehiclePart::Front);
        assert_eq!(cands[2].victim_part, VehiclePart::Unknown);
    }

    #[test]
    fn no_collision_verbs_no_candidates() {
        let lex = en();
        assert!(extract_collisions(&chunk("I was driving home.", &lex), &lex).is_empty());
    }
}
