//! Keyword lookup for the road configuration and the other static objects.

use super::chunk::{lemmas_match, ChunkedText, GroupKind};
use crate::fd::{LightColor, RoadKind, StaticObject};
use crate::lexicon::{Lexicon, StaticCue};

/// Walk every token outside verb groups and hand matched cue sequences to
/// `found`. Longest cues win and consume their tokens.
fn scan_cues<'a, T: Copy>(
    chunks: &ChunkedText,
    cues: &'a [(Vec<String>, T)],
    mut found: impl FnMut(&'a [String], T, usize, usize),
) {
    for (si, sentence) in chunks.sentences.iter().enumerate() {
        for group in &sentence.groups {
            if group.kind == GroupKind::Verb {
                continue;
            }
            let mut i = group.start;
            while i < group.end {
                let hit = cues.iter().find(|(seq, _)| {
                    i + seq.len() <= group.end && lemmas_match(&sentence.tokens, i, seq)
                });
                if let Some((seq, value)) = hit {
                    found(seq, *value, si, i);
                    i += seq.len();
                } else {
                    i += 1;
                }
            }
        }
    }
}

/// The road configuration: crossroads if any crossroads cue occurs, else a
/// turn if any turn cue occurs (left and right turns are treated as
/// equivalent), else a straight road.
pub fn extract_road_kind(chunks: &ChunkedText, lex: &Lexicon) -> RoadKind {
    let mut best = RoadKind::Straightroad;
    scan_cues(chunks, &lex.road_cues, |_, kind: RoadKind, _, _| {
        best = match (best, kind) {
            (RoadKind::Crossroads, _) | (_, RoadKind::Crossroads) => RoadKind::Crossroads,
            (RoadKind::Straightroad, k) => k,
            (b, _) => b,
        };
    });
    if best.is_turn() {
        RoadKind::TurnLeft
    } else {
        best
    }
}

/// One static object per distinct cue lemma found, in first-mention order.
/// Trees and lights get generated ids; coordinates stay unset for the
/// preplanner. A light's color comes from a color cue in the same sentence,
/// defaulting to inactive.
pub fn extract_statics(chunks: &ChunkedText, lex: &Lexicon) -> Vec<StaticObject> {
    let mut seen: Vec<&[String]> = Vec::new();
    let mut out = Vec::new();
    let mut trees = 0usize;
    let mut lights = 0usize;

    scan_cues(chunks, &lex.static_cues, |seq, kind: StaticCue, si, _| {
        if seen.contains(&seq) {
            return;
        }
        seen.push(seq);
        match kind {
            StaticCue::Tree => {
                trees += 1;
                out.push(StaticObject::Tree { id: format!("tree{trees}"), coord: None });
            }
            StaticCue::Light => {
                lights += 1;
                let color = chunks.sentences[si]
                    .tokens
                    .iter()
                    .find_map(|t| lex.color_cues.get(&t.lemma).copied())
                    .unwrap_or(LightColor::Inactive);
                out.push(StaticObject::Light { id: format!("light{lights}"), coord: None, color });
            }
            StaticCue::StopSign => out.push(StaticObject::StopSign { coord: None }),
            StaticCue::Crossing => out.push(StaticObject::Crossing { coord: None }),
        }
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extract::chunk::chunk;

    fn road(text: &str) -> RoadKind {
        let lex = Lexicon::english();
        extract_road_kind(&chunk(text, &lex), &lex)
    }

    #[test]
    fn crossroads_cue_wins() {
        assert_eq!(road("I was driving on a crossroads with a slow speed."), RoadKind::Crossroads);
        assert_eq!(road("At the intersection he came from the right."), RoadKind::Crossroads);
    }

    #[test]
    fn turn_cues_map_to_left_turn() {
        assert_eq!(road("The road curved; in the bend I slipped."), RoadKind::TurnLeft);
    }

    #[test]
    fn no_cue_means_straight_road() {
        assert_eq!(road("I was driving home."), RoadKind::Straightroad);
    }

    #[test]
    fn verb_forms_do_not_fire_road_cues() {
        // "turned" lemmatizes to turn, but sits inside a verb group.
        assert_eq!(road("The car turned suddenly."), RoadKind::Straightroad);
    }

    #[test]
    fn statics_from_cues() {
        let lex = Lexicon::english();
        let text = "I stopped at the stop sign near the pedestrian crossing.";
        let statics = extract_statics(&chunk(text, &lex), &lex);
        assert!(matches!(statics[0], StaticObject::StopSign { .. }));
        assert!(matches!(statics[1], StaticObject::Crossing { .. }));
        assert_eq!(statics.len(), 2);
    }

    #[test]
    fn tree_mentions_collapse_to_one_object() {
        let lex = Lexicon::english();
        let text = "I hit the metallic protection of a tree. The tree fell.";
        let statics = extract_statics(&chunk(text, &lex), &lex);
        assert_eq!(statics, vec![StaticObject::Tree { id: "tree1".into(), coord: None }]);
    }

    #[test]
    fn light_color_from_same_sentence() {
        let lex = Lexicon::english();
        let statics = extract_statics(&chunk("The traffic light was red.", &lex), &lex);
        assert_eq!(
            statics,
            vec![StaticObject::Light { id: "light1".into(), coord: None, color: LightColor::Red }]
        );
    }

    #[test]
    fn no_cues_no_statics() {
        let lex = Lexicon::english();
        assert!(extract_statics(&chunk("I was driving home.", &lex), &lex).is_empty());
    }
}
