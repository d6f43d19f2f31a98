//! Rule-based information extraction: report text in, filled FD template out.
//!
//! The pipeline is goal-driven. It starts from road-configuration defaults
//! and refines them with whatever the cue scan, the chunker, and the
//! grammatical-relation heuristics can attribute, so any input text ends in
//! a structurally valid description.

pub mod chunk;
mod collisions;
mod cues;
mod defaults;
mod resolve;

pub use chunk::{chunk, ChunkedText, Group, GroupKind, Sentence, Token, Voice};
pub use collisions::{
    extract_collisions, extract_part, find_agent, find_object, find_subject, CollisionCandidate,
    Mention,
};
pub use cues::{extract_road_kind, extract_statics};
pub use defaults::{build_fd, scenario, RoadScenario};
pub use resolve::{
    extract_events, normalize_mention, resolve_references, PendingCollision, VictimRef, ENUNCIATOR,
};

use crate::fd::FormalDescription;
use crate::lexicon::Lexicon;

/// The extracted description plus the diagnostics accumulated along the way
/// (dropped events, defaulted roles). Diagnostics never fail a run.
#[derive(Debug, Clone)]
pub struct ExtractOutcome {
    pub fd: FormalDescription,
    pub diagnostics: Vec<String>,
}

/// Run the whole extraction chain on one report.
pub fn extract_fd(text: &str, lex: &Lexicon) -> ExtractOutcome {
    let chunks = chunk(text, lex);
    let road = extract_road_kind(&chunks, lex);
    let statics = extract_statics(&chunks, lex);
    let candidates = extract_collisions(&chunks, lex);
    let (vehicles, pendings, mut diagnostics) = resolve_references(&candidates, &statics, lex);
    let (vehicles, event_diags) = extract_events(&chunks, vehicles, lex);
    diagnostics.extend(event_diags);
    let (fd, default_diags) = build_fd(road, statics, vehicles, pendings);
    diagnostics.extend(default_diags);
    ExtractOutcome { fd, diagnostics }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fd::{validate_fd, RoadKind, StaticObject, VehiclePart};

    const A4_REPORT: &str = include_str!("../../fixtures/a4_report.txt");

    #[test]
    fn crossroads_report_matches_reference_structure() {
        let lex = Lexicon::english();
        let out = extract_fd(A4_REPORT, &lex);
        let fd = &out.fd;

        assert_eq!(fd.road_kind(), Some(RoadKind::Crossroads));
        let trees = fd.statics.iter().filter(|s| matches!(s, StaticObject::Tree { .. })).count();
        assert_eq!(trees, 1);
        assert_eq!(fd.dynamics.len(), 2);
        assert_eq!(fd.collisions.len(), 2);

        // Collision 1: the other vehicle runs into the narrator's left side.
        let c1 = &fd.collisions[0];
        assert_eq!(c1.victim, ENUNCIATOR);
        assert_ne!(c1.actor, ENUNCIATOR);
        assert_eq!(c1.actor_part, VehiclePart::Front);
        assert_eq!(c1.victim_part, VehiclePart::LeftSide);

        // Collision 2: the narrator's front against the tree.
        let c2 = &fd.collisions[1];
        assert_eq!(c2.actor, ENUNCIATOR);
        assert_eq!(fd.static_by_id(&c2.victim).and_then(|s| s.id()), Some(c2.victim.as_str()));
        assert_eq!(c2.actor_part, VehiclePart::Front);
        assert_eq!(c2.victim_part, VehiclePart::Unknown);

        assert!(validate_fd(fd).is_empty());
    }

    #[test]
    fn empty_text_yields_default_two_car_description() {
        let lex = Lexicon::english();
        let out = extract_fd("", &lex);
        assert_eq!(out.fd.road_kind(), Some(RoadKind::Straightroad));
        assert_eq!(out.fd.dynamics.len(), 2);
        assert_eq!(out.fd.collisions.len(), 1);
        assert!(validate_fd(&out.fd).is_empty());
    }

    #[test]
    fn any_text_yields_a_valid_description() {
        let lex = Lexicon::english();
        for text in [
            "Shall I compare thee to a summer's day? Thou art more lovely and more temperate.",
            "....!!!???",
            "42 42 42",
            "the the the the",
            "Collision collision collision.",
        ] {
            let out = extract_fd(text, &lex);
            assert!(validate_fd(&out.fd).is_empty(), "invalid FD for `{text}`");
        }
    }

    #[test]
    fn extraction_is_deterministic() {
        let lex = Lexicon::english();
        let a = extract_fd(A4_REPORT, &lex);
        let b = extract_fd(A4_REPORT, &lex);
        assert_eq!(a.fd, b.fd);
        assert_eq!(a.diagnostics, b.diagnostics);
    }

    #[test]
    fn french_cues_drive_the_same_rules() {
        let lex = Lexicon::english_with_french();
        let out = extract_fd("Le véhicule B percute mon véhicule dans le carrefour.", &lex);
        let fd = &out.fd;
        assert_eq!(fd.road_kind(), Some(RoadKind::Crossroads));
        assert_eq!(fd.dynamics.len(), 2);
        assert_eq!(fd.collisions.len(), 1);
        assert_ne!(fd.collisions[0].actor, ENUNCIATOR);
        assert_eq!(fd.collisions[0].victim, ENUNCIATOR);
        assert!(validate_fd(fd).is_empty());
    }

    proptest::proptest! {
        #[test]
        fn arbitrary_text_extracts_to_a_valid_description(text in ".{0,200}") {
            let lex = Lexicon::english();
            let out = extract_fd(&text, &lex);
            proptest::prop_assert!(validate_fd(&out.fd).is_empty());
            proptest::prop_assert!(!out.fd.collisions.is_empty());
        }

        #[test]
        fn chunks_cover_arbitrary_sentences(text in ".{0,200}") {
            let lex = Lexicon::english();
            for s in chunk(&text, &lex).sentences {
                let mut at = 0;
                for g in &s.groups {
                    proptest::prop_assert_eq!(g.start, at);
                    proptest::prop_assert!(g.end > g.start);
                    at = g.end;
                }
                proptest::prop_assert_eq!(at, s.tokens.len());
            }
        }
    }
}
