//! Coreference resolution, vehicle creation, and event-chain extraction.
//!
//! Every first-person mention and narrator expression maps to the single id
//! `enunciator`. Static-object mentions never create vehicles; the collision
//! reference is rewritten to the existing static id. Everything else corefers
//! exactly when the normalized id strings are equal, keeping the first
//! created object.

use super::chunk::{ChunkedText, GroupKind, Token};
use super::collisions::{
    find_subject, has_first_person, has_vehicle_noun, static_cue_in, CollisionCandidate, Mention,
};
use crate::fd::{StaticObject, Vehicle, VehicleKind, VehiclePart};
use crate::lexicon::{Lexicon, PosTag, StaticCue};

/// A collision whose participants are canonical ids, with roles possibly
/// still open for the default scenario to fill.
#[derive(Debug, Clone)]
pub struct PendingCollision {
    pub actor: Option<String>,
    pub actor_part: VehiclePart,
    pub victim: Option<VictimRef>,
    pub victim_part: VehiclePart,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VictimRef {
    Vehicle(String),
    Static(String),
}

impl VictimRef {
    pub fn id(&self) -> &str {
        match self {
            VictimRef::Vehicle(id) | VictimRef::Static(id) => id,
        }
    }
}

enum Resolution {
    Narrator,
    Static(StaticCue),
    Vehicle(String, VehicleKind),
    /// find_object's last-resort pick named no known entity; road defaults
    /// replace it later.
    NonEntity,
}

/// Lowercased lemmas joined with underscores, determiners/possessives and
/// function words stripped: "Vehicle B"/"vehicle b" corefer.
pub fn normalize_mention(tokens: &[Token]) -> String {
    tokens
        .iter()
        .filter(|t| {
            !matches!(
                t.tag,
                PosTag::Det
                    | PosTag::Poss
                    | PosTag::Prep
                    | PosTag::Conj
                    | PosTag::Punct
                    | PosTag::Adv
            )
        })
        .map(|t| t.lemma.as_str())
        .collect::<Vec<_>>()
        .join("_")
}

/// Narrator expressions: any first-person form, or a vehicle noun labelled
/// "a" ("the vehicle A").
fn is_narrator(tokens: &[Token], lex: &Lexicon) -> bool {
    if has_first_person(tokens, lex) {
        return true;
    }
    tokens.windows(2).any(|w| {
        lex.vehicle_nouns.contains_key(&w[0].lemma) && w[1].lemma == "a" && w[1].form.len() == 1
    })
}

fn mention_kind(tokens: &[Token], lex: &Lexicon) -> VehicleKind {
    tokens.iter().find_map(|t| lex.vehicle_nouns.get(&t.lemma).copied()).unwrap_or(VehicleKind::Car)
}

fn resolve_mention(m: &Mention, lex: &Lexicon) -> Resolution {
    if is_narrator(&m.tokens, lex) {
        return Resolution::Narrator;
    }
    if let Some(cue) = static_cue_in(&m.tokens, lex) {
        return Resolution::Static(cue);
    }
    let is_pronoun = m.tokens.len() == 1 && lex.pronoun(&m.tokens[0].lemma).is_some();
    if !has_vehicle_noun(&m.tokens, lex) && !is_pronoun {
        return Resolution::NonEntity;
    }
    let id = normalize_mention(&m.tokens);
    if id.is_empty() {
        return Resolution::NonEntity;
    }
    Resolution::Vehicle(id, mention_kind(&m.tokens, lex))
}

pub const ENUNCIATOR: &str = "enunciator";

fn get_or_create<'a>(
    vehicles: &'a mut Vec<Vehicle>,
    id: &str,
    kind: VehicleKind,
) -> &'a mut Vehicle {
    if let Some(pos) = vehicles.iter().position(|v| v.id == id) {
        return &mut vehicles[pos];
    }
    let mut v = Vehicle::new(id);
    v.kind = kind;
    vehicles.push(v);
    vehicles.last_mut().unwrap()
}

fn static_id_for(cue: StaticCue, statics: &[StaticObject]) -> Option<String> {
    statics.iter().find_map(|s| match (cue, s) {
        (StaticCue::Tree, StaticObject::Tree { id, .. }) => Some(id.clone()),
        (StaticCue::Light, StaticObject::Light { id, .. }) => Some(id.clone()),
        _ => None,
    })
}

/// Map candidate mentions to canonical ids, create one vehicle per distinct
/// dynamic id, rewrite static victims to the existing static object, and fold
/// actor-less refinements ("my rear fender was hit") into the collision they
/// elaborate.
pub fn resolve_references(
    candidates: &[CollisionCandidate],
    statics: &[StaticObject],
    lex: &Lexicon,
) -> (Vec<Vehicle>, Vec<PendingCollision>, Vec<String>) {
    let mut vehicles: Vec<Vehicle> = Vec::new();
    let mut pendings: Vec<PendingCollision> = Vec::new();
    let mut diags = Vec::new();

    for cand in candidates {
        let actor = match cand.actor.as_ref().map(|m| (m, resolve_mention(m, lex))) {
            Some((_, Resolution::Narrator)) => Some((ENUNCIATOR.to_string(), VehicleKind::Car)),
            Some((_, Resolution::Vehicle(id, kind))) => Some((id, kind)),
            Some((m, Resolution::Static(_))) => {
                diags.push(format!("actor mention `{}` names a static object; dropped", m.text()));
                None
            }
            Some((m, Resolution::NonEntity)) => {
                diags.push(format!("actor mention `{}` names no known object", m.text()));
                None
            }
            None => None,
        };
        let victim = match cand.victim.as_ref().map(|m| (m, resolve_mention(m, lex))) {
            Some((_, Resolution::Narrator)) => Some(VictimRef::Vehicle(ENUNCIATOR.to_string())),
            Some((_, Resolution::Vehicle(id, _))) => Some(VictimRef::Vehicle(id)),
            Some((m, Resolution::Static(cue))) => match static_id_for(cue, statics) {
                Some(id) => Some(VictimRef::Static(id)),
                None => {
                    diags.push(format!(
                        "victim mention `{}` names a static object that was not extracted",
                        m.text()
                    ));
                    None
                }
            },
            Some((m, Resolution::NonEntity)) => {
                diags.push(format!(
                    "victim mention `{}` names no known object; road defaults apply",
                    m.text()
                ));
                None
            }
            None => None,
        };

        // An actor-less candidate naming an already-hit victim refines that
        // collision rather than opening a new one.
        if actor.is_none() {
            if let Some(vref) = &victim {
                if let Some(prev) =
                    pendings.iter_mut().rev().find(|p| p.victim.as_ref() == Some(vref))
                {
                    if prev.victim_part == VehiclePart::Unknown {
                        prev.victim_part = cand.victim_part;
                    }
                    if prev.actor_part == VehiclePart::Unknown {
                        prev.actor_part = cand.actor_part;
                    }
                    continue;
                }
            }
        }
        // Symmetrically for victim-less repeats of a known actor.
        if victim.is_none() {
            if let Some((actor_id, _)) = &actor {
                if let Some(prev) = pendings
                    .iter_mut()
                    .rev()
                    .find(|p| p.actor.as_deref() == Some(actor_id.as_str()))
                {
                    if prev.actor_part == VehiclePart::Unknown {
                        prev.actor_part = cand.actor_part;
                    }
                    continue;
                }
            }
        }

        let actor_id = actor.map(|(id, kind)| {
            let kind_for = if id == ENUNCIATOR { VehicleKind::Car } else { kind };
            get_or_create(&mut vehicles, &id, kind_for).id.clone()
        });
        let victim = victim.map(|vref| match vref {
            VictimRef::Vehicle(id) => {
                let kind = cand
                    .victim
                    .as_ref()
                    .map(|m| mention_kind(&m.tokens, lex))
                    .unwrap_or(VehicleKind::Car);
                let kind_for = if id == ENUNCIATOR { VehicleKind::Car } else { kind };
                VictimRef::Vehicle(get_or_create(&mut vehicles, &id, kind_for).id.clone())
            }
            s => s,
        });

        pendings.push(PendingCollision {
            actor: actor_id,
            actor_part: cand.actor_part,
            victim,
            victim_part: cand.victim_part,
        });
    }

    (vehicles, pendings, diags)
}

/// Append each event-verb occurrence, in text order, to the chain of the
/// vehicle it belongs to: the narrator's vehicle for narrator subjects, the
/// other vehicle in two-vehicle stories, or the vehicle whose id equals the
/// subject mention. Unattributable events are dropped with a diagnostic.
pub fn extract_events(
    chunks: &ChunkedText,
    mut vehicles: Vec<Vehicle>,
    lex: &Lexicon,
) -> (Vec<Vehicle>, Vec<String>) {
    let mut diags = Vec::new();

    for (si, sentence) in chunks.sentences.iter().enumerate() {
        let mut i = 0;
        while i < sentence.tokens.len() {
            let in_verb_group = sentence
                .groups
                .iter()
                .any(|g| g.kind == GroupKind::Verb && g.start <= i && i < g.end);
            if !in_verb_group {
                i += 1;
                continue;
            }
            let hit = lex.event_verbs.iter().find(|(seq, _)| {
                seq.len() <= sentence.tokens.len() - i
                    && seq.iter().zip(&sentence.tokens[i..]).all(|(w, t)| w == &t.lemma)
            });
            let Some((seq, events)) = hit else {
                i += 1;
                continue;
            };
            let verb_group = *sentence
                .groups
                .iter()
                .find(|g| g.kind == GroupKind::Verb && g.start <= i && i < g.end)
                .expect("token is in a verb group");

            let subject = find_subject(&verb_group, si, sentence, lex);
            let owner: Option<String> = match &subject {
                Some(m) if is_narrator(&m.tokens, lex) => Some(ENUNCIATOR.to_string()),
                Some(m) => {
                    let named = normalize_mention(&m.tokens);
                    if vehicles.len() == 2 && vehicles.iter().any(|v| v.id == ENUNCIATOR) {
                        vehicles.iter().find(|v| v.id != ENUNCIATOR).map(|v| v.id.clone())
                    } else if let Some(v) = vehicles.iter().find(|v| v.id == named) {
                        Some(v.id.clone())
                    } else {
                        diags.push(format!(
                            "event `{}` has subject `{}` matching no vehicle; dropped",
                            seq.join(" "),
                            m.text()
                        ));
                        None
                    }
                }
                None => {
                    diags.push(format!("event `{}` has no subject; dropped", seq.join(" ")));
                    None
                }
            };
            if let Some(id) = owner {
                if id == ENUNCIATOR {
                    get_or_create(&mut vehicles, ENUNCIATOR, VehicleKind::Car);
                }
                if let Some(v) = vehicles.iter_mut().find(|v| v.id == id) {
                    v.chain.extend(events.iter().copied());
                }
            }
            i += seq.len();
        }
    }

    (vehicles, diags)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extract::chunk::chunk;
    use crate::extract::collisions::extract_collisions;
    use crate::extract::cues::extract_statics;
    use crate::fd::EventKind;

    fn en() -> Lexicon {
        Lexicon::english()
    }

    fn pipeline(text: &str) -> (Vec<Vehicle>, Vec<PendingCollision>) {
        let lex = en();
        let chunks = chunk(text, &lex);
        let statics = extract_statics(&chunks, &lex);
        let cands = extract_collisions(&chunks, &lex);
        let (v, p, _) = resolve_references(&cands, &statics, &lex);
        (v, p)
    }

    #[test]
    fn first_person_mentions_become_enunciator() {
        let (vehicles, pendings) = pipeline("Vehicle B collided with my vehicle.");
        assert_eq!(
            vehicles.iter().map(|v| v.id.as_str()).collect::<Vec<_>>(),
            vec!["vehicle_b", "enunciator"]
        );
        assert_eq!(pendings[0].actor.as_deref(), Some("vehicle_b"));
        assert_eq!(pendings[0].victim, Some(VictimRef::Vehicle("enunciator".into())));
    }

    #[test]
    fn static_victims_rewrite_to_static_id() {
        let (vehicles, pendings) = pipeline("I hit the metallic protection of a tree.");
        assert_eq!(vehicles.len(), 1);
        assert_eq!(vehicles[0].id, "enunciator");
        assert_eq!(pendings[0].victim, Some(VictimRef::Static("tree1".into())));
    }

    #[test]
    fn string_equal_mentions_reuse_one_vehicle() {
        let (vehicles, pendings) = pipeline("Vehicle B hit a tree. Vehicle B struck my car.");
        assert_eq!(vehicles.iter().filter(|v| v.id == "vehicle_b").count(), 1);
        assert_eq!(pendings.len(), 2);
        assert_eq!(pendings[0].actor.as_deref(), Some("vehicle_b"));
        assert_eq!(pendings[1].actor.as_deref(), Some("vehicle_b"));
    }

    #[test]
    fn absent_actor_refines_previous_collision_on_same_victim() {
        let text = "Vehicle B collided with my vehicle. \
                    On the first impact, my rear fender on the left side was hit.";
        let (vehicles, pendings) = pipeline(text);
        assert_eq!(pendings.len(), 1);
        assert_eq!(pendings[0].victim_part, VehiclePart::LeftSide);
        assert_eq!(vehicles.len(), 2);
    }

    #[test]
    fn absent_actor_without_match_stays_pending() {
        let (vehicles, pendings) = pipeline("My car was struck.");
        assert_eq!(pendings.len(), 1);
        assert!(pendings[0].actor.is_none());
        assert_eq!(pendings[0].victim, Some(VictimRef::Vehicle("enunciator".into())));
        assert_eq!(vehicles.len(), 1);
    }

    #[test]
    fn truck_mentions_set_vehicle_kind() {
        let (vehicles, _) = pipeline("My car was struck by a truck.");
        let truck = vehicles.iter().find(|v| v.id == "truck").unwrap();
        assert_eq!(truck.kind, VehicleKind::Truck);
    }

    #[test]
    fn restart_adds_stop_then_driving_forward() {
        let lex = en();
        let chunks = chunk("I restarted.", &lex);
        let (vehicles, diags) = extract_events(&chunks, vec![], &lex);
        assert!(diags.is_empty());
        assert_eq!(vehicles[0].id, ENUNCIATOR);
        assert_eq!(vehicles[0].chain, vec![EventKind::Stop, EventKind::DrivingForward]);
    }

    #[test]
    fn two_vehicle_story_attributes_to_the_other_vehicle() {
        let lex = en();
        let mut v1 = Vehicle::new(ENUNCIATOR);
        v1.chain.push(EventKind::DrivingForward);
        let v2 = Vehicle::new("vehicle_b");
        let chunks = chunk("Vehicle B turned left then braked.", &lex);
        let (vehicles, diags) = extract_events(&chunks, vec![v1, v2], &lex);
        assert!(diags.is_empty());
        let b = vehicles.iter().find(|v| v.id == "vehicle_b").unwrap();
        assert_eq!(b.chain, vec![EventKind::TurnLeft, EventKind::Stop]);
    }

    #[test]
    fn unattributable_events_drop_with_diagnostic() {
        let lex = en();
        let vehicles =
            vec![Vehicle::new(ENUNCIATOR), Vehicle::new("vehicle_b"), Vehicle::new("vehicle_c")];
        let chunks = chunk("The white van stopped.", &lex);
        let (after, diags) = extract_events(&chunks, vehicles, &lex);
        assert!(after.iter().all(|v| v.chain.is_empty()));
        assert_eq!(diags.len(), 1);
    }

    #[test]
    fn no_event_verbs_leave_chains_unchanged() {
        let lex = en();
        let vehicles = vec![Vehicle::new("v1")];
        let chunks = chunk("Nothing happened there.", &lex);
        let (after, diags) = extract_events(&chunks, vehicles.clone(), &lex);
        assert_eq!(after, vehicles);
        assert!(diags.is_empty());
    }
}
