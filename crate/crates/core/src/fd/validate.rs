//! Structural checks on a description, reported as data.

use super::*;
use std::collections::HashSet;
use thiserror::Error;

/// A violated structural invariant. Violations are values, not errors; an
/// empty list means the description is structurally valid.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("collision {index} references unknown object `{id}`")]
    DanglingReference { index: usize, id: String },
    #[error("no ROAD object in STATIC")]
    MissingRoad,
    #[error("more than one ROAD object in STATIC")]
    MultipleRoads,
    #[error(
        "collision {index} actor `{id}` is a static object; the actor has to be a dynamic object"
    )]
    StaticActor { index: usize, id: String },
    #[error("collision {index} actor and victim are both `{id}`")]
    SelfCollision { index: usize, id: String },
    #[error("non-finite coordinates on `{0}`")]
    NonFiniteCoord(String),
}

/// Check every structural invariant and return all violations found.
pub fn validate_fd(fd: &FormalDescription) -> Vec<Violation> {
    let mut out = Vec::new();

    let roads = fd.statics.iter().filter(|s| matches!(s, StaticObject::Road { .. })).count();
    if roads == 0 {
        out.push(Violation::MissingRoad);
    } else if roads > 1 {
        out.push(Violation::MultipleRoads);
    }

    let mut ids: HashSet<&str> = HashSet::new();
    let mut static_ids: HashSet<&str> = HashSet::new();
    for s in &fd.statics {
        if let Some(id) = s.id() {
            if !ids.insert(id) {
                out.push(Violation::DuplicateId(id.to_string()));
            }
            static_ids.insert(id);
        }
        if let Some(c) = s.coord() {
            if !c.is_finite() {
                out.push(Violation::NonFiniteCoord(s.id().unwrap_or("static object").to_string()));
            }
        }
    }
    let mut vehicle_ids: HashSet<&str> = HashSet::new();
    for v in &fd.dynamics {
        if !ids.insert(&v.id) {
            out.push(Violation::DuplicateId(v.id.clone()));
        }
        vehicle_ids.insert(&v.id);
    }

    for (index, c) in fd.collisions.iter().enumerate() {
        if static_ids.contains(c.actor.as_str()) {
            out.push(Violation::StaticActor { index, id: c.actor.clone() });
        } else if !vehicle_ids.contains(c.actor.as_str()) {
            out.push(Violation::DanglingReference { index, id: c.actor.clone() });
        }
        if !vehicle_ids.contains(c.victim.as_str()) && !static_ids.contains(c.victim.as_str()) {
            out.push(Violation::DanglingReference { index, id: c.victim.clone() });
        }
        if c.actor == c.victim {
            out.push(Violation::SelfCollision { index, id: c.actor.clone() });
        }
        if let Some(p) = c.coord {
            if !p.is_finite() {
                out.push(Violation::NonFiniteCoord(format!("collision {index}")));
            }
        }
    }

    out
}
