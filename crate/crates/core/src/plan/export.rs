//! Stable plan-export document: vehicles with (x, y, time) triples plus
//! collision records. Field order is fixed for golden-file comparisons, and
//! coordinates survive a JSON round trip bit-exactly.

use super::{AnimationPlan, NormalizedScene, Trajectory, TrajectoryPoint};
use crate::fd::{
    Collision, FormalDescription, LightColor, Point2, RoadKind, StaticObject, Vehicle, VehicleKind,
    VehiclePart,
};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExportedPlan {
    pub road: RoadKind,
    pub statics: Vec<ExportedStatic>,
    pub vehicles: Vec<ExportedVehicle>,
    pub collisions: Vec<ExportedCollision>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExportedStatic {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    pub x: f64,
    pub y: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub color: Option<LightColor>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExportedVehicle {
    pub id: String,
    pub kind: VehicleKind,
    /// Ordered (x, y, time) triples.
    pub points: Vec<[f64; 3]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExportedCollision {
    pub ordinal: usize,
    pub actor: String,
    pub actor_part: VehiclePart,
    pub victim: String,
    pub victim_part: VehiclePart,
    pub x: f64,
    pub y: f64,
    pub time: f64,
}

/// Flatten a finished plan into its export document.
pub fn export_plan(plan: &AnimationPlan) -> ExportedPlan {
    let fd = &plan.scene.fd;
    let statics = fd
        .statics
        .iter()
        .filter_map(|s| {
            let coord = s.coord()?;
            let (kind, id, color) = match s {
                StaticObject::Tree { id, .. } => ("tree", Some(id.clone()), None),
                StaticObject::Light { id, color, .. } => ("light", Some(id.clone()), Some(*color)),
                StaticObject::StopSign { .. } => ("stopsign", None, None),
                StaticObject::Crossing { .. } => ("crossing", None, None),
                StaticObject::Road { .. } => return None,
            };
            Some(ExportedStatic { kind: kind.into(), id, x: coord.x, y: coord.y, color })
        })
        .collect();

    let vehicles = plan
        .trajectories
        .iter()
        .map(|t| {
            let kind = fd.vehicle(&t.vehicle_id).map(|v| v.kind).unwrap_or(VehicleKind::Car);
            ExportedVehicle {
                id: t.vehicle_id.clone(),
                kind,
                points: t
                    .points
                    .iter()
                    .map(|p| [p.position.x, p.position.y, p.time.unwrap_or(0.0)])
                    .collect(),
            }
        })
        .collect();

    let collisions = fd
        .collisions
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let coord = c.coord.expect("planned collisions carry coordinates");
            ExportedCollision {
                ordinal: i + 1,
                actor: c.actor.clone(),
                actor_part: c.actor_part,
                victim: c.victim.clone(),
                victim_part: c.victim_part,
                x: coord.x,
                y: coord.y,
                time: plan.collision_times[i],
            }
        })
        .collect();

    ExportedPlan {
        road: fd.road_kind().unwrap_or(RoadKind::Straightroad),
        statics,
        vehicles,
        collisions,
    }
}

pub fn plan_to_json(plan: &AnimationPlan) -> String {
    serde_json::to_string_pretty(&export_plan(plan)).expect("plan export serializes")
}

/// Rebuild a plan from its export document. Timing, positions, and collision
/// pins come back exactly; dwell flags and diagnostics are not part of the
/// interchange format.
pub fn import_plan(doc: &ExportedPlan) -> AnimationPlan {
    let mut statics: Vec<StaticObject> = vec![StaticObject::Road { kind: doc.road }];
    for s in &doc.statics {
        let coord = Some(Point2::new(s.x, s.y));
        statics.push(match s.kind.as_str() {
            "tree" => StaticObject::Tree { id: s.id.clone().unwrap_or_default(), coord },
            "light" => StaticObject::Light {
                id: s.id.clone().unwrap_or_default(),
                coord,
                color: s.color.unwrap_or(LightColor::Inactive),
            },
            "stopsign" => StaticObject::StopSign { coord },
            _ => StaticObject::Crossing { coord },
        });
    }

    let dynamics = doc
        .vehicles
        .iter()
        .map(|v| Vehicle {
            id: v.id.clone(),
            kind: v.kind,
            init_direction: None,
            chain: Vec::new(),
        })
        .collect();

    let collisions = doc
        .collisions
        .iter()
        .map(|c| Collision {
            actor: c.actor.clone(),
            actor_part: c.actor_part,
            victim: c.victim.clone(),
            victim_part: c.victim_part,
            coord: Some(Point2::new(c.x, c.y)),
        })
        .collect();

    let trajectories = doc
        .vehicles
        .iter()
        .map(|v| {
            let points: Vec<TrajectoryPoint> = v
                .points
                .iter()
                .map(|[x, y, t]| TrajectoryPoint {
                    position: Point2::new(*x, *y),
                    time: Some(*t),
                    dwell: false,
                })
                .collect();
            // Recover collision pins from exact time matches.
            let mut pins = BTreeMap::new();
            for c in &doc.collisions {
                if c.actor == v.id || c.victim == v.id {
                    if let Some(idx) = points.iter().position(|p| p.time == Some(c.time)) {
                        pins.insert(c.ordinal, idx);
                    }
                }
            }
            Trajectory { vehicle_id: v.id.clone(), points, collision_indices: pins }
        })
        .collect();

    AnimationPlan {
        scene: NormalizedScene {
            fd: FormalDescription { statics, dynamics, collisions },
            diagnostics: Vec::new(),
        },
        trajectories,
        collision_times: doc.collisions.iter().map(|c| c.time).collect(),
    }
}
