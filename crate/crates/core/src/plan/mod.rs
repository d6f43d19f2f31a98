//! Compiles a formal description into timed per-vehicle trajectories.
//!
//! Five subplanners run in sequence, each doing a small part of the job:
//!
//! 1. [`preplan`] fills missing values and resolves contradictions.
//! 2. [`plan_positions`] places start and end points around the road center.
//! 3. [`plan_trajectory`] converts each event chain into untimed points.
//! 4. [`plan_accident`] reroutes trajectories through each collision point.
//! 5. [`plan_time`] assigns every point a time value in [0,1].

mod accident;
mod export;
mod positions;
mod preplan;
mod temporal;
mod trajectory;

pub use accident::plan_accident;
pub use export::{export_plan, import_plan, plan_to_json, ExportedPlan};
pub use positions::plan_positions;
pub use preplan::preplan;
pub use temporal::plan_time;
pub use trajectory::{plan_trajectory, turn_arc, TurnArc, TurnDir};

use crate::fd::{validate_fd, FormalDescription, Point2, Violation};
use serde::Deserialize;
use std::collections::BTreeMap;
use thiserror::Error;

/// Tunable planner geometry. The defaults reproduce the reference scene:
/// same-direction vehicles start 20/26/32 m from the center, lanes sit
/// 1.75 m right of the road axis, and collisions carve a 5 m circle.
#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PlannerConfig {
    pub start_distances: Vec<f64>,
    pub max_same_direction: usize,
    pub lane_offset: f64,
    pub turn_radius: f64,
    pub sample_step: f64,
    pub collision_radius: f64,
    pub lane_change_length: f64,
    pub frames_hint: u32,
}

impl Default for PlannerConfig {
    fn default() -> Self {
        PlannerConfig {
            start_distances: vec![20.0, 26.0, 32.0],
            max_same_direction: 3,
            lane_offset: 1.75,
            turn_radius: 8.0,
            sample_step: 2.0,
            collision_radius: 5.0,
            lane_change_length: 15.0,
            frames_hint: 60,
        }
    }
}

impl PlannerConfig {
    pub fn validate(&self) -> Result<(), PlanError> {
        let bad = |msg: &str| Err(PlanError::InvalidConfig(msg.into()));
        if self.start_distances.is_empty() {
            return bad("start_distances must not be empty");
        }
        if !self.start_distances.iter().all(|d| *d > 0.0 && d.is_finite()) {
            return bad("start_distances must be positive");
        }
        if !self.start_distances.windows(2).all(|w| w[0] < w[1]) {
            return bad("start_distances must be strictly increasing");
        }
        if self.max_same_direction == 0 || self.max_same_direction > self.start_distances.len() {
            return bad("max_same_direction must fit the start_distances table");
        }
        for (value, name) in [
            (self.lane_offset, "lane_offset"),
            (self.turn_radius, "turn_radius"),
            (self.sample_step, "sample_step"),
            (self.collision_radius, "collision_radius"),
            (self.lane_change_length, "lane_change_length"),
        ] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(PlanError::InvalidConfig(format!("{name} must be positive")));
            }
        }
        if self.collision_radius >= self.start_distances[0] {
            return bad("collision_radius must stay below the closest start distance");
        }
        if self.frames_hint == 0 {
            return bad("frames_hint must be positive");
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum PlanError {
    #[error("invalid planner configuration: {0}")]
    InvalidConfig(String),
    #[error("description fails validation: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidDescription(Vec<Violation>),
    #[error("{count} vehicles share initial direction {direction}; at most {max} can")]
    TooManySameDirection { direction: String, count: usize, max: usize },
    #[error("trajectory of `{vehicle}` lies entirely inside the collision circle of collision {ordinal}")]
    TrajectoryInsideCircle { vehicle: String, ordinal: usize },
    #[error("collision pins of `{vehicle}` are not in increasing order along its trajectory")]
    CollisionOrderViolated { vehicle: String },
    #[error("vehicle `{0}` has no planned position")]
    MissingPosition(String),
}

/// One sampled point of a vehicle path. `time` stays unset until the
/// temporal planner has run. A dwell marker repeats the previous position to
/// consume time while standing still; it is the only sanctioned repeat.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint {
    pub position: Point2,
    pub time: Option<f64>,
    pub dwell: bool,
}

impl TrajectoryPoint {
    pub fn new(position: Point2) -> Self {
        TrajectoryPoint { position, time: None, dwell: false }
    }
}

/// An ordered point path for one vehicle, with the point index pinned to
/// each collision ordinal (1-based) the vehicle participates in.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub vehicle_id: String,
    pub points: Vec<TrajectoryPoint>,
    pub collision_indices: BTreeMap<usize, usize>,
}

impl Trajectory {
    pub fn last_position(&self) -> Point2 {
        self.points.last().expect("trajectories hold at least one point").position
    }
}

/// A description with every gap filled: coordinates, directions, chains, and
/// parts are all set, and no chain event contradicts the road kind.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedScene {
    pub fd: FormalDescription,
    /// Applied fixes, for the warnings stream.
    pub diagnostics: Vec<String>,
}

/// The finished compilation product: normalized scene, one timed trajectory
/// per vehicle, and the strictly increasing collision instants.
#[derive(Debug, Clone)]
pub struct AnimationPlan {
    pub scene: NormalizedScene,
    pub trajectories: Vec<Trajectory>,
    pub collision_times: Vec<f64>,
}

impl AnimationPlan {
    pub fn trajectory(&self, vehicle_id: &str) -> Option<&Trajectory> {
        self.trajectories.iter().find(|t| t.vehicle_id == vehicle_id)
    }
}

/// Run all five subplanners in order.
pub fn plan(fd: &FormalDescription, cfg: &PlannerConfig) -> Result<AnimationPlan, PlanError> {
    cfg.validate()?;
    let violations = validate_fd(fd);
    if !violations.is_empty() {
        return Err(PlanError::InvalidDescription(violations));
    }

    let scene = preplan(fd, cfg)?;
    let positions = plan_positions(&scene, cfg)?;
    let road = scene.fd.road_kind().expect("normalized scenes have a road");

    let mut trajectories = Vec::with_capacity(scene.fd.dynamics.len());
    for vehicle in &scene.fd.dynamics {
        let (start, end) = positions
            .get(&vehicle.id)
            .copied()
            .ok_or_else(|| PlanError::MissingPosition(vehicle.id.clone()))?;
        trajectories.push(plan_trajectory(vehicle, start, end, road, cfg));
    }

    for (index, collision) in scene.fd.collisions.iter().enumerate() {
        plan_accident(&mut trajectories, collision, index + 1, &scene.fd, cfg)?;
    }

    plan_time(scene, trajectories, cfg)
}
