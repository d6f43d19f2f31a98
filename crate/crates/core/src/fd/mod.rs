//! The formal accident-description (FD) data model and text format.
//!
//! An accident is three ordered lists: motionless objects (`STATIC`), moving
//! objects (`DYNAMIC`), and collisions (`ACCIDENT`). Collision list order is
//! temporal order; no two collisions are simultaneous. The bracketed text
//! format is parsed by [`parse_fd`], written by [`serialize_fd`], and checked
//! by [`validate_fd`].

mod emit;
mod parse;
mod validate;

pub use emit::serialize_fd;
pub use parse::{parse_fd, parse_fd_unchecked, ParseError};
pub use validate::{validate_fd, Violation};

use serde::{Deserialize, Serialize};
use std::fmt;

/// A point in the scene plane, in meters. x grows east, y grows north;
/// (0,0) is the center of the scene.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl std::ops::Add for Point2 {
    type Output = Point2;

    fn add(self, other: Point2) -> Point2 {
        Point2::new(self.x + other.x, self.y + other.y)
    }
}

impl std::ops::Sub for Point2 {
    type Output = Point2;

    fn sub(self, other: Point2) -> Point2 {
        Point2::new(self.x - other.x, self.y - other.y)
    }
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn scale(self, k: f64) -> Point2 {
        Point2::new(self.x * k, self.y * k)
    }

    pub fn dot(self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, other: Point2) -> f64 {
        (self - other).norm()
    }

    /// Rotate 90 degrees counterclockwise.
    pub fn rot_left(self) -> Point2 {
        Point2::new(-self.y, self.x)
    }

    /// Rotate 90 degrees clockwise.
    pub fn rot_right(self) -> Point2 {
        Point2::new(self.y, -self.x)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.x, self.y)
    }
}

/// The four road configurations a scene can have.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RoadKind {
    Crossroads,
    Straightroad,
    TurnLeft,
    TurnRight,
}

impl RoadKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RoadKind::Crossroads => "crossroads",
            RoadKind::Straightroad => "straightroad",
            RoadKind::TurnLeft => "turn_left",
            RoadKind::TurnRight => "turn_right",
        }
    }

    pub fn from_str(s: &str) -> Option<Self> {
        match s {
            "crossroads" => Some(RoadKind::Crossroads),
            "straightroad" => Some(RoadKind::Straightroad),
            "turn_left" => Some(RoadKind::TurnLeft),
            "turn_right" => Some(RoadKind::TurnRight),
            _ => None,
        }
    }

    pub fn is_turn(self) -> bool {
        matches!(self, RoadKind::TurnLeft | RoadKind::TurnRight)
    }
}

/// Traffic-light state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LightColor {
    Red,
    Orange,
    Green,
    Inactive,
}

impl LightColor {
    pub fn as_str(self) -> &'static str {
        match self {
            LightColor::Red => "red",
            LightColor::Orange => "orange",
            LightColor::Green => "green",
            LightColor::Inactive => "inactive",
        }
    }

    pub fn from_str(s: &str) -> Option<Self> {
        match s {
            "red" => Some(LightColor::Red),
            "orange" => Some(LightColor::Orange),
            "green" => Some(LightColor::Green),
            "inactive" => Some(LightColor::Inactive),
            _ => None,
        }
    }
}

/// A motionless scene object. The road gives the scene its background;
/// trees and lights can participate in collisions and therefore carry ids.
/// Stop signs and pedestrian crossings are decoration and carry none.
///
/// Coordinates are optional until the preplanner has chosen defaults.
#[derive(Debug, Clone, PartialEq)]
pub enum StaticObject {
    Road { kind: RoadKind },
    Tree { id: String, coord: Option<Point2> },
    Light { id: String, coord: Option<Point2>, color: LightColor },
    StopSign { coord: Option<Point2> },
    Crossing { coord: Option<Point2> },
}

impl StaticObject {
    /// The id of a collidable static, if this object has one.
    pub fn id(&self) -> Option<&str> {
        match self {
            StaticObject::Tree { id, .. } | StaticObject::Light { id, .. } => Some(id),
            _ => None,
        }
    }

    pub fn coord(&self) -> Option<Point2> {
        match self {
            StaticObject::Road { .. } => None,
            StaticObject::Tree { coord, .. }
            | StaticObject::Light { coord, .. }
            | StaticObject::StopSign { coord }
            | StaticObject::Crossing { coord } => *coord,
        }
    }
}

/// Initial heading of a vehicle: one of the four cardinal directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    North,
    South,
    East,
    West,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::North => "north",
            Direction::South => "south",
            Direction::East => "east",
            Direction::West => "west",
        }
    }

    pub fn from_str(s: &str) -> Option<Self> {
        match s {
            "north" => Some(Direction::North),
            "south" => Some(Direction::South),
            "east" => Some(Direction::East),
            "west" => Some(Direction::West),
            _ => None,
        }
    }

    /// Unit vector of travel.
    pub fn unit(self) -> Point2 {
        match self {
            Direction::North => Point2::new(0.0, 1.0),
            Direction::South => Point2::new(0.0, -1.0),
            Direction::East => Point2::new(1.0, 0.0),
            Direction::West => Point2::new(-1.0, 0.0),
        }
    }

    pub fn left(self) -> Direction {
        match self {
            Direction::North => Direction::West,
            Direction::West => Direction::South,
            Direction::South => Direction::East,
            Direction::East => Direction::North,
        }
    }

    pub fn right(self) -> Direction {
        self.left().left().left()
    }

    pub fn opposite(self) -> Direction {
        self.left().left()
    }
}

/// Nature of a dynamic object.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VehicleKind {
    Car,
    Truck,
}

impl VehicleKind {
    pub fn as_str(self) -> &'static str {
        match self {
            VehicleKind::Car => "car",
            VehicleKind::Truck => "truck",
        }
    }

    pub fn from_str(s: &str) -> Option<Self> {
        match s {
            "car" => Some(VehicleKind::Car),
            "truck" => Some(VehicleKind::Truck),
            _ => None,
        }
    }
}

/// An atomic movement in a vehicle's event chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    DrivingForward,
    Stop,
    TurnLeft,
    TurnRight,
    ChangeLaneLeft,
    ChangeLaneRight,
    Overtake,
}

impl EventKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EventKind::DrivingForward => "driving_forward",
            EventKind::Stop => "stop",
            EventKind::TurnLeft => "turn_left",
            EventKind::TurnRight => "turn_right",
            EventKind::ChangeLaneLeft => "change_lane_left",
            EventKind::ChangeLaneRight => "change_lane_right",
            EventKind::Overtake => "overtake",
        }
    }

    pub fn from_str(s: &str) -> Option<Self> {
        match s {
            "driving_forward" => Some(EventKind::DrivingForward),
            "stop" => Some(EventKind::Stop),
            "turn_left" => Some(EventKind::TurnLeft),
            "turn_right" => Some(EventKind::TurnRight),
            "change_lane_left" => Some(EventKind::ChangeLaneLeft),
            "change_lane_right" => Some(EventKind::ChangeLaneRight),
            "overtake" => Some(EventKind::Overtake),
            _ => None,
        }
    }
}

/// A moving object: kind, unique id, initial heading, and the ordered list of
/// atomic movements it performs (the event chain). The initial direction is
/// optional until defaults have been applied; the chain may be empty until
/// preplanning inserts `driving_forward`.
#[derive(Debug, Clone, PartialEq)]
pub struct Vehicle {
    pub id: String,
    pub kind: VehicleKind,
    pub init_direction: Option<Direction>,
    pub chain: Vec<EventKind>,
}

impl Vehicle {
    pub fn new(id: impl Into<String>) -> Self {
        Vehicle { id: id.into(), kind: VehicleKind::Car, init_direction: None, chain: Vec::new() }
    }
}

/// The vehicle region involved in an impact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VehiclePart {
    Front,
    Rear,
    LeftSide,
    RightSide,
    Unknown,
}

impl VehiclePart {
    pub fn as_str(self) -> &'static str {
        match self {
            VehiclePart::Front => "front",
            VehiclePart::Rear => "rear",
            VehiclePart::LeftSide => "leftside",
            VehiclePart::RightSide => "rightside",
            VehiclePart::Unknown => "unknown",
        }
    }

    pub fn from_str(s: &str) -> Option<Self> {
        match s {
            "front" => Some(VehiclePart::Front),
            "rear" => Some(VehiclePart::Rear),
            "leftside" => Some(VehiclePart::LeftSide),
            "rightside" => Some(VehiclePart::RightSide),
            "unknown" => Some(VehiclePart::Unknown),
            _ => None,
        }
    }
}

/// One collision: the actor runs into the victim. The actor is always a
/// vehicle; the victim may be a vehicle, a tree, or a light. The roles say
/// nothing about responsibility.
#[derive(Debug, Clone, PartialEq)]
pub struct Collision {
    pub actor: String,
    pub actor_part: VehiclePart,
    pub victim: String,
    pub victim_part: VehiclePart,
    /// Impact coordinates; absent means "to be chosen by the preplanner".
    pub coord: Option<Point2>,
}

/// The complete accident template.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FormalDescription {
    pub statics: Vec<StaticObject>,
    pub dynamics: Vec<Vehicle>,
    pub collisions: Vec<Collision>,
}

impl FormalDescription {
    /// The scene's road kind, if a road is present.
    pub fn road_kind(&self) -> Option<RoadKind> {
        self.statics.iter().find_map(|s| match s {
            StaticObject::Road { kind } => Some(*kind),
            _ => None,
        })
    }

    pub fn vehicle(&self, id: &str) -> Option<&Vehicle> {
        self.dynamics.iter().find(|v| v.id == id)
    }

    pub fn static_by_id(&self, id: &str) -> Option<&StaticObject> {
        self.statics.iter().find(|s| s.id() == Some(id))
    }
}

pub mod gens;

#[cfg(test)]
mod tests;
