//! Deterministic random generator for structurally valid descriptions.
//!
//! Used by round-trip property tests and the planner fuzz suites. Carries its
//! own small PRNG so callers only need a seed.

use super::*;

/// splitmix64; good enough distribution for test-case generation.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in `0..n` (n > 0).
    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    /// Uniform float in [lo, hi) with two decimals, so serialized values stay short.
    pub fn coord(&mut self, lo: f64, hi: f64) -> f64 {
        let raw = lo + (hi - lo) * (self.next_u64() as f64 / u64::MAX as f64);
        (raw * 100.0).round() / 100.0
    }

    pub fn chance(&mut self, one_in: usize) -> bool {
        self.below(one_in) == 0
    }
}

const ROADS: [RoadKind; 4] =
    [RoadKind::Crossroads, RoadKind::Straightroad, RoadKind::TurnLeft, RoadKind::TurnRight];
const DIRECTIONS: [Direction; 4] =
    [Direction::North, Direction::South, Direction::East, Direction::West];
const EVENTS: [EventKind; 7] = [
    EventKind::DrivingForward,
    EventKind::Stop,
    EventKind::TurnLeft,
    EventKind::TurnRight,
    EventKind::ChangeLaneLeft,
    EventKind::ChangeLaneRight,
    EventKind::Overtake,
];
const PARTS: [VehiclePart; 5] = [
    VehiclePart::Front,
    VehiclePart::Rear,
    VehiclePart::LeftSide,
    VehiclePart::RightSide,
    VehiclePart::Unknown,
];
const COLORS: [LightColor; 4] =
    [LightColor::Red, LightColor::Orange, LightColor::Green, LightColor::Inactive];

fn point(rng: &mut Rng) -> Point2 {
    Point2::new(rng.coord(-15.0, 15.0), rng.coord(-15.0, 15.0))
}

/// Generate a structurally valid description: one road, up to two trees and
/// lights, up to four vehicles, up to three ordered collisions whose actors
/// are vehicles and victims are vehicles or collidable statics.
pub fn random_fd(rng: &mut Rng) -> FormalDescription {
    let mut fd = FormalDescription::default();
    fd.statics.push(StaticObject::Road { kind: ROADS[rng.below(4)] });

    for i in 0..rng.below(3) {
        fd.statics.push(StaticObject::Tree {
            id: format!("tree{}", i + 1),
            coord: if rng.chance(3) { None } else { Some(point(rng)) },
        });
    }
    for i in 0..rng.below(3) {
        fd.statics.push(StaticObject::Light {
            id: format!("light{}", i + 1),
            coord: if rng.chance(3) { None } else { Some(point(rng)) },
            color: COLORS[rng.below(4)],
        });
    }
    if rng.chance(3) {
        fd.statics.push(StaticObject::StopSign {
            coord: if rng.chance(2) { None } else { Some(point(rng)) },
        });
    }
    if rng.chance(3) {
        fd.statics.push(StaticObject::Crossing {
            coord: if rng.chance(2) { None } else { Some(point(rng)) },
        });
    }

    let n_vehicles = 1 + rng.below(4);
    for i in 0..n_vehicles {
        let mut v = Vehicle::new(format!("vehicle{}", i + 1));
        if rng.chance(4) {
            v.kind = VehicleKind::Truck;
        }
        if !rng.chance(4) {
            v.init_direction = Some(DIRECTIONS[rng.below(4)]);
        }
        for _ in 0..rng.below(4) {
            v.chain.push(EVENTS[rng.below(7)]);
        }
        fd.dynamics.push(v);
    }

    let victims: Vec<String> = fd
        .dynamics
        .iter()
        .map(|v| v.id.clone())
        .chain(fd.statics.iter().filter_map(|s| s.id().map(str::to_string)))
        .collect();
    for _ in 0..rng.below(4) {
        let actor = fd.dynamics[rng.below(n_vehicles)].id.clone();
        let victim = victims[rng.below(victims.len())].clone();
        if victim == actor {
            continue;
        }
        fd.collisions.push(Collision {
            actor,
            actor_part: PARTS[rng.below(5)],
            victim,
            victim_part: PARTS[rng.below(5)],
            coord: if rng.chance(2) { None } else { Some(point(rng)) },
        });
    }

    debug_assert!(validate_fd(&fd).is_empty());
    fd
}
