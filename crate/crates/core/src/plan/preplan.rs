//! Consistency pass: find default values and solve conflicts before any
//! geometry is computed.

use super::{NormalizedScene, PlanError, PlannerConfig};
use crate::extract::scenario;
use crate::fd::{
    Collision, Direction, EventKind, FormalDescription, Point2, RoadKind, StaticObject, VehiclePart,
};

/// Tree/light default placements: road-adjacent corners, first free wins.
/// Far-out rings only appear when a scene exhausts a ring.
const CORNERS: [(f64, f64); 4] = [(5.0, -5.0), (-5.0, -5.0), (5.0, 5.0), (-5.0, 5.0)];
/// Stop signs and crossings sit on the road edge.
const EDGES: [(f64, f64); 4] = [(0.0, -6.0), (0.0, 6.0), (-6.0, 0.0), (6.0, 0.0)];

fn first_free(slots: &[(f64, f64)], taken: &[Point2]) -> Point2 {
    for ring in 1.. {
        let scale = ring as f64;
        for (x, y) in slots {
            let p = Point2::new(x * scale, y * scale);
            if !taken.iter().any(|t| t.dist(p) < 1e-9) {
                return p;
            }
        }
    }
    unreachable!("some ring always has a free slot")
}

/// The heading a vehicle ends its chain with: each turn rotates 90 degrees.
fn final_heading(init: Direction, chain: &[EventKind]) -> Direction {
    chain.iter().fold(init, |h, ev| match ev {
        EventKind::TurnLeft => h.left(),
        EventKind::TurnRight => h.right(),
        _ => h,
    })
}

/// The canonical lane line of a heading: offset `lane_offset` to the right of
/// travel, parametrized by the signed distance `s` from the road center.
fn lane_point(heading: Direction, s: f64, lane_offset: f64) -> Point2 {
    heading.unit().scale(s) + heading.right().unit().scale(lane_offset)
}

/// Default coordinates for the first collision: the intersection of the two
/// center-lines, clamped to within 2 m of the origin along the actor's lane.
fn first_collision_default(
    actor_dir: Direction,
    victim_dir: Direction,
    cfg: &PlannerConfig,
) -> Point2 {
    let h = actor_dir.unit();
    let off = cfg.lane_offset;
    // Signed distance along the actor's heading of the lane intersection;
    // parallel lanes meet nowhere, so the center is the natural spot.
    let s = if actor_dir == victim_dir || actor_dir == victim_dir.opposite() {
        0.0
    } else {
        // The victim's lane is the line <p, victim_dir.right()> = off.
        let n = victim_dir.right().unit();
        let origin_offset = lane_point(actor_dir, 0.0, off).dot(n);
        (off - origin_offset) / h.dot(n)
    };
    let reach2 = 4.0 - off * off;
    let s = if reach2 > 0.0 { s.clamp(-reach2.sqrt(), reach2.sqrt()) } else { 0.0 };
    lane_point(actor_dir, s, off)
}

/// Ensure the consistency of a formal description: fill missing static and
/// collision coordinates, missing initial directions, and empty chains, and
/// remove events that contradict the road kind. Fails only when vehicles
/// cannot be distributed over the start-distance table.
pub fn preplan(fd: &FormalDescription, cfg: &PlannerConfig) -> Result<NormalizedScene, PlanError> {
    let mut fd = fd.clone();
    let mut diagnostics = Vec::new();
    let road = fd
        .road_kind()
        .ok_or_else(|| PlanError::InvalidDescription(vec![crate::fd::Violation::MissingRoad]))?;
    let scen = scenario(road);

    // Initial directions: road-scenario defaults, overflowing to whatever
    // direction still has room.
    let mut counts = std::collections::BTreeMap::new();
    for v in &fd.dynamics {
        if let Some(d) = v.init_direction {
            *counts.entry(d).or_insert(0usize) += 1;
        }
    }
    for (d, count) in &counts {
        if *count > cfg.max_same_direction {
            return Err(PlanError::TooManySameDirection {
                direction: d.as_str().into(),
                count: *count,
                max: cfg.max_same_direction,
            });
        }
    }
    for i in 0..fd.dynamics.len() {
        if fd.dynamics[i].init_direction.is_some() {
            continue;
        }
        let preferred = scen.directions[i % 2];
        let all = [
            preferred,
            scen.directions[(i + 1) % 2],
            Direction::North,
            Direction::South,
            Direction::East,
            Direction::West,
        ];
        let chosen = all
            .iter()
            .find(|d| counts.get(d).copied().unwrap_or(0) < cfg.max_same_direction)
            .copied()
            .ok_or_else(|| PlanError::TooManySameDirection {
                direction: preferred.as_str().into(),
                count: cfg.max_same_direction + 1,
                max: cfg.max_same_direction,
            })?;
        *counts.entry(chosen).or_insert(0) += 1;
        diagnostics.push(format!(
            "vehicle `{}` got default initial direction {}",
            fd.dynamics[i].id,
            chosen.as_str()
        ));
        fd.dynamics[i].init_direction = Some(chosen);
    }

    // Chains: never empty, never contradicting the road.
    for v in &mut fd.dynamics {
        if v.chain.is_empty() {
            v.chain.push(EventKind::DrivingForward);
            diagnostics.push(format!("vehicle `{}` got a default driving_forward event", v.id));
        }
        if road == RoadKind::Straightroad {
            for ev in &mut v.chain {
                if matches!(ev, EventKind::TurnLeft | EventKind::TurnRight) {
                    diagnostics.push(format!(
                        "vehicle `{}` cannot {} on a straight road; replaced by driving_forward",
                        v.id,
                        ev.as_str()
                    ));
                    *ev = EventKind::DrivingForward;
                }
            }
        }
    }

    // Static coordinates.
    let mut taken: Vec<Point2> = fd.statics.iter().filter_map(|s| s.coord()).collect();
    for s in &mut fd.statics {
        let (slot, coord): (&[(f64, f64)], &mut Option<Point2>) = match s {
            StaticObject::Tree { coord, .. } | StaticObject::Light { coord, .. } => {
                (&CORNERS, coord)
            }
            StaticObject::StopSign { coord } | StaticObject::Crossing { coord } => (&EDGES, coord),
            StaticObject::Road { .. } => continue,
        };
        if coord.is_none() {
            let p = first_free(slot, &taken);
            taken.push(p);
            *coord = Some(p);
            diagnostics.push(format!("static object placed at default {p}"));
        }
    }

    // Unknown actor parts default to front.
    for c in &mut fd.collisions {
        if c.actor_part == VehiclePart::Unknown {
            c.actor_part = VehiclePart::Front;
            diagnostics.push(format!("actor `{}` part defaulted to front", c.actor));
        }
    }

    // Collision coordinates, in list order so later defaults can chain off
    // earlier ones.
    for i in 0..fd.collisions.len() {
        if fd.collisions[i].coord.is_some() {
            continue;
        }
        let Collision { actor, victim, .. } = fd.collisions[i].clone();
        let static_coord = fd.static_by_id(&victim).and_then(|s| s.coord());
        let actor_vehicle = fd.vehicle(&actor).expect("validated actor");
        let actor_dir = actor_vehicle.init_direction.expect("directions set above");
        let coord = if let Some(c) = static_coord {
            c
        } else if i == 0 {
            let victim_dir = fd
                .vehicle(&victim)
                .and_then(|v| v.init_direction)
                .unwrap_or_else(|| actor_dir.opposite());
            first_collision_default(actor_dir, victim_dir, cfg)
        } else {
            let prev = fd.collisions[i - 1].coord.expect("filled in order");
            let heading = final_heading(actor_dir, &actor_vehicle.chain);
            prev + heading.unit().scale(10.0)
        };
        fd.collisions[i].coord = Some(coord);
        diagnostics.push(format!("collision {} placed at default {coord}", i + 1));
    }

    Ok(NormalizedScene { fd, diagnostics })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fd::{parse_fd, Vehicle};

    const A4: &str = include_str!("../../fixtures/a4.fd");

    fn cfg() -> PlannerConfig {
        PlannerConfig::default()
    }

    #[test]
    fn tree_without_coord_gets_first_free_corner() {
        let mut fd = parse_fd(A4).unwrap();
        if let StaticObject::Tree { coord, .. } = &mut fd.statics[1] {
            *coord = None;
        }
        let scene = preplan(&fd, &cfg()).unwrap();
        assert_eq!(scene.fd.statics[1].coord(), Some(Point2::new(5.0, -5.0)));
        // everything else untouched
        assert_eq!(scene.fd.dynamics, fd.dynamics);
    }

    #[test]
    fn occupied_corner_moves_to_next_slot() {
        let mut fd = parse_fd(A4).unwrap();
        fd.statics.push(StaticObject::Tree { id: "tree2".into(), coord: None });
        let scene = preplan(&fd, &cfg()).unwrap();
        // (5,-5) is taken by tree1
        assert_eq!(scene.fd.statics[2].coord(), Some(Point2::new(-5.0, -5.0)));
    }

    #[test]
    fn turn_on_straight_road_is_replaced() {
        let mut fd = parse_fd("STATIC [ ROAD [ KIND = straightroad; ] ] DYNAMIC [ VEHICLE [ ID = v1; ] ] ACCIDENT [ ]").unwrap();
        fd.dynamics[0].chain = vec![EventKind::TurnLeft];
        let scene = preplan(&fd, &cfg()).unwrap();
        assert_eq!(scene.fd.dynamics[0].chain, vec![EventKind::DrivingForward]);
        assert!(scene.diagnostics.iter().any(|d| d.contains("straight road")));
    }

    #[test]
    fn complete_description_is_unchanged_except_collision_coord() {
        let fd = parse_fd(A4).unwrap();
        let scene = preplan(&fd, &cfg()).unwrap();
        assert_eq!(scene.fd.statics, fd.statics);
        assert_eq!(scene.fd.dynamics, fd.dynamics);
        assert_eq!(scene.fd.collisions[0], fd.collisions[0]);
        // the second collision inherits the tree's coordinates
        assert_eq!(scene.fd.collisions[1].coord, Some(Point2::new(5.0, -5.0)));
    }

    #[test]
    fn preplanning_is_idempotent() {
        let fd = parse_fd(A4).unwrap();
        let once = preplan(&fd, &cfg()).unwrap();
        let twice = preplan(&once.fd, &cfg()).unwrap();
        assert_eq!(once.fd, twice.fd);
        assert!(twice.diagnostics.is_empty());
    }

    #[test]
    fn default_first_collision_lands_near_center_on_actor_lane() {
        let doc = "STATIC [ ROAD [ KIND = crossroads; ] ] DYNAMIC [ \
                   VEHICLE [ ID = a; INITDIRECTION = east; ] \
                   VEHICLE [ ID = b; INITDIRECTION = north; ] ] \
                   ACCIDENT [ COLLISION [ ACTOR = a, front; VICTIM = b, leftside; ] ]";
        let scene = preplan(&parse_fd(doc).unwrap(), &cfg()).unwrap();
        let c = scene.fd.collisions[0].coord.unwrap();
        assert!(c.norm() <= 2.0 + 1e-9, "{c} not within 2 m of the origin");
        assert!((c.y - -1.75).abs() < 1e-9, "{c} not on the actor's lane");
    }

    #[test]
    fn fourth_vehicle_in_one_direction_is_an_error() {
        let mut fd =
            parse_fd("STATIC [ ROAD [ KIND = crossroads; ] ] DYNAMIC [ ] ACCIDENT [ ]").unwrap();
        for i in 0..4 {
            let mut v = Vehicle::new(format!("v{i}"));
            v.init_direction = Some(Direction::East);
            fd.dynamics.push(v);
        }
        match preplan(&fd, &cfg()) {
            Err(PlanError::TooManySameDirection { count: 4, max: 3, .. }) => {}
            other => panic!("expected direction overflow, got {other:?}"),
        }
    }

    #[test]
    fn missing_directions_follow_road_scenario() {
        let doc = "STATIC [ ROAD [ KIND = crossroads; ] ] DYNAMIC [ \
                   VEHICLE [ ID = a; ] VEHICLE [ ID = b; ] ] ACCIDENT [ ]";
        let scene = preplan(&parse_fd(doc).unwrap(), &cfg()).unwrap();
        assert_eq!(scene.fd.dynamics[0].init_direction, Some(Direction::East));
        assert_eq!(scene.fd.dynamics[1].init_direction, Some(Direction::North));
    }
}
