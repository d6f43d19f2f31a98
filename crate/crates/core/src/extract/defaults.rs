//! Goal-driven template completion: whatever extraction could not find is
//! filled from defaults matching the road configuration, so the output is
//! always a well-formed description of a collision between two cars.

use super::resolve::{PendingCollision, VictimRef};
use crate::fd::{
    Collision, Direction, EventKind, FormalDescription, RoadKind, StaticObject, Vehicle,
    VehiclePart,
};

/// Per-road default scenario: initial directions, chains, and parts for the
/// two default vehicles.
pub struct RoadScenario {
    pub directions: [Direction; 2],
    pub chains: [Vec<EventKind>; 2],
    pub actor_part: VehiclePart,
    pub victim_part: VehiclePart,
}

/// Straight road: head-on impact between an eastbound and a westbound car.
/// Turn: both vehicles follow the bend in opposite senses and meet frontally
/// at its center. Crossroads: the eastbound actor hits the left-hand side of
/// the northbound victim.
pub fn scenario(road: RoadKind) -> RoadScenario {
    use EventKind::*;
    match road {
        RoadKind::Straightroad => RoadScenario {
            directions: [Direction::East, Direction::West],
            chains: [vec![DrivingForward], vec![DrivingForward]],
            actor_part: VehiclePart::Front,
            victim_part: VehiclePart::Front,
        },
        RoadKind::TurnLeft | RoadKind::TurnRight => RoadScenario {
            directions: [Direction::East, Direction::South],
            chains: [
                vec![DrivingForward, TurnLeft, DrivingForward],
                vec![DrivingForward, TurnRight, DrivingForward],
            ],
            actor_part: VehiclePart::Front,
            victim_part: VehiclePart::Front,
        },
        RoadKind::Crossroads => RoadScenario {
            directions: [Direction::East, Direction::North],
            chains: [vec![DrivingForward], vec![DrivingForward]],
            actor_part: VehiclePart::Front,
            victim_part: VehiclePart::LeftSide,
        },
    }
}

fn fresh_vehicle_id(vehicles: &[Vehicle]) -> String {
    let mut n = 1;
    loop {
        let id = format!("vehicle{n}");
        if !vehicles.iter().any(|v| v.id == id) {
            return id;
        }
        n += 1;
    }
}

fn vehicle_at(vehicles: &mut Vec<Vehicle>, index: usize) -> String {
    while vehicles.len() <= index {
        let id = fresh_vehicle_id(vehicles);
        vehicles.push(Vehicle::new(id));
    }
    vehicles[index].id.clone()
}

/// Assemble a structurally valid description from whatever extraction found.
/// Missing actors and victims become default vehicles, empty chains and
/// missing directions follow the road scenario, and with no collision at all
/// one default collision between two cars is emitted.
pub fn build_fd(
    road: RoadKind,
    statics: Vec<StaticObject>,
    vehicles: Vec<Vehicle>,
    pendings: Vec<PendingCollision>,
) -> (FormalDescription, Vec<String>) {
    let scen = scenario(road);
    let mut vehicles = vehicles;
    let mut diags = Vec::new();

    let mut pendings = pendings;
    if pendings.is_empty() {
        // Goal-driven fallback: a collision between the first two vehicles,
        // created as needed.
        let actor = vehicle_at(&mut vehicles, 0);
        let victim = vehicle_at(&mut vehicles, 1);
        pendings.push(PendingCollision {
            actor: Some(actor),
            actor_part: scen.actor_part,
            victim: Some(VictimRef::Vehicle(victim)),
            victim_part: scen.victim_part,
        });
        diags.push("no collision found; default scenario emitted".into());
    }

    let mut collisions = Vec::new();
    for p in pendings {
        let actor = p.actor.unwrap_or_else(|| {
            let id = fresh_vehicle_id(&vehicles);
            vehicles.push(Vehicle::new(id.clone()));
            diags.push(format!("collision actor defaulted to `{id}`"));
            id
        });
        let (victim, victim_created) = match p.victim {
            Some(VictimRef::Static(id)) => (id, false),
            Some(VictimRef::Vehicle(id)) if id != actor => (id, false),
            other => {
                if other.is_some() {
                    diags.push("collision victim coincided with its actor; replaced".into());
                }
                let id = fresh_vehicle_id(&vehicles);
                vehicles.push(Vehicle::new(id.clone()));
                diags.push(format!("collision victim defaulted to `{id}`"));
                (id, true)
            }
        };
        let actor_part =
            if p.actor_part == VehiclePart::Unknown { scen.actor_part } else { p.actor_part };
        let victim_part = if victim_created && p.victim_part == VehiclePart::Unknown {
            scen.victim_part
        } else {
            p.victim_part
        };
        collisions.push(Collision { actor, actor_part, victim, victim_part, coord: None });
    }

    for (i, v) in vehicles.iter_mut().enumerate() {
        let slot = i % 2;
        if v.init_direction.is_none() {
            v.init_direction = Some(scen.directions[slot]);
        }
        if v.chain.is_empty() {
            v.chain = scen.chains[slot].clone();
        }
    }

    let mut all_statics = vec![StaticObject::Road { kind: road }];
    all_statics.extend(statics);
    let fd = FormalDescription { statics: all_statics, dynamics: vehicles, collisions };
    debug_assert!(crate::fd::validate_fd(&fd).is_empty(), "defaults must yield a valid FD");
    (fd, diags)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_inputs_yield_two_car_head_on() {
        let (fd, _) = build_fd(RoadKind::Straightroad, vec![], vec![], vec![]);
        assert_eq!(fd.dynamics.len(), 2);
        assert_eq!(fd.dynamics[0].init_direction, Some(Direction::East));
        assert_eq!(fd.dynamics[1].init_direction, Some(Direction::West));
        assert_eq!(fd.collisions.len(), 1);
        let c = &fd.collisions[0];
        assert_eq!(c.actor_part, VehiclePart::Front);
        assert_eq!(c.victim_part, VehiclePart::Front);
        assert!(crate::fd::validate_fd(&fd).is_empty());
    }

    #[test]
    fn crossroads_actor_only_gets_default_victim() {
        let pendings = vec![PendingCollision {
            actor: Some("vehicle_b".into()),
            actor_part: VehiclePart::Unknown,
            victim: None,
            victim_part: VehiclePart::Unknown,
        }];
        let vehicles = vec![Vehicle::new("vehicle_b")];
        let (fd, _) = build_fd(RoadKind::Crossroads, vec![], vehicles, pendings);
        assert_eq!(fd.dynamics.len(), 2);
        assert_eq!(fd.dynamics[1].init_direction, Some(Direction::North));
        let c = &fd.collisions[0];
        assert_eq!(c.actor_part, VehiclePart::Front);
        assert_eq!(c.victim_part, VehiclePart::LeftSide);
    }

    #[test]
    fn turn_scenario_has_opposing_bend_chains() {
        let (fd, _) = build_fd(RoadKind::TurnLeft, vec![], vec![], vec![]);
        assert_eq!(
            fd.dynamics[0].chain,
            vec![EventKind::DrivingForward, EventKind::TurnLeft, EventKind::DrivingForward]
        );
        assert_eq!(
            fd.dynamics[1].chain,
            vec![EventKind::DrivingForward, EventKind::TurnRight, EventKind::DrivingForward]
        );
        assert_eq!(fd.dynamics[1].init_direction, Some(Direction::South));
    }

    #[test]
    fn extracted_values_survive_defaulting() {
        let mut v = Vehicle::new("lorry");
        v.chain = vec![EventKind::Stop];
        let pendings = vec![PendingCollision {
            actor: Some("lorry".into()),
            actor_part: VehiclePart::Rear,
            victim: Some(VictimRef::Static("tree1".into())),
            victim_part: VehiclePart::Unknown,
        }];
        let statics = vec![StaticObject::Tree { id: "tree1".into(), coord: None }];
        let (fd, _) = build_fd(RoadKind::Straightroad, statics, vec![v], pendings);
        assert_eq!(fd.dynamics[0].chain, vec![EventKind::Stop]);
        assert_eq!(fd.collisions[0].actor_part, VehiclePart::Rear);
        // static victims keep their unknown part
        assert_eq!(fd.collisions[0].victim_part, VehiclePart::Unknown);
        assert_eq!(fd.dynamics.len(), 1);
    }
}
