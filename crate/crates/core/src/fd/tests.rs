use super::*;
use proptest::prelude::*;

const A4: &str = include_str!("../../fixtures/a4.fd");

#[test]
fn parses_crossroads_listing() {
    let fd = parse_fd(A4).unwrap();

    assert_eq!(fd.road_kind(), Some(RoadKind::Crossroads));
    assert_eq!(
        fd.statics[1],
        StaticObject::Tree { id: "tree1".into(), coord: Some(Point2::new(5.0, -5.0)) }
    );

    assert_eq!(fd.dynamics.len(), 2);
    let b = &fd.dynamics[0];
    assert_eq!(b.id, "vehicleB");
    assert_eq!(b.kind, VehicleKind::Car);
    assert_eq!(b.init_direction, Some(Direction::East));
    assert_eq!(b.chain, vec![EventKind::DrivingForward]);
    let a = &fd.dynamics[1];
    assert_eq!(a.id, "vehicleA");
    assert_eq!(a.init_direction, Some(Direction::North));
    assert_eq!(a.chain, vec![EventKind::DrivingForward]);

    assert_eq!(fd.collisions.len(), 2);
    let c1 = &fd.collisions[0];
    assert_eq!((c1.actor.as_str(), c1.actor_part), ("vehicleB", VehiclePart::Front));
    assert_eq!((c1.victim.as_str(), c1.victim_part), ("vehicleA", VehiclePart::LeftSide));
    assert_eq!(c1.coord, Some(Point2::new(1.0, 1.0)));
    let c2 = &fd.collisions[1];
    assert_eq!((c2.actor.as_str(), c2.actor_part), ("vehicleA", VehiclePart::Front));
    assert_eq!((c2.victim.as_str(), c2.victim_part), ("tree1", VehiclePart::Unknown));
    assert_eq!(c2.coord, None);
}

#[test]
fn parses_minimal_document() {
    let fd = parse_fd("STATIC [ ROAD [ KIND = straightroad; ] ] DYNAMIC [ ] ACCIDENT [ ]").unwrap();
    assert_eq!(fd.road_kind(), Some(RoadKind::Straightroad));
    assert!(fd.dynamics.is_empty());
    assert!(fd.collisions.is_empty());
}

#[test]
fn rejects_dangling_collision_reference() {
    let doc = "STATIC [ ROAD [ KIND = crossroads; ] ] DYNAMIC [ ] \
               ACCIDENT [ COLLISION [ ACTOR = ghost, front; VICTIM = ghost2, rear; ] ]";
    match parse_fd(doc) {
        Err(ParseError::Invalid(vs)) => {
            assert!(vs
                .iter()
                .any(|v| matches!(v, Violation::DanglingReference { id, .. } if id == "ghost")));
        }
        other => panic!("expected dangling-reference error, got {other:?}"),
    }
}

#[test]
fn rejects_missing_road() {
    match parse_fd("STATIC [ ] DYNAMIC [ ] ACCIDENT [ ]") {
        Err(ParseError::Invalid(vs)) => assert!(vs.contains(&Violation::MissingRoad)),
        other => panic!("expected missing-road error, got {other:?}"),
    }
}

#[test]
fn rejects_duplicate_id() {
    let doc = "STATIC [ ROAD [ KIND = crossroads; ] ] \
               DYNAMIC [ VEHICLE [ ID = v1; ] VEHICLE [ ID = v1; ] ] ACCIDENT [ ]";
    match parse_fd(doc) {
        Err(ParseError::Invalid(vs)) => {
            assert!(vs.contains(&Violation::DuplicateId("v1".into())));
        }
        other => panic!("expected duplicate-id error, got {other:?}"),
    }
}

#[test]
fn rejects_unknown_enum_value() {
    let doc = "STATIC [ ROAD [ KIND = motorway; ] ]";
    match parse_fd(doc) {
        Err(ParseError::UnknownValue { what, value, .. }) => {
            assert_eq!(what, "road kind");
            assert_eq!(value, "motorway");
        }
        other => panic!("expected unknown-value error, got {other:?}"),
    }
}

#[test]
fn syntax_error_reports_position() {
    match parse_fd("STATIC [ ROAD [ KIND =\n; ] ]") {
        Err(ParseError::Syntax { line, .. }) => assert_eq!(line, 2),
        other => panic!("expected syntax error, got {other:?}"),
    }
}

#[test]
fn keywords_are_case_insensitive_ids_are_not() {
    let doc = "static [ road [ kind = CROSSROADS; ] ] dynamic [ vehicle [ id = MyCar; ] ]";
    let fd = parse_fd(doc).unwrap();
    assert_eq!(fd.road_kind(), Some(RoadKind::Crossroads));
    assert_eq!(fd.dynamics[0].id, "MyCar");
}

#[test]
fn blocks_accepted_in_any_order_but_not_twice() {
    let fd = parse_fd("ACCIDENT [ ] DYNAMIC [ ] STATIC [ ROAD [ KIND = turn_left; ] ]").unwrap();
    assert_eq!(fd.road_kind(), Some(RoadKind::TurnLeft));
    assert!(matches!(
        parse_fd("STATIC [ ROAD [ KIND = turn_left; ] ] STATIC [ ]"),
        Err(ParseError::DuplicateBlock { .. })
    ));
}

#[test]
fn listing_round_trips_structurally() {
    let fd = parse_fd(A4).unwrap();
    let text = serialize_fd(&fd);
    let again = parse_fd(&text).unwrap();
    assert_eq!(fd, again);
}

#[test]
fn empty_lists_round_trip() {
    let fd = FormalDescription {
        statics: vec![StaticObject::Road { kind: RoadKind::Straightroad }],
        dynamics: vec![],
        collisions: vec![],
    };
    let text = serialize_fd(&fd);
    assert!(text.contains("STATIC ["));
    assert!(text.contains("DYNAMIC ["));
    assert!(text.contains("ACCIDENT ["));
    assert_eq!(parse_fd(&text).unwrap(), fd);
}

#[test]
fn validate_accepts_listing() {
    let fd = parse_fd(A4).unwrap();
    assert_eq!(validate_fd(&fd), vec![]);
}

#[test]
fn validate_reports_duplicate_vehicles() {
    let mut fd = FormalDescription::default();
    fd.statics.push(StaticObject::Road { kind: RoadKind::Crossroads });
    fd.dynamics.push(Vehicle::new("v1"));
    fd.dynamics.push(Vehicle::new("v1"));
    assert_eq!(validate_fd(&fd), vec![Violation::DuplicateId("v1".into())]);
}

#[test]
fn validate_reports_static_actor() {
    let mut fd = FormalDescription::default();
    fd.statics.push(StaticObject::Road { kind: RoadKind::Crossroads });
    fd.statics.push(StaticObject::Tree { id: "tree1".into(), coord: None });
    fd.dynamics.push(Vehicle::new("v1"));
    fd.collisions.push(Collision {
        actor: "tree1".into(),
        actor_part: VehiclePart::Unknown,
        victim: "v1".into(),
        victim_part: VehiclePart::Front,
        coord: None,
    });
    assert_eq!(validate_fd(&fd), vec![Violation::StaticActor { index: 0, id: "tree1".into() }]);
}

proptest! {
    #[test]
    fn round_trip_is_identity(seed in any::<u64>()) {
        let fd = gens::random_fd(&mut gens::Rng::new(seed));
        let text = serialize_fd(&fd);
        let parsed = parse_fd(&text).unwrap();
        prop_assert_eq!(fd, parsed);
    }

    #[test]
    fn round_trip_preserves_order(seed in any::<u64>()) {
        let fd = gens::random_fd(&mut gens::Rng::new(seed));
        let parsed = parse_fd(&serialize_fd(&fd)).unwrap();
        let actors: Vec<_> = fd.collisions.iter().map(|c| &c.actor).collect();
        let back: Vec<_> = parsed.collisions.iter().map(|c| &c.actor).collect();
        prop_assert_eq!(actors, back);
        for (v, w) in fd.dynamics.iter().zip(&parsed.dynamics) {
            prop_assert_eq!(&v.chain, &w.chain);
        }
    }
}
