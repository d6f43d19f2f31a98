//! Event chains become untimed point paths.
//!
//! A cursor (position + heading) walks the chain. Straight runs sample every
//! `sample_step` meters, turns sample a quarter circle arc near the road
//! center, lane changes follow a half-cosine lateral profile, overtaking is a
//! lane change out, a straight, and a lane change back, and a stop repeats
//! the current point as a dwell marker for the temporal planner.

use super::{PlannerConfig, Trajectory, TrajectoryPoint};
use crate::fd::{Direction, EventKind, Point2, RoadKind, Vehicle};
use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TurnDir {
    Left,
    Right,
}

/// A quarter-circle turn: exact center, radius, and tangent points.
#[derive(Debug, Clone, Copy)]
pub struct TurnArc {
    pub center: Point2,
    pub radius: f64,
    pub entry: Point2,
    pub exit: Point2,
    pub entry_angle: f64,
    /// Signed sweep; +pi/2 for left turns, -pi/2 for right turns.
    pub sweep: f64,
}

impl TurnArc {
    pub fn point_at(&self, fraction: f64) -> Point2 {
        let a = self.entry_angle + self.sweep * fraction;
        self.center + Point2::new(a.cos(), a.sin()).scale(self.radius)
    }
}

/// Construct the turn arc for a vehicle at `cursor` heading `heading`.
///
/// The first turn of a chain (`lane_tangent`) is tangent to both the line the
/// vehicle is driving on and the canonical lane of the new heading, which
/// puts the arc at the road center. Later turns pivot from the cursor itself.
pub fn turn_arc(
    cursor: Point2,
    heading: Direction,
    dir: TurnDir,
    lane_tangent: bool,
    cfg: &PlannerConfig,
) -> TurnArc {
    let r = cfg.turn_radius;
    let h = heading.unit();
    let side = match dir {
        TurnDir::Left => 1.0,
        TurnDir::Right => -1.0,
    };
    let new_heading = match dir {
        TurnDir::Left => heading.left(),
        TurnDir::Right => heading.right(),
    };

    let (center, entry) = if lane_tangent {
        // Center offsets along the two right-normals: r to the turn side of
        // the incoming line (through the cursor) and of the outgoing lane.
        let rn_in = heading.right().unit();
        let rn_out = new_heading.right().unit();
        let in_offset = cursor.dot(rn_in) - side * r;
        let out_offset = cfg.lane_offset - side * r;
        let center = rn_in.scale(in_offset) + rn_out.scale(out_offset);
        let entry = center + rn_in.scale(side * r);
        (center, entry)
    } else {
        let normal = h.rot_left().scale(side);
        (cursor + normal.scale(r), cursor)
    };

    // Fall back to pivoting in place when the tangent entry lies behind the
    // cursor (possible after lane changes with unusual geometry).
    if lane_tangent && (entry - cursor).dot(h) < -1e-9 {
        return turn_arc(cursor, heading, dir, false, cfg);
    }

    let towards_entry = entry - center;
    let entry_angle = towards_entry.y.atan2(towards_entry.x);
    let sweep = side * FRAC_PI_2;
    let exit_angle = entry_angle + sweep;
    let exit = center + Point2::new(exit_angle.cos(), exit_angle.sin()).scale(r);
    TurnArc { center, radius: r, entry, exit, entry_angle, sweep }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Leg {
    Forward,
    FixedForward(f64),
    Lane(TurnDir),
    Turn(TurnDir),
    Dwell,
}

fn compile(chain: &[EventKind], cfg: &PlannerConfig) -> Vec<Leg> {
    let mut legs = Vec::new();
    for ev in chain {
        match ev {
            EventKind::DrivingForward => legs.push(Leg::Forward),
            EventKind::Stop => legs.push(Leg::Dwell),
            EventKind::TurnLeft => legs.push(Leg::Turn(TurnDir::Left)),
            EventKind::TurnRight => legs.push(Leg::Turn(TurnDir::Right)),
            EventKind::ChangeLaneLeft => legs.push(Leg::Lane(TurnDir::Left)),
            EventKind::ChangeLaneRight => legs.push(Leg::Lane(TurnDir::Right)),
            EventKind::Overtake => {
                legs.push(Leg::Lane(TurnDir::Left));
                legs.push(Leg::FixedForward(cfg.lane_change_length));
                legs.push(Leg::Lane(TurnDir::Right));
            }
        }
    }
    legs
}

struct PathBuilder {
    points: Vec<TrajectoryPoint>,
}

impl PathBuilder {
    fn push(&mut self, p: Point2) {
        if let Some(last) = self.points.last() {
            if last.position.dist(p) < 1e-12 {
                return;
            }
        }
        self.points.push(TrajectoryPoint::new(p));
    }

    fn push_dwell(&mut self) {
        let position = self.points.last().expect("start pushed first").position;
        self.points.push(TrajectoryPoint { position, time: None, dwell: true });
    }

    /// Uniform samples from the last point to `to`, spacing at most
    /// `step`, endpoint exact.
    fn straight(&mut self, to: Point2, step: f64) {
        let from = self.points.last().expect("start pushed first").position;
        let len = from.dist(to);
        if len < 1e-12 {
            return;
        }
        let n = (len / step).ceil().max(1.0) as usize;
        for k in 1..n {
            let f = k as f64 / n as f64;
            self.push(from + (to - from).scale(f));
        }
        self.push(to);
    }

    fn arc(&mut self, arc: &TurnArc, samples: usize) {
        self.push(arc.entry);
        for k in 1..=samples {
            self.push(arc.point_at(k as f64 / samples as f64));
        }
    }

    /// Half-cosine lateral shift of `total_shift` over `length` meters.
    fn lane_change(&mut self, heading: Direction, dir: TurnDir, cfg: &PlannerConfig) {
        let from = self.points.last().expect("start pushed first").position;
        let length = cfg.lane_change_length;
        let shift = 2.0 * cfg.lane_offset;
        let h = heading.unit();
        let side = match dir {
            TurnDir::Left => h.rot_left(),
            TurnDir::Right => h.rot_right(),
        };
        let n = (length / cfg.sample_step).ceil().max(1.0) as usize;
        for k in 1..=n {
            let s = length * k as f64 / n as f64;
            let lateral = shift * (1.0 - (std::f64::consts::PI * s / length).cos()) / 2.0;
            self.push(from + h.scale(s) + side.scale(lateral));
        }
    }
}

const ARC_SAMPLES: usize = 16;

/// Convert one vehicle's event chain into an untimed trajectory from its
/// planned start towards its planned end.
pub fn plan_trajectory(
    vehicle: &Vehicle,
    start: Point2,
    end: Point2,
    _road: RoadKind,
    cfg: &PlannerConfig,
) -> Trajectory {
    let mut heading = vehicle.init_direction.expect("normalized scenes set directions");
    // How far past the center the vehicle should end up, measured along its
    // heading of the moment.
    let end_distance = end.dot(heading.unit());

    let legs =
        if vehicle.chain.is_empty() { vec![Leg::Forward] } else { compile(&vehicle.chain, cfg) };

    let mut b = PathBuilder { points: vec![TrajectoryPoint::new(start)] };
    let mut turns_done = 0usize;
    let mut i = 0;

    while i < legs.len() {
        // A stretch runs up to the next turn; forwards split whatever
        // longitudinal distance the fixed-length legs leave over.
        let mut j = i;
        while j < legs.len() && !matches!(legs[j], Leg::Turn(_)) {
            j += 1;
        }
        let cursor = b.points.last().unwrap().position;
        let stretch_target = if let Some(Leg::Turn(dir)) = legs.get(j) {
            let arc = turn_arc(cursor, heading, *dir, turns_done == 0, cfg);
            arc.entry.dot(heading.unit())
        } else {
            end_distance
        };
        let fixed: f64 = legs[i..j]
            .iter()
            .map(|l| match l {
                Leg::FixedForward(d) => *d,
                Leg::Lane(_) => cfg.lane_change_length,
                _ => 0.0,
            })
            .sum();
        let forwards = legs[i..j].iter().filter(|l| matches!(l, Leg::Forward)).count();
        let available = stretch_target - cursor.dot(heading.unit()) - fixed;
        let share = if forwards > 0 { (available / forwards as f64).max(0.0) } else { 0.0 };

        for leg in &legs[i..j] {
            let at = b.points.last().unwrap().position;
            match leg {
                Leg::Forward => {
                    if share > 1e-9 {
                        b.straight(at + heading.unit().scale(share), cfg.sample_step);
                    }
                }
                Leg::FixedForward(d) => {
                    b.straight(at + heading.unit().scale(*d), cfg.sample_step);
                }
                Leg::Lane(dir) => b.lane_change(heading, *dir, cfg),
                Leg::Dwell => b.push_dwell(),
                Leg::Turn(_) => unreachable!("stretches stop before turns"),
            }
        }

        if let Some(Leg::Turn(dir)) = legs.get(j) {
            let cursor = b.points.last().unwrap().position;
            let arc = turn_arc(cursor, heading, *dir, turns_done == 0, cfg);
            b.straight(arc.entry, cfg.sample_step);
            b.arc(&arc, ARC_SAMPLES);
            heading = match dir {
                TurnDir::Left => heading.left(),
                TurnDir::Right => heading.right(),
            };
            turns_done += 1;
            i = j + 1;
        } else {
            i = j;
        }
    }

    // A chain of nothing but stops still needs its dwell pair.
    if b.points.len() == 1 {
        b.push_dwell();
    }

    Trajectory {
        vehicle_id: vehicle.id.clone(),
        points: b.points,
        collision_indices: BTreeMap::new(),
    }
}
