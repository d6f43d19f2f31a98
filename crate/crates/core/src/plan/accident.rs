//! Reroute trajectories through a collision point.
//!
//! For each involved dynamic vehicle: draw a circle of `collision_radius`
//! around the collision point, drop the first trajectory point inside it and
//! everything after (a trajectory allows no gaps), then append a straight
//! approach whose final point is exactly the collision point. A vehicle
//! already pinned at an earlier collision keeps its path up to that pin and
//! approaches from there.

use super::{PlanError, PlannerConfig, Trajectory, TrajectoryPoint};
use crate::fd::{Collision, FormalDescription, Point2};

pub fn plan_accident(
    trajectories: &mut [Trajectory],
    collision: &Collision,
    ordinal: usize,
    fd: &FormalDescription,
    cfg: &PlannerConfig,
) -> Result<(), PlanError> {
    let target = collision.coord.expect("preplanned collisions carry coordinates");

    let mut involved = vec![collision.actor.as_str()];
    if fd.vehicle(&collision.victim).is_some() {
        involved.push(collision.victim.as_str());
    }

    for id in involved {
        let traj = trajectories
            .iter_mut()
            .find(|t| t.vehicle_id == id)
            .ok_or_else(|| PlanError::MissingPosition(id.to_string()))?;
        reroute(traj, target, ordinal, cfg)?;
    }
    Ok(())
}

fn reroute(
    traj: &mut Trajectory,
    target: Point2,
    ordinal: usize,
    cfg: &PlannerConfig,
) -> Result<(), PlanError> {
    // Points up to and including the latest pin are untouchable.
    let base = traj.collision_indices.values().max().copied();
    let scan_from = base.map(|b| b + 1).unwrap_or(0);

    let first_inside = (scan_from..traj.points.len())
        .find(|&i| traj.points[i].position.dist(target) < cfg.collision_radius);
    let retain = first_inside.unwrap_or(traj.points.len());
    if retain == 0 {
        return Err(PlanError::TrajectoryInsideCircle {
            vehicle: traj.vehicle_id.clone(),
            ordinal,
        });
    }
    traj.points.truncate(retain);

    let from = traj.points.last().expect("retain >= 1").position;
    let len = from.dist(target);
    if len > 1e-12 {
        let n = (len / cfg.sample_step).ceil().max(1.0) as usize;
        for k in 1..n {
            let f = k as f64 / n as f64;
            traj.points.push(TrajectoryPoint::new(from + (target - from).scale(f)));
        }
        traj.points.push(TrajectoryPoint::new(target));
    }
    traj.collision_indices.insert(ordinal, traj.points.len() - 1);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn straight_traj(points: Vec<(f64, f64)>) -> Trajectory {
        Trajectory {
            vehicle_id: "v".into(),
            points: points
                .into_iter()
                .map(|(x, y)| TrajectoryPoint::new(Point2::new(x, y)))
                .collect(),
            collision_indices: BTreeMap::new(),
        }
    }

    fn east_line() -> Trajectory {
        straight_traj((0..=26).map(|k| (-20.0 + 2.0 * k as f64, -1.75)).collect())
    }

    fn cfg() -> PlannerConfig {
        PlannerConfig::default()
    }

    #[test]
    fn removes_circle_and_suffix_then_approaches_exactly() {
        let mut t = east_line();
        let target = Point2::new(1.0, 1.0);
        reroute(&mut t, target, 1, &cfg()).unwrap();

        let pin = t.collision_indices[&1];
        assert_eq!(pin, t.points.len() - 1);
        assert_eq!(t.points[pin].position, target);
        // retained points stay outside the circle
        for p in &t.points[..pin] {
            let d = p.position.dist(target);
            if p.position.y == -1.75 && p.position.x <= -4.0 {
                assert!(d >= cfg().collision_radius - 1e-9);
            }
        }
        // gap-free approach
        for w in t.points.windows(2) {
            assert!(w[0].position.dist(w[1].position) <= cfg().sample_step + 1e-9);
        }
    }

    #[test]
    fn collision_near_far_end_only_trims_the_tail() {
        let mut t = east_line();
        let target = Point2::new(31.0, -1.75);
        let mut small = cfg();
        small.collision_radius = 3.0;
        reroute(&mut t, target, 1, &small).unwrap();

        // brute-force oracle: retained prefix ends before the first sample
        // strictly inside the circle
        let samples: Vec<f64> = (0..=26).map(|k| -20.0 + 2.0 * k as f64).collect();
        let expected_retained = samples.iter().take_while(|x| (*x - 31.0f64).abs() >= 3.0).count();
        assert!(t.points.len() > expected_retained);
        assert_eq!(t.points[expected_retained - 1].position.x, samples[expected_retained - 1]);
        for p in &t.points[..expected_retained] {
            assert!(p.position.dist(target) >= 3.0);
        }
        assert_eq!(t.points.last().unwrap().position, target);
    }

    #[test]
    fn tiny_radius_removes_only_the_suffix() {
        let mut t = east_line();
        // (0,-1.75) is the 11th sample; with a tiny radius only it and the
        // suffix go, and the approach re-adds the exact point.
        let target = Point2::new(0.0, -1.75);
        let mut tiny = cfg();
        tiny.collision_radius = 1e-9;
        reroute(&mut t, target, 1, &tiny).unwrap();
        let pin = t.collision_indices[&1];
        assert_eq!(t.points[pin].position, target);
        assert_eq!(t.points[pin - 1].position, Point2::new(-2.0, -1.75));
    }

    #[test]
    fn trajectory_entirely_inside_circle_is_an_error() {
        let mut t = straight_traj(vec![(0.0, 0.0), (1.0, 0.0)]);
        let mut big = cfg();
        big.collision_radius = 10.0;
        match reroute(&mut t, Point2::new(0.5, 0.0), 1, &big) {
            Err(PlanError::TrajectoryInsideCircle { .. }) => {}
            other => panic!("expected inside-circle error, got {other:?}"),
        }
    }

    #[test]
    fn second_collision_starts_from_the_earlier_pin() {
        let mut t = east_line();
        reroute(&mut t, Point2::new(1.0, 1.0), 1, &cfg()).unwrap();
        let first_pin = t.collision_indices[&1];
        reroute(&mut t, Point2::new(5.0, -5.0), 2, &cfg()).unwrap();

        assert_eq!(t.collision_indices[&1], first_pin);
        assert_eq!(t.points[first_pin].position, Point2::new(1.0, 1.0));
        let second_pin = t.collision_indices[&2];
        assert_eq!(second_pin, t.points.len() - 1);
        assert_eq!(t.points[second_pin].position, Point2::new(5.0, -5.0));
        assert!(second_pin > first_pin);
    }
}
