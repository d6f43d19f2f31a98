//! Normalized time assignment: 0 is the start of the simulation, 1 the end.
//!
//! Collision instants sit at i/(n+1), so no two collisions ever share an
//! instant. Between anchors (start, collision pins, or the free end) times
//! follow constant-speed arc-length interpolation; dwell markers consume a
//! fixed fraction of the vehicle's overall span while standing still. A
//! vehicle is stationary after its last collision.

use super::{AnimationPlan, NormalizedScene, PlanError, PlannerConfig, Trajectory};

/// Fraction of a vehicle's allotted time one stop event consumes.
const DWELL_FRACTION: f64 = 0.10;

pub fn plan_time(
    scene: NormalizedScene,
    mut trajectories: Vec<Trajectory>,
    _cfg: &PlannerConfig,
) -> Result<AnimationPlan, PlanError> {
    let n = scene.fd.collisions.len();
    let collision_times: Vec<f64> = (1..=n).map(|i| i as f64 / (n + 1) as f64).collect();

    for traj in &mut trajectories {
        assign_times(traj, &collision_times)?;
    }

    Ok(AnimationPlan { scene, trajectories, collision_times })
}

fn assign_times(traj: &mut Trajectory, collision_times: &[f64]) -> Result<(), PlanError> {
    let order_err = || PlanError::CollisionOrderViolated { vehicle: traj.vehicle_id.clone() };

    // BTreeMap iterates pins in ordinal order; their indices must increase
    // along the trajectory and stay clear of the start.
    let mut anchors: Vec<(usize, f64)> = vec![(0, 0.0)];
    for (&ordinal, &index) in &traj.collision_indices {
        if index <= anchors.last().unwrap().0 {
            return Err(order_err());
        }
        anchors.push((index, collision_times[ordinal - 1]));
    }
    if traj.collision_indices.is_empty() {
        if traj.points.len() < 2 {
            traj.points[0].time = Some(0.0);
            return Ok(());
        }
        anchors.push((traj.points.len() - 1, 1.0));
    }

    let total_span = anchors.last().unwrap().1;

    for pair in anchors.windows(2) {
        let (ia, ta) = pair[0];
        let (ib, tb) = pair[1];
        let span = tb - ta;

        // Each interval is either a dwell (consumes its reserved share) or a
        // movement weighted by arc length; shares are normalized over the
        // segment so the anchor times land exactly.
        let mut dwell_reserved = 0.0;
        let mut arc_total = 0.0;
        for j in ia + 1..=ib {
            if traj.points[j].dwell {
                dwell_reserved += DWELL_FRACTION * total_span;
            } else {
                arc_total += traj.points[j].position.dist(traj.points[j - 1].position);
            }
        }
        let dwell_weight = if dwell_reserved > 0.8 * span && dwell_reserved > 0.0 {
            // dwells may not starve the movement entirely
            0.8 * span / dwell_reserved
        } else {
            1.0
        };
        let moving_time = span - dwell_reserved * dwell_weight;

        let shares: Vec<f64> = (ia + 1..=ib)
            .map(|j| {
                if traj.points[j].dwell {
                    DWELL_FRACTION * total_span * dwell_weight
                } else if arc_total > 0.0 {
                    moving_time * traj.points[j].position.dist(traj.points[j - 1].position)
                        / arc_total
                } else {
                    moving_time
                }
            })
            .collect();
        let total: f64 = shares.iter().sum();

        traj.points[ia].time.get_or_insert(ta);
        let mut acc = 0.0;
        for (offset, share) in shares.iter().enumerate() {
            acc += share;
            traj.points[ia + 1 + offset].time = Some(ta + span * (acc / total));
        }
        traj.points[ib].time = Some(tb);
    }

    // Strict monotonicity is the contract every consumer relies on.
    let times: Vec<f64> = traj.points.iter().map(|p| p.time.expect("assigned")).collect();
    if times.windows(2).any(|w| w[0] >= w[1]) {
        return Err(order_err());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use crate::fd::{parse_fd, Point2};
    use crate::plan::{plan, PlannerConfig};

    const A4: &str = include_str!("../../fixtures/a4.fd");

    #[test]
    fn crossroads_listing_collision_instants() {
        let fd = parse_fd(A4).unwrap();
        let plan = plan(&fd, &PlannerConfig::default()).unwrap();
        assert_eq!(plan.collision_times, vec![1.0 / 3.0, 2.0 / 3.0]);

        let b = plan.trajectory("vehicleB").unwrap();
        let b_pin = b.collision_indices[&1];
        assert_eq!(b.points[b_pin].position, Point2::new(1.0, 1.0));
        assert_eq!(b.points[b_pin].time, Some(1.0 / 3.0));
        assert_eq!(b_pin, b.points.len() - 1, "vehicleB stays at its collision");

        let a = plan.trajectory("vehicleA").unwrap();
        assert_eq!(a.points[a.collision_indices[&1]].time, Some(1.0 / 3.0));
        assert_eq!(a.points[a.collision_indices[&1]].position, Point2::new(1.0, 1.0));
        assert_eq!(a.points[a.collision_indices[&2]].time, Some(2.0 / 3.0));
        assert_eq!(a.points[a.collision_indices[&2]].position, Point2::new(5.0, -5.0));
    }

    #[test]
    fn single_collision_happens_midway() {
        let doc = "STATIC [ ROAD [ KIND = straightroad; ] ] DYNAMIC [ \
                   VEHICLE [ ID = a; INITDIRECTION = east; ] \
                   VEHICLE [ ID = b; INITDIRECTION = west; ] ] \
                   ACCIDENT [ COLLISION [ ACTOR = a, front; VICTIM = b, front; ] ]";
        let plan = plan(&parse_fd(doc).unwrap(), &PlannerConfig::default()).unwrap();
        assert_eq!(plan.collision_times, vec![0.5]);
    }

    #[test]
    fn collision_free_scene_spans_the_whole_timeline() {
        let doc = "STATIC [ ROAD [ KIND = straightroad; ] ] DYNAMIC [ \
                   VEHICLE [ ID = a; INITDIRECTION = east; ] ] ACCIDENT [ ]";
        let plan = plan(&parse_fd(doc).unwrap(), &PlannerConfig::default()).unwrap();
        let t = &plan.trajectories[0];
        assert_eq!(t.points.first().unwrap().time, Some(0.0));
        assert_eq!(t.points.last().unwrap().time, Some(1.0));
        let times: Vec<f64> = t.points.iter().map(|p| p.time.unwrap()).collect();
        assert!(times.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn dwell_consumes_a_tenth_of_the_span() {
        let doc = "STATIC [ ROAD [ KIND = straightroad; ] ] DYNAMIC [ VEHICLE [ ID = a; \
                   INITDIRECTION = east; CHAIN [ EVENT [ KIND = driving_forward; ] \
                   EVENT [ KIND = stop; ] EVENT [ KIND = driving_forward; ] ] ] ] ACCIDENT [ ]";
        let plan = plan(&parse_fd(doc).unwrap(), &PlannerConfig::default()).unwrap();
        let t = &plan.trajectories[0];
        let dwell_at = t.points.iter().position(|p| p.dwell).unwrap();
        let held = t.points[dwell_at].time.unwrap() - t.points[dwell_at - 1].time.unwrap();
        assert!((held - 0.1).abs() < 1e-9, "dwell lasted {held}");
    }
}
