//! Start and end placement around the road center.
//!
//! The k-th vehicle sharing an initial direction starts at the k-th table
//! distance behind the center, offset one lane to the right of travel. End
//! distances are handed out in reverse rank order, so the vehicle closest to
//! the center gets the end point farthest away and every vehicle traverses
//! approximately the same distance.

use super::{NormalizedScene, PlanError, PlannerConfig};
use crate::fd::Point2;
use std::collections::BTreeMap;

pub fn plan_positions(
    scene: &NormalizedScene,
    cfg: &PlannerConfig,
) -> Result<BTreeMap<String, (Point2, Point2)>, PlanError> {
    let mut rank: BTreeMap<&str, usize> = BTreeMap::new();
    let mut out = BTreeMap::new();
    let table = &cfg.start_distances;

    for v in &scene.fd.dynamics {
        let dir = v.init_direction.ok_or_else(|| PlanError::MissingPosition(v.id.clone()))?;
        let k = {
            let slot = rank.entry(dir.as_str()).or_insert(0);
            let k = *slot;
            *slot += 1;
            k
        };
        if k >= cfg.max_same_direction || k >= table.len() {
            return Err(PlanError::TooManySameDirection {
                direction: dir.as_str().into(),
                count: k + 1,
                max: cfg.max_same_direction,
            });
        }
        let heading = dir.unit();
        let lateral = dir.right().unit().scale(cfg.lane_offset);
        let start = heading.scale(-table[k]) + lateral;
        let end = heading.scale(table[table.len() - 1 - k]) + lateral;
        out.insert(v.id.clone(), (start, end));
    }
    Ok(out)
}
