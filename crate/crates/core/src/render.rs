//! Top-down SVG frames of an animation plan.
//!
//! Scene coordinates are meters, x east and y north around the road center;
//! the canvas maps them at `meters_per_pixel` with y flipped. Output is
//! deterministic: identical plan and spec give byte-identical documents.

use crate::fd::{LightColor, Point2, RoadKind, StaticObject, VehicleKind};
use crate::plan::{AnimationPlan, Trajectory};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RenderError {
    #[error("time {0} is outside [0,1]")]
    TimeOutOfRange(f64),
    #[error("invalid frame spec: {0}")]
    InvalidSpec(String),
    #[error("cannot write frame: {0}")]
    Io(#[from] std::io::Error),
}

/// Canvas geometry and frame count for an animation.
#[derive(Debug, Clone, serde::Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FrameSpec {
    pub width: u32,
    pub height: u32,
    pub meters_per_pixel: f64,
    pub frame_count: u32,
}

impl Default for FrameSpec {
    fn default() -> Self {
        // 80 m across; 61 frames put the default collision instants on
        // exact frame numbers.
        FrameSpec { width: 640, height: 640, meters_per_pixel: 0.125, frame_count: 61 }
    }
}

impl FrameSpec {
    pub fn validate(&self) -> Result<(), RenderError> {
        if self.width == 0 || self.height == 0 {
            return Err(RenderError::InvalidSpec("canvas must be non-empty".into()));
        }
        if !(self.meters_per_pixel > 0.0 && self.meters_per_pixel.is_finite()) {
            return Err(RenderError::InvalidSpec("meters_per_pixel must be positive".into()));
        }
        if self.frame_count == 0 {
            return Err(RenderError::InvalidSpec("frame_count must be at least 1".into()));
        }
        Ok(())
    }

    fn to_px(&self, p: Point2) -> (f64, f64) {
        (
            self.width as f64 / 2.0 + p.x / self.meters_per_pixel,
            self.height as f64 / 2.0 - p.y / self.meters_per_pixel,
        )
    }

    fn scale(&self, meters: f64) -> f64 {
        meters / self.meters_per_pixel
    }
}

/// Interpolated vehicle state at a time value.
#[derive(Debug, Clone, Copy)]
pub struct Pose {
    pub position: Point2,
    /// Heading angle in radians, measured east-counterclockwise.
    pub heading: f64,
}

/// Linear interpolation between the bracketing trajectory points. Before its
/// first time a vehicle sits at the start; after its last (its final
/// collision, for colliding vehicles) it holds the last position.
pub fn vehicle_pose(traj: &Trajectory, t: f64) -> Pose {
    let times: Vec<f64> = traj.points.iter().map(|p| p.time.unwrap_or(0.0)).collect();
    let positions: Vec<Point2> = traj.points.iter().map(|p| p.position).collect();

    let heading_of = |j: usize| -> f64 {
        // walk back to the last segment with spatial extent
        for k in (0..=j.min(positions.len() - 2)).rev() {
            let d = positions[k + 1] - positions[k];
            if d.norm() > 1e-12 {
                return d.y.atan2(d.x);
            }
        }
        0.0
    };

    if t <= times[0] {
        return Pose { position: positions[0], heading: heading_of(0) };
    }
    let last = times.len() - 1;
    if t >= times[last] {
        return Pose { position: positions[last], heading: heading_of(last) };
    }
    let j = times.partition_point(|&tj| tj <= t) - 1;
    let span = times[j + 1] - times[j];
    let f = if span > 0.0 { (t - times[j]) / span } else { 0.0 };
    let position = positions[j] + (positions[j + 1] - positions[j]).scale(f);
    let d = positions[j + 1] - positions[j];
    let heading = if d.norm() > 1e-12 { d.y.atan2(d.x) } else { heading_of(j) };
    Pose { position, heading }
}

fn px(v: f64) -> String {
    format!("{v:.2}")
}

const ROAD_WIDTH: f64 = 7.0;
const VEHICLE_COLORS: [&str; 6] =
    ["#4477cc", "#cc5544", "#55aa66", "#aa66cc", "#ccaa44", "#44aaaa"];

fn road_arms(kind: RoadKind) -> Vec<(Point2, Point2)> {
    // Each arm runs from an edge of the scene to the center.
    let far = 100.0;
    let west = (Point2::new(-far, 0.0), Point2::ORIGIN);
    let east = (Point2::ORIGIN, Point2::new(far, 0.0));
    let north = (Point2::ORIGIN, Point2::new(0.0, far));
    let south = (Point2::new(0.0, -far), Point2::ORIGIN);
    match kind {
        RoadKind::Straightroad => vec![west, east],
        RoadKind::Crossroads => vec![west, east, north, south],
        RoadKind::TurnLeft => vec![west, north],
        RoadKind::TurnRight => vec![west, south],
    }
}

fn draw_road(out: &mut String, kind: RoadKind, spec: &FrameSpec) {
    let half = spec.scale(ROAD_WIDTH / 2.0);
    for (a, b) in road_arms(kind) {
        let (ax, ay) = spec.to_px(a);
        let (bx, by) = spec.to_px(b);
        let _ = write!(
            out,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#8f8f8f\" stroke-width=\"{}\"/>",
            px(ax),
            px(ay),
            px(bx),
            px(by),
            px(half * 2.0)
        );
    }
    for (a, b) in road_arms(kind) {
        let (ax, ay) = spec.to_px(a);
        let (bx, by) = spec.to_px(b);
        let _ = write!(
            out,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#f5f5f5\" stroke-width=\"1\" stroke-dasharray=\"8 10\"/>",
            px(ax),
            px(ay),
            px(bx),
            px(by)
        );
    }
}

fn draw_static(out: &mut String, s: &StaticObject, spec: &FrameSpec) {
    let Some(coord) = s.coord() else { return };
    let (cx, cy) = spec.to_px(coord);
    match s {
        StaticObject::Tree { .. } => {
            let _ = write!(
                out,
                "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#3c7a3c\"/><circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#6b4a2b\"/>",
                px(cx),
                px(cy),
                px(spec.scale(1.5)),
                px(cx),
                px(cy),
                px(spec.scale(0.35))
            );
        }
        StaticObject::Light { color, .. } => {
            let fill = match color {
                LightColor::Red => "#d42a2a",
                LightColor::Orange => "#e08a00",
                LightColor::Green => "#2aa82a",
                LightColor::Inactive => "#707070",
            };
            let _ = write!(
                out,
                "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\" stroke=\"#303030\" stroke-width=\"1\"/>",
                px(cx),
                px(cy),
                px(spec.scale(0.8)),
                fill
            );
        }
        StaticObject::StopSign { .. } => {
            let r = spec.scale(1.0);
            let mut points = String::new();
            for k in 0..8 {
                let a = std::f64::consts::PI * (2.0 * k as f64 + 1.0) / 8.0;
                let _ = write!(points, "{},{} ", px(cx + r * a.cos()), px(cy + r * a.sin()));
            }
            let _ = write!(
                out,
                "<polygon points=\"{}\" fill=\"#c42626\" stroke=\"#ffffff\" stroke-width=\"1\"/>",
                points.trim_end()
            );
        }
        StaticObject::Crossing { .. } => {
            let w = spec.scale(3.0);
            let bar = spec.scale(0.45);
            for k in 0..4 {
                let y = cy - w / 2.0 + (k as f64 + 0.5) * w / 4.0;
                let _ = write!(
                    out,
                    "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"#f0f0f0\"/>",
                    px(cx - w / 2.0),
                    px(y - bar / 2.0),
                    px(w),
                    px(bar)
                );
            }
        }
        StaticObject::Road { .. } => {}
    }
}

fn draw_vehicle(
    out: &mut String,
    traj: &Trajectory,
    kind: VehicleKind,
    color: &str,
    t: f64,
    spec: &FrameSpec,
) {
    let pose = vehicle_pose(traj, t);
    let (length, width) = match kind {
        VehicleKind::Car => (4.5, 1.8),
        VehicleKind::Truck => (8.0, 2.5),
    };
    let (cx, cy) = spec.to_px(pose.position);
    let l = spec.scale(length);
    let w = spec.scale(width);
    // Screen y grows downwards, so the rotation flips sign.
    let angle = -pose.heading.to_degrees();
    let _ = write!(
        out,
        "<g transform=\"rotate({} {} {})\"><rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" rx=\"2\" fill=\"{}\" stroke=\"#202020\" stroke-width=\"1\"/><rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"#ffffff\" opacity=\"0.55\"/></g>",
        px(angle),
        px(cx),
        px(cy),
        px(cx - l / 2.0),
        px(cy - w / 2.0),
        px(l),
        px(w),
        color,
        // windshield strip marks the front
        px(cx + l * 0.18),
        px(cy - w * 0.35),
        px(l * 0.12),
        px(w * 0.7)
    );
    let _ = write!(
        out,
        "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"11\" fill=\"#202020\" text-anchor=\"middle\">{}</text>",
        px(cx),
        px(cy - w / 2.0 - 5.0),
        traj.vehicle_id
    );
}

/// Render one frame at time `t` as a standalone SVG document.
pub fn render_frame(plan: &AnimationPlan, t: f64, spec: &FrameSpec) -> Result<String, RenderError> {
    if !(0.0..=1.0).contains(&t) {
        return Err(RenderError::TimeOutOfRange(t));
    }
    spec.validate()?;

    let mut out = String::new();
    let _ = write!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">",
        w = spec.width,
        h = spec.height
    );
    let _ =
        write!(out, "<rect width=\"{}\" height=\"{}\" fill=\"#dde8d2\"/>", spec.width, spec.height);
    if let Some(kind) = plan.scene.fd.road_kind() {
        draw_road(&mut out, kind, spec);
    }
    for s in &plan.scene.fd.statics {
        draw_static(&mut out, s, spec);
    }
    for (i, traj) in plan.trajectories.iter().enumerate() {
        let kind =
            plan.scene.fd.vehicle(&traj.vehicle_id).map(|v| v.kind).unwrap_or(VehicleKind::Car);
        let color = VEHICLE_COLORS[i % VEHICLE_COLORS.len()];
        draw_vehicle(&mut out, traj, kind, color, t, spec);
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Write `frame_count` frames at evenly spaced times; `frame_0000.svg` and
/// up. A single-frame animation renders t = 0.
pub fn render_animation(
    plan: &AnimationPlan,
    spec: &FrameSpec,
    out_dir: &Path,
) -> Result<Vec<PathBuf>, RenderError> {
    spec.validate()?;
    std::fs::create_dir_all(out_dir)?;
    let mut paths = Vec::with_capacity(spec.frame_count as usize);
    for k in 0..spec.frame_count {
        let t = if spec.frame_count == 1 { 0.0 } else { k as f64 / (spec.frame_count - 1) as f64 };
        let doc = render_frame(plan, t.min(1.0), spec)?;
        let path = out_dir.join(format!("frame_{k:04}.svg"));
        std::fs::write(&path, doc)?;
        paths.push(path);
    }
    Ok(paths)
}
