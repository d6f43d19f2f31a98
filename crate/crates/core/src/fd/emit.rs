//! Writer for the FD text format.

use super::*;
use std::fmt::Write;

fn coord_str(c: Point2) -> String {
    format!("( {:?}, {:?} )", c.x, c.y)
}

/// Serialize a description back to the bracketed text format.
///
/// `parse_fd(serialize_fd(fd))` is structurally equal to `fd` for any
/// description that satisfies its invariants.
pub fn serialize_fd(fd: &FormalDescription) -> String {
    let mut out = String::new();

    out.push_str("// Static objects\nSTATIC [\n");
    for s in &fd.statics {
        match s {
            StaticObject::Road { kind } => {
                let _ = writeln!(out, "   ROAD [\n      KIND = {};\n   ]", kind.as_str());
            }
            StaticObject::Tree { id, coord } => {
                let _ = write!(out, "   TREE [\n      ID = {id};");
                if let Some(c) = coord {
                    let _ = write!(out, " COORD = {};", coord_str(*c));
                }
                out.push_str("\n   ]\n");
            }
            StaticObject::Light { id, coord, color } => {
                let _ = write!(out, "   LIGHT [\n      ID = {id};");
                if let Some(c) = coord {
                    let _ = write!(out, " COORD = {};", coord_str(*c));
                }
                let _ = write!(out, " COLOR = {};", color.as_str());
                out.push_str("\n   ]\n");
            }
            StaticObject::StopSign { coord } => {
                out.push_str("   STOPSIGN [\n");
                if let Some(c) = coord {
                    let _ = writeln!(out, "      COORD = {};", coord_str(*c));
                }
                out.push_str("   ]\n");
            }
            StaticObject::Crossing { coord } => {
                out.push_str("   CROSSING [\n");
                if let Some(c) = coord {
                    let _ = writeln!(out, "      COORD = {};", coord_str(*c));
                }
                out.push_str("   ]\n");
            }
        }
    }
    out.push_str("]\n\n// Dynamic objects\nDYNAMIC [\n");

    for v in &fd.dynamics {
        let _ = writeln!(out, "   VEHICLE [\n      ID = {}; KIND = {};", v.id, v.kind.as_str());
        if let Some(d) = v.init_direction {
            let _ = writeln!(out, "      INITDIRECTION = {};", d.as_str());
        }
        out.push_str("      CHAIN [\n");
        for e in &v.chain {
            let _ =
                writeln!(out, "         EVENT [\n            KIND = {};\n         ]", e.as_str());
        }
        out.push_str("      ]\n   ]\n");
    }
    out.push_str("]\n\n// Collision objects\nACCIDENT [\n");

    for c in &fd.collisions {
        out.push_str("   COLLISION [\n");
        let _ = writeln!(out, "      ACTOR = {}, {};", c.actor, c.actor_part.as_str());
        let _ = writeln!(out, "      VICTIM = {}, {};", c.victim, c.victim_part.as_str());
        if let Some(p) = c.coord {
            let _ = writeln!(out, "      COORD = {};", coord_str(p));
        }
        out.push_str("   ]\n");
    }
    out.push_str("]\n");
    out
}
