//! Diagram files.
//!
//! ```json
//! {"surface": {"kind": "torus"},
//!  "components": [{"vertices": [[[0,1],[1,2]], [[1,1],[1,2]]], "level": 0}],
//!  "self_crossing_overrides": []}
//! ```
//!
//! A component may also carry `"segment_levels": [int, ...]`, one height per
//! segment; the field is omitted when absent.

use serde_json::{json, Map, Value};

use super::build::{ComponentSpec, DiagramSpec, Override};
use super::geom::Point;
use super::surface::{Surface, SurfaceKind};
use crate::error::{Error, Result};
use crate::json::{as_array, as_i64, as_rat, field, i64_value, rat_value};

pub fn point_to_json(p: &Point) -> Value {
    Value::Array(vec![rat_value(&p.x), rat_value(&p.y)])
}

pub fn point_from_json(v: &Value, ctx: &str) -> Result<Point> {
    let a = as_array(v, ctx)?;
    if a.len() != 2 {
        return Err(Error::input(ctx, "point must be [x, y]"));
    }
    Ok(Point::new(as_rat(&a[0], &format!("{ctx}.x"))?, as_rat(&a[1], &format!("{ctx}.y"))?))
}

pub fn surface_to_json(s: &Surface) -> Value {
    let mut m = Map::new();
    m.insert("kind".into(), Value::String(s.kind.name().into()));
    if let Some(p) = &s.puncture {
        m.insert("puncture".into(), point_to_json(p));
    }
    Value::Object(m)
}

pub fn surface_from_json(v: &Value) -> Result<Surface> {
    let kind_v = field(v, "kind", "surface")?;
    let kind = kind_v
        .as_str()
        .and_then(SurfaceKind::parse)
        .ok_or_else(|| Error::input("surface.kind", format!("unknown surface {kind_v}")))?;
    let puncture = v.get("puncture").map(|p| point_from_json(p, "surface.puncture")).transpose()?;
    match (kind, puncture) {
        (SurfaceKind::PuncturedTorus, Some(p)) => Ok(Surface::punctured_torus(p)),
        (SurfaceKind::PuncturedTorus, None) => Ok(Surface::punctured_torus_default()),
        (_, Some(_)) => Err(Error::input("surface.puncture", "only the punctured torus has a puncture")),
        (SurfaceKind::Disk, None) => Ok(Surface::disk()),
        (SurfaceKind::Torus, None) => Ok(Surface::torus()),
    }
}

pub fn diagram_to_json(spec: &DiagramSpec) -> Value {
    let comps: Vec<Value> = spec
        .components
        .iter()
        .map(|c| {
            let mut m = Map::new();
            m.insert("vertices".into(), Value::Array(c.vertices.iter().map(point_to_json).collect()));
            m.insert("level".into(), i64_value(c.level));
            if let Some(l) = &c.segment_levels {
                m.insert("segment_levels".into(), Value::Array(l.iter().map(|&h| i64_value(h)).collect()));
            }
            Value::Object(m)
        })
        .collect();
    let overrides: Vec<Value> = spec
        .overrides
        .iter()
        .map(|o| json!({"component": o.component, "crossing_index": o.crossing_index, "over": o.over}))
        .collect();
    json!({
        "surface": surface_to_json(&spec.surface),
        "components": comps,
        "self_crossing_overrides": overrides,
    })
}

fn as_index(v: &Value, ctx: &str) -> Result<usize> {
    let n = as_i64(v, ctx)?;
    usize::try_from(n).map_err(|_| Error::input(ctx, format!("expected a non-negative index, got {n}")))
}

pub fn diagram_from_json(v: &Value) -> Result<DiagramSpec> {
    let surface = surface_from_json(field(v, "surface", "diagram")?)?;
    let mut components = Vec::new();
    for (i, c) in as_array(field(v, "components", "diagram")?, "components")?.iter().enumerate() {
        let ctx = format!("components[{i}]");
        let vertices = as_array(field(c, "vertices", &ctx)?, &ctx)?
            .iter()
            .enumerate()
            .map(|(j, p)| point_from_json(p, &format!("{ctx}.vertices[{j}]")))
            .collect::<Result<Vec<_>>>()?;
        let level = as_i64(field(c, "level", &ctx)?, &format!("{ctx}.level"))?;
        let segment_levels = c
            .get("segment_levels")
            .map(|l| {
                as_array(l, &ctx)?
                    .iter()
                    .map(|h| as_i64(h, &format!("{ctx}.segment_levels")))
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?;
        components.push(ComponentSpec { vertices, level, segment_levels });
    }
    let mut overrides = Vec::new();
    if let Some(list) = v.get("self_crossing_overrides") {
        for (i, o) in as_array(list, "self_crossing_overrides")?.iter().enumerate() {
            let ctx = format!("self_crossing_overrides[{i}]");
            overrides.push(Override {
                component: as_index(field(o, "component", &ctx)?, &ctx)?,
                crossing_index: as_index(field(o, "crossing_index", &ctx)?, &ctx)?,
                over: field(o, "over", &ctx)?
                    .as_bool()
                    .ok_or_else(|| Error::input(format!("{ctx}.over"), "expected a boolean"))?,
            });
        }
    }
    Ok(DiagramSpec { surface, components, overrides })
}
