//! Placing one diagram above another.

use super::build::{build_diagram, Diagram, DiagramSpec, Override};
use super::geom::{dist2_point_segment, lattice_translates_in_box, q, Point, Q};
use crate::error::{Error, Result};

/// Fixed perturbation schedule for the lower diagram.
const NUDGES: usize = 24;

fn nudge(k: usize) -> Point {
    let k = k as i64;
    Point::new(q(k, 7919 * 64), q(2 * k + 1, 7927 * 64))
}

fn level_range(spec: &DiagramSpec) -> Option<(i64, i64)> {
    let heights = spec.components.iter().flat_map(|c| match &c.segment_levels {
        Some(l) => l.clone(),
        None => vec![c.level],
    });
    heights.fold(None, |acc, h| match acc {
        None => Some((h, h)),
        Some((lo, hi)) => Some((lo.min(h), hi.max(h))),
    })
}

/// Squared distance from the puncture lattice to the diagram.
fn puncture_clearance2(spec: &DiagramSpec) -> Option<Q> {
    let p = spec.surface.puncture.as_ref()?;
    let mut best: Option<Q> = None;
    for comp in &spec.components {
        for w in comp.vertices.windows(2) {
            let bbox = [&w[0] - &Point::ints(1, 1), &w[1] + &Point::ints(1, 1), &w[0] + &Point::ints(1, 1), &w[1] - &Point::ints(1, 1)];
            for c in lattice_translates_in_box(&bbox, p) {
                let d = dist2_point_segment(&c, &w[0], &w[1]);
                if best.as_ref().is_none_or(|b| d < *b) {
                    best = Some(d);
                }
            }
        }
    }
    best
}

fn combine(top: &DiagramSpec, bottom: &DiagramSpec, shift: &Point) -> DiagramSpec {
    let lift = match (level_range(top), level_range(bottom)) {
        (Some((top_lo, _)), Some((_, bottom_hi))) if top_lo <= bottom_hi => bottom_hi - top_lo + 1,
        _ => 0,
    };
    let mut components: Vec<_> = top
        .components
        .iter()
        .map(|c| {
            let mut c = c.clone();
            c.level += lift;
            if let Some(l) = c.segment_levels.as_mut() {
                l.iter_mut().for_each(|h| *h += lift);
            }
            c
        })
        .collect();
    let offset = top.components.len();
    components.extend(bottom.components.iter().map(|c| c.translated(shift)));
    let mut overrides = top.overrides.clone();
    overrides.extend(bottom.overrides.iter().map(|o| Override { component: o.component + offset, ..*o }));
    DiagramSpec { surface: top.surface.clone(), components, overrides }
}

/// The union of `top` and `bottom` with every crossing between them having
/// `top` over. Top components come first. If the union is not in general
/// position the bottom diagram is translated along a fixed schedule of small
/// offsets that never sweep across the puncture.
pub fn stack(top: &Diagram, bottom: &Diagram) -> Result<Diagram> {
    if top.surface() != bottom.surface() {
        return Err(Error::SurfaceMismatch(format!("{:?}", top.surface()), format!("{:?}", bottom.surface())));
    }
    let clearance = puncture_clearance2(bottom.spec());
    for k in 0..=NUDGES {
        let shift = if k == 0 { Point::zero() } else { nudge(k) };
        if let Some(c) = &clearance {
            // moving by less than half the clearance is an isotopy in the punctured surface
            if !shift.is_zero() && shift.norm2() * Q::from_integer(4.into()) >= *c {
                continue;
            }
        }
        match build_diagram(combine(top.spec(), bottom.spec(), &shift)) {
            Ok(d) => return Ok(d),
            Err(Error::Geometry { .. } | Error::ThroughPuncture(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Err(Error::PerturbationFailed(NUDGES))
}
